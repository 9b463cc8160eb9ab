//! Continuity probes and the eventual-lower-bound convergence class.
//!
//! A net is classed with a limit when some directed set of its eventual
//! lower bounds converges there. The module decides that class, the
//! topology it determines, and the continuity property that makes the
//! class coincide with plain topological convergence: every neighbourhood
//! of a point must contain a member whose up-set has the point in its
//! interior. Finite spaces are swept exhaustively; chain-presented spaces
//! are decided schematically, with one generic chain point standing in for
//! everything beyond the sweep bound.

use std::fmt;

use thiserror::Error;

use crate::conv::{self, ConvClass, FiniteNet, OpKind};
use crate::mask;
use crate::omega::{
    coreflect_omega, spec_leq, NetStep, OmegaError, OmegaSpace, OmegaTopology, Point, SchemaNet,
    SchemaSet, SchemaTemplate,
};
use crate::topology::FiniteTopology;
use crate::Subset;

/// Failure modes of the class machinery on chain-presented spaces.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CspaceError {
    #[error(transparent)]
    Omega(#[from] OmegaError),
    /// The class oracle and the directed coreflection disagreed on a set.
    #[error("the eventual-lower-bound class disagrees with the directed coreflection on {0}")]
    ClassMismatch(String),
}

/// Outcome of auditing the class against topological convergence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SClassVerdict {
    /// Every probe agreed and the space passed the continuity check.
    Topological,
    /// Some net separates the class from convergence.
    Refuted { witness: String },
    /// No probe separated them, but the space failed the continuity check,
    /// so agreement is not guaranteed beyond the probe set.
    Undetermined,
}

impl fmt::Display for SClassVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SClassVerdict::Topological => write!(f, "topological"),
            SClassVerdict::Refuted { witness } => write!(f, "refuted: {witness}"),
            SClassVerdict::Undetermined => write!(f, "undetermined"),
        }
    }
}

/// Points the net eventually sits above: `y` qualifies when the net is
/// inside the up-set of `y` from some stage on.
pub fn eventual_lower_bounds_finite(space: &FiniteTopology, net: FiniteNet) -> Subset {
    let order = space.specialization();
    (0..space.n())
        .filter(|&y| conv::eventually(&order, net, order.up_mask(y)))
        .fold(0, |acc, y| acc | mask::singleton(y))
}

/// True when some directed set of eventual lower bounds converges to `x`.
pub fn in_s_class_finite(space: &FiniteTopology, net: FiniteNet, x: usize) -> bool {
    let el = eventual_lower_bounds_finite(space, net);
    let order = space.specialization();
    order
        .directed_subsets()
        .into_iter()
        .filter(|&d| mask::is_subset(d, el))
        .any(|d| conv::converges(space, FiniteNet::Directed(d), x))
}

/// The whole class over every canonical net shape on one space.
pub fn s_class_finite(space: &FiniteTopology) -> ConvClass {
    let order = space.specialization();
    let n = space.n();
    let mut pairs = Vec::new();
    for net in canonical_nets(space) {
        for x in 0..n {
            if in_s_class_finite(space, net, x) {
                pairs.push((net, x));
            }
        }
    }
    ConvClass::new(order, pairs)
}

/// The topology the class determines.
pub fn s_topology_finite(space: &FiniteTopology) -> FiniteTopology {
    let labels: Vec<&str> = space.labels().iter().map(|s| s.as_str()).collect();
    conv::determined_topology(&labels, &s_class_finite(space))
}

/// A continuity violation: a point and a neighbourhood none of whose
/// members has the point interior to its up-set.
pub fn c_space_witness_finite(space: &FiniteTopology) -> Option<(usize, Subset)> {
    let order = space.specialization();
    for x in 0..space.n() {
        for &u in space.opens() {
            if !mask::contains(u, x) {
                continue;
            }
            let served =
                mask::iter(u).any(|y| mask::contains(space.interior(order.up_mask(y)), x));
            if !served {
                return Some((x, u));
            }
        }
    }
    None
}

pub fn is_c_space_finite(space: &FiniteTopology) -> bool {
    c_space_witness_finite(space).is_none()
}

/// Full audit on a finite space. Classed pairs always converge, because
/// opens are up-sets and a directed witness pushes the net into every
/// neighbourhood of the limit; only the other direction can fail.
pub fn s_class_topological_finite(space: &FiniteTopology) -> SClassVerdict {
    for net in canonical_nets(space) {
        for x in 0..space.n() {
            if conv::converges(space, net, x) && !in_s_class_finite(space, net, x) {
                let (kind, carrier) = match net {
                    FiniteNet::Tail(s) => ("tail", s),
                    FiniteNet::Directed(s) => ("directed", s),
                };
                return SClassVerdict::Refuted {
                    witness: format!(
                        "{kind} net on {} converges to {} without a classed witness",
                        subset_label(space, carrier),
                        space.label(x)
                    ),
                };
            }
        }
    }
    SClassVerdict::Topological
}

fn canonical_nets(space: &FiniteTopology) -> Vec<FiniteNet> {
    let order = space.specialization();
    let mut nets: Vec<FiniteNet> =
        (1..=mask::full(space.n())).map(FiniteNet::Tail).collect();
    nets.extend(order.directed_subsets().into_iter().map(FiniteNet::Directed));
    nets
}

fn subset_label(space: &FiniteTopology, s: Subset) -> String {
    let parts: Vec<&str> = mask::iter(s).map(|i| space.label(i)).collect();
    format!("{{{}}}", parts.join(", "))
}

/// Principal specialization up-set of `y` as a schematic set, exact out to
/// one chain point past both `bound` and the parameter of `y` itself.
fn up_set_spec(space: &OmegaSpace, y: Point, bound: u64) -> SchemaSet {
    let yp = match y {
        Point::Fin(_) => 0,
        Point::Chain(j) => j,
    };
    let horizon = bound.max(yp) + 1;
    let fin = (0..space.n_fin())
        .filter(|&q| spec_leq(space, y, Point::Fin(q)))
        .fold(0, |acc, q| acc | mask::singleton(q));
    let chain: Vec<u64> =
        (0..=horizon).filter(|&j| spec_leq(space, y, Point::Chain(j))).collect();
    let tail = spec_leq(space, y, Point::Chain(horizon + 1)).then_some(horizon + 1);
    SchemaSet::new(fin, chain, tail)
}

/// Every representative of `s` plus its whole explicit tail window, so
/// relations that hold only on a bounded stretch are not missed.
fn dense_reps(s: &SchemaSet, n_fin: usize, bound: u64) -> Vec<Point> {
    let mut out = s.reps(n_fin, bound);
    if let Some(t) = s.tail {
        out.extend((t..=bound + 1).map(Point::Chain));
    }
    out
}

/// Schematic set of a net's eventual lower bounds. The chain part is an
/// interval: each membership condition is monotone or constant along the
/// chain, so explicit entries up to the sweep bound plus one generic probe
/// capture it exactly.
pub fn eventual_lower_bounds_omega(space: &OmegaSpace, net: &SchemaNet) -> SchemaSet {
    let bound = space.sweep_bound(&[net.max_param()]);
    let fin = (0..space.n_fin())
        .filter(|&q| net.eventually_in(&up_set_spec(space, Point::Fin(q), bound)))
        .fold(0, |acc, q| acc | mask::singleton(q));
    let chain: Vec<u64> = (0..=bound + 1)
        .filter(|&j| net.eventually_in(&up_set_spec(space, Point::Chain(j), bound)))
        .collect();
    let tail = net
        .eventually_in(&up_set_spec(space, Point::Chain(bound + 2), bound))
        .then_some(bound + 2);
    SchemaSet::new(fin, chain, tail)
}

/// Class membership on a chain-presented space. A directed subset of the
/// eventual lower bounds with a maximum converges exactly when the maximum
/// sits above the limit, and a maximum-free one is eventually
/// interchangeable with a pure chain tail, so those two cases decide.
pub fn in_s_class_omega(
    x: &OmegaTopology,
    net: &SchemaNet,
    limit: Point,
) -> Result<bool, OmegaError> {
    let space = x.space();
    let el = eventual_lower_bounds_omega(space, net);
    if el.is_empty() {
        return Ok(false);
    }
    let lp = match limit {
        Point::Fin(_) => 0,
        Point::Chain(j) => j,
    };
    let bound = space.sweep_bound(&[net.max_param(), el.max_param(), lp]);
    if dense_reps(&el, space.n_fin(), bound).into_iter().any(|y| x.spec_leq(limit, y)) {
        return Ok(true);
    }
    if let Some(t) = el.tail {
        let tail = SchemaSet::new(0, Vec::new(), Some(t));
        return x.converges_directed(&tail, limit);
    }
    Ok(false)
}

/// Openness in the topology the class determines, decided from canonical
/// behaviours: a classed constant net forces its value into every open
/// around the limit, and a classed chain ride forces a tail. Membership of
/// a compound net implies membership for each of its residues with the
/// same directed witness, so constants and the plain ride generate every
/// constraint.
pub fn s_open(x: &OmegaTopology, u: &SchemaSet) -> Result<bool, OmegaError> {
    let space = x.space();
    let bound = space.sweep_bound(&[u.max_param()]);
    let reps = space.ground_reps(bound);
    let inside: Vec<Point> = reps.iter().copied().filter(|&p| u.contains(p)).collect();
    if inside.is_empty() {
        return Ok(true);
    }
    for &y in &reps {
        if u.contains(y) {
            continue;
        }
        let constant = SchemaNet::constant(y);
        for &p in &inside {
            if in_s_class_omega(x, &constant, p)? {
                return Ok(false);
            }
        }
    }
    if !u.is_tailed() {
        let ride = SchemaNet::chain_ride();
        for &p in &inside {
            if in_s_class_omega(x, &ride, p)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// The topology the class determines, delivered as the directed
/// coreflection after the independent class oracle is checked against it
/// over a canonical battery of schematic sets.
pub fn s_topology_omega(x: &OmegaTopology) -> Result<OmegaTopology, CspaceError> {
    let d = coreflect_omega(x, OpKind::Directed)?;
    let space = x.space();
    let chain_parts: [&[u64]; 3] = [&[], &[0], &[1]];
    let tails = [None, Some(0), Some(2)];
    for fm in 0..=mask::full(space.n_fin()) {
        for cs in chain_parts {
            for t in tails {
                let u = SchemaSet::new(fm, cs.to_vec(), t);
                if s_open(x, &u)? != d.is_open(&u) {
                    return Err(CspaceError::ClassMismatch(space.set_name(&u)));
                }
            }
        }
    }
    Ok(d)
}

/// A continuity violation on a chain-presented space: a point and a basic
/// neighbourhood none of whose members puts the point inside the interior
/// of their up-set. Interiors are probed through the same base, which
/// suffices because both conditions pass to basic refinements.
pub fn c_space_witness_omega(
    x: &OmegaTopology,
) -> Result<Option<(Point, SchemaSet)>, OmegaError> {
    let space = x.space();
    let basis: Vec<SchemaTemplate> = x.basis()?.to_vec();
    let tparams: Vec<u64> = basis.iter().map(SchemaTemplate::max_param).collect();
    let bound = space.sweep_bound(&tparams);
    // Neighbourhoods stop at one generic instance; farther ones repeat it
    // up to a chain shift. The serving pool reaches past the up-sets of
    // their tail representatives.
    let mut nbhds: Vec<SchemaSet> = Vec::new();
    let mut opens: Vec<SchemaSet> = Vec::new();
    for t in &basis {
        match t {
            SchemaTemplate::Fixed(_) => {
                nbhds.push(t.instance(0));
                opens.push(t.instance(0));
            }
            SchemaTemplate::PerChain { from, .. } => {
                nbhds.extend((*from..=bound + 1).map(|m| t.instance(m)));
                opens.extend((*from..=bound + 3).map(|m| t.instance(m)));
            }
        }
    }
    for p in space.ground_reps(bound) {
        'nbhd: for u in nbhds.iter().filter(|u| u.contains(p)) {
            for y in dense_reps(u, space.n_fin(), bound) {
                let up = up_set_spec(space, y, bound);
                if opens.iter().any(|b| b.contains(p) && b.is_subset(&up)) {
                    continue 'nbhd;
                }
            }
            return Ok(Some((p, u.clone())));
        }
    }
    Ok(None)
}

pub fn is_c_space_omega(x: &OmegaTopology) -> Result<bool, OmegaError> {
    Ok(c_space_witness_omega(x)?.is_none())
}

/// Constant nets at every representative, plain and residue chain rides,
/// and block-alternating nets, paired with every representative limit.
pub fn standard_battery(space: &OmegaSpace) -> Vec<(SchemaNet, Point)> {
    let bound = space.sweep_bound(&[]);
    let reps = space.ground_reps(bound);
    let mut nets = vec![
        SchemaNet::chain_ride(),
        SchemaNet::new(vec![NetStep::Ramp { mul: 2, add: 0 }]),
        SchemaNet::new(vec![NetStep::Ramp { mul: 2, add: 1 }]),
    ];
    for &r in &reps {
        nets.push(SchemaNet::constant(r));
    }
    for f in 0..space.n_fin() {
        for add in [0, 1] {
            nets.push(SchemaNet::new(vec![
                NetStep::At(Point::Fin(f)),
                NetStep::Ramp { mul: 2, add },
            ]));
        }
    }
    let mut out = Vec::new();
    for net in &nets {
        for &p in &reps {
            out.push((net.clone(), p));
        }
    }
    out
}

/// Audits the class against topological convergence: the declared
/// witnesses, then a standard battery, then the continuity check. Any
/// disagreement refutes; agreement is conclusive only on a continuous
/// space.
pub fn s_class_topological_omega(
    x: &OmegaTopology,
    witnesses: &[(SchemaNet, Point)],
) -> Result<SClassVerdict, OmegaError> {
    let space = x.space();
    let mut queries: Vec<(SchemaNet, Point)> = witnesses.to_vec();
    queries.extend(standard_battery(space));
    for (net, p) in &queries {
        let conv = x.converges_net(net, *p)?;
        let classed = in_s_class_omega(x, net, *p)?;
        if conv != classed {
            let direction = if conv {
                "converges without a classed witness"
            } else {
                "is classed without converging"
            };
            return Ok(SClassVerdict::Refuted {
                witness: format!(
                    "net {} at {} {}",
                    space.net_name(net),
                    space.point_name(*p),
                    direction
                ),
            });
        }
    }
    if c_space_witness_omega(x)?.is_none() {
        Ok(SClassVerdict::Topological)
    } else {
        Ok(SClassVerdict::Undetermined)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate;
    use crate::omega;
    use crate::topology::OrderTopologyKind;

    fn alternating_a() -> SchemaNet {
        SchemaNet::new(vec![NetStep::At(Point::Fin(1)), NetStep::Ramp { mul: 2, add: 0 }])
    }

    #[test]
    fn eventual_lower_bounds_on_the_sierpinski_space() {
        let s = FiniteTopology::sierpinski();
        assert_eq!(eventual_lower_bounds_finite(&s, FiniteNet::Tail(0b10)), 0b11);
        assert_eq!(eventual_lower_bounds_finite(&s, FiniteNet::Tail(0b01)), 0b01);
        assert_eq!(eventual_lower_bounds_finite(&s, FiniteNet::Tail(0b11)), 0b01);
    }

    #[test]
    fn finite_spaces_are_continuous_and_carry_their_own_class_topology() {
        for p in enumerate::posets_up_to_iso(3) {
            let x = FiniteTopology::order_topology(&p, OrderTopologyKind::Alexandroff);
            assert!(is_c_space_finite(&x));
            assert_eq!(s_class_topological_finite(&x), SClassVerdict::Topological);
            assert_eq!(s_topology_finite(&x), x);
            assert_eq!(s_topology_finite(&x), conv::coreflect(&x, OpKind::Directed));
        }
    }

    #[test]
    fn eventual_lower_bound_sets_are_down_closed() {
        for p in enumerate::posets_up_to_iso(3) {
            let x = FiniteTopology::order_topology(&p, OrderTopologyKind::Alexandroff);
            let order = x.specialization();
            for net in canonical_nets(&x) {
                let el = eventual_lower_bounds_finite(&x, net);
                for y in mask::iter(el) {
                    assert!(mask::is_subset(order.down_mask(y), el));
                }
            }
        }
    }

    #[test]
    fn schematic_lower_bound_sets_match_the_handworked_examples() {
        let ride = SchemaNet::chain_ride();
        assert_eq!(
            eventual_lower_bounds_omega(&omega::beta(), &ride),
            SchemaSet::new(0, Vec::new(), Some(0))
        );
        assert_eq!(
            eventual_lower_bounds_omega(&omega::gamma(), &SchemaNet::constant(Point::Fin(0))),
            SchemaSet::new(0b1, Vec::new(), Some(0))
        );
        // The alternating net sits above the bottom point alone: its even
        // residue blocks the block point, and the block point blocks every
        // chain tail.
        assert_eq!(
            eventual_lower_bounds_omega(&omega::example_e(), &alternating_a()),
            SchemaSet::new(0b001, Vec::new(), None)
        );
        assert_eq!(
            eventual_lower_bounds_omega(&omega::delta(), &ride),
            SchemaSet::new(0, Vec::new(), None)
        );
    }

    #[test]
    fn class_membership_separates_convergence_on_the_alternating_net() {
        let e = crate::omega::OmegaTopology::base_of(omega::example_e());
        let alt = alternating_a();
        let a = Point::Fin(1);
        assert!(e.converges_net(&alt, a).unwrap());
        assert!(!in_s_class_omega(&e, &alt, a).unwrap());
        assert!(in_s_class_omega(&e, &alt, Point::Fin(0)).unwrap());
        let beta = crate::omega::OmegaTopology::base_of(omega::beta());
        assert!(in_s_class_omega(&beta, &SchemaNet::chain_ride(), Point::Fin(0)).unwrap());
    }

    #[test]
    fn continuity_witnesses_on_the_bundled_spaces() {
        let handle = |s: OmegaSpace| crate::omega::OmegaTopology::base_of(s);
        assert!(is_c_space_omega(&handle(omega::gamma())).unwrap());
        assert!(is_c_space_omega(&handle(omega::scott_omega_plus_one())).unwrap());
        assert!(is_c_space_omega(&handle(omega::chain_omega())).unwrap());
        assert!(!is_c_space_omega(&handle(omega::beta())).unwrap());
        assert!(!is_c_space_omega(&handle(omega::delta())).unwrap());
        match c_space_witness_omega(&handle(omega::example_e())).unwrap() {
            Some((Point::Fin(1), u)) => {
                assert!(u.contains(Point::Fin(2)));
                assert!(u.is_tailed());
            }
            other => panic!("expected a violation at the block point, got {other:?}"),
        }
    }

    #[test]
    fn the_class_topology_is_the_directed_coreflection() {
        for space in [
            omega::beta(),
            omega::gamma(),
            omega::delta(),
            omega::scott_omega_plus_one(),
            omega::chain_omega(),
            omega::example_e(),
        ] {
            let x = crate::omega::OmegaTopology::base_of(space);
            let s = s_topology_omega(&x).unwrap();
            assert_eq!(s.coreflection_kind(), Some(false));
        }
    }

    #[test]
    fn the_summit_is_class_open_but_not_open_in_the_pinpoint_space() {
        let delta = crate::omega::OmegaTopology::base_of(omega::delta());
        let summit = SchemaSet::new(0b1, Vec::new(), None);
        assert!(!delta.is_open(&summit));
        assert!(s_open(&delta, &summit).unwrap());
    }

    #[test]
    fn verdicts_on_the_bundled_spaces() {
        let handle = |s: OmegaSpace| crate::omega::OmegaTopology::base_of(s);
        assert_eq!(
            s_class_topological_omega(&handle(omega::scott_omega_plus_one()), &[]).unwrap(),
            SClassVerdict::Topological
        );
        assert_eq!(
            s_class_topological_omega(&handle(omega::gamma()), &[]).unwrap(),
            SClassVerdict::Topological
        );
        assert_eq!(
            s_class_topological_omega(&handle(omega::chain_omega()), &[]).unwrap(),
            SClassVerdict::Topological
        );
        let alt = alternating_a();
        match s_class_topological_omega(&handle(omega::example_e()), &[(alt, Point::Fin(1))])
            .unwrap()
        {
            SClassVerdict::Refuted { witness } => {
                assert!(witness.contains("[a, 2n]"), "{witness}");
                assert!(witness.contains("at a "), "{witness}");
            }
            other => panic!("expected a refutation, got {other}"),
        }
        assert!(matches!(
            s_class_topological_omega(&handle(omega::beta()), &[]).unwrap(),
            SClassVerdict::Refuted { .. }
        ));
        assert!(matches!(
            s_class_topological_omega(&handle(omega::delta()), &[]).unwrap(),
            SClassVerdict::Refuted { .. }
        ));
    }

    #[test]
    fn sampled_larger_finite_spaces_stay_topological() {
        let all = enumerate::all_posets(4);
        for i in enumerate::seeded_indices(all.len(), 24, 0xC5) {
            let x = FiniteTopology::order_topology(&all[i], OrderTopologyKind::Alexandroff);
            assert_eq!(s_class_topological_finite(&x), SClassVerdict::Topological);
            assert_eq!(s_topology_finite(&x), conv::coreflect(&x, OpKind::Directed));
        }
    }
}
