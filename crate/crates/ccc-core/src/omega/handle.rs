//! Topologies over an omega-space ground: the presented one, its
//! convergence-class coreflections, and the order topologies of the declared
//! order. A handle answers openness through an exact oracle; a schematic
//! base is re-extracted for coreflections so results stay composable.

use std::fmt;

use super::schema::{Point, SchemaNet, SchemaSet};
use super::topo;
use super::{
    close_base, ChainBound, ChainRegime, OmegaError, OmegaSpace, SchemaTemplate, MAX_BASE,
};
use crate::conv::OpKind;
use crate::mask;
use crate::topology::{FiniteTopology, OrderTopologyKind};
use crate::Subset;

/// A topology on the ground set of an omega space.
#[derive(Clone, Debug)]
pub struct OmegaTopology {
    space: OmegaSpace,
    /// `None`: the space's own base topology. `Some(strict)`: its directed
    /// coreflection, sup-anchored when strict.
    coreflected: Option<bool>,
    base: Result<Vec<SchemaTemplate>, OmegaError>,
    name: String,
}

impl OmegaTopology {
    pub fn base_of(space: OmegaSpace) -> Self {
        let name = space.name().to_string();
        let base = Ok(space.base().to_vec());
        OmegaTopology { space, coreflected: None, base, name }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn space(&self) -> &OmegaSpace {
        &self.space
    }

    /// `Some(strict)` when this handle is a coreflection of its space.
    pub fn coreflection_kind(&self) -> Option<bool> {
        self.coreflected
    }

    pub fn is_open(&self, u: &SchemaSet) -> bool {
        match self.coreflected {
            None => topo::is_open(&self.space, u),
            Some(strict) => coreflected_open(&self.space, u, strict),
        }
    }

    /// The schematic base, when one was found. The openness oracle works
    /// either way; only comparison, truncation, and further coreflection
    /// need the base.
    pub fn basis(&self) -> Result<&[SchemaTemplate], OmegaError> {
        match &self.base {
            Ok(b) => Ok(b),
            Err(e) => Err(e.clone()),
        }
    }

    /// Specialization of this topology. Coreflection squeezes between the
    /// topology and the Alexandroff one of its specialization, so the order
    /// never moves.
    pub fn spec_leq(&self, x: Point, y: Point) -> bool {
        topo::spec_leq(&self.space, x, y)
    }

    pub fn converges_net(&self, net: &SchemaNet, x: Point) -> Result<bool, OmegaError> {
        Ok(topo::converges_net_with(self.basis()?, net, x))
    }

    pub fn converges_directed(&self, d: &SchemaSet, x: Point) -> Result<bool, OmegaError> {
        topo::converges_directed_with(&self.space, self.basis()?, d, x)
    }
}

/// Openness in the directed coreflection, decided from canonical witnesses:
/// an up-closed set without a chain tail fails exactly when it contains a
/// point every neighbourhood of which is tailed (for the sup-anchored
/// variant the point must also dominate the far chain), because an
/// unbounded chain subset avoiding the set then converges there.
fn coreflected_open(space: &OmegaSpace, u: &SchemaSet, strict: bool) -> bool {
    if !topo::up_closed_spec(space, u) {
        return false;
    }
    if space.chain_regime() == ChainRegime::Discrete {
        // Far chain points are isolated in the specialization order, so
        // every directed set has a maximum and the coreflection is the
        // Alexandroff topology of the specialization.
        return true;
    }
    if u.tail.is_some() {
        return true;
    }
    let bound = space.sweep_bound(&[u.max_param()]);
    let generic = Point::Chain(bound + 2);
    !u.reps(space.n_fin(), bound).into_iter().any(|x| {
        topo::all_nbhds_tailed(space, x) && (!strict || topo::spec_leq(space, generic, x))
    })
}

/// Principal up-set of `x` in the specialization order, as a schematic set.
fn up_set_spec(space: &OmegaSpace, x: Point, bound: u64) -> SchemaSet {
    let fin = (0..space.n_fin())
        .filter(|&q| topo::spec_leq(space, x, Point::Fin(q)))
        .fold(0, |m, q| m | mask::singleton(q));
    let chain: Vec<u64> =
        (0..=bound + 1).filter(|&j| topo::spec_leq(space, x, Point::Chain(j))).collect();
    let tail = topo::spec_leq(space, x, Point::Chain(bound + 2)).then_some(bound + 2);
    SchemaSet::new(fin, chain, tail)
}

/// Searches for a schematic base of the coreflected topology and verifies
/// it against the openness oracle over a canonical battery of sets.
fn extract_base(space: &OmegaSpace, strict: bool) -> Result<Vec<SchemaTemplate>, OmegaError> {
    let n = space.n_fin();
    let bound = space.sweep_bound(&[]);
    let stab = bound + 1;

    // Fixed candidates: the space's own fixed sets, every pure finite-block
    // set, and every principal up-set of the specialization order.
    let mut candidates: Vec<SchemaSet> = Vec::new();
    for t in space.base() {
        if let SchemaTemplate::Fixed(s) = t {
            candidates.push(s.clone());
        }
    }
    for m in 0..=mask::full(n) {
        candidates.push(SchemaSet::fins(m));
    }
    for x in space.ground_reps(bound) {
        candidates.push(up_set_spec(space, x, bound));
    }
    let mut fixed: Vec<SchemaSet> = Vec::new();
    for s in candidates {
        if !s.is_empty() && coreflected_open(space, &s, strict) && !fixed.contains(&s) {
            fixed.push(s);
        }
    }

    // Family candidates: for each attachment, the latest start from which
    // every instance is open, if the far instances are open at all.
    let mut families: Vec<(bool, Subset, u64)> = Vec::new();
    for upset in [true, false] {
        for a in 0..=mask::full(n) {
            let inst = |k: u64| {
                if upset {
                    SchemaSet::new(a, Vec::new(), Some(k))
                } else {
                    SchemaSet::new(a, vec![k], None)
                }
            };
            if !coreflected_open(space, &inst(stab), strict) {
                continue;
            }
            let mut from = stab;
            for k in (0..stab).rev() {
                if coreflected_open(space, &inst(k), strict) {
                    from = k;
                } else {
                    break;
                }
            }
            families.push((upset, a, from));
        }
    }

    // A fixed set that is an instance of a kept family is redundant.
    fixed.retain(|s| {
        !families.iter().any(|&(upset, a, from)| {
            if upset {
                s.fin == a && s.chain.is_empty() && s.tail.is_some_and(|t| t >= from)
            } else {
                s.fin == a && s.tail.is_none() && s.chain.len() == 1 && s.chain[0] >= from
            }
        })
    });

    let mut out: Vec<SchemaTemplate> = fixed.into_iter().map(SchemaTemplate::Fixed).collect();
    out.extend(
        families
            .into_iter()
            .map(|(upset, attach, from)| SchemaTemplate::PerChain { upset, attach, from }),
    );
    if out.len() > MAX_BASE {
        return Err(OmegaError::BaseExtractionIncomplete);
    }

    // Battery: witness openness through the candidate base must agree with
    // the oracle on every canonical set shape.
    let chain_subsets: Vec<Vec<u64>> = (0..8u8)
        .map(|m| (0..3u64).filter(|&j| m >> j & 1 == 1).collect())
        .collect();
    let tails = [None, Some(0), Some(1), Some(2), Some(3)];
    for fm in 0..=mask::full(n) {
        for cs in &chain_subsets {
            for &t in &tails {
                let u = SchemaSet::new(fm, cs.clone(), t);
                if coreflected_open(space, &u, strict) != topo::is_open_with(space, &out, &u) {
                    return Err(OmegaError::BaseExtractionIncomplete);
                }
            }
        }
    }
    Ok(out)
}

/// The coreflection of a topology handle for one of the six operators. The
/// non-anchored operators coincide here: a canonical witness is an
/// unbounded chain subset, which is at once directed, a chain, and the
/// image of a monotone sequence. Likewise for the three anchored ones.
pub fn coreflect_omega(x: &OmegaTopology, op: OpKind) -> Result<OmegaTopology, OmegaError> {
    let strict = matches!(
        op,
        OpKind::StrictDirected | OpKind::StrictChain | OpKind::StrictSequence
    );
    let space = match x.coreflected {
        None => x.space.clone(),
        // Re-present the coreflected topology as a space of its own, so the
        // oracle machinery applies to it directly.
        Some(_) => {
            let mut s = x.space.clone();
            s.base = x.basis()?.to_vec();
            s.name = x.name.clone();
            s
        }
    };
    let base = extract_base(&space, strict);
    let name = format!("{}({})", op.token(), x.name);
    Ok(OmegaTopology { space, coreflected: Some(strict), base, name })
}

fn below_all_mask(space: &OmegaSpace) -> Subset {
    (0..space.n_fin())
        .filter(|&q| space.below(q) == ChainBound::All)
        .fold(0, |m, q| m | mask::singleton(q))
}

fn derived(space: &OmegaSpace, tag: &str, base: Vec<SchemaTemplate>) -> OmegaSpace {
    OmegaSpace {
        name: format!("{}({})", tag, space.name()),
        fin: space.fin().clone(),
        below: (0..space.n_fin()).map(|p| space.below(p)).collect(),
        above: (0..space.n_fin()).map(|p| space.above(p)).collect(),
        base,
        order_compatible: true,
    }
}

/// Chain-side templates shared by the Alexandroff and Scott topologies:
/// principal up-sets of chain points.
fn chain_up_templates(space: &OmegaSpace) -> Vec<SchemaTemplate> {
    let n = space.n_fin();
    let k = (0..n)
        .map(|p| match space.below(p) {
            ChainBound::Below(b) => b,
            _ => 0,
        })
        .max()
        .unwrap_or(0);
    let mut out = Vec::new();
    for j in 0..k {
        let covers = (0..n)
            .filter(|&q| space.below(q).covers(j))
            .fold(0, |m, q| m | mask::singleton(q));
        out.push(SchemaTemplate::Fixed(SchemaSet::new(covers, Vec::new(), Some(j))));
    }
    out.push(SchemaTemplate::PerChain { upset: true, attach: below_all_mask(space), from: k });
    out
}

/// Alexandroff topology of the declared order: all up-sets, generated by
/// the principal ones.
fn alex_space(space: &OmegaSpace) -> OmegaSpace {
    let n = space.n_fin();
    let mut base = Vec::new();
    for p in 0..n {
        base.push(SchemaTemplate::Fixed(SchemaSet::new(
            space.fin().up_mask(p),
            Vec::new(),
            space.above(p),
        )));
    }
    base.extend(chain_up_templates(space));
    derived(space, "A", base)
}

/// Upper topology of the declared order: generated by complements of
/// principal down-sets.
fn upper_space(space: &OmegaSpace) -> Result<OmegaSpace, OmegaError> {
    let n = space.n_fin();
    let mut sub: Vec<SchemaTemplate> = vec![SchemaTemplate::Fixed(SchemaSet::whole(n))];
    for q in 0..n {
        let fins = (0..n)
            .filter(|&p| !space.fin().leq(p, q))
            .fold(0, |m, p| m | mask::singleton(p));
        let tail = match space.below(q) {
            ChainBound::None => Some(0),
            ChainBound::Below(b) => Some(b),
            ChainBound::All => None,
        };
        sub.push(SchemaTemplate::Fixed(SchemaSet::new(fins, Vec::new(), tail)));
    }
    let k = (0..n).map(|p| space.above(p).unwrap_or(0)).max().unwrap_or(0);
    for c in 0..k {
        let fins = (0..n)
            .filter(|&p| !space.above(p).is_some_and(|m| m <= c))
            .fold(0, |m, p| m | mask::singleton(p));
        sub.push(SchemaTemplate::Fixed(SchemaSet::new(fins, Vec::new(), Some(c + 1))));
    }
    let none_above = (0..n)
        .filter(|&p| space.above(p).is_none())
        .fold(0, |m, p| m | mask::singleton(p));
    sub.push(SchemaTemplate::PerChain { upset: true, attach: none_above, from: k + 1 });
    let base = close_base(sub)?;
    Ok(derived(space, "U", base))
}

/// Scott topology of the declared order. The only directed sets without a
/// maximum reduce to chain tails, whose sup (when it exists) is the least
/// finite point above the whole chain; an up-set without a chain tail is
/// Scott-open exactly when it avoids that point.
fn scott_space(space: &OmegaSpace) -> OmegaSpace {
    let n = space.n_fin();
    let tops = below_all_mask(space);
    let least = mask::iter(tops)
        .find(|&l| mask::iter(tops).all(|q| space.fin().leq(l, q)));
    let mut base = Vec::new();
    for p in 0..n {
        let ups = space.fin().up_mask(p);
        match space.above(p) {
            Some(m) => {
                base.push(SchemaTemplate::Fixed(SchemaSet::new(ups, Vec::new(), Some(m))));
            }
            None => {
                if least.is_some_and(|l| mask::contains(ups, l)) {
                    // The pure up-set is refutable through the chain's sup,
                    // so the least neighbourhoods carry a tail.
                    base.push(SchemaTemplate::PerChain { upset: true, attach: ups, from: 0 });
                } else {
                    base.push(SchemaTemplate::Fixed(SchemaSet::fins(ups)));
                }
            }
        }
    }
    base.extend(chain_up_templates(space));
    derived(space, "S", base)
}

/// One of the four order topologies of the declared order, as a handle on
/// the same ground set.
pub fn order_topology_omega(
    space: &OmegaSpace,
    kind: OrderTopologyKind,
) -> Result<OmegaTopology, OmegaError> {
    Ok(match kind {
        OrderTopologyKind::Alexandroff => OmegaTopology::base_of(alex_space(space)),
        OrderTopologyKind::Upper => OmegaTopology::base_of(upper_space(space)?),
        OrderTopologyKind::Scott => OmegaTopology::base_of(scott_space(space)),
        OrderTopologyKind::WeakScott => {
            coreflect_omega(&OmegaTopology::base_of(upper_space(space)?), OpKind::Directed)?
        }
    })
}

/// How one topology's open sets sit relative to another's.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TopologyOrder {
    Equal,
    /// The left topology strictly contains the right one.
    Finer,
    /// The left topology is strictly contained in the right one.
    Coarser,
    Incomparable,
}

impl fmt::Display for TopologyOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TopologyOrder::Equal => "equal",
            TopologyOrder::Finer => "finer",
            TopologyOrder::Coarser => "coarser",
            TopologyOrder::Incomparable => "incomparable",
        })
    }
}

/// Every base instance of `x`, swept past the joint stabilization bound, is
/// open in `y`.
fn contained_in(x: &OmegaTopology, y: &OmegaTopology) -> Result<bool, OmegaError> {
    let bound = x
        .space
        .sweep_bound(&[y.space.sweep_bound(&[])]);
    for t in x.basis()? {
        match t {
            SchemaTemplate::Fixed(s) => {
                if !y.is_open(s) {
                    return Ok(false);
                }
            }
            SchemaTemplate::PerChain { from, .. } => {
                for n in *from..=bound + 1 {
                    if !y.is_open(&t.instance(n)) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Compares two topologies over the same ground set.
pub fn compare(a: &OmegaTopology, b: &OmegaTopology) -> Result<TopologyOrder, OmegaError> {
    if a.space.n_fin() != b.space.n_fin() {
        return Err(OmegaError::TemplateIllFormed(
            "topologies live on different ground sets".into(),
        ));
    }
    let a_in_b = contained_in(a, b)?;
    let b_in_a = contained_in(b, a)?;
    Ok(match (a_in_b, b_in_a) {
        (true, true) => TopologyOrder::Equal,
        (true, false) => TopologyOrder::Coarser,
        (false, true) => TopologyOrder::Finer,
        (false, false) => TopologyOrder::Incomparable,
    })
}

/// Restricts the topology to the finite block plus chain points `0..=n`.
/// Base instances beyond the cut restrict to their attachments, so a point
/// clinging to the far tail keeps those attachments as neighbourhoods.
pub fn truncate(x: &OmegaTopology, n: u64) -> Result<FiniteTopology, OmegaError> {
    let space = &x.space;
    let nf = space.n_fin();
    let labels_owned: Vec<String> = (0..nf)
        .map(|p| space.fin().label(p).to_string())
        .chain((0..=n).map(|j| j.to_string()))
        .collect();
    let labels: Vec<&str> = labels_owned.iter().map(|s| s.as_str()).collect();
    let restrict = |s: &SchemaSet| -> Subset {
        let mut m = s.fin;
        for &j in &s.chain {
            if j <= n {
                m |= mask::singleton(nf + j as usize);
            }
        }
        if let Some(t) = s.tail {
            for j in t..=n.max(t) {
                if j <= n {
                    m |= mask::singleton(nf + j as usize);
                }
            }
        }
        m
    };
    let mut sub: Vec<Subset> = Vec::new();
    for t in x.basis()? {
        match t {
            SchemaTemplate::Fixed(s) => sub.push(restrict(s)),
            SchemaTemplate::PerChain { attach, from, .. } => {
                for k in *from..=n.max(*from) {
                    if k <= n {
                        sub.push(restrict(&t.instance(k)));
                    }
                }
                sub.push(*attach);
            }
        }
    }
    FiniteTopology::from_subbase(&labels, &sub)
        .map_err(|e| OmegaError::TemplateIllFormed(e.to_string()))
}

/// Whether a directed set has an upper bound in the declared order.
pub fn has_upper_bound(space: &OmegaSpace, d: &SchemaSet) -> Result<bool, OmegaError> {
    if !topo::is_directed_declared(space, d) {
        return Err(OmegaError::NotDirected);
    }
    if d.tail.is_some() {
        // Only a finite point above the whole chain can dominate a tail.
        return Ok((0..space.n_fin()).any(|p| {
            space.below(p) == ChainBound::All
                && mask::iter(d.fin).all(|q| space.fin().leq(q, p))
        }));
    }
    let bound = space.sweep_bound(&[d.max_param()]);
    let members: Vec<Point> = mask::iter(d.fin)
        .map(Point::Fin)
        .chain(d.chain.iter().map(|&j| Point::Chain(j)))
        .collect();
    Ok(space
        .ground_reps(bound)
        .into_iter()
        .any(|z| members.iter().all(|&m| space.declared_leq(m, z))))
}

#[cfg(test)]
mod tests {
    use super::super::{beta, chain_omega, delta, example_e, gamma, scott_omega_plus_one};
    use super::*;

    fn base(space: OmegaSpace) -> OmegaTopology {
        OmegaTopology::base_of(space)
    }

    fn inf_set() -> SchemaSet {
        SchemaSet::fins(0b1)
    }

    #[test]
    fn beta_splits_the_anchored_and_plain_coreflections() {
        let b = base(beta());
        let plain = coreflect_omega(&b, OpKind::Directed).unwrap();
        let anchored = coreflect_omega(&b, OpKind::StrictDirected).unwrap();
        assert!(!b.is_open(&inf_set()));
        assert!(!plain.is_open(&inf_set()));
        assert!(anchored.is_open(&inf_set()));
        assert_eq!(compare(&plain, &b).unwrap(), TopologyOrder::Equal);
        assert_eq!(compare(&anchored, &b).unwrap(), TopologyOrder::Finer);
        assert_eq!(compare(&b, &anchored).unwrap(), TopologyOrder::Coarser);
    }

    #[test]
    fn gamma_is_fixed_by_both_coreflections() {
        let g = base(gamma());
        for op in [OpKind::Directed, OpKind::StrictDirected] {
            let c = coreflect_omega(&g, op).unwrap();
            assert_eq!(compare(&c, &g).unwrap(), TopologyOrder::Equal, "{}", c.name());
            assert!(!c.is_open(&inf_set()));
        }
    }

    #[test]
    fn delta_coreflects_to_the_discrete_topology() {
        let d = base(delta());
        let c = coreflect_omega(&d, OpKind::Directed).unwrap();
        assert!(!d.is_open(&inf_set()));
        assert!(c.is_open(&inf_set()));
        assert!(c.is_open(&SchemaSet::new(0, vec![5], None)));
        assert!(c.is_open(&SchemaSet::new(0b1, vec![2, 7], None)));
        assert_eq!(compare(&c, &d).unwrap(), TopologyOrder::Finer);
        // The anchored variant agrees: the specialization order is equality.
        let c2 = coreflect_omega(&d, OpKind::StrictDirected).unwrap();
        assert_eq!(compare(&c, &c2).unwrap(), TopologyOrder::Equal);
    }

    #[test]
    fn example_e_separates_the_two_operators() {
        let e = base(example_e());
        let up_a = SchemaSet::fins(0b110);
        assert!(!e.is_open(&up_a));
        let plain = coreflect_omega(&e, OpKind::Directed).unwrap();
        assert_eq!(compare(&plain, &e).unwrap(), TopologyOrder::Equal);
        assert!(!plain.is_open(&up_a));
        let anchored = coreflect_omega(&e, OpKind::StrictDirected).unwrap();
        assert!(anchored.is_open(&up_a));
        assert!(anchored.is_open(&SchemaSet::fins(0b100)));
        assert_eq!(compare(&anchored, &e).unwrap(), TopologyOrder::Finer);
    }

    #[test]
    fn operators_in_one_strictness_class_coincide() {
        for s in [beta(), delta(), example_e()] {
            let h = base(s);
            let d = coreflect_omega(&h, OpKind::Directed).unwrap();
            for op in [OpKind::Chain, OpKind::Sequence] {
                let c = coreflect_omega(&h, op).unwrap();
                assert_eq!(compare(&c, &d).unwrap(), TopologyOrder::Equal);
            }
            let ds = coreflect_omega(&h, OpKind::StrictDirected).unwrap();
            for op in [OpKind::StrictChain, OpKind::StrictSequence] {
                let c = coreflect_omega(&h, op).unwrap();
                assert_eq!(compare(&c, &ds).unwrap(), TopologyOrder::Equal);
            }
        }
    }

    #[test]
    fn coreflection_is_idempotent() {
        for s in [beta(), gamma(), delta(), scott_omega_plus_one(), chain_omega(), example_e()] {
            for op in [OpKind::Directed, OpKind::StrictDirected] {
                let once = coreflect_omega(&base(s.clone()), op).unwrap();
                let twice = coreflect_omega(&once, op).unwrap();
                assert_eq!(
                    compare(&once, &twice).unwrap(),
                    TopologyOrder::Equal,
                    "{}",
                    twice.name()
                );
            }
        }
    }

    #[test]
    fn order_topologies_of_the_chain_with_top() {
        let g = gamma();
        let alex = order_topology_omega(&g, OrderTopologyKind::Alexandroff).unwrap();
        let upper = order_topology_omega(&g, OrderTopologyKind::Upper).unwrap();
        let scott = order_topology_omega(&g, OrderTopologyKind::Scott).unwrap();
        let weak = order_topology_omega(&g, OrderTopologyKind::WeakScott).unwrap();
        // The top's principal up-set is open only in the Alexandroff one.
        assert!(alex.is_open(&inf_set()));
        assert!(!scott.is_open(&inf_set()));
        assert_eq!(compare(&alex, &scott).unwrap(), TopologyOrder::Finer);
        // Scott and weak Scott coincide here, and both equal the presented
        // tail topology.
        assert_eq!(compare(&scott, &weak).unwrap(), TopologyOrder::Equal);
        let g2 = base(scott_omega_plus_one());
        assert_eq!(compare(&scott, &g2).unwrap(), TopologyOrder::Equal);
        assert_eq!(compare(&upper, &g2).unwrap(), TopologyOrder::Equal);
    }

    #[test]
    fn order_topologies_of_the_bare_chain_collapse() {
        let w = chain_omega();
        let alex = order_topology_omega(&w, OrderTopologyKind::Alexandroff).unwrap();
        let scott = order_topology_omega(&w, OrderTopologyKind::Scott).unwrap();
        let upper = order_topology_omega(&w, OrderTopologyKind::Upper).unwrap();
        assert_eq!(compare(&alex, &scott).unwrap(), TopologyOrder::Equal);
        assert_eq!(compare(&alex, &upper).unwrap(), TopologyOrder::Equal);
        assert_eq!(compare(&alex, &base(w.clone())).unwrap(), TopologyOrder::Equal);
    }

    #[test]
    fn presented_spaces_sit_in_the_order_sandwich() {
        for s in [beta(), gamma(), scott_omega_plus_one(), example_e()] {
            let x = base(s.clone());
            let upper = order_topology_omega(&s, OrderTopologyKind::Upper).unwrap();
            let weak = order_topology_omega(&s, OrderTopologyKind::WeakScott).unwrap();
            let alex = order_topology_omega(&s, OrderTopologyKind::Alexandroff).unwrap();
            for (lo, hi) in [(&upper, &weak), (&weak, &x), (&x, &alex)] {
                let ord = compare(lo, hi).unwrap();
                assert!(
                    ord == TopologyOrder::Coarser || ord == TopologyOrder::Equal,
                    "{} vs {}: {}",
                    lo.name(),
                    hi.name(),
                    ord
                );
            }
        }
    }

    #[test]
    fn derived_spaces_keep_the_declared_specialization() {
        for s in [beta(), gamma(), example_e()] {
            let handles = [
                order_topology_omega(&s, OrderTopologyKind::Alexandroff).unwrap(),
                order_topology_omega(&s, OrderTopologyKind::Upper).unwrap(),
                order_topology_omega(&s, OrderTopologyKind::Scott).unwrap(),
            ];
            let bound = s.sweep_bound(&[]);
            for h in &handles {
                for &x in &s.ground_reps(bound) {
                    for &y in &s.ground_reps(bound) {
                        assert_eq!(
                            h.spec_leq(x, y),
                            s.declared_leq(x, y),
                            "{} at ({:?}, {:?})",
                            h.name(),
                            x,
                            y
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn gamma_is_coarser_than_beta() {
        let g = base(gamma());
        let b = base(beta());
        assert_eq!(compare(&g, &b).unwrap(), TopologyOrder::Coarser);
        assert_eq!(compare(&b, &g).unwrap(), TopologyOrder::Finer);
        // The pinpoint space refines both: singletons rebuild every tail.
        let d = base(delta());
        assert_eq!(compare(&g, &d).unwrap(), TopologyOrder::Coarser);
        assert_eq!(compare(&b, &d).unwrap(), TopologyOrder::Coarser);
    }

    #[test]
    fn truncation_keeps_restricted_opens() {
        let t = truncate(&base(beta()), 2).unwrap();
        assert_eq!(t.n(), 4);
        // The fresh point keeps its far-tail neighbourhoods, which restrict
        // to the bare singleton here.
        assert!(t.is_open(0b0001));
        assert!(t.is_open(0b1000));
        assert!(t.is_open(0b1100));
        assert!(!t.is_open(0b0100));
        assert!(t.is_open(0b1110));
    }

    #[test]
    fn truncating_the_chain_with_top_at_zero_gives_sierpinski() {
        let t = truncate(&base(gamma()), 0).unwrap();
        assert_eq!(t.n(), 2);
        assert_eq!(t.opens().len(), 3);
        assert!(t.is_open(0b01));
        assert!(!t.is_open(0b10));
    }

    #[test]
    fn truncation_restricts_the_specialization_order() {
        let t = truncate(&base(gamma()), 3).unwrap();
        let spec = t.specialization();
        // Ground order: inf, then chain points 0..=3.
        assert!(spec.leq(1, 0));
        assert!(spec.leq(1, 2));
        assert!(!spec.leq(2, 1));
        assert!(spec.leq(4, 0));
    }

    #[test]
    fn upper_bounds_of_the_whole_chain() {
        let tail = SchemaSet::new(0, Vec::new(), Some(0));
        assert_eq!(has_upper_bound(&chain_omega(), &tail), Ok(false));
        assert_eq!(has_upper_bound(&gamma(), &tail), Ok(true));
        assert_eq!(has_upper_bound(&beta(), &tail), Ok(false));
        let with_bot = SchemaSet::new(0b001, Vec::new(), Some(0));
        assert_eq!(has_upper_bound(&example_e(), &with_bot), Ok(false));
        let finite = SchemaSet::new(0, vec![1, 4], None);
        assert_eq!(has_upper_bound(&beta(), &finite), Ok(true));
        assert_eq!(
            has_upper_bound(&example_e(), &SchemaSet::fins(0b110)),
            Ok(true)
        );
        assert_eq!(has_upper_bound(&beta(), &SchemaSet::empty()), Err(OmegaError::NotDirected));
    }

    #[test]
    fn extracted_bases_stay_usable_downstream() {
        let b = base(beta());
        let plain = coreflect_omega(&b, OpKind::Directed).unwrap();
        let anchored = coreflect_omega(&b, OpKind::StrictDirected).unwrap();
        assert!(!anchored.basis().unwrap().is_empty());
        // Opening the fresh point's singleton kills the chain's convergence
        // to it; the plain coreflection leaves that convergence alone.
        let ride = SchemaNet::chain_ride();
        assert_eq!(plain.converges_net(&ride, Point::Fin(0)), Ok(true));
        assert_eq!(anchored.converges_net(&ride, Point::Fin(0)), Ok(false));
        let t = truncate(&anchored, 1).unwrap();
        assert!(t.is_open(0b001));
    }
}
