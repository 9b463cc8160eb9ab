//! Convergence classes on finite ground sets and the topologies they
//! determine.
//!
//! On a finite ground set every net is, up to eventual behaviour, either
//! a principal tail net (eventually inside `U` iff `U` covers a fixed set
//! `S`) or the monotone net of a directed subset read along a preorder.
//! A class is a finite list of (net, limit) pairs; the topology it
//! determines keeps exactly the candidate opens that every classed pair
//! respects. Coreflection along one of the six class operators is the
//! determined topology of that operator's class.

use crate::order::FinitePoset;
use crate::topology::FiniteTopology;
use crate::{mask, Subset};
use thiserror::Error;

/// A net on a finite ground set, canonicalized to its eventual behaviour.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FiniteNet {
    /// Eventually inside `U` iff `U ⊇ S`; `S` nonempty.
    Tail(Subset),
    /// The monotone net of a directed set: eventually inside `U` iff some
    /// `d` in `D` has its residual up-set `↑d ∩ D` inside `U`.
    Directed(Subset),
}

impl FiniteNet {
    pub fn carrier(&self) -> Subset {
        match *self {
            FiniteNet::Tail(s) => s,
            FiniteNet::Directed(d) => d,
        }
    }
}

/// The six class operators, named by the nets they collect. The `Strict`
/// variants additionally relate a net to the points it sits above: a pair
/// qualifies when the limit lies below the carrier, or the net converges
/// and the carrier lies below the limit (on T0 ground the latter forces
/// the limit to be the carrier's sup).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    /// Convergent directed sets. CLI token: `D`.
    Directed,
    /// Sup-anchored directed sets. CLI token: `D'`.
    StrictDirected,
    /// Convergent chains (totally ordered directed sets). CLI token: `I`.
    Chain,
    /// Sup-anchored chains. CLI token: `I'`.
    StrictChain,
    /// Tail sets of monotone sequences (equivalence cliques). CLI token: `N`.
    Sequence,
    /// Sup-anchored sequence tails. CLI token: `N'`.
    StrictSequence,
}

impl OpKind {
    pub const ALL: [OpKind; 6] = [
        OpKind::Directed,
        OpKind::StrictDirected,
        OpKind::Chain,
        OpKind::StrictChain,
        OpKind::Sequence,
        OpKind::StrictSequence,
    ];

    pub fn token(self) -> &'static str {
        match self {
            OpKind::Directed => "D",
            OpKind::StrictDirected => "D'",
            OpKind::Chain => "I",
            OpKind::StrictChain => "I'",
            OpKind::Sequence => "N",
            OpKind::StrictSequence => "N'",
        }
    }

    pub fn from_token(t: &str) -> Option<Self> {
        Some(match t {
            "D" => OpKind::Directed,
            "D'" => OpKind::StrictDirected,
            "I" => OpKind::Chain,
            "I'" => OpKind::StrictChain,
            "N" => OpKind::Sequence,
            "N'" => OpKind::StrictSequence,
            _ => return None,
        })
    }
}

/// A finite convergence class: (net, limit) pairs over a ground set of
/// size `n`, with directed-net tails read along `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvClass {
    n: usize,
    order: FinitePoset,
    pairs: Vec<(FiniteNet, usize)>,
}

/// Violations of the sandwich hypothesis required by transfinite closure.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConvError {
    #[error("hypothesis violated: pair ({net:?}, {limit}) is not a directed carrier")]
    HypothesisNotDirected { net: FiniteNet, limit: usize },
    #[error("hypothesis violated: missing singleton pair ({{{above}}}, {below})")]
    HypothesisMissingSingleton { below: usize, above: usize },
    #[error("hypothesis violated: pair ({net:?}, {limit}) has its limit outside the carrier's cut")]
    HypothesisLimitOutsideCut { net: FiniteNet, limit: usize },
}

impl ConvClass {
    pub fn new(order: FinitePoset, pairs: Vec<(FiniteNet, usize)>) -> Self {
        let n = order.n();
        let mut pairs = pairs;
        pairs.sort_unstable();
        pairs.dedup();
        ConvClass { n, order, pairs }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn order(&self) -> &FinitePoset {
        &self.order
    }

    pub fn pairs(&self) -> &[(FiniteNet, usize)] {
        &self.pairs
    }

    pub fn contains(&self, net: FiniteNet, limit: usize) -> bool {
        self.pairs.binary_search(&(net, limit)).is_ok()
    }

    pub fn is_subclass_of(&self, other: &ConvClass) -> bool {
        self.pairs.iter().all(|&(net, x)| other.contains(net, x))
    }
}

/// Inclusion-minimal residual up-sets `↑d ∩ D` of a directed set; a net is
/// eventually inside `U` iff one of them is contained in `U`.
fn minimal_tails(order: &FinitePoset, d: Subset) -> Vec<Subset> {
    let mut tails: Vec<Subset> = mask::iter(d).map(|i| order.up_mask(i) & d).collect();
    tails.sort_unstable();
    tails.dedup();
    let keep: Vec<Subset> = tails
        .iter()
        .copied()
        .filter(|&t| !tails.iter().any(|&s| s != t && mask::is_subset(s, t)))
        .collect();
    keep
}

/// True iff the net is eventually inside `u`.
pub fn eventually(order: &FinitePoset, net: FiniteNet, u: Subset) -> bool {
    match net {
        FiniteNet::Tail(s) => mask::is_subset(s, u),
        FiniteNet::Directed(d) => mask::iter(d).any(|i| mask::is_subset(order.up_mask(i) & d, u)),
    }
}

/// True iff the net converges to `x` in `space`: it is eventually inside
/// every open neighbourhood of `x`, equivalently inside the minimal one.
pub fn converges(space: &FiniteTopology, net: FiniteNet, x: usize) -> bool {
    let order = space.specialization();
    eventually(&order, net, space.min_nbhd(x))
}

/// The class an operator assigns to a space, built from the operator's own
/// definition over the specialization preorder.
pub fn op_class(space: &FiniteTopology, kind: OpKind) -> ConvClass {
    let order = space.specialization();
    let n = space.n();
    // Convergence to `x` is eventual containment in its minimal
    // neighbourhood; hoisted so the subset sweep stays cheap on function
    // spaces.
    let min_nb: Vec<Subset> = (0..n).map(|x| space.min_nbhd(x)).collect();
    let mut pairs = Vec::new();
    let carrier_ok = |s: Subset| -> bool {
        match kind {
            OpKind::Directed | OpKind::StrictDirected => order.is_directed(s),
            OpKind::Chain | OpKind::StrictChain => order.is_chain_subset(s),
            OpKind::Sequence | OpKind::StrictSequence => order.is_equivalence_clique(s),
        }
    };
    let strict = matches!(
        kind,
        OpKind::StrictDirected | OpKind::StrictChain | OpKind::StrictSequence
    );
    for s in 1..=mask::full(n) {
        if !carrier_ok(s) {
            continue;
        }
        let net = match kind {
            OpKind::Sequence | OpKind::StrictSequence => FiniteNet::Tail(s),
            _ => FiniteNet::Directed(s),
        };
        for x in 0..n {
            let member = if strict {
                mask::contains(order.down_set(s), x)
                    || (eventually(&order, net, min_nb[x])
                        && mask::is_subset(s, order.down_mask(x)))
            } else {
                eventually(&order, net, min_nb[x])
            };
            if member {
                pairs.push((net, x));
            }
        }
    }
    ConvClass::new(order, pairs)
}

/// The class of pairs `({x}, x)` only; determines the discrete topology.
pub fn point_class(space: &FiniteTopology) -> ConvClass {
    let order = space.specialization();
    let pairs = (0..space.n())
        .map(|x| (FiniteNet::Directed(mask::singleton(x)), x))
        .collect();
    ConvClass::new(order, pairs)
}

/// The topology a class determines: a candidate is open iff every classed
/// pair with its limit inside is eventually inside.
pub fn determined_topology(labels: &[&str], class: &ConvClass) -> FiniteTopology {
    let n = labels.len();
    assert_eq!(n, class.n());
    // Memoize eventual behaviour as minimal tails per distinct net.
    let mut nets: Vec<FiniteNet> = class.pairs.iter().map(|p| p.0).collect();
    nets.sort_unstable();
    nets.dedup();
    let tails: Vec<(FiniteNet, Vec<Subset>, Subset)> = nets
        .iter()
        .map(|&net| {
            let t = match net {
                FiniteNet::Tail(s) => vec![s],
                FiniteNet::Directed(d) => minimal_tails(&class.order, d),
            };
            let limits = class
                .pairs
                .iter()
                .filter(|p| p.0 == net)
                .fold(0, |acc, p| acc | mask::singleton(p.1));
            (net, t, limits)
        })
        .collect();
    let opens: Vec<Subset> = (0..=mask::full(n))
        .filter(|&u| {
            tails.iter().all(|(_, t, limits)| {
                limits & u == 0 || t.iter().any(|&s| mask::is_subset(s, u))
            })
        })
        .collect();
    let topo = FiniteTopology::make(labels, &opens);
    debug_assert!(topo.is_ok(), "determined families are always topologies");
    topo.expect("determined families are closed under union and finite intersection")
}

/// Coreflection of a space along an operator: the topology determined by
/// the operator's class. Always refines the input.
pub fn coreflect(space: &FiniteTopology, kind: OpKind) -> FiniteTopology {
    let labels: Vec<&str> = space.labels().iter().map(|s| s.as_str()).collect();
    let class = op_class(space, kind);
    let out = determined_topology(&labels, &class);
    debug_assert!(out.refines(space));
    out
}

/// True iff the space already carries the topology its operator class
/// determines.
pub fn is_determined(space: &FiniteTopology, kind: OpKind) -> bool {
    coreflect(space, kind).opens() == space.opens()
}

/// Iterated closure of `f` under a class on `p`: each stage adds the
/// limits of classed nets whose carriers sit inside the stages so far.
/// Requires the sandwich hypothesis: every pair `({y}, x)` with `x <= y`
/// is classed, every classed pair is a directed carrier with its limit in
/// the carrier's cut. Returns the stage masks and the fixpoint, which
/// equals the topological closure of `f` in the determined topology.
pub fn closure_transfinite(
    p: &FinitePoset,
    class: &ConvClass,
    f: Subset,
) -> Result<(Vec<Subset>, Subset), ConvError> {
    assert_eq!(p.n(), class.n());
    for &(net, x) in class.pairs() {
        let d = match net {
            FiniteNet::Directed(d) => d,
            FiniteNet::Tail(_) => return Err(ConvError::HypothesisNotDirected { net, limit: x }),
        };
        if !p.is_directed(d) {
            return Err(ConvError::HypothesisNotDirected { net, limit: x });
        }
        if !mask::contains(p.cut(d), x) {
            return Err(ConvError::HypothesisLimitOutsideCut { net, limit: x });
        }
    }
    for y in 0..p.n() {
        for x in mask::iter(p.down_mask(y)) {
            if !class.contains(FiniteNet::Directed(mask::singleton(y)), x) {
                return Err(ConvError::HypothesisMissingSingleton { below: x, above: y });
            }
        }
    }
    let mut stages = vec![f];
    let mut current = f;
    loop {
        let mut next = current;
        for &(net, x) in class.pairs() {
            if mask::is_subset(net.carrier(), current) {
                next |= mask::singleton(x);
            }
        }
        if next == current {
            break;
        }
        stages.push(next);
        current = next;
    }
    Ok((stages, current))
}

/// All sandwich classes on `p`: every class between the mandatory
/// singleton pairs and the full cut relation, presented as the mandatory
/// core plus a choice among the optional multi-point pairs.
pub fn sandwich_parts(p: &FinitePoset) -> (Vec<(FiniteNet, usize)>, Vec<(FiniteNet, usize)>) {
    let mut mandatory = Vec::new();
    for y in 0..p.n() {
        for x in mask::iter(p.down_mask(y)) {
            mandatory.push((FiniteNet::Directed(mask::singleton(y)), x));
        }
    }
    let mut optional = Vec::new();
    for d in p.directed_subsets() {
        if d.count_ones() < 2 {
            continue;
        }
        for x in mask::iter(p.cut(d)) {
            optional.push((FiniteNet::Directed(d), x));
        }
    }
    (mandatory, optional)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderMode;
    use crate::topology::OrderTopologyKind;

    fn sierpinski() -> FiniteTopology {
        FiniteTopology::sierpinski()
    }

    #[test]
    fn convergence_in_sierpinski() {
        let s = sierpinski();
        // Constant net at top converges to both points; at bot only to bot.
        assert!(converges(&s, FiniteNet::Tail(0b10), 0));
        assert!(converges(&s, FiniteNet::Tail(0b10), 1));
        assert!(converges(&s, FiniteNet::Tail(0b01), 0));
        assert!(!converges(&s, FiniteNet::Tail(0b01), 1));
    }

    #[test]
    fn directed_class_of_sierpinski() {
        let c = op_class(&sierpinski(), OpKind::Directed);
        for (net, x) in [
            (FiniteNet::Directed(0b10), 0),
            (FiniteNet::Directed(0b10), 1),
            (FiniteNet::Directed(0b01), 0),
        ] {
            assert!(c.contains(net, x));
        }
        assert!(!c.contains(FiniteNet::Directed(0b01), 1));
        assert!(c.contains(FiniteNet::Directed(0b11), 1));
        assert_eq!(c.pairs().len(), 5);
    }

    #[test]
    fn strict_class_is_a_subclass() {
        for kind in [OpKind::Directed, OpKind::Chain] {
            let strict = match kind {
                OpKind::Directed => OpKind::StrictDirected,
                _ => OpKind::StrictChain,
            };
            for space in [
                sierpinski(),
                FiniteTopology::discrete(&["a", "b", "c"]),
                FiniteTopology::order_topology(
                    &FinitePoset::chain(3),
                    OrderTopologyKind::Alexandroff,
                ),
            ] {
                let big = op_class(&space, kind);
                let small = op_class(&space, strict);
                assert!(small.is_subclass_of(&big));
            }
        }
    }

    #[test]
    fn antitone_class_to_topology() {
        // A smaller class determines a finer topology.
        let s = sierpinski();
        let labels = ["bot", "top"];
        let big = op_class(&s, OpKind::Directed);
        let small = point_class(&s);
        assert!(small.is_subclass_of(&big));
        let t_big = determined_topology(&labels, &big);
        let t_small = determined_topology(&labels, &small);
        assert!(t_small.refines(&t_big));
        assert_eq!(t_small.opens().len(), 4);
    }

    #[test]
    fn upper_topologies_are_their_own_directed_coreflection() {
        // Justifies collapsing the weak Scott topology onto the upper one
        // for finite grounds.
        for p in [
            FinitePoset::chain(4),
            FinitePoset::discrete(3),
            FinitePoset::build(
                &["a", "b", "t"],
                &[("a", "t"), ("b", "t")],
                OrderMode::Partial,
            )
            .unwrap(),
        ] {
            let upper = FiniteTopology::order_topology(&p, OrderTopologyKind::Upper);
            let weak = FiniteTopology::order_topology(&p, OrderTopologyKind::WeakScott);
            assert_eq!(upper, weak);
            assert_eq!(coreflect(&upper, OpKind::Directed), upper);
        }
    }

    #[test]
    fn every_finite_space_is_determined_for_all_six() {
        let spaces = [
            sierpinski(),
            FiniteTopology::discrete(&["a", "b"]),
            FiniteTopology::indiscrete(&["a", "b"]),
            FiniteTopology::order_topology(
                &FinitePoset::build(
                    &["a", "b", "t"],
                    &[("a", "t"), ("b", "t")],
                    OrderMode::Partial,
                )
                .unwrap(),
                OrderTopologyKind::Alexandroff,
            ),
        ];
        for space in &spaces {
            for kind in OpKind::ALL {
                assert!(is_determined(space, kind), "{kind:?} on {space:?}");
            }
            // The point class is strictly finer on non-discrete spaces.
            let labels: Vec<&str> = space.labels().iter().map(|s| s.as_str()).collect();
            let pc = determined_topology(&labels, &point_class(space));
            assert_eq!(pc.opens().len(), 1 << space.n());
        }
    }

    #[test]
    fn sequence_class_uses_equivalence_cliques() {
        // On an indiscrete 2-point space both points are equivalent, so the
        // two-point tail set is a sequence carrier.
        let ind = FiniteTopology::indiscrete(&["a", "b"]);
        let c = op_class(&ind, OpKind::Sequence);
        assert!(c.contains(FiniteNet::Tail(0b11), 0));
        assert!(c.contains(FiniteNet::Tail(0b11), 1));
        // On a T0 space only singleton cliques exist.
        let c2 = op_class(&sierpinski(), OpKind::Sequence);
        assert!(c2.pairs().iter().all(|(n, _)| n.carrier().count_ones() == 1));
    }

    #[test]
    fn closure_stages_on_a_chain() {
        let p = FinitePoset::chain(3);
        let (mandatory, optional) = sandwich_parts(&p);
        let class = ConvClass::new(
            p.clone(),
            mandatory.into_iter().chain(optional).collect(),
        );
        // With the full sandwich class, closure of {p2} is everything below it.
        let (stages, star) = closure_transfinite(&p, &class, 0b100).unwrap();
        assert_eq!(star, 0b111);
        assert!(stages.len() >= 2);
        let labels = ["p0", "p1", "p2"];
        let det = determined_topology(&labels, &class);
        assert_eq!(det.closure(0b100), star);
    }

    #[test]
    fn closure_rejects_class_missing_singletons() {
        // A chain whose class only relates the lower part to its own top:
        // the pair is legal but the mandatory singleton pairs are absent.
        let p = FinitePoset::chain(4);
        let class = ConvClass::new(p.clone(), vec![(FiniteNet::Directed(0b0111), 2)]);
        let err = closure_transfinite(&p, &class, 0b0001).unwrap_err();
        assert!(matches!(err, ConvError::HypothesisMissingSingleton { .. }));
        // Relating the lower part to the top above it violates the cut
        // bound in a finite model: the carrier's maximum is an upper bound.
        let class2 = ConvClass::new(p.clone(), vec![(FiniteNet::Directed(0b0111), 3)]);
        let err2 = closure_transfinite(&p, &class2, 0b0001).unwrap_err();
        assert!(matches!(err2, ConvError::HypothesisLimitOutsideCut { .. }));
    }

    #[test]
    fn closure_rejects_limit_outside_cut() {
        let p = FinitePoset::discrete(2);
        let (mandatory, _) = sandwich_parts(&p);
        let mut pairs = mandatory;
        // {p0} cannot be classed with limit p1 on an antichain.
        pairs.push((FiniteNet::Directed(0b01), 1));
        let class = ConvClass::new(p.clone(), pairs);
        let err = closure_transfinite(&p, &class, 0b01).unwrap_err();
        assert_eq!(
            err,
            ConvError::HypothesisLimitOutsideCut { net: FiniteNet::Directed(0b01), limit: 1 }
        );
    }

    #[test]
    fn closure_rejects_non_directed_carriers() {
        let p = FinitePoset::discrete(2);
        let (mandatory, _) = sandwich_parts(&p);
        let mut pairs = mandatory;
        pairs.push((FiniteNet::Directed(0b11), 0));
        let class = ConvClass::new(p.clone(), pairs);
        let err = closure_transfinite(&p, &class, 0b10).unwrap_err();
        assert!(matches!(err, ConvError::HypothesisNotDirected { .. }));
    }

    #[test]
    fn minimal_tails_collapse_to_maxima() {
        let p = FinitePoset::chain(4);
        assert_eq!(minimal_tails(&p, 0b1011), vec![0b1000]);
        let pre = FinitePoset::build(
            &["a", "b"],
            &[("a", "b"), ("b", "a")],
            OrderMode::Preorder,
        )
        .unwrap();
        // Both elements are maxima of the equivalence clique; the minimal
        // tail is the whole clique.
        assert_eq!(minimal_tails(&pre, 0b11), vec![0b11]);
    }
}
