//! Countable spaces presented by a finite block plus one ω-chain.
//!
//! A space here is a finite poset F, cross ordering data tying F to the
//! chain, and a base of schematic open-set templates. Everything a caller
//! can ask (openness, convergence, specialization, coreflections, the order
//! topologies) is decided exactly by finite case analysis: all numeric
//! thresholds in a presentation are bounded, so membership questions
//! stabilize beyond the largest parameter and one generic index stands in
//! for every larger one.

mod handle;
mod schema;
mod topo;

pub use handle::{
    compare, coreflect_omega, has_upper_bound, order_topology_omega, truncate, OmegaTopology,
    TopologyOrder,
};
pub use schema::{NetStep, Point, SchemaNet, SchemaSet};
pub use topo::{converges_directed, converges_net, is_open, spec_leq};

use thiserror::Error;

use crate::mask;
use crate::order::{FinitePoset, OrderMode};
use crate::Subset;

/// Which chain elements sit below a finite-block point in the declared order.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainBound {
    None,
    /// Chain points with index strictly below the bound.
    Below(u64),
    All,
}

impl ChainBound {
    pub fn covers(&self, j: u64) -> bool {
        match self {
            ChainBound::None => false,
            ChainBound::Below(b) => j < *b,
            ChainBound::All => true,
        }
    }

    fn within(&self, other: &ChainBound) -> bool {
        match (self, other) {
            (ChainBound::None, _) => true,
            (_, ChainBound::All) => true,
            (ChainBound::Below(a), ChainBound::Below(b)) => a <= b,
            _ => false,
        }
    }

    fn max_param(&self) -> u64 {
        match self {
            ChainBound::Below(b) => *b,
            _ => 0,
        }
    }
}

/// A base template: either one fixed schematic set or a uniform family with
/// one instance per chain index `n >= from`. An upset family's instance is
/// the chain tail from n together with `attach`; a pinpoint family's
/// instance is the single chain point n together with `attach`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum SchemaTemplate {
    Fixed(SchemaSet),
    PerChain { upset: bool, attach: Subset, from: u64 },
}

impl SchemaTemplate {
    pub fn instance(&self, n: u64) -> SchemaSet {
        match self {
            SchemaTemplate::Fixed(s) => s.clone(),
            SchemaTemplate::PerChain { upset, attach, from } => {
                debug_assert!(n >= *from);
                if *upset {
                    SchemaSet::new(*attach, Vec::new(), Some(n))
                } else {
                    SchemaSet::new(*attach, vec![n], None)
                }
            }
        }
    }

    pub fn max_param(&self) -> u64 {
        match self {
            SchemaTemplate::Fixed(s) => s.max_param(),
            SchemaTemplate::PerChain { from, .. } => *from,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OmegaError {
    #[error("declared order is inconsistent: {0}")]
    OrderInconsistent(String),
    #[error("base template is ill-formed: {0}")]
    TemplateIllFormed(String),
    #[error("set is not directed in the declared order")]
    NotDirected,
    #[error("no schematic base found that generates the coreflected topology")]
    BaseExtractionIncomplete,
}

/// A countable space F ⊎ ℕ with a validated declared order and an
/// intersection-closed schematic base.
#[derive(Clone, PartialEq, Debug)]
pub struct OmegaSpace {
    name: String,
    fin: FinitePoset,
    below: Vec<ChainBound>,
    above: Vec<Option<u64>>,
    base: Vec<SchemaTemplate>,
    order_compatible: bool,
}

/// Raw presentation accepted by [`build_omega`].
#[derive(Clone, Debug)]
pub struct OmegaSpec {
    pub name: String,
    pub fin_labels: Vec<String>,
    pub fin_pairs: Vec<(String, String)>,
    pub below: Vec<ChainBound>,
    pub above: Vec<Option<u64>>,
    pub base: Vec<SchemaTemplate>,
    /// When set, validation checks that the specialization order of the
    /// generated topology agrees with the declared order.
    pub order_compatible: bool,
}

const MAX_FIN: usize = 8;
const MAX_BASE: usize = 256;

pub fn build_omega(spec: OmegaSpec) -> Result<OmegaSpace, OmegaError> {
    let labels: Vec<&str> = spec.fin_labels.iter().map(|s| s.as_str()).collect();
    let pairs: Vec<(&str, &str)> =
        spec.fin_pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let fin = FinitePoset::build(&labels, &pairs, OrderMode::Partial)
        .map_err(|e| OmegaError::OrderInconsistent(e.to_string()))?;
    let n = fin.n();
    if n > MAX_FIN {
        return Err(OmegaError::OrderInconsistent(format!(
            "finite block is capped at {MAX_FIN} points"
        )));
    }
    if spec.below.len() != n || spec.above.len() != n {
        return Err(OmegaError::OrderInconsistent(
            "cross bounds must list every finite point".into(),
        ));
    }

    // Transitivity and antisymmetry across the finite block and the chain.
    for p in 0..n {
        match (spec.below[p], spec.above[p]) {
            (ChainBound::All, Some(_)) => {
                return Err(OmegaError::OrderInconsistent(format!(
                    "{} sits above the whole chain and below part of it",
                    labels[p]
                )));
            }
            (ChainBound::Below(b), Some(m)) if b > m => {
                return Err(OmegaError::OrderInconsistent(format!(
                    "{} is above chain points up to {b} but below them from {m}",
                    labels[p]
                )));
            }
            _ => {}
        }
        for q in 0..n {
            if fin.leq(p, q) {
                if !spec.below[p].within(&spec.below[q]) {
                    return Err(OmegaError::OrderInconsistent(format!(
                        "{} <= {} but a chain point below {} is not below {}",
                        labels[p], labels[q], labels[p], labels[q]
                    )));
                }
                if let Some(mq) = spec.above[q] {
                    if !spec.above[p].is_some_and(|mp| mp <= mq) {
                        return Err(OmegaError::OrderInconsistent(format!(
                            "{} <= {} but the chain tail above {} is not above {}",
                            labels[p], labels[q], labels[q], labels[p]
                        )));
                    }
                }
            }
            if let Some(m) = spec.above[p] {
                let meets = match spec.below[q] {
                    ChainBound::All => true,
                    ChainBound::Below(b) => b > m,
                    ChainBound::None => false,
                };
                if meets && !fin.leq(p, q) {
                    return Err(OmegaError::OrderInconsistent(format!(
                        "{} <= chain <= {} but not {} <= {} in the finite block",
                        labels[p], labels[q], labels[p], labels[q]
                    )));
                }
            }
        }
    }

    for t in &spec.base {
        let attach = match t {
            SchemaTemplate::Fixed(s) => s.fin,
            SchemaTemplate::PerChain { attach, .. } => *attach,
        };
        if !mask::is_subset(attach, mask::full(n)) {
            return Err(OmegaError::TemplateIllFormed(
                "template mentions a finite point outside the block".into(),
            ));
        }
    }

    let base = close_base(spec.base)?;
    let space = OmegaSpace {
        name: spec.name,
        fin,
        below: spec.below,
        above: spec.above,
        base,
        order_compatible: spec.order_compatible,
    };

    // The machinery downstream assumes T0: specialization must be a partial
    // order on the representatives.
    let bound = space.sweep_bound(&[]);
    let reps = space.ground_reps(bound);
    for &x in &reps {
        for &y in &reps {
            if x != y && topo::spec_leq(&space, x, y) && topo::spec_leq(&space, y, x) {
                return Err(OmegaError::TemplateIllFormed(format!(
                    "topology is not T0: {} and {} share all base sets",
                    space.point_name(x),
                    space.point_name(y)
                )));
            }
        }
    }

    if space.order_compatible {
        for &x in &reps {
            for &y in &reps {
                if topo::spec_leq(&space, x, y) != space.declared_leq(x, y) {
                    return Err(OmegaError::OrderInconsistent(format!(
                        "specialization disagrees with the declared order at ({}, {})",
                        space.point_name(x),
                        space.point_name(y)
                    )));
                }
            }
        }
    }

    Ok(space)
}

/// Closes a template list under pairwise intersection. Families intersect
/// into families with intersected attachments and shifted start offsets;
/// the finitely many low-index stragglers become fixed sets.
fn close_base(seed: Vec<SchemaTemplate>) -> Result<Vec<SchemaTemplate>, OmegaError> {
    let mut base: Vec<SchemaTemplate> = Vec::new();
    let push = |base: &mut Vec<SchemaTemplate>, t: SchemaTemplate| {
        let degenerate = match &t {
            SchemaTemplate::Fixed(s) => s.is_empty(),
            SchemaTemplate::PerChain { .. } => false,
        };
        if !degenerate && !base.contains(&t) {
            base.push(t);
        }
    };
    for t in seed {
        push(&mut base, t);
    }
    let mut i = 0;
    while i < base.len() {
        let mut j = 0;
        while j <= i {
            for t in intersect_templates(&base[i], &base[j]) {
                push(&mut base, t);
            }
            if base.len() > MAX_BASE {
                return Err(OmegaError::TemplateIllFormed(
                    "intersection closure of the base grew past the size cap".into(),
                ));
            }
            j += 1;
        }
        i += 1;
    }
    // A family starting earlier subsumes the same family starting later.
    let keep: Vec<bool> = base
        .iter()
        .map(|t| match t {
            SchemaTemplate::PerChain { upset, attach, from } => !base.iter().any(|o| match o {
                SchemaTemplate::PerChain { upset: u2, attach: a2, from: f2 } => {
                    u2 == upset && a2 == attach && f2 < from
                }
                _ => false,
            }),
            _ => true,
        })
        .collect();
    let mut flags = keep.into_iter();
    base.retain(|_| flags.next().unwrap());
    Ok(base)
}

fn intersect_templates(a: &SchemaTemplate, b: &SchemaTemplate) -> Vec<SchemaTemplate> {
    use SchemaTemplate::*;
    let mut out = Vec::new();
    match (a, b) {
        (Fixed(s), Fixed(t)) => out.push(Fixed(s.intersect(t))),
        (Fixed(s), PerChain { upset, attach, from })
        | (PerChain { upset, attach, from }, Fixed(s)) => {
            let cut = s.max_param() + 1;
            for n in *from..cut.max(*from) {
                out.push(Fixed(s.intersect(&SchemaTemplate::PerChain {
                    upset: *upset,
                    attach: *attach,
                    from: *from,
                }
                .instance(n))));
            }
            let start = cut.max(*from);
            if *upset {
                if s.is_tailed() {
                    out.push(PerChain { upset: true, attach: attach & s.fin, from: start });
                } else {
                    out.push(Fixed(SchemaSet::fins(attach & s.fin)));
                }
            } else if s.is_tailed() {
                out.push(PerChain { upset: false, attach: attach & s.fin, from: start });
            } else {
                out.push(Fixed(SchemaSet::fins(attach & s.fin)));
            }
        }
        (
            PerChain { upset: u1, attach: a1, from: f1 },
            PerChain { upset: u2, attach: a2, from: f2 },
        ) => {
            let attach = a1 & a2;
            let from = (*f1).max(*f2);
            match (u1, u2) {
                (true, true) => out.push(PerChain { upset: true, attach, from }),
                (false, false) | (true, false) | (false, true) => {
                    out.push(PerChain { upset: false, attach, from });
                    out.push(Fixed(SchemaSet::fins(attach)));
                }
            }
        }
    }
    out
}

impl OmegaSpace {
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn fin(&self) -> &FinitePoset {
        &self.fin
    }

    pub fn n_fin(&self) -> usize {
        self.fin.n()
    }

    pub fn below(&self, p: usize) -> ChainBound {
        self.below[p]
    }

    pub fn above(&self, p: usize) -> Option<u64> {
        self.above[p]
    }

    pub fn base(&self) -> &[SchemaTemplate] {
        &self.base
    }

    pub fn is_order_compatible(&self) -> bool {
        self.order_compatible
    }

    pub fn point_name(&self, p: Point) -> String {
        match p {
            Point::Fin(i) => self.fin.label(i).to_string(),
            Point::Chain(j) => j.to_string(),
        }
    }

    pub fn lookup(&self, token: &str) -> Option<Point> {
        if let Some(i) = self.fin.index_of(token) {
            return Some(Point::Fin(i));
        }
        token.parse::<u64>().ok().map(Point::Chain)
    }

    /// Display form of a schematic set, e.g. `{a, 1, 4..}`.
    pub fn set_name(&self, s: &SchemaSet) -> String {
        let mut parts: Vec<String> =
            mask::iter(s.fin).map(|i| self.point_name(Point::Fin(i))).collect();
        parts.extend(s.chain.iter().map(|j| j.to_string()));
        if let Some(t) = s.tail {
            parts.push(format!("{t}.."));
        }
        format!("{{{}}}", parts.join(", "))
    }

    /// Display form of a schematic net, e.g. `[a, 2n+1]`.
    pub fn net_name(&self, net: &SchemaNet) -> String {
        let parts: Vec<String> = net
            .steps
            .iter()
            .map(|step| match step {
                NetStep::At(p) => self.point_name(*p),
                NetStep::Ramp { mul, add } => {
                    let head = if *mul == 1 { "n".to_string() } else { format!("{mul}n") };
                    if *add == 0 {
                        head
                    } else {
                        format!("{head}+{add}")
                    }
                }
            })
            .collect();
        format!("[{}]", parts.join(", "))
    }

    /// The declared order on the whole ground set.
    pub fn declared_leq(&self, x: Point, y: Point) -> bool {
        match (x, y) {
            (Point::Fin(p), Point::Fin(q)) => self.fin.leq(p, q),
            (Point::Chain(a), Point::Chain(b)) => a <= b,
            (Point::Chain(a), Point::Fin(q)) => self.below[q].covers(a),
            (Point::Fin(p), Point::Chain(b)) => self.above[p].is_some_and(|m| b >= m),
        }
    }

    /// Every numeric threshold in the presentation stabilizes at this value.
    fn own_params(&self) -> u64 {
        let cross = self
            .below
            .iter()
            .map(ChainBound::max_param)
            .chain(self.above.iter().map(|a| a.unwrap_or(0)))
            .max()
            .unwrap_or(0);
        let templ = self.base.iter().map(SchemaTemplate::max_param).max().unwrap_or(0);
        cross.max(templ)
    }

    /// Sweep limit beyond which every membership predicate in play is
    /// constant; `extra` carries the parameters of query sets and nets.
    pub fn sweep_bound(&self, extra: &[u64]) -> u64 {
        self.own_params().max(extra.iter().copied().max().unwrap_or(0)) + 3
    }

    /// Finite-block points plus chain points through the bound.
    pub fn ground_reps(&self, bound: u64) -> Vec<Point> {
        let mut out: Vec<Point> = (0..self.n_fin()).map(Point::Fin).collect();
        out.extend((0..=bound + 2).map(Point::Chain));
        out
    }

    /// Whether far chain points keep their natural comparabilities in the
    /// specialization order, or sit isolated. Pinpoint families are the only
    /// templates that can separate one large chain point from the next.
    pub fn chain_regime(&self) -> ChainRegime {
        if self
            .base
            .iter()
            .any(|t| matches!(t, SchemaTemplate::PerChain { upset: false, .. }))
        {
            ChainRegime::Discrete
        } else {
            ChainRegime::Natural
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ChainRegime {
    Natural,
    Discrete,
}

fn simple(name: &str, below: ChainBound, base: Vec<SchemaTemplate>, compat: bool) -> OmegaSpace {
    build_omega(OmegaSpec {
        name: name.into(),
        fin_labels: vec!["inf".into()],
        fin_pairs: vec![],
        below: vec![below],
        above: vec![None],
        base,
        order_compatible: compat,
    })
    .expect("bundled space must validate")
}

/// ℕ with a fresh point `inf`; base sets are the chain tails and the chain
/// tails with `inf` attached. `inf` is not above the chain.
pub fn beta() -> OmegaSpace {
    simple(
        "beta",
        ChainBound::None,
        vec![
            SchemaTemplate::PerChain { upset: true, attach: 0, from: 0 },
            SchemaTemplate::PerChain { upset: true, attach: 0b1, from: 0 },
        ],
        true,
    )
}

/// ℕ with `inf` on top; base sets are the chain tails with `inf` attached.
pub fn gamma() -> OmegaSpace {
    simple(
        "gamma",
        ChainBound::All,
        vec![SchemaTemplate::PerChain { upset: true, attach: 0b1, from: 0 }],
        true,
    )
}

/// ℕ with `inf`; base sets are the chain singletons and the chain tails
/// with `inf` attached. Its specialization order is equality, so the
/// declared order is not flagged compatible.
pub fn delta() -> OmegaSpace {
    simple(
        "delta",
        ChainBound::None,
        vec![
            SchemaTemplate::PerChain { upset: true, attach: 0b1, from: 0 },
            SchemaTemplate::PerChain { upset: false, attach: 0, from: 0 },
        ],
        false,
    )
}

/// The chain with a top point, carrying the topology of tail sets; directed
/// sups are inaccessible by opens, which is the Scott condition here.
pub fn scott_omega_plus_one() -> OmegaSpace {
    simple(
        "scott_omega_plus_one",
        ChainBound::All,
        vec![SchemaTemplate::PerChain { upset: true, attach: 0b1, from: 0 }],
        true,
    )
}

/// The bare chain with its tail topology.
pub fn chain_omega() -> OmegaSpace {
    build_omega(OmegaSpec {
        name: "omega".into(),
        fin_labels: vec![],
        fin_pairs: vec![],
        below: vec![],
        above: vec![],
        base: vec![SchemaTemplate::PerChain { upset: true, attach: 0, from: 0 }],
        order_compatible: true,
    })
    .expect("bundled space must validate")
}

/// Ground ℕ ∪ {inf, a, bot}: bot below everything, a below inf, chain and
/// inf otherwise unrelated. Opens are the whole space, {inf}, and the chain
/// tails plain, with inf, or with inf and a.
pub fn example_e() -> OmegaSpace {
    let bot = 0b001u64;
    let a = 0b010u64;
    let inf = 0b100u64;
    build_omega(OmegaSpec {
        name: "example_e".into(),
        fin_labels: vec!["bot".into(), "a".into(), "inf".into()],
        fin_pairs: vec![
            ("bot".into(), "a".into()),
            ("bot".into(), "inf".into()),
            ("a".into(), "inf".into()),
        ],
        below: vec![ChainBound::None, ChainBound::None, ChainBound::None],
        above: vec![Some(0), None, None],
        base: vec![
            SchemaTemplate::Fixed(SchemaSet::fins(inf)),
            SchemaTemplate::Fixed(SchemaSet::new(bot | a | inf, vec![], Some(0))),
            SchemaTemplate::PerChain { upset: true, attach: 0, from: 0 },
            SchemaTemplate::PerChain { upset: true, attach: inf, from: 0 },
            SchemaTemplate::PerChain { upset: true, attach: inf | a, from: 0 },
        ],
        order_compatible: true,
    })
    .expect("bundled space must validate")
}
