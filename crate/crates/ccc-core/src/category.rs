//! Products, exponentials and law checking over finite spaces.
//!
//! The candidate product of two spaces is the coreflection of the
//! topological product, and the candidate exponential is the coreflection
//! of the pointwise-convergence topology on the continuous maps. Nothing
//! here assumes those candidates work: each universal property is verified
//! by brute enumeration of cones and mediating maps, and every verdict is
//! returned as a report record rather than trusted.

use std::fmt;

use crate::conv::{coreflect, is_determined, OpKind};
use crate::enumerate::{posets_up_to_iso, preorders_up_to_iso, MAX_ENUM};
use crate::order::FinitePoset;
use crate::topology::{FiniteTopology, OrderTopologyKind, TopologyError};
use crate::{mask, Subset};
use thiserror::Error;

/// Budget knobs shared by the law-check sweeps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LabConfig {
    /// Largest carrier accepted for grounds, products and function spaces.
    pub max_points: usize,
    /// Seed for the sampled portions of the sweeps.
    pub seed: u64,
}

impl Default for LabConfig {
    fn default() -> Self {
        LabConfig { max_points: 12, seed: 0xCCC }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabError {
    #[error("{what} has {size} points, cap is {cap}")]
    SizeCap { what: String, size: usize, cap: usize },
    #[error("space on {{{space}}} is not determined for {op}")]
    NotDetermined { space: String, op: &'static str },
    #[error(transparent)]
    Topology(TopologyError),
}

impl From<TopologyError> for LabError {
    fn from(e: TopologyError) -> Self {
        match e {
            TopologyError::TooLarge { got, limit } => {
                LabError::SizeCap { what: "carrier".into(), size: got, cap: limit }
            }
            other => LabError::Topology(other),
        }
    }
}

impl LabError {
    /// True for budget overruns, which sweeps skip rather than fail on.
    pub fn is_size_cap(&self) -> bool {
        matches!(self, LabError::SizeCap { .. })
    }
}

/// Outcome of one law battery: how many elementary assertions ran and the
/// first counterexample if any failed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub instances: usize,
    pub verdict: bool,
    pub counterexample: Option<String>,
}

impl LawReport {
    fn new(law: &str) -> Self {
        LawReport { law: law.into(), instances: 0, verdict: true, counterexample: None }
    }

    fn check(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok && self.verdict {
            self.verdict = false;
            self.counterexample = Some(witness());
        }
    }

    /// Folds another report into this one, keeping the first counterexample.
    pub fn absorb(&mut self, other: &LawReport) {
        self.instances += other.instances;
        if !other.verdict && self.verdict {
            self.verdict = false;
            self.counterexample = other.counterexample.clone();
        }
    }
}

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} [{} instances]",
            self.law,
            if self.verdict { "pass" } else { "fail" },
            self.instances
        )?;
        if let Some(c) = &self.counterexample {
            write!(f, " counterexample: {c}")?;
        }
        Ok(())
    }
}

/// All continuous maps from `source` to `target`, as value tables in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomSet {
    pub source: FiniteTopology,
    pub target: FiniteTopology,
    pub maps: Vec<Vec<usize>>,
}

impl HomSet {
    pub fn len(&self) -> usize {
        self.maps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.maps.is_empty()
    }

    pub fn position(&self, table: &[usize]) -> Option<usize> {
        self.maps.iter().position(|m| m == table)
    }
}

/// Enumerates hom(X, Y): monotone tables between the specialization
/// preorders, re-checked against the actual continuity predicate.
pub fn hom_set(
    x: &FiniteTopology,
    y: &FiniteTopology,
    cfg: &LabConfig,
) -> Result<HomSet, LabError> {
    for (what, n) in [("source ground", x.n()), ("target ground", y.n())] {
        if n > cfg.max_points {
            return Err(LabError::SizeCap { what: what.into(), size: n, cap: cfg.max_points });
        }
    }
    let maps = x
        .specialization()
        .monotone_maps(&y.specialization())
        .into_iter()
        .filter(|f| {
            FiniteTopology::continuous(f, x, y).expect("tables from the enumerator are total")
        })
        .collect();
    Ok(HomSet { source: x.clone(), target: y.clone(), maps })
}

fn map_label(h: &HomSet, table: &[usize]) -> String {
    let parts: Vec<&str> = table.iter().map(|&v| h.target.label(v)).collect();
    format!("[{}]", parts.join(","))
}

/// The pointwise-convergence topology on a hom set: subbasic opens are
/// `{f : f(x) in U}` for a point `x` of the source and an open `U` of the
/// target. Its specialization is the pointwise order.
pub fn pointwise_of(h: &HomSet, cfg: &LabConfig) -> Result<FiniteTopology, LabError> {
    let k = h.maps.len();
    if k > cfg.max_points {
        return Err(LabError::SizeCap {
            what: "function space".into(),
            size: k,
            cap: cfg.max_points,
        });
    }
    let owned: Vec<String> = h.maps.iter().map(|t| map_label(h, t)).collect();
    let labels: Vec<&str> = owned.iter().map(|s| s.as_str()).collect();
    let mut subbase = Vec::new();
    for i in 0..h.source.n() {
        for &u in h.target.opens() {
            let s: Subset = h
                .maps
                .iter()
                .enumerate()
                .filter(|(_, t)| mask::contains(u, t[i]))
                .fold(0, |acc, (fi, _)| acc | mask::singleton(fi));
            subbase.push(s);
        }
    }
    let pw = FiniteTopology::from_subbase(&labels, &subbase)?;
    debug_assert!({
        let sp = pw.specialization();
        let sy = h.target.specialization();
        (0..k).all(|a| {
            (0..k).all(|b| {
                sp.leq(a, b) == (0..h.source.n()).all(|i| sy.leq(h.maps[a][i], h.maps[b][i]))
            })
        })
    });
    Ok(pw)
}

pub fn pointwise_space(
    x: &FiniteTopology,
    y: &FiniteTopology,
    cfg: &LabConfig,
) -> Result<FiniteTopology, LabError> {
    pointwise_of(&hom_set(x, y, cfg)?, cfg)
}

fn ensure_determined(x: &FiniteTopology, which: OpKind) -> Result<(), LabError> {
    if is_determined(x, which) {
        Ok(())
    } else {
        Err(LabError::NotDetermined { space: x.labels().join(","), op: which.token() })
    }
}

/// Candidate categorical product: the coreflection of the topological
/// product. Point `(x, y)` sits at index `x * |Y| + y`, as in the product.
pub fn tensor(
    x: &FiniteTopology,
    y: &FiniteTopology,
    which: OpKind,
    cfg: &LabConfig,
) -> Result<FiniteTopology, LabError> {
    ensure_determined(x, which)?;
    ensure_determined(y, which)?;
    let p = FiniteTopology::product(x, y, cfg.max_points)?;
    Ok(coreflect(&p, which))
}

/// Candidate exponential: the coreflection of the pointwise space. The
/// carrier order matches `hom_set(x, y, _).maps`.
pub fn exponential(
    x: &FiniteTopology,
    y: &FiniteTopology,
    which: OpKind,
    cfg: &LabConfig,
) -> Result<FiniteTopology, LabError> {
    ensure_determined(x, which)?;
    ensure_determined(y, which)?;
    let h = hom_set(x, y, cfg)?;
    let pw = pointwise_of(&h, cfg)?;
    Ok(coreflect(&pw, which))
}

/// Verifies the exponential transpose on one triple: evaluation is
/// continuous, currying is a bijection `hom(Z tensor X, Y) <-> hom(Z, [X -> Y])`
/// with exact cardinality match, and each map has exactly one mediating
/// morphism through evaluation.
pub fn check_exponential_law(
    x: &FiniteTopology,
    y: &FiniteTopology,
    z: &FiniteTopology,
    which: OpKind,
    cfg: &LabConfig,
) -> Result<LawReport, LabError> {
    let mut rep = LawReport::new("exponential-law");
    for s in [x, y, z] {
        ensure_determined(s, which)?;
    }
    let h = hom_set(x, y, cfg)?;
    let pw = pointwise_of(&h, cfg)?;
    let e = coreflect(&pw, which);
    let xn = x.n();

    let te = tensor(&e, x, which, cfg)?;
    let ev: Vec<usize> = (0..te.n()).map(|p| h.maps[p / xn][p % xn]).collect();
    rep.check(FiniteTopology::continuous(&ev, &te, y)?, || {
        "evaluation is not continuous on the tensor of the exponential".into()
    });

    let tzx = tensor(z, x, which, cfg)?;
    let hom_ty = hom_set(&tzx, y, cfg)?;
    let hom_ze = hom_set(z, &e, cfg)?;
    rep.check(hom_ty.len() == hom_ze.len(), || {
        format!(
            "hom cardinalities differ: {} maps from the tensor, {} into the exponential",
            hom_ty.len(),
            hom_ze.len()
        )
    });

    let mut curried: Vec<Vec<usize>> = Vec::new();
    for f in &hom_ty.maps {
        let lam: Option<Vec<usize>> = (0..z.n())
            .map(|i| {
                let slice: Vec<usize> = (0..xn).map(|j| f[i * xn + j]).collect();
                h.position(&slice)
            })
            .collect();
        match lam {
            None => rep.check(false, || format!("a slice of {f:?} is not continuous")),
            Some(lam) => {
                rep.check(hom_ze.maps.contains(&lam), || {
                    format!("curried form {lam:?} of {f:?} is not continuous into the exponential")
                });
                curried.push(lam);
            }
        }
    }
    let mut dedup = curried.clone();
    dedup.sort();
    dedup.dedup();
    rep.check(dedup.len() == curried.len(), || "currying is not injective".into());
    for g in &hom_ze.maps {
        let unc: Vec<usize> = (0..z.n() * xn).map(|p| h.maps[g[p / xn]][p % xn]).collect();
        rep.check(hom_ty.maps.contains(&unc), || {
            format!("uncurried form of {g:?} is not continuous on the tensor")
        });
        rep.check(curried.contains(g), || format!("{g:?} is outside the image of currying"));
    }

    for f in &hom_ty.maps {
        let mediators = hom_ze
            .maps
            .iter()
            .filter(|g| (0..z.n()).all(|i| (0..xn).all(|j| h.maps[g[i]][j] == f[i * xn + j])))
            .count();
        rep.check(mediators == 1, || format!("{f:?} admits {mediators} mediating morphisms"));
    }
    Ok(rep)
}

/// Verifies the product cone property of the tensor: projections are
/// continuous, every cone of continuous maps pairs to a continuous map,
/// and the pairing is the only mediating map. Test objects are one space
/// per isomorphism class of posets at each size in `test_sizes`.
pub fn check_product_universal(
    x: &FiniteTopology,
    y: &FiniteTopology,
    which: OpKind,
    test_sizes: &[usize],
    cfg: &LabConfig,
) -> Result<LawReport, LabError> {
    let mut rep = LawReport::new("product-universal");
    let t = tensor(x, y, which, cfg)?;
    let yn = y.n();
    let p1: Vec<usize> = (0..t.n()).map(|p| p / yn).collect();
    let p2: Vec<usize> = (0..t.n()).map(|p| p % yn).collect();
    rep.check(FiniteTopology::continuous(&p1, &t, x)?, || {
        "first projection is not continuous".into()
    });
    rep.check(FiniteTopology::continuous(&p2, &t, y)?, || {
        "second projection is not continuous".into()
    });
    for &s in test_sizes {
        for zp in posets_up_to_iso(s) {
            let z = FiniteTopology::order_topology(&zp, OrderTopologyKind::Alexandroff);
            if !is_determined(&z, which) {
                continue;
            }
            let hzx = hom_set(&z, x, cfg)?;
            let hzy = hom_set(&z, y, cfg)?;
            let hzt = hom_set(&z, &t, cfg)?;
            for f1 in &hzx.maps {
                for f2 in &hzy.maps {
                    let pairing: Vec<usize> =
                        (0..z.n()).map(|i| f1[i] * yn + f2[i]).collect();
                    rep.check(hzt.maps.contains(&pairing), || {
                        format!("pairing of {f1:?} and {f2:?} is not continuous")
                    });
                    let count = hzt
                        .maps
                        .iter()
                        .filter(|m| {
                            (0..z.n()).all(|i| m[i] / yn == f1[i] && m[i] % yn == f2[i])
                        })
                        .count();
                    rep.check(count == 1, || {
                        format!("cone ({f1:?}, {f2:?}) admits {count} mediating maps")
                    });
                }
            }
        }
    }
    Ok(rep)
}

/// Verifies that the coreflection of `y` is universal from the determined
/// side: the identity into `y` is continuous, and composing with it is a
/// bijection on hom sets from every determined test space. The carrier is
/// the identity, so the factorization is unique by construction; the check
/// confirms it stays continuous.
pub fn check_coreflection_universal(
    y: &FiniteTopology,
    which: OpKind,
    test_sizes: &[usize],
    cfg: &LabConfig,
) -> Result<LawReport, LabError> {
    let mut rep = LawReport::new("coreflection-universal");
    let py = coreflect(y, which);
    let id: Vec<usize> = (0..y.n()).collect();
    rep.check(FiniteTopology::continuous(&id, &py, y)?, || {
        "identity out of the coreflection is not continuous".into()
    });
    for &s in test_sizes {
        for xp in posets_up_to_iso(s) {
            let x = FiniteTopology::order_topology(&xp, OrderTopologyKind::Alexandroff);
            if !is_determined(&x, which) {
                continue;
            }
            let into_y = hom_set(&x, y, cfg)?;
            let into_py = hom_set(&x, &py, cfg)?;
            for f in &into_y.maps {
                rep.check(into_py.maps.contains(f), || {
                    format!("{f:?} does not factor continuously through the coreflection")
                });
            }
            rep.check(into_y.len() == into_py.len(), || {
                format!(
                    "hom sets through the coreflection differ: {} vs {}",
                    into_y.len(),
                    into_py.len()
                )
            });
        }
    }
    Ok(rep)
}

/// Sweeps every map table `X x Y -> Z` and confirms that separate
/// continuity of the two partial applications coincides with joint
/// continuity on the tensor.
pub fn check_separate_continuity(
    x: &FiniteTopology,
    y: &FiniteTopology,
    z: &FiniteTopology,
    cfg: &LabConfig,
) -> Result<LawReport, LabError> {
    const MAP_BUDGET: usize = 65_536;
    let mut rep = LawReport::new("separate-continuity");
    let t = tensor(x, y, OpKind::Directed, cfg)?;
    let (xn, yn, zn) = (x.n(), y.n(), z.n());
    let cells = xn * yn;
    if zn == 0 {
        return Ok(rep);
    }
    match zn.checked_pow(cells as u32) {
        Some(total) if total <= MAP_BUDGET => {}
        got => {
            return Err(LabError::SizeCap {
                what: "map family".into(),
                size: got.unwrap_or(usize::MAX),
                cap: MAP_BUDGET,
            })
        }
    }
    let mut table = vec![0usize; cells];
    loop {
        let rows = (0..xn).all(|i| {
            let row: Vec<usize> = (0..yn).map(|j| table[i * yn + j]).collect();
            FiniteTopology::continuous(&row, y, z).expect("rows are total tables")
        });
        let cols = (0..yn).all(|j| {
            let col: Vec<usize> = (0..xn).map(|i| table[i * yn + j]).collect();
            FiniteTopology::continuous(&col, x, z).expect("columns are total tables")
        });
        let joint = FiniteTopology::continuous(&table, &t, z)?;
        rep.check((rows && cols) == joint, || {
            format!("table {table:?}: separately {}, jointly {joint}", rows && cols)
        });
        let mut k = 0;
        loop {
            if k == cells {
                return Ok(rep);
            }
            table[k] += 1;
            if table[k] < zn {
                break;
            }
            table[k] = 0;
            k += 1;
        }
    }
}

/// Verifies that tensor and exponential of T0 inputs stay T0, refine the
/// plain product and pointwise space, and carry exactly the product order
/// and the pointwise order as specializations.
pub fn check_t0_preservation(
    x: &FiniteTopology,
    y: &FiniteTopology,
    which: OpKind,
    cfg: &LabConfig,
) -> Result<LawReport, LabError> {
    let mut rep = LawReport::new("t0-and-order");
    let t = tensor(x, y, which, cfg)?;
    let h = hom_set(x, y, cfg)?;
    let pw = pointwise_of(&h, cfg)?;
    let e = coreflect(&pw, which);

    rep.check(t.is_t0(), || "tensor of T0 spaces is not T0".into());
    rep.check(e.is_t0(), || "exponential of T0 spaces is not T0".into());
    let prod = FiniteTopology::product(x, y, cfg.max_points)?;
    rep.check(t.refines(&prod), || "tensor does not refine the product".into());
    rep.check(e.refines(&pw), || "exponential does not refine the pointwise space".into());

    let (st, sx, sy) = (t.specialization(), x.specialization(), y.specialization());
    let yn = y.n();
    let product_order = (0..t.n()).all(|p| {
        (0..t.n()).all(|q| st.leq(p, q) == (sx.leq(p / yn, q / yn) && sy.leq(p % yn, q % yn)))
    });
    rep.check(product_order, || "tensor specialization is not the product order".into());

    let se = e.specialization();
    let pointwise_order = (0..e.n()).all(|a| {
        (0..e.n()).all(|b| {
            se.leq(a, b) == (0..x.n()).all(|i| sy.leq(h.maps[a][i], h.maps[b][i]))
        })
    });
    rep.check(pointwise_order, || {
        "exponential specialization is not the pointwise order".into()
    });
    Ok(rep)
}

/// The model space of a finite carrier net: the carrier `d` plus a fresh
/// limit point. Unanchored, opens are the up-sets of `d`, each optionally
/// extended by the limit when nonempty, so the canonical net converges to
/// the limit without sitting above it. Anchored, only the extended sets
/// remain open, which pins the limit above the whole carrier.
fn probe_model(d: &FinitePoset, anchored: bool) -> FiniteTopology {
    let k = d.n();
    let inf = mask::singleton(k);
    let mut owned: Vec<String> = d.labels().to_vec();
    owned.push("inf".into());
    let labels: Vec<&str> = owned.iter().map(|s| s.as_str()).collect();
    let mut opens = vec![0];
    for u in 0..=mask::full(k) {
        if mask::iter(u).any(|i| !mask::is_subset(d.up_mask(i) & mask::full(k), u)) {
            continue;
        }
        if !anchored {
            opens.push(u);
        }
        if u != 0 {
            opens.push(u | inf);
        }
    }
    FiniteTopology::make(&labels, &opens).expect("model families are topologies")
}

/// Generating spaces for one operator: models over every carrier shape the
/// operator's class admits, up to `max_gen_size` carrier points. Strict
/// operators relate nets both to points below the carrier and to the
/// anchored sup, so they take both model variants.
fn generator_models(kind: OpKind, max_gen_size: usize) -> Vec<FiniteTopology> {
    let strict = matches!(
        kind,
        OpKind::StrictDirected | OpKind::StrictChain | OpKind::StrictSequence
    );
    let mut models = Vec::new();
    for s in 1..=max_gen_size.min(MAX_ENUM) {
        let full = mask::full(s);
        let carriers: Vec<FinitePoset> = match kind {
            OpKind::Directed | OpKind::StrictDirected => posets_up_to_iso(s)
                .into_iter()
                .filter(|p| p.is_directed(full))
                .collect(),
            OpKind::Chain | OpKind::StrictChain => posets_up_to_iso(s)
                .into_iter()
                .filter(|p| p.is_chain_subset(full))
                .collect(),
            OpKind::Sequence | OpKind::StrictSequence => preorders_up_to_iso(s)
                .into_iter()
                .filter(|p| p.is_equivalence_clique(full))
                .collect(),
        };
        for d in carriers {
            models.push(probe_model(&d, false));
            if strict {
                models.push(probe_model(&d, true));
            }
        }
    }
    models
}

/// Final topology on the carrier of `x` with respect to every continuous
/// probe from the operator's generating models. With no models at all the
/// result is discrete.
pub fn probe_generated(x: &FiniteTopology, kind: OpKind, max_gen_size: usize) -> FiniteTopology {
    let labels: Vec<&str> = x.labels().iter().map(|s| s.as_str()).collect();
    let models = generator_models(kind, max_gen_size);
    let spec_x = x.specialization();
    let mut probes: Vec<(&FiniteTopology, Vec<usize>)> = Vec::new();
    for m in &models {
        for f in m.specialization().monotone_maps(&spec_x) {
            if FiniteTopology::continuous(&f, m, x).expect("tables are total") {
                probes.push((m, f));
            }
        }
    }
    FiniteTopology::final_topology(&labels, &probes).expect("ground already validated")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::OrderMode;

    fn cfg() -> LabConfig {
        LabConfig::default()
    }

    fn pt() -> FiniteTopology {
        FiniteTopology::discrete(&["*"])
    }

    fn sierp() -> FiniteTopology {
        FiniteTopology::sierpinski()
    }

    fn alex(p: &FinitePoset) -> FiniteTopology {
        FiniteTopology::order_topology(p, OrderTopologyKind::Alexandroff)
    }

    fn vee() -> FinitePoset {
        FinitePoset::build(
            &["a", "b", "top"],
            &[("a", "top"), ("b", "top")],
            OrderMode::Partial,
        )
        .unwrap()
    }

    #[test]
    fn hom_counts_on_the_small_classics() {
        assert_eq!(hom_set(&pt(), &sierp(), &cfg()).unwrap().len(), 2);
        assert_eq!(hom_set(&sierp(), &sierp(), &cfg()).unwrap().len(), 3);
        // Discrete domain: every table is continuous.
        let d2 = FiniteTopology::discrete(&["x", "y"]);
        assert_eq!(hom_set(&d2, &sierp(), &cfg()).unwrap().len(), 4);
        assert_eq!(hom_set(&d2, &alex(&vee()), &cfg()).unwrap().len(), 9);
    }

    #[test]
    fn pointwise_self_maps_of_sierpinski_form_a_chain() {
        let h = hom_set(&sierp(), &sierp(), &cfg()).unwrap();
        assert_eq!(h.maps, vec![vec![0, 0], vec![0, 1], vec![1, 1]]);
        let pw = pointwise_of(&h, &cfg()).unwrap();
        assert_eq!(pw.n(), 3);
        // Constant bottom below the identity below constant top.
        let sp = pw.specialization();
        assert!(sp.leq(0, 1) && sp.leq(1, 2) && !sp.leq(1, 0));
        assert_eq!(pw.opens().len(), 4);
        assert_eq!(pw.labels()[1], "[bot,top]");
    }

    #[test]
    fn pointwise_specialization_is_the_pointwise_order() {
        let spaces = [
            pt(),
            sierp(),
            FiniteTopology::discrete(&["x", "y"]),
            alex(&FinitePoset::chain(3)),
            alex(&vee()),
        ];
        for x in &spaces {
            for y in &spaces {
                let h = match hom_set(x, y, &cfg()) {
                    Ok(h) => h,
                    Err(e) if e.is_size_cap() => continue,
                    Err(e) => panic!("{e}"),
                };
                let pw = match pointwise_of(&h, &cfg()) {
                    Ok(pw) => pw,
                    Err(e) if e.is_size_cap() => continue,
                    Err(e) => panic!("{e}"),
                };
                let sp = pw.specialization();
                let sy = y.specialization();
                for a in 0..h.len() {
                    for b in 0..h.len() {
                        let pointwise =
                            (0..x.n()).all(|i| sy.leq(h.maps[a][i], h.maps[b][i]));
                        assert_eq!(sp.leq(a, b), pointwise);
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_with_a_point_is_the_space_itself() {
        for x in [sierp(), alex(&vee()), FiniteTopology::discrete(&["x", "y"])] {
            let t = tensor(&x, &pt(), OpKind::Directed, &cfg()).unwrap();
            assert_eq!(t.opens(), x.opens());
        }
    }

    #[test]
    fn tensor_equals_the_product_on_finite_grounds() {
        let pairs = [
            (sierp(), sierp()),
            (sierp(), alex(&FinitePoset::chain(3))),
            (FiniteTopology::discrete(&["x", "y"]), alex(&vee())),
        ];
        for (x, y) in &pairs {
            let t = tensor(x, y, OpKind::Directed, &cfg()).unwrap();
            let p = FiniteTopology::product(x, y, cfg().max_points).unwrap();
            assert_eq!(t.opens(), p.opens());
        }
    }

    #[test]
    fn exponential_of_sierpinski_self_maps_is_the_three_chain() {
        let expected = alex(&FinitePoset::chain(3));
        for which in [OpKind::Directed, OpKind::StrictDirected] {
            let e = exponential(&sierp(), &sierp(), which, &cfg()).unwrap();
            assert_eq!(e.opens(), expected.opens());
        }
    }

    #[test]
    fn alexandroff_exponentials_are_monotone_map_spaces() {
        let (p, q) = (FinitePoset::chain(2), vee());
        let maps = p.monotone_maps(&q);
        let up: Vec<Subset> = (0..maps.len())
            .map(|a| {
                (0..maps.len())
                    .filter(|&b| (0..p.n()).all(|i| q.leq(maps[a][i], maps[b][i])))
                    .fold(0, |acc, b| acc | mask::singleton(b))
            })
            .collect();
        let order = FinitePoset::from_up_masks(
            (0..maps.len()).map(|i| format!("m{i}")).collect(),
            up,
            OrderMode::Partial,
        );
        let expected = alex(&order);
        for which in [OpKind::Directed, OpKind::StrictDirected] {
            let e = exponential(&alex(&p), &alex(&q), which, &cfg()).unwrap();
            assert_eq!(e.n(), maps.len());
            assert_eq!(e.opens(), expected.opens());
        }
    }

    #[test]
    fn exponential_law_holds_on_small_triples() {
        for which in [OpKind::Directed, OpKind::StrictDirected] {
            let rep = check_exponential_law(&sierp(), &sierp(), &sierp(), which, &cfg()).unwrap();
            assert!(rep.verdict, "{rep}");
            assert!(rep.instances > 10);
        }
        // One-point inner object: hom(Z, [X -> Y]) enumerates the points of
        // the exponential.
        let rep = check_exponential_law(&sierp(), &sierp(), &pt(), OpKind::Directed, &cfg())
            .unwrap();
        assert!(rep.verdict, "{rep}");
    }

    #[test]
    fn product_universal_property_holds_with_small_cones() {
        let rep =
            check_product_universal(&sierp(), &sierp(), OpKind::Directed, &[1, 2, 3], &cfg())
                .unwrap();
        assert!(rep.verdict, "{rep}");
    }

    #[test]
    fn coreflection_universal_property_holds() {
        for which in OpKind::ALL {
            let rep =
                check_coreflection_universal(&sierp(), which, &[1, 2], &cfg()).unwrap();
            assert!(rep.verdict, "{rep}");
        }
        // A non-T0 target is legal: determinedness is about the tests.
        let ind = FiniteTopology::indiscrete(&["a", "b"]);
        let rep =
            check_coreflection_universal(&ind, OpKind::Directed, &[1, 2], &cfg()).unwrap();
        assert!(rep.verdict, "{rep}");
    }

    #[test]
    fn separate_continuity_matches_joint_continuity() {
        let rep = check_separate_continuity(&sierp(), &sierp(), &sierp(), &cfg()).unwrap();
        assert!(rep.verdict, "{rep}");
        assert_eq!(rep.instances, 16);
    }

    #[test]
    fn t0_and_order_facts_hold_on_the_sierpinski_pair() {
        for which in [OpKind::Directed, OpKind::StrictDirected] {
            let rep = check_t0_preservation(&sierp(), &sierp(), which, &cfg()).unwrap();
            assert!(rep.verdict, "{rep}");
        }
    }

    #[test]
    fn probes_regenerate_the_coreflection() {
        let spaces = [
            sierp(),
            alex(&FinitePoset::chain(3)),
            alex(&vee()),
            FiniteTopology::discrete(&["x", "y", "z"]),
        ];
        for x in &spaces {
            for kind in OpKind::ALL {
                let probed = probe_generated(x, kind, 3);
                let core = coreflect(x, kind);
                assert_eq!(probed.opens(), core.opens(), "{kind:?} on {:?}", x.labels());
            }
        }
    }

    #[test]
    fn no_generators_yields_the_discrete_topology() {
        let x = alex(&FinitePoset::chain(3));
        let probed = probe_generated(&x, OpKind::Directed, 0);
        assert_eq!(probed.opens().len(), 1 << x.n());
    }

    #[test]
    fn size_caps_surface_as_errors() {
        let tiny = LabConfig { max_points: 3, seed: 0 };
        let d2 = FiniteTopology::discrete(&["x", "y"]);
        // Sixteen self-maps of the discrete pair exceed a three-point cap.
        let err = pointwise_space(&d2, &d2, &tiny).unwrap_err();
        assert!(err.is_size_cap(), "{err:?}");
        let big = FiniteTopology::discrete(&["a", "b", "c", "d"]);
        assert!(hom_set(&big, &d2, &tiny).unwrap_err().is_size_cap());
    }
}
