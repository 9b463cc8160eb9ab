//! The bundled reproduction suite: fourteen numbered checks covering the
//! counterexample spaces, the operator laws, the categorical structure,
//! and the front end's round-trip guarantees. Output is deterministic for
//! a fixed configuration, so the rendered report doubles as a golden file.

use ccc_core::category::{
    check_coreflection_universal, check_exponential_law, check_separate_continuity,
    check_t0_preservation, probe_generated, LawReport,
};
use ccc_core::conv::{
    closure_transfinite, coreflect, determined_topology, is_determined, sandwich_parts,
    ConvClass, FiniteNet, OpKind,
};
use ccc_core::cspace::{in_s_class_omega, is_c_space_omega, s_topology_finite, s_topology_omega};
use ccc_core::enumerate::{all_posets, all_preorders, posets_up_to_iso, seeded_indices};
use ccc_core::omega::{
    beta, chain_omega, compare, coreflect_omega, delta, example_e, gamma, has_upper_bound,
    order_topology_omega, scott_omega_plus_one, NetStep, OmegaTopology, Point, SchemaNet,
    SchemaSet, TopologyOrder,
};
use ccc_core::order::FinitePoset;
use ccc_core::topology::{FiniteTopology, OrderTopologyKind};
use ccc_core::mask;

use crate::export::{doc_to_text, json_topology, topology_from_json};
use crate::parse::parse;
use crate::run::RunConfig;

pub struct CheckResult {
    pub id: usize,
    pub name: &'static str,
    pub pass: bool,
    pub detail: String,
}

pub fn render(results: &[CheckResult]) -> Vec<String> {
    results
        .iter()
        .map(|r| {
            format!(
                "[{:02}] {}: {} ({})",
                r.id,
                r.name,
                if r.pass { "pass" } else { "fail" },
                r.detail
            )
        })
        .collect()
}

pub fn run_suite(cfg: &RunConfig) -> Vec<CheckResult> {
    vec![
        check(1, "example-e-coreflections", example_e_coreflections()),
        check(2, "beta-gamma-coreflections", beta_gamma_coreflections()),
        check(3, "delta-discrete", delta_discrete()),
        check(4, "scott-weak-scott-alexandroff", scott_weak_scott_alexandroff()),
        check(5, "transfinite-closure", transfinite_closure(cfg)),
        check(6, "coreflection-laws", coreflection_laws(cfg)),
        check(7, "cartesian-closure", cartesian_closure(cfg)),
        check(8, "separate-continuity", separate_continuity(cfg)),
        check(9, "t0-and-order-facts", t0_and_order_facts(cfg)),
        check(10, "probe-generation", probe_generation()),
        check(11, "class-topology", class_topology()),
        check(12, "pointwise-limit-escapes-order", pointwise_limit_escapes_order()),
        check(13, "no-upper-bound", no_upper_bound()),
        check(14, "spacefile-round-trip", spacefile_round_trip()),
    ]
}

type Checked = Result<(bool, String), String>;

fn check(id: usize, name: &'static str, out: Checked) -> CheckResult {
    match out {
        Ok((pass, detail)) => CheckResult { id, name, pass, detail },
        Err(msg) => CheckResult { id, name, pass: false, detail: format!("error: {msg}") },
    }
}

fn s<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn alex(p: &FinitePoset) -> FiniteTopology {
    FiniteTopology::order_topology(p, OrderTopologyKind::Alexandroff)
}

fn fail_law(rep: &LawReport) -> Checked {
    Ok((
        false,
        format!(
            "{}: {}",
            rep.law,
            rep.counterexample.clone().unwrap_or_else(|| "failed".into())
        ),
    ))
}

fn example_e_coreflections() -> Checked {
    let e = OmegaTopology::base_of(example_e());
    let d = coreflect_omega(&e, OpKind::Directed).map_err(s)?;
    let fixed = compare(&d, &e).map_err(s)? == TopologyOrder::Equal;
    let dp = coreflect_omega(&e, OpKind::StrictDirected).map_err(s)?;
    let u = SchemaSet::fins(0b110);
    let opened = dp.is_open(&u) && !e.is_open(&u);
    Ok((
        fixed && opened,
        format!(
            "D fixes the space: {fixed}; {} opens under D' only: {opened}",
            e.space().set_name(&u)
        ),
    ))
}

fn beta_gamma_coreflections() -> Checked {
    let b = OmegaTopology::base_of(beta());
    let summit = SchemaSet::fins(0b1);
    let bp = coreflect_omega(&b, OpKind::StrictDirected).map_err(s)?;
    let opened = bp.is_open(&summit) && !b.is_open(&summit);
    let b_fixed =
        compare(&coreflect_omega(&b, OpKind::Directed).map_err(s)?, &b).map_err(s)?
            == TopologyOrder::Equal;
    let g = OmegaTopology::base_of(gamma());
    let g_fixed =
        compare(&coreflect_omega(&g, OpKind::StrictDirected).map_err(s)?, &g).map_err(s)?
            == TopologyOrder::Equal;
    Ok((
        opened && b_fixed && g_fixed,
        format!("{{inf}} opens under D' only: {opened}; D fixes beta: {b_fixed}; D' fixes gamma: {g_fixed}"),
    ))
}

fn delta_discrete() -> Checked {
    let d = OmegaTopology::base_of(delta());
    let dd = coreflect_omega(&d, OpKind::Directed).map_err(s)?;
    let singletons = dd.is_open(&SchemaSet::fins(0b1))
        && dd.is_open(&SchemaSet::new(0, vec![0], None))
        && dd.is_open(&SchemaSet::new(0, vec![9], None));
    let finer = compare(&dd, &d).map_err(s)? == TopologyOrder::Finer;
    Ok((
        singletons && finer,
        format!("every singleton opens: {singletons}; strictly finer than the base: {finer}"),
    ))
}

fn scott_weak_scott_alexandroff() -> Checked {
    let capped = scott_omega_plus_one();
    let scott = order_topology_omega(&capped, OrderTopologyKind::Scott).map_err(s)?;
    let weak = order_topology_omega(&capped, OrderTopologyKind::WeakScott).map_err(s)?;
    let al = order_topology_omega(&capped, OrderTopologyKind::Alexandroff).map_err(s)?;
    let same = compare(&scott, &weak).map_err(s)? == TopologyOrder::Equal;
    let summit = SchemaSet::fins(0b1);
    let splits = compare(&scott, &al).map_err(s)? == TopologyOrder::Coarser
        && !scott.is_open(&summit)
        && al.is_open(&summit);
    let bare = chain_omega();
    let merged = compare(
        &order_topology_omega(&bare, OrderTopologyKind::Scott).map_err(s)?,
        &order_topology_omega(&bare, OrderTopologyKind::Alexandroff).map_err(s)?,
    )
    .map_err(s)?
        == TopologyOrder::Equal;
    Ok((
        same && splits && merged,
        format!("scott equals weak scott on the capped chain: {same}; alexandroff alone opens {{inf}}: {splits}; scott equals alexandroff on the bare chain: {merged}"),
    ))
}

/// Closing a set under a sandwich class, stage by stage, lands on the
/// topological closure in the space the class determines.
fn verify_closure_class(
    p: &FinitePoset,
    pairs: Vec<(FiniteNet, usize)>,
) -> Result<usize, String> {
    let class = ConvClass::new(p.clone(), pairs);
    let labels: Vec<&str> = (0..p.n()).map(|i| p.label(i)).collect();
    let space = determined_topology(&labels, &class);
    let mut count = 0;
    for f in 0..=mask::full(p.n()) {
        let (_, star) = closure_transfinite(p, &class, f).map_err(s)?;
        if star != space.closure(f) {
            return Err(format!(
                "iterated closure of {f:#b} missed the topological closure on {} points",
                p.n()
            ));
        }
        count += 1;
    }
    Ok(count)
}

const SAMPLED_CLASSES_AT_FOUR: usize = 64;

fn transfinite_closure(cfg: &RunConfig) -> Checked {
    let mut closures = 0usize;
    let mut classes = 0usize;
    for n in 1..=3 {
        for p in all_posets(n) {
            let (mandatory, optional) = sandwich_parts(&p);
            for pick in 0u64..(1 << optional.len()) {
                let mut pairs = mandatory.clone();
                for (i, pr) in optional.iter().enumerate() {
                    if pick >> i & 1 == 1 {
                        pairs.push(*pr);
                    }
                }
                classes += 1;
                match verify_closure_class(&p, pairs) {
                    Ok(c) => closures += c,
                    Err(msg) => return Ok((false, msg)),
                }
            }
        }
    }
    // Four points: the extremes of the sandwich plus seeded picks of
    // varying density; the full subset lattice is out of reach there.
    for (pi, p) in all_posets(4).iter().enumerate() {
        let (mandatory, optional) = sandwich_parts(p);
        let mut picks: Vec<Vec<(FiniteNet, usize)>> = vec![Vec::new(), optional.clone()];
        for k in 0..SAMPLED_CLASSES_AT_FOUR {
            let density = k % (optional.len() + 1);
            let chosen = seeded_indices(
                optional.len(),
                density,
                cfg.seed ^ ((pi as u64) << 16) ^ k as u64,
            );
            picks.push(chosen.into_iter().map(|i| optional[i]).collect());
        }
        for extra in picks {
            let mut pairs = mandatory.clone();
            pairs.extend(extra);
            classes += 1;
            match verify_closure_class(p, pairs) {
                Ok(c) => closures += c,
                Err(msg) => return Ok((false, msg)),
            }
        }
    }
    Ok((true, format!("{closures} closures agree across {classes} sandwich classes")))
}

const SAMPLED_POSETS_AT_FOUR: usize = 6;

fn coreflection_laws(cfg: &RunConfig) -> Checked {
    let lab = cfg.lab();
    let mut spaces: Vec<FinitePoset> = (1..=3).flat_map(posets_up_to_iso).collect();
    let four = posets_up_to_iso(4);
    for i in seeded_indices(four.len(), SAMPLED_POSETS_AT_FOUR, cfg.seed) {
        spaces.push(four[i].clone());
    }
    let mut instances = 0usize;
    for p in &spaces {
        let x = alex(p);
        for k in OpKind::ALL {
            let cx = coreflect(&x, k);
            if coreflect(&cx, k) != cx {
                return Ok((false, format!("{} is not idempotent on {} points", k.token(), p.n())));
            }
            if !is_determined(&cx, k) {
                return Ok((
                    false,
                    format!("the {}-coreflection is not {}-determined", k.token(), k.token()),
                ));
            }
            let rep = check_coreflection_universal(&x, k, &[1, 2], &lab).map_err(s)?;
            if !rep.verdict {
                return fail_law(&rep);
            }
            instances += 1;
        }
    }
    Ok((true, format!("{instances} operator checks across {} spaces", spaces.len())))
}

const SAMPLED_TRIPLES_AT_THREE: usize = 16;

fn cartesian_closure(cfg: &RunConfig) -> Checked {
    let lab = cfg.lab();
    let two: Vec<FiniteTopology> =
        (1..=2).flat_map(posets_up_to_iso).map(|p| alex(&p)).collect();
    let three: Vec<FiniteTopology> = posets_up_to_iso(3).iter().map(alex).collect();
    let mut triples: Vec<(&FiniteTopology, &FiniteTopology, &FiniteTopology)> = Vec::new();
    for x in &two {
        for y in &two {
            for z in &two {
                triples.push((x, y, z));
            }
        }
    }
    let m = three.len();
    for i in seeded_indices(m * m * m, SAMPLED_TRIPLES_AT_THREE, cfg.seed) {
        triples.push((&three[i / (m * m)], &three[(i / m) % m], &three[i % m]));
    }
    let mut instances = 0usize;
    let mut skipped = 0usize;
    for (x, y, z) in triples {
        for k in [OpKind::Directed, OpKind::StrictDirected] {
            match check_exponential_law(x, y, z, k, &lab) {
                Ok(rep) if rep.verdict => instances += 1,
                Ok(rep) => return fail_law(&rep),
                Err(e) if e.is_size_cap() => skipped += 1,
                Err(e) => return Err(s(e)),
            }
        }
    }
    Ok((
        true,
        format!("{instances} transposes verified exactly, {skipped} skipped at the size cap"),
    ))
}

fn separate_continuity(cfg: &RunConfig) -> Checked {
    let lab = cfg.lab();
    let two: Vec<FiniteTopology> =
        (1..=2).flat_map(posets_up_to_iso).map(|p| alex(&p)).collect();
    let mut tables = 0usize;
    for x in &two {
        for y in &two {
            for z in &two {
                let rep = check_separate_continuity(x, y, z, &lab).map_err(s)?;
                if !rep.verdict {
                    return fail_law(&rep);
                }
                tables += rep.instances;
            }
        }
    }
    Ok((true, format!("{tables} map tables agree on separate and joint continuity")))
}

fn t0_and_order_facts(cfg: &RunConfig) -> Checked {
    let lab = cfg.lab();
    let spaces: Vec<FiniteTopology> =
        (1..=3).flat_map(posets_up_to_iso).map(|p| alex(&p)).collect();
    let mut pairs = 0usize;
    let mut skipped = 0usize;
    for x in &spaces {
        for y in &spaces {
            for k in [OpKind::Directed, OpKind::StrictDirected] {
                match check_t0_preservation(x, y, k, &lab) {
                    Ok(rep) if rep.verdict => pairs += 1,
                    Ok(rep) => return fail_law(&rep),
                    Err(e) if e.is_size_cap() => skipped += 1,
                    Err(e) => return Err(s(e)),
                }
            }
        }
    }
    Ok((
        true,
        format!("{pairs} pairs keep T0 and the product and pointwise orders, {skipped} skipped at the size cap"),
    ))
}

fn probe_generation() -> Checked {
    let mut count = 0usize;
    for n in 1..=3 {
        for p in all_posets(n) {
            let x = alex(&p);
            if probe_generated(&x, OpKind::Directed, 3) != coreflect(&x, OpKind::Directed) {
                return Ok((
                    false,
                    format!("directed probes of size three miss the coreflection on {} points", n),
                ));
            }
            count += 1;
        }
    }
    Ok((true, format!("probe topology equals the coreflection on {count} spaces")))
}

fn class_topology() -> Checked {
    let e = OmegaTopology::base_of(example_e());
    let e_fails = !is_c_space_omega(&e).map_err(s)?;
    let capped = OmegaTopology::base_of(scott_omega_plus_one());
    let capped_is = is_c_space_omega(&capped).map_err(s)?;
    let mut bundled = 0usize;
    for sp in [beta(), gamma(), delta(), scott_omega_plus_one(), chain_omega(), example_e()] {
        let x = OmegaTopology::base_of(sp);
        s_topology_omega(&x).map_err(s)?;
        bundled += 1;
    }
    let mut finite = 0usize;
    for n in 1..=4 {
        for p in all_preorders(n) {
            let x = alex(&p);
            if s_topology_finite(&x) != coreflect(&x, OpKind::Directed) {
                return Ok((
                    false,
                    format!("the class topology strays from the coreflection on {n} points"),
                ));
            }
            finite += 1;
        }
    }
    let net = SchemaNet::new(vec![NetStep::At(Point::Fin(1)), NetStep::Ramp { mul: 2, add: 0 }]);
    let a = Point::Fin(1);
    let escapes = e.converges_net(&net, a).map_err(s)?
        && !in_s_class_omega(&e, &net, a).map_err(s)?;
    Ok((
        e_fails && capped_is && escapes,
        format!("the counterexample is not a c-space: {e_fails}; the capped chain is: {capped_is}; class topology is the directed coreflection on {bundled} bundled and {finite} finite spaces; the alternating net converges without entering the class: {escapes}"),
    ))
}

fn pointwise_limit_escapes_order() -> Checked {
    let om = OmegaTopology::base_of(chain_omega());
    let ride = SchemaNet::new(vec![NetStep::Ramp { mul: 1, add: 0 }]);
    let mut converges = true;
    for k in 0..=4 {
        converges &= om.converges_net(&ride, Point::Chain(k)).map_err(s)?;
    }
    let mut escapes = true;
    for n in 0..=4 {
        escapes &= !om.space().declared_leq(Point::Chain(n + 1), Point::Chain(n));
    }
    Ok((
        converges && escapes,
        format!("coordinate nets converge to the identity at every representative: {converges}; the identity never sits below a coordinate map: {escapes}"),
    ))
}

fn no_upper_bound() -> Checked {
    let whole = SchemaSet::new(0, vec![], Some(0));
    let unbounded = !has_upper_bound(&chain_omega(), &whole).map_err(s)?;
    Ok((unbounded, format!("the whole chain admits no upper bound: {unbounded}")))
}

const SAMPLE_DOC: &str = "\
poset P = {a < b, a < c}
space X = alexandroff of P
space Y = opens [{}, {b}, {a, b}]
omega B = beta
omega E2 {
  fin {bot < inf}
  above bot from 0
  below inf all
  open fixed {inf, 0..}
  open tails attach {inf} from 0
}
net M on B = [inf, 2n+1]
query coreflect X D'
query compare X X
query sclass B M inf
query export P dot
";

fn spacefile_round_trip() -> Checked {
    let doc = parse(SAMPLE_DOC).map_err(s)?;
    let printed = doc_to_text(&doc);
    let again = parse(&printed).map_err(s)?;
    let stable = again.decls() == doc.decls() && doc_to_text(&again) == printed;
    let x = FiniteTopology::sierpinski();
    let reimported = topology_from_json(&json_topology(&x)).map_err(s)? == x;
    Ok((
        stable && reimported,
        format!("canonical print is a fixed point: {stable}; json re-imports equal: {reimported}"),
    ))
}
