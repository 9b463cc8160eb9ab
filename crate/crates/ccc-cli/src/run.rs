//! Interpreter for parsed spacefiles: builds the declared objects in
//! order, executes queries, and renders a deterministic report.

use std::collections::BTreeMap;

use ccc_core::category::{
    check_coreflection_universal, check_exponential_law, check_product_universal, exponential,
    tensor, LabConfig, LawReport,
};
use ccc_core::conv::coreflect;
use ccc_core::cspace::{c_space_witness_finite, c_space_witness_omega, in_s_class_omega};
use ccc_core::omega::{
    beta, build_omega, chain_omega, compare, coreflect_omega, delta, example_e, gamma,
    scott_omega_plus_one, ChainBound, NetStep, OmegaSpec, OmegaTopology, SchemaNet, SchemaSet,
    SchemaTemplate, TopologyOrder,
};
use ccc_core::order::{FinitePoset, OrderMode};
use ccc_core::topology::FiniteTopology;
use ccc_core::{mask, Subset};
use serde::Serialize;
use thiserror::Error;

use crate::doc::{
    BelowSpec, Builtin, Command, Decl, ExportFormat, OmegaBlock, RawStep, SetAst, SpaceDoc,
    TemplateAst,
};
use crate::export;
use crate::suite;

/// Knobs shared by the interpreter and the bundled suite.
#[derive(Debug, Clone)]
pub struct RunConfig {
    /// Cap on the ground size of constructed spaces (products, map spaces).
    pub max_size: usize,
    /// Seed for every sampled sweep.
    pub seed: u64,
    /// Append exports of all declared spaces after the queries.
    pub export: Option<ExportFormat>,
    /// Append a suite run if the document does not already request one.
    pub suite: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig { max_size: 12, seed: 0xCCC, export: None, suite: false }
    }
}

impl RunConfig {
    pub fn lab(&self) -> LabConfig {
        LabConfig { max_points: self.max_size, seed: self.seed }
    }
}

/// A declaration that could not be built; aborts the run.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct DeclError {
    pub line: usize,
    pub msg: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Ok,
    Fail,
    Error,
}

impl Status {
    fn word(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Fail => "fail",
            Status::Error => "error",
        }
    }
}

/// Outcome of one query, in document order.
#[derive(Debug, Clone, Serialize)]
pub struct Entry {
    pub line: usize,
    pub query: String,
    pub status: Status,
    pub detail: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub entries: Vec<Entry>,
    pub ok: bool,
}

impl Report {
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&format!("{} (line {}): {}\n", e.query, e.line, e.status.word()));
            for d in &e.detail {
                out.push_str(&format!("  {d}\n"));
            }
        }
        let (mut fails, mut errors) = (0usize, 0usize);
        for e in &self.entries {
            match e.status {
                Status::Fail => fails += 1,
                Status::Error => errors += 1,
                Status::Ok => {}
            }
        }
        out.push_str(&format!(
            "{} queries: {} ok, {fails} fail, {errors} error\n",
            self.entries.len(),
            self.entries.len() - fails - errors,
        ));
        out
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string(self).expect("plain struct serializes");
        s.push('\n');
        s
    }
}

enum Obj {
    Finite(FiniteTopology),
    Omega(OmegaTopology),
}

struct Env {
    posets: BTreeMap<String, FinitePoset>,
    spaces: BTreeMap<String, Obj>,
    /// Net name to the omega space it rides on and its steps.
    nets: BTreeMap<String, (String, SchemaNet)>,
    /// Space names in declaration order with their source lines.
    space_order: Vec<(usize, String)>,
}

pub fn run(doc: &SpaceDoc, cfg: &RunConfig) -> Result<Report, DeclError> {
    let mut env = Env {
        posets: BTreeMap::new(),
        spaces: BTreeMap::new(),
        nets: BTreeMap::new(),
        space_order: Vec::new(),
    };
    let mut entries = Vec::new();
    let mut has_suite = false;
    for item in &doc.items {
        let line = item.line;
        let located = |msg: String| DeclError { line, msg };
        match &item.decl {
            Decl::Poset { name, chains } => {
                let p = build_poset(chains).map_err(located)?;
                env.posets.insert(name.clone(), p);
            }
            Decl::SpaceFromOrder { name, kind, poset } => {
                let p = env
                    .posets
                    .get(poset)
                    .ok_or_else(|| located(format!("unresolved name {poset}")))?;
                let x = FiniteTopology::order_topology(p, *kind);
                env.space_order.push((line, name.clone()));
                env.spaces.insert(name.clone(), Obj::Finite(x));
            }
            Decl::SpaceOpens { name, opens } => {
                let x = build_opens(opens).map_err(located)?;
                env.space_order.push((line, name.clone()));
                env.spaces.insert(name.clone(), Obj::Finite(x));
            }
            Decl::SpaceCoreflect { name, source, op } => {
                let src = env
                    .spaces
                    .get(source)
                    .ok_or_else(|| located(format!("unresolved name {source}")))?;
                let obj = match src {
                    Obj::Finite(x) => Obj::Finite(coreflect(x, *op)),
                    Obj::Omega(x) => {
                        Obj::Omega(coreflect_omega(x, *op).map_err(|e| located(e.to_string()))?)
                    }
                };
                env.space_order.push((line, name.clone()));
                env.spaces.insert(name.clone(), obj);
            }
            Decl::OmegaBuiltin { name, builtin } => {
                let space = match builtin {
                    Builtin::Beta => beta(),
                    Builtin::Gamma => gamma(),
                    Builtin::Delta => delta(),
                    Builtin::ScottOmegaPlusOne => scott_omega_plus_one(),
                    Builtin::Omega => chain_omega(),
                    Builtin::ExampleE => example_e(),
                };
                env.space_order.push((line, name.clone()));
                env.spaces.insert(name.clone(), Obj::Omega(OmegaTopology::base_of(space)));
            }
            Decl::OmegaCustom { name, block } => {
                let x = build_custom(name, block).map_err(located)?;
                env.space_order.push((line, name.clone()));
                env.spaces.insert(name.clone(), Obj::Omega(x));
            }
            Decl::Net { name, space, steps } => {
                let net = build_net(&env, space, steps).map_err(located)?;
                env.nets.insert(name.clone(), (space.clone(), net));
            }
            Decl::Query(c) => {
                has_suite |= matches!(c, Command::Suite);
                entries.push(run_query(&env, c, line, cfg));
            }
        }
    }
    if cfg.suite && !has_suite {
        entries.push(run_query(&env, &Command::Suite, 0, cfg));
    }
    if let Some(format) = cfg.export {
        for (line, name) in &env.space_order {
            let c = Command::Export { name: name.clone(), format };
            entries.push(run_query(&env, &c, *line, cfg));
        }
    }
    let ok = entries.iter().all(|e| e.status == Status::Ok);
    Ok(Report { entries, ok })
}

fn build_poset(chains: &[Vec<String>]) -> Result<FinitePoset, String> {
    let mut labels: Vec<&str> = Vec::new();
    for c in chains {
        for l in c {
            if !labels.contains(&l.as_str()) {
                labels.push(l);
            }
        }
    }
    let mut pairs: Vec<(&str, &str)> = Vec::new();
    for c in chains {
        for w in c.windows(2) {
            pairs.push((w[0].as_str(), w[1].as_str()));
        }
    }
    FinitePoset::build(&labels, &pairs, OrderMode::Partial).map_err(|e| e.to_string())
}

fn build_opens(opens: &[Vec<String>]) -> Result<FiniteTopology, String> {
    let mut labels: Vec<&str> = Vec::new();
    for o in opens {
        for l in o {
            if !labels.contains(&l.as_str()) {
                labels.push(l);
            }
        }
    }
    let masks: Vec<Subset> = opens
        .iter()
        .map(|o| {
            o.iter()
                .map(|l| mask::singleton(labels.iter().position(|g| *g == l).expect("collected")))
                .fold(0, |a, b| a | b)
        })
        .collect();
    FiniteTopology::make(&labels, &masks).map_err(|e| e.to_string())
}

fn fin_index(fins: &[String], l: &str) -> Result<usize, String> {
    fins.iter().position(|x| x == l).ok_or_else(|| format!("unknown finite point {l}"))
}

fn set_from_ast(s: &SetAst, fins: &[String]) -> Result<SchemaSet, String> {
    let mut m: Subset = 0;
    for l in &s.fins {
        m |= mask::singleton(fin_index(fins, l)?);
    }
    Ok(SchemaSet::new(m, s.chain.clone(), s.tail))
}

fn attach_from_ast(s: &SetAst, fins: &[String]) -> Result<Subset, String> {
    if !s.chain.is_empty() || s.tail.is_some() {
        return Err("attach sets may only name finite points".into());
    }
    let mut m: Subset = 0;
    for l in &s.fins {
        m |= mask::singleton(fin_index(fins, l)?);
    }
    Ok(m)
}

fn build_custom(name: &str, block: &OmegaBlock) -> Result<OmegaTopology, String> {
    let mut fin_labels: Vec<String> = Vec::new();
    for c in &block.fin_chains {
        for l in c {
            if !fin_labels.contains(l) {
                fin_labels.push(l.clone());
            }
        }
    }
    let fin_pairs: Vec<(String, String)> = block
        .fin_chains
        .iter()
        .flat_map(|c| c.windows(2).map(|w| (w[0].clone(), w[1].clone())))
        .collect();
    let mut below = vec![ChainBound::None; fin_labels.len()];
    for (l, spec) in &block.below {
        below[fin_index(&fin_labels, l)?] = match spec {
            BelowSpec::All => ChainBound::All,
            BelowSpec::First(k) => ChainBound::Below(*k),
        };
    }
    let mut above = vec![None; fin_labels.len()];
    for (l, from) in &block.above {
        above[fin_index(&fin_labels, l)?] = Some(*from);
    }
    let mut base = Vec::new();
    for t in &block.opens {
        base.push(match t {
            TemplateAst::Fixed(s) => SchemaTemplate::Fixed(set_from_ast(s, &fin_labels)?),
            TemplateAst::Tails { attach, from } => SchemaTemplate::PerChain {
                upset: true,
                attach: attach_from_ast(attach, &fin_labels)?,
                from: *from,
            },
            TemplateAst::Points { attach, from } => SchemaTemplate::PerChain {
                upset: false,
                attach: attach_from_ast(attach, &fin_labels)?,
                from: *from,
            },
        });
    }
    let spec = OmegaSpec {
        name: name.to_string(),
        fin_labels,
        fin_pairs,
        below,
        above,
        base,
        order_compatible: !block.unordered,
    };
    build_omega(spec).map(OmegaTopology::base_of).map_err(|e| e.to_string())
}

fn build_net(env: &Env, space: &str, steps: &[RawStep]) -> Result<SchemaNet, String> {
    let x = match env.spaces.get(space) {
        Some(Obj::Omega(x)) => x,
        Some(Obj::Finite(_)) => {
            return Err(format!("nets ride chains; {space} is a finite space"))
        }
        None => return Err(format!("unresolved name {space}")),
    };
    let mut out = Vec::with_capacity(steps.len());
    for s in steps {
        out.push(match s {
            RawStep::At(tok) => NetStep::At(
                x.space()
                    .lookup(tok)
                    .ok_or_else(|| format!("unknown point {tok} in {space}"))?,
            ),
            RawStep::Ramp { mul, add } => NetStep::Ramp { mul: *mul, add: *add },
        });
    }
    Ok(SchemaNet::new(out))
}

/// Label-set display for finite spaces, matching the schematic set form.
fn subset_text(x: &FiniteTopology, s: Subset) -> String {
    let parts: Vec<&str> = mask::iter(s).map(|i| x.label(i)).collect();
    format!("{{{}}}", parts.join(", "))
}

/// First basic open of `finer` that is not open in `coarser`.
fn omega_witness(
    finer: &OmegaTopology,
    coarser: &OmegaTopology,
) -> Result<Option<String>, String> {
    let bound = finer
        .space()
        .sweep_bound(&[coarser.space().sweep_bound(&[])]);
    for t in finer.basis().map_err(|e| e.to_string())? {
        match t {
            SchemaTemplate::Fixed(s) => {
                if !coarser.is_open(s) {
                    return Ok(Some(finer.space().set_name(s)));
                }
            }
            SchemaTemplate::PerChain { from, .. } => {
                for n in *from..=bound + 1 {
                    let inst = t.instance(n);
                    if !coarser.is_open(&inst) {
                        return Ok(Some(finer.space().set_name(&inst)));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn finite_witness(finer: &FiniteTopology, coarser: &FiniteTopology) -> Option<String> {
    finer
        .opens()
        .iter()
        .find(|u| !coarser.opens().contains(u))
        .map(|&u| subset_text(finer, u))
}

/// Report phrasing shared by `compare` and `coreflect`.
fn describe_order(
    order: TopologyOrder,
    finer_witness: Option<String>,
    coarser_witness: Option<String>,
) -> String {
    let show = |w: Option<String>| w.unwrap_or_else(|| "(none found)".into());
    match order {
        TopologyOrder::Equal => "equal".into(),
        TopologyOrder::Finer => format!("strictly finer: witness {}", show(finer_witness)),
        TopologyOrder::Coarser => {
            format!("strictly coarser: witness {}", show(coarser_witness))
        }
        TopologyOrder::Incomparable => format!(
            "incomparable: witness {} vs {}",
            show(finer_witness),
            show(coarser_witness)
        ),
    }
}

/// Rewrites `b` in `a`'s coordinates when both share a ground set, so
/// spaces declared with different label orders still compare.
fn align_finite(a: &FiniteTopology, b: &FiniteTopology) -> Result<FiniteTopology, String> {
    if a.labels() == b.labels() {
        return Ok(b.clone());
    }
    let mismatch = || "topologies live on different ground sets".to_string();
    if a.n() != b.n() {
        return Err(mismatch());
    }
    let mut perm = Vec::with_capacity(b.n());
    for i in 0..b.n() {
        perm.push(a.index_of(b.label(i)).ok_or_else(mismatch)?);
    }
    let opens: Vec<Subset> = b
        .opens()
        .iter()
        .map(|&u| mask::iter(u).fold(0, |m, i| m | mask::singleton(perm[i])))
        .collect();
    let labels: Vec<&str> = a.labels().iter().map(|s| s.as_str()).collect();
    FiniteTopology::make(&labels, &opens).map_err(|e| e.to_string())
}

fn compare_finite(a: &FiniteTopology, b: &FiniteTopology) -> Result<String, String> {
    let b = &align_finite(a, b)?;
    let a_in_b = a.opens().iter().all(|u| b.opens().contains(u));
    let b_in_a = b.opens().iter().all(|u| a.opens().contains(u));
    let order = match (a_in_b, b_in_a) {
        (true, true) => TopologyOrder::Equal,
        (true, false) => TopologyOrder::Coarser,
        (false, true) => TopologyOrder::Finer,
        (false, false) => TopologyOrder::Incomparable,
    };
    Ok(describe_order(order, finite_witness(a, b), finite_witness(b, a)))
}

fn compare_omega(a: &OmegaTopology, b: &OmegaTopology) -> Result<String, String> {
    let order = compare(a, b).map_err(|e| e.to_string())?;
    Ok(describe_order(order, omega_witness(a, b)?, omega_witness(b, a)?))
}

fn law_line(rep: &LawReport) -> String {
    match &rep.counterexample {
        None => format!("{}: pass ({} instances)", rep.law, rep.instances),
        Some(c) => format!("{}: fail ({c})", rep.law),
    }
}

fn run_query(env: &Env, c: &Command, line: usize, cfg: &RunConfig) -> Entry {
    let mut entry = Entry { line, query: c.text(), status: Status::Ok, detail: Vec::new() };
    match exec(env, c, cfg) {
        Ok((status, detail)) => {
            entry.status = status;
            entry.detail = detail;
        }
        Err(msg) => {
            entry.status = Status::Error;
            entry.detail = vec![msg];
        }
    }
    entry
}

type QueryResult = Result<(Status, Vec<String>), String>;

fn get_space<'e>(env: &'e Env, name: &str) -> Result<&'e Obj, String> {
    env.spaces.get(name).ok_or_else(|| format!("unresolved name {name}"))
}

fn get_finite<'e>(env: &'e Env, name: &str) -> Result<&'e FiniteTopology, String> {
    match get_space(env, name)? {
        Obj::Finite(x) => Ok(x),
        Obj::Omega(_) => Err(format!("{name} is a countable space; a finite one is needed")),
    }
}

fn exec(env: &Env, c: &Command, cfg: &RunConfig) -> QueryResult {
    let lab = cfg.lab();
    match c {
        Command::Validate { name } => {
            let detail = if let Some(p) = env.posets.get(name) {
                format!("poset, {} points, {} cover pairs", p.n(), p.covers().len())
            } else if let Some((space, net)) = env.nets.get(name) {
                format!("net on {space}, {} residue classes", net.steps.len())
            } else {
                match get_space(env, name)? {
                    Obj::Finite(x) => format!(
                        "finite topology, {} points, {} opens, {}",
                        x.n(),
                        x.opens().len(),
                        if x.is_t0() { "T0" } else { "not T0" }
                    ),
                    Obj::Omega(x) => {
                        let s = x.space();
                        format!(
                            "countable space, {} finite points plus the chain, {} base templates, {}",
                            s.n_fin(),
                            s.base().len(),
                            if s.is_order_compatible() {
                                "order-checked"
                            } else {
                                "order unchecked"
                            }
                        )
                    }
                }
            };
            Ok((Status::Ok, vec![detail]))
        }
        Command::Coreflect { space, op } => {
            let detail = match get_space(env, space)? {
                Obj::Finite(x) => {
                    let cx = coreflect(x, *op);
                    if cx.opens() == x.opens() {
                        "fixed: the space equals its coreflection".to_string()
                    } else {
                        format!(
                            "strictly finer: witness {}",
                            finite_witness(&cx, x).unwrap_or_else(|| "(none found)".into())
                        )
                    }
                }
                Obj::Omega(x) => {
                    let cx = coreflect_omega(x, *op).map_err(|e| e.to_string())?;
                    match compare(&cx, x).map_err(|e| e.to_string())? {
                        TopologyOrder::Equal => {
                            "fixed: the space equals its coreflection".to_string()
                        }
                        order => describe_order(order, omega_witness(&cx, x)?, None),
                    }
                }
            };
            Ok((Status::Ok, vec![detail]))
        }
        Command::Compare { left, right } => {
            let detail = match (get_space(env, left)?, get_space(env, right)?) {
                (Obj::Finite(a), Obj::Finite(b)) => compare_finite(a, b)?,
                (Obj::Omega(a), Obj::Omega(b)) => compare_omega(a, b)?,
                _ => return Err("cannot compare a finite space with a countable one".into()),
            };
            Ok((Status::Ok, vec![detail]))
        }
        Command::Product { left, right } => {
            let (a, b) = (get_finite(env, left)?, get_finite(env, right)?);
            let p = FiniteTopology::product(a, b, cfg.max_size).map_err(|e| e.to_string())?;
            Ok((Status::Ok, vec![format!("{} points, {} opens", p.n(), p.opens().len())]))
        }
        Command::Tensor { left, right, op } => {
            let (a, b) = (get_finite(env, left)?, get_finite(env, right)?);
            let t = tensor(a, b, *op, &lab).map_err(|e| e.to_string())?;
            Ok((Status::Ok, vec![format!("{} points, {} opens", t.n(), t.opens().len())]))
        }
        Command::Exp { left, right, op } => {
            let (a, b) = (get_finite(env, left)?, get_finite(env, right)?);
            let e = exponential(a, b, *op, &lab).map_err(|e| e.to_string())?;
            Ok((
                Status::Ok,
                vec![format!("{} continuous maps, {} opens", e.n(), e.opens().len())],
            ))
        }
        Command::Laws { x, y, z, op } => {
            let (xs, ys, zs) = (get_finite(env, x)?, get_finite(env, y)?, get_finite(env, z)?);
            let reports = [
                check_exponential_law(xs, ys, zs, *op, &lab).map_err(|e| e.to_string())?,
                check_product_universal(xs, ys, *op, &[1, 2], &lab).map_err(|e| e.to_string())?,
                check_coreflection_universal(zs, *op, &[1, 2], &lab)
                    .map_err(|e| e.to_string())?,
            ];
            let status = if reports.iter().all(|r| r.verdict) { Status::Ok } else { Status::Fail };
            Ok((status, reports.iter().map(law_line).collect()))
        }
        Command::Cspace { space } => {
            let detail = match get_space(env, space)? {
                Obj::Finite(x) => match c_space_witness_finite(x) {
                    None => "c-space: true".to_string(),
                    Some((p, u)) => format!(
                        "c-space: false (fails at {} for neighbourhood {})",
                        x.label(p),
                        subset_text(x, u)
                    ),
                },
                Obj::Omega(x) => match c_space_witness_omega(x).map_err(|e| e.to_string())? {
                    None => "c-space: true".to_string(),
                    Some((p, u)) => format!(
                        "c-space: false (fails at {} for neighbourhood {})",
                        x.space().point_name(p),
                        x.space().set_name(&u)
                    ),
                },
            };
            Ok((Status::Ok, vec![detail]))
        }
        Command::Sclass { space, net, point } => {
            let x = match get_space(env, space)? {
                Obj::Omega(x) => x,
                Obj::Finite(_) => {
                    return Err(format!("{space} is a finite space; sclass rides chains"))
                }
            };
            let (home, n) =
                env.nets.get(net).ok_or_else(|| format!("unresolved name {net}"))?;
            if home != space {
                return Err(format!("net {net} is declared on {home}, not {space}"));
            }
            let p = x
                .space()
                .lookup(point)
                .ok_or_else(|| format!("unknown point {point} in {space}"))?;
            let conv = x.converges_net(n, p).map_err(|e| e.to_string())?;
            let classed = in_s_class_omega(x, n, p).map_err(|e| e.to_string())?;
            let mut detail = vec![format!("converges: {conv}, classed: {classed}")];
            if conv != classed {
                detail.push("the class and the topology disagree on this net".to_string());
            }
            Ok((Status::Ok, detail))
        }
        Command::Suite => {
            let results = suite::run_suite(cfg);
            let status =
                if results.iter().all(|r| r.pass) { Status::Ok } else { Status::Fail };
            Ok((status, suite::render(&results)))
        }
        Command::Export { name, format } => {
            let payload = if let Some(p) = env.posets.get(name) {
                match format {
                    ExportFormat::Dot => export::dot_poset(name, p),
                    ExportFormat::Json => {
                        let mut s = export::json_poset(p);
                        s.push('\n');
                        s
                    }
                }
            } else {
                match get_space(env, name)? {
                    Obj::Finite(x) => export::export_finite(name, x, *format),
                    Obj::Omega(x) => {
                        export::export_omega(name, x, *format).map_err(|e| e.to_string())?
                    }
                }
            };
            let detail = payload.lines().map(|l| l.to_string()).collect();
            Ok((Status::Ok, detail))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse;

    fn run_text(text: &str) -> Report {
        run(&parse(text).unwrap(), &RunConfig::default()).unwrap()
    }

    #[test]
    fn coreflection_on_a_finite_alexandroff_space_is_fixed() {
        let report = run_text(
            "poset C2 = {0 < 1}\nspace X = alexandroff of C2\nquery coreflect X D\n",
        );
        assert!(report.ok);
        assert_eq!(report.entries[0].detail, vec!["fixed: the space equals its coreflection"]);
    }

    #[test]
    fn the_strict_directed_coreflection_of_beta_opens_the_summit() {
        let report = run_text(
            "omega B = beta\nspace Bp = coreflect B D'\nquery compare Bp B\n",
        );
        assert!(report.ok);
        assert_eq!(report.entries[0].detail, vec!["strictly finer: witness {inf}"]);
    }

    #[test]
    fn compare_aligns_spaces_declared_with_different_label_orders() {
        let report = run_text(
            "poset C2 = {0 < 1}\nspace S = upper of C2\nspace T = opens [{}, {1}, {0, 1}]\nquery compare S T\nquery compare T S\n",
        );
        assert!(report.ok, "{:?}", report.entries);
        assert_eq!(report.entries[0].detail, vec!["equal"]);
        assert_eq!(report.entries[1].detail, vec!["equal"]);
    }

    #[test]
    fn compare_rejects_genuinely_different_ground_sets() {
        let report = run_text(
            "space S = opens [{}, {a}]\nspace T = opens [{}, {b}]\nquery compare S T\n",
        );
        assert_eq!(report.entries[0].status, Status::Error);
        assert_eq!(report.entries[0].detail, vec!["topologies live on different ground sets"]);
    }

    #[test]
    fn cspace_reports_the_failing_point_and_neighbourhood() {
        let report = run_text("omega E = example_e\nquery cspace E\n");
        assert!(report.ok);
        let detail = &report.entries[0].detail[0];
        assert!(detail.starts_with("c-space: false (fails at a for neighbourhood {"), "{detail}");
    }

    #[test]
    fn sclass_flags_the_alternating_net() {
        let report = run_text(
            "omega E = example_e\nnet M on E = [a, 2n]\nquery sclass E M a\nquery sclass E M bot\n",
        );
        assert!(report.ok);
        assert_eq!(
            report.entries[0].detail,
            vec![
                "converges: true, classed: false",
                "the class and the topology disagree on this net"
            ]
        );
        assert_eq!(report.entries[1].detail, vec!["converges: true, classed: true"]);
    }

    #[test]
    fn unresolved_names_become_located_error_entries() {
        let report = run_text("query validate missing\n");
        assert!(!report.ok);
        assert_eq!(report.entries[0].status, Status::Error);
        assert_eq!(report.entries[0].detail, vec!["unresolved name missing"]);
        assert_eq!(report.entries[0].line, 1);
    }

    #[test]
    fn declaration_failures_abort_with_their_line() {
        let err = run(
            &parse("# comment\nspace X = opens [{a}, {a, b}]\n").unwrap(),
            &RunConfig::default(),
        )
        .unwrap_err();
        assert_eq!(err.line, 2);
        assert!(err.msg.contains("empty"), "{}", err.msg);
    }

    #[test]
    fn laws_queries_summarize_the_three_reports() {
        let report = run_text(
            "poset P = {a < b}\nspace S = alexandroff of P\nquery laws S S S D\n",
        );
        assert!(report.ok, "{:?}", report.entries);
        assert_eq!(report.entries[0].detail.len(), 3);
        assert!(report.entries[0].detail[0].starts_with("exponential-law: pass"));
    }
}
