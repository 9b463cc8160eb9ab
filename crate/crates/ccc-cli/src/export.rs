//! Exporters: dot drawings of specialization orders, a canonical json
//! form of finite topologies that re-imports to an equal space, and the
//! canonical text printer used for document round trips.

use ccc_core::omega::{truncate, OmegaError, OmegaSpace, OmegaTopology, SchemaTemplate};
use ccc_core::order::FinitePoset;
use ccc_core::topology::{FiniteTopology, OrderTopologyKind, TopologyError};
use ccc_core::{mask, Subset};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::doc::{
    BelowSpec, Command, Decl, ExportFormat, OmegaBlock, RawStep, SetAst, SpaceDoc, TemplateAst,
};

#[derive(Debug, Error)]
pub enum ExportError {
    #[error("json decode failed: {0}")]
    Json(String),
    #[error("unknown ground label {0}")]
    UnknownLabel(String),
    #[error(transparent)]
    Topology(#[from] TopologyError),
    #[error(transparent)]
    Omega(#[from] OmegaError),
}

/// Hasse diagram of a poset. Falls back to the full relation when the
/// order is not antisymmetric, where a transitive reduction need not exist.
pub fn dot_poset(name: &str, p: &FinitePoset) -> String {
    let mut out = String::new();
    out.push_str(&format!("digraph \"{name}\" {{\n"));
    out.push_str("  rankdir=BT;\n");
    for i in 0..p.n() {
        out.push_str(&format!("  \"{}\";\n", p.label(i)));
    }
    let edges: Vec<(usize, usize)> = if p.is_antisymmetric() {
        p.covers()
    } else {
        let mut all = Vec::new();
        for i in 0..p.n() {
            for j in 0..p.n() {
                if i != j && p.leq(i, j) {
                    all.push((i, j));
                }
            }
        }
        all
    };
    for (i, j) in edges {
        out.push_str(&format!("  \"{}\" -> \"{}\";\n", p.label(i), p.label(j)));
    }
    out.push_str("}\n");
    out
}

/// Hasse diagram of the specialization order of a finite topology.
pub fn dot_topology(name: &str, x: &FiniteTopology) -> String {
    dot_poset(name, &x.specialization())
}

/// Dot of a countable space: the specialization order of its truncation
/// to the finite block plus the first few chain points.
pub fn dot_omega(name: &str, x: &OmegaTopology) -> Result<String, ExportError> {
    let t = truncate(x, 4)?;
    Ok(dot_topology(name, &t))
}

/// Canonical json form of a finite topology: ground labels in carrier
/// order, opens ascending in the induced bit order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopologyJson {
    pub ground: Vec<String>,
    pub opens: Vec<Vec<String>>,
}

pub fn topology_json(x: &FiniteTopology) -> TopologyJson {
    let label_set = |u: Subset| -> Vec<String> {
        mask::iter(u).map(|i| x.label(i).to_string()).collect()
    };
    TopologyJson {
        ground: x.labels().to_vec(),
        opens: x.opens().iter().map(|&u| label_set(u)).collect(),
    }
}

pub fn json_topology(x: &FiniteTopology) -> String {
    serde_json::to_string(&topology_json(x)).expect("plain struct serializes")
}

pub fn topology_from_json(text: &str) -> Result<FiniteTopology, ExportError> {
    let raw: TopologyJson =
        serde_json::from_str(text).map_err(|e| ExportError::Json(e.to_string()))?;
    let labels: Vec<&str> = raw.ground.iter().map(|s| s.as_str()).collect();
    let mut opens = Vec::with_capacity(raw.opens.len());
    for open in &raw.opens {
        let mut m: Subset = 0;
        for l in open {
            let i = raw
                .ground
                .iter()
                .position(|g| g == l)
                .ok_or_else(|| ExportError::UnknownLabel(l.clone()))?;
            m |= mask::singleton(i);
        }
        opens.push(m);
    }
    Ok(FiniteTopology::make(&labels, &opens)?)
}

/// Canonical json form of a poset: points in carrier order, cover pairs.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PosetJson {
    pub points: Vec<String>,
    pub covers: Vec<[String; 2]>,
}

pub fn json_poset(p: &FinitePoset) -> String {
    let covers = p
        .covers()
        .into_iter()
        .map(|(i, j)| [p.label(i).to_string(), p.label(j).to_string()])
        .collect();
    let record = PosetJson { points: p.labels().to_vec(), covers };
    serde_json::to_string(&record).expect("plain struct serializes")
}

/// Canonical json form of a countable-space presentation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OmegaJson {
    pub name: String,
    pub fin: Vec<String>,
    pub fin_order: Vec<String>,
    pub below: Vec<String>,
    pub above: Vec<Option<u64>>,
    pub basis: Vec<String>,
}

pub fn omega_json_struct(space: &OmegaSpace) -> OmegaJson {
    let fin = space.fin();
    let fin_order = fin
        .covers()
        .into_iter()
        .map(|(i, j)| format!("{} < {}", fin.label(i), fin.label(j)))
        .collect();
    let below = (0..space.n_fin())
        .map(|p| match space.below(p) {
            ccc_core::omega::ChainBound::None => "none".to_string(),
            ccc_core::omega::ChainBound::Below(b) => format!("first {b}"),
            ccc_core::omega::ChainBound::All => "all".to_string(),
        })
        .collect();
    let above = (0..space.n_fin()).map(|p| space.above(p)).collect();
    let basis = space
        .base()
        .iter()
        .map(|t| match t {
            SchemaTemplate::Fixed(s) => format!("fixed {}", space.set_name(s)),
            SchemaTemplate::PerChain { upset, attach, from } => {
                let labels: Vec<String> =
                    mask::iter(*attach).map(|i| fin.label(i).to_string()).collect();
                let kind = if *upset { "tails" } else { "points" };
                format!("{kind} attach {{{}}} from {from}", labels.join(", "))
            }
        })
        .collect();
    OmegaJson {
        name: space.name().to_string(),
        fin: fin.labels().to_vec(),
        fin_order,
        below,
        above,
        basis,
    }
}

pub fn json_omega(space: &OmegaSpace) -> String {
    serde_json::to_string(&omega_json_struct(space)).expect("plain struct serializes")
}

fn kind_token(kind: OrderTopologyKind) -> &'static str {
    match kind {
        OrderTopologyKind::Alexandroff => "alexandroff",
        OrderTopologyKind::Upper => "upper",
        OrderTopologyKind::Scott => "scott",
        OrderTopologyKind::WeakScott => "weakscott",
    }
}

fn chain_text(chain: &[String]) -> String {
    chain.join(" < ")
}

fn chains_text(chains: &[Vec<String>]) -> String {
    let parts: Vec<String> = chains.iter().map(|c| chain_text(c)).collect();
    format!("{{{}}}", parts.join(", "))
}

fn label_set_text(labels: &[String]) -> String {
    format!("{{{}}}", labels.join(", "))
}

fn set_ast_text(s: &SetAst) -> String {
    let mut parts: Vec<String> = s.fins.clone();
    parts.extend(s.chain.iter().map(|j| j.to_string()));
    if let Some(t) = s.tail {
        parts.push(format!("{t}.."));
    }
    format!("{{{}}}", parts.join(", "))
}

fn steps_text(steps: &[RawStep]) -> String {
    let parts: Vec<String> = steps
        .iter()
        .map(|s| match s {
            RawStep::At(l) => l.clone(),
            RawStep::Ramp { mul, add } => {
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

fn block_text(name: &str, block: &OmegaBlock, out: &mut String) {
    out.push_str(&format!("omega {name} {{\n"));
    if !block.fin_chains.is_empty() {
        out.push_str(&format!("  fin {}\n", chains_text(&block.fin_chains)));
    }
    for (label, from) in &block.above {
        out.push_str(&format!("  above {label} from {from}\n"));
    }
    for (label, spec) in &block.below {
        match spec {
            BelowSpec::All => out.push_str(&format!("  below {label} all\n")),
            BelowSpec::First(b) => out.push_str(&format!("  below {label} first {b}\n")),
        }
    }
    for t in &block.opens {
        match t {
            TemplateAst::Fixed(s) => out.push_str(&format!("  open fixed {}\n", set_ast_text(s))),
            TemplateAst::Tails { attach, from } => out.push_str(&format!(
                "  open tails attach {} from {from}\n",
                set_ast_text(attach)
            )),
            TemplateAst::Points { attach, from } => out.push_str(&format!(
                "  open points attach {} from {from}\n",
                set_ast_text(attach)
            )),
        }
    }
    if block.unordered {
        out.push_str("  unordered\n");
    }
    out.push_str("}\n");
}

fn command_text(c: &Command) -> String {
    format!("query {}", c.text())
}

/// Canonical text of a document. Reparsing the output yields the same
/// declarations, so printing is a normal form for spacefiles.
pub fn doc_to_text(doc: &SpaceDoc) -> String {
    let mut out = String::new();
    for item in &doc.items {
        match &item.decl {
            Decl::Poset { name, chains } => {
                out.push_str(&format!("poset {name} = {}\n", chains_text(chains)));
            }
            Decl::SpaceFromOrder { name, kind, poset } => {
                out.push_str(&format!("space {name} = {} of {poset}\n", kind_token(*kind)));
            }
            Decl::SpaceOpens { name, opens } => {
                let parts: Vec<String> = opens.iter().map(|o| label_set_text(o)).collect();
                out.push_str(&format!("space {name} = opens [{}]\n", parts.join(", ")));
            }
            Decl::SpaceCoreflect { name, source, op } => {
                out.push_str(&format!("space {name} = coreflect {source} {}\n", op.token()));
            }
            Decl::OmegaBuiltin { name, builtin } => {
                out.push_str(&format!("omega {name} = {}\n", builtin.token()));
            }
            Decl::OmegaCustom { name, block } => block_text(name, block, &mut out),
            Decl::Net { name, space, steps } => {
                out.push_str(&format!("net {name} on {space} = {}\n", steps_text(steps)));
            }
            Decl::Query(c) => {
                out.push_str(&command_text(c));
                out.push('\n');
            }
        }
    }
    out
}

/// One export block for the report: format chosen by the query or flag.
pub fn export_finite(name: &str, x: &FiniteTopology, format: ExportFormat) -> String {
    match format {
        ExportFormat::Dot => dot_topology(name, x),
        ExportFormat::Json => {
            let mut s = json_topology(x);
            s.push('\n');
            s
        }
    }
}

pub fn export_omega(
    name: &str,
    x: &OmegaTopology,
    format: ExportFormat,
) -> Result<String, ExportError> {
    match format {
        ExportFormat::Dot => dot_omega(name, x),
        ExportFormat::Json => {
            let mut s = json_omega(x.space());
            s.push('\n');
            Ok(s)
        }
    }
}
