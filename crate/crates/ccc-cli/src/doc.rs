//! Document model for spacefiles: declarations and queries with the source
//! lines they came from.

use ccc_core::conv::OpKind;
use ccc_core::topology::OrderTopologyKind;

#[derive(Debug, Clone, PartialEq)]
pub struct SpaceDoc {
    pub items: Vec<Item>,
}

impl SpaceDoc {
    /// Declarations without their source positions, for semantic equality.
    pub fn decls(&self) -> Vec<&Decl> {
        self.items.iter().map(|i| &i.decl).collect()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Item {
    pub line: usize,
    pub decl: Decl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Decl {
    /// `poset P = {a < b < c, d}`
    Poset { name: String, chains: Vec<Vec<String>> },
    /// `space X = alexandroff of P` (also `upper`, `scott`, `weakscott`)
    SpaceFromOrder { name: String, kind: OrderTopologyKind, poset: String },
    /// `space X = opens [{}, {b}, {a, b}]`
    SpaceOpens { name: String, opens: Vec<Vec<String>> },
    /// `space X = coreflect Y D'`, usable on finite and omega sources
    SpaceCoreflect { name: String, source: String, op: OpKind },
    /// `omega B = beta`
    OmegaBuiltin { name: String, builtin: Builtin },
    /// `omega X { ... }` block
    OmegaCustom { name: String, block: OmegaBlock },
    /// `net M on E = [a, 2n]`
    Net { name: String, space: String, steps: Vec<RawStep> },
    Query(Command),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Beta,
    Gamma,
    Delta,
    ScottOmegaPlusOne,
    Omega,
    ExampleE,
}

impl Builtin {
    pub fn token(self) -> &'static str {
        match self {
            Builtin::Beta => "beta",
            Builtin::Gamma => "gamma",
            Builtin::Delta => "delta",
            Builtin::ScottOmegaPlusOne => "scott_omega_plus_one",
            Builtin::Omega => "omega",
            Builtin::ExampleE => "example_e",
        }
    }

    pub fn from_token(t: &str) -> Option<Self> {
        Some(match t {
            "beta" => Builtin::Beta,
            "gamma" => Builtin::Gamma,
            "delta" => Builtin::Delta,
            "scott_omega_plus_one" => Builtin::ScottOmegaPlusOne,
            "omega" => Builtin::Omega,
            "example_e" => Builtin::ExampleE,
            _ => return None,
        })
    }
}

/// Body of a custom omega declaration.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct OmegaBlock {
    /// `fin {bot < a, c}`: the finite block with its order.
    pub fin_chains: Vec<Vec<String>>,
    /// `above bot from 0`: the chain sits above the point from the index on.
    pub above: Vec<(String, u64)>,
    /// `below inf all` or `below inf first 3`: chain points under the point.
    pub below: Vec<(String, BelowSpec)>,
    /// `open fixed {...}`, `open tails attach {...} from N`,
    /// `open points attach {...} from N`.
    pub opens: Vec<TemplateAst>,
    /// `unordered`: skip the declared-order compatibility check.
    pub unordered: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BelowSpec {
    All,
    /// The first `k` chain points, indices `0..k`.
    First(u64),
}

#[derive(Debug, Clone, PartialEq)]
pub enum TemplateAst {
    Fixed(SetAst),
    Tails { attach: SetAst, from: u64 },
    Points { attach: SetAst, from: u64 },
}

/// A schematic set literal: fin labels, chain indices, optional tail `N..`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct SetAst {
    pub fins: Vec<String>,
    pub chain: Vec<u64>,
    pub tail: Option<u64>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum RawStep {
    /// A constant residue at a named point; numerals name chain points.
    At(String),
    /// `n`, `2n`, `2n+1`: a ride up the chain.
    Ramp { mul: u64, add: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Command {
    Validate { name: String },
    Coreflect { space: String, op: OpKind },
    Compare { left: String, right: String },
    Product { left: String, right: String },
    Tensor { left: String, right: String, op: OpKind },
    Exp { left: String, right: String, op: OpKind },
    Laws { x: String, y: String, z: String, op: OpKind },
    Cspace { space: String },
    Sclass { space: String, net: String, point: String },
    Suite,
    Export { name: String, format: ExportFormat },
}

impl Command {
    /// Source form without the leading `query` keyword.
    pub fn text(&self) -> String {
        match self {
            Command::Validate { name } => format!("validate {name}"),
            Command::Coreflect { space, op } => format!("coreflect {space} {}", op.token()),
            Command::Compare { left, right } => format!("compare {left} {right}"),
            Command::Product { left, right } => format!("product {left} {right}"),
            Command::Tensor { left, right, op } => {
                format!("tensor {left} {right} {}", op.token())
            }
            Command::Exp { left, right, op } => format!("exp {left} {right} {}", op.token()),
            Command::Laws { x, y, z, op } => format!("laws {x} {y} {z} {}", op.token()),
            Command::Cspace { space } => format!("cspace {space}"),
            Command::Sclass { space, net, point } => format!("sclass {space} {net} {point}"),
            Command::Suite => "suite".to_string(),
            Command::Export { name, format } => format!("export {name} {}", format.token()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Json,
}

impl ExportFormat {
    pub fn token(self) -> &'static str {
        match self {
            ExportFormat::Dot => "dot",
            ExportFormat::Json => "json",
        }
    }
}
