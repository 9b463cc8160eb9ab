//! Line-oriented spacefile parser. Every input yields a document or a
//! located error; nothing panics on malformed text.

use std::collections::BTreeSet;

use ccc_core::conv::OpKind;
use ccc_core::topology::OrderTopologyKind;
use thiserror::Error;

use crate::doc::{
    BelowSpec, Builtin, Command, Decl, ExportFormat, Item, OmegaBlock, RawStep, SetAst, SpaceDoc,
    TemplateAst,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DocError {
    #[error("parse error at line {line}, column {column}: expected {expected}")]
    Parse { line: usize, column: usize, expected: String },
    #[error("line {line}: the name {name} is already declared")]
    Duplicate { line: usize, name: String },
    #[error("line {line}: unresolved name {name}")]
    Resolve { line: usize, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u64),
    LBrace,
    RBrace,
    LBracket,
    RBracket,
    Eq,
    Lt,
    Comma,
    Plus,
    DotDot,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Num(n) => format!("'{n}'"),
            Tok::LBrace => "'{'".into(),
            Tok::RBrace => "'}'".into(),
            Tok::LBracket => "'['".into(),
            Tok::RBracket => "']'".into(),
            Tok::Eq => "'='".into(),
            Tok::Lt => "'<'".into(),
            Tok::Comma => "','".into(),
            Tok::Plus => "'+'".into(),
            Tok::DotDot => "'..'".into(),
        }
    }
}

fn is_ident_char(c: char) -> bool {
    !c.is_whitespace() && !"{}[]=<,+#.".contains(c)
}

fn tokenize(line: usize, text: &str) -> Result<Vec<(usize, Tok)>, DocError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        let sym = match c {
            '{' => Some(Tok::LBrace),
            '}' => Some(Tok::RBrace),
            '[' => Some(Tok::LBracket),
            ']' => Some(Tok::RBracket),
            '=' => Some(Tok::Eq),
            '<' => Some(Tok::Lt),
            ',' => Some(Tok::Comma),
            '+' => Some(Tok::Plus),
            _ => None,
        };
        if let Some(t) = sym {
            out.push((col, t));
            i += 1;
            continue;
        }
        if c == '.' {
            if chars.get(i + 1) == Some(&'.') {
                out.push((col, Tok::DotDot));
                i += 2;
                continue;
            }
            return Err(DocError::Parse { line, column: col, expected: "'..'".into() });
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let text: String = chars[start..i].iter().collect();
            let n = text.parse::<u64>().map_err(|_| DocError::Parse {
                line,
                column: col,
                expected: "a number within range".into(),
            })?;
            out.push((col, Tok::Num(n)));
            continue;
        }
        if is_ident_char(c) {
            let start = i;
            while i < chars.len() && is_ident_char(chars[i]) {
                i += 1;
            }
            out.push((col, Tok::Ident(chars[start..i].iter().collect())));
            continue;
        }
        return Err(DocError::Parse { line, column: col, expected: "a token".into() });
    }
    Ok(out)
}

/// Cursor over one tokenized line.
struct Cur<'a> {
    line: usize,
    toks: &'a [(usize, Tok)],
    pos: usize,
}

impl<'a> Cur<'a> {
    fn new(line: usize, toks: &'a [(usize, Tok)]) -> Self {
        Cur { line, toks, pos: 0 }
    }

    fn err(&self, expected: &str) -> DocError {
        let column = self
            .toks
            .get(self.pos)
            .map(|t| t.0)
            .or_else(|| self.toks.last().map(|t| t.0 + 1))
            .unwrap_or(1);
        DocError::Parse { line: self.line, column, expected: expected.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.1)
    }

    fn next(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos).map(|t| &t.1);
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, want: Tok, expected: &str) -> Result<(), DocError> {
        match self.peek() {
            Some(t) if *t == want => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(expected)),
        }
    }

    fn ident(&mut self, expected: &str) -> Result<String, DocError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(expected)),
        }
    }

    fn num(&mut self, expected: &str) -> Result<u64, DocError> {
        match self.peek() {
            Some(Tok::Num(n)) => {
                let n = *n;
                self.pos += 1;
                Ok(n)
            }
            _ => Err(self.err(expected)),
        }
    }

    /// A point label: an identifier or a numeral used as a name.
    fn label(&mut self, expected: &str) -> Result<String, DocError> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            Some(Tok::Num(n)) => {
                let s = n.to_string();
                self.pos += 1;
                Ok(s)
            }
            _ => Err(self.err(expected)),
        }
    }

    fn keyword(&mut self, word: &str) -> Result<(), DocError> {
        match self.peek() {
            Some(Tok::Ident(s)) if s == word => {
                self.pos += 1;
                Ok(())
            }
            _ => Err(self.err(&format!("'{word}'"))),
        }
    }

    fn done(&self) -> bool {
        self.pos == self.toks.len()
    }

    fn finish(&self) -> Result<(), DocError> {
        if self.done() {
            Ok(())
        } else {
            Err(DocError::Parse {
                line: self.line,
                column: self.toks[self.pos].0,
                expected: format!("end of line, found {}", self.toks[self.pos].1.describe()),
            })
        }
    }
}

pub fn parse(text: &str) -> Result<SpaceDoc, DocError> {
    let mut items = Vec::new();
    let mut names: BTreeSet<String> = BTreeSet::new();
    let mut block: Option<(usize, String, OmegaBlock)> = None;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let toks = tokenize(line, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut cur = Cur::new(line, &toks);
        if let Some((start, ref name, ref mut body)) = block {
            if cur.peek() == Some(&Tok::RBrace) {
                cur.next();
                cur.finish()?;
                let body = std::mem::take(body);
                items.push(Item {
                    line: start,
                    decl: Decl::OmegaCustom { name: name.clone(), block: body },
                });
                block = None;
            } else {
                parse_block_line(&mut cur, body)?;
            }
            continue;
        }
        let head = cur.ident("a declaration keyword (poset, space, omega, net, query)")?;
        match head.as_str() {
            "poset" => {
                let name = declare(&mut cur, &mut names)?;
                cur.expect(Tok::Eq, "'='")?;
                let chains = parse_poset_literal(&mut cur)?;
                cur.finish()?;
                items.push(Item { line, decl: Decl::Poset { name, chains } });
            }
            "space" => {
                let name = declare(&mut cur, &mut names)?;
                cur.expect(Tok::Eq, "'='")?;
                let decl = parse_space_body(&mut cur, name)?;
                cur.finish()?;
                items.push(Item { line, decl });
            }
            "omega" => {
                let name = declare(&mut cur, &mut names)?;
                if cur.peek() == Some(&Tok::LBrace) {
                    cur.next();
                    cur.finish()?;
                    block = Some((line, name, OmegaBlock::default()));
                    continue;
                }
                cur.expect(Tok::Eq, "'=' or '{'")?;
                let word =
                    cur.ident("a builtin space (beta, gamma, delta, scott_omega_plus_one, omega, example_e)")?;
                let builtin = Builtin::from_token(&word).ok_or_else(|| DocError::Parse {
                    line,
                    column: cur.toks[cur.pos - 1].0,
                    expected: "a builtin space name".into(),
                })?;
                cur.finish()?;
                items.push(Item { line, decl: Decl::OmegaBuiltin { name, builtin } });
            }
            "net" => {
                let name = declare(&mut cur, &mut names)?;
                cur.keyword("on")?;
                let space = cur.ident("a space name")?;
                cur.expect(Tok::Eq, "'='")?;
                let steps = parse_net_literal(&mut cur)?;
                cur.finish()?;
                items.push(Item { line, decl: Decl::Net { name, space, steps } });
            }
            "query" => {
                let command = parse_command(&mut cur)?;
                cur.finish()?;
                items.push(Item { line, decl: Decl::Query(command) });
            }
            _ => {
                return Err(DocError::Parse {
                    line,
                    column: toks[0].0,
                    expected: "a declaration keyword (poset, space, omega, net, query)".into(),
                })
            }
        }
    }
    if let Some((start, name, _)) = block {
        return Err(DocError::Parse {
            line: start,
            column: 1,
            expected: format!("'}}' closing the omega block for {name}"),
        });
    }
    Ok(SpaceDoc { items })
}

fn declare(cur: &mut Cur, names: &mut BTreeSet<String>) -> Result<String, DocError> {
    let name = cur.ident("a fresh name")?;
    if !names.insert(name.clone()) {
        return Err(DocError::Duplicate { line: cur.line, name });
    }
    Ok(name)
}

/// `{a < b < c, d}`: comma-separated chains of related labels.
fn parse_poset_literal(cur: &mut Cur) -> Result<Vec<Vec<String>>, DocError> {
    cur.expect(Tok::LBrace, "'{'")?;
    let mut chains = Vec::new();
    if cur.peek() == Some(&Tok::RBrace) {
        cur.next();
        return Ok(chains);
    }
    loop {
        let mut chain = vec![cur.label("a point label")?];
        while cur.peek() == Some(&Tok::Lt) {
            cur.next();
            chain.push(cur.label("a point label")?);
        }
        chains.push(chain);
        match cur.peek() {
            Some(Tok::Comma) => {
                cur.next();
            }
            Some(Tok::RBrace) => {
                cur.next();
                break;
            }
            _ => return Err(cur.err("',' or '}'")),
        }
    }
    Ok(chains)
}

fn parse_space_body(cur: &mut Cur, name: String) -> Result<Decl, DocError> {
    let word = cur.ident("'opens', 'coreflect', or an order topology kind")?;
    match word.as_str() {
        "alexandroff" | "upper" | "scott" | "weakscott" => {
            let kind = match word.as_str() {
                "alexandroff" => OrderTopologyKind::Alexandroff,
                "upper" => OrderTopologyKind::Upper,
                "scott" => OrderTopologyKind::Scott,
                _ => OrderTopologyKind::WeakScott,
            };
            cur.keyword("of")?;
            let poset = cur.ident("a poset name")?;
            Ok(Decl::SpaceFromOrder { name, kind, poset })
        }
        "opens" => {
            cur.expect(Tok::LBracket, "'['")?;
            let mut opens = Vec::new();
            if cur.peek() == Some(&Tok::RBracket) {
                cur.next();
                return Ok(Decl::SpaceOpens { name, opens });
            }
            loop {
                opens.push(parse_label_set(cur)?);
                match cur.peek() {
                    Some(Tok::Comma) => {
                        cur.next();
                    }
                    Some(Tok::RBracket) => {
                        cur.next();
                        break;
                    }
                    _ => return Err(cur.err("',' or ']'")),
                }
            }
            Ok(Decl::SpaceOpens { name, opens })
        }
        "coreflect" => {
            let source = cur.ident("a space name")?;
            let op = parse_op(cur)?;
            Ok(Decl::SpaceCoreflect { name, source, op })
        }
        _ => {
            cur.pos = cur.pos.saturating_sub(1);
            Err(cur.err("'opens', 'coreflect', 'alexandroff', 'upper', 'scott', or 'weakscott'"))
        }
    }
}

/// `{a, b}`: a plain set of labels.
fn parse_label_set(cur: &mut Cur) -> Result<Vec<String>, DocError> {
    cur.expect(Tok::LBrace, "'{'")?;
    let mut labels = Vec::new();
    if cur.peek() == Some(&Tok::RBrace) {
        cur.next();
        return Ok(labels);
    }
    loop {
        labels.push(cur.label("a point label")?);
        match cur.peek() {
            Some(Tok::Comma) => {
                cur.next();
            }
            Some(Tok::RBrace) => {
                cur.next();
                break;
            }
            _ => return Err(cur.err("',' or '}'")),
        }
    }
    Ok(labels)
}

/// `{bot, 3, 5..}`: fin labels, chain indices, and an optional tail.
fn parse_schema_set(cur: &mut Cur) -> Result<SetAst, DocError> {
    cur.expect(Tok::LBrace, "'{'")?;
    let mut set = SetAst::default();
    if cur.peek() == Some(&Tok::RBrace) {
        cur.next();
        return Ok(set);
    }
    loop {
        match cur.peek() {
            Some(Tok::Ident(s)) => {
                set.fins.push(s.clone());
                cur.next();
            }
            Some(Tok::Num(n)) => {
                let n = *n;
                cur.next();
                if cur.peek() == Some(&Tok::DotDot) {
                    if set.tail.is_some() {
                        return Err(cur.err("at most one tail entry"));
                    }
                    cur.next();
                    set.tail = Some(n);
                } else {
                    set.chain.push(n);
                }
            }
            _ => return Err(cur.err("a point label, chain index, or tail 'N..'")),
        }
        match cur.peek() {
            Some(Tok::Comma) => {
                cur.next();
            }
            Some(Tok::RBrace) => {
                cur.next();
                break;
            }
            _ => return Err(cur.err("',' or '}'")),
        }
    }
    Ok(set)
}

/// `[a, 2n+1, 4]`: net steps.
fn parse_net_literal(cur: &mut Cur) -> Result<Vec<RawStep>, DocError> {
    cur.expect(Tok::LBracket, "'['")?;
    let mut steps = Vec::new();
    loop {
        let step = match cur.peek() {
            Some(Tok::Ident(s)) if s == "n" => {
                cur.next();
                parse_ramp_rest(cur, 1)?
            }
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                cur.next();
                RawStep::At(s)
            }
            Some(Tok::Num(k)) => {
                let k = *k;
                if matches!(cur.toks.get(cur.pos + 1).map(|t| &t.1), Some(Tok::Ident(s)) if s == "n")
                {
                    if k == 0 {
                        return Err(cur.err("a nonzero ramp multiplier"));
                    }
                    cur.next();
                    cur.next();
                    parse_ramp_rest(cur, k)?
                } else {
                    cur.next();
                    RawStep::At(k.to_string())
                }
            }
            _ => return Err(cur.err("a net step (point label or ramp like '2n+1')")),
        };
        steps.push(step);
        match cur.peek() {
            Some(Tok::Comma) => {
                cur.next();
            }
            Some(Tok::RBracket) => {
                cur.next();
                break;
            }
            _ => return Err(cur.err("',' or ']'")),
        }
    }
    if steps.is_empty() {
        return Err(cur.err("at least one net step"));
    }
    Ok(steps)
}

fn parse_ramp_rest(cur: &mut Cur, mul: u64) -> Result<RawStep, DocError> {
    if cur.peek() == Some(&Tok::Plus) {
        cur.next();
        let add = cur.num("a ramp offset")?;
        Ok(RawStep::Ramp { mul, add })
    } else {
        Ok(RawStep::Ramp { mul, add: 0 })
    }
}

fn parse_op(cur: &mut Cur) -> Result<OpKind, DocError> {
    let word = cur.ident("an operator token (D, D', I, I', N, N')")?;
    OpKind::from_token(&word).ok_or_else(|| {
        let column = cur.toks[cur.pos - 1].0;
        DocError::Parse {
            line: cur.line,
            column,
            expected: "an operator token (D, D', I, I', N, N')".into(),
        }
    })
}

fn parse_block_line(cur: &mut Cur, body: &mut OmegaBlock) -> Result<(), DocError> {
    let head = cur.ident("'fin', 'above', 'below', 'open', 'unordered', or '}'")?;
    match head.as_str() {
        "fin" => {
            body.fin_chains = parse_poset_literal(cur)?;
        }
        "above" => {
            let label = cur.label("a finite-block label")?;
            cur.keyword("from")?;
            let from = cur.num("a chain index")?;
            body.above.push((label, from));
        }
        "below" => {
            let label = cur.label("a finite-block label")?;
            let word = cur.ident("'all' or 'first'")?;
            let spec = match word.as_str() {
                "all" => BelowSpec::All,
                "first" => BelowSpec::First(cur.num("a chain-point count")?),
                _ => {
                    cur.pos = cur.pos.saturating_sub(1);
                    return Err(cur.err("'all' or 'first'"));
                }
            };
            body.below.push((label, spec));
        }
        "open" => {
            let word = cur.ident("'fixed', 'tails', or 'points'")?;
            let template = match word.as_str() {
                "fixed" => TemplateAst::Fixed(parse_schema_set(cur)?),
                "tails" | "points" => {
                    cur.keyword("attach")?;
                    let attach = parse_schema_set(cur)?;
                    cur.keyword("from")?;
                    let from = cur.num("a chain index")?;
                    if word == "tails" {
                        TemplateAst::Tails { attach, from }
                    } else {
                        TemplateAst::Points { attach, from }
                    }
                }
                _ => {
                    cur.pos = cur.pos.saturating_sub(1);
                    return Err(cur.err("'fixed', 'tails', or 'points'"));
                }
            };
            body.opens.push(template);
        }
        "unordered" => {
            body.unordered = true;
        }
        _ => {
            cur.pos = cur.pos.saturating_sub(1);
            return Err(cur.err("'fin', 'above', 'below', 'open', 'unordered', or '}'"));
        }
    }
    cur.finish()
}

fn parse_command(cur: &mut Cur) -> Result<Command, DocError> {
    let word = cur.ident(
        "a command (validate, coreflect, compare, product, tensor, exp, laws, cspace, sclass, suite, export)",
    )?;
    Ok(match word.as_str() {
        "validate" => Command::Validate { name: cur.ident("a declared name")? },
        "coreflect" => {
            Command::Coreflect { space: cur.ident("a space name")?, op: parse_op(cur)? }
        }
        "compare" => Command::Compare {
            left: cur.ident("a space name")?,
            right: cur.ident("a space name")?,
        },
        "product" => Command::Product {
            left: cur.ident("a space name")?,
            right: cur.ident("a space name")?,
        },
        "tensor" => Command::Tensor {
            left: cur.ident("a space name")?,
            right: cur.ident("a space name")?,
            op: parse_op(cur)?,
        },
        "exp" => Command::Exp {
            left: cur.ident("a space name")?,
            right: cur.ident("a space name")?,
            op: parse_op(cur)?,
        },
        "laws" => Command::Laws {
            x: cur.ident("a space name")?,
            y: cur.ident("a space name")?,
            z: cur.ident("a space name")?,
            op: parse_op(cur)?,
        },
        "cspace" => Command::Cspace { space: cur.ident("a space name")? },
        "sclass" => Command::Sclass {
            space: cur.ident("a space name")?,
            net: cur.ident("a net name")?,
            point: cur.label("a point name")?,
        },
        "suite" => Command::Suite,
        "export" => {
            let name = cur.ident("a declared name")?;
            let fmt = cur.ident("'dot' or 'json'")?;
            let format = match fmt.as_str() {
                "dot" => ExportFormat::Dot,
                "json" => ExportFormat::Json,
                _ => {
                    cur.pos = cur.pos.saturating_sub(1);
                    return Err(cur.err("'dot' or 'json'"));
                }
            };
            Command::Export { name, format }
        }
        _ => {
            cur.pos = cur.pos.saturating_sub(1);
            return Err(cur.err(
                "a command (validate, coreflect, compare, product, tensor, exp, laws, cspace, sclass, suite, export)",
            ));
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_the_basic_fixture() {
        let doc = parse(
            "# fixture\nposet C2 = {0 < 1}\nspace X = alexandroff of C2\nquery coreflect X D\n",
        )
        .unwrap();
        assert_eq!(doc.items.len(), 3);
        assert_eq!(doc.items[0].line, 2);
        assert!(matches!(
            &doc.items[0].decl,
            Decl::Poset { name, chains } if name == "C2" && chains == &vec![vec!["0".to_string(), "1".to_string()]]
        ));
        assert!(matches!(
            &doc.items[2].decl,
            Decl::Query(Command::Coreflect { space, op }) if space == "X" && *op == OpKind::Directed
        ));
    }

    #[test]
    fn parses_builtin_omega_and_net_lines() {
        let doc = parse("omega B = beta\nnet M on B = [inf, 2n+1]\n").unwrap();
        assert!(matches!(
            &doc.items[0].decl,
            Decl::OmegaBuiltin { builtin: Builtin::Beta, .. }
        ));
        match &doc.items[1].decl {
            Decl::Net { steps, .. } => {
                assert_eq!(
                    steps,
                    &vec![RawStep::At("inf".into()), RawStep::Ramp { mul: 2, add: 1 }]
                );
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn parses_an_omega_block() {
        let text = "omega E2 {\n  fin {bot < a < inf}\n  above bot from 0\n  open fixed {inf}\n  open tails attach {inf, a} from 0\n  unordered\n}\n";
        let doc = parse(text).unwrap();
        match &doc.items[0].decl {
            Decl::OmegaCustom { name, block } => {
                assert_eq!(name, "E2");
                assert_eq!(block.fin_chains.len(), 1);
                assert_eq!(block.above, vec![("bot".to_string(), 0)]);
                assert_eq!(block.opens.len(), 2);
                assert!(block.unordered);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn locates_errors_precisely() {
        let err = parse("poset P = {a <}\n").unwrap_err();
        assert_eq!(
            err,
            DocError::Parse { line: 1, column: 15, expected: "a point label".into() }
        );
        let err = parse("space X = opens [{a} {b}]\n").unwrap_err();
        assert!(matches!(err, DocError::Parse { line: 1, column: 22, .. }));
        let err = parse("orbit X = {}\n").unwrap_err();
        assert!(matches!(err, DocError::Parse { line: 1, column: 1, .. }));
    }

    #[test]
    fn rejects_duplicate_names_and_dangling_blocks() {
        let err = parse("poset P = {a}\nposet P = {b}\n").unwrap_err();
        assert_eq!(err, DocError::Duplicate { line: 2, name: "P".into() });
        let err = parse("omega X {\n  fin {a}\n").unwrap_err();
        assert!(matches!(err, DocError::Parse { line: 1, .. }));
    }
}
