//! Plain-text logic definitions.
//!
//! ```text
//! name: lukasiewicz:3
//! values: 0 1/2 1
//! designated: 1
//! order: 0 < 1/2 < 1
//! connective neg 1:
//!   1 1/2 0
//! connective imp 2:
//!   1   1   1
//!   1/2 1   1
//!   0   1/2 1
//! alias imp: -> →
//! ```
//!
//! A table of arity `u` has `n^(u-1)` rows of `n` entries (one row with one
//! entry for constants), row-major with the first argument most significant.
//! `order:` takes chains separated by `;`. `#` starts a comment.

use std::fmt;

use mvlogic::matrix::{Connective, Matrix, Order};
use mvlogic::{TruthValue, Val, ValueSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LogicFileError {
    pub line: Option<usize>,
    pub message: String,
}

impl fmt::Display for LogicFileError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "{} at line {l}", self.message),
            None => f.write_str(&self.message),
        }
    }
}

impl std::error::Error for LogicFileError {}

fn at(line: usize, message: impl Into<String>) -> LogicFileError {
    LogicFileError { line: Some(line), message: message.into() }
}

fn whole(message: impl Into<String>) -> LogicFileError {
    LogicFileError { line: None, message: message.into() }
}

struct Block {
    name: String,
    arity: usize,
    line: usize,
    rows: Vec<(usize, Vec<String>)>,
}

pub fn parse_logic_file(text: &str) -> Result<Matrix, LogicFileError> {
    let mut name: Option<String> = None;
    let mut values: Option<(usize, Vec<TruthValue>)> = None;
    let mut designated: Option<(usize, Vec<String>)> = None;
    let mut orders: Vec<(usize, String)> = Vec::new();
    let mut blocks: Vec<Block> = Vec::new();
    let mut aliases: Vec<(usize, String, Vec<String>)> = Vec::new();
    let mut in_block = false;

    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if raw.starts_with(' ') || raw.starts_with('\t') {
            match blocks.last_mut() {
                Some(b) if in_block => b.rows.push((line, content.split_whitespace().map(str::to_string).collect())),
                _ => return Err(at(line, "table row outside a connective block")),
            }
            continue;
        }
        in_block = false;
        let Some((key, rest)) = content.split_once(':') else {
            return Err(at(line, format!("expected `key: value`, found `{content}`")));
        };
        let rest = rest.trim();
        let words: Vec<&str> = key.split_whitespace().collect();
        match words.as_slice() {
            ["name"] => name = Some(rest.to_string()),
            ["values"] => {
                let mut vals: Vec<TruthValue> = Vec::new();
                for w in rest.split_whitespace() {
                    let v = TruthValue::parse_label(w);
                    if vals.contains(&v) {
                        return Err(at(line, format!("duplicate value `{w}`")));
                    }
                    vals.push(v);
                }
                values = Some((line, vals));
            }
            ["designated"] => designated = Some((line, rest.split_whitespace().map(str::to_string).collect())),
            ["order"] => orders.push((line, rest.to_string())),
            ["connective", cname, arity] => {
                let arity = arity.parse().map_err(|_| at(line, format!("bad arity `{arity}`")))?;
                if blocks.iter().any(|b| b.name == *cname) {
                    return Err(at(line, format!("connective `{cname}` defined twice")));
                }
                blocks.push(Block { name: cname.to_string(), arity, line, rows: Vec::new() });
                in_block = true;
            }
            ["alias", cname] => aliases.push((line, cname.to_string(), rest.split_whitespace().map(str::to_string).collect())),
            _ => return Err(at(line, format!("unknown key `{key}`"))),
        }
    }

    let (_, values) = values.ok_or_else(|| whole("missing section `values`"))?;
    let (dline, dlabels) = designated.ok_or_else(|| whole("missing section `designated`"))?;
    if blocks.is_empty() {
        return Err(whole("missing section `connective`"));
    }
    let n = values.len();
    let index = |line: usize, s: &str| -> Result<Val, LogicFileError> {
        let v = TruthValue::parse_label(s);
        values
            .iter()
            .position(|x| *x == v)
            .map(|i| Val(i as u8))
            .ok_or_else(|| at(line, format!("unknown value `{s}`")))
    };

    let mut dset = ValueSet::from_bits(0);
    for d in &dlabels {
        dset.insert(index(dline, d)?);
    }

    let mut conns = Vec::new();
    for b in &blocks {
        let rows_expected = if b.arity == 0 { 1 } else { n.pow(b.arity as u32 - 1) };
        let width = if b.arity == 0 { 1 } else { n };
        if b.rows.len() != rows_expected {
            let line = b.rows.get(rows_expected).map_or(b.line, |r| r.0);
            return Err(at(line, "table size mismatch"));
        }
        let mut table = Vec::with_capacity(rows_expected * width);
        for (line, row) in &b.rows {
            if row.len() != width {
                return Err(at(*line, "table size mismatch"));
            }
            for cell in row {
                table.push(index(*line, cell)?);
            }
        }
        let mut c = Connective::new(b.name.clone(), b.arity, table);
        for (line, cname, syms) in &aliases {
            if cname == &b.name {
                c.aliases.extend(syms.iter().cloned());
            } else if !blocks.iter().any(|x| &x.name == cname) {
                return Err(at(*line, format!("alias for unknown connective `{cname}`")));
            }
        }
        conns.push(c);
    }

    let order = if orders.is_empty() {
        None
    } else {
        let mut chains = Vec::new();
        for (line, spec) in &orders {
            for chain in spec.split(';').filter(|c| !c.trim().is_empty()) {
                let seq = chain.split('<').map(|s| index(*line, s.trim())).collect::<Result<Vec<_>, _>>()?;
                chains.push(seq);
            }
        }
        Some(Order::from_chains(&chains, n).map_err(|e| at(orders[0].0, e.to_string()))?)
    };

    Matrix::new(name.unwrap_or_else(|| "custom".into()), values, dset, conns, order).map_err(|e| whole(e.to_string()))
}

/// Serializes a matrix in the format read by [`parse_logic_file`].
pub fn write_logic_file(m: &Matrix) -> String {
    let labels: Vec<String> = m.values().iter().map(|v| v.to_string()).collect();
    let width = labels.iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let mut out = format!("name: {}\nvalues: {}\n", m.name(), labels.join(" "));
    let d: Vec<&str> = m.designated().iter().map(|v| labels[v.index()].as_str()).collect();
    out.push_str(&format!("designated: {}\n", d.join(" ")).replace(" \n", "\n"));
    if let Some(o) = m.order() {
        if o.is_total() {
            let mut seq: Vec<Val> = m.all_values().collect();
            seq.sort_by_key(|&a| m.all_values().filter(|&b| o.leq(b, a)).count());
            let chain: Vec<&str> = seq.iter().map(|v| labels[v.index()].as_str()).collect();
            out.push_str(&format!("order: {}\n", chain.join(" < ")));
        } else {
            let covers: Vec<String> =
                o.covers().iter().map(|(a, b)| format!("{} < {}", labels[a.index()], labels[b.index()])).collect();
            out.push_str(&format!("order: {}\n", covers.join(" ; ")));
        }
    }
    for (_, c) in m.connectives() {
        out.push_str(&format!("connective {} {}:\n", c.name, c.arity));
        let per_row = if c.arity == 0 { 1 } else { m.size() };
        for row in c.table.chunks(per_row) {
            let cells: Vec<String> = row.iter().map(|v| format!("{:<width$}", labels[v.index()])).collect();
            out.push_str(&format!("  {}\n", cells.join(" ").trim_end()));
        }
    }
    for (_, c) in m.connectives() {
        if !c.aliases.is_empty() {
            out.push_str(&format!("alias {}: {}\n", c.name, c.aliases.join(" ")));
        }
    }
    out
}
