//! Text format for finite MV-algebras.
//!
//! ```text
//! name: I3
//! values: 0 1/2 1
//! zero: 0
//! oplus:
//!   0   1/2 1
//!   1/2 1   1
//!   1   1   1
//! neg:
//!   1 1/2 0
//! ```
//!
//! Values are whitespace separated. `zero` defaults to the first value and an
//! optional `otimes:` block overrides the derived `⊗`. `#` starts a comment.

use super::axioms::MvAlgebra;
use super::finite::FiniteMv;
use super::MvError;

fn err(line: usize, message: impl Into<String>) -> MvError {
    MvError::Parse { line, message: message.into() }
}

struct Block {
    line: usize,
    rows: Vec<(usize, Vec<String>)>,
}

pub fn parse_mv_file(text: &str) -> Result<FiniteMv, MvError> {
    let mut name = String::from("algebra");
    let mut values: Option<(usize, Vec<String>)> = None;
    let mut zero: Option<(usize, String)> = None;
    let mut blocks: Vec<(String, Block)> = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let indented = raw.starts_with(' ') || raw.starts_with('\t');
        if indented {
            let Some((_, block)) = blocks.last_mut() else { return Err(err(line, "table row outside a table")) };
            block.rows.push((line, content.split_whitespace().map(str::to_string).collect()));
            continue;
        }
        let Some((key, rest)) = content.split_once(':') else { return Err(err(line, format!("expected `key: value`, found `{content}`"))) };
        let rest = rest.trim();
        match key.trim() {
            "name" => name = rest.to_string(),
            "values" => values = Some((line, rest.split_whitespace().map(str::to_string).collect())),
            "zero" => zero = Some((line, rest.to_string())),
            t @ ("oplus" | "neg" | "otimes") => {
                if blocks.iter().any(|(b, _)| b == t) {
                    return Err(err(line, format!("`{t}` given twice")));
                }
                let mut block = Block { line, rows: Vec::new() };
                if !rest.is_empty() {
                    block.rows.push((line, rest.split_whitespace().map(str::to_string).collect()));
                }
                blocks.push((t.to_string(), block));
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let (vline, labels) = values.ok_or_else(|| err(0, "missing `values:` line"))?;
    for (i, l) in labels.iter().enumerate() {
        if labels[..i].contains(l) {
            return Err(err(vline, "duplicate value"));
        }
    }
    let n = labels.len();
    let index = |line: usize, s: &str| labels.iter().position(|l| l == s).ok_or_else(|| err(line, format!("unknown value `{s}`")));
    let read = |key: &str, rows: usize| -> Result<Option<Vec<usize>>, MvError> {
        let Some((_, block)) = blocks.iter().find(|(b, _)| b == key) else { return Ok(None) };
        if block.rows.len() != rows {
            let line = block.rows.get(rows).map_or(block.line, |r| r.0);
            return Err(err(line, "table size mismatch"));
        }
        let mut out = Vec::with_capacity(rows * n);
        for (line, row) in &block.rows {
            if row.len() != n {
                return Err(err(*line, "table size mismatch"));
            }
            for cell in row {
                out.push(index(*line, cell)?);
            }
        }
        Ok(Some(out))
    };
    let oplus = read("oplus", n)?.ok_or_else(|| err(0, "missing `oplus:` table"))?;
    let neg = read("neg", 1)?.ok_or_else(|| err(0, "missing `neg:` table"))?;
    let otimes = read("otimes", n)?;
    let zero = match zero {
        Some((line, z)) => index(line, &z)?,
        None => 0,
    };
    FiniteMv::from_tables(name, labels, oplus, neg, zero, otimes)
}

/// Writes the format read by [`parse_mv_file`].
pub fn write_mv_file(alg: &FiniteMv) -> String {
    let n = alg.size();
    let width = alg.labels().iter().map(|l| l.chars().count()).max().unwrap_or(1);
    let row = |cells: Vec<usize>| {
        let padded: Vec<String> = cells.iter().map(|&c| format!("{:<width$}", alg.label(c))).collect();
        format!("  {}\n", padded.join(" ").trim_end())
    };
    let mut out = format!("name: {}\nvalues: {}\n", alg.name(), alg.labels().join(" "));
    out.push_str(&format!("zero: {}\n", alg.label(alg.zero())));
    out.push_str("oplus:\n");
    for a in 0..n {
        out.push_str(&row((0..n).map(|b| alg.oplus(a, b)).collect()));
    }
    out.push_str("neg:\n");
    out.push_str(&row((0..n).map(|a| alg.neg(a)).collect()));
    if let Some(t) = alg.otimes_if_explicit() {
        out.push_str("otimes:\n");
        for a in 0..n {
            out.push_str(&row(t[a * n..(a + 1) * n].to_vec()));
        }
    }
    out
}
