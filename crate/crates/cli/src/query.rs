//! Query syntax: `B1, B2 |- A` for consequence, a bare formula for validity.

use mvlogic::{Formula, Matrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Query {
    pub premises: Vec<Formula>,
    pub goal: Formula,
}

impl Query {
    pub fn show(&self, m: &Matrix) -> String {
        let prem: Vec<String> = self.premises.iter().map(|p| m.render(p)).collect();
        if prem.is_empty() {
            m.render(&self.goal)
        } else {
            format!("{} |- {}", prem.join(", "), m.render(&self.goal))
        }
    }
}

/// Splits at `sep` outside parentheses.
pub fn split_top<'a>(s: &'a str, sep: &str) -> Vec<&'a str> {
    let mut parts = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    let mut i = 0;
    while i < s.len() {
        let rest = &s[i..];
        let c = rest.chars().next().unwrap();
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ if depth == 0 && rest.starts_with(sep) => {
                parts.push(&s[start..i]);
                i += sep.len();
                start = i;
                continue;
            }
            _ => {}
        }
        i += c.len_utf8();
    }
    parts.push(&s[start..]);
    parts
}

pub fn parse_query(m: &Matrix, text: &str) -> Result<Query, String> {
    let sides = split_top(text, "|-");
    let (prem_text, goal_text) = match sides.as_slice() {
        [g] => ("", *g),
        [p, g] => (*p, *g),
        _ => return Err("a query has at most one `|-`".into()),
    };
    let parse = |s: &str| m.parse(s.trim()).map_err(|e| format!("`{}`: {e}", s.trim()));
    let mut premises = Vec::new();
    if !prem_text.trim().is_empty() {
        for part in split_top(prem_text, ",") {
            premises.push(parse(part)?);
        }
    }
    Ok(Query { premises, goal: parse(goal_text)? })
}
