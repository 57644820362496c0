//! DIMACS CNF reading and writing.
//!
//! Writing emits a `c width k` comment before the header so that formulas
//! without clauses keep their width across a round trip. Reading honours that
//! comment when present and otherwise infers `k` from the first clause.

use std::fmt::Write as _;

use crate::{CoreError, Formula, Literal, Result};

/// Serialises a formula, preserving clause and literal order.
pub fn emit_dimacs(formula: &Formula) -> String {
    emit_dimacs_with_comments(formula, &[])
}

/// Like [`emit_dimacs`], with extra `c` comment lines after the width line.
pub fn emit_dimacs_with_comments(formula: &Formula, comments: &[String]) -> String {
    let mut out = String::with_capacity(formula.km() * 4 + 64);
    let _ = writeln!(out, "c width {}", formula.k());
    for c in comments {
        let _ = writeln!(out, "c {c}");
    }
    let _ = writeln!(out, "p cnf {} {}", formula.n(), formula.m());
    for clause in formula.clauses() {
        for l in clause {
            let _ = write!(out, "{} ", l.to_dimacs());
        }
        out.push_str("0\n");
    }
    out
}

/// Parses a DIMACS CNF document into a fixed-width formula.
///
/// Clauses may span lines. Every clause must have the same width; clauses of
/// different widths are rejected rather than padded.
pub fn parse_dimacs(text: &str) -> Result<Formula> {
    let mut header: Option<(usize, usize)> = None;
    let mut width: Option<usize> = None;
    let mut clauses: Vec<Vec<Literal>> = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line == "%" {
            continue;
        }
        if let Some(rest) = line.strip_prefix('c') {
            let mut it = rest.split_whitespace();
            if it.next() == Some("width") {
                let k = it
                    .next()
                    .and_then(|s| s.parse::<usize>().ok())
                    .ok_or_else(|| CoreError::parse(line_no, "malformed width comment"))?;
                width = Some(k);
            }
            continue;
        }
        if line.starts_with('p') {
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 4 || parts[1] != "cnf" {
                return Err(CoreError::parse(line_no, "expected 'p cnf <n> <m>'"));
            }
            let n = parts[2]
                .parse()
                .map_err(|_| CoreError::parse(line_no, "bad variable count"))?;
            let m = parts[3]
                .parse()
                .map_err(|_| CoreError::parse(line_no, "bad clause count"))?;
            if header.replace((n, m)).is_some() {
                return Err(CoreError::parse(line_no, "duplicate header"));
            }
            continue;
        }
        let (n, _) = header.ok_or_else(|| CoreError::parse(line_no, "clause before header"))?;
        for tok in line.split_whitespace() {
            let x: i64 = tok
                .parse()
                .map_err(|_| CoreError::parse(line_no, format!("bad literal '{tok}'")))?;
            match Literal::from_dimacs(x) {
                None => clauses.push(std::mem::take(&mut current)),
                Some(l) if l.var() >= n => {
                    return Err(CoreError::parse(
                        line_no,
                        format!("literal {x} exceeds declared {n} variables"),
                    ))
                }
                Some(l) => current.push(l),
            }
        }
    }
    let (n, m) = header.ok_or_else(|| CoreError::parse(0, "missing 'p cnf' header"))?;
    if !current.is_empty() {
        return Err(CoreError::parse(0, "last clause is not terminated by 0"));
    }
    if clauses.len() != m {
        return Err(CoreError::parse(
            0,
            format!("header declares {m} clauses, found {}", clauses.len()),
        ));
    }
    let k = match (width, clauses.first()) {
        (Some(k), _) => k,
        (None, Some(c)) => c.len(),
        (None, None) => {
            return Err(CoreError::parse(
                0,
                "cannot infer clause width of an empty formula without a width comment",
            ))
        }
    };
    Formula::new(n, k, &clauses)
}
