//! Plain-text degree sequences.
//!
//! ```text
//! k m n
//! 0 3 1
//! 1 2 2
//! ...
//! ```
//!
//! The header gives clause width, clause count and variable count; each
//! following line is `index d_pos d_neg`. Lines starting with `#` are ignored.

use std::fmt::Write as _;

use crate::{CoreError, Result, SignedDegreeSequence};

pub fn emit_degree_sequence(d: &SignedDegreeSequence) -> String {
    let mut out = String::with_capacity(d.n() * 12 + 16);
    let _ = writeln!(out, "{} {} {}", d.k(), d.m(), d.n());
    for (i, &(p, q)) in d.pairs().iter().enumerate() {
        let _ = writeln!(out, "{i} {p} {q}");
    }
    out
}

pub fn parse_degree_sequence(text: &str) -> Result<SignedDegreeSequence> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let (hline, header) = lines
        .next()
        .ok_or_else(|| CoreError::parse(0, "missing 'k m n' header"))?;
    let h = parse_fields::<usize>(hline, header, 3)?;
    let (k, m, n) = (h[0], h[1], h[2]);
    let mut pairs = vec![None; n];
    for (line_no, line) in lines {
        let f = parse_fields::<u64>(line_no, line, 3)?;
        let idx = f[0] as usize;
        let slot = pairs
            .get_mut(idx)
            .ok_or_else(|| CoreError::parse(line_no, format!("index {idx} out of range")))?;
        if slot.replace((f[1], f[2])).is_some() {
            return Err(CoreError::parse(line_no, format!("duplicate index {idx}")));
        }
    }
    let pairs = pairs
        .into_iter()
        .enumerate()
        .map(|(i, p)| p.ok_or_else(|| CoreError::parse(0, format!("missing variable {i}"))))
        .collect::<Result<Vec<_>>>()?;
    SignedDegreeSequence::new(k, m, pairs)
}

fn parse_fields<T: std::str::FromStr>(line_no: usize, line: &str, want: usize) -> Result<Vec<T>> {
    let fields: Vec<T> = line
        .split_whitespace()
        .map(|s| s.parse::<T>())
        .collect::<std::result::Result<_, _>>()
        .map_err(|_| CoreError::parse(line_no, "expected non-negative integers"))?;
    if fields.len() != want {
        return Err(CoreError::parse(
            line_no,
            format!("expected {want} fields, found {}", fields.len()),
        ));
    }
    Ok(fields)
}
