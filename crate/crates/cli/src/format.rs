//! Text formats shared by every command.
//!
//! Hypergraph: a header line `k n`, then one edge per line as `k` strictly
//! ascending vertex ids. Blank lines and everything after `#` are ignored.
//! Surfaces use the same grammar with `k = 3`. Blow-ups add a `sizes` line
//! between the header `k l` and the base edges.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::Path;

use tightspan_core::{BlowUp, Hypergraph, Surface2};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("missing header line `k n`")]
    MissingHeader,
    #[error("{0}")]
    Invalid(#[from] tightspan_core::Error),
}

/// Refuse blow-up files that would expand beyond this many edges.
pub const MAX_BLOWUP_EDGES: u128 = 1 << 26;

fn syntax(line: usize, message: impl Into<String>) -> FormatError {
    FormatError::Syntax { line, message: message.into() }
}

/// Non-empty lines with comments stripped, numbered from 1.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().filter_map(|(i, raw)| {
        let line = raw.split('#').next().unwrap_or("").trim();
        (!line.is_empty()).then_some((i + 1, line))
    })
}

fn numbers(line_no: usize, line: &str) -> Result<Vec<u64>, FormatError> {
    line.split_whitespace()
        .map(|tok| tok.parse::<u64>().map_err(|_| syntax(line_no, format!("expected a non-negative integer, found {tok:?}"))))
        .collect()
}

fn header(line_no: usize, line: &str) -> Result<(usize, usize), FormatError> {
    match numbers(line_no, line)?[..] {
        [k, n] => Ok((k as usize, n as usize)),
        _ => Err(syntax(line_no, "header must be `k n`")),
    }
}

fn parse_edges<'a>(
    k: usize,
    n: usize,
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<u32>, FormatError> {
    if k == 0 {
        return Err(syntax(1, "uniformity must be at least 1"));
    }
    if n > u32::MAX as usize {
        return Err(syntax(1, format!("vertex count {n} too large")));
    }
    let mut flat = Vec::new();
    let mut seen = HashSet::new();
    for (line_no, line) in lines {
        let edge = numbers(line_no, line)?;
        if edge.len() != k {
            return Err(syntax(line_no, format!("expected {k} vertices, found {}", edge.len())));
        }
        if let Some(&v) = edge.iter().find(|&&v| v >= n as u64) {
            return Err(syntax(line_no, format!("vertex {v} outside 0..{n}")));
        }
        if !edge.windows(2).all(|w| w[0] < w[1]) {
            return Err(syntax(line_no, "vertices must be strictly ascending"));
        }
        let edge: Vec<u32> = edge.into_iter().map(|v| v as u32).collect();
        if !seen.insert(edge.clone()) {
            return Err(syntax(line_no, "repeated edge"));
        }
        flat.extend(edge);
    }
    Ok(flat)
}

pub fn parse_hypergraph(text: &str) -> Result<Hypergraph, FormatError> {
    let mut lines = content_lines(text);
    let (line_no, first) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (k, n) = header(line_no, first)?;
    let flat = parse_edges(k, n, lines)?;
    Ok(Hypergraph::from_flat(k, n, flat)?)
}

pub fn write_hypergraph(g: &Hypergraph) -> String {
    let mut out = format!("{} {}\n", g.k(), g.n());
    for e in g.edges() {
        let mut first = true;
        for v in e {
            if !first {
                out.push(' ');
            }
            first = false;
            let _ = write!(out, "{v}");
        }
        out.push('\n');
    }
    out
}

pub fn parse_surface(text: &str) -> Result<Surface2, FormatError> {
    let g = parse_hypergraph(text)?;
    if g.k() != 3 {
        let line = content_lines(text).next().map_or(1, |(l, _)| l);
        return Err(syntax(line, format!("a surface file needs k = 3, found {}", g.k())));
    }
    Ok(Surface2::from_hypergraph(&g)?)
}

pub fn write_surface(s: &Surface2) -> String {
    write_hypergraph(&s.to_hypergraph())
}

pub fn parse_blowup(text: &str) -> Result<BlowUp, FormatError> {
    let mut lines = content_lines(text);
    let (line_no, first) = lines.next().ok_or(FormatError::MissingHeader)?;
    let (k, l) = header(line_no, first)?;
    let (sizes_no, sizes_line) = lines.next().ok_or_else(|| syntax(line_no, "missing `sizes` line"))?;
    let rest = sizes_line
        .strip_prefix("sizes")
        .ok_or_else(|| syntax(sizes_no, "expected `sizes s_0 ... s_{l-1}`"))?;
    let sizes: Vec<usize> = numbers(sizes_no, rest)?.into_iter().map(|s| s as usize).collect();
    if sizes.len() != l {
        return Err(syntax(sizes_no, format!("expected {l} cluster sizes, found {}", sizes.len())));
    }
    let base = Hypergraph::from_flat(k, l, parse_edges(k, l, lines)?)?;
    let edges = base.edges().try_fold(0u128, |acc, e| {
        let count = e.iter().try_fold(1u128, |p, &v| p.checked_mul(sizes[v as usize] as u128))?;
        acc.checked_add(count)
    });
    if edges.is_none_or(|m| m > MAX_BLOWUP_EDGES) {
        return Err(syntax(sizes_no, format!("blow-up would have more than {MAX_BLOWUP_EDGES} edges")));
    }
    Ok(tightspan_core::blow_up(&base, &sizes)?)
}

pub fn write_blowup(b: &BlowUp) -> String {
    let base = write_hypergraph(b.base());
    let (header, edges) = base.split_once('\n').expect("header line");
    let sizes: Vec<String> = b.sizes().iter().map(ToString::to_string).collect();
    format!("{header}\nsizes {}\n{edges}", sizes.join(" "))
}

/// Reads a file, attaching the path to any error.
pub fn read<T>(path: &Path, parse: fn(&str) -> Result<T, FormatError>) -> anyhow::Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| crate::CliError::Io(path.display().to_string(), e))?;
    parse(&text).map_err(|e| crate::CliError::Parse(path.display().to_string(), e).into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_hypergraph("# a triangle\n3 4\n\n0 1 2 # first\n1 2 3\n").unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(write_hypergraph(&g), "3 4\n0 1 2\n1 2 3\n");
    }

    #[test]
    fn errors_carry_line_numbers() {
        let err = parse_hypergraph("3 4\n0 1 2\n\n2 1 3\n").unwrap_err();
        assert_eq!(err.to_string(), "line 4: vertices must be strictly ascending");
        let err = parse_hypergraph("3 4\n0 1 4\n").unwrap_err();
        assert!(err.to_string().starts_with("line 2:"));
        let err = parse_hypergraph("3 4\n0 1 2\n0 1 2\n").unwrap_err();
        assert_eq!(err.to_string(), "line 3: repeated edge");
        assert!(matches!(parse_hypergraph("# nothing\n"), Err(FormatError::MissingHeader)));
        assert!(parse_hypergraph("3 x\n").unwrap_err().to_string().starts_with("line 1:"));
        assert!(parse_surface("2 3\n0 1\n").is_err());
    }

    #[test]
    fn blowup_round_trip() {
        let b = tightspan_core::constructions::path_blowup(3, 4, &[1, 2, 2, 1]).unwrap();
        let text = write_blowup(&b);
        assert_eq!(text, "3 4\nsizes 1 2 2 1\n0 1 2\n1 2 3\n");
        assert_eq!(parse_blowup(&text).unwrap(), b);
        assert!(parse_blowup("3 3\nsizes 1000 1000 1000\n0 1 2\n").is_err());
        assert!(parse_blowup("3 3\nsizes 1 1\n0 1 2\n").unwrap_err().to_string().starts_with("line 2:"));
    }
}
