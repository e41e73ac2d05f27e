//! Text formats: a line-oriented edge list and digraph6.
//!
//! Edge list:
//!
//! ```text
//! # comment
//! dg <n> <m> <oriented|general>
//! u v
//! ...
//! ```
//!
//! digraph6: `&`, the order as `N(n)`, then the full `n x n` adjacency
//! matrix row-major, six bits per printable byte offset by 63.

use thiserror::Error;

use crate::digraph::{Digraph, GraphError, Mode, MAX_ORDER};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: malformed header: {reason}")]
    Header { line: usize, reason: String },
    #[error("header declares {declared} arcs but {found} were listed")]
    ArcCountMismatch { declared: usize, found: usize },
    #[error("line {line}: malformed arc `{text}`")]
    BadArc { line: usize, text: String },
    #[error("malformed digraph6: {0}")]
    Digraph6(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub fn to_edge_list(g: &Digraph) -> String {
    let mut s = format!("dg {} {} {}\n", g.order(), g.arc_count(), g.mode());
    for (u, v) in g.arcs() {
        s.push_str(&format!("{u} {v}\n"));
    }
    s
}

/// Single-line edge list (`;` instead of newlines), used inside JSON reports.
pub fn to_edge_list_inline(g: &Digraph) -> String {
    to_edge_list(g).trim_end().replace('\n', ";")
}

pub fn parse_edge_list(text: &str) -> Result<Digraph, FormatError> {
    let mut header: Option<(usize, usize, Mode)> = None;
    let mut arcs = Vec::new();
    let lines = text
        .split(['\n', ';'])
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    for (line, content) in lines {
        let fields: Vec<&str> = content.split_whitespace().collect();
        if header.is_none() {
            let bad = |reason: &str| FormatError::Header {
                line,
                reason: reason.to_string(),
            };
            if fields.len() != 4 || fields[0] != "dg" {
                return Err(bad("expected `dg <n> <m> <mode>`"));
            }
            let n = fields[1].parse().map_err(|_| bad("order is not an integer"))?;
            let m = fields[2].parse().map_err(|_| bad("arc count is not an integer"))?;
            let mode = fields[3].parse::<Mode>().map_err(|e| bad(&e))?;
            header = Some((n, m, mode));
            continue;
        }
        let bad = || FormatError::BadArc {
            line,
            text: content.to_string(),
        };
        if fields.len() != 2 {
            return Err(bad());
        }
        let u = fields[0].parse::<usize>().map_err(|_| bad())?;
        let v = fields[1].parse::<usize>().map_err(|_| bad())?;
        arcs.push((u, v));
    }
    let (n, m, mode) = header.ok_or(FormatError::Header {
        line: 0,
        reason: "missing header".into(),
    })?;
    if arcs.len() != m {
        return Err(FormatError::ArcCountMismatch {
            declared: m,
            found: arcs.len(),
        });
    }
    Ok(Digraph::new(n, arcs, mode)?)
}

fn encode_order(n: usize, s: &mut String) {
    if n <= 62 {
        s.push((n as u8 + 63) as char);
    } else {
        s.push('~');
        for shift in [12, 6, 0] {
            s.push(((n >> shift & 63) as u8 + 63) as char);
        }
    }
}

pub fn to_digraph6(g: &Digraph) -> String {
    let n = g.order();
    let mut s = String::from("&");
    encode_order(n, &mut s);
    let mut acc = 0u8;
    let mut filled = 0;
    for u in 0..n {
        for v in 0..n {
            acc = acc << 1 | g.has_arc(u, v) as u8;
            filled += 1;
            if filled == 6 {
                s.push((acc + 63) as char);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        s.push(((acc << (6 - filled)) + 63) as char);
    }
    s
}

/// Parses digraph6. Without a `mode`, the result is oriented when it has no
/// digons and general otherwise.
pub fn parse_digraph6(text: &str, mode: Option<Mode>) -> Result<Digraph, FormatError> {
    let bad = |r: &str| FormatError::Digraph6(r.to_string());
    let t = text.trim();
    let body = t.strip_prefix('&').ok_or_else(|| bad("missing `&` header"))?;
    let bytes = body.as_bytes();
    if bytes.iter().any(|&b| !(63..=126).contains(&b)) {
        return Err(bad("byte outside the printable range 63..=126"));
    }
    let (n, rest) = match bytes.first() {
        None => return Err(bad("missing order")),
        Some(b'~') => {
            if bytes.get(1) == Some(&b'~') {
                return Err(bad("order too large"));
            }
            if bytes.len() < 4 {
                return Err(bad("truncated order"));
            }
            let n = bytes[1..4]
                .iter()
                .fold(0usize, |acc, &b| acc << 6 | (b - 63) as usize);
            (n, &bytes[4..])
        }
        Some(&b) => ((b - 63) as usize, &bytes[1..]),
    };
    if n > MAX_ORDER {
        return Err(GraphError::OrderTooLarge(n).into());
    }
    let bits = n * n;
    if rest.len() != bits.div_ceil(6) {
        return Err(bad(&format!(
            "expected {} data bytes for order {n}, found {}",
            bits.div_ceil(6),
            rest.len()
        )));
    }
    let bit = |i: usize| (rest[i / 6] - 63) >> (5 - i % 6) & 1 == 1;
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in 0..n {
            if bit(u * n + v) {
                if u == v {
                    return Err(GraphError::Loop(u).into());
                }
                arcs.push((u, v));
            }
        }
    }
    let mode = mode.unwrap_or_else(|| {
        if arcs.iter().any(|&(u, v)| arcs.contains(&(v, u))) {
            Mode::General
        } else {
            Mode::Oriented
        }
    });
    Ok(Digraph::new(n, arcs, mode)?)
}

/// Detects the format from the first non-comment character.
pub fn parse_any(text: &str) -> Result<Digraph, FormatError> {
    let first = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .unwrap_or("");
    if first.starts_with('&') {
        parse_digraph6(first, None)
    } else {
        parse_edge_list(text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixture;

    #[test]
    fn c3_round_trips_both_formats() {
        let c3 = fixture("c3").unwrap();
        let text = to_edge_list(&c3);
        assert_eq!(text, "dg 3 3 oriented\n0 1\n1 2\n2 0\n");
        assert_eq!(parse_edge_list(&text).unwrap(), c3);
        let d6 = to_digraph6(&c3);
        assert_eq!(parse_digraph6(&d6, None).unwrap(), c3);
        assert_eq!(parse_any(&d6).unwrap(), c3);
        assert_eq!(parse_edge_list(&to_edge_list_inline(&c3)).unwrap(), c3);
    }

    #[test]
    fn digraph6_matches_reference_encoding() {
        // Order 3 → '&' 'B'; matrix 010 001 100 → 010001 100(000) → 17, 32.
        assert_eq!(to_digraph6(&fixture("c3").unwrap()), "&BP_");
    }

    #[test]
    fn comments_and_blank_lines() {
        let g = parse_edge_list("# a 3-cycle\n\ndg 3 3 oriented  # header\n0 1\n1 2\n\n2 0 # closing arc\n")
            .unwrap();
        assert_eq!(g, fixture("c3").unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            parse_edge_list("dg 3 2 oriented\n0 1\n"),
            Err(FormatError::ArcCountMismatch { declared: 2, found: 1 })
        ));
        assert!(matches!(
            parse_edge_list("graph 3 0 oriented\n"),
            Err(FormatError::Header { .. })
        ));
        assert!(matches!(
            parse_edge_list("dg 3 0 sideways\n"),
            Err(FormatError::Header { .. })
        ));
        assert!(matches!(
            parse_edge_list("dg 2 2 oriented\n0 1\n1 0\n"),
            Err(FormatError::Graph(GraphError::Digon(0, 1)))
        ));
        assert!(matches!(
            parse_edge_list("dg 2 1 oriented\n0 x\n"),
            Err(FormatError::BadArc { line: 2, .. })
        ));
        assert!(parse_digraph6("BP_", None).is_err());
        assert!(parse_digraph6("&BP", None).is_err());
    }

    #[test]
    fn digraph6_large_order_header() {
        let g = crate::digraph::transitive_tournament(63).unwrap();
        let s = to_digraph6(&g);
        assert!(s.starts_with("&~"));
        assert_eq!(parse_digraph6(&s, None).unwrap(), g);
    }

    mod props {
        use proptest::prelude::*;

        use super::super::*;
        use crate::testkit::arb_digraph;

        proptest! {
            #[test]
            fn round_trips(g in arb_digraph(0, 20)) {
                prop_assert_eq!(parse_edge_list(&to_edge_list(&g)).unwrap(), g.clone());
                prop_assert_eq!(parse_edge_list(&to_edge_list_inline(&g)).unwrap(), g.clone());
                prop_assert_eq!(parse_digraph6(&to_digraph6(&g), Some(g.mode())).unwrap(), g.clone());
                prop_assert_eq!(parse_any(&to_edge_list(&g)).unwrap(), g.clone());
            }
        }
    }
}
