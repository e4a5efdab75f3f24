//! Text format:
//!
//! ```text
//! # comment
//! p ggdp <n> <edge count>
//! c <v> <v> ...
//! e <u> <v>
//! ```
//!
//! Vertex ids are 1-based. The `c` line is mandatory and may be empty.

use super::Instance;
use crate::error::{Error, Result};
use crate::vertex_set::VertexSet;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse {
        line,
        msg: msg.into(),
    }
}

fn parse_id(tok: &str, n: usize, line: usize) -> Result<usize> {
    let v: usize = tok
        .parse()
        .map_err(|_| parse_err(line, format!("expected a vertex id, found {tok:?}")))?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} is outside 1..{n}")));
    }
    Ok(v - 1)
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, usize)> = None;
    let mut closed: Option<VertexSet> = None;
    let mut edges = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let mut toks = content.split_whitespace();
        let tag = toks.next().unwrap_or("");
        let rest: Vec<&str> = toks.collect();
        match tag {
            "p" => {
                if header.is_some() {
                    return Err(parse_err(line, "second problem line"));
                }
                if rest.len() != 3 || rest[0] != "ggdp" {
                    return Err(parse_err(line, "expected `p ggdp <n> <edges>`"));
                }
                let n: usize = rest[1]
                    .parse()
                    .map_err(|_| parse_err(line, "vertex count is not a number"))?;
                let m: usize = rest[2]
                    .parse()
                    .map_err(|_| parse_err(line, "edge count is not a number"))?;
                header = Some((n, m));
            }
            "c" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "`c` before `p` line"))?;
                if closed.is_some() {
                    return Err(parse_err(line, "second `c` line"));
                }
                let mut set = VertexSet::EMPTY;
                for tok in rest {
                    set.insert(parse_id(tok, n, line)?);
                }
                closed = Some(set);
            }
            "e" => {
                let (n, _) = header.ok_or_else(|| parse_err(line, "`e` before `p` line"))?;
                if rest.len() != 2 {
                    return Err(parse_err(line, "expected `e <u> <v>`"));
                }
                let a = parse_id(rest[0], n, line)?;
                let b = parse_id(rest[1], n, line)?;
                if a == b {
                    return Err(parse_err(line, format!("self-loop at vertex {}", a + 1)));
                }
                edges.push((a, b, line));
            }
            other => return Err(parse_err(line, format!("unknown line type {other:?}"))),
        }
    }
    let (n, m) = header.ok_or_else(|| parse_err(0, "missing `p ggdp` line"))?;
    let closed = closed.ok_or_else(|| parse_err(0, "missing `c` line"))?;
    if edges.len() != m {
        return Err(parse_err(
            0,
            format!("header announces {m} edges, found {}", edges.len()),
        ));
    }
    let mut seen = std::collections::HashSet::new();
    for &(a, b, line) in &edges {
        if !seen.insert((a.min(b), a.max(b))) {
            return Err(parse_err(
                line,
                format!("duplicate edge ({}, {})", a + 1, b + 1),
            ));
        }
    }
    Instance::new(n, edges.into_iter().map(|(a, b, _)| (a, b)), closed)
}

pub fn write_instance(inst: &Instance) -> String {
    let mut out = format!("p ggdp {} {}\nc", inst.n(), inst.edges().len());
    for v in inst.closed_set() {
        out.push_str(&format!(" {}", v + 1));
    }
    out.push('\n');
    for &(a, b) in inst.edges() {
        out.push_str(&format!("e {} {}\n", a + 1, b + 1));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::bull;

    const BULL: &str = "# bull\np ggdp 5 5\nc 1 2 3 4 5\ne 1 2\ne 1 3\ne 2 3\ne 2 4\ne 3 5\n";

    #[test]
    fn parse_bull() {
        let b = parse_instance(BULL).unwrap();
        assert_eq!(b, bull());
        assert_eq!(parse_instance(&write_instance(&b)).unwrap(), b);
    }

    #[test]
    fn smallest_and_isolated() {
        let one = parse_instance("p ggdp 1 0\nc 1\n").unwrap();
        assert_eq!(one.n(), 1);
        let err = parse_instance("p ggdp 2 0\nc 1\n").unwrap_err();
        assert_eq!(err, Error::IsolatedOutsideC(2));
        assert!(err.to_string().contains("vertex 2"));
    }

    #[test]
    fn malformed_lines() {
        let cases = [
            "p ggdp 2 1\nc\ne 1 3\n",
            "p ggdp 2 1\nc\ne 1\n",
            "p ggdp 2 1\ne 1 2\n",
            "p ggdp 2 2\nc\ne 1 2\n",
            "p ggdp 2 2\nc\ne 1 2\ne 2 1\n",
            "p ggdp 2 1\nc\ne 1 1\n",
            "q 1\n",
            "c 1\np ggdp 1 0\n",
            "p ggdp x 0\nc\n",
        ];
        for text in cases {
            assert!(
                matches!(parse_instance(text), Err(Error::Parse { .. })),
                "accepted {text:?}"
            );
        }
    }

    #[test]
    fn empty_closed_line() {
        let p = parse_instance("p ggdp 2 1\nc\ne 1 2 # trailing\n").unwrap();
        assert!(p.closed_set().is_empty());
        assert_eq!(write_instance(&p), "p ggdp 2 1\nc\ne 1 2\n");
    }
}
