//! Line-oriented text formats. Vertices are 1-based in files and 0-based in
//! memory.
//!
//! ```text
//! c comment
//! p em <n> <m> <k>
//! t bipartite <nA>        side A = vertices 1..nA
//! e <u> <v> <r|b>
//!
//! p mocp <n> <m>
//! a <u> <v> <w>
//! ```

use std::collections::HashSet;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::graph::{Color, ColoredGraph, PerfectMatching};
use crate::mocp::{DirectedCycle, WeightedDigraph};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Em { graph: ColoredGraph, k: usize },
    Mocp(WeightedDigraph),
}

fn perr<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, msg: msg.into() })
}

fn num<T: std::str::FromStr>(line: usize, tok: Option<&str>, what: &str) -> Result<T> {
    match tok {
        None => perr(line, format!("missing {what}")),
        Some(t) => t.parse().or_else(|_| perr(line, format!("bad {what} '{t}'"))),
    }
}

fn vertex(line: usize, tok: Option<&str>, n: usize) -> Result<usize> {
    let v: usize = num(line, tok, "vertex")?;
    if v == 0 || v > n {
        return perr(line, format!("vertex {v} outside 1..{n}"));
    }
    Ok(v - 1)
}

enum Header {
    Em { n: usize, m: usize, k: usize },
    Mocp { n: usize, m: usize },
}

pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut header: Option<(usize, Header)> = None;
    let mut side_a: Option<(usize, usize)> = None;
    let mut edges = Vec::new();
    let mut arcs = Vec::new();
    let mut seen = HashSet::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tok = raw.split_whitespace();
        let Some(kind) = tok.next() else { continue };
        match kind {
            "c" => continue,
            "p" => {
                if header.is_some() {
                    return perr(line, "second problem line");
                }
                let h = match tok.next() {
                    Some("em") => Header::Em {
                        n: num(line, tok.next(), "vertex count")?,
                        m: num(line, tok.next(), "edge count")?,
                        k: num(line, tok.next(), "k")?,
                    },
                    Some("mocp") => Header::Mocp {
                        n: num(line, tok.next(), "vertex count")?,
                        m: num(line, tok.next(), "arc count")?,
                    },
                    other => return perr(line, format!("unknown problem {other:?}")),
                };
                header = Some((line, h));
            }
            "t" => {
                let Some((_, Header::Em { n, .. })) = header else {
                    return perr(line, "bipartition line needs a preceding 'p em' line");
                };
                if tok.next() != Some("bipartite") {
                    return perr(line, "expected 't bipartite <nA>'");
                }
                if side_a.is_some() {
                    return perr(line, "second bipartition line");
                }
                let na: usize = num(line, tok.next(), "side size")?;
                if na > n {
                    return perr(line, "side A larger than the graph");
                }
                side_a = Some((line, na));
            }
            "e" => {
                let Some((_, Header::Em { n, .. })) = header else {
                    return perr(line, "edge line needs a preceding 'p em' line");
                };
                let u = vertex(line, tok.next(), n)?;
                let v = vertex(line, tok.next(), n)?;
                let color = match tok.next() {
                    Some("r") => Color::Red,
                    Some("b") => Color::Blue,
                    other => return perr(line, format!("bad colour {other:?}")),
                };
                if u == v {
                    return perr(line, "loop");
                }
                if !seen.insert((u.min(v), u.max(v))) {
                    return perr(line, "duplicate edge");
                }
                edges.push((u, v, color));
            }
            "a" => {
                let Some((_, Header::Mocp { n, .. })) = header else {
                    return perr(line, "arc line needs a preceding 'p mocp' line");
                };
                let u = vertex(line, tok.next(), n)?;
                let v = vertex(line, tok.next(), n)?;
                let w: i64 = num(line, tok.next(), "weight")?;
                arcs.push((u, v, w));
            }
            other => return perr(line, format!("unknown line type '{other}'")),
        }
        if let Some(extra) = tok.next() {
            return perr(line, format!("trailing token '{extra}'"));
        }
    }
    let Some((hline, header)) = header else {
        return perr(0, "missing problem line");
    };
    let at = |line: usize| move |e: Error| Error::Parse { line, msg: e.to_string() };
    match header {
        Header::Em { n, m, k } => {
            if edges.len() != m {
                return perr(hline, format!("header announces {m} edges, found {}", edges.len()));
            }
            let mut graph = ColoredGraph::new(n, edges).map_err(at(hline))?;
            if let Some((line, na)) = side_a {
                graph = graph.with_side_a_prefix(na).map_err(at(line))?;
            }
            Ok(Instance::Em { graph, k })
        }
        Header::Mocp { n, m } => {
            if arcs.len() != m {
                return perr(hline, format!("header announces {m} arcs, found {}", arcs.len()));
            }
            Ok(Instance::Mocp(WeightedDigraph::new(n, arcs).map_err(at(hline))?))
        }
    }
}

pub fn render_em(g: &ColoredGraph, k: usize) -> String {
    let mut s = format!("p em {} {} {}\n", g.n(), g.m(), k);
    if let Some(na) = g.side_a_prefix() {
        let _ = writeln!(s, "t bipartite {na}");
    }
    for e in g.edges() {
        let _ = writeln!(s, "e {} {} {}", e.u + 1, e.v + 1, e.color);
    }
    s
}

pub fn render_mocp(d: &WeightedDigraph) -> String {
    let mut s = format!("p mocp {} {}\n", d.n(), d.arcs().len());
    for a in d.arcs() {
        let _ = writeln!(s, "a {} {} {}", a.tail + 1, a.head + 1, a.weight);
    }
    s
}

pub fn render_instance(inst: &Instance) -> String {
    match inst {
        Instance::Em { graph, k } => render_em(graph, *k),
        Instance::Mocp(d) => render_mocp(d),
    }
}

/// `s yes r=<r>` followed by one `m u v` line per matching edge.
pub fn render_matching(g: &ColoredGraph, m: &PerfectMatching) -> String {
    let mut s = format!("s yes r={}\n", m.red_count());
    let mut pairs: Vec<(usize, usize)> = m.edges().iter().map(|&e| (g.edge(e).u + 1, g.edge(e).v + 1)).collect();
    pairs.sort_unstable();
    for (u, v) in pairs {
        let _ = writeln!(s, "m {u} {v}");
    }
    s
}

/// `s yes w=<w>` followed by one `a u v` line per cycle arc.
pub fn render_cycle(d: &WeightedDigraph, c: &DirectedCycle) -> String {
    let mut s = format!("s yes w={}\n", c.weight);
    for &a in &c.arcs {
        let arc = d.arc(a);
        let _ = writeln!(s, "a {} {}", arc.tail + 1, arc.head + 1);
    }
    s
}

/// Reads the `m u v` lines of a report; other `s` and `c` lines are
/// ignored.
pub fn parse_matching(g: &ColoredGraph, text: &str) -> Result<PerfectMatching> {
    let mut edges = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let mut tok = raw.split_whitespace();
        match tok.next() {
            None | Some("c") | Some("s") | Some("trace") => continue,
            Some("m") => {
                let u = vertex(line, tok.next(), g.n())?;
                let v = vertex(line, tok.next(), g.n())?;
                match g.edge_between(u, v) {
                    Some(e) => edges.push(e),
                    None => return perr(line, format!("{} {} is not an edge", u + 1, v + 1)),
                }
            }
            Some(other) => return perr(line, format!("unknown line type '{other}'")),
        }
    }
    PerfectMatching::new(g, edges)
}
