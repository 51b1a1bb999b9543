//! Text formats.
//!
//! Graphs: a header `p ks <n> <m>` followed by `m` lines `<u> <v>`.
//! Decompositions (PACE 2017): a header `s td <bags> <max bag size> <n>`,
//! one line `b <id> <v>...` per bag, then one line `<i> <j>` per tree edge.
//! Lines starting with `c` are comments. All ids in files are 1-based.

use std::collections::HashSet;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::treedec::TreeDecomposition;

fn parse_err(line: usize, msg: impl Into<String>) -> Error {
    Error::Parse { line, msg: msg.into() }
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, line)| {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.first() {
            None => None,
            Some(t) if t.starts_with('c') => None,
            _ => Some((i + 1, tokens)),
        }
    })
}

fn number(line: usize, token: &str, what: &str) -> Result<usize> {
    token.parse().map_err(|_| parse_err(line, format!("expected {what}, found `{token}`")))
}

fn vertex(line: usize, token: &str, n: usize) -> Result<usize> {
    let v = number(line, token, "a vertex id")?;
    if v == 0 || v > n {
        return Err(parse_err(line, format!("vertex {v} outside 1..={n}")));
    }
    Ok(v - 1)
}

/// Parses the `p ks` graph format.
pub fn parse_gr(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `p ks <n> <m>` header"))?;
    if header.len() != 4 || header[0] != "p" || header[1] != "ks" {
        return Err(parse_err(hline, "expected header `p ks <n> <m>`"));
    }
    let n = number(hline, header[2], "vertex count")?;
    let m = number(hline, header[3], "edge count")?;
    let mut edges = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if tokens.len() != 2 {
            return Err(parse_err(line, "expected an edge `<u> <v>`"));
        }
        let (u, v) = (vertex(line, tokens[0], n)?, vertex(line, tokens[1], n)?);
        if u == v {
            return Err(parse_err(line, format!("self-loop at vertex {}", u + 1)));
        }
        if !seen.insert((u.min(v), u.max(v))) {
            return Err(parse_err(line, format!("repeated edge {{{},{}}}", u + 1, v + 1)));
        }
        if edges.len() == m {
            return Err(parse_err(line, format!("more than the {m} declared edges")));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(parse_err(last_line, format!("declared {m} edges, found {}", edges.len())));
    }
    Graph::new(n, edges)
}

pub fn write_gr(g: &Graph) -> String {
    let mut out = format!("p ks {} {}\n", g.n(), g.m());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", u + 1, v + 1);
    }
    out
}

/// Parses a PACE 2017 `.td` file; returns the decomposition and the vertex
/// count from its header.
pub fn parse_td(text: &str) -> Result<(TreeDecomposition, usize)> {
    let mut lines = content_lines(text);
    let (hline, header) = lines.next().ok_or_else(|| parse_err(1, "missing `s td` header"))?;
    if header.len() != 5 || header[0] != "s" || header[1] != "td" {
        return Err(parse_err(hline, "expected header `s td <bags> <max bag size> <n>`"));
    }
    let count = number(hline, header[2], "bag count")?;
    let declared_max = number(hline, header[3], "max bag size")?;
    let n = number(hline, header[4], "vertex count")?;
    let mut bags: Vec<Option<Vec<usize>>> = vec![None; count];
    let mut edges = Vec::with_capacity(count.saturating_sub(1));
    let mut last_line = hline;
    for (line, tokens) in lines {
        last_line = line;
        if tokens[0] == "b" {
            if !edges.is_empty() {
                return Err(parse_err(line, "bag line after tree edges"));
            }
            let id = tokens.get(1).ok_or_else(|| parse_err(line, "bag line without id"))?;
            let id = number(line, id, "a bag id")?;
            if id == 0 || id > count {
                return Err(parse_err(line, format!("bag id {id} outside 1..={count}")));
            }
            if bags[id - 1].is_some() {
                return Err(parse_err(line, format!("bag {id} defined twice")));
            }
            let mut bag = tokens[2..].iter().map(|t| vertex(line, t, n)).collect::<Result<Vec<_>>>()?;
            let len = bag.len();
            bag.sort_unstable();
            bag.dedup();
            if bag.len() != len {
                return Err(parse_err(line, format!("bag {id} repeats a vertex")));
            }
            bags[id - 1] = Some(bag);
        } else {
            if tokens.len() != 2 {
                return Err(parse_err(line, "expected a tree edge `<i> <j>`"));
            }
            let i = number(line, tokens[0], "a bag id")?;
            let j = number(line, tokens[1], "a bag id")?;
            if i == 0 || i > count || j == 0 || j > count {
                return Err(parse_err(line, format!("tree edge {{{i},{j}}} names an unknown bag")));
            }
            edges.push((i - 1, j - 1));
        }
    }
    let bags: Vec<Vec<usize>> = bags
        .into_iter()
        .enumerate()
        .map(|(i, b)| b.ok_or_else(|| parse_err(last_line, format!("bag {} is never defined", i + 1))))
        .collect::<Result<_>>()?;
    let actual_max = bags.iter().map(Vec::len).max().unwrap_or(0);
    if actual_max != declared_max {
        return Err(parse_err(hline, format!("declared max bag size {declared_max}, found {actual_max}")));
    }
    Ok((TreeDecomposition::new(bags, &edges)?, n))
}

pub fn write_td(td: &TreeDecomposition, n: usize) -> String {
    let max = td.bags().iter().map(Vec::len).max().unwrap_or(0);
    let mut out = format!("s td {} {} {}\n", td.len(), max, n);
    for (i, bag) in td.bags().iter().enumerate() {
        let _ = write!(out, "b {}", i + 1);
        for &v in bag {
            let _ = write!(out, " {}", v + 1);
        }
        out.push('\n');
    }
    for (i, j) in td.tree_edges() {
        let _ = writeln!(out, "{} {}", i + 1, j + 1);
    }
    out
}
