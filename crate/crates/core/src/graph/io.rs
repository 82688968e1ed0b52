//! Plain-text file formats for graphs, orthogonal arrays and designs.
//!
//! Edge list: first line `n m`, then m lines `u v` (0-based).
//! OA: first line `n k`, then n^2 lines of k symbols in {1..n}.
//! Design: first line `v k b`, then b lines of k point indices in {1..v}.

use super::{Graph, OrthogonalArray, SteinerDesign};
use crate::error::{Error, Result};

fn numbers(line: &str, lineno: usize) -> Result<Vec<usize>> {
    line.split_whitespace()
        .map(|tok| {
            tok.parse()
                .map_err(|_| Error::Parse(format!("line {lineno}: bad integer {tok:?}")))
        })
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty edge-list file".into()))?;
    let head = numbers(header, lineno)?;
    let [n, m] = head[..] else {
        return Err(Error::Parse(format!("line {lineno}: expected \"n m\"")));
    };
    let mut edges = Vec::with_capacity(m);
    for (lineno, line) in lines {
        let nums = numbers(line, lineno)?;
        let [u, v] = nums[..] else {
            return Err(Error::Parse(format!("line {lineno}: expected \"u v\"")));
        };
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(Error::Parse(format!(
            "header promised {m} edges, found {}",
            edges.len()
        )));
    }
    Graph::from_edges(n, &edges)
}

pub fn format_edge_list(g: &Graph) -> String {
    let edges = g.edges();
    let mut out = format!("{} {}\n", g.n(), edges.len());
    for (u, v) in edges {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}

pub fn parse_oa(text: &str) -> Result<OrthogonalArray> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty OA file".into()))?;
    let head = numbers(header, lineno)?;
    let [n, k] = head[..] else {
        return Err(Error::Parse(format!("line {lineno}: expected \"n k\"")));
    };
    let mut rows = Vec::with_capacity(n * n);
    for (lineno, line) in lines {
        let row = numbers(line, lineno)?;
        if row.len() != k {
            return Err(Error::Parse(format!(
                "line {lineno}: expected {k} symbols, got {}",
                row.len()
            )));
        }
        rows.push(row);
    }
    OrthogonalArray::new(n, k, rows)
}

pub fn parse_design(text: &str) -> Result<SteinerDesign> {
    let mut lines = content_lines(text);
    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty design file".into()))?;
    let head = numbers(header, lineno)?;
    let [v, k, b] = head[..] else {
        return Err(Error::Parse(format!("line {lineno}: expected \"v k b\"")));
    };
    let mut blocks = Vec::with_capacity(b);
    for (lineno, line) in lines {
        let block = numbers(line, lineno)?;
        if block.len() != k {
            return Err(Error::Parse(format!(
                "line {lineno}: expected {k} points, got {}",
                block.len()
            )));
        }
        blocks.push(block);
    }
    if blocks.len() != b {
        return Err(Error::Parse(format!(
            "header promised {b} blocks, found {}",
            blocks.len()
        )));
    }
    SteinerDesign::new(v, k, blocks)
}
