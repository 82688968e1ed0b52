//! Orthogonal arrays and Steiner 2-designs, and the strongly regular graphs
//! they generate.

use super::Graph;
use crate::error::{Error, Result};

/// Orthogonal array OA(k, n): an n^2 x k array over symbols {1..n} where
/// every ordered column pair exhibits each ordered symbol pair exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrthogonalArray {
    pub n: usize,
    pub k: usize,
    rows: Vec<Vec<usize>>,
}

impl OrthogonalArray {
    pub fn new(n: usize, k: usize, rows: Vec<Vec<usize>>) -> Result<Self> {
        let oa = OrthogonalArray { n, k, rows };
        validate_oa(&oa)?;
        Ok(oa)
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.rows
    }
}

/// Check the OA axioms; reports the first offending column pair.
pub fn validate_oa(oa: &OrthogonalArray) -> Result<()> {
    let (n, k) = (oa.n, oa.k);
    // k = n+1 is admissible (its graph is complete); beyond that two
    // columns cannot both cover all ordered pairs
    if k < 2 || k > n + 1 {
        return Err(Error::InvalidParameters(format!(
            "OA needs 2 <= k <= n+1, got k={k}, n={n}"
        )));
    }
    if oa.rows.len() != n * n {
        return Err(Error::ValidationFailure(format!(
            "OA({k},{n}) needs {} rows, got {}",
            n * n,
            oa.rows.len()
        )));
    }
    for (r, row) in oa.rows.iter().enumerate() {
        if row.len() != k {
            return Err(Error::ValidationFailure(format!(
                "row {r} has {} entries, expected {k}",
                row.len()
            )));
        }
        for &s in row {
            if s < 1 || s > n {
                return Err(Error::ValidationFailure(format!(
                    "row {r} contains symbol {s} outside 1..{n}"
                )));
            }
        }
    }
    for i in 0..k {
        for j in 0..k {
            if i == j {
                continue;
            }
            let mut seen = vec![0usize; n * n];
            for row in &oa.rows {
                seen[(row[i] - 1) * n + (row[j] - 1)] += 1;
            }
            if let Some(p) = seen.iter().position(|&c| c != 1) {
                return Err(Error::ValidationFailure(format!(
                    "columns ({i},{j}): ordered pair ({},{}) seen {} times",
                    p / n + 1,
                    p % n + 1,
                    seen[p]
                )));
            }
        }
    }
    Ok(())
}

/// Built-in OA constructions: k=2 (all ordered pairs) and k=3 (cyclic Latin
/// square). Larger k must be ingested from a file.
pub fn oa_cyclic(k: usize, n: usize) -> Result<OrthogonalArray> {
    if !(2..=3).contains(&k) {
        return Err(Error::UnsupportedConstruction(format!(
            "built-in OA supports k in {{2,3}}, got {k}; ingest a file for larger k"
        )));
    }
    if n < 2 || k > n + 1 {
        return Err(Error::InvalidParameters(format!(
            "OA needs 2 <= k <= n+1, got k={k}, n={n}"
        )));
    }
    let mut rows = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let mut row = vec![i + 1, j + 1];
            if k == 3 {
                row.push((i + j) % n + 1);
            }
            rows.push(row);
        }
    }
    OrthogonalArray::new(n, k, rows)
}

/// Graph of an orthogonal array: rows are vertices, adjacent when they agree
/// on exactly one coordinate.
pub fn oa_graph(oa: &OrthogonalArray) -> Result<Graph> {
    validate_oa(oa)?;
    let rows = oa.rows();
    let nv = rows.len();
    let mut edges = Vec::new();
    for u in 0..nv {
        for v in (u + 1)..nv {
            let agreements = rows[u]
                .iter()
                .zip(&rows[v])
                .filter(|(a, b)| a == b)
                .count();
            if agreements == 1 {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(nv, &edges)
}

/// Steiner 2-(v, k, 1) design: every point pair lies in exactly one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SteinerDesign {
    pub v: usize,
    pub block_size: usize,
    blocks: Vec<Vec<usize>>,
}

impl SteinerDesign {
    pub fn new(v: usize, block_size: usize, blocks: Vec<Vec<usize>>) -> Result<Self> {
        let d = SteinerDesign {
            v,
            block_size,
            blocks,
        };
        validate_design(&d)?;
        Ok(d)
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }
}

/// Check the design axioms; names an uncovered or doubly covered pair on
/// failure. A single-block design (v = k) is allowed as the degenerate case.
pub fn validate_design(d: &SteinerDesign) -> Result<()> {
    let (v, k) = (d.v, d.block_size);
    if k < 2 || k > v {
        return Err(Error::InvalidParameters(format!(
            "design needs 2 <= k <= v, got k={k}, v={v}"
        )));
    }
    let expected_blocks = v * (v - 1) / (k * (k - 1));
    if v * (v - 1) % (k * (k - 1)) != 0 || d.blocks.len() != expected_blocks {
        return Err(Error::ValidationFailure(format!(
            "2-({v},{k},1) design needs {expected_blocks} blocks, got {}",
            d.blocks.len()
        )));
    }
    let mut cover = vec![0usize; v * v];
    for (b, block) in d.blocks.iter().enumerate() {
        if block.len() != k {
            return Err(Error::ValidationFailure(format!(
                "block {b} has {} points, expected {k}",
                block.len()
            )));
        }
        for &p in block {
            if p < 1 || p > v {
                return Err(Error::ValidationFailure(format!(
                    "block {b} contains point {p} outside 1..{v}"
                )));
            }
        }
        for i in 0..k {
            for j in (i + 1)..k {
                let (p, q) = (block[i] - 1, block[j] - 1);
                if p == q {
                    return Err(Error::ValidationFailure(format!(
                        "block {b} repeats point {}",
                        p + 1
                    )));
                }
                cover[p * v + q] += 1;
                cover[q * v + p] += 1;
            }
        }
    }
    for p in 0..v {
        for q in (p + 1)..v {
            match cover[p * v + q] {
                1 => {}
                0 => {
                    return Err(Error::ValidationFailure(format!(
                        "pair ({},{}) uncovered",
                        p + 1,
                        q + 1
                    )))
                }
                c => {
                    return Err(Error::ValidationFailure(format!(
                        "pair ({},{}) covered {c} times",
                        p + 1,
                        q + 1
                    )))
                }
            }
        }
    }
    Ok(())
}

/// Block graph: blocks are vertices, adjacent when they share a point.
pub fn steiner_block_graph(d: &SteinerDesign) -> Result<Graph> {
    validate_design(d)?;
    let blocks = d.blocks();
    let nv = blocks.len();
    let mut edges = Vec::new();
    for u in 0..nv {
        for v in (u + 1)..nv {
            if blocks[u].iter().any(|p| blocks[v].contains(p)) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(nv, &edges)
}

/// Fano plane, the Steiner triple system STS(7).
pub fn fano_plane() -> SteinerDesign {
    let blocks = vec![
        vec![1, 2, 3],
        vec![1, 4, 5],
        vec![1, 6, 7],
        vec![2, 4, 6],
        vec![2, 5, 7],
        vec![3, 4, 7],
        vec![3, 5, 6],
    ];
    SteinerDesign::new(7, 3, blocks).expect("Fano plane is a valid STS(7)")
}

/// STS(9): the 12 lines of the affine plane AG(2,3), points numbered
/// row-major as 3*(r-1) + c.
pub fn affine_plane_sts9() -> SteinerDesign {
    let pt = |r: usize, c: usize| 3 * r + c + 1;
    let mut blocks = Vec::new();
    // rows and columns
    for r in 0..3 {
        blocks.push((0..3).map(|c| pt(r, c)).collect());
    }
    for c in 0..3 {
        blocks.push((0..3).map(|r| pt(r, c)).collect());
    }
    // the two diagonal parallel classes: c = s*r + b (mod 3), slopes 1 and 2
    for s in 1..3 {
        for b in 0..3 {
            blocks.push((0..3).map(|r| pt(r, (s * r + b) % 3)).collect());
        }
    }
    SteinerDesign::new(9, 3, blocks).expect("AG(2,3) lines form a valid STS(9)")
}
