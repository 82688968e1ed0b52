//! Graph construction: the dense adjacency type plus the standard families
//! (complete, empty, cycle, disjoint cliques, Petersen) and the operations
//! used to assemble larger instances (complement, join, cone, Cartesian
//! product).
//!
//! Vertex ordering is normative: `join(x, y)` lists the vertices of `x`
//! first, so `cone(y)` always has its apex at index 0.

mod designs;
mod io;
mod random;

pub use designs::{
    affine_plane_sts9, fano_plane, oa_cyclic, oa_graph, steiner_block_graph, validate_design,
    validate_oa, OrthogonalArray, SteinerDesign,
};
pub use io::{format_edge_list, parse_design, parse_edge_list, parse_oa};
pub use random::random_regular;

use nalgebra::DMatrix;

use crate::error::{Error, Result};

/// Simple undirected graph stored as a dense symmetric 0/1 adjacency matrix
/// with zero diagonal.
#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    n: usize,
    adj: DMatrix<f64>,
}

impl Graph {
    /// Wrap an adjacency matrix, checking symmetry, zero diagonal and 0/1
    /// entries.
    pub fn from_adjacency(adj: DMatrix<f64>) -> Result<Self> {
        let n = adj.nrows();
        if n == 0 {
            return Err(Error::InvalidSize("graph must have at least one vertex".into()));
        }
        if adj.ncols() != n {
            return Err(Error::InvalidSize(format!(
                "adjacency must be square, got {}x{}",
                adj.nrows(),
                adj.ncols()
            )));
        }
        for i in 0..n {
            if adj[(i, i)] != 0.0 {
                return Err(Error::ValidationFailure(format!("nonzero diagonal at {i}")));
            }
            for j in 0..n {
                let e = adj[(i, j)];
                if e != 0.0 && e != 1.0 {
                    return Err(Error::ValidationFailure(format!(
                        "entry ({i},{j}) = {e} is not 0/1"
                    )));
                }
                if adj[(i, j)] != adj[(j, i)] {
                    return Err(Error::ValidationFailure(format!(
                        "asymmetric at ({i},{j})"
                    )));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    /// Build from an edge list on `n` vertices (0-based endpoints).
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidSize("graph must have at least one vertex".into()));
        }
        let mut adj = DMatrix::zeros(n, n);
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::ValidationFailure(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::ValidationFailure(format!("loop at vertex {u}")));
            }
            adj[(u, v)] = 1.0;
            adj[(v, u)] = 1.0;
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn adjacency(&self) -> &DMatrix<f64> {
        &self.adj
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj[(u, v)] != 0.0
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj.row(v).iter().map(|&e| e as usize).sum()
    }

    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for u in 0..self.n {
            for v in (u + 1)..self.n {
                if self.has_edge(u, v) {
                    out.push((u, v));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    /// Connected components as sorted vertex lists (breadth-first search).
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut comps = Vec::new();
        for s in 0..self.n {
            if seen[s] {
                continue;
            }
            let mut comp = vec![s];
            let mut queue = std::collections::VecDeque::from([s]);
            seen[s] = true;
            while let Some(u) = queue.pop_front() {
                for v in 0..self.n {
                    if self.has_edge(u, v) && !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        queue.push_back(v);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }
}

/// Common valency of a regular graph, or `None` if the degrees differ.
pub fn regularity(g: &Graph) -> Option<usize> {
    let k = g.degree(0);
    (1..g.n()).all(|v| g.degree(v) == k).then_some(k)
}

/// Complete graph K_n.
pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("complete graph needs n >= 1".into()));
    }
    let adj = DMatrix::from_fn(n, n, |i, j| if i != j { 1.0 } else { 0.0 });
    Ok(Graph { n, adj })
}

/// Edgeless graph on n vertices.
pub fn empty(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::InvalidSize("empty graph needs n >= 1".into()));
    }
    Ok(Graph {
        n,
        adj: DMatrix::zeros(n, n),
    })
}

/// Cycle C_n, n >= 3.
pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::InvalidSize(format!("cycle needs n >= 3, got {n}")));
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// m vertex-disjoint copies of K_s (the graph mK_s).
pub fn disjoint_copies(m: usize, s: usize) -> Result<Graph> {
    if m == 0 || s == 0 {
        return Err(Error::InvalidSize("disjoint_copies needs m, s >= 1".into()));
    }
    let n = m * s;
    let mut edges = Vec::new();
    for c in 0..m {
        for i in 0..s {
            for j in (i + 1)..s {
                edges.push((c * s + i, c * s + j));
            }
        }
    }
    Graph::from_edges(n, &edges)
}

/// Star K_{1,n}: the cone over the empty graph on n vertices, apex at 0.
pub fn star(n: usize) -> Result<Graph> {
    cone(&empty(n)?)
}

/// Petersen graph as the Kneser graph K(5,2): vertices are the 2-subsets of
/// a 5-set in lexicographic order, adjacent when disjoint.
pub fn petersen() -> Graph {
    let mut subsets = Vec::new();
    for i in 0..5u8 {
        for j in (i + 1)..5 {
            subsets.push((i, j));
        }
    }
    let n = subsets.len();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            let (a, b) = subsets[u];
            let (c, d) = subsets[v];
            if a != c && a != d && b != c && b != d {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("petersen construction is well-formed")
}

/// Complement graph: adjacency J - I - A.
pub fn complement(g: &Graph) -> Graph {
    let n = g.n();
    let adj = DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            0.0
        } else {
            1.0 - g.adj[(i, j)]
        }
    });
    Graph { n, adj }
}

/// Join X + Y: block adjacency [[A, J], [J^T, B]], X's vertices first.
pub fn join(x: &Graph, y: &Graph) -> Graph {
    let (m, n) = (x.n(), y.n());
    let total = m + n;
    let adj = DMatrix::from_fn(total, total, |i, j| {
        if i < m && j < m {
            x.adj[(i, j)]
        } else if i >= m && j >= m {
            y.adj[(i - m, j - m)]
        } else {
            1.0
        }
    });
    Graph { n: total, adj }
}

/// Cone over Y: the join K_1 + Y with the apex at index 0.
pub fn cone(y: &Graph) -> Result<Graph> {
    Ok(join(&empty(1)?, y))
}

/// Cartesian product: (a,b) ~ (a',b') iff a = a' and b ~ b', or b = b' and
/// a ~ a'. Vertex (a, b) maps to index a * |V(y)| + b.
pub fn cartesian_product(x: &Graph, y: &Graph) -> Graph {
    let (m, n) = (x.n(), y.n());
    let total = m * n;
    let adj = DMatrix::from_fn(total, total, |i, j| {
        let (a, b) = (i / n, i % n);
        let (c, d) = (j / n, j % n);
        if (a == c && y.has_edge(b, d)) || (b == d && x.has_edge(a, c)) {
            1.0
        } else {
            0.0
        }
    });
    Graph { n: total, adj }
}
