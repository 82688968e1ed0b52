//! Random regular graphs via the configuration model with rejection.

use rand::seq::SliceRandom;
use rand::Rng;

use super::Graph;
use crate::error::{Error, Result};

/// Uniform-ish random k-regular simple graph on n vertices. Pairs up half
/// edges and rejects pairings with loops or multi-edges; fine for the small
/// instances used here (n <= a few dozen).
pub fn random_regular<R: Rng>(n: usize, k: usize, rng: &mut R) -> Result<Graph> {
    if k >= n || n * k % 2 != 0 {
        return Err(Error::InvalidParameters(format!(
            "no {k}-regular simple graph on {n} vertices"
        )));
    }
    if k == 0 {
        return super::empty(n);
    }
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat(v).take(k)).collect();
    for _ in 0..10_000 {
        stubs.shuffle(rng);
        let mut adj = vec![false; n * n];
        let mut ok = true;
        for pair in stubs.chunks(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u * n + v] {
                ok = false;
                break;
            }
            adj[u * n + v] = true;
            adj[v * n + u] = true;
        }
        if ok {
            let mut edges = Vec::with_capacity(n * k / 2);
            for u in 0..n {
                for v in (u + 1)..n {
                    if adj[u * n + v] {
                        edges.push((u, v));
                    }
                }
            }
            return Graph::from_edges(n, &edges);
        }
    }
    Err(Error::NumericalFailure(format!(
        "pairing model failed to produce a simple {k}-regular graph on {n} vertices"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::regularity;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn produces_regular_graphs() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for (n, k) in [(12, 4), (10, 3), (8, 5), (6, 0)] {
            let g = random_regular(n, k, &mut rng).unwrap();
            assert_eq!(g.n(), n);
            assert_eq!(regularity(&g), Some(k));
        }
        assert!(random_regular(5, 3, &mut rng).is_err()); // odd nk
        assert!(random_regular(4, 4, &mut rng).is_err());
    }
}
