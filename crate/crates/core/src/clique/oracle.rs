//! Reference clique number by maximal-clique enumeration.
//!
//! Bron–Kerbosch with Tomita pivoting over single-word vertex masks. It
//! enumerates every maximal clique and keeps the largest, so it shares
//! nothing with the branch-and-bound solver beyond the input graph.

use std::time::Instant;

use crate::error::{Error, Result};
use crate::graph::DenseGraph;

use super::{CliqueResult, CliqueStatus, VertexOrdering};

pub const ORACLE_MAX_VERTICES: usize = 64;

struct Enumeration {
    nbr: Vec<u64>,
    best: u64,
    nodes: u64,
}

impl Enumeration {
    fn extend(&mut self, r: u64, mut p: u64, mut x: u64) {
        self.nodes += 1;
        if p == 0 {
            if x == 0 && r.count_ones() > self.best.count_ones() {
                self.best = r;
            }
            return;
        }
        let px = p | x;
        let pivot = bits(px)
            .max_by_key(|&u| (p & self.nbr[u]).count_ones())
            .expect("p | x is non-empty");
        for v in bits(p & !self.nbr[pivot]) {
            let bit = 1u64 << v;
            self.extend(r | bit, p & self.nbr[v], x & self.nbr[v]);
            p &= !bit;
            x |= bit;
        }
    }
}

fn bits(mut m: u64) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

/// Exact clique number of a graph with at most 64 vertices.
pub fn brute_force_max_clique(g: &DenseGraph) -> Result<CliqueResult> {
    let n = g.vertex_count();
    if n > ORACLE_MAX_VERTICES {
        return Err(Error::Size(format!(
            "brute-force oracle accepts at most {ORACLE_MAX_VERTICES} vertices, got {n}"
        )));
    }
    let start = Instant::now();
    let nbr: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).fold(0u64, |m, u| m | 1 << u))
        .collect();
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut e = Enumeration {
        nbr,
        best: 0,
        nodes: 0,
    };
    e.extend(0, all, 0);
    let witness: Vec<usize> = bits(e.best).collect();
    Ok(CliqueResult {
        best_size: witness.len(),
        witness,
        status: CliqueStatus::Exact,
        nodes_explored: e.nodes,
        elapsed: start.elapsed(),
        ordering: VertexOrdering::Natural,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_circulant;

    fn omega(g: &DenseGraph) -> usize {
        let r = brute_force_max_clique(g).unwrap();
        assert!(g.is_clique(&r.witness));
        r.best_size
    }

    #[test]
    fn oracle_examples() {
        let g = build_circulant(8, &[2, 3]).unwrap().into_graph();
        assert_eq!(omega(&g), 3);
        assert!(g.is_clique(&[0, 2, 5]));
        assert_eq!(omega(&DenseGraph::complete(7)), 7);
        assert_eq!(omega(&DenseGraph::from_edges(3, [(0, 1), (1, 2)])), 2);
        assert_eq!(omega(&DenseGraph::empty(5)), 1);
        assert_eq!(omega(&DenseGraph::empty(0)), 0);
        assert_eq!(omega(&DenseGraph::complete(64)), 64);
    }

    #[test]
    fn oracle_refuses_large_graphs() {
        assert!(matches!(
            brute_force_max_clique(&DenseGraph::empty(65)),
            Err(Error::Size(_))
        ));
    }

    /// Exhaustive subset check on small graphs, independent of Bron–Kerbosch.
    #[test]
    fn oracle_matches_subset_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..60 {
            let n = rng.gen_range(1..=12);
            let density: f64 = rng.gen_range(0.1..0.9);
            let mut g = DenseGraph::empty(n);
            for i in 0..n {
                for j in i + 1..n {
                    if rng.gen_bool(density) {
                        g.add_edge(i, j);
                    }
                }
            }
            let best = (0u32..1 << n)
                .filter(|&m| {
                    let vs: Vec<usize> = (0..n).filter(|&v| m >> v & 1 == 1).collect();
                    g.is_clique(&vs)
                })
                .map(|m| m.count_ones() as usize)
                .max()
                .unwrap();
            assert_eq!(omega(&g), best);
        }
    }
}
