//! Bit-packed undirected graphs.
//!
//! Every graph stores `n` adjacency rows of `ceil(n / 64)` machine words in a
//! single contiguous buffer. Vertex labels are `0..n`.

mod circulant;
pub mod dimacs;

pub use circulant::{build_circulant, complement_set, CirculantGraph};
pub use dimacs::{export_dimacs, import_dimacs, parse_dimacs, to_dimacs_string};

pub(crate) const WORD_BITS: usize = 64;

#[inline]
pub(crate) fn words_for(n: usize) -> usize {
    n.div_ceil(WORD_BITS)
}

/// Simple undirected graph with symmetric, loop-free adjacency.
#[derive(Clone, PartialEq, Eq)]
pub struct DenseGraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl DenseGraph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        let words = words_for(n);
        DenseGraph {
            n,
            words,
            bits: vec![0; n * words],
        }
    }

    pub fn complete(n: usize) -> Self {
        complement(&DenseGraph::empty(n))
    }

    /// Builds a graph from an edge list. Loops are rejected by panicking,
    /// duplicate edges are harmless.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut g = DenseGraph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v);
        }
        g
    }

    #[inline]
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Words per adjacency row.
    #[inline]
    pub fn row_words(&self) -> usize {
        self.words
    }

    /// Adjacency row of `v` as packed words; bit `j` of the row is set iff
    /// `{v, j}` is an edge.
    #[inline]
    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        assert!(u < self.n && v < self.n, "vertex out of range");
        assert_ne!(u, v, "loops are not allowed");
        self.bits[u * self.words + v / WORD_BITS] |= 1 << (v % WORD_BITS);
        self.bits[v * self.words + u / WORD_BITS] |= 1 << (u % WORD_BITS);
    }

    pub fn degree(&self, v: usize) -> usize {
        self.row(v).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn edge_count(&self) -> usize {
        self.bits
            .iter()
            .map(|w| w.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        BitIter::new(self.row(v))
    }

    /// Edges `(i, j)` with `i < j`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .filter(move |&j| j > i)
                .map(move |j| (i, j))
        })
    }

    /// Whether every pair of the given (distinct) vertices is adjacent.
    pub fn is_clique(&self, vertices: &[usize]) -> bool {
        vertices.iter().all(|&v| v < self.n)
            && vertices.iter().enumerate().all(|(a, &u)| {
                vertices[a + 1..]
                    .iter()
                    .all(|&v| u != v && self.has_edge(u, v))
            })
    }

    /// Subgraph induced by `vertices`; vertex `i` of the result is `vertices[i]`.
    pub fn induced_subgraph(&self, vertices: &[usize]) -> DenseGraph {
        let mut sub = DenseGraph::empty(vertices.len());
        for (a, &u) in vertices.iter().enumerate() {
            for (b, &v) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(u, v) {
                    sub.add_edge(a, b);
                }
            }
        }
        sub
    }

    /// Checks the structural invariants: zero diagonal, symmetry and no
    /// stray bits past column `n`.
    pub fn is_well_formed(&self) -> bool {
        let tail_mask = match self.n % WORD_BITS {
            0 => u64::MAX,
            r => (1u64 << r) - 1,
        };
        (0..self.n).all(|i| {
            let row = self.row(i);
            !self.has_edge(i, i)
                && row.last().is_none_or(|w| w & !tail_mask == 0)
                && self.neighbors(i).all(|j| self.has_edge(j, i))
        })
    }
}

impl std::fmt::Debug for DenseGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("DenseGraph")
            .field("n", &self.n)
            .field("edges", &self.edge_count())
            .finish()
    }
}

/// The complement graph: every off-diagonal adjacency bit inverted.
pub fn complement(g: &DenseGraph) -> DenseGraph {
    let mut out = DenseGraph::empty(g.n);
    for i in 0..g.n {
        let src = g.row(i);
        let dst = &mut out.bits[i * g.words..(i + 1) * g.words];
        for (w, (d, s)) in dst.iter_mut().zip(src).enumerate() {
            let lo = w * WORD_BITS;
            let width = (g.n - lo).min(WORD_BITS);
            let valid = if width == WORD_BITS {
                u64::MAX
            } else {
                (1u64 << width) - 1
            };
            *d = !s & valid;
        }
        dst[i / WORD_BITS] &= !(1u64 << (i % WORD_BITS));
    }
    out
}

/// Ascending iterator over the set bits of a packed word slice.
pub(crate) struct BitIter<'a> {
    words: &'a [u64],
    idx: usize,
    cur: u64,
}

impl<'a> BitIter<'a> {
    pub(crate) fn new(words: &'a [u64]) -> Self {
        BitIter {
            words,
            idx: 0,
            cur: words.first().copied().unwrap_or(0),
        }
    }
}

impl Iterator for BitIter<'_> {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        loop {
            if self.cur != 0 {
                let b = self.cur.trailing_zeros() as usize;
                self.cur &= self.cur - 1;
                return Some(self.idx * WORD_BITS + b);
            }
            self.idx += 1;
            if self.idx >= self.words.len() {
                return None;
            }
            self.cur = self.words[self.idx];
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_examples() {
        let k5 = DenseGraph::complete(5);
        assert_eq!(k5.edge_count(), 10);
        assert_eq!(complement(&k5), DenseGraph::empty(5));
        assert_eq!(complement(&DenseGraph::empty(3)), DenseGraph::complete(3));
        assert!(k5.is_well_formed());
    }

    #[test]
    fn complement_across_word_boundary() {
        for n in [63, 64, 65, 128, 130] {
            let g = DenseGraph::from_edges(n, (0..n - 1).map(|i| (i, i + 1)));
            let c = complement(&g);
            assert!(c.is_well_formed());
            assert_eq!(c.edge_count(), n * (n - 1) / 2 - (n - 1));
            assert_eq!(complement(&c), g);
        }
    }

    #[test]
    fn clique_check_and_induced_subgraph() {
        let g = DenseGraph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]);
        assert!(g.is_clique(&[0, 1, 2]));
        assert!(!g.is_clique(&[0, 1, 3]));
        assert!(!g.is_clique(&[0, 0]));
        assert!(!g.is_clique(&[0, 9]));
        assert!(g.is_clique(&[]));
        let sub = g.induced_subgraph(&[2, 3, 0]);
        assert!(sub.has_edge(0, 1) && sub.has_edge(0, 2) && !sub.has_edge(1, 2));
    }

    #[test]
    fn edges_are_ordered() {
        let g = DenseGraph::from_edges(3, [(2, 1), (1, 0), (0, 2)]);
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (0, 2), (1, 2)]);
    }
}
