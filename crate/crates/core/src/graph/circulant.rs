use crate::error::{Error, Result};

use super::DenseGraph;

/// The circulant graph `G_n(S)` on `Z_n`: `{i, j}` is an edge iff the
/// circular distance `min((i - j) mod n, (j - i) mod n)` lies in `S`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirculantGraph {
    n: usize,
    connection_set: Vec<usize>,
    graph: DenseGraph,
}

impl CirculantGraph {
    pub fn vertex_count(&self) -> usize {
        self.n
    }

    /// Sorted, deduplicated connection set.
    pub fn connection_set(&self) -> &[usize] {
        &self.connection_set
    }

    pub fn graph(&self) -> &DenseGraph {
        &self.graph
    }

    pub fn into_graph(self) -> DenseGraph {
        self.graph
    }

    /// Circular distance between two vertices of `Z_n`.
    pub fn circular_distance(&self, i: usize, j: usize) -> usize {
        let d = (i + self.n - j) % self.n;
        d.min(self.n - d)
    }
}

impl AsRef<DenseGraph> for CirculantGraph {
    fn as_ref(&self) -> &DenseGraph {
        &self.graph
    }
}

fn normalize(n: usize, s: &[usize]) -> Result<Vec<usize>> {
    if n == 0 {
        return Err(Error::domain("circulant graph needs at least one vertex"));
    }
    let half = n / 2;
    if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > half) {
        return Err(Error::domain(format!(
            "connection set element {bad} is outside 1..={half} for n = {n}"
        )));
    }
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    Ok(set)
}

/// Builds `G_n(S)`. Every element of `S` must lie in `1..=n/2`.
pub fn build_circulant(n: usize, s: &[usize]) -> Result<CirculantGraph> {
    let connection_set = normalize(n, s)?;
    let mut graph = DenseGraph::empty(n);
    for i in 0..n {
        for &d in &connection_set {
            let j = (i + d) % n;
            graph.add_edge(i, j);
        }
    }
    Ok(CirculantGraph {
        n,
        connection_set,
        graph,
    })
}

/// `{1..n/2} \ S`, the connection set of the complementary circulant.
pub fn complement_set(n: usize, s: &[usize]) -> Result<Vec<usize>> {
    let set = normalize(n, s)?;
    Ok((1..=n / 2)
        .filter(|x| set.binary_search(x).is_err())
        .collect())
}
