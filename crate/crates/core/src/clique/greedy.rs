use crate::graph::DenseGraph;

/// A maximal clique built greedily: start from all vertices and repeatedly
/// add the candidate with the most neighbours among the remaining
/// candidates, breaking ties by lower index. Deterministic for a given graph.
pub fn greedy_clique(g: &DenseGraph) -> Vec<usize> {
    let n = g.vertex_count();
    let mut cand = vec![true; n];
    let mut remaining = n;
    let mut clique = Vec::new();
    while remaining > 0 {
        let (v, _) = (0..n)
            .filter(|&v| cand[v])
            .map(|v| (v, g.neighbors(v).filter(|&u| cand[u]).count()))
            .fold((usize::MAX, 0), |best, (v, d)| {
                if best.0 == usize::MAX || d > best.1 {
                    (v, d)
                } else {
                    best
                }
            });
        clique.push(v);
        for (u, c) in cand.iter_mut().enumerate() {
            if *c && (u == v || !g.has_edge(v, u)) {
                *c = false;
                remaining -= 1;
            }
        }
    }
    clique.sort_unstable();
    clique
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_circulant;

    #[test]
    fn complete_graph() {
        assert_eq!(greedy_clique(&DenseGraph::complete(5)), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn empty_graph_gives_one_vertex() {
        assert_eq!(greedy_clique(&DenseGraph::empty(4)), vec![0]);
        assert!(greedy_clique(&DenseGraph::empty(0)).is_empty());
    }

    #[test]
    fn result_is_a_maximal_clique() {
        let g = build_circulant(8, &[2, 3]).unwrap().into_graph();
        let c = greedy_clique(&g);
        assert!(c.len() >= 2);
        assert!(g.is_clique(&c));
        for v in 0..8 {
            if !c.contains(&v) {
                assert!(c.iter().any(|&u| !g.has_edge(u, v)));
            }
        }
    }

    #[test]
    fn tie_break_prefers_lower_index() {
        // two disjoint edges; both endpoints of each have degree 1
        let g = DenseGraph::from_edges(4, [(2, 3), (0, 1)]);
        assert_eq!(greedy_clique(&g), vec![0, 1]);
    }
}
