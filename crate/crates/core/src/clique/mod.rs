//! Exact maximum clique computation.
//!
//! [`max_clique`] and [`has_clique_of_size`] run an Östergård-style
//! branch-and-bound search: a table of clique numbers of vertex-order
//! suffixes, incumbent pruning and a greedy colouring bound.
//! [`brute_force_max_clique`] is an independent Bron–Kerbosch enumeration for
//! small graphs and is used to cross-check the solver.

mod engine;
mod greedy;
mod oracle;

use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Arc;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::graph::{complement, CirculantGraph, DenseGraph};

use engine::{Control, Engine, Outcome};

pub use greedy::greedy_clique;
pub use oracle::{brute_force_max_clique, ORACLE_MAX_VERTICES};

/// How a clique search ended.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CliqueStatus {
    /// The search completed; `best_size` is the clique number.
    Exact,
    /// A budget ran out; `best_size` is only a lower bound.
    LowerBoundOnly,
    /// A clique of the requested size was found.
    DecisionSatisfied,
    /// The search completed without finding a clique of the requested size.
    Refuted,
}

/// Vertex order used by the search, recorded for reproducibility.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum VertexOrdering {
    /// Descending degree, ties broken by lower index.
    DegreeDescending,
    /// Input labels as given.
    Natural,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueResult {
    pub best_size: usize,
    /// Sorted clique of `best_size` vertices.
    pub witness: Vec<usize>,
    pub status: CliqueStatus,
    pub nodes_explored: u64,
    pub elapsed: Duration,
    pub ordering: VertexOrdering,
}

impl CliqueResult {
    /// Whether the search ran to completion, so `best_size` is ω.
    pub fn is_complete(&self) -> bool {
        matches!(self.status, CliqueStatus::Exact | CliqueStatus::Refuted)
    }
}

/// Resource limits for a search. Unset fields are unbounded.
#[derive(Clone, Debug, Default, Serialize, Deserialize)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    #[serde(rename = "max_duration_ms", with = "duration_ms")]
    pub max_duration: Option<Duration>,
    /// Stop as soon as a clique of this size is found.
    pub target_size: Option<usize>,
    #[serde(skip)]
    cancel: Option<Arc<AtomicBool>>,
}

impl PartialEq for Budget {
    fn eq(&self, other: &Self) -> bool {
        self.max_nodes == other.max_nodes
            && self.max_duration == other.max_duration
            && self.target_size == other.target_size
    }
}

impl Budget {
    pub fn unbounded() -> Self {
        Budget::default()
    }

    pub fn with_max_nodes(mut self, nodes: u64) -> Self {
        self.max_nodes = Some(nodes);
        self
    }

    pub fn with_max_duration(mut self, d: Duration) -> Self {
        self.max_duration = Some(d);
        self
    }

    pub fn with_target_size(mut self, t: usize) -> Self {
        self.target_size = Some(t);
        self
    }

    /// Attaches a flag that aborts the search when set, e.g. from a signal
    /// handler. The search then reports `LowerBoundOnly`.
    pub fn with_cancel_flag(mut self, flag: Arc<AtomicBool>) -> Self {
        self.cancel = Some(flag);
        self
    }

    pub fn is_cancelled(&self) -> bool {
        self.cancel
            .as_ref()
            .is_some_and(|f| f.load(Ordering::Relaxed))
    }
}

mod duration_ms {
    use std::time::Duration;

    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(d: &Option<Duration>, s: S) -> Result<S::Ok, S::Error> {
        match d {
            Some(d) => s.serialize_some(&(d.as_millis() as u64)),
            None => s.serialize_none(),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Duration>, D::Error> {
        Ok(Option::<u64>::deserialize(d)?.map(Duration::from_millis))
    }
}

/// Solver configuration.
#[derive(Clone, Copy, Debug)]
pub struct Solver {
    parallel: bool,
}

impl Default for Solver {
    fn default() -> Self {
        Solver { parallel: true }
    }
}

impl Solver {
    pub fn sequential() -> Self {
        Solver { parallel: false }
    }

    /// Splits large levels across the current rayon pool. The clique number
    /// is the same either way; the witness may differ.
    pub fn parallel() -> Self {
        Solver { parallel: true }
    }

    pub fn max_clique(&self, g: &DenseGraph, budget: &Budget) -> CliqueResult {
        let ctl = Control::new(budget);
        let seed = greedy_clique(g);
        if let Some(t) = budget.target_size {
            if seed.len() >= t {
                return finish(seed, CliqueStatus::DecisionSatisfied, &ctl);
            }
        }
        let res = Engine::new(g).run(&ctl, budget.target_size, self.parallel);
        let best = if res.best_size >= seed.len() {
            res.witness
        } else {
            seed
        };
        let status = match res.outcome {
            Outcome::Complete => CliqueStatus::Exact,
            Outcome::TargetReached => CliqueStatus::DecisionSatisfied,
            Outcome::Aborted => CliqueStatus::LowerBoundOnly,
        };
        finish(best, status, &ctl)
    }

    pub fn has_clique_of_size(&self, g: &DenseGraph, t: usize, budget: &Budget) -> CliqueResult {
        let budget = budget.clone().with_target_size(t);
        decision(self.max_clique(g, &budget), t)
    }

    /// `ω` of a circulant graph via the clique number of the neighbourhood
    /// of vertex 0. Circulants are vertex-transitive, so some maximum clique
    /// contains vertex 0.
    pub fn max_clique_circulant(&self, g: &CirculantGraph, budget: &Budget) -> CliqueResult {
        let n = g.vertex_count();
        if budget.target_size.is_some_and(|t| t <= 1) {
            return CliqueResult {
                best_size: 1,
                witness: vec![0],
                status: CliqueStatus::DecisionSatisfied,
                nodes_explored: 0,
                elapsed: Duration::ZERO,
                ordering: VertexOrdering::DegreeDescending,
            };
        }
        debug_assert!(n >= 1);
        let nbrs: Vec<usize> = g.graph().neighbors(0).collect();
        let sub = g.graph().induced_subgraph(&nbrs);
        let mut sub_budget = budget.clone();
        sub_budget.target_size = budget.target_size.map(|t| t - 1);
        let mut res = self.max_clique(&sub, &sub_budget);
        let mut witness: Vec<usize> = std::iter::once(0)
            .chain(res.witness.iter().map(|&v| nbrs[v]))
            .collect();
        witness.sort_unstable();
        res.best_size += 1;
        res.witness = witness;
        res.nodes_explored += 1;
        res
    }

    pub fn has_clique_of_size_circulant(
        &self,
        g: &CirculantGraph,
        t: usize,
        budget: &Budget,
    ) -> CliqueResult {
        let budget = budget.clone().with_target_size(t);
        decision(self.max_clique_circulant(g, &budget), t)
    }
}

fn finish(mut witness: Vec<usize>, status: CliqueStatus, ctl: &Control<'_>) -> CliqueResult {
    witness.sort_unstable();
    CliqueResult {
        best_size: witness.len(),
        witness,
        status,
        nodes_explored: ctl.nodes(),
        elapsed: ctl.start().elapsed(),
        ordering: VertexOrdering::DegreeDescending,
    }
}

/// Maps a target-size search onto decision statuses and trims a satisfying
/// witness to exactly `t` vertices.
fn decision(mut res: CliqueResult, t: usize) -> CliqueResult {
    res.status = match res.status {
        CliqueStatus::DecisionSatisfied => {
            res.witness.truncate(t);
            res.best_size = t;
            CliqueStatus::DecisionSatisfied
        }
        CliqueStatus::Exact => CliqueStatus::Refuted,
        other => other,
    };
    res
}

/// Clique number of `g` with a maximum clique as witness, or the best
/// clique found before the budget ran out.
pub fn max_clique(g: &DenseGraph, budget: &Budget) -> CliqueResult {
    Solver::default().max_clique(g, budget)
}

/// Searches for a clique of exactly `t` vertices. On `Refuted` the search
/// was exhaustive and `best_size` is the clique number.
pub fn has_clique_of_size(g: &DenseGraph, t: usize, budget: &Budget) -> CliqueResult {
    Solver::default().has_clique_of_size(g, t, budget)
}

pub fn max_clique_circulant(g: &CirculantGraph, budget: &Budget) -> CliqueResult {
    Solver::default().max_clique_circulant(g, budget)
}

pub fn has_clique_of_size_circulant(g: &CirculantGraph, t: usize, budget: &Budget) -> CliqueResult {
    Solver::default().has_clique_of_size_circulant(g, t, budget)
}

/// Independence number of `g`, i.e. the clique number of its complement.
/// The witness is an independent set of `g`.
pub fn independence_number(g: &DenseGraph, budget: &Budget) -> CliqueResult {
    max_clique(&complement(g), budget)
}

/// The solver's suffix table `c[i] = ω(G[{v_i..v_n}])` in solver order,
/// followed by a trailing 0. Exposed for tests of the search invariants.
#[doc(hidden)]
pub fn suffix_clique_table(g: &DenseGraph) -> (Vec<usize>, Vec<usize>) {
    let budget = Budget::unbounded();
    let ctl = Control::new(&budget);
    let engine = Engine::new(g);
    let res = engine.run(&ctl, None, false);
    (res.table, engine.order().to_vec())
}
