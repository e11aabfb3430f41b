//! Östergård-style exact maximum clique search over bit-packed rows.
//!
//! Vertices are relabelled `0..n` by descending degree (ties by lower
//! original index). For `i = n-1` down to `0` the engine computes
//! `c[i] = ω(G[{i..n-1}])` by searching for a clique of size `c[i+1] + 1`
//! that contains `i` and otherwise uses only vertices above `i`. Because
//! `c[i] <= c[i+1] + 1`, each level stops at the first such clique. Inside a
//! level a branch is cut when the clique size plus any of the following is
//! not above the incumbent `c[i+1]`: the candidate count, `c[j]` for the
//! lowest candidate `j`, or the number of colours of a greedy colouring of
//! the candidates.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use rayon::prelude::*;

use crate::graph::{words_for, DenseGraph, WORD_BITS};

use super::Budget;

/// Time and cancellation are polled once per this many nodes.
const POLL_INTERVAL: u64 = 1 << 14;
/// Progress is logged once per this many nodes.
const LOG_INTERVAL: u64 = 1 << 24;
/// Root candidate sets smaller than this are searched sequentially.
const PARALLEL_MIN_CANDIDATES: usize = 40;

#[inline]
fn popcount(words: &[u64]) -> usize {
    words.iter().map(|w| w.count_ones() as usize).sum()
}

#[inline]
fn first_bit(words: &[u64]) -> Option<usize> {
    words
        .iter()
        .position(|&w| w != 0)
        .map(|i| i * WORD_BITS + words[i].trailing_zeros() as usize)
}

#[inline]
fn clear_bit(words: &mut [u64], v: usize) {
    words[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
}

/// Shared search control: node counting, budget and cancellation.
pub(crate) struct Control<'b> {
    budget: &'b Budget,
    start: Instant,
    nodes: AtomicU64,
    aborted: AtomicBool,
}

impl<'b> Control<'b> {
    pub(crate) fn new(budget: &'b Budget) -> Self {
        Control {
            budget,
            start: Instant::now(),
            nodes: AtomicU64::new(0),
            aborted: AtomicBool::new(false),
        }
    }

    pub(crate) fn nodes(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    pub(crate) fn start(&self) -> Instant {
        self.start
    }

    pub(crate) fn aborted(&self) -> bool {
        self.aborted.load(Ordering::Relaxed)
    }

    /// Accounts for one node expansion; false once the budget is exhausted.
    #[inline]
    fn tick(&self) -> bool {
        let k = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(max) = self.budget.max_nodes {
            if k > max {
                self.aborted.store(true, Ordering::Relaxed);
                return false;
            }
        }
        if k.is_multiple_of(POLL_INTERVAL) {
            if k.is_multiple_of(LOG_INTERVAL) {
                log::info!("nodes explored: {k}");
            }
            return self.poll();
        }
        !self.aborted()
    }

    /// Checks wall clock and cancellation.
    pub(crate) fn poll(&self) -> bool {
        if self.aborted() {
            return false;
        }
        let expired = self
            .budget
            .max_duration
            .is_some_and(|d| self.start.elapsed() >= d);
        if expired || self.budget.is_cancelled() {
            self.aborted.store(true, Ordering::Relaxed);
            return false;
        }
        true
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Flow {
    Continue,
    Found,
    Abort,
}

/// How a full run of the engine ended.
pub(crate) enum Outcome {
    /// Every level completed; the table is exact.
    Complete,
    /// A level reached the target size.
    TargetReached,
    /// Budget or cancellation stopped the search.
    Aborted,
}

pub(crate) struct EngineResult {
    pub outcome: Outcome,
    /// Size of the largest clique proven or found so far.
    pub best_size: usize,
    /// Clique of `best_size` in original labels (unsorted).
    pub witness: Vec<usize>,
    /// `c[i]` for completed levels, indexed by relabelled vertex; entry `n` is 0.
    pub table: Vec<usize>,
}

pub(crate) struct Engine {
    n: usize,
    words: usize,
    /// Rows in relabelled order.
    adj: Vec<u64>,
    /// `order[new] = original`.
    order: Vec<usize>,
}

impl Engine {
    pub(crate) fn new(g: &DenseGraph) -> Self {
        let n = g.vertex_count();
        let mut order: Vec<usize> = (0..n).collect();
        let degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
        order.sort_by(|&a, &b| degree[b].cmp(&degree[a]).then(a.cmp(&b)));
        let mut pos = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            pos[old] = new;
        }
        let words = words_for(n);
        let mut adj = vec![0u64; n * words];
        for (new, &old) in order.iter().enumerate() {
            for nb in g.neighbors(old) {
                let p = pos[nb];
                adj[new * words + p / WORD_BITS] |= 1 << (p % WORD_BITS);
            }
        }
        Engine {
            n,
            words,
            adj,
            order,
        }
    }

    pub(crate) fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    fn row(&self, v: usize) -> &[u64] {
        &self.adj[v * self.words..(v + 1) * self.words]
    }

    /// Candidates of level `i`: neighbours of `i` above `i`.
    fn level_candidates(&self, i: usize, out: &mut [u64]) {
        out.copy_from_slice(self.row(i));
        let w = i / WORD_BITS;
        for x in &mut out[..w] {
            *x = 0;
        }
        let b = i % WORD_BITS;
        out[w] &= if b == WORD_BITS - 1 {
            0
        } else {
            !0u64 << (b + 1)
        };
    }

    pub(crate) fn run(
        &self,
        ctl: &Control<'_>,
        target: Option<usize>,
        parallel: bool,
    ) -> EngineResult {
        let n = self.n;
        let mut table = vec![0usize; n + 1];
        let mut witness: Vec<usize> = Vec::new();
        let mut root = vec![0u64; self.words];

        for i in (0..n).rev() {
            if !ctl.poll() {
                return self.finish(Outcome::Aborted, table, witness);
            }
            let cur_best = table[i + 1];
            self.level_candidates(i, &mut root);
            let level = Level {
                engine: self,
                table: &table,
                ctl,
                found: AtomicBool::new(false),
                witness: Mutex::new(None),
                cur_best,
            };
            let flow = if parallel
                && rayon::current_num_threads() > 1
                && popcount(&root) >= PARALLEL_MIN_CANDIDATES
            {
                level.search_parallel(i, &root)
            } else {
                level.search_sequential(i, &root)
            };
            let found = level.witness.into_inner().expect("witness lock poisoned");
            match (flow, found) {
                (Flow::Abort, _) => return self.finish(Outcome::Aborted, table, witness),
                (Flow::Found, Some(clique)) => {
                    table[i] = cur_best + 1;
                    witness = clique;
                }
                (_, _) => table[i] = cur_best,
            }
            if target.is_some_and(|t| table[i] >= t) {
                return self.finish(Outcome::TargetReached, table, witness);
            }
        }
        self.finish(Outcome::Complete, table, witness)
    }

    fn finish(&self, outcome: Outcome, table: Vec<usize>, witness: Vec<usize>) -> EngineResult {
        let witness: Vec<usize> = witness.iter().map(|&v| self.order[v]).collect();
        EngineResult {
            outcome,
            best_size: witness.len(),
            witness,
            table,
        }
    }
}

/// One level of the outer loop: find a clique of size `cur_best + 1` whose
/// lowest vertex is the level's root.
struct Level<'a, 'b> {
    engine: &'a Engine,
    table: &'a [usize],
    ctl: &'a Control<'b>,
    found: AtomicBool,
    witness: Mutex<Option<Vec<usize>>>,
    cur_best: usize,
}

impl Level<'_, '_> {
    fn worker(&self, prefix: &[usize]) -> Worker<'_, '_, '_> {
        let w = self.engine.words;
        Worker {
            level: self,
            clique: prefix.to_vec(),
            scratch: vec![0u64; (self.engine.n + 2) * w],
            uncolored: vec![0u64; w],
            class: vec![0u64; w],
        }
    }

    fn search_sequential(&self, root: usize, cand: &[u64]) -> Flow {
        let mut worker = self.worker(&[root]);
        worker.scratch[..cand.len()].copy_from_slice(cand);
        worker.expand(0, 1)
    }

    /// Splits the root into its first-level branches, in the same order and
    /// with the same cut-offs as the sequential loop, and searches them
    /// concurrently. Only the level's found flag is shared.
    fn search_parallel(&self, root: usize, cand: &[u64]) -> Flow {
        let eng = self.engine;
        let mut probe = self.worker(&[root]);
        if !self.ctl.tick() {
            return Flow::Abort;
        }
        if self.cur_best == 0 {
            probe.record();
            return Flow::Found;
        }
        let mut remaining = cand.to_vec();
        let mut count = popcount(&remaining);
        let needed = self.cur_best;
        if count < needed
            || color_bound(
                eng,
                &remaining,
                &mut probe.uncolored,
                &mut probe.class,
                needed,
            ) < needed
        {
            return Flow::Continue;
        }
        let mut branches = Vec::new();
        while let Some(j) = first_bit(&remaining) {
            if count < self.cur_best || self.table[j] < self.cur_best {
                break;
            }
            clear_bit(&mut remaining, j);
            count -= 1;
            let next: Vec<u64> = remaining
                .iter()
                .zip(eng.row(j))
                .map(|(a, b)| a & b)
                .collect();
            branches.push((j, next));
        }

        let flows: Vec<Flow> = branches
            .par_iter()
            .map_init(
                || self.worker(&[root]),
                |worker, (j, next)| {
                    if self.found.load(Ordering::Relaxed) {
                        return Flow::Found;
                    }
                    worker.clique.truncate(1);
                    worker.clique.push(*j);
                    worker.scratch[..next.len()].copy_from_slice(next);
                    worker.expand(0, 2)
                },
            )
            .collect();

        if self.found.load(Ordering::Relaxed) {
            Flow::Found
        } else if flows.contains(&Flow::Abort) {
            Flow::Abort
        } else {
            Flow::Continue
        }
    }
}

struct Worker<'l, 'a, 'b> {
    level: &'l Level<'a, 'b>,
    clique: Vec<usize>,
    /// Candidate sets by depth, `words` each.
    scratch: Vec<u64>,
    uncolored: Vec<u64>,
    class: Vec<u64>,
}

impl Worker<'_, '_, '_> {
    fn record(&self) {
        self.level.found.store(true, Ordering::Relaxed);
        let mut slot = self.level.witness.lock().expect("witness lock poisoned");
        if slot.is_none() {
            *slot = Some(self.clique.clone());
        }
    }

    /// Explores the candidate set stored at `depth` with `size` vertices
    /// already in the clique.
    fn expand(&mut self, depth: usize, size: usize) -> Flow {
        let level = self.level;
        let eng = level.engine;
        let w = eng.words;
        if !level.ctl.tick() {
            return Flow::Abort;
        }
        if level.found.load(Ordering::Relaxed) {
            return Flow::Found;
        }
        if size > level.cur_best {
            self.record();
            return Flow::Found;
        }
        let base = depth * w;
        let mut count = popcount(&self.scratch[base..base + w]);
        let needed = level.cur_best + 1 - size;
        if count < needed {
            return Flow::Continue;
        }
        if needed > 1 {
            let cand = &self.scratch[base..base + w];
            if color_bound(eng, cand, &mut self.uncolored, &mut self.class, needed) < needed {
                return Flow::Continue;
            }
        }
        loop {
            if count < needed {
                return Flow::Continue;
            }
            let Some(j) = first_bit(&self.scratch[base..base + w]) else {
                return Flow::Continue;
            };
            if size + level.table[j] <= level.cur_best {
                return Flow::Continue;
            }
            clear_bit(&mut self.scratch[base..base + w], j);
            count -= 1;
            let (cur, next) = self.scratch.split_at_mut(base + w);
            let row = eng.row(j);
            for ((dst, &src), &r) in next[..w].iter_mut().zip(&cur[base..]).zip(row) {
                *dst = src & r;
            }
            self.clique.push(j);
            let flow = self.expand(depth + 1, size + 1);
            self.clique.pop();
            if flow != Flow::Continue {
                return flow;
            }
        }
    }
}

/// Number of colour classes of a sequential greedy colouring of `cand`,
/// stopping early once `limit` classes are reached. Each class is an
/// independent set, so a clique meets each class at most once.
fn color_bound(
    eng: &Engine,
    cand: &[u64],
    uncolored: &mut [u64],
    class: &mut [u64],
    limit: usize,
) -> usize {
    uncolored.copy_from_slice(cand);
    let mut classes = 0;
    while uncolored.iter().any(|&w| w != 0) {
        classes += 1;
        if classes >= limit {
            return classes;
        }
        class.copy_from_slice(uncolored);
        while let Some(v) = first_bit(class) {
            clear_bit(uncolored, v);
            for (q, r) in class.iter_mut().zip(eng.row(v)) {
                *q &= !r;
            }
            clear_bit(class, v);
        }
    }
    classes
}
