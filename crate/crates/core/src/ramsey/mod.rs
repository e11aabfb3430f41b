//! Ramsey lower-bound witnesses from circulant two-colourings.
//!
//! A connection set `S1 ⊆ {1..n/2}` and its complement `S2` colour `K_n`:
//! edge `{i, j}` is red when its circular distance lies in `S1` and blue
//! otherwise. The colouring witnesses `R(p, q) > n` when the red graph has no
//! `K_p` and the blue graph has no `K_q`.

mod certificate;

use serde::{Deserialize, Serialize};

use crate::clique::{Budget, CliqueResult, CliqueStatus, Solver};
use crate::error::{Error, Result};
use crate::graph::{build_circulant, complement_set, CirculantGraph};

pub use certificate::{
    check_certificate, emit_certificate, parse_certificate, Certificate, CheckOutcome, CheckReport,
    CliqueRecord, Color, Discrepancy, ToolInfo, FORMAT_VERSION, TOOL_NAME,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Verdict {
    /// Neither colour contains its forbidden clique.
    Verified,
    /// A forbidden clique was found in one of the colours.
    Refuted,
    /// A budget ran out before the question was settled.
    Inconclusive,
}

/// Where a connection set came from when it was derived from residues.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Construction {
    pub prime: u64,
    pub order: u32,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RamseyWitness {
    pub n: usize,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub claimed_p: usize,
    pub claimed_q: usize,
    pub omega_red: CliqueResult,
    pub omega_blue: CliqueResult,
    pub verdict: Verdict,
    pub construction: Option<Construction>,
}

impl RamseyWitness {
    pub fn with_construction(mut self, construction: Construction) -> Self {
        self.construction = Some(construction);
        self
    }

    /// Human-readable claim, e.g. `R(4,4) > 17`.
    pub fn claim(&self) -> String {
        format!("R({},{}) > {}", self.claimed_p, self.claimed_q, self.n)
    }
}

struct Coloring {
    s2: Vec<usize>,
    red: CirculantGraph,
    blue: CirculantGraph,
}

fn coloring(n: usize, s1: &[usize]) -> Result<Coloring> {
    let red = build_circulant(n, s1)?;
    let s2 = complement_set(n, s1)?;
    let blue = build_circulant(n, &s2)?;
    Ok(Coloring { s2, red, blue })
}

/// A completed decision search settles ω, so it is recorded as `Exact`.
fn settle(mut r: CliqueResult) -> CliqueResult {
    if r.status == CliqueStatus::Refuted {
        r.status = CliqueStatus::Exact;
    }
    r
}

/// Checks whether `S1` witnesses `R(p, q) > n`, using decision searches for
/// a red `K_p` and a blue `K_q`.
pub fn verify_witness(
    n: usize,
    s1: &[usize],
    claimed_p: usize,
    claimed_q: usize,
    budget: &Budget,
) -> Result<RamseyWitness> {
    if claimed_p < 2 || claimed_q < 2 {
        return Err(Error::domain(format!(
            "claimed clique sizes must be at least 2, got ({claimed_p}, {claimed_q})"
        )));
    }
    let col = coloring(n, s1)?;
    let solver = Solver::default();
    let (red, blue) = rayon::join(
        || solver.has_clique_of_size_circulant(&col.red, claimed_p, budget),
        || solver.has_clique_of_size_circulant(&col.blue, claimed_q, budget),
    );

    let found = |r: &CliqueResult| r.status == CliqueStatus::DecisionSatisfied;
    let verdict = if found(&red) || found(&blue) {
        Verdict::Refuted
    } else if red.status == CliqueStatus::Refuted && blue.status == CliqueStatus::Refuted {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };

    Ok(RamseyWitness {
        n,
        s1: col.red.connection_set().to_vec(),
        s2: col.s2,
        claimed_p,
        claimed_q,
        omega_red: settle(red),
        omega_blue: settle(blue),
        verdict,
        construction: None,
    })
}

/// Computes both clique numbers and reports the strongest claim they
/// support, `R(ω_red + 1, ω_blue + 1) > n`.
pub fn derive_bound(n: usize, s1: &[usize], budget: &Budget) -> Result<RamseyWitness> {
    let col = coloring(n, s1)?;
    let mut budget = budget.clone();
    budget.target_size = None;
    let solver = Solver::default();
    let (red, blue) = rayon::join(
        || solver.max_clique_circulant(&col.red, &budget),
        || solver.max_clique_circulant(&col.blue, &budget),
    );
    let verdict = if red.status == CliqueStatus::Exact && blue.status == CliqueStatus::Exact {
        Verdict::Verified
    } else {
        Verdict::Inconclusive
    };
    Ok(RamseyWitness {
        n,
        s1: col.red.connection_set().to_vec(),
        s2: col.s2,
        claimed_p: red.best_size + 1,
        claimed_q: blue.best_size + 1,
        omega_red: red,
        omega_blue: blue,
        verdict,
        construction: None,
    })
}

/// Whether the circulants of `s1` and `s2` split the edges of `K_n`: every
/// off-diagonal pair is adjacent in exactly one of them.
pub fn partitions_complete_graph(n: usize, s1: &[usize], s2: &[usize]) -> Result<bool> {
    let a = build_circulant(n, s1)?;
    let b = build_circulant(n, s2)?;
    let (a, b) = (a.graph(), b.graph());
    Ok((0..n).all(|i| {
        a.row(i)
            .iter()
            .zip(b.row(i))
            .enumerate()
            .all(|(w, (x, y))| {
                let lo = w * 64;
                let width = (n - lo).min(64);
                let mut full = if width == 64 {
                    u64::MAX
                } else {
                    (1u64 << width) - 1
                };
                if i / 64 == w {
                    full &= !(1u64 << (i % 64));
                }
                x & y == 0 && x | y == full
            })
    }))
}
