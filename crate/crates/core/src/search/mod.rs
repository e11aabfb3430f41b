//! Sweeps over primes and residue orders, deriving the Ramsey bound of each
//! residue colouring and comparing it with a table of known bounds.

mod bounds;

use std::fmt;
use std::io::Write;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clique::Budget;
use crate::ramsey::{derive_bound, Verdict};
use crate::residue::{gcd, is_prime, kth_power_residues, negation_closed};

pub use bounds::{load_known_bounds, KnownBoundsTable};

/// Residue orders the sweep accepts.
pub const ORDER_RANGE: std::ops::RangeInclusive<u32> = 2..=8;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepParams {
    pub max_n: u64,
    pub orders: Vec<u32>,
    /// Applied to each clique search separately.
    pub budget: Budget,
}

/// A claim `R(p, q) > n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub p: usize,
    pub q: usize,
    pub n: usize,
}

impl fmt::Display for Claim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "R({},{}) > {}", self.p, self.q, self.n)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SkipReason {
    /// `gcd(k, p - 1) = 1`: every unit is a residue.
    #[serde(rename = "degenerate")]
    Degenerate,
    /// `-1` is not a k-th power residue.
    #[serde(rename = "not negation-closed")]
    NotNegationClosed,
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SkipReason::Degenerate => "degenerate",
            SkipReason::NotNegationClosed => "not negation-closed",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum RowStatus {
    Skipped,
    Verified,
    Inconclusive,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Comparison {
    Improves,
    Ties,
    Worse,
    Unknown,
}

impl Comparison {
    /// Compares a derived `R(p, q) > n` with the table's bound for `(p, q)`.
    pub fn of(claim: &Claim, table: &KnownBoundsTable) -> (Comparison, Option<usize>) {
        match table.get(claim.p, claim.q) {
            None => (Comparison::Unknown, None),
            Some(known) => {
                let c = match claim.n.cmp(&known) {
                    std::cmp::Ordering::Greater => Comparison::Improves,
                    std::cmp::Ordering::Equal => Comparison::Ties,
                    std::cmp::Ordering::Less => Comparison::Worse,
                };
                (c, Some(known))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowStats {
    pub red_nodes: u64,
    pub blue_nodes: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepRow {
    pub prime: u64,
    pub order: u32,
    pub effective_index: u64,
    pub negation_closed: bool,
    pub status: RowStatus,
    pub skip_reason: Option<SkipReason>,
    /// Present only when both clique numbers are exact.
    pub claim: Option<Claim>,
    /// Clique numbers, or lower bounds when inconclusive.
    pub omega_red: Option<usize>,
    pub omega_blue: Option<usize>,
    pub known_bound: Option<usize>,
    pub comparison: Comparison,
    pub stats: Option<RowStats>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub parameters: SweepParams,
    pub rows: Vec<SweepRow>,
}

impl SweepReport {
    pub fn improvements(&self) -> impl Iterator<Item = &SweepRow> {
        self.rows
            .iter()
            .filter(|r| r.comparison == Comparison::Improves)
    }

    pub fn row(&self, prime: u64, order: u32) -> Option<&SweepRow> {
        self.rows
            .iter()
            .find(|r| r.prime == prime && r.order == order)
    }
}

fn sweep_row(p: u64, k: u32, budget: &Budget, bounds: &KnownBoundsTable) -> SweepRow {
    let d = gcd(k as u64, p - 1);
    let closed = negation_closed(p, k);
    let mut row = SweepRow {
        prime: p,
        order: k,
        effective_index: d,
        negation_closed: closed,
        status: RowStatus::Skipped,
        skip_reason: None,
        claim: None,
        omega_red: None,
        omega_blue: None,
        known_bound: None,
        comparison: Comparison::Unknown,
        stats: None,
    };
    if d == 1 {
        row.skip_reason = Some(SkipReason::Degenerate);
        return row;
    }
    if !closed {
        row.skip_reason = Some(SkipReason::NotNegationClosed);
        return row;
    }

    let start = Instant::now();
    let class = kth_power_residues(p, k).expect("p is an odd prime and k >= 2");
    let w = derive_bound(p as usize, &class.connection_set, budget)
        .expect("residue connection sets lie in the half-range");
    row.omega_red = Some(w.omega_red.best_size);
    row.omega_blue = Some(w.omega_blue.best_size);
    row.stats = Some(RowStats {
        red_nodes: w.omega_red.nodes_explored,
        blue_nodes: w.omega_blue.nodes_explored,
        elapsed_ms: start.elapsed().as_millis() as u64,
    });
    if w.verdict == Verdict::Verified {
        let claim = Claim {
            p: w.claimed_p,
            q: w.claimed_q,
            n: w.n,
        };
        let (comparison, known) = Comparison::of(&claim, bounds);
        row.status = RowStatus::Verified;
        row.claim = Some(claim);
        row.comparison = comparison;
        row.known_bound = known;
    } else {
        row.status = RowStatus::Inconclusive;
    }
    row
}

/// Runs every `(prime, order)` instance with `prime <= max_n` under its own
/// budget. Rows are sorted by `(prime, order)`.
pub fn sweep(
    max_n: u64,
    orders: &[u32],
    budget: &Budget,
    bounds: &KnownBoundsTable,
) -> crate::Result<SweepReport> {
    if max_n < 3 {
        return Err(crate::Error::Domain(format!(
            "max_n must be at least 3, got {max_n}"
        )));
    }
    let mut orders = orders.to_vec();
    orders.sort_unstable();
    orders.dedup();
    if orders.is_empty() {
        return Err(crate::Error::Domain(
            "at least one residue order is required".into(),
        ));
    }
    if let Some(bad) = orders.iter().find(|k| !ORDER_RANGE.contains(k)) {
        return Err(crate::Error::Domain(format!(
            "residue order {bad} is outside 2..=8"
        )));
    }

    let instances: Vec<(u64, u32)> = (2..=max_n)
        .filter(|&p| is_prime(p))
        .flat_map(|p| orders.iter().map(move |&k| (p, k)))
        .collect();
    let mut rows: Vec<SweepRow> = instances
        .par_iter()
        .map(|&(p, k)| sweep_row(p, k, budget, bounds))
        .collect();
    rows.sort_by_key(|r| (r.prime, r.order));
    Ok(SweepReport {
        parameters: SweepParams {
            max_n,
            orders,
            budget: budget.clone(),
        },
        rows,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Table,
}

const TABLE_HEADER: &str =
    "prime  order  claim                 status                         comparison";

fn table_line(r: &SweepRow) -> String {
    let claim = r.claim.map_or_else(|| "-".to_string(), |c| c.to_string());
    let status = match (r.status, r.skip_reason) {
        (RowStatus::Skipped, Some(reason)) => format!("skipped ({reason})"),
        (RowStatus::Inconclusive, _) => format!(
            "inconclusive (ω >= {}, {})",
            r.omega_red.unwrap_or(0),
            r.omega_blue.unwrap_or(0)
        ),
        (s, _) => format!("{s:?}").to_lowercase(),
    };
    let comparison = match (r.comparison, r.known_bound) {
        (c, Some(k)) => format!("{c:?} (known > {k})"),
        (c, None) => format!("{c:?}"),
    };
    format!(
        "{:>5}  {:>5}  {:<20}  {:<29}  {}",
        r.prime, r.order, claim, status, comparison
    )
}

/// Writes the report as JSON or as a fixed-width text table.
pub fn emit_report<W: Write>(
    r: &SweepReport,
    mut out: W,
    format: ReportFormat,
) -> std::io::Result<()> {
    match format {
        ReportFormat::Json => {
            serde_json::to_writer_pretty(&mut out, r)?;
            writeln!(out)?;
        }
        ReportFormat::Table => {
            writeln!(out, "{TABLE_HEADER}")?;
            let mut rows: Vec<&SweepRow> = r.rows.iter().collect();
            rows.sort_by_key(|row| (row.prime, row.order));
            for row in rows {
                writeln!(out, "{}", table_line(row))?;
            }
        }
    }
    out.flush()
}

pub fn report_to_string(r: &SweepReport, format: ReportFormat) -> String {
    let mut buf = Vec::new();
    emit_report(r, &mut buf, format).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("report is UTF-8")
}
