//! Machine-checkable JSON certificates for Ramsey witnesses.

use std::fmt;
use std::io::Write;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use crate::clique::{Budget, CliqueResult, CliqueStatus, VertexOrdering};
use crate::error::{Error, Result};
use crate::graph::{build_circulant, DenseGraph};

use super::{verify_witness, Construction, RamseyWitness, Verdict};

pub const FORMAT_VERSION: u32 = 1;
pub const TOOL_NAME: &str = env!("CARGO_PKG_NAME");

/// One colour's clique search as stored in a certificate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CliqueRecord {
    pub best_size: usize,
    pub status: CliqueStatus,
    pub witness: Vec<usize>,
    pub nodes_explored: u64,
    pub elapsed_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ToolInfo {
    pub name: String,
    pub version: String,
}

impl Default for ToolInfo {
    fn default() -> Self {
        ToolInfo {
            name: TOOL_NAME.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
        }
    }
}

/// Serialized form of a [`RamseyWitness`]. Field order is the key order of
/// the emitted JSON.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Certificate {
    pub format_version: u32,
    pub n: usize,
    pub s1: Vec<usize>,
    pub s2: Vec<usize>,
    pub claimed_p: usize,
    pub claimed_q: usize,
    pub omega_red: CliqueRecord,
    pub omega_blue: CliqueRecord,
    pub verdict: Verdict,
    pub construction: Option<Construction>,
    pub tool: ToolInfo,
}

impl From<&CliqueResult> for CliqueRecord {
    fn from(r: &CliqueResult) -> Self {
        let mut witness = r.witness.clone();
        witness.sort_unstable();
        CliqueRecord {
            best_size: r.best_size,
            status: r.status,
            witness,
            nodes_explored: r.nodes_explored,
            elapsed_ms: r.elapsed.as_millis() as u64,
        }
    }
}

impl From<&CliqueRecord> for CliqueResult {
    fn from(r: &CliqueRecord) -> Self {
        CliqueResult {
            best_size: r.best_size,
            witness: r.witness.clone(),
            status: r.status,
            nodes_explored: r.nodes_explored,
            elapsed: Duration::from_millis(r.elapsed_ms),
            ordering: VertexOrdering::DegreeDescending,
        }
    }
}

impl From<&RamseyWitness> for Certificate {
    fn from(w: &RamseyWitness) -> Self {
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort_unstable();
            v
        };
        Certificate {
            format_version: FORMAT_VERSION,
            n: w.n,
            s1: sorted(&w.s1),
            s2: sorted(&w.s2),
            claimed_p: w.claimed_p,
            claimed_q: w.claimed_q,
            omega_red: (&w.omega_red).into(),
            omega_blue: (&w.omega_blue).into(),
            verdict: w.verdict,
            construction: w.construction,
            tool: ToolInfo::default(),
        }
    }
}

impl From<&Certificate> for RamseyWitness {
    fn from(c: &Certificate) -> Self {
        RamseyWitness {
            n: c.n,
            s1: c.s1.clone(),
            s2: c.s2.clone(),
            claimed_p: c.claimed_p,
            claimed_q: c.claimed_q,
            omega_red: (&c.omega_red).into(),
            omega_blue: (&c.omega_blue).into(),
            verdict: c.verdict,
            construction: c.construction,
        }
    }
}

impl Certificate {
    /// Pretty-printed JSON with a trailing newline.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("certificate serializes");
        s.push('\n');
        s
    }
}

/// Writes the certificate JSON for `w`.
pub fn emit_certificate<W: Write>(w: &RamseyWitness, mut out: W) -> std::io::Result<()> {
    out.write_all(Certificate::from(w).to_json().as_bytes())?;
    out.flush()
}

/// Parses certificate JSON; schema violations report the offending path.
pub fn parse_certificate(text: &str) -> Result<Certificate> {
    let de = &mut serde_json::Deserializer::from_str(text);
    let cert: Certificate = serde_path_to_error::deserialize(de).map_err(|e| {
        let path = e.path().to_string();
        Error::Schema {
            path,
            message: e.into_inner().to_string(),
        }
    })?;
    if cert.format_version != FORMAT_VERSION {
        return Err(Error::Schema {
            path: "format_version".into(),
            message: format!(
                "unsupported format version {}, expected {FORMAT_VERSION}",
                cert.format_version
            ),
        });
    }
    Ok(cert)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Color {
    Red,
    Blue,
}

impl fmt::Display for Color {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Color::Red => "red",
            Color::Blue => "blue",
        })
    }
}

/// A way in which a certificate fails to hold up.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Discrepancy {
    /// `n` or a claimed size is outside its domain.
    InvalidParameters(String),
    /// A set element lies outside `1..=n/2`.
    ElementOutOfRange {
        set: &'static str,
        element: usize,
    },
    /// A set is not strictly ascending.
    NotCanonical {
        set: &'static str,
    },
    PartitionOverlap(Vec<usize>),
    PartitionIncomplete(Vec<usize>),
    WitnessSizeMismatch {
        color: Color,
    },
    WitnessNotClique {
        color: Color,
    },
    /// The recorded verdict does not follow from the recorded searches.
    VerdictUnsupported(String),
    /// Re-running the searches gave a different answer.
    RerunMismatch(String),
}

impl fmt::Display for Discrepancy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Discrepancy::InvalidParameters(msg) => write!(f, "invalid parameters: {msg}"),
            Discrepancy::ElementOutOfRange { set, element } => {
                write!(f, "element {element} of {set} out of range")
            }
            Discrepancy::NotCanonical { set } => {
                write!(f, "{set} is not sorted ascending without repeats")
            }
            Discrepancy::PartitionOverlap(v) => write!(f, "partition overlap: {v:?}"),
            Discrepancy::PartitionIncomplete(v) => write!(f, "partition incomplete: missing {v:?}"),
            Discrepancy::WitnessSizeMismatch { color } => {
                write!(f, "{color} witness length differs from best_size")
            }
            Discrepancy::WitnessNotClique { color } => write!(f, "{color} witness not a clique"),
            Discrepancy::VerdictUnsupported(msg) => write!(f, "verdict unsupported: {msg}"),
            Discrepancy::RerunMismatch(msg) => write!(f, "re-verification disagrees: {msg}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckOutcome {
    Agreement,
    Discrepancy,
    /// Static checks passed but re-verification ran out of budget.
    Inconclusive,
}

#[derive(Clone, Debug)]
pub struct CheckReport {
    pub outcome: CheckOutcome,
    pub discrepancies: Vec<Discrepancy>,
    /// The recomputed witness, when the searches were re-run.
    pub rerun: Option<RamseyWitness>,
}

fn is_strictly_ascending(v: &[usize]) -> bool {
    v.windows(2).all(|w| w[0] < w[1])
}

fn check_partition(c: &Certificate, out: &mut Vec<Discrepancy>) -> bool {
    let half = c.n / 2;
    let before = out.len();
    for (name, set) in [("s1", &c.s1), ("s2", &c.s2)] {
        if !is_strictly_ascending(set) {
            out.push(Discrepancy::NotCanonical { set: name });
        }
        for &e in set.iter() {
            if e == 0 || e > half {
                out.push(Discrepancy::ElementOutOfRange {
                    set: name,
                    element: e,
                });
            }
        }
    }
    if out.len() > before {
        return false;
    }
    let mut count = vec![0u8; half + 1];
    for &e in c.s1.iter().chain(&c.s2) {
        count[e] += 1;
    }
    let overlap: Vec<usize> = (1..=half).filter(|&e| count[e] > 1).collect();
    let missing: Vec<usize> = (1..=half).filter(|&e| count[e] == 0).collect();
    if !overlap.is_empty() {
        out.push(Discrepancy::PartitionOverlap(overlap));
    }
    if !missing.is_empty() {
        out.push(Discrepancy::PartitionIncomplete(missing));
    }
    out.len() == before
}

fn check_witness(g: &DenseGraph, r: &CliqueRecord, color: Color, out: &mut Vec<Discrepancy>) {
    if r.witness.len() != r.best_size {
        out.push(Discrepancy::WitnessSizeMismatch { color });
    }
    if !is_strictly_ascending(&r.witness) || !g.is_clique(&r.witness) {
        out.push(Discrepancy::WitnessNotClique { color });
    }
}

fn check_verdict(c: &Certificate, out: &mut Vec<Discrepancy>) {
    let complete =
        |r: &CliqueRecord| matches!(r.status, CliqueStatus::Exact | CliqueStatus::Refuted);
    let (red, blue) = (&c.omega_red, &c.omega_blue);
    let problem = match c.verdict {
        Verdict::Verified => {
            if !complete(red) || !complete(blue) {
                Some("a search did not complete".to_string())
            } else if red.best_size >= c.claimed_p {
                Some(format!(
                    "red clique number {} is not below {}",
                    red.best_size, c.claimed_p
                ))
            } else if blue.best_size >= c.claimed_q {
                Some(format!(
                    "blue clique number {} is not below {}",
                    blue.best_size, c.claimed_q
                ))
            } else {
                None
            }
        }
        Verdict::Refuted => (red.best_size < c.claimed_p && blue.best_size < c.claimed_q)
            .then(|| "no forbidden clique recorded".to_string()),
        Verdict::Inconclusive => {
            (complete(red) && complete(blue)).then(|| "both searches completed".to_string())
        }
    };
    if let Some(msg) = problem {
        out.push(Discrepancy::VerdictUnsupported(msg));
    }
}

fn compare_rerun(c: &Certificate, w: &RamseyWitness, out: &mut Vec<Discrepancy>) {
    if c.verdict != Verdict::Inconclusive
        && w.verdict != Verdict::Inconclusive
        && c.verdict != w.verdict
    {
        out.push(Discrepancy::RerunMismatch(format!(
            "recorded {:?}, recomputed {:?}",
            c.verdict, w.verdict
        )));
    }
    for (color, rec, new) in [
        (Color::Red, &c.omega_red, &w.omega_red),
        (Color::Blue, &c.omega_blue, &w.omega_blue),
    ] {
        let exact = |s: CliqueStatus| s == CliqueStatus::Exact || s == CliqueStatus::Refuted;
        if exact(rec.status) && exact(new.status) && rec.best_size != new.best_size {
            out.push(Discrepancy::RerunMismatch(format!(
                "{color} clique number recorded {}, recomputed {}",
                rec.best_size, new.best_size
            )));
        }
    }
}

/// Re-checks a certificate: partition validity, witness cliques, verdict
/// consistency and, when `rerun` is set, the decision searches themselves
/// under `budget`.
pub fn check_certificate(source: &str, budget: &Budget, rerun: bool) -> Result<CheckReport> {
    let c = parse_certificate(source)?;
    let mut found = Vec::new();

    if c.n == 0 {
        found.push(Discrepancy::InvalidParameters("n must be positive".into()));
    }
    if c.claimed_p < 2 || c.claimed_q < 2 {
        found.push(Discrepancy::InvalidParameters(
            "claimed clique sizes must be at least 2".into(),
        ));
    }
    let partition_ok = found.is_empty() && check_partition(&c, &mut found);
    if partition_ok {
        let red = build_circulant(c.n, &c.s1)?;
        let blue = build_circulant(c.n, &c.s2)?;
        check_witness(red.graph(), &c.omega_red, Color::Red, &mut found);
        check_witness(blue.graph(), &c.omega_blue, Color::Blue, &mut found);
    }
    check_verdict(&c, &mut found);

    let mut recomputed = None;
    if rerun && found.is_empty() {
        let w = verify_witness(c.n, &c.s1, c.claimed_p, c.claimed_q, budget)?;
        compare_rerun(&c, &w, &mut found);
        recomputed = Some(w);
    }

    let outcome = if !found.is_empty() {
        CheckOutcome::Discrepancy
    } else if recomputed
        .as_ref()
        .is_some_and(|w| w.verdict == Verdict::Inconclusive)
    {
        CheckOutcome::Inconclusive
    } else {
        CheckOutcome::Agreement
    };
    Ok(CheckReport {
        outcome,
        discrepancies: found,
        rerun: recomputed,
    })
}
