use std::fs::{self, File};
use std::io::{self, BufReader, BufWriter, Write};
use std::path::Path;

use ramsey_circulant::clique::{self, Budget, CliqueResult, CliqueStatus};
use ramsey_circulant::graph::{build_circulant, import_dimacs};
use ramsey_circulant::ramsey::{self, CheckOutcome, RamseyWitness, Verdict};
use ramsey_circulant::residue::kth_power_residues;
use ramsey_circulant::search::{self, KnownBoundsTable, ReportFormat};

use crate::{
    setspec, CliError, Format, EXIT_INCONCLUSIVE, EXIT_IO, EXIT_NO_INPUT, EXIT_OK, EXIT_REFUTED,
};

type CmdResult = Result<u8, CliError>;

fn join(v: &[usize]) -> String {
    v.iter().map(usize::to_string).collect::<Vec<_>>().join(" ")
}

fn read_input(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| {
        CliError::new(
            EXIT_NO_INPUT,
            format!("cannot read {}: {e}", path.display()),
        )
    })
}

fn write_output(
    path: &Path,
    f: impl FnOnce(&mut BufWriter<File>) -> io::Result<()>,
) -> Result<(), CliError> {
    let io_err =
        |e: io::Error| CliError::new(EXIT_IO, format!("cannot write {}: {e}", path.display()));
    let mut out = BufWriter::new(File::create(path).map_err(io_err)?);
    f(&mut out).map_err(io_err)?;
    out.flush().map_err(io_err)
}

fn diagnostics(label: &str, r: &CliqueResult) {
    eprintln!(
        "{label}: {} nodes, {:.3} s",
        r.nodes_explored,
        r.elapsed.as_secs_f64()
    );
}

pub fn residues(prime: u64, order: u32, json: bool) -> CmdResult {
    let class = kth_power_residues(prime, order)?;
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let res = if json {
        serde_json::to_writer_pretty(&mut out, &class)
            .map_err(io::Error::from)
            .and_then(|_| writeln!(out))
    } else {
        writeln!(out, "{}", join(&class.connection_set))
            .and_then(|_| writeln!(out, "negation_closed: {}", class.negation_closed))
            .and_then(|_| writeln!(out, "effective_index: {}", class.effective_index))
            .and_then(|_| writeln!(out, "residues: {}", class.residues_full.len()))
            .and_then(|_| writeln!(out, "connection_set: {}", class.connection_set.len()))
    };
    res.map_err(|e| CliError::new(EXIT_IO, e.to_string()))?;
    Ok(EXIT_OK)
}

fn describe(color: &str, n: usize, k: usize, r: &CliqueResult) -> String {
    match r.status {
        CliqueStatus::Exact | CliqueStatus::Refuted => {
            format!(
                "{color}: no K_{k} (clique number {} on {n} vertices)",
                r.best_size
            )
        }
        CliqueStatus::DecisionSatisfied => {
            format!("{color}: contains K_{k}: {}", join(&r.witness))
        }
        CliqueStatus::LowerBoundOnly => {
            format!(
                "{color}: undecided within budget (largest clique found {})",
                r.best_size
            )
        }
    }
}

fn verdict_code(v: Verdict) -> u8 {
    match v {
        Verdict::Verified => EXIT_OK,
        Verdict::Refuted => EXIT_REFUTED,
        Verdict::Inconclusive => EXIT_INCONCLUSIVE,
    }
}

pub fn verify(
    n: usize,
    s1_spec: &str,
    p: usize,
    q: usize,
    budget: Result<Budget, CliError>,
    cert: Option<&Path>,
) -> CmdResult {
    let budget = budget?;
    let (s1, construction) = setspec::connection_set(s1_spec, n)?;
    let mut w: RamseyWitness = ramsey::verify_witness(n, &s1, p, q, &budget)?;
    if let Some(c) = construction {
        w = w.with_construction(c);
    }
    println!("claim: {}", w.claim());
    println!("{}", describe("red", n, p, &w.omega_red));
    println!("{}", describe("blue", n, q, &w.omega_blue));
    println!("verdict: {:?}", w.verdict);
    diagnostics("red search", &w.omega_red);
    diagnostics("blue search", &w.omega_blue);
    if let Some(path) = cert {
        write_output(path, |out| ramsey::emit_certificate(&w, out))?;
        eprintln!("certificate written to {}", path.display());
    }
    Ok(verdict_code(w.verdict))
}

pub fn clique(
    input: Option<&Path>,
    circulant: Option<&str>,
    decision: Option<usize>,
    symmetry: bool,
    budget: Result<Budget, CliError>,
) -> CmdResult {
    let budget = budget?;
    let result = if let Some(spec) = circulant {
        let (n, s) = setspec::circulant(spec)?;
        let g = build_circulant(n, &s)?;
        match (decision, symmetry) {
            (Some(t), true) => clique::has_clique_of_size_circulant(&g, t, &budget),
            (Some(t), false) => clique::has_clique_of_size(g.graph(), t, &budget),
            (None, true) => clique::max_clique_circulant(&g, &budget),
            (None, false) => clique::max_clique(g.graph(), &budget),
        }
    } else {
        let path = input.expect("clap requires --in or --circulant");
        let file = File::open(path).map_err(|e| {
            CliError::new(
                EXIT_NO_INPUT,
                format!("cannot read {}: {e}", path.display()),
            )
        })?;
        let g = import_dimacs(BufReader::new(file))?;
        match decision {
            Some(t) => clique::has_clique_of_size(&g, t, &budget),
            None => clique::max_clique(&g, &budget),
        }
    };

    let (line, code) = match (result.status, decision) {
        (CliqueStatus::Exact, _) => (format!("omega {} exact", result.best_size), EXIT_OK),
        (CliqueStatus::DecisionSatisfied, Some(t)) => (format!("clique {t} found"), EXIT_OK),
        (CliqueStatus::DecisionSatisfied, None) => {
            (format!("omega >= {}", result.best_size), EXIT_OK)
        }
        (CliqueStatus::Refuted, Some(t)) => (
            format!("clique {t} refuted (omega {} exact)", result.best_size),
            EXIT_REFUTED,
        ),
        (CliqueStatus::Refuted, None) => (format!("omega {} exact", result.best_size), EXIT_OK),
        (CliqueStatus::LowerBoundOnly, _) => (
            format!("omega >= {} lower-bound", result.best_size),
            EXIT_INCONCLUSIVE,
        ),
    };
    println!("{line}");
    println!("witness {}", join(&result.witness));
    println!("nodes {}", result.nodes_explored);
    println!("elapsed_ms {}", result.elapsed.as_millis());
    Ok(code)
}

pub fn sweep(
    max_n: u64,
    orders: &str,
    budget: Result<Budget, CliError>,
    bounds: Option<&Path>,
    out: Option<&Path>,
    format: Format,
) -> CmdResult {
    let budget = budget?;
    let orders = setspec::orders(orders)?;
    let table = match bounds {
        Some(path) => search::load_known_bounds(&read_input(path)?)?,
        None => KnownBoundsTable::starter(),
    };
    let report = search::sweep(max_n, &orders, &budget, &table)?;
    let format = match format {
        Format::Json => ReportFormat::Json,
        Format::Table => ReportFormat::Table,
    };
    match out {
        Some(path) => write_output(path, |w| search::emit_report(&report, w, format))?,
        None => search::emit_report(&report, io::stdout().lock(), format)
            .map_err(|e| CliError::new(EXIT_IO, e.to_string()))?,
    }
    for row in report.improvements() {
        let claim = row.claim.expect("improving rows carry a claim");
        let line = format!(
            "improvement: {claim} from {}-th power residues mod {} (known > {})",
            row.order,
            row.prime,
            row.known_bound.unwrap_or(0)
        );
        if out.is_some() {
            println!("{line}");
        } else {
            eprintln!("{line}");
        }
    }
    Ok(EXIT_OK)
}

pub fn check(cert: &Path, budget: Result<Budget, CliError>, rerun: bool) -> CmdResult {
    let budget = budget?;
    let text = read_input(cert)?;
    let report = ramsey::check_certificate(&text, &budget, rerun)?;
    for d in &report.discrepancies {
        println!("discrepancy: {d}");
    }
    let code = match report.outcome {
        CheckOutcome::Agreement => {
            println!("agreement");
            EXIT_OK
        }
        CheckOutcome::Discrepancy => EXIT_REFUTED,
        CheckOutcome::Inconclusive => {
            println!("inconclusive: re-verification did not finish within the budget");
            EXIT_INCONCLUSIVE
        }
    };
    Ok(code)
}
