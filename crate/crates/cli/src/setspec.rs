//! Parsing of connection-set, circulant and order arguments.

use std::fs;

use ramsey_circulant::ramsey::Construction;
use ramsey_circulant::residue::kth_power_residues;

use crate::{CliError, EXIT_DATA, EXIT_NO_INPUT};

fn parse_numbers(text: &str, what: &str) -> Result<Vec<usize>, String> {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or(""))
        .flat_map(|l| l.split(|c: char| c == ',' || c.is_whitespace()))
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse()
                .map_err(|_| format!("{what}: {t:?} is not a non-negative integer"))
        })
        .collect()
}

/// Residue connection set for `auto:P,K`, as printed by `residues`.
pub fn residue_set(prime: u64, order: u32) -> Result<Vec<usize>, CliError> {
    let class = kth_power_residues(prime, order)?;
    if !class.negation_closed {
        return Err(CliError::usage(format!(
            "connection set not symmetric; -1 is not a {order}-th power residue mod {prime}"
        )));
    }
    Ok(class.connection_set)
}

/// Resolves `--s1`: an inline list, `@file`, or `auto:P,K`.
pub fn connection_set(
    spec: &str,
    n: usize,
) -> Result<(Vec<usize>, Option<Construction>), CliError> {
    if let Some(rest) = spec.strip_prefix("auto:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let [p, k] = parts[..] else {
            return Err(CliError::usage(format!("expected auto:P,K, got {spec:?}")));
        };
        let prime: u64 = p
            .parse()
            .map_err(|_| CliError::usage(format!("bad prime in {spec:?}")))?;
        let order: u32 = k
            .parse()
            .map_err(|_| CliError::usage(format!("bad order in {spec:?}")))?;
        if prime as usize != n {
            return Err(CliError::usage(format!(
                "auto:{prime},{order} defines a graph on {prime} vertices, but --n is {n}"
            )));
        }
        let set = residue_set(prime, order)?;
        return Ok((set, Some(Construction { prime, order })));
    }
    if let Some(path) = spec.strip_prefix('@') {
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::new(EXIT_NO_INPUT, format!("cannot read {path}: {e}")))?;
        let set = parse_numbers(&text, path).map_err(|m| CliError::new(EXIT_DATA, m))?;
        return Ok((set, None));
    }
    let set = parse_numbers(spec, "--s1").map_err(CliError::usage)?;
    Ok((set, None))
}

/// Parses `N,s1,s2,...` into the vertex count and connection set.
pub fn circulant(spec: &str) -> Result<(usize, Vec<usize>), CliError> {
    let nums = parse_numbers(spec, "--circulant").map_err(|m| CliError::new(EXIT_DATA, m))?;
    match nums.split_first() {
        Some((&n, s)) => Ok((n, s.to_vec())),
        None => Err(CliError::new(
            EXIT_DATA,
            "--circulant needs at least the vertex count",
        )),
    }
}

/// Parses `2..8` (inclusive) or `4,5,7`.
pub fn orders(spec: &str) -> Result<Vec<u32>, CliError> {
    let bad = || {
        CliError::usage(format!(
            "invalid --orders {spec:?}; use a range like 2..8 or a list like 4,5"
        ))
    };
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: u32 = lo.trim().parse().map_err(|_| bad())?;
        let hi: u32 = hi
            .trim()
            .trim_start_matches('=')
            .parse()
            .map_err(|_| bad())?;
        if lo > hi {
            return Err(bad());
        }
        return Ok((lo..=hi).collect());
    }
    spec.split(',')
        .map(|t| t.trim().parse().map_err(|_| bad()))
        .collect()
}
