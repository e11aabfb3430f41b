//! Power residues modulo a prime and the symmetric connection sets they induce.
//!
//! The k-th power residues modulo a prime `p` form the subgroup of index
//! `d = gcd(k, p - 1)` in the multiplicative group of units. When `-1` lies in
//! that subgroup every residue `r` pairs with `p - r`, so the residues reduce
//! cleanly onto the half-range `{1..(p-1)/2}` and define a circulant graph on
//! `Z_p`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted by residue enumeration (exclusive).
pub const MODULUS_CAP: u64 = 1 << 31;

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Computes `base^exponent mod modulus` by square-and-multiply.
///
/// Negative bases are reduced into `0..modulus` first. Intermediate products
/// are widened to 128 bits, so any 64-bit modulus is safe.
pub fn mod_pow(base: i64, exponent: u64, modulus: u64) -> Result<u64> {
    if modulus < 2 {
        return Err(Error::domain(format!(
            "modulus must be at least 2, got {modulus}"
        )));
    }
    let base = (base as i128).rem_euclid(modulus as i128) as u64;
    Ok(pow_mod(base, exponent, modulus))
}

/// Deterministic Miller-Rabin. The first twelve prime bases are a proven
/// witness set for every `n < 3.3 * 10^24`, which covers all of `u64`.
pub fn is_prime(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// The k-th power residues modulo a prime together with their half-range
/// reduction.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClassification {
    pub prime: u64,
    pub order: u32,
    /// `gcd(order, prime - 1)`, the index of the residue subgroup.
    pub effective_index: u64,
    /// Sorted residues in `1..prime`.
    pub residues_full: Vec<u64>,
    /// Sorted `min(r, p - r)` over the residues; empty unless `negation_closed`.
    pub connection_set: Vec<usize>,
    /// Whether `-1` is a k-th power residue.
    pub negation_closed: bool,
}

impl ResidueClassification {
    /// The residues are the whole unit group, so the half-range does not split.
    pub fn is_degenerate(&self) -> bool {
        self.effective_index == 1
    }

    pub fn half_range(&self) -> usize {
        ((self.prime - 1) / 2) as usize
    }

    pub fn contains(&self, r: u64) -> bool {
        self.residues_full.binary_search(&r).is_ok()
    }
}

/// Whether `-1` is a k-th power residue modulo the prime `p`, from the
/// subgroup order alone: it is exactly when `(p - 1) / gcd(k, p - 1)` is even.
pub fn negation_closed(p: u64, k: u32) -> bool {
    let d = gcd(k as u64, p - 1);
    ((p - 1) / d).is_multiple_of(2)
}

/// Enumerates `{x^k mod p : 1 <= x < p}` and reduces it to the half-range.
pub fn kth_power_residues(p: u64, k: u32) -> Result<ResidueClassification> {
    if k < 2 {
        return Err(Error::domain(format!(
            "residue order must be at least 2, got {k}"
        )));
    }
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    if p >= MODULUS_CAP {
        return Err(Error::domain(format!(
            "modulus {p} exceeds the supported cap 2^31"
        )));
    }

    let mut seen = vec![false; p as usize];
    for x in 1..p {
        seen[pow_mod(x, k as u64, p) as usize] = true;
    }
    let residues_full: Vec<u64> = (1..p).filter(|&r| seen[r as usize]).collect();
    let effective_index = gcd(k as u64, p - 1);
    let negation_closed = seen[(p - 1) as usize];
    debug_assert_eq!(negation_closed, self::negation_closed(p, k));

    let connection_set = if negation_closed {
        let half = (p - 1) / 2;
        (1..=half)
            .filter(|&r| seen[r as usize])
            .map(|r| r as usize)
            .collect()
    } else {
        Vec::new()
    };

    Ok(ResidueClassification {
        prime: p,
        order: k,
        effective_index,
        residues_full,
        connection_set,
        negation_closed,
    })
}

/// Splits `{1..(p-1)/2}` into the residue connection set and its complement.
pub fn partition_half_range(
    p: u64,
    classification: &ResidueClassification,
) -> Result<(Vec<usize>, Vec<usize>)> {
    if classification.prime != p {
        return Err(Error::domain(format!(
            "classification is for modulus {}, not {p}",
            classification.prime
        )));
    }
    if !classification.negation_closed {
        return Err(Error::Construction(format!(
            "connection set not symmetric; -1 is not a {}-th power residue mod {p}",
            classification.order
        )));
    }
    let half = classification.half_range();
    let mut in_s1 = vec![false; half + 1];
    for &s in &classification.connection_set {
        in_s1[s] = true;
    }
    let s2 = (1..=half).filter(|&s| !in_s1[s]).collect();
    Ok((classification.connection_set.clone(), s2))
}
