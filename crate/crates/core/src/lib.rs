//! Circulant graphs from power residues modulo primes, exact clique numbers,
//! and checkable lower-bound witnesses for two-colour Ramsey numbers.
//!
//! A partition of `{1..n/2}` into `S1` and `S2` colours the edges of `K_n`
//! red and blue through the circulant graphs `G_n(S1)` and `G_n(S2)`. If the
//! red graph has no `K_p` and the blue graph has no `K_q`, then
//! `R(p, q) > n`.

pub mod clique;
pub mod error;
pub mod graph;
pub mod ramsey;
pub mod residue;
pub mod search;

pub use error::{Error, Result};
