use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const STARTER_CSV: &str = include_str!("../../data/known_bounds.csv");

/// Best known strict lower bounds `R(p, q) > n`, keyed by `(p, q)` with
/// `p <= q`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct KnownBoundsTable {
    entries: BTreeMap<(usize, usize), usize>,
}

fn key(p: usize, q: usize) -> (usize, usize) {
    (p.min(q), p.max(q))
}

impl KnownBoundsTable {
    /// The bundled table of the bounds this crate reproduces or compares
    /// against.
    pub fn starter() -> Self {
        load_known_bounds(STARTER_CSV).expect("bundled bounds table is valid")
    }

    /// Records `R(p, q) > n`, keeping the larger bound on collision.
    pub fn insert(&mut self, p: usize, q: usize, n: usize) {
        let e = self.entries.entry(key(p, q)).or_insert(n);
        *e = (*e).max(n);
    }

    pub fn get(&self, p: usize, q: usize) -> Option<usize> {
        self.entries.get(&key(p, q)).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = ((usize, usize), usize)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }
}

/// Parses `p,q,n` records; blank lines and lines starting with `#` are
/// ignored.
pub fn load_known_bounds(source: &str) -> Result<KnownBoundsTable> {
    let mut table = KnownBoundsTable::default();
    for (idx, raw) in source.lines().enumerate() {
        let lineno = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        let [p, q, n] = fields[..] else {
            return Err(Error::parse(
                lineno,
                format!("expected p,q,n but got {line:?}"),
            ));
        };
        let num = |f: &str| {
            f.parse::<usize>()
                .map_err(|_| Error::parse(lineno, format!("not a non-negative integer: {f:?}")))
        };
        let (p, q, n) = (num(p)?, num(q)?, num(n)?);
        let (lo, _) = key(p, q);
        if lo < 1 {
            return Err(Error::parse(lineno, "clique sizes must be positive"));
        }
        if n < lo {
            return Err(Error::parse(
                lineno,
                format!("bound {n} is below the clique size {lo}"),
            ));
        }
        table.insert(p, q, n);
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_lines() {
        assert_eq!(load_known_bounds("3,15,72").unwrap().get(3, 15), Some(72));
        assert_eq!(
            load_known_bounds("4,22,313\n").unwrap().get(22, 4),
            Some(313)
        );
    }

    #[test]
    fn symmetric_duplicates_collapse_to_max() {
        let t = load_known_bounds("3,4,8\n4,3,8\n").unwrap();
        assert_eq!(t.len(), 1);
        assert_eq!(t.get(3, 4), Some(8));
        let t = load_known_bounds("# c\n\n5,3,12\n3,5,13\n").unwrap();
        assert_eq!(t.iter().collect::<Vec<_>>(), vec![((3, 5), 13)]);
    }

    #[test]
    fn errors_carry_line_numbers() {
        for (text, line) in [
            ("3,4\n", 1),
            ("# x\n3,4,8\n3,x,9\n", 3),
            ("3,4,8,9\n", 1),
            ("\n5,6,4\n", 2),
            ("0,4,8\n", 1),
        ] {
            match load_known_bounds(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn starter_table() {
        let t = KnownBoundsTable::starter();
        assert_eq!(t.len(), 6);
        assert_eq!(t.get(15, 3), Some(72));
        assert_eq!(t.get(4, 25), Some(457));
        assert_eq!(t.get(6, 6), Some(101));
    }
}
