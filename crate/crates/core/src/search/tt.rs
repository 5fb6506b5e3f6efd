use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use crate::rules::Move;

/// Zobrist keys are already uniformly distributed; hash them as-is.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = self.0.rotate_left(8) ^ u64::from(b);
        }
    }

    fn write_u64(&mut self, v: u64) {
        self.0 = v;
    }
}

/// What is known about one position for a fixed attacker.
///
/// `proven` is the smallest attacker-move budget known to force mate (0 =
/// none); `disproven` the largest budget known not to. Budgets are counted
/// the same way at attacker and defender nodes; the side to move is part of
/// the key. `proven` only decreases and `disproven` only increases.
#[derive(Clone, Copy, Debug, Default)]
pub struct Entry {
    pub proven: u32,
    pub disproven: u32,
    pub best: Option<Move>,
}

#[derive(Default)]
pub struct Table {
    map: HashMap<u64, Entry, BuildHasherDefault<KeyHasher>>,
}

impl Table {
    pub fn new() -> Table {
        Table::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: u64) -> Option<&Entry> {
        self.map.get(&key)
    }

    /// `Some(true)` if mate within `n` is known, `Some(false)` if known
    /// impossible.
    pub fn probe(&self, key: u64, n: u32) -> Option<bool> {
        let e = self.map.get(&key)?;
        if e.proven != 0 && e.proven <= n {
            Some(true)
        } else if e.disproven >= n {
            Some(false)
        } else {
            None
        }
    }

    pub fn best(&self, key: u64) -> Option<Move> {
        self.map.get(&key).and_then(|e| e.best)
    }

    pub fn store_proof(&mut self, key: u64, n: u32, best: Option<Move>) {
        let e = self.map.entry(key).or_default();
        if e.proven == 0 || n < e.proven {
            e.proven = n;
            if best.is_some() {
                e.best = best;
            }
        }
        debug_assert!(e.disproven < e.proven);
    }

    pub fn store_disproof(&mut self, key: u64, n: u32, refutation: Option<Move>) {
        let e = self.map.entry(key).or_default();
        if n > e.disproven {
            e.disproven = n;
            if e.proven == 0 && refutation.is_some() {
                e.best = refutation;
            }
        }
        debug_assert!(e.proven == 0 || e.disproven < e.proven);
    }
}
