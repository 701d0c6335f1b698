//! The concrete data behind the counterexample.
//!
//! Everything here is deterministic. Dense pairs, approximants and the base
//! enumeration are generated lazily into an append-only memo guarded by a
//! mutex, so a single [`Construction`] can be shared between threads and
//! every reader observes a prefix of the same infinite family.

mod enumeration;
mod family;
mod space;

use std::collections::{HashMap, HashSet};
use std::sync::{Mutex, MutexGuard};

use serde::{Deserialize, Serialize};

use crate::cantor::{CantorPoint, Word};

pub use family::{approximant_depth, Approximant, DensePair};
pub use space::{Fiber, Space};

/// Identifies the fixed generation scheme in exported files.
pub const SCHEME_NAME: &str = "diagonal-greedy";
pub const SCHEME_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeParams {
    pub name: String,
    pub version: u32,
    pub pairing: String,
    pub word_order: String,
}

impl Default for SchemeParams {
    fn default() -> Self {
        SchemeParams {
            name: SCHEME_NAME.to_string(),
            version: SCHEME_VERSION,
            pairing: "cantor".to_string(),
            word_order: "length-lex".to_string(),
        }
    }
}

/// Cantor pairing `(x, y) ↦ (x+y)(x+y+1)/2 + y`.
pub fn pair(x: usize, y: usize) -> usize {
    (x + y) * (x + y + 1) / 2 + y
}

pub fn unpair(k: usize) -> (usize, usize) {
    let mut diag = ((8 * k as u128 + 1).isqrt() as usize - 1) / 2;
    // Guard against rounding at diagonal boundaries.
    while diag * (diag + 1) / 2 > k {
        diag -= 1;
    }
    while (diag + 1) * (diag + 2) / 2 <= k {
        diag += 1;
    }
    let y = k - diag * (diag + 1) / 2;
    (diag - y, y)
}

#[derive(Default)]
struct Memo {
    pairs: Vec<DensePair>,
    a_seen: HashSet<CantorPoint>,
    b_seen: HashSet<CantorPoint>,
    a_cursor: HashMap<Word, usize>,
    b_cursor: HashMap<Word, usize>,
    base: Vec<Option<Word>>,
    index_of: HashMap<Word, usize>,
    assigned_at: HashMap<Word, usize>,
    steps: usize,
}

/// Lazily generated dense family, approximants and base enumeration.
#[derive(Default)]
pub struct Construction {
    memo: Mutex<Memo>,
}

impl Construction {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn params(&self) -> SchemeParams {
        SchemeParams::default()
    }

    fn memo(&self) -> MutexGuard<'_, Memo> {
        // The memo is append-only; a panic mid-update leaves a valid prefix.
        self.memo.lock().unwrap_or_else(|e| e.into_inner())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pairing_roundtrip() {
        assert_eq!(unpair(0), (0, 0));
        assert_eq!(unpair(1), (1, 0));
        assert_eq!(unpair(2), (0, 1));
        assert_eq!(unpair(3), (2, 0));
        for k in 0..10_000 {
            let (x, y) = unpair(k);
            assert_eq!(pair(x, y), k);
        }
    }
}
