use serde::{Deserialize, Serialize};

use super::{pair, unpair, Construction};
use crate::cantor::{flip, CantorPoint, Word};

/// Which subspace of `C×C` the projection is restricted to.
///
/// `Full` is `X = C×C \ ⋃_{n,i} {a_{n,i}} × B_n`. `Truncated(N)` removes
/// only the first `N` fibers of the diagonal order, so `Truncated(0)` is
/// all of `C×C`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Space {
    Full,
    Truncated(usize),
}

/// A removed closed fiber `{a_{n,i}} × B_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fiber {
    pub k: usize,
    pub n: usize,
    pub i: usize,
    pub point: CantorPoint,
    pub base: Word,
}

impl Construction {
    /// The `k`-th removed fiber; `(n, i)` follows the Cantor pairing.
    pub fn fiber(&self, k: usize) -> Fiber {
        let (n, i) = unpair(k);
        let mut memo = self.memo();
        let point = memo.approximant(n, i).point;
        let base = memo.base_word(n);
        Fiber { k, n, i, point, base }
    }

    /// The first `count` fibers whose union is removed from `C×C`.
    pub fn gdelta_presentation(&self, count: usize) -> Vec<Fiber> {
        (0..count).map(|k| self.fiber(k)).collect()
    }

    pub fn in_x(&self, x: &CantorPoint, y: &CantorPoint) -> bool {
        self.in_space(Space::Full, x, y)
    }

    pub fn in_space(&self, space: Space, x: &CantorPoint, y: &CantorPoint) -> bool {
        let mut memo = self.memo();
        match memo.recognize(x) {
            None => true,
            Some((n, i)) => {
                if let Space::Truncated(count) = space {
                    if pair(n, i) >= count {
                        return true;
                    }
                }
                !y.in_cylinder(&memo.base_word(n))
            }
        }
    }

    /// Some `y` with `(x, y) ∈ X`. Exists because no `B_n` is all of `C`.
    pub fn fiber_witness(&self, x: &CantorPoint) -> CantorPoint {
        let mut memo = self.memo();
        match memo.recognize(x) {
            None => CantorPoint::zero_tail(&Word::empty()),
            Some((n, _)) => {
                let base = memo.base_word(n);
                let first = flip(base.digits()[0]);
                CantorPoint::zero_tail(&Word::from_digits(vec![first]))
            }
        }
    }
}
