use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{unpair, Construction, Memo};
use crate::cantor::{flip, CantorPoint, Word};

/// One member `(a_n, b_n)` of the dense family, with the cylinder pair
/// `(cell_a, cell_b)` it was generated for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensePair {
    pub n: usize,
    pub a: CantorPoint,
    pub b: CantorPoint,
    pub cell_a: Word,
    pub cell_b: Word,
}

/// The point `a_{n,i}`; it shares its first `depth` digits with `a_n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Approximant {
    pub n: usize,
    pub i: usize,
    pub depth: usize,
    pub point: CantorPoint,
}

/// Smallest `e` with `3^e ≥ m`.
fn ceil_log3(m: usize) -> usize {
    let mut e = 0;
    let mut p = 1usize;
    while p < m {
        p = p.saturating_mul(3);
        e += 1;
    }
    e
}

/// Agreement depth of `a_{n,i}` with `a_n`: `⌈log₃(n+1)⌉ + 1 + i`.
///
/// Strictly increasing in `i`, and `3^-depth < 1/(n+1)`.
pub fn approximant_depth(n: usize, i: usize) -> usize {
    ceil_log3(n + 1) + 1 + i
}

/// `p · 0^k · (20)^ω` for the smallest `k ≥ 1` not already in `seen`.
///
/// `cursor` remembers, per cell, the first `k` not yet known to be taken;
/// `seen` only grows, so rejected `k` stay rejected.
fn fresh_point(
    cell: &Word,
    seen: &mut HashSet<CantorPoint>,
    cursor: &mut HashMap<Word, usize>,
) -> CantorPoint {
    let k = cursor.entry(cell.clone()).or_insert(1);
    let mut prefix = cell.digits().to_vec();
    prefix.extend(std::iter::repeat_n(0, *k));
    loop {
        let p = CantorPoint::from_digits(prefix.clone(), vec![2, 0]);
        *k += 1;
        if seen.insert(p.clone()) {
            return p;
        }
        prefix.push(0);
    }
}

impl Memo {
    pub(super) fn ensure_pairs(&mut self, n: usize) {
        while self.pairs.len() <= n {
            let k = self.pairs.len();
            let (x, y) = unpair(k);
            let cell_a = Word::from_length_lex(x);
            let cell_b = Word::from_length_lex(y);
            let a = fresh_point(&cell_a, &mut self.a_seen, &mut self.a_cursor);
            let b = fresh_point(&cell_b, &mut self.b_seen, &mut self.b_cursor);
            self.pairs.push(DensePair {
                n: k,
                a,
                b,
                cell_a,
                cell_b,
            });
        }
    }

    pub(super) fn pair(&mut self, n: usize) -> &DensePair {
        self.ensure_pairs(n);
        &self.pairs[n]
    }

    pub(super) fn approximant(&mut self, n: usize, i: usize) -> Approximant {
        let depth = approximant_depth(n, i);
        let a = &self.pair(n).a;
        let mut digits: Vec<u8> = a.head(depth).into_digits();
        digits.push(flip(a.digit(depth)));
        // Self-delimiting tag 2 (02)^n 22 (02)^i 22, then 0^ω.
        digits.push(2);
        for _ in 0..n {
            digits.extend([0, 2]);
        }
        digits.extend([2, 2]);
        for _ in 0..i {
            digits.extend([0, 2]);
        }
        digits.extend([2, 2]);
        Approximant {
            n,
            i,
            depth,
            point: CantorPoint::from_digits(digits, vec![0]),
        }
    }

    pub(super) fn recognize(&mut self, p: &CantorPoint) -> Option<(usize, usize)> {
        if p.cycle().digits() != [0] {
            return None;
        }
        let mut rest = p.prefix().digits();
        rest = rest.strip_suffix(&[2, 2])?;
        let mut i = 0;
        while let Some(shorter) = rest.strip_suffix(&[0, 2]) {
            rest = shorter;
            i += 1;
        }
        rest = rest.strip_suffix(&[2, 2])?;
        // rest = (first D digits of a_n) · flip · 2 · (02)^n, and its length
        // D(n,i) + 2 + 2n is strictly increasing in n.
        let n = (0..)
            .take_while(|&n| approximant_depth(n, i) + 2 + 2 * n <= rest.len())
            .find(|&n| approximant_depth(n, i) + 2 + 2 * n == rest.len())?;
        (self.approximant(n, i).point == *p).then_some((n, i))
    }
}

impl Construction {
    pub fn dense_pair(&self, n: usize) -> DensePair {
        self.memo().pair(n).clone()
    }

    /// The first `count` dense pairs.
    pub fn dense_pairs(&self, count: usize) -> Vec<DensePair> {
        let mut memo = self.memo();
        if count > 0 {
            memo.ensure_pairs(count - 1);
        }
        memo.pairs[..count].to_vec()
    }

    pub fn approximant(&self, n: usize, i: usize) -> Approximant {
        self.memo().approximant(n, i)
    }

    /// `Some((n, i))` exactly when `p` is the point `a_{n,i}`.
    pub fn recognize(&self, p: &CantorPoint) -> Option<(usize, usize)> {
        self.memo().recognize(p)
    }

    /// Smallest `N` such that every pair of depth-`depth` cylinders contains
    /// some `(a_n, b_n)` with `n < N`.
    pub fn density_bound(&self, depth: usize) -> usize {
        let cells = 1usize << depth;
        let mut hit = vec![false; cells * cells];
        let mut remaining = hit.len();
        let rank = |p: &CantorPoint| p.head(depth).length_lex_index() + 1 - cells;
        let mut memo = self.memo();
        let mut n = 0;
        while remaining > 0 {
            let pair = memo.pair(n);
            let slot = rank(&pair.a) * cells + rank(&pair.b);
            if !hit[slot] {
                hit[slot] = true;
                remaining -= 1;
            }
            n += 1;
        }
        n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_rational::BigRational;

    /// Tail marker of dense points: their cycle is a rotation of `20`.
    fn has_dense_marker(p: &CantorPoint) -> bool {
        p.cycle().len() == 2
    }

    #[test]
    fn first_dense_pairs() {
        let con = Construction::new();
        let p0 = con.dense_pair(0);
        assert_eq!(p0.cell_a, Word::empty());
        assert_eq!(p0.a.to_string(), "^(02)");
        let p1 = con.dense_pair(1);
        assert_eq!(p1.cell_a.to_string(), "0");
        assert!(p1.a.in_cylinder(&p1.cell_a));
        assert!(has_dense_marker(&p1.a) && has_dense_marker(&p1.b));
    }

    #[test]
    fn dense_pairs_are_distinct_and_in_cells() {
        let con = Construction::new();
        let pairs = con.dense_pairs(51);
        for (k, p) in pairs.iter().enumerate() {
            assert!(p.a.in_cylinder(&p.cell_a) && p.b.in_cylinder(&p.cell_b));
            for q in &pairs[..k] {
                assert_ne!(p.a, q.a);
                assert_ne!(p.b, q.b);
            }
        }
    }

    #[test]
    fn approximant_distance_bound() {
        let con = Construction::new();
        for n in 0..=30 {
            let a = con.dense_pair(n).a;
            let mut last = None;
            for i in 0..=30 {
                let ap = con.approximant(n, i);
                let d = ap.point.distance(&a);
                assert!(d < BigRational::new(1.into(), (n as i64 + 1).into()));
                let bound = BigRational::new(1.into(), num_traits::pow(3.into(), ap.depth));
                assert!(d <= bound);
                if let Some(prev) = last {
                    assert!(d < prev, "distance must shrink in i");
                }
                last = Some(d);
            }
        }
    }

    #[test]
    fn recognize_roundtrip() {
        let con = Construction::new();
        for n in 0..=30 {
            for i in 0..=30 {
                let ap = con.approximant(n, i);
                assert_eq!(con.recognize(&ap.point), Some((n, i)));
            }
            assert_eq!(con.recognize(&con.dense_pair(n).a), None);
        }
        assert_eq!(con.recognize(&"^(0)".parse().unwrap()), None);
    }

    #[test]
    fn recognize_rejects_single_digit_mutations() {
        let con = Construction::new();
        for (n, i) in [(0, 0), (3, 2), (7, 5), (12, 0)] {
            let p = con.approximant(n, i).point;
            let digits = p.prefix().digits().to_vec();
            for k in 0..digits.len() {
                let mut m = digits.clone();
                m[k] = flip(m[k]);
                let q = CantorPoint::from_digits(m, vec![0]);
                // A mutation may land exactly on another approximant; it must
                // then decode to that one, never to (n, i).
                match con.recognize(&q) {
                    None => {}
                    Some((n2, i2)) => {
                        assert_ne!((n2, i2), (n, i));
                        assert_eq!(con.approximant(n2, i2).point, q);
                    }
                }
            }
        }
    }

    #[test]
    fn ceil_log3_values() {
        assert_eq!(ceil_log3(1), 0);
        assert_eq!(ceil_log3(2), 1);
        assert_eq!(ceil_log3(3), 1);
        assert_eq!(ceil_log3(4), 2);
        assert_eq!(ceil_log3(27), 3);
        assert_eq!(ceil_log3(28), 4);
    }
}
