//! Brute-force images over a truncated space.
//!
//! The oracle decides `x ∈ π((W×V) ∩ X_N)` by trying every candidate `y`
//! against the first `N` removed fibers. It uses only membership tests and
//! point equality, never the image representation it is compared with.

use std::collections::BTreeSet;

use crate::cantor::{CantorPoint, Word};
use crate::construction::{Construction, Fiber};
use crate::lab::rect::Rect;

pub fn in_truncated(fibers: &[Fiber], x: &CantorPoint, y: &CantorPoint) -> bool {
    !fibers
        .iter()
        .any(|f| f.point == *x && y.in_cylinder(&f.base))
}

/// Probe points on which `X` and `X_N` agree: cylinder representatives
/// (never approximants), the fiber points of the truncation and their
/// limits.
pub fn probe_points(con: &Construction, fibers: &[Fiber], depth: usize) -> Vec<CantorPoint> {
    let mut out: Vec<CantorPoint> = Word::all_of_length(depth)
        .map(|w| CantorPoint::zero_tail(&w))
        .collect();
    for f in fibers {
        out.push(f.point.clone());
        out.push(con.dense_pair(f.n).a);
    }
    out.sort();
    out.dedup();
    out
}

/// The probe points that the brute-force image contains.
pub fn brute_force_trace(
    fibers: &[Fiber],
    rect: &Rect,
    xs: &[CantorPoint],
    ys: &[CantorPoint],
) -> BTreeSet<CantorPoint> {
    let ys: Vec<&CantorPoint> = ys.iter().filter(|y| rect.v.contains(y)).collect();
    xs.iter()
        .filter(|x| rect.w.contains(x) && ys.iter().any(|y| in_truncated(fibers, x, y)))
        .cloned()
        .collect()
}
