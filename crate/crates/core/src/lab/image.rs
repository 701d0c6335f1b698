use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::rect::{Rect, RectUnion};
use crate::cantor::{CantorPoint, ClopenSet, Word};
use crate::construction::{approximant_depth, unpair, Construction, Space};
use crate::error::{Error, Result};

/// Removed points `a_{n,i}` of one approximating sequence.
///
/// Denotes `{a_{n,i} : i ≥ tail_from} ∪ {a_{n,i} : i ∈ extra}`, plus the
/// limit `a_n` itself when `limit_removed` is set.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TailSet {
    pub n: usize,
    pub tail_from: Option<usize>,
    pub extra: BTreeSet<usize>,
    pub limit_in_hull: bool,
    pub limit_removed: bool,
}

impl TailSet {
    pub fn contains_index(&self, i: usize) -> bool {
        self.tail_from.is_some_and(|from| i >= from) || self.extra.contains(&i)
    }

    pub fn is_infinite(&self) -> bool {
        self.tail_from.is_some()
    }

    fn is_empty(&self) -> bool {
        self.tail_from.is_none() && self.extra.is_empty() && !self.limit_removed
    }

    /// Folds extras adjacent to the tail into it.
    fn normalize(&mut self) {
        if let Some(mut from) = self.tail_from {
            self.extra.retain(|&i| i < from);
            while from > 0 && self.extra.remove(&(from - 1)) {
                from -= 1;
            }
            self.tail_from = Some(from);
        }
    }

    /// Indices below `bound` that the set removes.
    pub fn indices_below(&self, bound: usize) -> impl Iterator<Item = usize> + '_ {
        (0..bound).filter(|&i| self.contains_index(i))
    }
}

/// Smallest `i` from which `a_{n,i}` agrees with `a_n` on `depth` digits,
/// so that membership in any clopen set of that depth is decided by `a_n`.
pub fn stable_index(n: usize, depth: usize) -> usize {
    depth.saturating_sub(approximant_depth(n, 0))
}

/// A clopen hull minus finitely many removal sequences.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ImagePiece {
    pub hull: ClopenSet,
    pub removals: Vec<TailSet>,
}

impl ImagePiece {
    pub fn removal(&self, n: usize) -> Option<&TailSet> {
        self.removals.iter().find(|t| t.n == n)
    }

    pub fn contains(&self, con: &Construction, x: &CantorPoint) -> bool {
        if !self.hull.contains(x) {
            return false;
        }
        if self.removals.is_empty() {
            return true;
        }
        let decoded = con.recognize(x);
        self.removals.iter().all(|t| {
            let hit = decoded.is_some_and(|(n, i)| n == t.n && t.contains_index(i))
                || (t.limit_removed && *x == con.dense_pair(t.n).a);
            !hit
        })
    }

    fn removes(&self, n: usize, i: usize) -> bool {
        self.removal(n).is_some_and(|t| t.contains_index(i))
    }

    /// An infinite removal whose limit stays in the hull makes the piece
    /// non-open at that limit.
    pub fn is_open(&self) -> bool {
        self.removals
            .iter()
            .all(|t| !(t.is_infinite() && t.limit_in_hull) || t.limit_removed)
    }

    /// Depth-`depth` words whose representative lies in the piece.
    pub fn trace(&self, con: &Construction, depth: usize) -> BTreeSet<Word> {
        Word::all_of_length(depth)
            .filter(|w| self.contains(con, &CantorPoint::zero_tail(w)))
            .collect()
    }
}

/// `π(U ∩ X)` for a finitely presented `U`.
///
/// `pieces` holds the image of each rectangle; `canonical` is their
/// reconciled union as a single hull minus removals, which is what
/// membership and serialization use.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ImageSet {
    pub pieces: Vec<ImagePiece>,
    pub canonical: ImagePiece,
}

impl ImageSet {
    pub fn from_pieces(con: &Construction, pieces: Vec<ImagePiece>) -> Self {
        let canonical = reconcile(con, &pieces);
        ImageSet { pieces, canonical }
    }

    pub fn hull(&self) -> &ClopenSet {
        &self.canonical.hull
    }

    pub fn contains(&self, con: &Construction, x: &CantorPoint) -> bool {
        self.canonical.contains(con, x)
    }

    /// Membership by the literal union of the per-rectangle pieces.
    pub fn contains_by_pieces(&self, con: &Construction, x: &CantorPoint) -> bool {
        self.pieces.iter().any(|p| p.contains(con, x))
    }
}

fn common_prefix(set: &ClopenSet) -> Word {
    let mut words = set.words().iter();
    let first = words.next().cloned().unwrap_or_default();
    words.fold(first, |acc, w| acc.common_prefix(w))
}

/// Indices `n` with `V ⊆ B_n`, i.e. `B_n` is a nonempty prefix of the
/// longest common prefix of `V`.
pub fn covering_bases(con: &Construction, v: &ClopenSet) -> Vec<usize> {
    let mut out: Vec<usize> = common_prefix(v)
        .nonempty_prefixes()
        .map(|p| con.base_index(&p).expect("nonempty prefix"))
        .collect();
    out.sort_unstable();
    out
}

/// `π((W×V) ∩ X)`.
pub fn project_rect(con: &Construction, w: &ClopenSet, v: &ClopenSet) -> Result<ImagePiece> {
    project_rect_in(con, Space::Full, w, v)
}

/// `π((W×V) ∩ space)`.
///
/// A point `x ∈ W` survives iff some `y ∈ V` keeps `(x, y)` in the space,
/// which fails exactly when `x = a_{n,i}` is removed with `V ⊆ B_n`.
pub fn project_rect_in(
    con: &Construction,
    space: Space,
    w: &ClopenSet,
    v: &ClopenSet,
) -> Result<ImagePiece> {
    if w.is_empty() || v.is_empty() {
        return Err(Error::EmptyRect);
    }
    let covering = covering_bases(con, v);
    let mut removals = Vec::new();
    match space {
        Space::Full => {
            for &n in &covering {
                let limit_in_hull = w.contains(&con.dense_pair(n).a);
                let from = stable_index(n, w.depth());
                let extra = (0..from)
                    .filter(|&i| w.contains(&con.approximant(n, i).point))
                    .collect();
                removals.push(TailSet {
                    n,
                    tail_from: limit_in_hull.then_some(from),
                    extra,
                    limit_in_hull,
                    limit_removed: false,
                });
            }
        }
        Space::Truncated(count) => {
            let mut by_n: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
            for k in 0..count {
                let (n, i) = unpair(k);
                if covering.binary_search(&n).is_ok()
                    && w.contains(&con.approximant(n, i).point)
                {
                    by_n.entry(n).or_default().insert(i);
                }
            }
            for (n, extra) in by_n {
                removals.push(TailSet {
                    n,
                    tail_from: None,
                    extra,
                    limit_in_hull: w.contains(&con.dense_pair(n).a),
                    limit_removed: false,
                });
            }
        }
    }
    for t in &mut removals {
        t.normalize();
    }
    removals.retain(|t| !t.is_empty());
    Ok(ImagePiece {
        hull: w.clone(),
        removals,
    })
}

pub fn project_union(con: &Construction, u: &RectUnion) -> ImageSet {
    project_union_in(con, Space::Full, u)
}

pub fn project_union_in(con: &Construction, space: Space, u: &RectUnion) -> ImageSet {
    let pieces = u
        .rects()
        .iter()
        .map(|Rect { w, v }| project_rect_in(con, space, w, v).expect("RectUnion drops empty rects"))
        .collect();
    ImageSet::from_pieces(con, pieces)
}

/// Union of pieces as one hull minus removals: `a_{n,i}` is removed iff it
/// lies in the hull and every piece containing it removes it.
fn reconcile(con: &Construction, pieces: &[ImagePiece]) -> ImagePiece {
    let hull = pieces
        .iter()
        .fold(ClopenSet::empty(), |acc, p| acc.union(&p.hull));
    let max_depth = pieces.iter().map(|p| p.hull.depth()).max().unwrap_or(0);
    let candidates: BTreeSet<usize> = pieces
        .iter()
        .flat_map(|p| p.removals.iter().map(|t| t.n))
        .collect();
    let mut removals = Vec::new();
    for n in candidates {
        // Past `bound` every piece treats a_{n,i} exactly as it treats a_n.
        let bound = pieces
            .iter()
            .filter_map(|p| p.removal(n))
            .flat_map(|t| {
                t.tail_from
                    .into_iter()
                    .chain(t.extra.iter().map(|i| i + 1))
            })
            .fold(stable_index(n, max_depth), usize::max);
        let extra = (0..bound)
            .filter(|&i| {
                let p = con.approximant(n, i).point;
                hull.contains(&p)
                    && pieces
                        .iter()
                        .filter(|piece| piece.hull.contains(&p))
                        .all(|piece| piece.removes(n, i))
            })
            .collect();
        let limit = con.dense_pair(n).a;
        let limit_in_hull = hull.contains(&limit);
        let tail = limit_in_hull
            && pieces
                .iter()
                .filter(|piece| piece.hull.contains(&limit))
                .all(|piece| piece.removal(n).is_some_and(TailSet::is_infinite));
        let mut t = TailSet {
            n,
            tail_from: tail.then_some(bound),
            extra,
            limit_in_hull,
            limit_removed: false,
        };
        t.normalize();
        if !t.is_empty() {
            removals.push(t);
        }
    }
    ImagePiece { hull, removals }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(s: &str) -> ClopenSet {
        s.parse().unwrap()
    }

    #[test]
    fn no_covering_base_gives_plain_hull() {
        let con = Construction::new();
        // V spans both halves, so no B_n contains it.
        let img = project_rect(&con, &set("0"), &set("00,2")).unwrap();
        assert_eq!(img.hull, set("0"));
        assert!(img.removals.is_empty());
    }

    #[test]
    fn cylinder_around_a_dense_point_loses_a_tail() {
        let con = Construction::new();
        let n = 5;
        let b = con.base_word(n);
        let a = con.dense_pair(n).a;
        let w = ClopenSet::cylinder(a.head(3));
        let img = project_rect(&con, &w, &ClopenSet::cylinder(b)).unwrap();
        let t = img.removal(n).expect("tail for n");
        assert!(t.is_infinite() && t.limit_in_hull);
        assert!(!img.is_open());
        assert!(img.contains(&con, &a));
        for i in 0..30 {
            let p = con.approximant(n, i).point;
            assert_eq!(img.contains(&con, &p), w.contains(&p) && !t.contains_index(i));
            if i >= t.tail_from.unwrap() {
                assert!(w.contains(&p) && !img.contains(&con, &p));
            }
        }
    }

    #[test]
    fn whole_space_projects_onto_c() {
        let con = Construction::new();
        let img = project_union(&con, &RectUnion::whole());
        assert!(img.canonical.hull.is_whole());
        assert!(img.canonical.removals.is_empty());
    }

    #[test]
    fn second_rectangle_restores_points() {
        let con = Construction::new();
        let n = 3;
        let b = con.base_word(n);
        let a = con.dense_pair(n).a;
        let w = ClopenSet::cylinder(a.head(2));
        let first = Rect::new(w.clone(), ClopenSet::cylinder(b.clone()));
        let only = project_union(&con, &RectUnion::new([first.clone()]));
        assert!(only.canonical.removal(n).is_some());
        let other = Rect::new(w, ClopenSet::cylinder(b).complement());
        let both = project_union(&con, &RectUnion::new([first, other]));
        assert!(both.canonical.removal(n).is_none());
        for i in 0..10 {
            let p = con.approximant(n, i).point;
            assert_eq!(both.contains(&con, &p), both.contains_by_pieces(&con, &p));
        }
    }

    #[test]
    fn truncated_space_removes_finitely_many() {
        let con = Construction::new();
        for k in 0..20 {
            let f = con.fiber(k);
            let w = ClopenSet::cylinder(f.point.head(2));
            let v = ClopenSet::cylinder(f.base.clone());
            let img = project_rect_in(&con, Space::Truncated(20), &w, &v).unwrap();
            assert!(!img.contains(&con, &f.point));
            assert!(img.removals.iter().all(|t| !t.is_infinite()));
            let short = project_rect_in(&con, Space::Truncated(k), &w, &v).unwrap();
            assert!(short.contains(&con, &f.point));
        }
    }
}
