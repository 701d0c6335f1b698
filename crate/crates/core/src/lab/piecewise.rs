use serde::{Deserialize, Serialize};

use super::image::{covering_bases, project_union_in};
use super::rect::{Rect, RectUnion};
use crate::cantor::{CantorPoint, ClopenSet, Word};
use crate::construction::{Construction, Space};
use crate::error::{Error, Result};

/// `π` restricted to `piece` fails to be open: the image of `rect ∩ piece`
/// drops a tail of `a_{n,i}` that is still in the image of the piece, so it
/// is not a neighbourhood of `limit` there.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OpennessViolation {
    pub piece: usize,
    pub rect: Rect,
    /// A rectangle inside `rect ∩ piece` whose image already drops the tail.
    pub inner: Rect,
    pub n: usize,
    pub limit: CantorPoint,
    pub missing: Vec<CantorPoint>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseReport {
    pub open: bool,
    pub rects_checked: usize,
    pub violation: Option<OpennessViolation>,
}

fn basic_rects(depth: usize) -> Vec<Rect> {
    let words: Vec<Word> = (0..=depth).flat_map(Word::all_of_length).collect();
    words
        .iter()
        .flat_map(|w| {
            words
                .iter()
                .map(move |v| Rect::new(ClopenSet::cylinder(w.clone()), ClopenSet::cylinder(v.clone())))
        })
        .collect()
}

/// Checks that `π` restricted to every piece of `cover` maps each basic
/// rectangle of depth `≤ depth` onto a relatively open subset of the
/// piece's image. Pieces are clopen subsets of `C×C` intersected with
/// `space`.
///
/// `A ⊆ B` are both hulls minus removals. `B \ A` can only accumulate at a
/// point of `A` through a tail removed from `A` but not from `B`, whose
/// limit `a_n` then lies in `A` without being interior.
pub fn piecewise_open_check(
    con: &Construction,
    space: Space,
    cover: &[RectUnion],
    depth: usize,
) -> Result<PiecewiseReport> {
    for (a, p) in cover.iter().enumerate() {
        if cover[a + 1..].iter().any(|q| !p.intersect(q).is_empty()) {
            return Err(Error::Precondition("cover pieces must be pairwise disjoint".into()));
        }
    }
    let rects = basic_rects(depth);
    let mut checked = 0;
    for (index, piece) in cover.iter().enumerate() {
        let whole = project_union_in(con, space, piece);
        for rect in &rects {
            let sub = piece.intersect_rect(rect);
            if sub.is_empty() {
                continue;
            }
            checked += 1;
            let part = project_union_in(con, space, &sub);
            let dropped = part.canonical.removals.iter().find(|t| {
                t.is_infinite()
                    && !whole
                        .canonical
                        .removal(t.n)
                        .is_some_and(|b| b.is_infinite())
            });
            if let Some(t) = dropped {
                let limit = con.dense_pair(t.n).a;
                let inner = sub
                    .rects()
                    .iter()
                    .find(|r| r.w.contains(&limit) && covering_bases(con, &r.v).contains(&t.n))
                    .cloned()
                    .expect("a dropped tail comes from some rectangle");
                let from = t.tail_from.unwrap_or(0);
                let missing = (from..)
                    .map(|i| con.approximant(t.n, i).point)
                    .filter(|p| whole.contains(con, p))
                    .take(3)
                    .collect();
                return Ok(PiecewiseReport {
                    open: false,
                    rects_checked: checked,
                    violation: Some(OpennessViolation {
                        piece: index,
                        rect: rect.clone(),
                        inner,
                        n: t.n,
                        limit,
                        missing,
                    }),
                });
            }
        }
    }
    Ok(PiecewiseReport {
        open: true,
        rects_checked: checked,
        violation: None,
    })
}
