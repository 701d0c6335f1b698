use serde::{Deserialize, Serialize};

use super::rect::{Rect, RectUnion};
use crate::cantor::{CantorPoint, ClopenSet, Word};
use crate::construction::Construction;
use crate::error::{Error, Result};

/// Default number of dense pairs scanned before giving up.
pub const DEFAULT_BUDGET: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointPair {
    pub x: CantorPoint,
    pub y: CantorPoint,
}

/// An approximant missing from the image of the witness neighbourhood,
/// together with a `y` showing it is still in the image of the piece.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MissingSample {
    pub i: usize,
    pub point: CantorPoint,
    pub evidence: CantorPoint,
}

/// Proof that `π` restricted to the closed piece `P = X \ complement` is not
/// open at `(a_{n''}, b_{n''})`.
///
/// `(W × B_{n''}) ∩ P` is a neighbourhood of the witness whose image misses
/// every `a_{n'',i}`, yet those points converge to `a_{n''}` and lie in
/// `π(P)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessCertificate {
    pub complement: RectUnion,
    pub rect: Rect,
    pub n_prime: usize,
    pub n_double_prime: usize,
    pub base_prime: Word,
    pub base_double_prime: Word,
    pub prime_point: PointPair,
    pub witness: PointPair,
    pub samples: Vec<MissingSample>,
}

/// Searches the dense family for a non-openness witness inside `rect`,
/// which must lie in the piece `X \ complement`.
pub fn falsify_restriction(
    con: &Construction,
    complement: &RectUnion,
    rect: &Rect,
    budget: usize,
    samples: usize,
) -> Result<WitnessCertificate> {
    if rect.is_empty() {
        return Err(Error::Precondition("(W×V) ∩ X is empty".into()));
    }
    if !complement.is_disjoint_from(rect) {
        return Err(Error::Precondition("W×V is not inside the piece".into()));
    }
    let Rect { w, v } = rect;
    let n_prime = (0..budget)
        .find(|&n| w.contains(&con.dense_pair(n).a) && v.contains_cylinder(&con.base_word(n)))
        .ok_or(Error::BudgetExhausted { bound: budget })?;
    let base_prime = con.base_word(n_prime);
    // A proper extension of B_{n'} is a subset with diameter at most a third.
    let n_double_prime = (n_prime + 1..budget)
        .find(|&n| {
            let b = con.base_word(n);
            b.len() > base_prime.len()
                && base_prime.is_prefix_of(&b)
                && w.contains(&con.dense_pair(n).a)
        })
        .ok_or(Error::BudgetExhausted { bound: budget })?;
    let base_double_prime = con.base_word(n_double_prime);

    let evidence = ClopenSet::cylinder(base_prime.clone())
        .difference(&ClopenSet::cylinder(base_double_prime.clone()))
        .representative()
        .expect("B_{n'} strictly contains B_{n''}");
    let samples = (0..)
        .map(|i| (i, con.approximant(n_double_prime, i).point))
        .filter(|(_, p)| w.contains(p))
        .take(samples)
        .map(|(i, point)| MissingSample {
            i,
            point,
            evidence: evidence.clone(),
        })
        .collect();

    let prime = con.dense_pair(n_prime);
    let double = con.dense_pair(n_double_prime);
    Ok(WitnessCertificate {
        complement: complement.clone(),
        rect: rect.clone(),
        n_prime,
        n_double_prime,
        base_prime,
        base_double_prime,
        prime_point: PointPair {
            x: prime.a,
            y: prime.b,
        },
        witness: PointPair {
            x: double.a,
            y: double.b,
        },
        samples,
    })
}
