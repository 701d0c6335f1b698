use serde::{Deserialize, Serialize};

use super::image::{stable_index, ImageSet};
use crate::cantor::{CantorPoint, ClopenSet};
use crate::construction::Construction;
use crate::error::{Error, Result};

/// A closed set presented as a clopen part plus a countable part: isolated
/// points and convergent tails `{a_{n,i} : i ≥ from} ∪ {a_n}`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Closure {
    pub clopen: ClopenSet,
    pub points: Vec<CantorPoint>,
    pub tails: Vec<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolvabilityProbe {
    /// `cl(F ∩ E)`.
    pub inside: Closure,
    /// `cl(F \ E)`.
    pub outside: Closure,
    /// Clopen part of the intersection of the two closures.
    pub meet: ClopenSet,
    /// Whether `cl(F ∩ E) ∩ cl(F \ E) ≠ F`.
    pub resolvable: bool,
}

/// Evaluates the resolvability condition of `E` against the closed set `F`.
///
/// Two closure rules make this exact. A clopen set minus a countable set is
/// dense in the clopen set, since countable sets have empty interior in `C`.
/// The closure of a removed tail adds exactly its limit. The intersection
/// of the closures is then a clopen set plus a countable set, and it equals
/// the nonempty clopen `F` iff its clopen part does.
pub fn resolvable_probe(con: &Construction, e: &ImageSet, f: &ClopenSet) -> Result<ResolvabilityProbe> {
    if f.is_empty() {
        return Err(Error::Precondition("F must be nonempty".into()));
    }
    let canon = &e.canonical;
    let inside = Closure {
        clopen: f.intersect(&canon.hull),
        ..Closure::default()
    };
    let mut outside = Closure {
        clopen: f.difference(&canon.hull),
        ..Closure::default()
    };
    for t in &canon.removals {
        let limit = con.dense_pair(t.n).a;
        if t.limit_removed && f.contains(&limit) {
            outside.points.push(limit.clone());
        }
        let stable = stable_index(t.n, f.depth());
        let bound = match t.tail_from {
            Some(from) if f.contains(&limit) => {
                let from = from.max(stable);
                outside.tails.push((t.n, from));
                if !outside.points.contains(&limit) {
                    outside.points.push(limit);
                }
                from
            }
            Some(from) => from.max(stable),
            None => t.extra.last().map_or(0, |i| i + 1),
        };
        outside.points.extend(
            t.indices_below(bound)
                .map(|i| con.approximant(t.n, i).point)
                .filter(|p| f.contains(p)),
        );
    }
    outside.points.sort();
    outside.points.dedup();
    let meet = inside.clopen.intersect(&outside.clopen);
    let resolvable = meet != *f;
    Ok(ResolvabilityProbe {
        inside,
        outside,
        meet,
        resolvable,
    })
}
