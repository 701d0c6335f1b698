use serde::{Deserialize, Serialize};

use crate::cantor::ClopenSet;
use crate::error::{Error, Result};

/// Largest family for which all subfamilies are enumerated.
pub const MAX_FAMILY: usize = 12;

/// For one subfamily, the member isolated by `clopen`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isolation {
    pub subfamily: Vec<usize>,
    pub member: usize,
    pub clopen: ClopenSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScatteredReport {
    pub scattered: bool,
    pub depth: usize,
    pub isolations: Vec<Isolation>,
    pub failure: Option<Vec<usize>>,
}

/// Checks the scattered-cover condition with isolating sets drawn from
/// unions of cylinders of depth at most `depth`.
///
/// For every nonempty subfamily `T` we need a clopen `G` such that exactly
/// one member of `T` is contained in `G` and every other member is disjoint
/// from `G`. Among depth-`depth` sets the largest candidate for a member is
/// the complement of the other members' depth-`depth` outer hulls, so it
/// suffices to test that one.
pub fn scattered_check(family: &[ClopenSet], depth: usize) -> Result<ScatteredReport> {
    if family.len() > MAX_FAMILY {
        return Err(Error::Precondition(format!(
            "family of {} sets exceeds {MAX_FAMILY}",
            family.len()
        )));
    }
    if family.iter().any(ClopenSet::is_empty) {
        return Err(Error::Precondition("family members must be nonempty".into()));
    }
    for (a, s) in family.iter().enumerate() {
        if family[a + 1..].iter().any(|t| !s.is_disjoint(t)) {
            return Err(Error::Precondition("family members must be pairwise disjoint".into()));
        }
    }
    let hulls: Vec<ClopenSet> = family.iter().map(|s| s.outer_hull(depth)).collect();
    let mut isolations = Vec::new();
    for mask in 1u32..(1 << family.len()) {
        let sub: Vec<usize> = (0..family.len()).filter(|k| mask >> k & 1 == 1).collect();
        let found = sub.iter().find_map(|&m| {
            let g = sub
                .iter()
                .filter(|&&o| o != m)
                .fold(ClopenSet::empty(), |acc, &o| acc.union(&hulls[o]))
                .complement();
            let inside: Vec<usize> = sub
                .iter()
                .copied()
                .filter(|&t| family[t].is_subset(&g))
                .collect();
            let rest_disjoint = sub
                .iter()
                .filter(|&&t| t != m)
                .all(|&t| family[t].is_disjoint(&g));
            (inside == [m] && rest_disjoint).then_some((m, g))
        });
        match found {
            Some((member, clopen)) => isolations.push(Isolation {
                subfamily: sub,
                member,
                clopen,
            }),
            None => {
                return Ok(ScatteredReport {
                    scattered: false,
                    depth,
                    isolations,
                    failure: Some(sub),
                })
            }
        }
    }
    Ok(ScatteredReport {
        scattered: true,
        depth,
        isolations,
        failure: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::Word;

    fn sets(list: &[&str]) -> Vec<ClopenSet> {
        list.iter().map(|s| s.parse().unwrap()).collect()
    }

    #[test]
    fn singleton_family_is_isolated_by_everything() {
        let report = scattered_check(&sets(&["02"]), 0).unwrap();
        assert!(report.scattered);
        assert_eq!(report.isolations[0].clopen, ClopenSet::whole());
    }

    #[test]
    fn cylinders_isolate_themselves() {
        let report = scattered_check(&sets(&["00", "02", "2"]), 2).unwrap();
        assert!(report.scattered);
        assert_eq!(report.isolations.len(), 7);
        let all = report.isolations.last().unwrap();
        assert_eq!(all.subfamily, vec![0, 1, 2]);
        assert_eq!(all.clopen, "00".parse().unwrap());
    }

    #[test]
    fn interleaved_members_fail_at_shallow_depth() {
        // Members split every depth-d cylinder by their last digit.
        let d = 3;
        let even = ClopenSet::from_words(Word::all_of_length(d).map(|w| w.child(0)));
        let odd = ClopenSet::from_words(Word::all_of_length(d).map(|w| w.child(2)));
        let family = vec![even, odd];
        for depth in 0..=d {
            let report = scattered_check(&family, depth).unwrap();
            assert!(!report.scattered);
            assert_eq!(report.failure, Some(vec![0, 1]));
        }
        assert!(scattered_check(&family, d + 1).unwrap().scattered);
    }

    #[test]
    fn preconditions() {
        assert!(scattered_check(&sets(&["0", "00"]), 2).is_err());
        assert!(scattered_check(&[ClopenSet::empty()], 2).is_err());
        let many: Vec<ClopenSet> = Word::all_of_length(4).map(ClopenSet::cylinder).collect();
        assert!(scattered_check(&many, 4).is_err());
    }
}
