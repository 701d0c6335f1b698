//! Invariant suites behind `cantor check`.
//!
//! Every suite returns an [`Outcome`]; the report is sorted by suite name so
//! its serialization depends only on the configuration. Randomized suites
//! draw from a ChaCha stream seeded by `SuiteConfig::seed` and report it.

use std::collections::BTreeSet;

use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::cantor::{cantor_stage, flip, CantorPoint, ClopenSet, Cylinder, Word};
use crate::cert::family_export;
use crate::construction::{Construction, Space};
use crate::lab::oracle::{brute_force_trace, probe_points};
use crate::lab::{
    certificate_points, decompose, falsify_restriction, lc2_certificate, piecewise_open_check,
    project_rect_in, project_union, resolvable_probe, stabilization_probe, verify_witness, Clause,
    ImageSet, MissingSample, Rect, RectUnion, WitnessCertificate,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Trace depth for the oracle comparison.
    pub depth: usize,
    pub n_max: usize,
    pub i_max: usize,
    pub truncation: usize,
    pub budget: usize,
    pub seed: u64,
    /// Random images in the decomposition, LC₂ and resolvability suites.
    pub instances: usize,
    pub probes: usize,
    /// Samples `K` demanded of every witness.
    pub samples: usize,
    /// Test hook: corrupt one approximant before the roundtrip suite.
    pub inject_fault: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            depth: 6,
            n_max: 50,
            i_max: 20,
            truncation: 20,
            budget: crate::lab::DEFAULT_BUDGET,
            seed: 0,
            instances: 1000,
            probes: 500,
            samples: 20,
            inject_fault: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Outcome {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub detail: String,
}

impl Outcome {
    fn new(name: &str, cases: usize, seed: Option<u64>, failure: Option<String>, summary: String) -> Self {
        Outcome {
            name: name.to_string(),
            passed: failure.is_none(),
            cases,
            seed,
            detail: failure.unwrap_or(summary),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub seed: u64,
    pub passed: bool,
    pub suites: Vec<Outcome>,
}

impl CheckReport {
    pub fn failed(&self) -> impl Iterator<Item = &Outcome> {
        self.suites.iter().filter(|o| !o.passed)
    }
}

fn rng_for(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

pub fn random_word<R: Rng>(rng: &mut R, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    Word::new((0..len).map(|_| if rng.gen() { 2 } else { 0 }).collect()).expect("digits are 0 or 2")
}

/// An eventually periodic point with prefix length `≤ 8` and cycle length `≤ 3`.
pub fn random_point<R: Rng>(rng: &mut R) -> CantorPoint {
    let prefix = random_word(rng, 0, 8);
    let cycle = random_word(rng, 1, 3);
    CantorPoint::new(prefix, cycle).expect("cycle is nonempty")
}

pub fn random_clopen<R: Rng>(rng: &mut R, max_words: usize, max_depth: usize) -> ClopenSet {
    let count = rng.gen_range(1..=max_words);
    ClopenSet::from_words((0..count).map(|_| random_word(rng, 0, max_depth)))
}

/// `1..=3` rectangles with both sides built from `1..=3` cylinders of depth `≤ 3`.
pub fn random_rect_union<R: Rng>(rng: &mut R) -> RectUnion {
    let count = rng.gen_range(1..=3);
    RectUnion::new((0..count).map(|_| Rect::new(random_clopen(rng, 3, 3), random_clopen(rng, 3, 3))))
}

/// Probe points that exercise every part of an image: random points,
/// approximants and limits of the removed tails, and points of the hull.
pub fn random_probes<R: Rng>(rng: &mut R, con: &Construction, img: &ImageSet, count: usize) -> Vec<CantorPoint> {
    let tails: Vec<usize> = img.canonical.removals.iter().map(|t| t.n).collect();
    let pick_n = |rng: &mut R| {
        if !tails.is_empty() && rng.gen_bool(0.75) {
            tails[rng.gen_range(0..tails.len())]
        } else {
            rng.gen_range(0..40)
        }
    };
    let hull = img.hull().words().to_vec();
    (0..count)
        .map(|_| match rng.gen_range(0..4) {
            0 => random_point(rng),
            1 => {
                let n = pick_n(rng);
                con.approximant(n, rng.gen_range(0..30)).point
            }
            2 => con.dense_pair(pick_n(rng)).a,
            _ if hull.is_empty() => random_point(rng),
            _ => {
                let base = &hull[rng.gen_range(0..hull.len())];
                let ext = random_word(rng, 0, 4);
                let prefix = Word::new([base.digits(), ext.digits()].concat()).expect("digits");
                CantorPoint::new(prefix, random_word(rng, 1, 3)).expect("cycle")
            }
        })
        .collect()
}

pub struct Instance {
    pub union: RectUnion,
    pub image: ImageSet,
    pub probes: Vec<CantorPoint>,
}

/// The seeded random image suite.
pub fn random_instances(con: &Construction, seed: u64, count: usize, probes: usize) -> Vec<Instance> {
    let mut rng = rng_for(seed, 1);
    (0..count)
        .map(|_| {
            let union = random_rect_union(&mut rng);
            let image = project_union(con, &union);
            let probes = random_probes(&mut rng, con, &image, probes);
            Instance { union, image, probes }
        })
        .collect()
}

/// All nonempty clopen sets of depth `≤ depth`.
pub fn clopens_of_depth(depth: usize) -> Vec<ClopenSet> {
    let cells: Vec<Word> = Word::all_of_length(depth).collect();
    (1u64..1 << cells.len())
        .map(|mask| {
            ClopenSet::from_words(
                cells
                    .iter()
                    .enumerate()
                    .filter(|(k, _)| mask >> k & 1 == 1)
                    .map(|(_, w)| w.clone()),
            )
        })
        .collect()
}

/// Clopen sets built from at most two cylinders of depth `≤ depth`.
pub fn small_clopens(depth: usize) -> Vec<ClopenSet> {
    let words: Vec<Word> = (0..=depth).flat_map(Word::all_of_length).collect();
    let mut out = BTreeSet::new();
    for (k, a) in words.iter().enumerate() {
        for b in &words[k..] {
            out.insert(ClopenSet::from_words([a.clone(), b.clone()]).to_string());
        }
    }
    out.iter().map(|s| s.parse().expect("canonical text")).collect()
}

/// Basic rectangles `[w]×[v]` with `|w| = |v| = depth`.
pub fn basic_rects(depth: usize) -> Vec<Rect> {
    let words: Vec<Word> = Word::all_of_length(depth).collect();
    words
        .iter()
        .flat_map(|w| {
            words
                .iter()
                .map(move |v| Rect::new(ClopenSet::cylinder(w.clone()), ClopenSet::cylinder(v.clone())))
        })
        .collect()
}

fn flip_digit(p: &CantorPoint, k: usize) -> CantorPoint {
    let mut digits = p.head(p.prefix().len() + p.cycle().len()).into_digits();
    digits[k] = flip(digits[k]);
    let split = p.prefix().len();
    let cycle = Word::new(digits.split_off(split)).expect("digits");
    CantorPoint::new(Word::new(digits).expect("digits"), cycle).expect("cycle")
}

/// Certificates that each break exactly one clause, paired with the clause
/// the verifier must name. Mutations that do not apply to `cert` are
/// skipped.
pub fn witness_mutations(con: &Construction, cert: &WitnessCertificate) -> Vec<(Clause, WitnessCertificate)> {
    let mut out = Vec::new();
    let mut push = |clause: Clause, f: &dyn Fn(&mut WitnessCertificate) -> bool| {
        let mut m = cert.clone();
        if f(&mut m) && m != *cert {
            out.push((clause, m));
        }
    };
    push(Clause::IndexOrder, &|m| {
        m.n_double_prime = m.n_prime;
        true
    });
    push(Clause::RectNonempty, &|m| {
        m.rect.v = ClopenSet::empty();
        true
    });
    push(Clause::RectInsidePiece, &|m| {
        m.complement.push(m.rect.clone());
        true
    });
    push(Clause::PrimeBaseInsideV, &|m| {
        let v = m.rect.v.difference(&ClopenSet::cylinder(m.base_prime.clone()));
        m.rect.v = v;
        !m.rect.v.is_empty()
    });
    push(Clause::BasesNested, &|m| match m.base_prime.sibling() {
        Some(s) if m.rect.v.contains_cylinder(&s) => {
            m.base_double_prime = s.child(0);
            true
        }
        _ => false,
    });
    push(Clause::DiameterGap, &|m| {
        m.base_double_prime = m.base_prime.clone();
        true
    });
    push(Clause::BaseWordsMatch, &|m| {
        m.base_double_prime = m.base_double_prime.child(0);
        true
    });
    push(Clause::PrimePoint, &|m| {
        m.prime_point.y = m.witness.y.clone();
        true
    });
    push(Clause::WitnessPoint, &|m| {
        m.witness.x = m.prime_point.x.clone();
        true
    });
    push(Clause::SampleCount, &|m| m.samples.pop().is_some());
    push(Clause::SampleIsApproximant, &|m| match m.samples.first_mut() {
        Some(s) => {
            s.point = m.witness.x.clone();
            true
        }
        None => false,
    });
    push(Clause::SampleIsApproximant, &|m| match m.samples.first_mut() {
        Some(s) => {
            s.i += 1;
            true
        }
        None => false,
    });
    push(Clause::SampleInW, &|m| {
        let bad = (0..64)
            .map(|i| con.approximant(m.n_double_prime, i))
            .find(|a| !m.rect.w.contains(&a.point));
        match (bad, m.samples.first_mut()) {
            (Some(a), Some(s)) => {
                *s = MissingSample {
                    i: a.i,
                    point: a.point,
                    evidence: s.evidence.clone(),
                };
                true
            }
            _ => false,
        }
    });
    push(Clause::EvidenceInPrimeBase, &|m| {
        let mut outside = m.base_prime.clone().into_digits();
        outside[0] = flip(outside[0]);
        let y = CantorPoint::zero_tail(&Word::new(outside).expect("digits"));
        m.samples.iter_mut().for_each(|s| s.evidence = y.clone());
        !m.samples.is_empty()
    });
    push(Clause::EvidenceOutsideDoublePrimeBase, &|m| {
        let y = m.witness.y.clone();
        m.samples.iter_mut().for_each(|s| s.evidence = y.clone());
        !m.samples.is_empty()
    });
    push(Clause::SamplesConverge, &|m| {
        if m.samples.len() < 2 {
            return false;
        }
        m.samples.swap(0, 1);
        true
    });
    out
}

// ---- cantor -------------------------------------------------------------

/// Re-presents `a` by splitting some cylinders into their two children.
fn split_presentation<R: Rng>(rng: &mut R, a: &ClopenSet) -> Vec<Word> {
    a.words()
        .iter()
        .flat_map(|w| {
            if w.len() < 6 && rng.gen_bool(0.5) {
                vec![w.child(0), w.child(2)]
            } else {
                vec![w.clone()]
            }
        })
        .collect()
}

fn cantor_canonicity(seed: u64) -> Outcome {
    let mut rng = rng_for(seed, 2);
    let reps: Vec<CantorPoint> = Word::all_of_length(8).map(|w| CantorPoint::zero_tail(&w)).collect();
    let cases = 300;
    let failure = (0..cases).find_map(|_| {
        let a = random_clopen(&mut rng, 8, 6);
        let b = if rng.gen_bool(0.5) {
            ClopenSet::from_words(split_presentation(&mut rng, &a))
        } else {
            random_clopen(&mut rng, 8, 6)
        };
        let agree = reps.iter().all(|p| a.contains(p) == b.contains(p));
        (agree != (a == b)).then(|| format!("{a} and {b}: equal={} traces agree={agree}", a == b))
    });
    Outcome::new("cantor.canonicity", cases, Some(seed), failure, "normal forms match depth-8 membership".into())
}

fn cantor_boolean_laws(seed: u64) -> Outcome {
    let mut rng = rng_for(seed, 3);
    let cases = 300;
    let failure = (0..cases).find_map(|_| {
        let a = random_clopen(&mut rng, 8, 6);
        let b = random_clopen(&mut rng, 8, 6);
        let c = random_clopen(&mut rng, 8, 6);
        let laws = [
            ("double complement", a.complement().complement() == a),
            ("A ∩ ¬A = ∅", a.intersect(&a.complement()).is_empty()),
            ("A ∪ ¬A = C", a.union(&a.complement()).is_whole()),
            (
                "¬(A ∪ B) = ¬A ∩ ¬B",
                a.union(&b).complement() == a.complement().intersect(&b.complement()),
            ),
            (
                "¬(A ∩ B) = ¬A ∪ ¬B",
                a.intersect(&b).complement() == a.complement().union(&b.complement()),
            ),
            (
                "A ∩ (B ∪ C) = (A ∩ B) ∪ (A ∩ C)",
                a.intersect(&b.union(&c)) == a.intersect(&b).union(&a.intersect(&c)),
            ),
        ];
        laws.iter()
            .find(|(_, ok)| !ok)
            .map(|(law, _)| format!("{law} fails for A={a} B={b} C={c}"))
    });
    Outcome::new("cantor.boolean_laws", cases, Some(seed), failure, "complement, de Morgan, distributivity".into())
}

fn cantor_injectivity(seed: u64) -> Outcome {
    let mut rng = rng_for(seed, 4);
    let cases = 1000;
    let failure = (0..cases).find_map(|_| {
        let p = random_point(&mut rng);
        let q = if rng.gen_bool(0.3) {
            flip_digit(&p, rng.gen_range(0..p.prefix().len() + p.cycle().len()))
        } else {
            random_point(&mut rng)
        };
        let d = p.distance(&q);
        ((p == q) != d.is_zero()).then(|| format!("{p} vs {q}: distance {d}"))
    });
    Outcome::new("cantor.value_injective", cases, Some(seed), failure, "distinct normal forms have distinct values".into())
}

fn cantor_stages() -> Outcome {
    let failure = (0..=8).find_map(|n| {
        let stage = cantor_stage(n);
        let cylinders: Vec<_> = Word::all_of_length(n).map(|w| Cylinder(w).interval()).collect();
        (stage != cylinders).then(|| format!("stage {n} differs from its cylinder intervals"))
    });
    Outcome::new("cantor.stage_cylinders", 9, None, failure, "stages 0..=8".into())
}

fn cantor_diam() -> Outcome {
    let words: Vec<Word> = (0..=8).flat_map(Word::all_of_length).collect();
    let failure = words.iter().find_map(|w| {
        let expected = BigRational::one() / BigRational::from_integer(3.into()).pow(w.len() as i32);
        let got = ClopenSet::cylinder(w.clone()).diam().ok()?;
        (got != expected).then(|| format!("diam [{w}] = {got}"))
    });
    Outcome::new("cantor.cylinder_diam", words.len(), None, failure, "diam [w] = 3^-|w| for |w| ≤ 8".into())
}

// ---- construction -------------------------------------------------------

fn construction_determinism(cfg: &SuiteConfig) -> Outcome {
    let first = serde_json::to_string(&family_export(&Construction::new(), cfg.n_max, cfg.i_max));
    let second = serde_json::to_string(&family_export(&Construction::new(), cfg.n_max, cfg.i_max));
    let failure = (first.ok() != second.ok()).then(|| "two runs serialize differently".to_string());
    Outcome::new("construction.determinism", 2, None, failure, "byte-identical exports".into())
}

fn construction_ledger(con: &Construction, cfg: &SuiteConfig) -> Outcome {
    let export = family_export(con, cfg.n_max, cfg.i_max);
    let failure = (!export.checks.all()).then(|| format!("{:?}", export.checks));
    Outcome::new(
        "construction.distinctness",
        export.approximants.len() + export.dense_pairs.len(),
        None,
        failure,
        format!("n < {}, i < {}", cfg.n_max, cfg.i_max),
    )
}

fn construction_convergence(con: &Construction, cfg: &SuiteConfig) -> Outcome {
    let three = BigRational::from_integer(3.into());
    let failure = (0..cfg.n_max).find_map(|n| {
        let a = con.dense_pair(n).a;
        let mut last: Option<BigRational> = None;
        for i in 0..cfg.i_max {
            let ap = con.approximant(n, i);
            let d = ap.point.distance(&a);
            if d > BigRational::one() / three.pow(ap.depth as i32) {
                return Some(format!("a_({n},{i}) is farther than 3^-{}", ap.depth));
            }
            if last.as_ref().is_some_and(|l| d >= *l) {
                return Some(format!("distance to a_{n} does not decrease at i = {i}"));
            }
            last = Some(d);
        }
        None
    });
    Outcome::new("construction.convergence", cfg.n_max * cfg.i_max, None, failure, "distance ≤ 3^-D, strictly decreasing".into())
}

fn construction_roundtrip(con: &Construction, cfg: &SuiteConfig) -> Outcome {
    let failure = (0..cfg.n_max)
        .flat_map(|n| (0..cfg.i_max).map(move |i| (n, i)))
        .find_map(|(n, i)| {
            let mut p = con.approximant(n, i).point;
            if cfg.inject_fault && (n, i) == (0, 0) {
                p = flip_digit(&p, 0);
            }
            (con.recognize(&p) != Some((n, i))).then(|| format!("a_({n},{i}) = {p} is not recognized"))
        });
    Outcome::new("construction.approximant_roundtrip", cfg.n_max * cfg.i_max, None, failure, "recognize inverts approximant".into())
}

fn construction_bases(con: &Construction) -> Outcome {
    let failure = (0..=200).find_map(|n| {
        let word = con.base_word(n);
        if !con.dense_pair(n).b.in_cylinder(&word) {
            return Some(format!("b_{n} ∉ B_{n} = [{word}]"));
        }
        (con.base_index(&word).ok() != Some(n)).then(|| format!("base_index(B_{n}) ≠ {n}"))
    });
    Outcome::new("construction.base_membership", 201, None, failure, "b_n ∈ B_n and enumeration is injective, n ≤ 200".into())
}

fn construction_totality() -> Outcome {
    let fresh: Vec<usize> = (1..=4).map(|d| Construction::new().enumeration_step_bound(d)).collect();
    let warm = Construction::new();
    let _ = warm.base_word(300);
    let again: Vec<usize> = (1..=4).map(|d| warm.enumeration_step_bound(d)).collect();
    let failure = (fresh != again).then(|| format!("bounds depend on history: {fresh:?} vs {again:?}"));
    Outcome::new("construction.enumeration_totality", 4, None, failure, format!("step bounds for d = 1..=4: {fresh:?}"))
}

fn construction_density() -> Outcome {
    let bounds: Vec<usize> = (0..=3).map(|d| Construction::new().density_bound(d)).collect();
    let again: Vec<usize> = (0..=3).map(|d| Construction::new().density_bound(d)).collect();
    let con = Construction::new();
    let failure = if bounds != again {
        Some(format!("N(d) unstable: {bounds:?} vs {again:?}"))
    } else {
        (0..=3).find_map(|d| {
            let pairs = con.dense_pairs(bounds[d]);
            let words: Vec<Word> = Word::all_of_length(d).collect();
            words.iter().flat_map(|u| words.iter().map(move |v| (u, v))).find_map(|(u, v)| {
                (!pairs.iter().any(|p| p.a.in_cylinder(u) && p.b.in_cylinder(v)))
                    .then(|| format!("[{u}]×[{v}] has no dense pair below N({d}) = {}", bounds[d]))
            })
        })
    };
    Outcome::new("construction.density", 1 + 4 + 16 + 64, None, failure, format!("N(d) for d = 0..=3: {bounds:?}"))
}

fn construction_surjectivity(con: &Construction, seed: u64) -> Outcome {
    let mut rng = rng_for(seed, 5);
    let cases = 200;
    let failure = (0..cases).find_map(|k| {
        let x = match k % 4 {
            0 => con.approximant(rng.gen_range(0..50), rng.gen_range(0..20)).point,
            1 => con.dense_pair(rng.gen_range(0..50)).a,
            _ => random_point(&mut rng),
        };
        let y = con.fiber_witness(&x);
        (!con.in_x(&x, &y)).then(|| format!("({x}, {y}) ∉ X"))
    });
    Outcome::new("construction.projection_onto", cases, Some(seed), failure, "every probed x has a fiber point in X".into())
}

// ---- lab ----------------------------------------------------------------

fn lab_oracle(con: &Construction, cfg: &SuiteConfig) -> Outcome {
    let space = Space::Truncated(cfg.truncation);
    let fibers = con.gdelta_presentation(cfg.truncation);
    let xs = probe_points(con, &fibers, cfg.depth);
    let ys: Vec<CantorPoint> = Word::all_of_length(cfg.depth).map(|w| CantorPoint::zero_tail(&w)).collect();
    let sets = small_clopens(2);
    let mut cases = 0;
    let failure = sets.iter().flat_map(|w| sets.iter().map(move |v| (w, v))).find_map(|(w, v)| {
        cases += 1;
        let rect = Rect::new(w.clone(), v.clone());
        let piece = project_rect_in(con, space, w, v).ok()?;
        let ours: BTreeSet<CantorPoint> = xs.iter().filter(|x| piece.contains(con, x)).cloned().collect();
        let brute = brute_force_trace(&fibers, &rect, &xs, &ys);
        (ours != brute).then(|| format!("{rect}: image and brute force differ"))
    });
    Outcome::new("lab.oracle_equivalence", cases, None, failure, format!("N = {}, depth {}", cfg.truncation, cfg.depth))
}

fn lab_decomposition(con: &Construction, cfg: &SuiteConfig, instances: &[Instance]) -> Outcome {
    let failure = instances.iter().find_map(|inst| {
        let fail = |e: String| Some(format!("{}: {e}", inst.union));
        let dec = match decompose(con, &inst.image) {
            Ok(d) => d,
            Err(e) => return fail(e.to_string()),
        };
        if let Some(x) = inst.probes.iter().find(|x| inst.image.contains(con, x) != inst.image.contains_by_pieces(con, x)) {
            return fail(format!("canonical form disagrees with the pieces at {x}"));
        }
        let points = certificate_points(con, &inst.image);
        dec.reconstructs(con, &inst.image, &points)
            .and_then(|_| dec.reconstructs(con, &inst.image, &inst.probes))
            .err()
            .and_then(|e| fail(e.to_string()))
    });
    Outcome::new("lab.decomposition", instances.len(), Some(cfg.seed), failure, format!("{} probes per image", cfg.probes))
}

fn lab_lc2(con: &Construction, cfg: &SuiteConfig, instances: &[Instance]) -> Outcome {
    let failure = instances.iter().find_map(|inst| {
        lc2_certificate(con, &inst.image)
            .and_then(|c| c.check(con, &inst.image, &inst.probes))
            .err()
            .map(|e| format!("{}: {e}", inst.union))
    });
    Outcome::new("lab.lc2", instances.len(), Some(cfg.seed), failure, "every certificate checks".into())
}

fn lab_resolvability(con: &Construction, cfg: &SuiteConfig, instances: &[Instance]) -> Outcome {
    let fs = clopens_of_depth(3);
    let failure = instances.iter().find_map(|inst| {
        fs.iter().find_map(|f| match resolvable_probe(con, &inst.image, f) {
            Ok(p) if p.resolvable => None,
            Ok(_) => Some(format!("{} is not resolvable in {f}", inst.union)),
            Err(e) => Some(format!("{} in {f}: {e}", inst.union)),
        })
    });
    Outcome::new("lab.resolvability", instances.len() * fs.len(), Some(cfg.seed), failure, "all clopen F of depth ≤ 3".into())
}

/// Problems with the certificate for `rect` on the trivial piece, if any.
pub fn witness_problems(con: &Construction, rect: &Rect, budget: usize, k: usize) -> Option<String> {
    let cert = match falsify_restriction(con, &RectUnion::empty(), rect, budget, k) {
        Ok(c) => c,
        Err(e) => return Some(format!("{rect}: {e}")),
    };
    if let Some(clause) = verify_witness(con, &cert, k).failed {
        return Some(format!("{rect}: certificate fails {clause}"));
    }
    let b1 = ClopenSet::cylinder(cert.base_prime.clone());
    let b2 = ClopenSet::cylinder(cert.base_double_prime.clone());
    let (d1, d2) = (b1.diam().ok()?, b2.diam().ok()?);
    if d2 * BigRational::from_integer(2.into()) >= d1 || !b2.is_subset(&b1) || !b1.is_subset(&rect.v) {
        return Some(format!("{rect}: diameter law or base inclusion fails"));
    }
    let mutations = witness_mutations(con, &cert);
    if mutations.len() < 10 {
        return Some(format!("{rect}: only {} mutations apply", mutations.len()));
    }
    mutations.iter().find_map(|(clause, m)| {
        let got = verify_witness(con, m, k).failed;
        (got != Some(*clause)).then(|| format!("{rect}: mutation of {clause} reported {got:?}"))
    })
}

fn lab_witnesses(con: &Construction, cfg: &SuiteConfig) -> Outcome {
    let rects = basic_rects(2);
    let failure = rects.iter().find_map(|r| witness_problems(con, r, cfg.budget, cfg.samples));
    Outcome::new("lab.witness_soundness", rects.len(), None, failure, format!("K = {}, mutations rejected", cfg.samples))
}

fn lab_piecewise(con: &Construction) -> Outcome {
    let failure = match piecewise_open_check(con, Space::Full, &[RectUnion::whole()], 1) {
        Ok(r) if !r.open => None,
        Ok(_) => Some("π|X passed the openness check on the trivial cover".into()),
        Err(e) => Some(e.to_string()),
    };
    Outcome::new("lab.not_piecewise_open", 1, None, failure, "trivial cover has a violation".into())
}

fn lab_stabilization(con: &Construction, seed: u64) -> Outcome {
    let mut rng = rng_for(seed, 6);
    let cases = 20;
    let failure = (0..cases).find_map(|_| {
        let stream: Vec<Rect> = (0..6)
            .map(|_| Rect::new(random_clopen(&mut rng, 2, 3), random_clopen(&mut rng, 2, 3)))
            .collect();
        stabilization_probe(con, &stream, 5, 6).err().map(|e| e.to_string())
    });
    Outcome::new("lab.stabilization", cases, Some(seed), failure, "S-traces grow along random streams".into())
}

pub fn run_all(cfg: &SuiteConfig) -> CheckReport {
    let con = Construction::new();
    let instances = random_instances(&con, cfg.seed, cfg.instances, cfg.probes);
    let mut suites = vec![
        cantor_canonicity(cfg.seed),
        cantor_boolean_laws(cfg.seed),
        cantor_injectivity(cfg.seed),
        cantor_stages(),
        cantor_diam(),
        construction_determinism(cfg),
        construction_ledger(&con, cfg),
        construction_convergence(&con, cfg),
        construction_roundtrip(&con, cfg),
        construction_bases(&con),
        construction_totality(),
        construction_density(),
        construction_surjectivity(&con, cfg.seed),
        lab_oracle(&con, cfg),
        lab_decomposition(&con, cfg, &instances),
        lab_lc2(&con, cfg, &instances),
        lab_resolvability(&con, cfg, &instances),
        lab_witnesses(&con, cfg),
        lab_piecewise(&con),
        lab_stabilization(&con, cfg.seed),
    ];
    suites.sort_by(|a, b| a.name.cmp(&b.name));
    CheckReport {
        seed: cfg.seed,
        passed: suites.iter().all(|o| o.passed),
        suites,
    }
}
