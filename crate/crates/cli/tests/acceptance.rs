//! One line per acceptance criterion; exits nonzero if any fails.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use cantor_cli::{cmd_check, cmd_construct, RunConfig};
use cantor_core::lab::{
    decompose, falsify_restriction, lc2_certificate, project_rect_in, resolvable_probe, verify_witness, RectUnion,
    WitnessCertificate,
};
use cantor_core::suite::{basic_rects, clopens_of_depth, random_instances, random_point, witness_mutations, Instance};
use cantor_core::{CantorPoint, ClopenSet, Construction, Space, Word};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(n.into())
}

fn construction_constraints() -> Check {
    let con = Construction::new();
    let pairs = con.dense_pairs(51);
    let a: BTreeSet<&CantorPoint> = pairs.iter().map(|p| &p.a).collect();
    let b: BTreeSet<&CantorPoint> = pairs.iter().map(|p| &p.b).collect();
    ensure(a.len() == 51 && b.len() == 51, || "duplicate dense points".into())?;
    let mut approx = BTreeSet::new();
    for (n, pair) in pairs.iter().enumerate() {
        for i in 0..=20 {
            let p = con.approximant(n, i).point;
            ensure(!a.contains(&p), || format!("a_({n},{i}) is a dense point"))?;
            ensure(p.distance(&pair.a) < int(1) / int(n + 1), || format!("a_({n},{i}) too far"))?;
            ensure(approx.insert(p), || format!("a_({n},{i}) repeats"))?;
        }
    }
    for n in 0..=200 {
        let b = con.dense_pair(n).b;
        ensure(b.in_cylinder(&con.base_word(n)), || format!("b_{n} ∉ B_{n}"))?;
    }
    Ok(format!("{} approximants distinct, b_n ∈ B_n for n ≤ 200", approx.len()))
}

fn density() -> Check {
    let con = Construction::new();
    let words: Vec<Word> = Word::all_of_length(3).collect();
    let mut bound = 0;
    for u in &words {
        for v in &words {
            let n = (0..)
                .find(|&n| {
                    let p = con.dense_pair(n);
                    p.a.in_cylinder(u) && p.b.in_cylinder(v)
                })
                .unwrap();
            bound = bound.max(n + 1);
        }
    }
    let reported = Construction::new().density_bound(3);
    let again = Construction::new().density_bound(3);
    ensure(reported == bound && again == bound, || format!("bounds {bound}, {reported}, {again}"))?;
    Ok(format!("64 pairs hit below N(3) = {bound}"))
}

fn small_clopens() -> Vec<ClopenSet> {
    let words: Vec<Word> = (0..=2).flat_map(Word::all_of_length).collect();
    let mut out = BTreeSet::new();
    for x in &words {
        for y in &words {
            out.insert(ClopenSet::from_words([x.clone(), y.clone()]).to_string());
        }
    }
    out.iter().map(|s| s.parse().unwrap()).collect()
}

fn oracle_equivalence() -> Check {
    let con = Construction::new();
    let n = 20;
    let space = Space::Truncated(n);
    let mut xs: Vec<CantorPoint> = Word::all_of_length(6).map(|w| CantorPoint::zero_tail(&w)).collect();
    for k in 0..n {
        let f = con.fiber(k);
        xs.push(con.dense_pair(f.n).a);
        xs.push(f.point);
    }
    let ys: Vec<CantorPoint> = Word::all_of_length(6).map(|w| CantorPoint::zero_tail(&w)).collect();
    let sets = small_clopens();
    let mut pairs = 0;
    for w in &sets {
        for v in &sets {
            let piece = project_rect_in(&con, space, w, v).map_err(|e| e.to_string())?;
            for x in xs.iter().filter(|x| w.contains(x)) {
                let brute = ys.iter().any(|y| v.contains(y) && con.in_space(space, x, y));
                ensure(piece.contains(&con, x) == brute, || format!("{w}×{v} at {x}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{pairs} rectangles agree on {} probes, N = {n}", xs.len()))
}

fn decomposition(con: &Construction, instances: &[Instance]) -> Check {
    let mut discrete = 0;
    for inst in instances {
        let fail = |e: String| format!("{}: {e}", inst.union);
        let dec = decompose(con, &inst.image).map_err(|e| fail(e.to_string()))?;
        for d in &dec.discrete {
            ensure(!dec.open.contains(con, &d.point), || fail(format!("{} ∈ S ∩ D", d.point)))?;
            for e in &dec.discrete {
                ensure(e.n == d.n || !e.point.in_cylinder(&d.separator), || fail("D not separated".into()))?;
            }
        }
        ensure(inst.probes.len() == 500, || fail("probe count".into()))?;
        for x in &inst.probes {
            ensure(dec.contains(con, x) == inst.image.contains(con, x), || fail(format!("S ∪ D differs at {x}")))?;
            ensure(inst.image.contains(con, x) == inst.image.contains_by_pieces(con, x), || {
                fail(format!("union differs at {x}"))
            })?;
        }
        discrete += dec.discrete.len();
    }
    Ok(format!("{} images, {discrete} D points in total", instances.len()))
}

fn lc2(con: &Construction, instances: &[Instance]) -> Check {
    ensure(!instances.is_empty(), || "no instances".into())?;
    for inst in instances {
        lc2_certificate(con, &inst.image)
            .and_then(|c| c.check(con, &inst.image, &inst.probes))
            .map_err(|e| format!("{}: {e}", inst.union))?;
    }
    Ok(format!("{} certificates check", instances.len()))
}

fn resolvability(con: &Construction, instances: &[Instance]) -> Check {
    let fs = clopens_of_depth(3);
    ensure(fs.len() == 255 && !instances.is_empty(), || "enumeration".into())?;
    for inst in instances {
        for f in &fs {
            let probe = resolvable_probe(con, &inst.image, f).map_err(|e| e.to_string())?;
            ensure(probe.resolvable, || format!("{} not resolvable in {f}", inst.union))?;
        }
    }
    Ok(format!("{} pairs resolvable", fs.len() * instances.len()))
}

fn witnesses(con: &Construction) -> Result<(String, Vec<WitnessCertificate>), String> {
    let rects = basic_rects(2);
    ensure(rects.len() == 16, || "rect enumeration".into())?;
    let mut certs = Vec::new();
    for rect in &rects {
        let cert = falsify_restriction(con, &RectUnion::empty(), rect, 10_000, 20)
            .map_err(|e| format!("{rect}: {e}"))?;
        ensure(verify_witness(con, &cert, 20).is_valid(), || format!("{rect} rejected"))?;
        let (b1, b2) = (&cert.base_prime, &cert.base_double_prime);
        let diam = |w: &Word| ClopenSet::cylinder(w.clone()).diam().unwrap();
        ensure(int(2) * diam(b2) < diam(b1), || format!("{rect}: diameter law"))?;
        ensure(
            b1.is_prefix_of(b2) && ClopenSet::cylinder(b1.clone()).is_subset(&rect.v),
            || format!("{rect}: inclusion"),
        )?;
        certs.push(cert);
    }
    Ok(("16 certificates verified with K = 20".into(), certs))
}

fn mutation_soundness(con: &Construction, certs: &[WitnessCertificate]) -> Check {
    ensure(certs.len() == 16, || "witness certificates missing".into())?;
    let mut total = 0;
    for cert in certs {
        let mutations = witness_mutations(con, cert);
        ensure(mutations.len() >= 10, || format!("{}: {} mutations", cert.rect, mutations.len()))?;
        for (clause, m) in mutations {
            let got = verify_witness(con, &m, 20).failed;
            ensure(got == Some(clause), || format!("{}: {clause} reported as {got:?}", cert.rect))?;
            total += 1;
        }
    }
    Ok(format!("{total} mutations rejected with the right clause"))
}

fn projection_onto() -> Check {
    let con = Construction::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for _ in 0..200 {
        let x = random_point(&mut rng);
        let y = con.fiber_witness(&x);
        ensure(con.in_x(&x, &y), || format!("({x}, {y}) ∉ X"))?;
    }
    Ok("200 points have fibers".into())
}

fn determinism() -> Check {
    let cfg = RunConfig::default();
    let c1 = cmd_construct(&cfg).map_err(|e| e.message)?;
    let c2 = cmd_construct(&cfg).map_err(|e| e.message)?;
    ensure(c1.body == c2.body && c1.code == 0, || "construct differs".into())?;
    let k1 = cmd_check(&cfg).map_err(|e| e.message)?;
    let k2 = cmd_check(&cfg).map_err(|e| e.message)?;
    ensure(k1.body == k2.body, || "check reports differ".into())?;
    ensure(k1.code == 0, || k1.summary.clone())?;
    Ok(format!("export {} bytes, report {} bytes, identical", c1.body.len(), k1.body.len()))
}

fn run(failures: &mut usize, id: u32, name: &str, limit: Option<u64>, f: impl FnOnce() -> Check) {
    let start = Instant::now();
    let result = f();
    let took = start.elapsed();
    let late = limit.is_some_and(|s| took > Duration::from_secs(s));
    let (ok, detail) = match result {
        Ok(d) if late => (false, format!("{d}; over the {}s limit", limit.unwrap_or(0))),
        Ok(d) => (true, d),
        Err(e) => (false, e),
    };
    *failures += usize::from(!ok);
    println!(
        "{} {id:>2} {name:<26} {:>7.2}s  {detail}",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64()
    );
}

fn main() {
    let con = Construction::new();
    let mut failures = 0;
    let mut instances = Vec::new();
    let mut certs = Vec::new();

    run(&mut failures, 1, "construction constraints", Some(10), construction_constraints);
    run(&mut failures, 2, "density", Some(10), density);
    run(&mut failures, 3, "oracle equivalence", Some(60), oracle_equivalence);
    run(&mut failures, 4, "decomposition suite", Some(120), || {
        instances = random_instances(&con, 0, 1000, 500);
        decomposition(&con, &instances)
    });
    run(&mut failures, 5, "lc2 certification", None, || lc2(&con, &instances));
    run(&mut failures, 6, "resolvability bulk law", None, || resolvability(&con, &instances));
    run(&mut failures, 7, "non-openness witnesses", Some(60), || {
        let (d, c) = witnesses(&con)?;
        certs = c;
        Ok(d)
    });
    run(&mut failures, 8, "mutation soundness", None, || mutation_soundness(&con, &certs));
    run(&mut failures, 9, "projection onto C", Some(5), projection_onto);
    run(&mut failures, 10, "determinism", None, determinism);

    println!("acceptance: {failures} of 10 criteria failed");
    if failures > 0 {
        std::process::exit(1);
    }
}
