use cantor_core::lab::{decompose, lc2_certificate, project_union, resolvable_probe, RectUnion};
use cantor_core::suite::{random_point, clopens_of_depth};
use cantor_core::{ClopenSet, Construction};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[test]
fn projection_of_x_is_onto() {
    let con = Construction::new();
    let img = project_union(&con, &RectUnion::whole());
    assert!(img.hull().is_whole());
    assert!(img.canonical.removals.is_empty());
    let dec = decompose(&con, &img).unwrap();
    assert!(dec.discrete.is_empty());
    assert!(dec.open.hull.is_whole());

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..200 {
        let x = random_point(&mut rng);
        assert!(con.in_x(&x, &con.fiber_witness(&x)), "{x}");
    }
    for n in 0..30 {
        for i in 0..10 {
            let x = con.approximant(n, i).point;
            assert!(con.in_x(&x, &con.fiber_witness(&x)));
        }
    }
}

#[test]
fn quarter_rectangle_has_explicit_parts() {
    let con = Construction::new();
    let u: RectUnion = "0×0".parse().unwrap();
    let img = project_union(&con, &u);
    let dec = decompose(&con, &img).unwrap();
    assert!(dec.open.is_open());
    for d in &dec.discrete {
        assert!(img.contains(&con, &d.point));
        assert!(!dec.open.contains(&con, &d.point));
    }
    let lc2 = lc2_certificate(&con, &img).unwrap();
    lc2.check(&con, &img, &[]).unwrap();
}

#[test]
fn whole_image_is_resolvable_everywhere() {
    let con = Construction::new();
    let img = project_union(&con, &"0,22×0;2×02".parse().unwrap());
    for f in clopens_of_depth(3) {
        assert!(resolvable_probe(&con, &img, &f).unwrap().resolvable, "{f}");
    }
    assert!(resolvable_probe(&con, &img, &ClopenSet::empty()).is_err());
}
