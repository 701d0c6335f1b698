// Brute-force images over truncated spaces, built only from construction
// membership tests and cylinder representatives.

use std::collections::BTreeSet;

use cantor_core::lab::{project_rect_in, project_union_in, Rect, RectUnion};
use cantor_core::{CantorPoint, ClopenSet, Construction, Space, Word};

fn small_clopens() -> Vec<ClopenSet> {
    let words: Vec<Word> = (0..=2).flat_map(Word::all_of_length).collect();
    let mut out = BTreeSet::new();
    for a in &words {
        for b in &words {
            out.insert(ClopenSet::from_words([a.clone(), b.clone()]).to_string());
        }
    }
    out.iter().map(|s| s.parse().unwrap()).collect()
}

fn xs(con: &Construction, n: usize) -> Vec<CantorPoint> {
    let mut out: Vec<CantorPoint> = Word::all_of_length(6).map(|w| CantorPoint::zero_tail(&w)).collect();
    for k in 0..n {
        let f = con.fiber(k);
        out.push(f.point);
        out.push(con.dense_pair(f.n).a);
        out.push(con.approximant(f.n, f.i + 1).point);
    }
    out.sort();
    out.dedup();
    out
}

fn ys() -> Vec<CantorPoint> {
    Word::all_of_length(7).map(|w| CantorPoint::zero_tail(&w)).collect()
}

fn brute(con: &Construction, space: Space, u: &RectUnion, xs: &[CantorPoint], ys: &[CantorPoint]) -> BTreeSet<CantorPoint> {
    xs.iter()
        .filter(|x| ys.iter().any(|y| u.contains(x, y) && con.in_space(space, x, y)))
        .cloned()
        .collect()
}

#[test]
fn rects_match_brute_force_at_n20() {
    let con = Construction::new();
    let space = Space::Truncated(20);
    let xs = xs(&con, 20);
    let ys = ys();
    let sets = small_clopens();
    let mut nontrivial = 0;
    for w in &sets {
        for v in &sets {
            let piece = project_rect_in(&con, space, w, v).unwrap();
            nontrivial += usize::from(xs.iter().any(|x| w.contains(x) && !piece.contains(&con, x)));
            let ours: BTreeSet<CantorPoint> = xs.iter().filter(|x| piece.contains(&con, x)).cloned().collect();
            let u = RectUnion::new([Rect::new(w.clone(), v.clone())]);
            assert_eq!(ours, brute(&con, space, &u, &xs, &ys), "{w}×{v}");
        }
    }
    assert!(nontrivial > 20, "only {nontrivial} rectangles lose points");
}

#[test]
fn zero_truncation_is_the_full_rectangle() {
    let con = Construction::new();
    let xs = xs(&con, 20);
    for w in small_clopens() {
        let piece = project_rect_in(&con, Space::Truncated(0), &w, &ClopenSet::whole()).unwrap();
        assert!(piece.removals.is_empty());
        assert!(xs.iter().all(|x| piece.contains(&con, x) == w.contains(x)));
    }
}

#[test]
fn unions_match_brute_force() {
    let con = Construction::new();
    let space = Space::Truncated(30);
    let xs = xs(&con, 30);
    let ys = ys();
    let sets = small_clopens();
    let rects: Vec<Rect> = sets
        .iter()
        .step_by(3)
        .flat_map(|w| sets.iter().step_by(4).map(move |v| Rect::new(w.clone(), v.clone())))
        .collect();
    for (k, a) in rects.iter().enumerate() {
        let b = &rects[(k * 7 + 3) % rects.len()];
        let u = RectUnion::new([a.clone(), b.clone()]);
        let img = project_union_in(&con, space, &u);
        let ours: BTreeSet<CantorPoint> = xs.iter().filter(|x| img.contains(&con, x)).cloned().collect();
        assert_eq!(ours, brute(&con, space, &u, &xs, &ys), "{u}");
    }
}
