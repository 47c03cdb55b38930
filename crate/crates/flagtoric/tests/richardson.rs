use flagtoric::exact_polytopes::{EdgeCertificate, LatticePolytope};
use flagtoric::group_core::Permutation;
use flagtoric::richardson::*;
use rand::seq::IndexedRandom;
use rand::SeedableRng;

fn p(s: &str) -> Permutation {
    s.parse().unwrap()
}

fn lp_edge_count(q: &LatticePolytope) -> usize {
    let m = q.num_vertices();
    (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .filter(|&(i, j)| matches!(q.edge_certificate(i, j), EdgeCertificate::Edge { .. }))
        .count()
}

#[test]
fn inverse_pair_edge_counts_differ() {
    let e = Permutation::identity(5);
    let a = q_vw(&e, &p("35412")).unwrap();
    let b = q_vw(&e, &p("45132")).unwrap();
    assert_eq!((a.num_vertices(), a.dim()), (60, 4));
    assert_eq!((b.num_vertices(), b.dim()), (60, 4));
    assert_eq!(a.edges().len(), 122);
    assert_eq!(b.edges().len(), 123);
    assert_eq!(lp_edge_count(&a), 122);
    assert_eq!(lp_edge_count(&b), 123);
    assert_eq!(p("35412").inverse(), p("45132"));
}

#[test]
fn dimension_symmetry() {
    for (v, w) in bruhat_pairs(4) {
        let d = q_vw(&v, &w).unwrap().dim();
        assert_eq!(d, q_vw(&v.inverse(), &w.inverse()).unwrap().dim(), "[{v}, {w}]");
    }
    let pairs = bruhat_pairs(5);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
    for (v, w) in pairs.choose_multiple(&mut rng, 100) {
        let d = q_vw(v, w).unwrap().dim();
        assert_eq!(d, q_vw(&v.inverse(), &w.inverse()).unwrap().dim(), "[{v}, {w}]");
    }
}

#[test]
fn toric_pairs_in_s4() {
    for (v, w) in bruhat_pairs(4) {
        let q = q_vw(&v, &w).unwrap();
        if q.dim() != w.length() - v.length() {
            continue;
        }
        let qi = q_vw(&v.inverse(), &w.inverse()).unwrap();
        assert!(q.combinatorially_equivalent(&qi), "[{v}, {w}]");
        assert_eq!(q.is_simple(), q.is_cube(), "[{v}, {w}]");
        let c = faces_are_subintervals_check(&v, &w).unwrap();
        assert!(c.all_faces, "[{v}, {w}]: {:?}", c.counterexample);
    }
}

#[test]
fn subinterval_faces_fail_when_not_toric_in_s4() {
    for (v, w) in bruhat_pairs(4) {
        let c = faces_are_subintervals_check(&v, &w).unwrap();
        assert_eq!(c.toric, c.all_faces, "[{v}, {w}]");
    }
}

#[test]
fn cube_theorem_on_s4_pairs() {
    for (v, w) in bruhat_pairs(4) {
        let c = cube_theorem_check(&v, &w).unwrap();
        assert!(c.consistent(), "[{v}, {w}]: {c:?}");
        if c.cube {
            let q = q_vw(&v, &w).unwrap();
            assert!(q.is_simple() && q.num_vertices() == 1 << q.dim());
        }
    }
}

#[test]
fn distinct_letters_on_both_sides() {
    // every v ∈ S₄ and every distinct-letter word that lengthens it
    let words: Vec<Vec<usize>> = vec![
        vec![1],
        vec![2],
        vec![3],
        vec![1, 2],
        vec![2, 1],
        vec![1, 3],
        vec![2, 3],
        vec![3, 2],
        vec![1, 2, 3],
        vec![3, 2, 1],
        vec![2, 1, 3],
        vec![2, 3, 1],
        vec![1, 3, 2],
        vec![1, 1],
        vec![2, 3, 2],
    ];
    let mut tried = 0;
    for l in &words {
        let mut some_non_cube = false;
        let mut proper = None;
        for v in Permutation::all(4) {
            for side in [Side::Left, Side::Right] {
                match proper_pair_check(&v, l, side) {
                    Ok(r) => {
                        tried += 1;
                        assert!(r.consistent(), "{v} {l:?} {side:?}: {r:?}");
                        some_non_cube |= !r.cube;
                        proper = r.expression.map(|e| e.proper);
                    }
                    Err(RichardsonError::LengthCondition { .. }) => {}
                    Err(e) => panic!("{e}"),
                }
            }
        }
        // non-proper words are witnessed by some v
        if proper == Some(false) {
            assert!(some_non_cube, "{l:?}");
        }
    }
    assert!(tried > 100);
}

#[test]
fn simplicity_search_on_s5() {
    let s = simplicity_search(5);
    assert!(s.pairs_checked > 0 && s.simple_at_ends <= s.pairs_checked);
    let j = serde_json::to_value(&s).unwrap();
    assert!(j["witnesses"].is_array());
}

fn pair_strategy() -> impl proptest::strategy::Strategy<Value = (Permutation, Permutation)> {
    let pairs = bruhat_pairs(5);
    proptest::sample::select(pairs)
}

proptest::proptest! {
    #![proptest_config(proptest::prelude::ProptestConfig::with_cases(48))]

    #[test]
    fn pair_invariants((v, w) in pair_strategy()) {
        let q = q_vw(&v, &w).unwrap();
        proptest::prop_assert!(q.dim() <= w.length() - v.length());
        proptest::prop_assert_eq!(q.dim(), q_vw(&v.inverse(), &w.inverse()).unwrap().dim());
        proptest::prop_assert!(q.edge_directions_are_roots());
        let c = cube_theorem_check(&v, &w).unwrap();
        proptest::prop_assert!(c.consistent());
        if c.cube {
            proptest::prop_assert!(q.is_simple() && q.num_vertices() == 1 << q.dim());
        }
    }
}
