mod common;

use flagtoric::group_core::Permutation;
use flagtoric::matroids::{is_coxeter_matroid, matroid_retraction};
use flagtoric::orbit_closures::*;
use rand::SeedableRng;

fn check_flag(x: &FlagMatrix) {
    let m = fixed_points(x);
    assert!(is_coxeter_matroid(&m).is_matroid, "{}", x.to_csv());
    for u in Permutation::all(x.n()) {
        let g = geometric_retraction(x, &u).unwrap();
        assert_eq!(g, matroid_retraction(&m, &u).unwrap(), "u = {u}\n{}", x.to_csv());
        if let Some(y) = retraction_by_moment_maximizer(x, &u) {
            assert_eq!(y, g);
        }
    }
    let q = moment_polytope(x).unwrap();
    assert!(q.edge_directions_are_roots());
    assert!(orbit_fan(x).unwrap().fibers_connected());
}

#[test]
fn geometric_retraction_is_the_matroid_retraction() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(4);
    for _ in 0..50 {
        check_flag(&common::sparse_flag(4, &mut rng));
    }
    for _ in 0..5 {
        check_flag(&common::sparse_flag(5, &mut rng));
    }
    for seed in 0..5 {
        check_flag(&FlagMatrix::random_seeded(4, seed));
    }
}

#[test]
fn permutation_flags_have_one_fixed_point() {
    for w in Permutation::all(4) {
        let x = FlagMatrix::permutation_matrix(&w);
        assert_eq!(fixed_points(&x).elements(), &[w.clone()]);
        for u in Permutation::all(4) {
            assert_eq!(geometric_retraction(&x, &u).unwrap(), w);
        }
    }
    assert_eq!(fixed_points(&FlagMatrix::identity(5)).len(), 1);
}

#[test]
fn fixed_points_are_invariant_under_row_scaling() {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(9);
    for _ in 0..10 {
        let x = common::sparse_flag(4, &mut rng);
        let scaled: Vec<Vec<_>> = x
            .entries()
            .iter()
            .enumerate()
            .map(|(i, r)| r.iter().map(|a| a * flagtoric::exact_polytopes::Rational::from_integer(((i + 2) as i64).into())).collect())
            .collect();
        assert_eq!(fixed_points(&FlagMatrix::new(scaled).unwrap()), fixed_points(&x));
    }
}
