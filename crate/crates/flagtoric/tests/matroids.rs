mod common;

use flagtoric::group_core::Permutation;
use flagtoric::matroids::*;
use flagtoric::orbit_closures::fixed_points;
use proptest::prelude::*;
use rand::SeedableRng;

fn orbit_matroids(n: usize, count: usize, seed: u64) -> Vec<CoxeterSubset> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| fixed_points(&common::sparse_flag(n, &mut rng))).collect()
}

fn check_retractions(m: &CoxeterSubset) {
    assert!(is_coxeter_matroid(m).is_matroid);
    let table = RetractionTable::matroid(m).unwrap();
    assert!(table.is_retraction_onto(m));
    assert_eq!(table, RetractionTable::algebraic(m));
    for u in Permutation::all(m.n()) {
        let r = matroid_retraction(m, &u).unwrap();
        let (_, arg) = distance_to_set(&u, m).unwrap();
        assert_eq!(arg, vec![r], "u = {u}");
    }
}

#[test]
fn retractions_agree_on_orbit_matroids() {
    let ms = orbit_matroids(4, 50, 1);
    // the corpus should not be dominated by the full group
    assert!(ms.iter().filter(|m| m.len() < 24).count() >= 10);
    for m in &ms {
        check_retractions(m);
    }
    for m in orbit_matroids(5, 8, 2) {
        check_retractions(&m);
    }
}

#[test]
fn gelfand_serganova_on_s3() {
    let all: Vec<Permutation> = Permutation::all(3).collect();
    for mask in 1u32..64 {
        let m = CoxeterSubset::new((0..6).filter(|k| mask >> k & 1 == 1).map(|k| all[k].clone()).collect()).unwrap();
        let poly = matroid_polytope(&m, &[1, 2, 3]).unwrap();
        assert_eq!(is_coxeter_matroid(&m).is_matroid, poly.edge_directions_are_roots(), "{:?}", m.to_json());
        assert_eq!(is_coxeter_matroid(&m).is_matroid, is_coxeter_matroid_exhaustive(&m));
    }
}

#[test]
fn gelfand_serganova_on_small_subsets_of_s4() {
    let all: Vec<Permutation> = Permutation::all(4).collect();
    let mut checked = 0;
    for a in 0..24 {
        for b in a..24 {
            for c in b..24 {
                let m = CoxeterSubset::new(vec![all[a].clone(), all[b].clone(), all[c].clone()]).unwrap();
                let poly = matroid_polytope(&m, &[1, 2, 3, 4]).unwrap();
                assert_eq!(is_coxeter_matroid(&m).is_matroid, poly.edge_directions_are_roots());
                checked += 1;
            }
        }
    }
    assert_eq!(checked, 2600);
}

fn subset_of_s4() -> impl Strategy<Value = Vec<Permutation>> {
    let all: Vec<Permutation> = Permutation::all(4).collect();
    proptest::sample::subsequence(all, 1..=24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn gelfand_serganova_random(elems in subset_of_s4()) {
        let m = CoxeterSubset::new(elems).unwrap();
        let poly = matroid_polytope(&m, &[1, 2, 3, 4]).unwrap();
        let check = is_coxeter_matroid(&m);
        prop_assert_eq!(check.is_matroid, poly.edge_directions_are_roots());
        prop_assert_eq!(check.is_matroid, is_coxeter_matroid_exhaustive(&m));
        prop_assert_eq!(check.is_matroid, check.witness.is_none());
    }

    #[test]
    fn algebraic_retraction_is_idempotent(elems in subset_of_s4()) {
        let m = CoxeterSubset::new(elems).unwrap();
        prop_assert!(RetractionTable::algebraic(&m).is_retraction_onto(&m));
    }

    #[test]
    fn table_csv_round_trip(elems in subset_of_s4()) {
        let m = CoxeterSubset::new(elems).unwrap();
        let t = RetractionTable::algebraic(&m);
        prop_assert_eq!(RetractionTable::from_csv(&t.to_csv()).unwrap(), t);
    }
}
