use std::collections::{HashMap, HashSet, VecDeque};

use flagtoric::group_core::*;
use proptest::prelude::*;

fn inversions(w: &Permutation) -> usize {
    let n = w.n();
    (1..=n).flat_map(|i| (i + 1..=n).map(move |j| (i, j))).filter(|&(i, j)| w.at(i) > w.at(j)).count()
}

/// Covers computed from scratch: right multiplication by a transposition raising the inversion
/// count by exactly one.
fn covers_from_scratch(x: &Permutation) -> Vec<Permutation> {
    let n = x.n();
    let l = inversions(x);
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let mut img = x.images();
            img.swap(i - 1, j - 1);
            let y = Permutation::new(img).unwrap();
            if inversions(&y) == l + 1 {
                out.push(y);
            }
        }
    }
    out
}

fn reachable_by_covers(n: usize) -> HashMap<Permutation, HashSet<Permutation>> {
    let mut out = HashMap::new();
    for v in Permutation::all(n) {
        let mut seen = HashSet::from([v.clone()]);
        let mut q = VecDeque::from([v.clone()]);
        while let Some(x) = q.pop_front() {
            for y in covers_from_scratch(&x) {
                if seen.insert(y.clone()) {
                    q.push_back(y);
                }
            }
        }
        out.insert(v, seen);
    }
    out
}

#[test]
fn bruhat_order_is_generated_by_covers() {
    for n in 1..=5 {
        let reach = reachable_by_covers(n);
        for v in Permutation::all(n) {
            for w in Permutation::all(n) {
                assert_eq!(bruhat_leq(&v, &w).unwrap(), reach[&v].contains(&w), "{v} {w}");
            }
        }
    }
}

#[test]
fn pattern_counts_are_inverse_symmetric() {
    for w in Permutation::all(5) {
        for q in Permutation::all(3) {
            assert_eq!(contains_pattern(&w, &q), contains_pattern(&w.inverse(), &q.inverse()), "{w} {q}");
        }
    }
}

#[test]
fn interval_sizes_are_inverse_symmetric() {
    for v in Permutation::all(4) {
        for w in Permutation::all(4) {
            if v.bruhat_le(&w) {
                let a = BruhatInterval::new(&v, &w).unwrap();
                let b = BruhatInterval::new(&v.inverse(), &w.inverse()).unwrap();
                assert_eq!(a.len(), b.len());
                assert_eq!(a.hasse_edges().len(), b.hasse_edges().len());
            }
        }
    }
}

fn perm_strategy(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|img| Permutation::new(img).unwrap())
}

fn perm_pair(max_n: usize) -> impl Strategy<Value = (Permutation, Permutation)> {
    (1..=max_n).prop_flat_map(|n| {
        let s = Just((1..=n).collect::<Vec<usize>>()).prop_shuffle();
        (s.clone(), s).prop_map(|(a, b)| (Permutation::new(a).unwrap(), Permutation::new(b).unwrap()))
    })
}

proptest! {
    #[test]
    fn length_is_invariant(w in perm_strategy(6)) {
        prop_assert_eq!(w.length(), inversions(&w));
        prop_assert_eq!(w.length(), w.inverse().length());
        prop_assert_eq!(w.length(), w.conjugate_by_longest().length());
        let w0 = Permutation::longest(w.n());
        prop_assert_eq!(&(&w0 * &w) * &w0, w.conjugate_by_longest());
    }

    #[test]
    fn reduced_words_multiply_back(w in perm_strategy(6)) {
        let words = reduced_words(&w, Some(25));
        prop_assert!(!words.is_empty());
        for r in words {
            prop_assert_eq!(r.len(), w.length());
            prop_assert_eq!(r.product(w.n()).unwrap(), w.clone());
        }
    }

    #[test]
    fn transposition_swaps((u, _) in perm_pair(6), i in 1usize..=6, j in 1usize..=6) {
        let n = u.n();
        prop_assume!(i <= n && j <= n && i != j);
        let t = Permutation::transposition(n, i, j).unwrap();
        prop_assert_eq!(u.swap_positions(i, j), &u * &t);
        prop_assert_eq!(u.swap_values(i, j), &t * &u);
    }

    #[test]
    fn composition_and_inverse((a, b) in perm_pair(7)) {
        let ab = &a * &b;
        prop_assert!((&ab * &b.inverse()) == a.clone());
        prop_assert!((&a.inverse() * &ab) == b.clone());
        // ℓ(ab) ≤ ℓ(a) + ℓ(b) with matching parity
        let (la, lb, lab) = (a.length(), b.length(), ab.length());
        prop_assert!(lab <= la + lb && (la + lb - lab) % 2 == 0);
    }

    #[test]
    fn bruhat_lower_interval_contains_lower_covers(w in perm_strategy(5)) {
        let lower = BruhatInterval::lower(&w);
        for x in lower_covers(&w) {
            prop_assert!(lower.contains(&x));
            prop_assert_eq!(x.length() + 1, w.length());
        }
        prop_assert_eq!(lower.rank(), w.length());
    }
}
