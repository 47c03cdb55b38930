#![allow(dead_code)]

use flagtoric::exact_polytopes::Rational;
use flagtoric::orbit_closures::FlagMatrix;
use rand::Rng;

/// A random invertible matrix with about half its entries zero, so that the flag has a
/// nontrivial set of fixed points.
pub fn sparse_flag(n: usize, rng: &mut impl Rng) -> FlagMatrix {
    loop {
        let rows: Vec<Vec<Rational>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| {
                        if rng.random_bool(0.5) {
                            Rational::from_integer(0.into())
                        } else {
                            let a: i64 = *[-3, -2, -1, 1, 2, 3].get(rng.random_range(0..6)).unwrap();
                            Rational::new(a.into(), rng.random_range(1i64..=3).into())
                        }
                    })
                    .collect()
            })
            .collect();
        if let Ok(x) = FlagMatrix::new(rows) {
            return x;
        }
    }
}
