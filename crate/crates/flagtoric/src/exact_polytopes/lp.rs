//! Exact two-phase simplex over the rationals with Bland's anti-cycling rule.

use num_traits::{One, Signed, Zero};

use super::Rational;

#[derive(Clone, Debug, PartialEq)]
pub struct LpSolution {
    pub x: Vec<Rational>,
    pub value: Rational,
    /// Dual vector `y` with `Aᵀy ≥ c` and `b·y = value`.
    pub dual: Vec<Rational>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    reduced: Vec<Rational>,
    value: Rational,
}

impl Tableau {
    fn pivot(&mut self, r: usize, col: usize) {
        let p = self.rows[r][col].clone();
        for x in self.rows[r].iter_mut() {
            *x /= &p;
        }
        self.rhs[r] /= &p;
        let prow = self.rows[r].clone();
        let prhs = self.rhs[r].clone();
        for i in 0..self.rows.len() {
            if i == r || self.rows[i][col].is_zero() {
                continue;
            }
            let f = self.rows[i][col].clone();
            for (x, y) in self.rows[i].iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.rhs[i] -= &f * &prhs;
        }
        let f = self.reduced[col].clone();
        if !f.is_zero() {
            for (x, y) in self.reduced.iter_mut().zip(&prow) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            self.value += &f * &prhs;
        }
        self.basis[r] = col;
    }

    /// Runs Bland's rule over columns `< allowed`. Returns false if unbounded.
    fn optimize(&mut self, allowed: usize) -> bool {
        loop {
            let Some(col) = (0..allowed).find(|&j| self.reduced[j].is_positive()) else {
                return true;
            };
            let mut best: Option<(usize, Rational)> = None;
            for i in 0..self.rows.len() {
                let a = &self.rows[i][col];
                if !a.is_positive() {
                    continue;
                }
                let ratio = &self.rhs[i] / a;
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return false,
                Some((r, _)) => self.pivot(r, col),
            }
        }
    }
}

/// Maximizes `c·x` subject to `A x = b`, `x ≥ 0`.
pub fn maximize(a: &[Vec<Rational>], b: &[Rational], c: &[Rational]) -> LpOutcome {
    let m = a.len();
    let k = c.len();
    let width = k + m;
    let mut rows = Vec::with_capacity(m);
    let mut rhs = Vec::with_capacity(m);
    let mut flipped = vec![false; m];
    for i in 0..m {
        let neg = b[i].is_negative();
        flipped[i] = neg;
        let mut row: Vec<Rational> = a[i]
            .iter()
            .map(|x| if neg { -x } else { x.clone() })
            .collect();
        row.extend((0..m).map(|j| if j == i { Rational::one() } else { Rational::zero() }));
        rows.push(row);
        rhs.push(if neg { -&b[i] } else { b[i].clone() });
    }
    // Phase one: maximize −Σ artificials.
    let mut reduced = vec![Rational::zero(); width];
    let mut value = Rational::zero();
    for i in 0..m {
        for j in 0..k {
            reduced[j] += &rows[i][j];
        }
        value -= &rhs[i];
    }
    let mut t = Tableau {
        rows,
        rhs,
        basis: (k..k + m).collect(),
        reduced,
        value,
    };
    t.optimize(k);
    if t.value.is_negative() {
        return LpOutcome::Infeasible;
    }
    // Drive artificials out of the basis; rows that cannot be pivoted are redundant.
    let mut live = vec![true; m];
    for r in 0..m {
        if t.basis[r] >= k {
            if let Some(col) = (0..k).find(|&j| !t.rows[r][j].is_zero()) {
                t.pivot(r, col);
            } else {
                live[r] = false;
            }
        }
    }
    // Phase two.
    let cost = |j: usize| if j < k { c[j].clone() } else { Rational::zero() };
    let mut reduced: Vec<Rational> = (0..width).map(cost).collect();
    let mut value = Rational::zero();
    for r in 0..m {
        if !live[r] {
            continue;
        }
        let cb = cost(t.basis[r]);
        if cb.is_zero() {
            continue;
        }
        for j in 0..width {
            if !t.rows[r][j].is_zero() {
                reduced[j] -= &cb * &t.rows[r][j];
            }
        }
        value += &cb * &t.rhs[r];
    }
    // Dead rows are identically zero on structural columns and never pivot.
    t.reduced = reduced;
    t.value = value;
    if !t.optimize(k) {
        return LpOutcome::Unbounded;
    }
    let mut x = vec![Rational::zero(); k];
    for r in 0..m {
        if live[r] && t.basis[r] < k {
            x[t.basis[r]] = t.rhs[r].clone();
        }
    }
    let mut dual = vec![Rational::zero(); m];
    for r in 0..m {
        if !live[r] {
            continue;
        }
        let cb = cost(t.basis[r]);
        if cb.is_zero() {
            continue;
        }
        for (i, d) in dual.iter_mut().enumerate() {
            *d += &cb * &t.rows[r][k + i];
        }
    }
    for i in 0..m {
        if flipped[i] {
            dual[i] = -&dual[i];
        }
    }
    LpOutcome::Optimal(LpSolution {
        x,
        value: t.value.clone(),
        dual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Rational {
        Rational::from_integer(n.into())
    }

    fn check_duality(a: &[Vec<Rational>], b: &[Rational], c: &[Rational], s: &LpSolution) {
        for j in 0..c.len() {
            let lhs: Rational = (0..a.len()).map(|i| &a[i][j] * &s.dual[i]).sum();
            assert!(lhs >= c[j]);
        }
        let by: Rational = b.iter().zip(&s.dual).map(|(x, y)| x * y).sum();
        assert_eq!(by, s.value);
        for i in 0..a.len() {
            let ax: Rational = a[i].iter().zip(&s.x).map(|(x, y)| x * y).sum();
            assert_eq!(ax, b[i]);
        }
    }

    #[test]
    fn small_problem() {
        // max x + y, x + 2y + s1 = 4, 3x + y + s2 = 6.
        let a = vec![
            vec![q(1), q(2), q(1), q(0)],
            vec![q(3), q(1), q(0), q(1)],
        ];
        let b = vec![q(4), q(6)];
        let c = vec![q(1), q(1), q(0), q(0)];
        let LpOutcome::Optimal(s) = maximize(&a, &b, &c) else {
            panic!("expected optimum");
        };
        assert_eq!(s.value, Rational::new(14.into(), 5.into()));
        check_duality(&a, &b, &c, &s);
    }

    #[test]
    fn infeasible_unbounded_redundant() {
        let a = vec![vec![q(1), q(1)], vec![q(1), q(1)]];
        assert_eq!(maximize(&a, &[q(1), q(2)], &[q(0), q(0)]), LpOutcome::Infeasible);
        let a = vec![vec![q(1), q(-1)]];
        assert_eq!(maximize(&a, &[q(1)], &[q(1), q(0)]), LpOutcome::Unbounded);
        let a = vec![vec![q(1), q(1)], vec![q(2), q(2)]];
        let c = vec![q(1), q(0)];
        let LpOutcome::Optimal(s) = maximize(&a, &[q(1), q(2)], &c) else {
            panic!();
        };
        assert_eq!(s.value, q(1));
        check_duality(&a, &[q(1), q(2)], &c, &s);
    }

    #[test]
    fn negative_rhs() {
        let a = vec![vec![q(-1), q(-1)]];
        let c = vec![q(-1), q(-2)];
        let LpOutcome::Optimal(s) = maximize(&a, &[q(-3)], &c) else {
            panic!();
        };
        assert_eq!(s.value, q(-3));
        check_duality(&a, &[q(-3)], &c, &s);
    }
}
