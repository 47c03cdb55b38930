//! Small exact integer linear algebra: ranks, determinants, adjugates and saturated lattices.

use num_integer::Integer;

pub fn gcd_all(v: &[i128]) -> i128 {
    v.iter().fold(0i128, |g, &x| g.gcd(&x))
}

/// Divides out the gcd of the entries; the zero vector is returned unchanged.
pub fn primitive(v: &[i64]) -> Vec<i64> {
    let g = v.iter().fold(0i64, |g, &x| g.gcd(&x));
    if g <= 1 {
        v.to_vec()
    } else {
        v.iter().map(|x| x / g).collect()
    }
}

/// Rank over the rationals.
pub fn rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    rank_in_place(&mut m)
}

pub(crate) fn rank_in_place(m: &mut [Vec<i128>]) -> usize {
    if m.is_empty() {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..m.len() {
            if m[i][c] != 0 {
                let (a, b) = (m[r][c], m[i][c]);
                for j in c..cols {
                    m[i][j] = m[i][j] * a - m[r][j] * b;
                }
                let g = gcd_all(&m[i]);
                if g > 1 {
                    for x in m[i].iter_mut() {
                        *x /= g;
                    }
                }
            }
        }
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn det(m: &[Vec<i64>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(p) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, p);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

/// Adjugate matrix: `adj(m)·m = det(m)·I`.
pub fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let n = m.len();
    if n == 1 {
        return vec![vec![1]];
    }
    let mut adj = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let s = if (i + j) % 2 == 0 { 1 } else { -1 };
            adj[j][i] = s * det(&minor);
        }
    }
    adj
}

/// Column-style Hermite reduction of `a` (rows of length `n`). Returns `(kernel, dual)`:
/// `kernel` is a basis of `{x ∈ Z^n : a·x = 0}` and `dual[i]` are integer functionals with
/// `⟨dual[i], kernel[j]⟩ = δ_ij` (rows of the inverse of the unimodular transform).
pub fn kernel_with_dual(a: &[Vec<i64>], n: usize) -> (Vec<Vec<i64>>, Vec<Vec<i64>>) {
    let mut m: Vec<Vec<i128>> = a
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut u: Vec<Vec<i128>> = (0..n)
        .map(|i| (0..n).map(|j| (i == j) as i128).collect())
        .collect();
    let mut uinv = u.clone();
    let mut k = 0;
    for r in 0..m.len() {
        if k == n {
            break;
        }
        loop {
            let Some(c) = (k..n)
                .filter(|&c| m[r][c] != 0)
                .min_by_key(|&c| m[r][c].abs())
            else {
                break;
            };
            if c != k {
                for row in m.iter_mut() {
                    row.swap(c, k);
                }
                for row in u.iter_mut() {
                    row.swap(c, k);
                }
                uinv.swap(c, k);
            }
            let mut done = true;
            for c2 in k + 1..n {
                if m[r][c2] == 0 {
                    continue;
                }
                let q = m[r][c2] / m[r][k];
                if q != 0 {
                    for row in m.iter_mut() {
                        row[c2] -= q * row[k];
                    }
                    for row in u.iter_mut() {
                        row[c2] -= q * row[k];
                    }
                    for j in 0..n {
                        uinv[k][j] += q * uinv[c2][j];
                    }
                }
                if m[r][c2] != 0 {
                    done = false;
                }
            }
            if done {
                k += 1;
                break;
            }
        }
    }
    let kernel = (k..n)
        .map(|c| (0..n).map(|i| u[i][c] as i64).collect())
        .collect();
    let dual = (k..n)
        .map(|c| uinv[c].iter().map(|&x| x as i64).collect())
        .collect();
    (kernel, dual)
}

/// A basis of the saturated lattice `span_Q(diffs) ∩ Z^n` together with dual functionals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SaturatedLattice {
    pub basis: Vec<Vec<i64>>,
    pub dual: Vec<Vec<i64>>,
}

impl SaturatedLattice {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    /// Coordinates of a lattice vector in the basis.
    pub fn coordinates(&self, x: &[i64]) -> Vec<i64> {
        self.dual
            .iter()
            .map(|y| y.iter().zip(x).map(|(a, b)| a * b).sum())
            .collect()
    }

    /// An ambient integer functional restricting to `a` (given in dual coordinates).
    pub fn lift_functional(&self, a: &[i64]) -> Vec<i64> {
        let n = self.dual.first().map_or(0, |y| y.len());
        let mut out = vec![0i64; n];
        for (ai, y) in a.iter().zip(&self.dual) {
            for (o, yj) in out.iter_mut().zip(y) {
                *o += ai * yj;
            }
        }
        out
    }
}

/// Saturated lattice spanned by `diffs` in `Z^n`. When the span is the hyperplane
/// `x_1 + ... + x_n = 0`, the basis is `e_i − e_{i+1}` and the dual functionals are
/// `ϖ_i = e_1 + ... + e_i`, so dual coordinates are the `ϖ`-coordinates of `Z^n/Z(1,...,1)`.
pub fn saturated_span(diffs: &[Vec<i64>], n: usize) -> SaturatedLattice {
    let r = rank(diffs);
    if r == 0 {
        return SaturatedLattice {
            basis: Vec::new(),
            dual: Vec::new(),
        };
    }
    if r + 1 == n && diffs.iter().all(|d| d.iter().sum::<i64>() == 0) {
        let basis = (0..n - 1)
            .map(|i| (0..n).map(|j| (j == i) as i64 - (j == i + 1) as i64).collect())
            .collect();
        let dual = (0..n - 1)
            .map(|i| (0..n).map(|j| (j <= i) as i64).collect())
            .collect();
        return SaturatedLattice { basis, dual };
    }
    let (normals, _) = kernel_with_dual(diffs, n);
    let (basis, dual) = kernel_with_dual(&normals, n);
    SaturatedLattice { basis, dual }
}

/// `ϖ`-coordinates of a functional `y` on `{Σx = 0}`: `(y_1 − y_2, ..., y_{n−1} − y_n)`.
pub fn varpi_coordinates(y: &[i64]) -> Vec<i64> {
    y.windows(2).map(|w| w[0] - w[1]).collect()
}
