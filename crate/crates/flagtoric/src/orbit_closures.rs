//! Torus orbit closures of explicit rational flags: Plücker supports, fixed points, moment
//! polytopes, geometric retractions and the coarsened Weyl-chamber fan.

use std::collections::{BTreeMap, HashSet, VecDeque};

use itertools::Itertools;
use num_traits::{One, Signed, Zero};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::exact_polytopes::{Fan, FanJson, LatticePolytope, PolytopeError, Rational};
use crate::group_core::Permutation;
use crate::matroids::CoxeterSubset;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum OrbitError {
    #[error("matrix is not square")]
    NotSquare,
    #[error("matrix is singular")]
    Singular,
    #[error("matrix rank {0} does not match permutation rank {1}")]
    RankMismatch(usize, usize),
    #[error("cannot parse entry {0:?}")]
    Parse(String),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
}

fn rank_of(mut m: Vec<Vec<Rational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = &m[i][c] / &m[r][c];
                for j in c..cols {
                    let t = &f * &m[r][j];
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// An invertible rational matrix representing the flag spanned by its leading columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagMatrix {
    entries: Vec<Vec<Rational>>,
}

impl FlagMatrix {
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self, OrbitError> {
        let n = entries.len();
        if n == 0 || entries.iter().any(|r| r.len() != n) {
            return Err(OrbitError::NotSquare);
        }
        if rank_of(entries.clone()) != n {
            return Err(OrbitError::Singular);
        }
        Ok(Self { entries })
    }

    pub fn from_integers(rows: &[Vec<i64>]) -> Result<Self, OrbitError> {
        Self::new(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect())
                .collect(),
        )
    }

    /// The permutation matrix with a 1 in row `w(j)` of column `j`.
    pub fn permutation_matrix(w: &Permutation) -> Self {
        let n = w.n();
        let mut m = vec![vec![Rational::zero(); n]; n];
        for j in 1..=n {
            m[w.at(j) - 1][j - 1] = Rational::one();
        }
        Self { entries: m }
    }

    pub fn identity(n: usize) -> Self {
        Self::permutation_matrix(&Permutation::identity(n))
    }

    /// Entries `a/b` with `a ∈ {−9..9}`, `b ∈ {1..9}`, resampled until invertible.
    pub fn random(n: usize, rng: &mut impl Rng) -> Self {
        loop {
            let m: Vec<Vec<Rational>> = (0..n)
                .map(|_| {
                    (0..n)
                        .map(|_| {
                            let a: i64 = rng.random_range(-9..=9);
                            let b: i64 = rng.random_range(1..=9);
                            Rational::new(a.into(), b.into())
                        })
                        .collect()
                })
                .collect();
            if let Ok(x) = Self::new(m) {
                return x;
            }
        }
    }

    /// `random` driven by a ChaCha8 stream seeded with `seed`.
    pub fn random_seeded(n: usize, seed: u64) -> Self {
        Self::random(n, &mut ChaCha8Rng::seed_from_u64(seed))
    }

    /// Row-major CSV of rationals `p/q` (or integers).
    pub fn from_csv(text: &str) -> Result<Self, OrbitError> {
        let mut rd = csv::ReaderBuilder::new()
            .has_headers(false)
            .trim(csv::Trim::All)
            .comment(Some(b'#'))
            .from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| OrbitError::Parse(e.to_string()))?;
            let row = rec
                .iter()
                .map(|s| s.parse::<Rational>().map_err(|_| OrbitError::Parse(s.to_string())))
                .collect::<Result<Vec<_>, _>>()?;
            rows.push(row);
        }
        Self::new(rows)
    }

    pub fn to_csv(&self) -> String {
        self.entries
            .iter()
            .map(|r| r.iter().map(|x| x.to_string()).join(","))
            .join("\n")
            + "\n"
    }

    pub fn n(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    /// `w·x`: row `i` of `x` becomes row `w(i)`.
    pub fn left_multiply(&self, w: &Permutation) -> Result<Self, OrbitError> {
        if w.n() != self.n() {
            return Err(OrbitError::RankMismatch(self.n(), w.n()));
        }
        let mut m = self.entries.clone();
        for i in 1..=self.n() {
            m[w.at(i) - 1] = self.entries[i - 1].clone();
        }
        Ok(Self { entries: m })
    }

    /// The `d × d` minor on `rows` and the first `d` columns.
    pub fn minor(&self, rows: &[usize]) -> Rational {
        let d = rows.len();
        let mut m: Vec<Vec<Rational>> = rows
            .iter()
            .map(|&i| self.entries[i - 1][..d].to_vec())
            .collect();
        let mut det = Rational::one();
        for c in 0..d {
            let Some(p) = (c..d).find(|&i| !m[i][c].is_zero()) else {
                return Rational::zero();
            };
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= &m[c][c];
            for i in c + 1..d {
                if !m[i][c].is_zero() {
                    let f = &m[i][c] / &m[c][c];
                    for j in c..d {
                        let t = &f * &m[c][j];
                        m[i][j] -= t;
                    }
                }
            }
        }
        det
    }

    fn upper_left_rank(&self, i: usize, j: usize) -> usize {
        if i == 0 || j == 0 {
            return 0;
        }
        rank_of(self.entries[..i].iter().map(|r| r[..j].to_vec()).collect())
    }
}

/// `I_d(x)` for `d = 1..n`, as bitmasks of row sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PluckerSupport {
    n: usize,
    sets: Vec<HashSet<u64>>,
}

impl PluckerSupport {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Whether `rows` (1-based, any order) lies in `I_{|rows|}`.
    pub fn contains(&self, rows: &[usize]) -> bool {
        let d = rows.len();
        if d == 0 || d > self.n {
            return d == 0;
        }
        self.sets[d - 1].contains(&mask(rows))
    }

    /// `I_d` as sorted row lists, in lexicographic order.
    pub fn level(&self, d: usize) -> Vec<Vec<usize>> {
        let mut v: Vec<Vec<usize>> = self.sets[d - 1]
            .iter()
            .map(|&m| (1..=self.n).filter(|&i| m >> (i - 1) & 1 == 1).collect())
            .collect();
        v.sort();
        v
    }

    /// All minors nonzero.
    pub fn is_generic(&self) -> bool {
        (1..=self.n).all(|d| self.sets[d - 1].len() == num_integer::binomial(self.n, d))
    }
}

fn mask(rows: &[usize]) -> u64 {
    rows.iter().fold(0u64, |m, &i| m | 1 << (i - 1))
}

pub fn plucker_support(x: &FlagMatrix) -> PluckerSupport {
    let n = x.n();
    let sets = (1..=n)
        .map(|d| {
            (1..=n)
                .combinations(d)
                .filter(|rows| !x.minor(rows).is_zero())
                .map(|rows| mask(&rows))
                .collect()
        })
        .collect();
    PluckerSupport { n, sets }
}

/// `{w : {w(1), …, w(d)} ∈ I_d(x) for all d}`.
pub fn fixed_points(x: &FlagMatrix) -> CoxeterSubset {
    let sup = plucker_support(x);
    let n = x.n();
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(n);
    fn dfs(sup: &PluckerSupport, n: usize, prefix: &mut Vec<usize>, m: u64, out: &mut Vec<Permutation>) {
        if prefix.len() == n {
            out.push(Permutation::new(prefix.clone()).expect("bijection"));
            return;
        }
        for v in 1..=n {
            let m2 = m | 1 << (v - 1);
            if m & 1 << (v - 1) == 0 && sup.sets[prefix.len()].contains(&m2) {
                prefix.push(v);
                dfs(sup, n, prefix, m2, out);
                prefix.pop();
            }
        }
    }
    dfs(&sup, n, &mut prefix, 0, &mut out);
    CoxeterSubset::new(out).expect("the top minor is nonzero, so some flag survives")
}

pub fn moment_image(u: &Permutation) -> Vec<i64> {
    u.moment_vector()
}

pub fn moment_polytope(x: &FlagMatrix) -> Result<LatticePolytope, OrbitError> {
    Ok(LatticePolytope::from_moment_points(fixed_points(x).elements())?)
}

/// The `z` with `y ∈ B⁻zB/B`, read from upper-left ranks: `rank y[1..i, 1..j] = #{k ≤ j : z(k) ≤ i}`.
pub fn opposite_cell_of(y: &FlagMatrix) -> Permutation {
    let n = y.n();
    let mut r = vec![vec![0usize; n + 1]; n + 1];
    for i in 1..=n {
        for j in 1..=n {
            r[i][j] = y.upper_left_rank(i, j);
        }
    }
    let images = (1..=n)
        .map(|j| {
            (1..=n)
                .find(|&i| r[i][j] + r[i - 1][j - 1] == 1 + r[i - 1][j] + r[i][j - 1])
                .expect("rank jumps of an invertible matrix form a permutation")
        })
        .collect();
    Permutation::new(images).expect("rank jumps form a permutation")
}

/// `u · opposite_cell_of(u⁻¹·x)`.
pub fn geometric_retraction(x: &FlagMatrix, u: &Permutation) -> Result<Permutation, OrbitError> {
    let y = x.left_multiply(&u.inverse())?;
    Ok(u.compose(&opposite_cell_of(&y)).expect("equal ranks"))
}

/// Fibers of the geometric retraction and the fan they define.
#[derive(Clone, Debug)]
pub struct CoarsenedWeylFan {
    /// Fixed point `y` ↦ chambers `u` with `R(u) = y`, both sorted.
    pub fibers: BTreeMap<Permutation, Vec<Permutation>>,
    /// Normal fan of the moment polytope; cone `i` belongs to the `i`-th fiber key.
    pub fan: Option<Fan>,
}

#[derive(Serialize)]
pub struct OrbitFanJson {
    #[serde(flatten)]
    pub fan: Option<FanJson>,
    pub fibers: BTreeMap<String, Vec<String>>,
}

impl CoarsenedWeylFan {
    pub fn to_json(&self) -> OrbitFanJson {
        OrbitFanJson {
            fan: self.fan.as_ref().map(|f| f.to_json()),
            fibers: self
                .fibers
                .iter()
                .map(|(y, us)| (y.to_string(), us.iter().map(|u| u.to_string()).collect()))
                .collect(),
        }
    }

    /// Each fiber contains its label and is connected under `u ↦ u·s_i`.
    pub fn fibers_connected(&self) -> bool {
        self.fibers.iter().all(|(y, us)| {
            let set: HashSet<&Permutation> = us.iter().collect();
            if !set.contains(y) {
                return false;
            }
            let mut seen: HashSet<Permutation> = HashSet::from([y.clone()]);
            let mut q = VecDeque::from([y.clone()]);
            while let Some(u) = q.pop_front() {
                for i in 1..u.n() {
                    let v = u.swap_positions(i, i + 1);
                    if set.contains(&v) && seen.insert(v.clone()) {
                        q.push_back(v);
                    }
                }
            }
            seen.len() == us.len()
        })
    }
}

/// Fiber partition of `S_n` under the geometric retraction.
pub fn orbit_fan(x: &FlagMatrix) -> Result<CoarsenedWeylFan, OrbitError> {
    let all: Vec<Permutation> = Permutation::all(x.n()).collect();
    let images: Vec<Permutation> = all
        .par_iter()
        .map(|u| geometric_retraction(x, u))
        .collect::<Result<_, _>>()?;
    let mut fibers: BTreeMap<Permutation, Vec<Permutation>> = BTreeMap::new();
    for (u, y) in all.into_iter().zip(images) {
        fibers.entry(y).or_default().push(u);
    }
    let poly = moment_polytope(x)?;
    let fan = if poly.dim() > 0 {
        Some(poly.normal_fan()?)
    } else {
        None
    };
    Ok(CoarsenedWeylFan { fibers, fan })
}

/// The retraction computed independently as the maximizer of `⟨μ(u), μ(y)⟩` over fixed points
/// `y`, which identifies each fiber with a vertex normal cone of the moment polytope.
pub fn retraction_by_moment_maximizer(x: &FlagMatrix, u: &Permutation) -> Option<Permutation> {
    let mu = u.moment_vector();
    let fp = fixed_points(x);
    let score = |y: &Permutation| -> i64 { y.moment_vector().iter().zip(&mu).map(|(a, b)| a * b).sum() };
    let best = fp.elements().iter().map(score).max()?;
    let mut arg = fp.elements().iter().filter(|y| score(y) == best);
    let first = arg.next()?.clone();
    arg.next().is_none().then_some(first)
}

/// Absolute value of the largest numerator or denominator, for reporting sample sizes.
pub fn height(x: &FlagMatrix) -> num_bigint::BigInt {
    x.entries
        .iter()
        .flatten()
        .map(|q| q.numer().abs().max(q.denom().clone()))
        .max()
        .unwrap_or_default()
}
