use std::collections::{BTreeSet, HashMap, HashSet};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::intlin::{adjugate, det, rank};
use super::FanError;

/// A polyhedral fan: primitive integer rays and maximal cones as sorted ray-index lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fan {
    rank: usize,
    rays: Vec<Vec<i64>>,
    cones: Vec<Vec<usize>>,
    complete: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct FanJson {
    pub rank: usize,
    pub rays: Vec<Vec<i64>>,
    pub cones: Vec<Vec<usize>>,
}

fn gcd(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

impl Fan {
    /// Validates rays and cone indices; completeness is decided for simplicial fans.
    pub fn new(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Result<Self, FanError> {
        for (i, r) in rays.iter().enumerate() {
            if r.len() != rank {
                return Err(FanError::RayLength(i));
            }
            if r.iter().fold(0, |g, &x| gcd(g, x)) != 1 {
                return Err(FanError::NotPrimitive(i));
            }
        }
        for (i, c) in cones.iter().enumerate() {
            if c.iter().any(|&k| k >= rays.len()) {
                return Err(FanError::BadIndex(i));
            }
        }
        let mut f = Self {
            rank,
            rays,
            cones: normalize_cones(cones),
            complete: false,
        };
        f.complete = f.check_complete();
        Ok(f)
    }

    /// For constructions that are complete by design (normal fans).
    pub(crate) fn complete_unchecked(rank: usize, rays: Vec<Vec<i64>>, cones: Vec<Vec<usize>>) -> Self {
        Self {
            rank,
            rays,
            cones: normalize_cones(cones),
            complete: true,
        }
    }

    pub fn from_json(j: &FanJson) -> Result<Self, FanError> {
        Self::new(j.rank, j.rays.clone(), j.cones.clone())
    }

    pub fn to_json(&self) -> FanJson {
        FanJson {
            rank: self.rank,
            rays: self.rays.clone(),
            cones: self.cones.clone(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn cones(&self) -> &[Vec<usize>] {
        &self.cones
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    fn is_full_simplicial(&self) -> bool {
        self.cones
            .iter()
            .all(|c| c.len() == self.rank && rank(&self.cone_rows(c)) == self.rank)
    }

    fn cone_rows(&self, c: &[usize]) -> Vec<Vec<i64>> {
        c.iter().map(|&i| self.rays[i].clone()).collect()
    }

    /// Column matrix of a cone's rays.
    fn cone_matrix(&self, c: &[usize]) -> Vec<Vec<i64>> {
        (0..self.rank)
            .map(|i| c.iter().map(|&j| self.rays[j][i]).collect())
            .collect()
    }

    /// Coefficients of `x` in the rays of a full simplicial cone, as `(numerators, det)`.
    fn coefficients(&self, c: &[usize], x: &[i64]) -> (Vec<i128>, i128) {
        let m = self.cone_matrix(c);
        let d = det(&m);
        let adj = adjugate(&m);
        let lam = adj
            .iter()
            .map(|row| row.iter().zip(x).map(|(a, &b)| a * b as i128).sum())
            .collect();
        (lam, d)
    }

    /// Every ridge lies in exactly two cones on opposite sides, and a generic point is covered
    /// exactly once. Together these force completeness for simplicial fans.
    fn check_complete(&self) -> bool {
        if self.rank == 0 || self.cones.is_empty() || !self.is_full_simplicial() {
            return false;
        }
        let mut ridges: HashMap<Vec<usize>, Vec<(usize, usize)>> = HashMap::new();
        for (ci, c) in self.cones.iter().enumerate() {
            for (k, _) in c.iter().enumerate() {
                let mut r = c.clone();
                let opp = r.remove(k);
                ridges.entry(r).or_default().push((ci, opp));
            }
        }
        for (ridge, users) in &ridges {
            if users.len() != 2 {
                return false;
            }
            // The opposite rays must lie on different sides of the ridge hyperplane.
            let side = |opp: usize| {
                let mut m: Vec<Vec<i64>> = ridge.iter().map(|&i| self.rays[i].clone()).collect();
                m.push(self.rays[opp].clone());
                det(&m).signum()
            };
            if side(users[0].1) == side(users[1].1) {
                return false;
            }
        }
        let mut p: Vec<i64> = (0..self.rank).map(|i| 1_000_003 * (i as i64 + 1) + 7919 * (i as i64 * i as i64) + 17).collect();
        for attempt in 0..16 {
            let mut count = 0;
            let mut degenerate = false;
            for c in &self.cones {
                let (lam, d) = self.coefficients(c, &p);
                if lam.iter().any(|&l| l == 0) {
                    degenerate = true;
                    break;
                }
                if lam.iter().all(|&l| (l > 0) == (d > 0)) {
                    count += 1;
                }
            }
            if !degenerate {
                return count == 1;
            }
            for (i, x) in p.iter_mut().enumerate() {
                *x = *x * 3 + (attempt * 31 + i as i64 * 101) - 500;
            }
        }
        false
    }

    /// Interior points of distinct maximal cones are never shared (checked on a sample point per
    /// cone, the sum of its rays).
    pub fn interiors_disjoint_sampled(&self) -> bool {
        if !self.is_full_simplicial() {
            return false;
        }
        for (i, c) in self.cones.iter().enumerate() {
            let x: Vec<i64> = (0..self.rank)
                .map(|k| c.iter().map(|&r| self.rays[r][k]).sum())
                .collect();
            for (j, c2) in self.cones.iter().enumerate() {
                if i == j {
                    continue;
                }
                let (lam, d) = self.coefficients(c2, &x);
                if lam.iter().all(|&l| l != 0 && (l > 0) == (d > 0)) {
                    return false;
                }
            }
        }
        true
    }

    /// Each maximal cone is generated by part of a lattice basis.
    pub fn is_smooth(&self) -> bool {
        self.first_singular_cone().is_none()
    }

    fn first_singular_cone(&self) -> Option<usize> {
        self.cones.iter().position(|c| {
            let rows = self.cone_rows(c);
            if rows.len() == self.rank {
                return det(&rows).abs() != 1;
            }
            // gcd of maximal minors.
            let cols: Vec<usize> = (0..self.rank).collect();
            let g = cols
                .iter()
                .copied()
                .combinations(rows.len())
                .fold(0i128, |g, cs| {
                    let sub: Vec<Vec<i64>> = rows.iter().map(|r| cs.iter().map(|&k| r[k]).collect()).collect();
                    num_integer::gcd(g, det(&sub))
                });
            g != 1
        })
    }

    fn check_smooth_complete(&self) -> Result<(), FanError> {
        if let Some(i) = self.first_singular_cone() {
            return Err(FanError::NonSmooth(i));
        }
        if !self.complete {
            return Err(FanError::Incomplete);
        }
        if let Some(i) = self.cones.iter().position(|c| c.len() != self.rank) {
            return Err(FanError::NotSimplicial(i));
        }
        if self.rays.len() > 64 {
            return Err(FanError::TooManyRays(self.rays.len()));
        }
        Ok(())
    }

    /// Minimal sets of rays not contained in a common cone, as sorted index lists.
    pub fn primitive_collections(&self) -> Result<Vec<Vec<usize>>, FanError> {
        self.check_smooth_complete()?;
        let mut faces: HashSet<u64> = HashSet::new();
        for c in &self.cones {
            let k = c.len();
            for sub in 0u64..(1u64 << k) {
                let mut m = 0u64;
                for (b, &r) in c.iter().enumerate() {
                    if sub >> b & 1 == 1 {
                        m |= 1 << r;
                    }
                }
                faces.insert(m);
            }
        }
        let mut out: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &f in &faces {
            for r in 0..self.rays.len() {
                if f >> r & 1 == 1 {
                    continue;
                }
                let s = f | 1 << r;
                if faces.contains(&s) {
                    continue;
                }
                let minimal = (0..self.rays.len())
                    .filter(|&x| s >> x & 1 == 1)
                    .all(|x| faces.contains(&(s & !(1 << x))));
                if minimal {
                    out.insert((0..self.rays.len()).filter(|&x| s >> x & 1 == 1).collect());
                }
            }
        }
        Ok(out.into_iter().collect())
    }

    /// The primitive relation `Σ_R ρ = Σ a_j ρ_j` over the minimal cone containing the sum, and
    /// its degree `|R| − Σ a_j`.
    pub fn batyrev_degree(&self, collection: &[usize]) -> Result<i64, FanError> {
        self.check_smooth_complete()?;
        let s: Vec<i64> = (0..self.rank)
            .map(|k| collection.iter().map(|&r| self.rays[r][k]).sum())
            .collect();
        for c in &self.cones {
            let (lam, d) = self.coefficients(c, &s);
            if lam.iter().all(|&l| l == 0 || (l > 0) == (d > 0)) {
                let total: i128 = lam.iter().sum::<i128>() / d;
                return Ok(collection.len() as i64 - total as i64);
            }
        }
        Err(FanError::Incomplete)
    }

    pub fn is_fano(&self) -> Result<bool, FanError> {
        Ok(self.batyrev_degrees()?.iter().all(|&(_, d)| d > 0))
    }

    pub fn is_weak_fano(&self) -> Result<bool, FanError> {
        Ok(self.batyrev_degrees()?.iter().all(|&(_, d)| d >= 0))
    }

    pub fn batyrev_degrees(&self) -> Result<Vec<(Vec<usize>, i64)>, FanError> {
        self.primitive_collections()?
            .into_iter()
            .map(|r| {
                let d = self.batyrev_degree(&r)?;
                Ok((r, d))
            })
            .collect()
    }

    fn ray_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.rays.len()];
        for c in &self.cones {
            for &r in c {
                deg[r] += 1;
            }
        }
        deg
    }

    /// A ray bijection induced by a lattice automorphism carrying cones onto cones.
    pub fn find_isomorphism(&self, other: &Fan) -> Result<Option<Vec<usize>>, FanError> {
        if self.rank != other.rank {
            return Err(FanError::RankMismatch(self.rank, other.rank));
        }
        if self.rays.len() != other.rays.len() || self.cones.len() != other.cones.len() {
            return Ok(None);
        }
        let sizes = |f: &Fan| f.cones.iter().map(|c| c.len()).sorted().collect::<Vec<_>>();
        if sizes(self) != sizes(other) {
            return Ok(None);
        }
        let (d1, d2) = (self.ray_degrees(), other.ray_degrees());
        if d1.iter().sorted().collect::<Vec<_>>() != d2.iter().sorted().collect::<Vec<_>>() {
            return Ok(None);
        }
        if self.rank == 0 {
            return Ok(Some(Vec::new()));
        }
        // A basis from some cone of self.
        let Some((c1, base)) = self.cones.iter().find_map(|c| {
            let b: Vec<usize> = independent_subset(&self.rays, c, self.rank)?;
            Some((c.clone(), b))
        }) else {
            return Ok(None);
        };
        let a1 = columns(&self.rays, &base, self.rank);
        let det1 = det(&a1);
        let adj1 = adjugate(&a1);
        let target: HashMap<&Vec<i64>, usize> =
            other.rays.iter().enumerate().map(|(i, r)| (r, i)).collect();
        let target_cones: HashSet<&Vec<usize>> = other.cones.iter().collect();
        for c2 in other.cones.iter().filter(|c| c.len() == c1.len()) {
            for tuple in c2.iter().copied().permutations(self.rank) {
                if base.iter().zip(&tuple).any(|(&b, &t)| d1[b] != d2[t]) {
                    continue;
                }
                let a2 = columns(&other.rays, &tuple, self.rank);
                // M = A2 · adj(A1) / det(A1).
                let mut m = vec![vec![0i64; self.rank]; self.rank];
                let mut ok = true;
                'fill: for i in 0..self.rank {
                    for j in 0..self.rank {
                        let s: i128 = (0..self.rank).map(|k| a2[i][k] as i128 * adj1[k][j]).sum();
                        if s % det1 != 0 {
                            ok = false;
                            break 'fill;
                        }
                        m[i][j] = (s / det1) as i64;
                    }
                }
                if !ok || det(&m).abs() != 1 {
                    continue;
                }
                let mut map = Vec::with_capacity(self.rays.len());
                let mut used = vec![false; other.rays.len()];
                for r in &self.rays {
                    let img: Vec<i64> = (0..self.rank)
                        .map(|i| (0..self.rank).map(|k| m[i][k] * r[k]).sum())
                        .collect();
                    match target.get(&img) {
                        Some(&t) if !used[t] => {
                            used[t] = true;
                            map.push(t);
                        }
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if !ok {
                    continue;
                }
                let all = self.cones.iter().all(|c| {
                    let mut im: Vec<usize> = c.iter().map(|&r| map[r]).collect();
                    im.sort_unstable();
                    target_cones.contains(&im)
                });
                if all {
                    return Ok(Some(map));
                }
            }
        }
        Ok(None)
    }

    pub fn is_isomorphic(&self, other: &Fan) -> Result<bool, FanError> {
        Ok(self.find_isomorphism(other)?.is_some())
    }
}

/// Free-function form of `Fan::is_isomorphic`.
pub fn fan_isomorphic(a: &Fan, b: &Fan) -> Result<bool, FanError> {
    a.is_isomorphic(b)
}

fn normalize_cones(cones: Vec<Vec<usize>>) -> Vec<Vec<usize>> {
    cones
        .into_iter()
        .map(|mut c| {
            c.sort_unstable();
            c.dedup();
            c
        })
        .collect()
}

fn columns(rays: &[Vec<i64>], idx: &[usize], r: usize) -> Vec<Vec<i64>> {
    (0..r).map(|i| idx.iter().map(|&j| rays[j][i]).collect()).collect()
}

fn independent_subset(rays: &[Vec<i64>], cone: &[usize], r: usize) -> Option<Vec<usize>> {
    let mut chosen: Vec<usize> = Vec::new();
    for &i in cone {
        let mut rows: Vec<Vec<i64>> = chosen.iter().map(|&k| rays[k].clone()).collect();
        rows.push(rays[i].clone());
        if rank(&rows) == rows.len() {
            chosen.push(i);
            if chosen.len() == r {
                return Some(chosen);
            }
        }
    }
    None
}
