//! Bruhat interval polytopes `Q^v_w`: toric, cube and Boolean tests, minimal expressions of
//! products of distinct simple reflections, and a search harness for simplicity at the ends.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_polytopes::LatticePolytope;
use crate::group_core::{word_product, BruhatInterval, GroupError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RichardsonError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("letters {0:?} repeat")]
    RepeatedLetters(Vec<usize>),
    #[error("letters must be at least 1")]
    ZeroLetter,
    #[error("ℓ(w) = {found}, expected ℓ(v) + m = {expected}")]
    LengthCondition { expected: usize, found: usize },
}

/// `Q^v_w = conv{ μ(u) : u ∈ [v, w] }`.
pub fn q_vw(v: &Permutation, w: &Permutation) -> Result<LatticePolytope, GroupError> {
    let iv = BruhatInterval::new(v, w)?;
    Ok(polytope_of(&iv))
}

fn polytope_of(iv: &BruhatInterval) -> LatticePolytope {
    LatticePolytope::from_moment_points(iv.elements())
        .expect("elements of a Bruhat interval are vertices of its polytope")
}

/// `dim Q^v_w = ℓ(w) − ℓ(v)`.
pub fn is_toric(v: &Permutation, w: &Permutation) -> Result<bool, GroupError> {
    let q = q_vw(v, w)?;
    Ok(q.dim() == w.length() - v.length())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubintervalFaceCheck {
    pub toric: bool,
    pub all_faces: bool,
    /// A subinterval `[x, y]` whose vertex set is not a face.
    pub counterexample: Option<(Permutation, Permutation)>,
}

/// Checks for every `x ≤ y` in `[v, w]` whether `{μ(u) : u ∈ [x, y]}` is the vertex set of a
/// face. Inversion is a poset automorphism, so this covers all `[x⁻¹, y⁻¹] ⊂ [v⁻¹, w⁻¹]`.
pub fn faces_are_subintervals_check(
    v: &Permutation,
    w: &Permutation,
) -> Result<SubintervalFaceCheck, GroupError> {
    let iv = BruhatInterval::new(v, w)?;
    let q = polytope_of(&iv);
    let toric = q.dim() == iv.rank();
    let els = iv.elements();
    let pairs: Vec<(usize, usize)> = (0..els.len())
        .flat_map(|i| (0..els.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| els[i].bruhat_le(&els[j]))
        .collect();
    let bad = pairs.par_iter().find_first(|&&(i, j)| {
        let mut verts: Vec<usize> = els
            .iter()
            .filter(|u| els[i].bruhat_le(u) && u.bruhat_le(&els[j]))
            .map(|u| q.vertex_of(u).expect("labelled"))
            .collect();
        verts.sort_unstable();
        q.minimal_face(&verts) != verts
    });
    Ok(SubintervalFaceCheck {
        toric,
        all_faces: bad.is_none(),
        counterexample: bad.map(|&(i, j)| (els[i].clone(), els[j].clone())),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CubeCheck {
    pub cube: bool,
    pub toric: bool,
    pub boolean: bool,
}

impl CubeCheck {
    /// Cube iff toric and Boolean.
    pub fn consistent(&self) -> bool {
        self.cube == (self.toric && self.boolean)
    }
}

pub fn cube_theorem_check(v: &Permutation, w: &Permutation) -> Result<CubeCheck, GroupError> {
    let iv = BruhatInterval::new(v, w)?;
    let q = polytope_of(&iv);
    Ok(CubeCheck { cube: q.is_cube(), toric: q.dim() == iv.rank(), boolean: iv.is_boolean() })
}

/// A product of distinct simple reflections written as runs `s(p, q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalExpression {
    /// `(p, q)`: `s_p s_{p±1} … s_q`.
    pub factors: Vec<(usize, usize)>,
    pub proper: bool,
}

impl MinimalExpression {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The letters of the expanded product.
    pub fn letters(&self) -> Vec<usize> {
        let mut out = Vec::new();
        for &(p, q) in &self.factors {
            if p <= q {
                out.extend(p..=q);
            } else {
                out.extend((q..=p).rev());
            }
        }
        out
    }

    fn bounds(&self) -> Vec<(usize, usize)> {
        self.factors.iter().map(|&(p, q)| (p.min(q), p.max(q))).collect()
    }
}

impl fmt::Display for MinimalExpression {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "e");
        }
        for (p, q) in &self.factors {
            write!(f, "s({p},{q})")?;
        }
        Ok(())
    }
}

/// Minimal run decomposition of `s_{j_1} ⋯ s_{j_m}` for distinct `j`.
///
/// Only the relative order of adjacent letters matters. Each maximal block of consecutive
/// letters is cut greedily wherever that orientation flips, and the runs are then ordered so
/// the cut edges keep their orientation.
pub fn minimal_expression(letters: &[usize]) -> Result<MinimalExpression, RichardsonError> {
    if letters.contains(&0) {
        return Err(RichardsonError::ZeroLetter);
    }
    let set: BTreeSet<usize> = letters.iter().copied().collect();
    if set.len() != letters.len() {
        return Err(RichardsonError::RepeatedLetters(letters.to_vec()));
    }
    let top = set.iter().copied().max().unwrap_or(0);
    let mut pos = vec![usize::MAX; top + 2];
    for (k, &j) in letters.iter().enumerate() {
        pos[j] = k;
    }
    // up[i]: s_i is applied before s_{i+1}.
    let up = |i: usize| pos[i] < pos[i + 1];
    let present = |i: usize| i <= top && pos[i] != usize::MAX;

    let mut runs: Vec<(usize, usize, bool)> = Vec::new();
    let mut i = 1;
    while i <= top {
        if !present(i) {
            i += 1;
            continue;
        }
        let lo = i;
        let mut dir: Option<bool> = None;
        while present(i + 1) && dir.is_none_or(|d| d == up(i)) {
            dir = Some(up(i));
            i += 1;
        }
        runs.push((lo, i, dir.unwrap_or(true)));
        i += 1;
    }

    // Order runs: a cut edge between runs a and a+1 fixes which goes first.
    let r = runs.len();
    let mut before: Vec<Vec<usize>> = vec![Vec::new(); r];
    let mut indeg = vec![0usize; r];
    for a in 0..r.saturating_sub(1) {
        let edge = runs[a].1;
        if runs[a + 1].0 == edge + 1 {
            let (x, y) = if up(edge) { (a, a + 1) } else { (a + 1, a) };
            before[x].push(y);
            indeg[y] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..r).filter(|&a| indeg[a] == 0).collect();
    let mut factors = Vec::with_capacity(r);
    while let Some(a) = ready.pop_first() {
        let (lo, hi, inc) = runs[a];
        factors.push(if inc { (lo, hi) } else { (hi, lo) });
        for &b in &before[a] {
            indeg[b] -= 1;
            if indeg[b] == 0 {
                ready.insert(b);
            }
        }
    }
    let mut expr = MinimalExpression { factors, proper: false };
    expr.proper = is_proper(&expr);
    Ok(expr)
}

/// No two run intervals are adjacent.
pub fn is_proper(expr: &MinimalExpression) -> bool {
    let mut b = expr.bounds();
    b.sort_unstable();
    b.windows(2).all(|w| w[0].1 + 1 < w[1].0)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    /// `w = s_{j_1} ⋯ s_{j_m} v`.
    Left,
    /// `w = v s_{j_1} ⋯ s_{j_m}`.
    Right,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProperPairCheck {
    pub v: Permutation,
    pub w: Permutation,
    pub distinct: bool,
    pub expression: Option<MinimalExpression>,
    pub toric: bool,
    pub cube: bool,
}

impl ProperPairCheck {
    /// Distinct letters iff toric, and proper implies cube. The converse only holds across all
    /// admissible `v` at once, so a single pair cannot contradict it.
    pub fn consistent(&self) -> bool {
        let cube_ok = match &self.expression {
            Some(e) => !e.proper || self.cube,
            None => true,
        };
        self.distinct == self.toric && cube_ok
    }
}

pub fn proper_pair_check(
    v: &Permutation,
    letters: &[usize],
    side: Side,
) -> Result<ProperPairCheck, RichardsonError> {
    let n = v.n();
    let x = word_product(n, letters)?;
    let w = match side {
        Side::Left => x.compose(v)?,
        Side::Right => v.compose(&x)?,
    };
    let expected = v.length() + letters.len();
    if w.length() != expected {
        return Err(RichardsonError::LengthCondition { expected, found: w.length() });
    }
    let distinct = letters.iter().collect::<BTreeSet<_>>().len() == letters.len();
    let expression = if distinct { Some(minimal_expression(letters)?) } else { None };
    let iv = BruhatInterval::new(v, &w)?;
    let q = polytope_of(&iv);
    Ok(ProperPairCheck {
        v: v.clone(),
        toric: q.dim() == iv.rank(),
        cube: q.is_cube(),
        w,
        distinct,
        expression,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub v: Permutation,
    pub w: Permutation,
    pub dim: usize,
    pub ell_diff: usize,
    pub toric: bool,
    pub cube: bool,
    pub boolean: bool,
}

pub fn pair_report(v: &Permutation, w: &Permutation) -> Result<PairReport, GroupError> {
    let iv = BruhatInterval::new(v, w)?;
    let q = polytope_of(&iv);
    let dim = q.dim();
    Ok(PairReport {
        v: v.clone(),
        w: w.clone(),
        dim,
        ell_diff: iv.rank(),
        toric: dim == iv.rank(),
        cube: q.is_cube(),
        boolean: iv.is_boolean(),
    })
}

/// All comparable pairs `v ≤ w` in `S_n`.
pub fn bruhat_pairs(n: usize) -> Vec<(Permutation, Permutation)> {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    all.iter()
        .flat_map(|v| all.iter().filter(|w| v.bruhat_le(w)).map(move |w| (v.clone(), w.clone())))
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimplicitySearch {
    pub n: usize,
    pub pairs_checked: usize,
    pub simple_at_ends: usize,
    /// Pairs simple at `v` and `w` but not everywhere.
    pub witnesses: Vec<(Permutation, Permutation)>,
}

/// Looks for `Q^v_w` simple at `v` and `w` but not simple; reports what it finds.
pub fn simplicity_search(n: usize) -> SimplicitySearch {
    let pairs = bruhat_pairs(n);
    let rows: Vec<(bool, bool)> = pairs
        .par_iter()
        .map(|(v, w)| {
            let q = q_vw(v, w).expect("v ≤ w");
            let ends = q.is_simple_at(q.vertex_of(v).expect("labelled"))
                && q.is_simple_at(q.vertex_of(w).expect("labelled"));
            (ends, ends && !q.is_simple())
        })
        .collect();
    SimplicitySearch {
        n,
        pairs_checked: pairs.len(),
        simple_at_ends: rows.iter().filter(|r| r.0).count(),
        witnesses: pairs
            .iter()
            .zip(&rows)
            .filter(|(_, r)| r.1)
            .map(|(p, _)| p.clone())
            .collect(),
    }
}
