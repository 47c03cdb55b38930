//! Coxeter matroids in `S_n`: the Maximality Property, matroid and algebraic retractions, the
//! weak-order metric, and the matroid polytope.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_polytopes::{LatticePolytope, PolytopeError};
use crate::group_core::{GroupError, Permutation, SignedPermutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatroidError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Polytope(#[from] PolytopeError),
    #[error("no unique minimum at u = {u}: minimal elements {minimal:?}")]
    NoUniqueMinimum { u: String, minimal: Vec<String> },
    #[error("weights must be strictly increasing")]
    BadWeights,
    #[error("bad table: {0}")]
    Table(String),
}

/// A nonempty subset of `S_n`, stored sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSubset {
    n: usize,
    elements: Vec<Permutation>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct CoxeterSubsetJson {
    pub n: usize,
    pub elements: Vec<String>,
}

impl CoxeterSubset {
    pub fn new(elements: Vec<Permutation>) -> Result<Self, GroupError> {
        let n = elements.first().ok_or(GroupError::Empty)?.n();
        if let Some(bad) = elements.iter().find(|w| w.n() != n) {
            return Err(GroupError::RankMismatch(n, bad.n()));
        }
        let mut elements = elements;
        elements.sort();
        elements.dedup();
        Ok(Self { n, elements })
    }

    pub fn parse(items: &[&str]) -> Result<Self, GroupError> {
        Self::new(
            items
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<Permutation>, _>>()?,
        )
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, w: &Permutation) -> bool {
        self.elements.binary_search(w).is_ok()
    }

    pub fn from_json(j: &CoxeterSubsetJson) -> Result<Self, GroupError> {
        let m = Self::new(
            j.elements
                .iter()
                .map(|s| s.parse())
                .collect::<Result<Vec<Permutation>, _>>()?,
        )?;
        if m.n != j.n {
            return Err(GroupError::RankMismatch(j.n, m.n));
        }
        Ok(m)
    }

    pub fn to_json(&self) -> CoxeterSubsetJson {
        CoxeterSubsetJson {
            n: self.n,
            elements: self.elements.iter().map(|w| w.to_string()).collect(),
        }
    }
}

/// Outcome of the Maximality Property test.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MatroidCheck {
    pub is_matroid: bool,
    /// The first `u` (lexicographically) without a unique `≤^u`-maximum, and the maximal
    /// elements found there.
    pub witness: Option<(Permutation, Vec<Permutation>)>,
}

/// `≺^u_lex`-minimum of `M`: lexicographic minimum of `u⁻¹m`.
fn lex_candidate<'a>(m: &'a CoxeterSubset, uinv: &Permutation) -> &'a Permutation {
    m.elements
        .iter()
        .min_by(|a, b| {
            let (ra, rb) = (a.raw(), b.raw());
            for (x, y) in ra.iter().zip(rb) {
                let (kx, ky) = (uinv.at(*x as usize), uinv.at(*y as usize));
                if kx != ky {
                    return kx.cmp(&ky);
                }
            }
            std::cmp::Ordering::Equal
        })
        .expect("nonempty")
}

/// The `≤^u`-minimum of `M` if it exists.
fn unique_minimum<'a>(m: &'a CoxeterSubset, u: &Permutation) -> Option<&'a Permutation> {
    let uinv = u.inverse();
    let c = lex_candidate(m, &uinv);
    let cu = uinv.compose_unchecked(c);
    m.elements
        .iter()
        .all(|x| cu.bruhat_le(&uinv.compose_unchecked(x)))
        .then_some(c)
}

fn extremal(m: &CoxeterSubset, u: &Permutation, maximal: bool) -> Vec<Permutation> {
    let uinv = u.inverse();
    let shifted: Vec<Permutation> = m.elements.iter().map(|x| uinv.compose_unchecked(x)).collect();
    (0..shifted.len())
        .filter(|&i| {
            !(0..shifted.len()).any(|j| {
                j != i
                    && if maximal {
                        shifted[i].bruhat_le(&shifted[j])
                    } else {
                        shifted[j].bruhat_le(&shifted[i])
                    }
            })
        })
        .map(|i| m.elements[i].clone())
        .collect()
}

/// Maximality Property test. A unique `≤^u`-maximum exists iff a unique `≤^{u w₀}`-minimum does,
/// and a minimum, when it exists, is the lexicographic candidate; so each `u` costs one scan
/// of `M` plus one Bruhat comparison per element.
pub fn is_coxeter_matroid(m: &CoxeterSubset) -> MatroidCheck {
    let w0 = Permutation::longest(m.n);
    let all: Vec<Permutation> = Permutation::all(m.n).collect();
    let fail = all
        .par_iter()
        .position_first(|u| unique_minimum(m, &u.compose_unchecked(&w0)).is_none());
    match fail {
        None => MatroidCheck {
            is_matroid: true,
            witness: None,
        },
        Some(i) => {
            let u = all[i].clone();
            let maxima = extremal(m, &u, true);
            MatroidCheck {
                is_matroid: false,
                witness: Some((u, maxima)),
            }
        }
    }
}

/// Exhaustive form of [`is_coxeter_matroid`]: computes all `≤^u`-maximal elements for each `u`.
pub fn is_coxeter_matroid_exhaustive(m: &CoxeterSubset) -> bool {
    Permutation::all(m.n).all(|u| extremal(m, &u, true).len() == 1)
}

/// The `≤^u`-minimum of `M`.
pub fn matroid_retraction(m: &CoxeterSubset, u: &Permutation) -> Result<Permutation, MatroidError> {
    if u.n() != m.n {
        return Err(GroupError::RankMismatch(m.n, u.n()).into());
    }
    unique_minimum(m, u).cloned().ok_or_else(|| MatroidError::NoUniqueMinimum {
        u: u.to_string(),
        minimal: extremal(m, u, false).iter().map(|w| w.to_string()).collect(),
    })
}

/// `≺^u_lex`-minimum of an arbitrary subset of `S_n`.
pub fn algebraic_retraction(m: &CoxeterSubset, u: &Permutation) -> Result<Permutation, GroupError> {
    if u.n() != m.n {
        return Err(GroupError::RankMismatch(m.n, u.n()));
    }
    Ok(lex_candidate(m, &u.inverse()).clone())
}

/// Position of a signed letter in the alphabet `u(1) ≺ … ≺ u(n) ≺ u(n̄) ≺ … ≺ u(1̄)`.
fn signed_rank(u: &SignedPermutation, x: i64) -> usize {
    let n = u.n();
    for k in 1..=n {
        let y = u.at(k as i64);
        if y == x {
            return k - 1;
        }
        if y == -x {
            return 2 * n - k;
        }
    }
    unreachable!("letter outside the alphabet")
}

/// Algebraic retraction in types B, C and D.
pub fn algebraic_retraction_signed(
    m: &[SignedPermutation],
    u: &SignedPermutation,
) -> Result<SignedPermutation, GroupError> {
    let first = m.first().ok_or(GroupError::Empty)?;
    if let Some(bad) = m.iter().find(|w| w.n() != u.n()) {
        return Err(GroupError::RankMismatch(u.n(), bad.n()));
    }
    let key = |w: &SignedPermutation| -> Vec<usize> {
        w.images().into_iter().map(|x| signed_rank(u, x)).collect()
    };
    Ok(m.iter().min_by_key(|w| key(w)).unwrap_or(first).clone())
}

/// `d(v, w) = ℓ(v⁻¹w)`.
pub fn graph_distance(v: &Permutation, w: &Permutation) -> Result<usize, GroupError> {
    Ok(v.inverse().compose(w)?.length())
}

/// Minimum distance from `u` to `M` and all elements attaining it.
pub fn distance_to_set(u: &Permutation, m: &CoxeterSubset) -> Result<(usize, Vec<Permutation>), GroupError> {
    let mut best = usize::MAX;
    let mut arg = Vec::new();
    for x in &m.elements {
        let d = graph_distance(u, x)?;
        if d < best {
            best = d;
            arg.clear();
        }
        if d == best {
            arg.push(x.clone());
        }
    }
    Ok((best, arg))
}

/// `Conv{w·ν : w ∈ M}`, labelled by `M`.
pub fn matroid_polytope(m: &CoxeterSubset, nu: &[i64]) -> Result<LatticePolytope, MatroidError> {
    if nu.len() != m.n || nu.windows(2).any(|p| p[0] >= p[1]) {
        return Err(MatroidError::BadWeights);
    }
    let verts = m.elements.iter().map(|w| w.act_on(nu)).collect();
    Ok(LatticePolytope::new(m.n, verts, Some(m.elements.clone()))?)
}

pub const FANO_LINES: [[usize; 3]; 7] = [
    [1, 2, 4],
    [1, 3, 5],
    [1, 6, 7],
    [2, 3, 6],
    [2, 5, 7],
    [3, 4, 7],
    [4, 5, 6],
];

/// `{w ∈ S_7 : {w(1), w(2), w(3)} is not a line of the Fano plane}`.
pub fn fano_plane_matroid() -> CoxeterSubset {
    let lines: HashSet<[usize; 3]> = FANO_LINES.iter().copied().collect();
    let elements = Permutation::all(7)
        .filter(|w| {
            let mut t = [w.at(1), w.at(2), w.at(3)];
            t.sort_unstable();
            !lines.contains(&t)
        })
        .collect();
    CoxeterSubset::new(elements).expect("nonempty")
}

/// A retraction `S_n → M`, one row per `u` in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RetractionTable {
    pub n: usize,
    pub rows: Vec<(Permutation, Permutation)>,
}

impl RetractionTable {
    /// Tabulates `f` over all of `S_n`.
    pub fn build<F>(n: usize, f: F) -> Result<Self, MatroidError>
    where
        F: Fn(&Permutation) -> Result<Permutation, MatroidError> + Sync,
    {
        let all: Vec<Permutation> = Permutation::all(n).collect();
        let images: Vec<Permutation> = all.par_iter().map(&f).collect::<Result<_, _>>()?;
        Ok(Self {
            n,
            rows: all.into_iter().zip(images).collect(),
        })
    }

    pub fn matroid(m: &CoxeterSubset) -> Result<Self, MatroidError> {
        Self::build(m.n, |u| matroid_retraction(m, u))
    }

    pub fn algebraic(m: &CoxeterSubset) -> Self {
        Self::build(m.n, |u| Ok(algebraic_retraction(m, u)?)).expect("algebraic retraction is total")
    }

    pub fn get(&self, u: &Permutation) -> Option<&Permutation> {
        self.rows
            .binary_search_by(|(x, _)| x.cmp(u))
            .ok()
            .map(|i| &self.rows[i].1)
    }

    /// `r(u) ∈ M`, `r(u) = u` on `M`, and `r ∘ r = r`.
    pub fn is_retraction_onto(&self, m: &CoxeterSubset) -> bool {
        self.rows.iter().all(|(u, r)| {
            m.contains(r) && (!m.contains(u) || u == r) && self.get(r) == Some(r)
        })
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(["u", "r(u)"]).expect("in-memory write");
        for (u, r) in &self.rows {
            w.write_record([u.to_string(), r.to_string()]).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("flush")).expect("utf8")
    }

    pub fn from_csv(text: &str) -> Result<Self, MatroidError> {
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        let mut rows = Vec::new();
        for rec in rd.records() {
            let rec = rec.map_err(|e| MatroidError::Table(e.to_string()))?;
            if rec.len() != 2 {
                return Err(MatroidError::Table(format!("expected 2 fields, found {}", rec.len())));
            }
            rows.push((rec[0].parse::<Permutation>()?, rec[1].parse::<Permutation>()?));
        }
        let n = rows.first().map_or(0, |(u, _)| u.n());
        rows.sort();
        Ok(Self { n, rows })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn set(items: &[&str]) -> CoxeterSubset {
        CoxeterSubset::parse(items).unwrap()
    }

    #[test]
    fn matroid_examples() {
        let bad = is_coxeter_matroid(&set(&["213", "132"]));
        assert!(!bad.is_matroid);
        assert_eq!(bad.witness.unwrap().0, p("123"));
        assert!(is_coxeter_matroid(&set(&["231", "321"])).is_matroid);
        assert!(is_coxeter_matroid(&set(&["123", "213", "132", "312"])).is_matroid);
    }

    #[test]
    fn fast_path_matches_exhaustive_on_s3() {
        let all: Vec<Permutation> = Permutation::all(3).collect();
        for mask in 1u32..64 {
            let m = CoxeterSubset::new(
                (0..6).filter(|i| mask >> i & 1 == 1).map(|i| all[i].clone()).collect(),
            )
            .unwrap();
            assert_eq!(is_coxeter_matroid(&m).is_matroid, is_coxeter_matroid_exhaustive(&m), "{mask}");
        }
    }

    #[test]
    fn retraction_examples() {
        let m = set(&["123", "132", "213", "312"]);
        assert_eq!(matroid_retraction(&m, &p("231")).unwrap(), p("213"));
        assert_eq!(algebraic_retraction(&m, &p("231")).unwrap(), p("213"));
        assert_eq!(matroid_retraction(&set(&["231", "321"]), &p("123")).unwrap(), p("231"));
        assert!(matroid_retraction(&set(&["213", "132"]), &p("123")).is_err());
    }

    #[test]
    fn signed_retraction_example() {
        let m: Vec<SignedPermutation> = ["1,-4,2,3", "1,4,-3,-2", "2,4,1,3", "-3,-4,1,-2"]
            .iter()
            .map(|s| s.parse().unwrap())
            .collect();
        let u: SignedPermutation = "-2,3,-1,4".parse().unwrap();
        let r = algebraic_retraction_signed(&m, &u).unwrap();
        assert_eq!(r, "1,4,-3,-2".parse().unwrap());
    }

    #[test]
    fn distances() {
        assert_eq!(graph_distance(&p("1243"), &p("3214")).unwrap(), 4);
        let m = set(&["1423", "2134"]);
        let (d, arg) = distance_to_set(&p("1324"), &m).unwrap();
        assert_eq!(d, 2);
        assert_eq!(arg, vec![p("2134")]);
        assert_eq!(algebraic_retraction(&m, &p("1324")).unwrap(), p("1423"));
    }

    #[test]
    fn polytopes_and_fano() {
        let seg = matroid_polytope(&set(&["213", "132"]), &[1, 2, 3]).unwrap();
        assert_eq!(seg.dim(), 1);
        assert!(!seg.edge_directions_are_roots());
        let hex = matroid_polytope(&CoxeterSubset::new(Permutation::all(3).collect()).unwrap(), &[1, 2, 3]).unwrap();
        assert!(hex.edge_directions_are_roots());
        assert!(matroid_polytope(&set(&["123"]), &[2, 1, 3]).is_err());
        let f = fano_plane_matroid();
        assert_eq!(f.len(), 4032);
        assert!(f.contains(&p("1234567")));
        assert!(!f.contains(&p("4213567")));
    }

    #[test]
    fn tables_round_trip() {
        let m = set(&["123", "132", "213", "312"]);
        let t = RetractionTable::matroid(&m).unwrap();
        assert!(t.is_retraction_onto(&m));
        assert_eq!(t, RetractionTable::algebraic(&m));
        let csv = t.to_csv();
        assert!(csv.starts_with("u,r(u)\n123,123\n"));
        assert_eq!(RetractionTable::from_csv(&csv).unwrap(), t);
    }
}
