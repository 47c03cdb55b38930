//! Schubert varieties through their generic torus orbits: the polytope `Q_w`, the graphs
//! `Γ_w(u)`, the generalized Eulerian polynomial `A_w(t)`, complexity, and the toric and
//! complexity-one classifications.

mod digraph;
mod toric;

pub use digraph::Digraph;
pub use toric::{
    coxeter_element_classes, coxeter_elements, fano_class, g_digraph, reduced_char_matrix,
    schubert_fan, CharMatrix, CoxeterClasses, FanoClass,
};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact_polytopes::{FanError, IntPolynomial, LatticePolytope};
use crate::group_core::{
    avoids_45bar312, contains_pattern, distinct_letter_word, reduced_words, BruhatInterval,
    GroupError, Permutation,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SchubertError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("word {0:?} repeats a letter")]
    RepeatedLetters(Vec<usize>),
}

fn pat(s: &str) -> Permutation {
    s.parse().expect("pattern literal")
}

fn check_below(w: &Permutation, u: &Permutation) -> Result<(), GroupError> {
    if u.n() != w.n() {
        return Err(GroupError::RankMismatch(u.n(), w.n()));
    }
    if !u.bruhat_le(w) {
        return Err(GroupError::NotBelow { v: u.to_string(), w: w.to_string() });
    }
    Ok(())
}

/// `Q_w = conv{ μ(u) : u ≤ w }`, labelled by `[e, w]`.
pub fn q_w(w: &Permutation) -> LatticePolytope {
    let lower = BruhatInterval::lower(w);
    LatticePolytope::from_moment_points(lower.elements())
        .expect("every element of a lower interval is a vertex")
}

/// Position pairs `(i, j)`, `i < j`, with `u·t_{i,j} ≤ w` and lengths differing by one.
fn e_tilde_positions(w: &Permutation, u: &Permutation) -> Vec<(usize, usize)> {
    let n = u.n();
    let lu = u.length() as isize;
    let mut out = Vec::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let v = u.swap_positions(i, j);
            if (v.length() as isize - lu).abs() == 1 && v.bruhat_le(w) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `Γ̃_w(u)`: edges `(u(i), u(j))`.
pub fn gamma_tilde(w: &Permutation, u: &Permutation) -> Result<Digraph, GroupError> {
    check_below(w, u)?;
    let edges = e_tilde_positions(w, u).into_iter().map(|(i, j)| (u.at(i), u.at(j)));
    Ok(Digraph::from_edges(u.n(), edges))
}

/// `Γ_w(u)`, the transitive reduction of `Γ̃_w(u)`.
pub fn gamma(w: &Permutation, u: &Permutation) -> Result<Digraph, GroupError> {
    Ok(gamma_tilde(w, u)?.transitive_reduction())
}

/// Neighbours of `u` in the edge graph of `Q_w`, read off from `Γ_w(u)`.
pub fn gamma_neighbors(w: &Permutation, u: &Permutation) -> Result<Vec<Permutation>, GroupError> {
    let g = gamma(w, u)?;
    let inv = u.inverse();
    let mut out: Vec<Permutation> = g
        .edges()
        .map(|(a, b)| u.swap_positions(inv.at(a), inv.at(b)))
        .collect();
    out.sort();
    Ok(out)
}

/// `|E_w(u)⁺|`: edges of `Γ_w(u)` going up in value.
pub fn a_w_at(w: &Permutation, u: &Permutation) -> Result<usize, GroupError> {
    Ok(gamma(w, u)?.edges().filter(|&(a, b)| a < b).count())
}

pub fn is_smooth_at(w: &Permutation, u: &Permutation) -> Result<bool, GroupError> {
    Ok(gamma(w, u)?.is_forest())
}

/// `Y_w` is smooth iff `Γ_w(u)` is a forest for every `u ≤ w`.
pub fn is_yw_smooth(w: &Permutation) -> bool {
    BruhatInterval::lower(w)
        .elements()
        .par_iter()
        .all(|u| gamma(w, u).expect("u ≤ w").is_forest())
}

/// Avoids 4231 and the barred pattern 45̄312.
pub fn locally_factorial_pattern_test(w: &Permutation) -> bool {
    contains_pattern(w, &pat("4231")) == 0 && avoids_45bar312(w)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LocallyFactorialRow {
    pub w: Permutation,
    pub pattern_test: bool,
    pub gamma_forest: bool,
}

/// Compares the pattern test with the forest test on `Γ_w(w)` over all of `S_n`.
pub fn locally_factorial_comparison(n: usize) -> Vec<LocallyFactorialRow> {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    all.into_par_iter()
        .map(|w| {
            let gamma_forest = gamma(&w, &w).expect("w ≤ w").is_forest();
            LocallyFactorialRow { pattern_test: locally_factorial_pattern_test(&w), gamma_forest, w }
        })
        .collect()
}

/// `A_w(t) = Σ_{u ≤ w} t^{a_w(u)}`.
pub fn a_w(w: &Permutation) -> IntPolynomial {
    let counts: Vec<usize> = BruhatInterval::lower(w)
        .elements()
        .par_iter()
        .map(|u| a_w_at(w, u).expect("u ≤ w"))
        .collect();
    let top = counts.iter().copied().max().unwrap_or(0);
    let mut coeffs = vec![0i64; top + 1];
    for k in counts {
        coeffs[k] += 1;
    }
    IntPolynomial::new(coeffs)
}

/// Poincaré polynomial of `Y_w`, `A_w(t²)`.
pub fn poincare_yw(w: &Permutation) -> IntPolynomial {
    a_w(w).substitute_power(2)
}

/// The Eulerian polynomial, from `A(n,k) = (k+1)A(n−1,k) + (n−k)A(n−1,k−1)`.
pub fn eulerian(n: usize) -> IntPolynomial {
    assert!(n >= 1, "eulerian(0) is undefined here");
    let mut row = vec![1i64];
    for m in 2..=n {
        let mut next = vec![0i64; m];
        for (k, slot) in next.iter_mut().enumerate() {
            let keep = row.get(k).map_or(0, |&a| (k as i64 + 1) * a);
            let bump = if k > 0 { row.get(k - 1).map_or(0, |&a| (m - k) as i64 * a) } else { 0 };
            *slot = keep + bump;
        }
        row = next;
    }
    IntPolynomial::new(row)
}

/// `c(w) = ℓ(w) − dim Q_w`.
pub fn complexity(w: &Permutation) -> usize {
    w.length() - q_w(w).dim()
}

/// The conditions (0), (2), (3), (5), (6) for `X_w` to be toric.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ToricReport {
    pub complexity_zero: bool,
    pub avoids_321_and_3412: bool,
    pub distinct_letter_word: Option<String>,
    pub boolean_interval: bool,
    pub cube: bool,
}

impl ToricReport {
    pub fn values(&self) -> [bool; 5] {
        [
            self.complexity_zero,
            self.avoids_321_and_3412,
            self.distinct_letter_word.is_some(),
            self.boolean_interval,
            self.cube,
        ]
    }

    pub fn consistent(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }

    pub fn is_toric(&self) -> bool {
        self.consistent() && self.complexity_zero
    }
}

pub fn toric_schubert_report(w: &Permutation) -> ToricReport {
    let q = q_w(w);
    ToricReport {
        complexity_zero: w.length() == q.dim(),
        avoids_321_and_3412: contains_pattern(w, &pat("321")) == 0
            && contains_pattern(w, &pat("3412")) == 0,
        distinct_letter_word: distinct_letter_word(w).map(|r| r.to_string()),
        boolean_interval: BruhatInterval::lower(w).is_boolean(),
        cube: q.is_cube(),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ComplexityOneKind {
    SmoothC1,
    SingularC1,
    Neither,
}

/// One side of the complexity-one classification: (1), (2), (3), (5), (6) in either the smooth
/// or the singular version.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityOneConditions {
    pub complexity_and_smoothness: bool,
    pub pattern_counts: bool,
    pub word_factor: bool,
    pub interval_product: bool,
    pub polytope_product: bool,
}

impl ComplexityOneConditions {
    pub fn values(&self) -> [bool; 5] {
        [
            self.complexity_and_smoothness,
            self.pattern_counts,
            self.word_factor,
            self.interval_product,
            self.polytope_product,
        ]
    }

    pub fn consistent(&self) -> bool {
        let v = self.values();
        v.iter().all(|&b| b == v[0])
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexityOneReport {
    pub kind: ComplexityOneKind,
    pub smooth: ComplexityOneConditions,
    pub singular: ComplexityOneConditions,
}

impl ComplexityOneReport {
    pub fn consistent(&self) -> bool {
        self.smooth.consistent() && self.singular.consistent()
    }
}

/// Some reduced word is `… factor …` with every letter outside the factor used once and not
/// occurring in the factor.
fn has_factor_word(w: &Permutation, factor: impl Fn(usize) -> Vec<usize>) -> bool {
    let n = w.n();
    reduced_words(w, None).iter().any(|r| {
        let l = r.letters();
        (1..n).any(|i| {
            let f = factor(i);
            if f.iter().any(|&x| x == 0 || x >= n) || f.len() > l.len() {
                return false;
            }
            (0..=l.len() - f.len()).any(|p| {
                if l[p..p + f.len()] != f[..] {
                    return false;
                }
                let mut used: Vec<usize> = f.clone();
                for (q, &x) in l.iter().enumerate() {
                    if q >= p && q < p + f.len() {
                        continue;
                    }
                    if used.contains(&x) {
                        return false;
                    }
                    used.push(x);
                }
                true
            })
        })
    })
}

/// Hasse diagram of a product of two posets given by their Hasse diagrams.
fn product_hasse(
    a: usize,
    ea: &[(usize, usize)],
    b: usize,
    eb: &[(usize, usize)],
) -> (usize, Vec<(usize, usize)>) {
    let mut out = Vec::new();
    for &(x, y) in ea {
        for j in 0..b {
            out.push((x * b + j, y * b + j));
        }
    }
    for i in 0..a {
        for &(x, y) in eb {
            out.push((i * b + x, i * b + y));
        }
    }
    (a * b, out)
}

fn boolean_hasse(k: usize) -> (usize, Vec<(usize, usize)>) {
    let mut out = Vec::new();
    for m in 0..1usize << k {
        for i in 0..k {
            if m & (1 << i) == 0 {
                out.push((m, m | (1 << i)));
            }
        }
    }
    (1 << k, out)
}

fn hasse_isomorphic(a: (usize, Vec<(usize, usize)>), b: (usize, Vec<(usize, usize)>)) -> bool {
    if a.0 != b.0 || a.1.len() != b.1.len() {
        return false;
    }
    let build = |(n, e): (usize, Vec<(usize, usize)>)| {
        let mut g = petgraph::graph::DiGraph::<(), ()>::new();
        let nodes: Vec<_> = (0..n).map(|_| g.add_node(())).collect();
        for (x, y) in e {
            g.add_edge(nodes[x], nodes[y], ());
        }
        g
    };
    petgraph::algo::is_isomorphic(&build(a), &build(b))
}

fn interval_hasse(i: &BruhatInterval) -> (usize, Vec<(usize, usize)>) {
    (i.len(), i.hasse_edges())
}

fn product_with_boolean_model(w: &Permutation, base: &Permutation) -> (bool, bool) {
    let l = w.length();
    let lb = base.length();
    if l < lb {
        return (false, false);
    }
    let k = l - lb;
    let lower = BruhatInterval::lower(w);
    let base_lower = BruhatInterval::lower(base);
    if k >= 20 || lower.len() != base_lower.len() << k {
        return (false, false);
    }
    let (bn, be) = interval_hasse(&base_lower);
    let (cn, ce) = boolean_hasse(k);
    let interval = hasse_isomorphic(interval_hasse(&lower), product_hasse(bn, &be, cn, &ce));
    let model = q_w(base).product(&LatticePolytope::cube(k));
    let polytope = q_w(w).combinatorially_equivalent(&model);
    (interval, polytope)
}

pub fn complexity_one_report(w: &Permutation) -> ComplexityOneReport {
    let c1 = complexity(w) == 1;
    let smooth_y = c1 && is_yw_smooth(w);
    let c321 = contains_pattern(w, &pat("321"));
    let c3412 = contains_pattern(w, &pat("3412"));
    let (int_s, poly_s) = product_with_boolean_model(w, &pat("321"));
    let (int_g, poly_g) = product_with_boolean_model(w, &pat("3412"));
    let smooth = ComplexityOneConditions {
        complexity_and_smoothness: c1 && smooth_y,
        pattern_counts: c321 == 1 && c3412 == 0,
        word_factor: has_factor_word(w, |i| vec![i, i + 1, i]),
        interval_product: int_s,
        polytope_product: poly_s,
    };
    let singular = ComplexityOneConditions {
        complexity_and_smoothness: c1 && !smooth_y,
        pattern_counts: c3412 == 1 && c321 == 0,
        word_factor: has_factor_word(w, |i| vec![i + 1, i, i + 2, i + 1]),
        interval_product: int_g,
        polytope_product: poly_g,
    };
    let kind = if smooth.complexity_and_smoothness {
        ComplexityOneKind::SmoothC1
    } else if singular.complexity_and_smoothness {
        ComplexityOneKind::SingularC1
    } else {
        ComplexityOneKind::Neither
    };
    ComplexityOneReport { kind, smooth, singular }
}

/// A `w` whose `Γ_w(w)` is a forest while `Γ_w(u)` is not, for the listed `u`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestWitness {
    pub w: Permutation,
    pub singular_points: Vec<Permutation>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForestSearch {
    pub n: usize,
    pub checked: usize,
    pub forest_at_top: usize,
    pub witnesses: Vec<ForestWitness>,
}

/// Searches `S_n` for `w` with `Γ_w(w)` a forest and some `Γ_w(u)` not. Expected empty, but the
/// search only reports.
pub fn forest_conjecture_search(n: usize) -> ForestSearch {
    let all: Vec<Permutation> = Permutation::all(n).collect();
    let rows: Vec<(bool, Option<ForestWitness>)> = all
        .par_iter()
        .map(|w| {
            if !gamma(w, w).expect("w ≤ w").is_forest() {
                return (false, None);
            }
            let bad: Vec<Permutation> = BruhatInterval::lower(w)
                .elements()
                .iter()
                .filter(|u| !gamma(w, u).expect("u ≤ w").is_forest())
                .cloned()
                .collect();
            let wit = (!bad.is_empty()).then(|| ForestWitness { w: w.clone(), singular_points: bad });
            (true, wit)
        })
        .collect();
    ForestSearch {
        n,
        checked: all.len(),
        forest_at_top: rows.iter().filter(|r| r.0).count(),
        witnesses: rows.into_iter().filter_map(|r| r.1).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchubertReport {
    pub w: Permutation,
    pub c: usize,
    pub smooth: bool,
    #[serde(rename = "A_w")]
    pub a_w: Vec<i64>,
    pub toric: ToricReport,
    pub complexity_one: ComplexityOneReport,
}

pub fn schubert_report(w: &Permutation) -> SchubertReport {
    SchubertReport {
        w: w.clone(),
        c: complexity(w),
        smooth: is_yw_smooth(w),
        a_w: a_w(w).coeffs().to_vec(),
        toric: toric_schubert_report(w),
        complexity_one: complexity_one_report(w),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn q_w_small() {
        let h = q_w(&Permutation::longest(3));
        assert_eq!((h.num_vertices(), h.dim()), (6, 2));
        let q = q_w(&p("3412"));
        assert_eq!((q.num_vertices(), q.dim()), (14, 3));
        let s = q_w(&p("2134"));
        assert_eq!((s.num_vertices(), s.dim()), (2, 1));
    }

    #[test]
    fn gamma_example_2143() {
        let w = p("3412");
        let u = p("2143");
        assert_eq!(gamma_tilde(&w, &u).unwrap().edge_vec(), vec![(1, 4), (2, 1), (2, 3), (4, 3)]);
        assert_eq!(gamma(&w, &u).unwrap().edge_vec(), vec![(1, 4), (2, 1), (4, 3)]);
    }

    #[test]
    fn gamma_longest_is_a_path() {
        let w0 = Permutation::longest(4);
        for u in Permutation::all(4) {
            let want: Vec<(usize, usize)> = {
                let mut v: Vec<_> = (1..4).map(|i| (u.at(i), u.at(i + 1))).collect();
                v.sort();
                v
            };
            assert_eq!(gamma(&w0, &u).unwrap().edge_vec(), want, "u = {u}");
        }
        let e = Permutation::identity(4);
        assert_eq!(gamma(&e, &e).unwrap().num_edges(), 0);
        assert!(gamma(&e, &p("2134")).is_err());
    }

    #[test]
    fn smoothness() {
        let w = p("3412");
        assert!(!is_smooth_at(&w, &w).unwrap());
        assert!(is_yw_smooth(&Permutation::longest(3)));
        for w in Permutation::all(4) {
            assert!(is_smooth_at(&w, &Permutation::identity(4)).unwrap());
        }
    }

    #[test]
    fn locally_factorial_goldens() {
        assert!(!locally_factorial_pattern_test(&p("4231")));
        assert!(!locally_factorial_pattern_test(&p("3412")));
        assert!(locally_factorial_pattern_test(&Permutation::identity(4)));
        for row in locally_factorial_comparison(4) {
            assert_eq!(row.pattern_test, row.gamma_forest, "w = {}", row.w);
        }
    }

    #[test]
    fn a_w_goldens() {
        assert_eq!(a_w(&Permutation::longest(3)).coeffs(), &[1, 4, 1]);
        assert_eq!(a_w(&p("4231")).coeffs(), &[1, 7, 11, 1]);
        assert_eq!(a_w(&p("3412")).coeffs(), &[1, 5, 7, 1]);
        assert_eq!(poincare_yw(&p("3412")).coeffs(), &[1, 0, 5, 0, 7, 0, 1]);
    }

    #[test]
    fn eulerian_goldens() {
        assert_eq!(eulerian(1).coeffs(), &[1]);
        assert_eq!(eulerian(4).coeffs(), &[1, 11, 11, 1]);
        assert_eq!(eulerian(5).coeffs(), &[1, 26, 66, 26, 1]);
    }

    #[test]
    fn complexity_goldens() {
        assert_eq!(complexity(&p("23451")), 0);
        assert_eq!(complexity(&p("321")), 1);
        assert_eq!(complexity(&Permutation::identity(3)), 0);
        assert_eq!(complexity(&p("3412")), 1);
    }

    #[test]
    fn toric_goldens() {
        let r = toric_schubert_report(&p("3142"));
        assert_eq!(r.values(), [true; 5]);
        assert_eq!(toric_schubert_report(&p("321")).values(), [false; 5]);
        assert_eq!(toric_schubert_report(&p("213")).values(), [true; 5]);
    }

    #[test]
    fn complexity_one_goldens() {
        let r = complexity_one_report(&p("321"));
        assert_eq!(r.kind, ComplexityOneKind::SmoothC1);
        assert!(r.consistent(), "{r:?}");
        let r = complexity_one_report(&p("3412"));
        assert_eq!(r.kind, ComplexityOneKind::SingularC1);
        assert!(r.consistent(), "{r:?}");
        let r = complexity_one_report(&Permutation::identity(3));
        assert_eq!(r.kind, ComplexityOneKind::Neither);
        assert!(r.consistent());
    }

    #[test]
    fn report_json_keys() {
        let j = serde_json::to_value(schubert_report(&p("3412"))).unwrap();
        for k in ["w", "c", "smooth", "A_w", "toric", "complexity_one"] {
            assert!(j.get(k).is_some(), "missing {k}");
        }
        assert_eq!(j["complexity_one"]["kind"], "singular-c1");
    }
}
