//! Polygon triangulations, binary trees and the fans of Catalan type; the `ψ` map and the head
//! and tail pairs of Bruhat intervals; Fano Bott manifolds as signed rooted forests.

mod bott;

pub use bott::{
    fano_bott_from_forest, forest_from_fano_fan, sf_classes, signed_forests, SfClass, Sign, SignedForest,
    SignedForestJson,
};

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::exact_polytopes::{Fan, FanError};
use crate::group_core::{upper_covers, lower_covers, word_product, BruhatInterval, GroupError, Permutation};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalanError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Fan(#[from] FanError),
    #[error("invalid triangulation: {0}")]
    Triangulation(String),
    #[error("invalid forest: {0}")]
    Forest(String),
    #[error("fan is not a Fano Bott fan: {0}")]
    NotBott(String),
}

/// A triangulation of the `(n+2)`-gon with vertices `0..=n+1`, by its `n − 1` diagonals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triangulation {
    n: usize,
    diagonals: BTreeSet<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangulationJson {
    pub n: usize,
    pub diagonals: Vec<[usize; 2]>,
}

impl Triangulation {
    pub fn new(n: usize, diagonals: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, CatalanError> {
        let bad = |s: String| CatalanError::Triangulation(s);
        if n == 0 {
            return Err(bad("n must be at least 1".into()));
        }
        let mut set = BTreeSet::new();
        for (a, b) in diagonals {
            let (a, b) = (a.min(b), a.max(b));
            if b > n + 1 || b - a < 2 || (a == 0 && b == n + 1) {
                return Err(bad(format!("{{{a},{b}}} is not a diagonal")));
            }
            if !set.insert((a, b)) {
                return Err(bad(format!("{{{a},{b}}} repeated")));
            }
        }
        if set.len() != n - 1 {
            return Err(bad(format!("{} diagonals, expected {}", set.len(), n - 1)));
        }
        for &(a, b) in &set {
            for &(c, d) in &set {
                if a < c && c < b && b < d {
                    return Err(bad(format!("{{{a},{b}}} crosses {{{c},{d}}}")));
                }
            }
        }
        Ok(Triangulation { n, diagonals: set })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn diagonals(&self) -> &BTreeSet<(usize, usize)> {
        &self.diagonals
    }

    /// Sides of the polygon plus the diagonals.
    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a.min(b), a.max(b));
        b == a + 1 || (a == 0 && b == self.n + 1) || self.diagonals.contains(&(a, b))
    }

    /// Apex of the triangle on `{a, b}` inside the sub-polygon `a..=b`.
    fn apex(&self, a: usize, b: usize) -> usize {
        (a + 1..b)
            .find(|&k| self.has_edge(a, k) && self.has_edge(k, b))
            .expect("a valid triangulation has an apex over every chord")
    }

    /// Triangles `(k_L, k, k_R)`, indexed by their middle vertex `k`.
    pub fn triangles(&self) -> Vec<(usize, usize, usize)> {
        let mut out = vec![(0, 0, 0); self.n];
        let mut stack = vec![(0, self.n + 1)];
        while let Some((a, b)) = stack.pop() {
            if b < a + 2 {
                continue;
            }
            let k = self.apex(a, b);
            out[k - 1] = (a, k, b);
            stack.push((a, k));
            stack.push((k, b));
        }
        out
    }

    pub fn to_json(&self) -> TriangulationJson {
        TriangulationJson { n: self.n, diagonals: self.diagonals.iter().map(|&(a, b)| [a, b]).collect() }
    }

    pub fn from_json(j: &TriangulationJson) -> Result<Self, CatalanError> {
        Self::new(j.n, j.diagonals.iter().map(|d| (d[0], d[1])))
    }

    /// Triangles `{l−1, p, r+1}` from the in-order recursion on a binary tree.
    pub fn from_tree(tree: &BinaryTree) -> Self {
        let n = tree.size();
        let mut diagonals = BTreeSet::new();
        fn walk(t: &BinaryTree, offset: usize, out: &mut BTreeSet<(usize, usize)>) -> usize {
            let ls = t.left.as_ref().map_or(0, |l| l.size());
            let rs = t.right.as_ref().map_or(0, |r| r.size());
            let (l, p, r) = (offset + 1, offset + ls + 1, offset + ls + rs + 1);
            for (a, b) in [(l - 1, p), (p, r + 1)] {
                if b - a >= 2 {
                    out.insert((a, b));
                }
            }
            if let Some(lt) = &t.left {
                walk(lt, offset, out);
            }
            if let Some(rt) = &t.right {
                walk(rt, p, out);
            }
            ls + rs + 1
        }
        walk(tree, 0, &mut diagonals);
        Triangulation { n, diagonals }
    }
}

impl Serialize for Triangulation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Triangulation {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let j = TriangulationJson::deserialize(d)?;
        Self::from_json(&j).map_err(serde::de::Error::custom)
    }
}

/// All triangulations of the `(n+2)`-gon.
pub fn triangulations(n: usize) -> Vec<Triangulation> {
    fn region(a: usize, b: usize) -> Vec<Vec<(usize, usize)>> {
        if b < a + 2 {
            return vec![Vec::new()];
        }
        let mut out = Vec::new();
        for k in a + 1..b {
            for l in region(a, k) {
                for r in region(k, b) {
                    let mut d = l.clone();
                    d.extend_from_slice(&r);
                    if k - a >= 2 {
                        d.push((a, k));
                    }
                    if b - k >= 2 {
                        d.push((k, b));
                    }
                    out.push(d);
                }
            }
        }
        out
    }
    let mut all: Vec<Triangulation> = region(0, n + 1)
        .into_iter()
        .map(|d| Triangulation { n, diagonals: d.into_iter().collect() })
        .collect();
    all.sort();
    all
}

/// `k_L` and `k_R` for `k = 1..=n`, stored at index `k − 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LeftRightTrees {
    pub left: Vec<usize>,
    pub right: Vec<usize>,
}

impl LeftRightTrees {
    pub fn n(&self) -> usize {
        self.left.len()
    }

    /// Edges `{k_L, k}` of the left tree.
    pub fn left_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.left.iter().enumerate().map(|(i, &l)| (l, i + 1)).collect();
        e.sort();
        e
    }

    /// Edges `{k, k_R}` of the right tree.
    pub fn right_edges(&self) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = self.right.iter().enumerate().map(|(i, &r)| (i + 1, r)).collect();
        e.sort();
        e
    }

    /// `v_k = ϖ_k − ϖ_{k_R}` in the basis `ϖ_1, …, ϖ_n`.
    pub fn v(&self, k: usize) -> Vec<i64> {
        varpi_diff(self.n(), k, self.right[k - 1])
    }

    /// `w_k = ϖ_{k_L} − ϖ_k`.
    pub fn w(&self, k: usize) -> Vec<i64> {
        varpi_diff(self.n(), self.left[k - 1], k)
    }

    /// `p_k = e_{k_L+1} − e_{k+1}` in `Z^{n+1}`.
    pub fn p(&self, k: usize) -> Vec<i64> {
        let mut x = vec![0; self.n() + 1];
        x[self.left[k - 1]] += 1;
        x[k] -= 1;
        x
    }

    /// `q_k = −e_k + e_{k_R}`.
    pub fn q(&self, k: usize) -> Vec<i64> {
        let mut x = vec![0; self.n() + 1];
        x[k - 1] -= 1;
        x[self.right[k - 1] - 1] += 1;
        x
    }

    /// The unique `k` with `v_k + w_k = 0`.
    pub fn k0(&self) -> usize {
        (1..=self.n())
            .find(|&k| self.left[k - 1] == 0 && self.right[k - 1] == self.n() + 1)
            .expect("the distinguished side lies in one triangle")
    }
}

fn varpi_diff(n: usize, a: usize, b: usize) -> Vec<i64> {
    let mut x = vec![0; n];
    if (1..=n).contains(&a) {
        x[a - 1] += 1;
    }
    if (1..=n).contains(&b) {
        x[b - 1] -= 1;
    }
    x
}

/// `⟨x, m⟩` for `x` in the `ϖ` basis of `N` and `m ∈ M ⊂ Z^{n+1}`.
pub fn pairing(x: &[i64], m: &[i64]) -> i64 {
    let mut partial = 0;
    let mut acc = 0;
    for (i, &xi) in x.iter().enumerate() {
        partial += m[i];
        acc += xi * partial;
    }
    acc
}

pub fn left_right_trees(t: &Triangulation) -> LeftRightTrees {
    let tri = t.triangles();
    LeftRightTrees { left: tri.iter().map(|x| x.0).collect(), right: tri.iter().map(|x| x.2).collect() }
}

/// `Σ_T`: rays `v_1, …, v_n` (indices `0..n`) then `w_1, …, w_n`; a maximal cone picks one of
/// `v_k, w_k` for each `k`.
pub fn catalan_fan(t: &Triangulation) -> Result<Fan, CatalanError> {
    let lr = left_right_trees(t);
    let n = t.n();
    let mut rays: Vec<Vec<i64>> = (1..=n).map(|k| lr.v(k)).collect();
    rays.extend((1..=n).map(|k| lr.w(k)));
    Ok(Fan::new(n, rays, mixed_cones(n))?)
}

pub(crate) fn mixed_cones(n: usize) -> Vec<Vec<usize>> {
    (0..1usize << n)
        .map(|mask| (0..n).map(|k| if mask >> k & 1 == 1 { n + k } else { k }).collect())
        .collect()
}

/// A nonempty rooted plane tree with at most two children per vertex.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BinaryTree {
    pub left: Option<Box<BinaryTree>>,
    pub right: Option<Box<BinaryTree>>,
}

impl BinaryTree {
    pub fn leaf() -> Self {
        BinaryTree { left: None, right: None }
    }

    pub fn node(left: Option<BinaryTree>, right: Option<BinaryTree>) -> Self {
        BinaryTree { left: left.map(Box::new), right: right.map(Box::new) }
    }

    pub fn size(&self) -> usize {
        1 + self.left.as_ref().map_or(0, |l| l.size()) + self.right.as_ref().map_or(0, |r| r.size())
    }

    /// `"(L)(R)"` per vertex with empty children written `-`.
    pub fn ordered_form(&self) -> String {
        let side = |c: &Option<Box<BinaryTree>>| c.as_ref().map_or("-".to_string(), |t| t.ordered_form());
        format!("({})({})", side(&self.left), side(&self.right))
    }
}

impl fmt::Display for BinaryTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ordered_form())
    }
}

/// Canonical form of the underlying unordered rooted tree: children forms sorted.
pub fn unordered_canonical(t: &BinaryTree) -> String {
    let mut kids: Vec<String> = [&t.left, &t.right]
        .into_iter()
        .flatten()
        .map(|c| unordered_canonical(c))
        .collect();
    kids.sort();
    format!("({})", kids.concat())
}

/// Dual tree: the root sits in the triangle on `{0, n+1}`, children across `{k_L, k}` (left)
/// and `{k, k_R}` (right).
pub fn tree_of_triangulation(t: &Triangulation) -> BinaryTree {
    fn build(t: &Triangulation, a: usize, b: usize) -> Option<BinaryTree> {
        if b < a + 2 {
            return None;
        }
        let k = t.apex(a, b);
        Some(BinaryTree::node(build(t, a, k), build(t, k, b)))
    }
    build(t, 0, t.n() + 1).expect("n ≥ 1")
}

/// All binary trees with `n` vertices.
pub fn binary_trees(n: usize) -> Vec<BinaryTree> {
    triangulations(n).iter().map(tree_of_triangulation).collect()
}

/// `b_1, …, b_upto`.
pub fn wedderburn_etherington(upto: usize) -> Vec<u128> {
    let mut b = vec![0u128; upto + 1];
    if upto >= 1 {
        b[1] = 1;
    }
    for n in 2..=upto {
        let m = n / 2;
        b[n] = if n % 2 == 1 {
            (1..m + 1).map(|i| b[i] * b[n - i]).sum()
        } else {
            b[m] * (b[m] + 1) / 2 + (1..m).map(|i| b[i] * b[n - i]).sum::<u128>()
        };
    }
    b.split_off(1)
}

/// Minimum-split tree of the one-line word, with labels dropped.
pub fn psi(u: &Permutation) -> BinaryTree {
    fn split(w: &[usize]) -> Option<BinaryTree> {
        let (p, _) = w.iter().enumerate().min_by_key(|&(_, x)| *x)?;
        Some(BinaryTree::node(split(&w[..p]), split(&w[p + 1..])))
    }
    split(&u.images()).expect("n ≥ 1")
}

/// `ψ(u)` as a triangulation: the minimum of positions `l..=r` at `p` gives `{l−1, p, r+1}`.
pub fn psi_triangulation(u: &Permutation) -> Triangulation {
    Triangulation::from_tree(&psi(u))
}

/// `û ∈ S_{n+1}`: prepend 1 and shift the rest up.
pub fn hat_u(u: &Permutation) -> Permutation {
    let mut img = vec![1];
    img.extend(u.images().into_iter().map(|x| x + 1));
    Permutation::new(img).expect("shifted permutation")
}

/// `ũ ∈ S_{n+1}`: append `n + 1`.
pub fn tilde_u(u: &Permutation) -> Permutation {
    let mut img = u.images();
    img.push(u.n() + 1);
    Permutation::new(img).expect("extended permutation")
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CatalanSide {
    Head,
    Tail,
}

/// `s(1, m) = s_1 ⋯ s_m` and `s(m, 1) = s_m ⋯ s_1` in `S_{m+1}`.
pub fn staircase(m: usize, side: CatalanSide) -> Permutation {
    let mut letters: Vec<usize> = (1..=m).collect();
    if side == CatalanSide::Tail {
        letters.reverse();
    }
    word_product(m + 1, &letters).expect("letters in range")
}

/// `(v, w)` with `(v⁻¹, w⁻¹) = (û, û s(1,n))` for the head side and `(ũ, ũ s(n,1))` for the tail.
pub fn catalan_pair(u: &Permutation, side: CatalanSide) -> (Permutation, Permutation) {
    let n = u.n();
    let base = match side {
        CatalanSide::Head => hat_u(u),
        CatalanSide::Tail => tilde_u(u),
    };
    let top = (&base * &staircase(n, side)).inverse();
    let v = base.inverse();
    debug_assert_eq!(top.length(), v.length() + n);
    (v, top)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomCheck {
    pub holds: bool,
    /// Position pairs `(i, j)` with `û ⋖ û t_{i,j}` inside the interval.
    pub atoms: Vec<(usize, usize)>,
    /// Position pairs `(i, j)` with `û s(1,n) t_{i,j} ⋖ û s(1,n)` inside the interval.
    pub coatoms: Vec<(usize, usize)>,
}

fn differing_positions(a: &Permutation, b: &Permutation) -> (usize, usize) {
    let d: Vec<usize> = (1..=a.n()).filter(|&i| a.at(i) != b.at(i)).collect();
    debug_assert_eq!(d.len(), 2);
    (d[0], d[1])
}

/// Atoms and coatoms of `[û, û s(1,n)]` against the left and right trees of `ψ(u)`.
pub fn atoms_coatoms_vs_trees(u: &Permutation) -> AtomCheck {
    let n = u.n();
    let bottom = hat_u(u);
    let top = &bottom * &staircase(n, CatalanSide::Head);
    let iv = BruhatInterval::new(&bottom, &top).expect("û ≤ û s(1,n)");
    let mut atoms: Vec<(usize, usize)> = upper_covers(&bottom)
        .into_iter()
        .filter(|x| iv.contains(x))
        .map(|x| differing_positions(&bottom, &x))
        .collect();
    atoms.sort();
    let mut coatoms: Vec<(usize, usize)> = lower_covers(&top)
        .into_iter()
        .filter(|x| iv.contains(x))
        .map(|x| differing_positions(&top, &x))
        .collect();
    coatoms.sort();
    let lr = left_right_trees(&psi_triangulation(u));
    let want_atoms: Vec<(usize, usize)> = lr.left_edges().into_iter().map(|(a, b)| (a + 1, b + 1)).collect();
    let holds = atoms == want_atoms && coatoms == lr.right_edges();
    AtomCheck { holds, atoms, coatoms }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_polytopes::fan_isomorphic;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    fn decagon() -> Triangulation {
        Triangulation::new(8, [(0, 2), (2, 9), (2, 6), (3, 5), (3, 6), (2, 7), (7, 9)]).unwrap()
    }

    #[test]
    fn counts() {
        assert_eq!(triangulations(1).len(), 1);
        assert_eq!(triangulations(3).len(), 5);
        assert_eq!(triangulations(5).len(), 42);
    }

    #[test]
    fn validation() {
        assert!(Triangulation::new(3, [(0, 2), (1, 3)]).is_err());
        assert!(Triangulation::new(3, [(0, 2)]).is_err());
        assert!(Triangulation::new(3, [(0, 4), (1, 3)]).is_err());
        assert!(Triangulation::new(3, [(0, 2), (0, 3)]).is_ok());
    }

    #[test]
    fn decagon_vectors() {
        let lr = left_right_trees(&decagon());
        assert_eq!(lr.left, vec![0, 0, 2, 3, 3, 2, 2, 7]);
        assert_eq!(lr.right, vec![2, 9, 6, 5, 6, 7, 9, 9]);
        // v₃ = ϖ₃ − ϖ₆, w₇ = ϖ₂ − ϖ₇
        assert_eq!(lr.v(3), vec![0, 0, 1, 0, 0, -1, 0, 0]);
        assert_eq!(lr.w(7), vec![0, 1, 0, 0, 0, 0, -1, 0]);
        assert_eq!(lr.v(2), vec![0, 1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(lr.w(1), vec![-1, 0, 0, 0, 0, 0, 0, 0]);
        assert_eq!(lr.p(2), vec![1, 0, -1, 0, 0, 0, 0, 0, 0]);
        assert_eq!(lr.q(7), vec![0, 0, 0, 0, 0, 0, -1, 0, 1]);
        for i in 1..=8 {
            for j in 1..=8 {
                let d = i64::from(i == j);
                assert_eq!(pairing(&lr.v(i), &lr.p(j)), d);
                assert_eq!(pairing(&lr.w(i), &lr.q(j)), d);
            }
        }
        assert_eq!(lr.k0(), 2);
    }

    #[test]
    fn catalan_fan_is_fano() {
        let f = catalan_fan(&decagon()).unwrap();
        assert!(f.is_complete() && f.is_smooth() && f.is_fano().unwrap());
        let pc = f.primitive_collections().unwrap();
        assert_eq!(pc.len(), 8);
        assert!(pc.iter().all(|c| c.len() == 2 && c[1] == c[0] + 8));
    }

    #[test]
    fn trees_and_triangulations() {
        for t in triangulations(4) {
            let b = tree_of_triangulation(&t);
            assert_eq!(b.size(), 4);
            assert_eq!(Triangulation::from_tree(&b), t);
        }
        assert_eq!(tree_of_triangulation(&triangulations(1)[0]), BinaryTree::leaf());
        let classes: BTreeSet<String> = binary_trees(3).iter().map(unordered_canonical).collect();
        assert_eq!(classes.len(), 2);
    }

    #[test]
    fn wedderburn_etherington_table() {
        let b = wedderburn_etherington(15);
        assert_eq!(&b[..6], &[1, 1, 1, 2, 3, 6]);
        assert_eq!(b[14], 4850);
        assert_eq!(b[1], 1);
    }

    #[test]
    fn psi_examples() {
        assert_eq!(psi_triangulation(&p("31687524")), decagon());
        assert_eq!(psi(&p("21687534")), psi(&p("31687524")));
        let mut chain = BinaryTree::leaf();
        for _ in 1..5 {
            chain = BinaryTree::node(None, Some(chain));
        }
        assert_eq!(psi(&Permutation::identity(5)), chain);
    }

    #[test]
    fn head_and_tail() {
        assert_eq!(hat_u(&p("2314")), p("13425"));
        assert_eq!(tilde_u(&p("2314")), p("23145"));
        let u = p("31687524");
        let h = hat_u(&u);
        assert_eq!(h, p("142798635"));
        assert_eq!(&h * &staircase(8, CatalanSide::Head), p("427986351"));
        assert_eq!(hat_u(&Permutation::identity(3)), Permutation::identity(4));
        for side in [CatalanSide::Head, CatalanSide::Tail] {
            let (v, w) = catalan_pair(&p("2314"), side);
            assert_eq!(w.length(), v.length() + 4);
        }
    }

    #[test]
    fn atoms_example() {
        let c = atoms_coatoms_vs_trees(&p("31687524"));
        assert!(c.holds);
        assert_eq!(c.atoms, vec![(1, 2), (1, 3), (3, 4), (3, 7), (3, 8), (4, 5), (4, 6), (8, 9)]);
        assert_eq!(c.coatoms, vec![(1, 2), (2, 9), (3, 6), (4, 5), (5, 6), (6, 7), (7, 9), (8, 9)]);
        assert!(atoms_coatoms_vs_trees(&Permutation::identity(1)).holds);
    }

    #[test]
    fn pentagon_classes() {
        let ts = triangulations(3);
        for a in &ts {
            for b in &ts {
                let same = unordered_canonical(&tree_of_triangulation(a))
                    == unordered_canonical(&tree_of_triangulation(b));
                let iso = fan_isomorphic(&catalan_fan(a).unwrap(), &catalan_fan(b).unwrap()).unwrap();
                assert_eq!(same, iso);
            }
        }
    }
}
