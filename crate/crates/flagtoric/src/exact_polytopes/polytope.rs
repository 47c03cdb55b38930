use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::OnceLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::bitset::IndexSet;
use super::fan::Fan;
use super::hull;
use super::intlin::{rank, saturated_span, SaturatedLattice};
use super::lp::{maximize, LpOutcome};
use super::poly::IntPolynomial;
use super::{PolytopeError, Rational};
use crate::group_core::Permutation;

/// A facet `⟨normal, x⟩ ≥ offset`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Facet {
    /// Primitive inward normal as an ambient integer functional. When the polytope is not
    /// full-dimensional this is one representative modulo the affine hull's normal space.
    pub normal: Vec<i64>,
    pub offset: i64,
    /// The same normal in coordinates of the dual of the affine hull's lattice.
    pub intrinsic_normal: Vec<i64>,
    pub vertices: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Face {
    pub dim: usize,
    pub vertices: Vec<usize>,
}

/// Nonempty faces ordered by dimension, then by vertex list. The last face is the polytope.
#[derive(Clone, Debug, Serialize)]
pub struct FaceLattice {
    faces: Vec<Face>,
}

impl FaceLattice {
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == k)
    }

    /// `(f_0, ..., f_dim)`.
    pub fn f_vector(&self) -> Vec<usize> {
        let top = self.faces.last().map_or(0, |f| f.dim);
        let mut v = vec![0; top + 1];
        for f in &self.faces {
            v[f.dim] += 1;
        }
        v
    }

    /// Whether face `i` is contained in face `j`.
    pub fn is_subface(&self, i: usize, j: usize) -> bool {
        let fj: HashSet<usize> = self.faces[j].vertices.iter().copied().collect();
        self.faces[i].vertices.iter().all(|v| fj.contains(v))
    }
}

/// Certificate returned by the exact edge test.
#[derive(Clone, Debug, PartialEq)]
pub enum EdgeCertificate {
    /// An ambient functional attaining its maximum over the vertices exactly at the pair.
    Edge { functional: Vec<Rational> },
    /// Convex weights on the vertices reproducing the midpoint of the pair, with positive mass
    /// outside the pair.
    NonEdge { weights: Vec<Rational> },
}

/// Per-vertex ascent counts of a linear functional along edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AscentProfile {
    pub ascents: Vec<usize>,
    /// Whether at every vertex the ascending edge directions are independent and span a face
    /// whose edges at that vertex are exactly the ascending ones.
    pub face_condition: bool,
}

impl AscentProfile {
    /// `Σ_v t^{k·asc(v)}`.
    pub fn generating_polynomial(&self, k: usize) -> IntPolynomial {
        let mut coeffs = vec![0i64; self.ascents.iter().max().map_or(0, |&m| m * k) + 1];
        for &a in &self.ascents {
            coeffs[a * k] += 1;
        }
        IntPolynomial::new(coeffs)
    }
}

struct Geometry {
    lattice: SaturatedLattice,
    coords: Vec<Vec<i64>>,
    facets: Vec<Facet>,
    facet_sets: Vec<IndexSet>,
}

/// A polytope given by the integer points of its vertex set.
pub struct LatticePolytope {
    ambient_dim: usize,
    vertices: Vec<Vec<i64>>,
    labels: Option<Vec<Permutation>>,
    label_index: HashMap<Permutation, usize>,
    geometry: OnceLock<Geometry>,
    lattice: OnceLock<FaceLattice>,
    edges: OnceLock<Vec<(usize, usize)>>,
}

impl Clone for LatticePolytope {
    fn clone(&self) -> Self {
        Self {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            labels: self.labels.clone(),
            label_index: self.label_index.clone(),
            geometry: OnceLock::new(),
            lattice: OnceLock::new(),
            edges: OnceLock::new(),
        }
    }
}

impl std::fmt::Debug for LatticePolytope {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("LatticePolytope")
            .field("ambient_dim", &self.ambient_dim)
            .field("vertices", &self.vertices.len())
            .finish()
    }
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq, Eq)]
pub struct PolytopeJson {
    pub ambient_dim: usize,
    pub vertices: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl LatticePolytope {
    /// Builds a polytope, rejecting duplicates and points that are not extreme.
    pub fn new(
        ambient_dim: usize,
        vertices: Vec<Vec<i64>>,
        labels: Option<Vec<Permutation>>,
    ) -> Result<Self, PolytopeError> {
        if vertices.is_empty() {
            return Err(PolytopeError::Empty);
        }
        if let Some(bad) = vertices.iter().find(|v| v.len() != ambient_dim) {
            return Err(PolytopeError::DimensionMismatch {
                expected: ambient_dim,
                found: bad.len(),
            });
        }
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.clone()) {
                return Err(PolytopeError::DuplicateVertex(v.clone()));
            }
        }
        if let Some(l) = &labels {
            if l.len() != vertices.len() {
                return Err(PolytopeError::LabelCount);
            }
        }
        let label_index = labels
            .iter()
            .flatten()
            .enumerate()
            .map(|(i, p)| (p.clone(), i))
            .collect();
        let p = Self {
            ambient_dim,
            vertices,
            labels,
            label_index,
            geometry: OnceLock::new(),
            lattice: OnceLock::new(),
            edges: OnceLock::new(),
        };
        // Points on a common sphere are in convex position; otherwise check via facets.
        let norm = |v: &Vec<i64>| v.iter().map(|x| x * x).sum::<i64>();
        let n0 = norm(&p.vertices[0]);
        if !p.vertices.iter().all(|v| norm(v) == n0) {
            let g = Geometry::compute(&p.vertices, ambient_dim)?;
            for i in 0..p.vertices.len() {
                let normals: Vec<Vec<i64>> = g
                    .facets
                    .iter()
                    .filter(|f| f.vertices.binary_search(&i).is_ok())
                    .map(|f| f.intrinsic_normal.clone())
                    .collect();
                if rank(&normals) < g.lattice.rank() {
                    return Err(PolytopeError::NotExtreme(p.vertices[i].clone()));
                }
            }
            let _ = p.geometry.set(g);
        }
        Ok(p)
    }

    /// Convex hull of the moment vectors of `perms`, labelled by them.
    pub fn from_moment_points(perms: &[Permutation]) -> Result<Self, PolytopeError> {
        let n = perms.first().ok_or(PolytopeError::Empty)?.n();
        let verts = perms.iter().map(|u| u.moment_vector()).collect();
        Self::new(n, verts, Some(perms.to_vec()))
    }

    /// The permutohedron `Π_n`.
    pub fn permutohedron(n: usize) -> Self {
        let perms: Vec<Permutation> = Permutation::all(n).collect();
        Self::from_moment_points(&perms).expect("distinct permutation vectors")
    }

    /// The cube `[0,1]^d`.
    pub fn cube(d: usize) -> Self {
        let verts = (0..1usize << d)
            .map(|m| (0..d).map(|i| ((m >> i) & 1) as i64).collect())
            .collect();
        Self::new(d, verts, None).expect("cube vertices")
    }

    /// Cartesian product; vertex `i·|Q| + j` is `(p_i, q_j)`.
    pub fn product(&self, other: &Self) -> Self {
        let mut verts = Vec::with_capacity(self.vertices.len() * other.vertices.len());
        for a in &self.vertices {
            for b in &other.vertices {
                let mut v = a.clone();
                v.extend_from_slice(b);
                verts.push(v);
            }
        }
        Self::new(self.ambient_dim + other.ambient_dim, verts, None)
            .expect("products of vertex sets are vertex sets")
    }

    pub fn from_json(j: &PolytopeJson) -> Result<Self, PolytopeError> {
        let labels = match &j.labels {
            None => None,
            Some(ls) => Some(
                ls.iter()
                    .map(|s| s.parse::<Permutation>().map_err(|e| PolytopeError::Label(e.to_string())))
                    .collect::<Result<Vec<_>, _>>()?,
            ),
        };
        Self::new(j.ambient_dim, j.vertices.clone(), labels)
    }

    pub fn to_json(&self) -> PolytopeJson {
        PolytopeJson {
            ambient_dim: self.ambient_dim,
            vertices: self.vertices.clone(),
            labels: self
                .labels
                .as_ref()
                .map(|ls| ls.iter().map(|p| p.to_string()).collect()),
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn vertices(&self) -> &[Vec<i64>] {
        &self.vertices
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn labels(&self) -> Option<&[Permutation]> {
        self.labels.as_deref()
    }

    pub fn vertex_of(&self, label: &Permutation) -> Option<usize> {
        self.label_index.get(label).copied()
    }

    fn geometry(&self) -> &Geometry {
        self.geometry.get_or_init(|| {
            Geometry::compute(&self.vertices, self.ambient_dim)
                .expect("facet computation overflowed i128 (coordinates far beyond desk scale)")
        })
    }

    /// Affine dimension.
    pub fn dim(&self) -> usize {
        if let Some(g) = self.geometry.get() {
            return g.lattice.rank();
        }
        let diffs: Vec<Vec<i64>> = self.diffs_from_first();
        rank(&diffs)
    }

    fn diffs_from_first(&self) -> Vec<Vec<i64>> {
        let v0 = &self.vertices[0];
        self.vertices[1..]
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect()
    }

    /// Basis of the affine hull's lattice together with dual coordinate functionals.
    pub fn hull_lattice(&self) -> &SaturatedLattice {
        &self.geometry().lattice
    }

    pub fn facets(&self) -> &[Facet] {
        &self.geometry().facets
    }

    pub fn face_lattice(&self) -> &FaceLattice {
        self.lattice.get_or_init(|| self.compute_face_lattice())
    }

    fn compute_face_lattice(&self) -> FaceLattice {
        let g = self.geometry();
        let m = self.vertices.len();
        let mut seen: HashSet<IndexSet> = HashSet::new();
        let top = IndexSet::full(m);
        seen.insert(top.clone());
        let mut queue: VecDeque<IndexSet> = VecDeque::new();
        for f in &g.facet_sets {
            if seen.insert(f.clone()) {
                queue.push_back(f.clone());
            }
        }
        while let Some(f) = queue.pop_front() {
            for gset in &g.facet_sets {
                let h = f.intersection(gset);
                if !h.is_empty() && !seen.contains(&h) {
                    seen.insert(h.clone());
                    queue.push_back(h);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|s| {
                let vs = s.to_vec();
                let dim = affine_rank(&g.coords, &vs);
                Face { dim, vertices: vs }
            })
            .collect();
        faces.sort_by(|a, b| a.dim.cmp(&b.dim).then_with(|| a.vertices.cmp(&b.vertices)));
        FaceLattice { faces }
    }

    /// Edges as sorted vertex-index pairs, read off the 1-dimensional faces.
    pub fn edges(&self) -> &[(usize, usize)] {
        self.edges.get_or_init(|| {
            if self.vertices.len() < 2 {
                return Vec::new();
            }
            let mut e: Vec<(usize, usize)> = self
                .face_lattice()
                .faces_of_dim(1)
                .map(|f| (f.vertices[0], f.vertices[1]))
                .collect();
            e.sort_unstable();
            e
        })
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        self.edges()
            .iter()
            .filter_map(|&(a, b)| {
                if a == v {
                    Some(b)
                } else if b == v {
                    Some(a)
                } else {
                    None
                }
            })
            .collect()
    }

    pub fn is_simple_at(&self, v: usize) -> bool {
        self.neighbors(v).len() == self.dim()
    }

    pub fn is_simple(&self) -> bool {
        let d = self.dim();
        let mut deg = vec![0usize; self.vertices.len()];
        for &(a, b) in self.edges() {
            deg[a] += 1;
            deg[b] += 1;
        }
        d == 0 || deg.iter().all(|&k| k == d)
    }

    /// Simple, all 2-faces quadrilaterals, and `2^dim` vertices.
    pub fn is_cube(&self) -> bool {
        let d = self.dim();
        if d >= 63 || self.vertices.len() != 1usize << d || !self.is_simple() {
            return false;
        }
        self.face_lattice().faces_of_dim(2).all(|f| f.vertices.len() == 4)
    }

    pub fn edge_directions_are_roots(&self) -> bool {
        self.edges().iter().all(|&(a, b)| {
            let diff: Vec<i64> = self.vertices[a]
                .iter()
                .zip(&self.vertices[b])
                .map(|(x, y)| x - y)
                .collect();
            let nz: Vec<i64> = diff.into_iter().filter(|&x| x != 0).collect();
            nz.len() == 2 && nz[0] == -nz[1]
        })
    }

    pub fn f_polynomial(&self) -> IntPolynomial {
        IntPolynomial::new(self.face_lattice().f_vector().iter().map(|&x| x as i64).collect())
    }

    /// `h(t) = f(t − 1)`.
    pub fn h_polynomial(&self) -> IntPolynomial {
        self.f_polynomial().shift(-1)
    }

    /// Smallest face containing the given vertices.
    pub fn minimal_face(&self, verts: &[usize]) -> Vec<usize> {
        let g = self.geometry();
        let mut acc = IndexSet::full(self.vertices.len());
        for f in &g.facet_sets {
            if verts.iter().all(|&v| f.contains(v)) {
                acc.intersect_with(f);
            }
        }
        acc.to_vec()
    }

    fn affine_rank_of(&self, verts: &[usize]) -> usize {
        affine_rank(&self.geometry().coords, verts)
    }

    /// Ascent counts of `x ↦ ⟨a, x⟩` along edges. Rejects functionals constant on an edge.
    pub fn ascent_profile(&self, a: &[i64]) -> Result<AscentProfile, PolytopeError> {
        if a.len() != self.ambient_dim {
            return Err(PolytopeError::DimensionMismatch {
                expected: self.ambient_dim,
                found: a.len(),
            });
        }
        let val: Vec<i64> = self
            .vertices
            .iter()
            .map(|v| v.iter().zip(a).map(|(x, y)| x * y).sum())
            .collect();
        let m = self.vertices.len();
        let mut up: Vec<Vec<usize>> = vec![Vec::new(); m];
        let mut adj: Vec<Vec<usize>> = vec![Vec::new(); m];
        for &(p, q) in self.edges() {
            if val[p] == val[q] {
                return Err(PolytopeError::NonGenericFunctional { edge: (p, q) });
            }
            adj[p].push(q);
            adj[q].push(p);
            if val[q] > val[p] {
                up[p].push(q);
            } else {
                up[q].push(p);
            }
        }
        let mut ok = true;
        for v in 0..m {
            let k = up[v].len();
            let mut set = up[v].clone();
            set.push(v);
            if self.affine_rank_of(&set) != k {
                ok = false;
                break;
            }
            let face: HashSet<usize> = self.minimal_face(&set).into_iter().collect();
            let face_vec: Vec<usize> = face.iter().copied().collect();
            if self.affine_rank_of(&face_vec) != k {
                ok = false;
                break;
            }
            let in_face = adj[v].iter().filter(|w| face.contains(w)).count();
            if in_face != k {
                ok = false;
                break;
            }
        }
        Ok(AscentProfile {
            ascents: up.iter().map(|u| u.len()).collect(),
            face_condition: ok,
        })
    }

    /// Normal fan in the dual of the affine hull's lattice; cone `i` belongs to vertex `i`.
    pub fn normal_fan(&self) -> Result<Fan, PolytopeError> {
        let d = self.dim();
        if d == 0 {
            return Err(PolytopeError::ZeroDimensional);
        }
        let g = self.geometry();
        let mut ray_index: HashMap<Vec<i64>, usize> = HashMap::new();
        let mut rays: Vec<Vec<i64>> = Vec::new();
        let mut facet_ray = Vec::with_capacity(g.facets.len());
        for f in &g.facets {
            let idx = *ray_index.entry(f.intrinsic_normal.clone()).or_insert_with(|| {
                rays.push(f.intrinsic_normal.clone());
                rays.len() - 1
            });
            facet_ray.push(idx);
        }
        let cones = (0..self.vertices.len())
            .map(|v| {
                let mut c: Vec<usize> = g
                    .facet_sets
                    .iter()
                    .enumerate()
                    .filter(|(_, s)| s.contains(v))
                    .map(|(k, _)| facet_ray[k])
                    .collect();
                c.sort_unstable();
                c
            })
            .collect();
        Ok(Fan::complete_unchecked(d, rays, cones))
    }

    fn first_point_rational(&self, i: usize) -> Vec<Rational> {
        self.geometry().coords[i]
            .iter()
            .map(|&x| Rational::from_integer(x.into()))
            .collect()
    }

    /// Exact LP deciding whether `{i, j}` is an edge, with a certificate either way.
    pub fn edge_certificate(&self, i: usize, j: usize) -> EdgeCertificate {
        let g = self.geometry();
        let d = g.lattice.rank();
        let m = self.vertices.len();
        // Variables: convex weights λ_k. Rows: Σ λ_k (2 p_k) = p_i + p_j and Σ λ_k = 1.
        let mut a = vec![vec![Rational::zero(); m]; d + 1];
        for k in 0..m {
            for r in 0..d {
                a[r][k] = Rational::from_integer((2 * g.coords[k][r]).into());
            }
            a[d][k] = Rational::one();
        }
        let pi = self.first_point_rational(i);
        let pj = self.first_point_rational(j);
        let mut b: Vec<Rational> = pi.iter().zip(&pj).map(|(x, y)| x + y).collect();
        b.push(Rational::one());
        let c: Vec<Rational> = (0..m)
            .map(|k| if k == i || k == j { Rational::zero() } else { Rational::one() })
            .collect();
        match maximize(&a, &b, &c) {
            LpOutcome::Optimal(s) if s.value.is_zero() => {
                // Dual y: 2⟨y_p, p_k⟩ + y_0 ≥ [k ∉ {i,j}], tight at i and j.
                let phi: Vec<Rational> = s.dual[..d]
                    .iter()
                    .map(|y| -(y * Rational::from_integer(2.into())))
                    .collect();
                let mut functional = vec![Rational::zero(); self.ambient_dim];
                for (coef, y) in phi.iter().zip(&g.lattice.dual) {
                    for (o, &yj) in functional.iter_mut().zip(y) {
                        *o += coef * Rational::from_integer(yj.into());
                    }
                }
                EdgeCertificate::Edge { functional }
            }
            LpOutcome::Optimal(s) => EdgeCertificate::NonEdge { weights: s.x },
            _ => unreachable!("the pair itself is a feasible solution"),
        }
    }

    /// Exact membership of a rational point.
    pub fn contains_point(&self, x: &[Rational]) -> bool {
        if x.len() != self.ambient_dim {
            return false;
        }
        let m = self.vertices.len();
        let mut a = vec![vec![Rational::zero(); m]; self.ambient_dim + 1];
        for k in 0..m {
            for r in 0..self.ambient_dim {
                a[r][k] = Rational::from_integer(self.vertices[k][r].into());
            }
            a[self.ambient_dim][k] = Rational::one();
        }
        let mut b = x.to_vec();
        b.push(Rational::one());
        let c = vec![Rational::zero(); m];
        matches!(maximize(&a, &b, &c), LpOutcome::Optimal(_))
    }

    /// Combinatorial equivalence, decided by isomorphism of vertex–facet incidence graphs.
    pub fn combinatorially_equivalent(&self, other: &Self) -> bool {
        if self.dim() != other.dim()
            || self.num_vertices() != other.num_vertices()
            || self.facets().len() != other.facets().len()
            || self.face_lattice().f_vector() != other.face_lattice().f_vector()
        {
            return false;
        }
        let ga = incidence_graph(self);
        let gb = incidence_graph(other);
        petgraph::algo::is_isomorphic_matching(&ga, &gb, |a, b| a == b, |_, _| true)
    }
}

fn incidence_graph(p: &LatticePolytope) -> petgraph::graph::UnGraph<u8, ()> {
    let mut g = petgraph::graph::UnGraph::new_undirected();
    let vs: Vec<_> = (0..p.num_vertices()).map(|_| g.add_node(0u8)).collect();
    for f in p.facets() {
        let fi = g.add_node(1u8);
        for &v in &f.vertices {
            g.add_edge(vs[v], fi, ());
        }
    }
    g
}

fn affine_rank(coords: &[Vec<i64>], verts: &[usize]) -> usize {
    if verts.len() <= 1 {
        return 0;
    }
    let base = &coords[verts[0]];
    let diffs: Vec<Vec<i64>> = verts[1..]
        .iter()
        .map(|&v| coords[v].iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

impl Geometry {
    fn compute(vertices: &[Vec<i64>], n: usize) -> Result<Self, PolytopeError> {
        let v0 = &vertices[0];
        let diffs: Vec<Vec<i64>> = vertices
            .iter()
            .map(|v| v.iter().zip(v0).map(|(a, b)| a - b).collect())
            .collect();
        let lattice = saturated_span(&diffs, n);
        let coords: Vec<Vec<i64>> = diffs.iter().map(|d| lattice.coordinates(d)).collect();
        let d = lattice.rank();
        if d == 0 {
            return Ok(Self {
                lattice,
                coords,
                facets: Vec::new(),
                facet_sets: Vec::new(),
            });
        }
        let raw = hull::facets(&coords)?;
        let mut facets = Vec::with_capacity(raw.len());
        let mut facet_sets = Vec::with_capacity(raw.len());
        for f in raw {
            let normal = lattice.lift_functional(&f.normal);
            let offset = normal.iter().zip(v0).map(|(a, b)| a * b).sum::<i64>() - f.offset;
            facets.push(Facet {
                normal,
                offset,
                intrinsic_normal: f.normal,
                vertices: f.vertices.to_vec(),
            });
            facet_sets.push(f.vertices);
        }
        Ok(Self {
            lattice,
            coords,
            facets,
            facet_sets,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pyramid() -> LatticePolytope {
        LatticePolytope::new(
            3,
            vec![
                vec![1, 0, 0],
                vec![-1, 0, 0],
                vec![0, 1, 0],
                vec![0, 0, 1],
                vec![0, 0, -1],
            ],
            None,
        )
        .unwrap()
    }

    fn octahedron() -> LatticePolytope {
        let mut v = Vec::new();
        for i in 0..3 {
            for s in [1, -1] {
                let mut x = vec![0; 3];
                x[i] = s;
                v.push(x);
            }
        }
        LatticePolytope::new(3, v, None).unwrap()
    }

    #[test]
    fn hexagon() {
        let p = LatticePolytope::permutohedron(3);
        assert_eq!(p.dim(), 2);
        assert_eq!(p.edges().len(), 6);
        assert_eq!(p.facets().len(), 6);
        assert_eq!(p.face_lattice().f_vector(), vec![6, 6, 1]);
        assert!(p.is_simple());
        assert!(p.edge_directions_are_roots());
        assert!(!p.is_cube());
    }

    #[test]
    fn pyramid_and_octahedron_goldens() {
        let py = pyramid();
        assert_eq!(py.f_polynomial(), IntPolynomial::new(vec![5, 8, 5, 1]));
        assert_eq!(py.h_polynomial().substitute_power(2), IntPolynomial::new(vec![1, 0, 1, 0, 2, 0, 1]));
        let oc = octahedron();
        assert_eq!(oc.f_polynomial(), IntPolynomial::new(vec![6, 12, 8, 1]));
        assert_eq!(oc.h_polynomial().substitute_power(2), IntPolynomial::new(vec![1, 0, -1, 0, 5, 0, 1]));
    }

    #[test]
    fn pyramid_height_function() {
        let py = pyramid();
        let prof = py.ascent_profile(&[-2, -1, 3]).unwrap();
        let mut asc = prof.ascents.clone();
        asc.sort_unstable();
        assert_eq!(asc, vec![0, 1, 2, 2, 3]);
        assert!(prof.face_condition);
        // Σ (1 + t)^asc = f_P(t) when the face condition holds.
        let mut s = IntPolynomial::zero();
        for &a in &prof.ascents {
            let mut term = IntPolynomial::one();
            for _ in 0..a {
                term = &term * &IntPolynomial::new(vec![1, 1]);
            }
            s = &s + &term;
        }
        assert_eq!(s, py.f_polynomial());
    }

    #[test]
    fn non_generic_functional_rejected() {
        let sq = LatticePolytope::cube(2);
        assert!(matches!(
            sq.ascent_profile(&[1, 0]),
            Err(PolytopeError::NonGenericFunctional { .. })
        ));
    }

    #[test]
    fn cubes_and_fans() {
        for d in 1..=4 {
            let c = LatticePolytope::cube(d);
            assert!(c.is_cube());
            let f = c.normal_fan().unwrap();
            assert_eq!(f.rays().len(), 2 * d);
            assert_eq!(f.cones().len(), 1 << d);
        }
    }

    #[test]
    fn non_extreme_points_rejected() {
        let r = LatticePolytope::new(2, vec![vec![0, 0], vec![2, 0], vec![1, 0]], None);
        assert!(matches!(r, Err(PolytopeError::NotExtreme(_))));
        let r = LatticePolytope::new(1, vec![vec![0], vec![0]], None);
        assert!(matches!(r, Err(PolytopeError::DuplicateVertex(_))));
    }

    #[test]
    fn edge_certificates_on_hexagon() {
        let p = LatticePolytope::permutohedron(3);
        let edges: HashSet<(usize, usize)> = p.edges().iter().copied().collect();
        for i in 0..6 {
            for j in i + 1..6 {
                match p.edge_certificate(i, j) {
                    EdgeCertificate::Edge { functional } => {
                        assert!(edges.contains(&(i, j)));
                        let val = |k: usize| -> Rational {
                            p.vertices()[k]
                                .iter()
                                .zip(&functional)
                                .map(|(x, c)| Rational::from_integer((*x).into()) * c)
                                .sum()
                        };
                        assert_eq!(val(i), val(j));
                        for k in 0..6 {
                            if k != i && k != j {
                                assert!(val(k) < val(i));
                            }
                        }
                    }
                    EdgeCertificate::NonEdge { .. } => assert!(!edges.contains(&(i, j))),
                }
            }
        }
    }

    #[test]
    fn membership() {
        let sq = LatticePolytope::cube(2);
        let half = Rational::new(1.into(), 2.into());
        assert!(sq.contains_point(&[half.clone(), half.clone()]));
        assert!(!sq.contains_point(&[half.clone(), Rational::from_integer(2.into())]));
    }

    #[test]
    fn products_and_equivalence() {
        let hex = LatticePolytope::permutohedron(3);
        let prism = hex.product(&LatticePolytope::cube(1));
        assert_eq!(prism.dim(), 3);
        assert_eq!(prism.face_lattice().f_vector(), vec![12, 18, 8, 1]);
        assert!(prism.combinatorially_equivalent(&prism.clone()));
        assert!(!prism.combinatorially_equivalent(&LatticePolytope::cube(3)));
    }
}
