use flagtoric::exact_polytopes::*;
use flagtoric::group_core::Permutation;
use flagtoric::schubert::q_w;
use num_traits::{One, Zero};
use proptest::prelude::*;

fn rat(x: i64) -> Rational {
    Rational::from_integer(x.into())
}

#[test]
fn edge_certificates_are_sound_on_s4_schubert_polytopes() {
    for w in Permutation::all(4) {
        let q = q_w(&w);
        let m = q.num_vertices();
        let verts = q.vertices();
        let edges: std::collections::HashSet<(usize, usize)> = q.edges().iter().copied().collect();
        for i in 0..m {
            for j in i + 1..m {
                match q.edge_certificate(i, j) {
                    EdgeCertificate::Edge { functional } => {
                        assert!(edges.contains(&(i, j)), "w = {w}");
                        let val = |k: usize| -> Rational {
                            functional.iter().zip(&verts[k]).map(|(a, &x)| a * rat(x)).sum()
                        };
                        let top = val(i);
                        assert_eq!(val(j), top);
                        assert!((0..m).filter(|&k| k != i && k != j).all(|k| val(k) < top), "w = {w}");
                    }
                    EdgeCertificate::NonEdge { weights } => {
                        assert!(!edges.contains(&(i, j)), "w = {w}");
                        let total: Rational = weights.iter().sum();
                        assert!(total.is_one() && weights.iter().all(|x| *x >= Rational::zero()));
                        for r in 0..q.ambient_dim() {
                            let lhs: Rational = (0..m).map(|k| &weights[k] * rat(2 * verts[k][r])).sum();
                            assert_eq!(lhs, rat(verts[i][r] + verts[j][r]));
                        }
                        // the certificate puts positive mass off the pair
                        assert!((0..m).any(|k| k != i && k != j && weights[k] > Rational::zero()));
                        assert!(q.minimal_face(&[i, j]).len() > 2, "w = {w}: {i} {j}");
                        let mid: Vec<Rational> = (0..q.ambient_dim())
                            .map(|r| Rational::new((verts[i][r] + verts[j][r]).into(), 2.into()))
                            .collect();
                        assert!(in_hull(verts, &mid));
                    }
                }
            }
        }
    }
}

/// Exact LP feasibility of `x ∈ conv(pts)`.
fn in_hull(pts: &[Vec<i64>], x: &[Rational]) -> bool {
    let d = x.len();
    let mut a = vec![vec![Rational::zero(); pts.len()]; d + 1];
    for (c, p) in pts.iter().enumerate() {
        for r in 0..d {
            a[r][c] = rat(p[r]);
        }
        a[d][c] = Rational::one();
    }
    let mut b = x.to_vec();
    b.push(Rational::one());
    matches!(maximize(&a, &b, &vec![Rational::zero(); pts.len()]), LpOutcome::Optimal(_))
}

#[test]
fn facet_counts_at_vertices_detect_simplicity() {
    for w in Permutation::all(4) {
        let q = q_w(&w);
        if q.dim() == 0 {
            continue;
        }
        let mut all_equal = true;
        for v in 0..q.num_vertices() {
            let k = q.facets().iter().filter(|f| f.vertices.contains(&v)).count();
            assert!(k >= q.dim(), "w = {w}");
            all_equal &= k == q.dim();
            assert_eq!(k == q.dim(), q.is_simple_at(v), "w = {w}");
        }
        assert_eq!(all_equal, q.is_simple());
    }
}

#[test]
fn dehn_sommerville_for_simple_schubert_polytopes() {
    for w in Permutation::all(4) {
        let q = q_w(&w);
        if q.is_simple() {
            assert!(q.h_polynomial().is_palindromic(), "w = {w}");
        }
    }
}

#[test]
fn ascents_and_descents_split_degrees() {
    let a = [4i64, 3, 2, 1];
    let neg: Vec<i64> = a.iter().map(|x| -x).collect();
    for w in Permutation::all(4) {
        let q = q_w(&w);
        let up = q.ascent_profile(&a).unwrap();
        let down = q.ascent_profile(&neg).unwrap();
        for v in 0..q.num_vertices() {
            assert_eq!(up.ascents[v] + down.ascents[v], q.neighbors(v).len());
        }
        if up.face_condition {
            let mut sum = IntPolynomial::zero();
            for &k in &up.ascents {
                let mut term = IntPolynomial::one();
                for _ in 0..k {
                    term = &term * &IntPolynomial::new(vec![1, 1]);
                }
                sum = &sum + &term;
            }
            assert_eq!(sum, q.f_polynomial(), "w = {w}");
        }
    }
}

#[test]
fn normal_fans_of_cubes() {
    for d in 1..=4 {
        let f = LatticePolytope::cube(d).normal_fan().unwrap();
        assert_eq!(f.rays().len(), 2 * d);
        assert_eq!(f.cones().len(), 1 << d);
        assert!(f.is_complete() && f.is_smooth() && f.is_fano().unwrap());
    }
}

fn subset_of_s4() -> impl Strategy<Value = Vec<Permutation>> {
    let all: Vec<Permutation> = Permutation::all(4).collect();
    proptest::sample::subsequence(all, 1..=24)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // every point of a subset of S₄ is a vertex of its moment polytope
    #[test]
    fn euler_relation(perms in subset_of_s4()) {
        let p = LatticePolytope::from_moment_points(&perms).unwrap();
        prop_assert_eq!(p.num_vertices(), perms.len());
        let f = p.face_lattice().f_vector();
        let euler: i64 = f.iter().enumerate().map(|(i, &x)| if i % 2 == 0 { x as i64 } else { -(x as i64) }).sum();
        prop_assert_eq!(euler, 1);
        if p.dim() > 0 {
            for v in 0..p.num_vertices() {
                prop_assert!(p.neighbors(v).len() >= p.dim());
            }
        }
        if p.is_simple() {
            prop_assert!(p.h_polynomial().is_palindromic());
        }
    }

    #[test]
    fn edges_match_lp(perms in subset_of_s4()) {
        let p = LatticePolytope::from_moment_points(&perms).unwrap();
        let m = p.num_vertices();
        let lp_edges: Vec<(usize, usize)> = (0..m)
            .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
            .filter(|&(i, j)| matches!(p.edge_certificate(i, j), EdgeCertificate::Edge { .. }))
            .collect();
        let mut edges = p.edges().to_vec();
        edges.sort();
        prop_assert_eq!(edges, lp_edges);
    }

    #[test]
    fn products_multiply_f_polynomials(a in 1usize..=3, b in 1usize..=2) {
        let (p, q) = (LatticePolytope::cube(a), LatticePolytope::permutohedron(b + 1));
        let pq = p.product(&q);
        prop_assert_eq!(pq.dim(), p.dim() + q.dim());
        prop_assert_eq!(pq.num_vertices(), p.num_vertices() * q.num_vertices());
        prop_assert_eq!(pq.h_polynomial(), &p.h_polynomial() * &q.h_polynomial());
    }
}
