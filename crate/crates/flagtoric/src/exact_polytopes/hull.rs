//! Facet enumeration for full-dimensional integer point sets by the double description method.
//!
//! The facets of `conv(p_1, ..., p_m) ⊂ R^d` are the extreme rays of the cone
//! `{(a, b) : ⟨a, p_i⟩ + b ≥ 0 for all i}`. Constraints are added one at a time; new rays are
//! formed from adjacent pairs, with adjacency decided combinatorially on tight sets.

use super::bitset::IndexSet;
use super::intlin::{gcd_all, rank_in_place};
use super::PolytopeError;

#[derive(Clone, Debug)]
pub(crate) struct HullFacet {
    /// Inward normal `a` (primitive) with offset `b`: `⟨a, x⟩ + b ≥ 0` on the polytope.
    pub normal: Vec<i64>,
    pub offset: i64,
    pub vertices: IndexSet,
}

struct Ray {
    v: Vec<i128>,
    zero: IndexSet,
}

fn dot(a: &[i128], b: &[i128]) -> Result<i128, PolytopeError> {
    let mut s: i128 = 0;
    for (x, y) in a.iter().zip(b) {
        s = x
            .checked_mul(*y)
            .and_then(|p| s.checked_add(p))
            .ok_or(PolytopeError::Overflow)?;
    }
    Ok(s)
}

fn normalize(v: &mut [i128]) {
    let g = gcd_all(v);
    if g > 1 {
        for x in v.iter_mut() {
            *x /= g;
        }
    }
}

/// Solves `r0 · y = e_j` up to positive scaling for each `j`; `r0` is square and invertible.
fn initial_rays(r0: &[Vec<i128>]) -> Vec<Vec<i128>> {
    use num_rational::BigRational;
    use num_traits::Zero;
    let n = r0.len();
    let mut m: Vec<Vec<BigRational>> = r0
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r: Vec<BigRational> = row
                .iter()
                .map(|&x| BigRational::from_integer(x.into()))
                .collect();
            r.extend((0..n).map(|j| BigRational::from_integer(((i == j) as i64).into())));
            r
        })
        .collect();
    for c in 0..n {
        let p = (c..n).find(|&i| !m[i][c].is_zero()).expect("invertible");
        m.swap(c, p);
        let piv = m[c][c].clone();
        for x in m[c].iter_mut() {
            *x /= &piv;
        }
        let prow = m[c].clone();
        for i in 0..n {
            if i != c && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for (x, y) in m[i].iter_mut().zip(&prow) {
                    *x -= &f * y;
                }
            }
        }
    }
    (0..n)
        .map(|j| {
            let col: Vec<BigRational> = (0..n).map(|i| m[i][n + j].clone()).collect();
            let lcm = col
                .iter()
                .fold(num_bigint::BigInt::from(1), |l, x| num_integer::lcm(l, x.denom().clone()));
            let mut v: Vec<i128> = col
                .iter()
                .map(|x| {
                    let y = x * BigRational::from_integer(lcm.clone());
                    i128::try_from(y.to_integer()).expect("small entries")
                })
                .collect();
            normalize(&mut v);
            v
        })
        .collect()
}

/// Facets of the convex hull of `points ⊂ Z^d`, assumed to affinely span `R^d` with `d ≥ 1`.
pub(crate) fn facets(points: &[Vec<i64>]) -> Result<Vec<HullFacet>, PolytopeError> {
    let m = points.len();
    let d = points[0].len();
    let rows: Vec<Vec<i128>> = points
        .iter()
        .map(|p| {
            let mut r: Vec<i128> = p.iter().map(|&x| x as i128).collect();
            r.push(1);
            r
        })
        .collect();
    // Greedily pick d + 1 affinely independent points.
    let mut chosen = Vec::with_capacity(d + 1);
    for i in 0..m {
        let mut trial: Vec<Vec<i128>> = chosen.iter().map(|&k: &usize| rows[k].clone()).collect();
        trial.push(rows[i].clone());
        if rank_in_place(&mut trial) == chosen.len() + 1 {
            chosen.push(i);
            if chosen.len() == d + 1 {
                break;
            }
        }
    }
    if chosen.len() != d + 1 {
        return Err(PolytopeError::NotFullDimensional);
    }
    let r0: Vec<Vec<i128>> = chosen.iter().map(|&k| rows[k].clone()).collect();
    let mut rays: Vec<Ray> = initial_rays(&r0)
        .into_iter()
        .enumerate()
        .map(|(j, v)| Ray {
            v,
            zero: IndexSet::from_indices(m, chosen.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, &k)| k)),
        })
        .collect();
    let mut in_chosen = vec![false; m];
    for &k in &chosen {
        in_chosen[k] = true;
    }
    let need = d - 1; // a pair of adjacent rays in a (d+1)-dim cone shares ≥ d−1 tight constraints
    for k in 0..m {
        if in_chosen[k] {
            continue;
        }
        let mut vals = Vec::with_capacity(rays.len());
        for r in &rays {
            vals.push(dot(&r.v, &rows[k])?);
        }
        let pos: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] > 0).collect();
        let neg: Vec<usize> = (0..rays.len()).filter(|&i| vals[i] < 0).collect();
        if neg.is_empty() {
            for (r, &s) in rays.iter_mut().zip(&vals) {
                if s == 0 {
                    r.zero.insert(k);
                }
            }
            continue;
        }
        let mut fresh = Vec::new();
        for &p in &pos {
            for &q in &neg {
                let common = rays[p].zero.intersection(&rays[q].zero);
                if common.len() < need {
                    continue;
                }
                let blocked = (0..rays.len())
                    .any(|t| t != p && t != q && common.is_subset(&rays[t].zero));
                if blocked {
                    continue;
                }
                let (sp, sq) = (vals[p], -vals[q]);
                let mut v = Vec::with_capacity(d + 1);
                for (a, b) in rays[q].v.iter().zip(&rays[p].v) {
                    let x = sp
                        .checked_mul(*a)
                        .and_then(|x| sq.checked_mul(*b).and_then(|y| x.checked_add(y)))
                        .ok_or(PolytopeError::Overflow)?;
                    v.push(x);
                }
                normalize(&mut v);
                let mut zero = common;
                zero.insert(k);
                fresh.push(Ray { v, zero });
            }
        }
        let mut next: Vec<Ray> = Vec::with_capacity(pos.len() + fresh.len());
        for (i, r) in rays.into_iter().enumerate() {
            if vals[i] > 0 {
                next.push(r);
            } else if vals[i] == 0 {
                let mut r = r;
                r.zero.insert(k);
                next.push(r);
            }
        }
        next.extend(fresh);
        rays = next;
    }
    let mut out = Vec::with_capacity(rays.len());
    for r in rays {
        let normal: Vec<i64> = r.v[..d].iter().map(|&x| x as i64).collect();
        let offset = r.v[d] as i64;
        let mut vertices = IndexSet::empty(m);
        for (i, row) in rows.iter().enumerate() {
            if dot(&r.v, row)? == 0 {
                vertices.insert(i);
            }
        }
        out.push(HullFacet {
            normal,
            offset,
            vertices,
        });
    }
    out.sort_by(|a, b| a.normal.cmp(&b.normal).then(a.offset.cmp(&b.offset)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_and_octahedron() {
        let sq = vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1]];
        let f = facets(&sq).unwrap();
        assert_eq!(f.len(), 4);
        for fa in &f {
            assert_eq!(fa.vertices.len(), 2);
        }
        let oct = vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
        ];
        let f = facets(&oct).unwrap();
        assert_eq!(f.len(), 8);
        assert!(f.iter().all(|x| x.vertices.len() == 3 && x.offset == 1));
    }

    #[test]
    fn segment_and_interior_points() {
        let f = facets(&[vec![0], vec![3], vec![1]]).unwrap();
        assert_eq!(f.len(), 2);
        let tri = vec![vec![0, 0], vec![4, 0], vec![0, 4], vec![1, 1], vec![2, 0]];
        let f = facets(&tri).unwrap();
        assert_eq!(f.len(), 3);
    }
}
