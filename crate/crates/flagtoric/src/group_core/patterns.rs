use itertools::Itertools;

use super::Permutation;

fn order_isomorphic(values: &[u8], q: &[u8]) -> bool {
    for r in 0..q.len() {
        for s in r + 1..q.len() {
            if (values[r] < values[s]) != (q[r] < q[s]) {
                return false;
            }
        }
    }
    true
}

/// Positions (0-based, increasing) of every occurrence of pattern `q` in `w`.
fn occurrences(w: &[u8], q: &[u8]) -> Vec<Vec<usize>> {
    if q.len() > w.len() {
        return Vec::new();
    }
    (0..w.len())
        .combinations(q.len())
        .filter(|idx| {
            let vals: Vec<u8> = idx.iter().map(|&i| w[i]).collect();
            order_isomorphic(&vals, q)
        })
        .collect()
}

/// Number of index subsets of `w` order-isomorphic to `q`.
pub fn contains_pattern(w: &Permutation, q: &Permutation) -> usize {
    occurrences(w.raw(), q.raw()).len()
}

/// True iff every occurrence of `4512` sits inside an occurrence of `45312`, where the `3`
/// lies strictly between the `5` and the `1` in position and between `2` and `4` in value.
pub fn avoids_45bar312(w: &Permutation) -> bool {
    let raw = w.raw();
    occurrences(raw, &[4, 5, 1, 2]).iter().all(|occ| {
        let (p5, p1) = (occ[1], occ[2]);
        let lo = raw[occ[3]];
        let hi = raw[occ[0]];
        (p5 + 1..p1).any(|k| raw[k] > lo && raw[k] < hi)
    })
}
