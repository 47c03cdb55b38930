use std::collections::{HashMap, VecDeque};

use super::{GroupError, Permutation};

/// Upper covers of `x`: `x·t_{i,j}` with `x(i) < x(j)` and no value of `x` strictly between
/// them in positions `i < k < j`.
pub fn upper_covers(x: &Permutation) -> Vec<Permutation> {
    let w = x.raw();
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        let mut ceiling = u8::MAX;
        for j in i + 1..n {
            if w[j] > w[i] && w[j] < ceiling {
                out.push(x.swap_positions(i + 1, j + 1));
                ceiling = w[j];
            }
        }
    }
    out
}

/// Lower covers of `x`.
pub fn lower_covers(x: &Permutation) -> Vec<Permutation> {
    let w = x.raw();
    let n = w.len();
    let mut out = Vec::new();
    for i in 0..n {
        let mut floor = 0u8;
        for j in i + 1..n {
            if w[j] < w[i] && w[j] > floor {
                out.push(x.swap_positions(i + 1, j + 1));
                floor = w[j];
            }
        }
    }
    out
}

/// True iff `v ⋖ w`: `v ≤ w` and `ℓ(w) = ℓ(v) + 1`.
pub fn covers(v: &Permutation, w: &Permutation) -> Result<bool, GroupError> {
    check_rank(v, w)?;
    Ok(w.length() == v.length() + 1 && v.bruhat_le(w))
}

pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool, GroupError> {
    check_rank(v, w)?;
    Ok(v.bruhat_le(w))
}

/// `a ≤^u b`, i.e. `u⁻¹a ≤ u⁻¹b`.
pub fn shifted_leq(u: &Permutation, a: &Permutation, b: &Permutation) -> Result<bool, GroupError> {
    check_rank(u, a)?;
    check_rank(u, b)?;
    let ui = u.inverse();
    Ok((&ui * a).bruhat_le(&(&ui * b)))
}

fn check_rank(a: &Permutation, b: &Permutation) -> Result<(), GroupError> {
    if a.n() != b.n() {
        Err(GroupError::RankMismatch(a.n(), b.n()))
    } else {
        Ok(())
    }
}

/// A Bruhat interval `[v, w]` with its elements enumerated.
#[derive(Clone, Debug)]
pub struct BruhatInterval {
    v: Permutation,
    w: Permutation,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl BruhatInterval {
    /// Enumerates `[v, w]` by walking upper covers from `v` and keeping those below `w`.
    pub fn new(v: &Permutation, w: &Permutation) -> Result<Self, GroupError> {
        check_rank(v, w)?;
        if !v.bruhat_le(w) {
            return Err(GroupError::NotBelow {
                v: v.to_string(),
                w: w.to_string(),
            });
        }
        let mut seen: HashMap<Permutation, ()> = HashMap::new();
        let mut queue = VecDeque::new();
        seen.insert(v.clone(), ());
        queue.push_back(v.clone());
        let top = w.length();
        while let Some(x) = queue.pop_front() {
            if x.length() == top {
                continue;
            }
            for y in upper_covers(&x) {
                if !seen.contains_key(&y) && y.bruhat_le(w) {
                    seen.insert(y.clone(), ());
                    queue.push_back(y);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_keys().collect();
        elements.sort_by(|a, b| a.length().cmp(&b.length()).then_with(|| a.cmp(b)));
        let index = elements
            .iter()
            .enumerate()
            .map(|(i, x)| (x.clone(), i))
            .collect();
        Ok(Self {
            v: v.clone(),
            w: w.clone(),
            elements,
            index,
        })
    }

    /// The lower interval `[e, w]`.
    pub fn lower(w: &Permutation) -> Self {
        Self::new(&Permutation::identity(w.n()), w).expect("e is below every element")
    }

    pub fn bottom(&self) -> &Permutation {
        &self.v
    }

    pub fn top(&self) -> &Permutation {
        &self.w
    }

    pub fn n(&self) -> usize {
        self.v.n()
    }

    /// Elements sorted by length, then lexicographically.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: &Permutation) -> bool {
        self.index.contains_key(x)
    }

    pub fn index_of(&self, x: &Permutation) -> Option<usize> {
        self.index.get(x).copied()
    }

    /// `ℓ(w) − ℓ(v)`.
    pub fn rank(&self) -> usize {
        self.w.length() - self.v.length()
    }

    pub fn atoms(&self) -> Vec<Permutation> {
        let mut a: Vec<Permutation> = upper_covers(&self.v)
            .into_iter()
            .filter(|x| self.contains(x))
            .collect();
        a.sort();
        a
    }

    pub fn coatoms(&self) -> Vec<Permutation> {
        let mut a: Vec<Permutation> = lower_covers(&self.w)
            .into_iter()
            .filter(|x| self.contains(x))
            .collect();
        a.sort();
        a
    }

    /// Cover relations `(i, j)` as element indices, `elements[i] ⋖ elements[j]`.
    pub fn hasse_edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (i, x) in self.elements.iter().enumerate() {
            for y in upper_covers(x) {
                if let Some(&j) = self.index.get(&y) {
                    out.push((i, j));
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Boolean-lattice test: `|[v,w]| = 2^rank`, then each element is identified with the set of
    /// atoms below it and this map must be an order isomorphism onto the subset lattice.
    pub fn is_boolean(&self) -> bool {
        let r = self.rank();
        if r >= usize::BITS as usize - 1 || self.len() != 1usize << r {
            return false;
        }
        let atoms = self.atoms();
        if atoms.len() != r {
            return false;
        }
        let masks: Vec<u64> = self
            .elements
            .iter()
            .map(|x| {
                atoms
                    .iter()
                    .enumerate()
                    .filter(|(_, a)| a.bruhat_le(x))
                    .fold(0u64, |m, (k, _)| m | (1 << k))
            })
            .collect();
        let mut hit = vec![false; self.len()];
        for (x, &m) in self.elements.iter().zip(&masks) {
            if m.count_ones() as usize != x.length() - self.v.length() || hit[m as usize] {
                return false;
            }
            hit[m as usize] = true;
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                let le = self.elements[i].bruhat_le(&self.elements[j]);
                let sub = masks[i] & !masks[j] == 0;
                if le != sub {
                    return false;
                }
            }
        }
        true
    }
}

/// Atoms of `[v, w]`.
pub fn atoms(interval: &BruhatInterval) -> Vec<Permutation> {
    interval.atoms()
}

/// Coatoms of `[v, w]`.
pub fn coatoms(interval: &BruhatInterval) -> Vec<Permutation> {
    interval.coatoms()
}

pub fn is_boolean(interval: &BruhatInterval) -> bool {
    interval.is_boolean()
}
