use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{Digraph, SchubertError};
use crate::exact_polytopes::{fan_isomorphic, Fan};
use crate::group_core::{distinct_letter_word, word_product, Permutation, ReducedWord};

/// Reduced characteristic matrix of a toric Schubert variety, row-major.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharMatrix {
    rows: Vec<Vec<i64>>,
}

impl CharMatrix {
    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<i64>] {
        &self.rows
    }

    pub fn entry(&self, j: usize, k: usize) -> i64 {
        self.rows[j][k]
    }

    pub fn column(&self, k: usize) -> Vec<i64> {
        self.rows.iter().map(|r| r[k]).collect()
    }
}

fn check_distinct(word: &ReducedWord) -> Result<&[usize], SchubertError> {
    let l = word.letters();
    if !word.has_distinct_letters() {
        return Err(SchubertError::RepeatedLetters(l.to_vec()));
    }
    Ok(l)
}

/// `a_{j,j} = −1`, and `a_{j,k} = 1` for `k < j` exactly when the letters are adjacent.
pub fn reduced_char_matrix(word: &ReducedWord) -> Result<CharMatrix, SchubertError> {
    let l = check_distinct(word)?;
    let m = l.len();
    let rows = (0..m)
        .map(|j| {
            (0..m)
                .map(|k| match k.cmp(&j) {
                    std::cmp::Ordering::Equal => -1,
                    std::cmp::Ordering::Less if l[j].abs_diff(l[k]) == 1 => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    Ok(CharMatrix { rows })
}

/// Rays `e_1, …, e_m` (indices `0..m`) and the columns of the characteristic matrix (indices
/// `m..2m`); maximal cones take one ray from each pair `{k, m+k}`.
pub fn schubert_fan(word: &ReducedWord) -> Result<Fan, SchubertError> {
    let a = reduced_char_matrix(word)?;
    let m = a.size();
    let mut rays: Vec<Vec<i64>> = (0..m)
        .map(|k| (0..m).map(|i| i64::from(i == k)).collect())
        .collect();
    rays.extend((0..m).map(|k| a.column(k)));
    let cones = (0..1usize << m)
        .map(|mask| (0..m).map(|k| if mask >> k & 1 == 1 { m + k } else { k }).collect())
        .collect();
    Ok(Fan::new(m, rays, cones)?)
}

/// `G_i` on positions `1..=m`: an edge `k → j` when `k < j` and `|i_k − i_j| = 1`.
pub fn g_digraph(word: &ReducedWord) -> Result<Digraph, SchubertError> {
    let l = check_distinct(word)?;
    let m = l.len();
    let mut g = Digraph::new(m);
    for k in 0..m {
        for j in k + 1..m {
            if l[k].abs_diff(l[j]) == 1 {
                g.add_edge(k + 1, j + 1);
            }
        }
    }
    Ok(g)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FanoClass {
    Fano,
    WeakFanoNotFano,
}

/// Fano iff no vertex of `G_i` has two outgoing edges. Weak Fano always holds here.
pub fn fano_class(word: &ReducedWord) -> Result<FanoClass, SchubertError> {
    let g = g_digraph(word)?;
    let fano = (1..=g.num_vertices()).all(|v| g.out_degree(v) <= 1);
    Ok(if fano { FanoClass::Fano } else { FanoClass::WeakFanoNotFano })
}

/// Products of `s_1, …, s_{n−1}` in every order, deduplicated and sorted.
pub fn coxeter_elements(n: usize) -> Vec<Permutation> {
    use itertools::Itertools;
    let letters: Vec<usize> = (1..n).collect();
    let set: BTreeSet<Permutation> = letters
        .iter()
        .copied()
        .permutations(letters.len())
        .map(|order| word_product(n, &order).expect("letters in range"))
        .collect();
    set.into_iter().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoxeterClasses {
    pub n: usize,
    pub classes: Vec<Vec<Permutation>>,
    /// Fan isomorphism holds exactly within classes.
    pub fan_consistent: bool,
    /// Digraph isomorphism of `G_i` holds exactly within classes.
    pub digraph_consistent: bool,
}

/// Partitions `Cox_n` into `{w, w₀ w w₀}` and cross-checks against fan and digraph isomorphism.
pub fn coxeter_element_classes(n: usize) -> Result<CoxeterClasses, SchubertError> {
    let cox = coxeter_elements(n);
    let mut classes: Vec<Vec<Permutation>> = Vec::new();
    for w in &cox {
        let c = w.conjugate_by_longest();
        if classes.iter().any(|cl| cl.contains(w)) {
            continue;
        }
        let mut cl = vec![w.clone()];
        if c != *w {
            cl.push(c);
        }
        cl.sort();
        classes.push(cl);
    }
    let class_of = |w: &Permutation| classes.iter().position(|cl| cl.contains(w));
    let words: Vec<ReducedWord> = cox
        .iter()
        .map(|w| distinct_letter_word(w).expect("Coxeter elements have distinct-letter words"))
        .collect();
    let fans = words.iter().map(schubert_fan).collect::<Result<Vec<_>, _>>()?;
    let graphs = words.iter().map(g_digraph).collect::<Result<Vec<_>, _>>()?;
    let mut fan_consistent = true;
    let mut digraph_consistent = true;
    for i in 0..cox.len() {
        for j in i..cox.len() {
            let same = class_of(&cox[i]) == class_of(&cox[j]);
            fan_consistent &= fan_isomorphic(&fans[i], &fans[j])? == same;
            digraph_consistent &= graphs[i].is_isomorphic(&graphs[j]) == same;
        }
    }
    Ok(CoxeterClasses { n, classes, fan_consistent, digraph_consistent })
}
