use std::fmt;
use std::str::FromStr;

use super::{GroupError, Permutation};

/// A word `(i_1, ..., i_m)` in the simple transpositions `s_1, ..., s_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedWord {
    letters: Vec<usize>,
}

impl ReducedWord {
    /// Wraps letters after checking that the product in `S_n` has length `m`.
    pub fn new(n: usize, letters: Vec<usize>) -> Result<Self, GroupError> {
        let w = word_product(n, &letters)?;
        if w.length() != letters.len() {
            return Err(GroupError::NotReduced(letters));
        }
        Ok(Self { letters })
    }

    pub(crate) fn new_unchecked(letters: Vec<usize>) -> Self {
        Self { letters }
    }

    pub fn letters(&self) -> &[usize] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    /// `s_{i_1} ⋯ s_{i_m}` in `S_n`.
    pub fn product(&self, n: usize) -> Result<Permutation, GroupError> {
        word_product(n, &self.letters)
    }

    pub fn has_distinct_letters(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        self.letters.iter().all(|x| seen.insert(*x))
    }
}

/// `s_{i_1} ⋯ s_{i_m}`, multiplying left to right (each factor swaps adjacent positions).
pub fn word_product(n: usize, letters: &[usize]) -> Result<Permutation, GroupError> {
    let mut v: Vec<u8> = (1..=n as u8).collect();
    for &i in letters {
        if i == 0 || i >= n {
            return Err(GroupError::LetterOutOfRange { letter: i, n });
        }
        v.swap(i - 1, i);
    }
    Ok(Permutation::from_u8_unchecked(v))
}

/// Letters `i` with `ℓ(s_i w) < ℓ(w)`, i.e. `i+1` appears before `i` in the one-line word.
pub fn left_descents(w: &Permutation) -> Vec<usize> {
    let inv = w.inverse();
    (1..w.n()).filter(|&i| inv.at(i) > inv.at(i + 1)).collect()
}

/// Letters `i` with `w(i) > w(i+1)`.
pub fn right_descents(w: &Permutation) -> Vec<usize> {
    (1..w.n()).filter(|&i| w.at(i) > w.at(i + 1)).collect()
}

/// Reduced words of `w` in lexicographic order of letter sequences, up to `limit` of them.
pub fn reduced_words(w: &Permutation, limit: Option<usize>) -> Vec<ReducedWord> {
    let mut out = Vec::new();
    let mut prefix = Vec::with_capacity(w.length());
    let cap = limit.unwrap_or(usize::MAX);
    if cap > 0 {
        collect_words(w, &mut prefix, &mut out, cap);
    }
    out
}

fn collect_words(w: &Permutation, prefix: &mut Vec<usize>, out: &mut Vec<ReducedWord>, cap: usize) {
    if out.len() >= cap {
        return;
    }
    if w.is_identity() {
        out.push(ReducedWord::new_unchecked(prefix.clone()));
        return;
    }
    for i in left_descents(w) {
        // s_i w swaps the values i and i+1.
        let rest = w.swap_values(i, i + 1);
        prefix.push(i);
        collect_words(&rest, prefix, out, cap);
        prefix.pop();
        if out.len() >= cap {
            return;
        }
    }
}

/// A reduced word of `w` whose letters are pairwise distinct, if one exists.
pub fn distinct_letter_word(w: &Permutation) -> Option<ReducedWord> {
    let mut prefix = Vec::new();
    let mut used = vec![false; w.n()];
    if search_distinct(w, &mut prefix, &mut used) {
        Some(ReducedWord::new_unchecked(prefix))
    } else {
        None
    }
}

fn search_distinct(w: &Permutation, prefix: &mut Vec<usize>, used: &mut [bool]) -> bool {
    if w.is_identity() {
        return true;
    }
    for i in left_descents(w) {
        if used[i] {
            continue;
        }
        used[i] = true;
        prefix.push(i);
        if search_distinct(&w.swap_values(i, i + 1), prefix, used) {
            return true;
        }
        prefix.pop();
        used[i] = false;
    }
    false
}

impl fmt::Display for ReducedWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.letters.iter().map(|i| format!("s{i}")).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// Parses `"s1 s3 s2 s4"`, `"1,3,2,4"` or `"1324"` (single-digit letters). The result is not
/// checked for reducedness; use [`ReducedWord::new`] for that.
impl FromStr for ReducedWord {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || GroupError::Parse(s.to_string());
        let letters: Vec<usize> = if s.is_empty() {
            Vec::new()
        } else if s.contains('s') {
            s.split_whitespace()
                .map(|t| t.strip_prefix('s').and_then(|d| d.parse().ok()).ok_or_else(err))
                .collect::<Result<_, _>>()?
        } else if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else {
            s.chars()
                .map(|c| c.to_digit(10).map(|d| d as usize).ok_or_else(err))
                .collect::<Result<_, _>>()?
        };
        Ok(Self::new_unchecked(letters))
    }
}
