//! Symmetric groups and signed permutations: Bruhat order, length, reduced words, patterns and
//! intervals.

mod interval;
mod patterns;
mod perm;
mod signed;
mod words;

pub use interval::{
    atoms, bruhat_leq, coatoms, covers, is_boolean, lower_covers, shifted_leq, upper_covers,
    BruhatInterval,
};
pub use patterns::{avoids_45bar312, contains_pattern};
pub use perm::Permutation;
pub use signed::{Parity, SignedPermutation};
pub use words::{
    distinct_letter_word, left_descents, reduced_words, right_descents, word_product, ReducedWord,
};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("empty permutation")]
    Empty,
    #[error("rank {0} is too large")]
    TooLarge(usize),
    #[error("{0:?} is not a bijection of 1..n")]
    NotBijection(Vec<usize>),
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("cannot parse {0:?} as one-line notation")]
    Parse(String),
    #[error("letter {letter} out of range for S_{n}")]
    LetterOutOfRange { letter: usize, n: usize },
    #[error("word {0:?} is not reduced")]
    NotReduced(Vec<usize>),
    #[error("{v} is not below {w} in Bruhat order")]
    NotBelow { v: String, w: String },
    #[error("type D element must have an even number of bars, found {0}")]
    OddBars(usize),
}

/// Inversion count.
pub fn length(w: &Permutation) -> usize {
    w.length()
}

/// Composition `(a ∘ b)(i) = a(b(i))`.
pub fn compose(a: &Permutation, b: &Permutation) -> Result<Permutation, GroupError> {
    a.compose(b)
}
