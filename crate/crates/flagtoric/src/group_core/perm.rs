use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::GroupError;

/// A permutation of `{1, ..., n}` in one-line notation `w(1) w(2) ... w(n)`.
///
/// Ordering and hashing follow the one-line word, so sorting a list of
/// permutations sorts them lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Box<[u8]>,
}

impl Permutation {
    /// Builds a permutation from its one-line images (values `1..=n`).
    pub fn new(images: Vec<usize>) -> Result<Self, GroupError> {
        let n = images.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > u8::MAX as usize {
            return Err(GroupError::TooLarge(n));
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            if x == 0 || x > n || seen[x] {
                return Err(GroupError::NotBijection(images.clone()));
            }
            seen[x] = true;
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub(crate) fn from_u8_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(Self::new(images.iter().map(|&x| x as usize).collect()).is_ok());
        Self {
            images: images.into_boxed_slice(),
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_u8_unchecked((1..=n as u8).collect())
    }

    /// The longest element `n (n-1) ... 1`.
    pub fn longest(n: usize) -> Self {
        Self::from_u8_unchecked((1..=n as u8).rev().collect())
    }

    /// The simple transposition `s_i` swapping `i` and `i+1` (1-based).
    pub fn simple(n: usize, i: usize) -> Result<Self, GroupError> {
        if i == 0 || i >= n {
            return Err(GroupError::LetterOutOfRange { letter: i, n });
        }
        let mut v: Vec<u8> = (1..=n as u8).collect();
        v.swap(i - 1, i);
        Ok(Self::from_u8_unchecked(v))
    }

    /// The transposition `t_{a,b}` exchanging `a` and `b`.
    pub fn transposition(n: usize, a: usize, b: usize) -> Result<Self, GroupError> {
        if a == 0 || b == 0 || a > n || b > n || a == b {
            return Err(GroupError::LetterOutOfRange { letter: a.max(b), n });
        }
        let mut v: Vec<u8> = (1..=n as u8).collect();
        v.swap(a - 1, b - 1);
        Ok(Self::from_u8_unchecked(v))
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    /// `w(i)` for `i` in `1..=n`.
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    /// One-line images as 1-based values.
    pub fn images(&self) -> Vec<usize> {
        self.images.iter().map(|&x| x as usize).collect()
    }

    pub(crate) fn raw(&self) -> &[u8] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &x)| x as usize == i + 1)
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0u8; self.n()];
        for (i, &x) in self.images.iter().enumerate() {
            inv[x as usize - 1] = (i + 1) as u8;
        }
        Self::from_u8_unchecked(inv)
    }

    /// Composition `(self ∘ other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Self) -> Result<Self, GroupError> {
        if self.n() != other.n() {
            return Err(GroupError::RankMismatch(self.n(), other.n()));
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Self) -> Self {
        Self::from_u8_unchecked(
            other
                .images
                .iter()
                .map(|&j| self.images[j as usize - 1])
                .collect(),
        )
    }

    /// Number of inversions `#{i < j : w(i) > w(j)}`.
    pub fn length(&self) -> usize {
        let w = &self.images;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right multiplication by `t_{i,j}`: swaps the entries in positions `i` and `j`.
    pub fn swap_positions(&self, i: usize, j: usize) -> Self {
        let mut v = self.images.to_vec();
        v.swap(i - 1, j - 1);
        Self::from_u8_unchecked(v)
    }

    /// Left multiplication by `t_{a,b}`: swaps the values `a` and `b`.
    pub fn swap_values(&self, a: usize, b: usize) -> Self {
        let v = self
            .images
            .iter()
            .map(|&x| {
                if x as usize == a {
                    b as u8
                } else if x as usize == b {
                    a as u8
                } else {
                    x
                }
            })
            .collect();
        Self::from_u8_unchecked(v)
    }

    /// Bruhat comparison by sorted-prefix dominance. Panics on rank mismatch.
    pub fn bruhat_le(&self, other: &Self) -> bool {
        assert_eq!(self.n(), other.n(), "rank mismatch in Bruhat comparison");
        let n = self.n();
        // Sorted prefixes are compared via counting: {v(1..d)}↑ ≤ {w(1..d)}↑
        // componentwise iff for every threshold k, #{i ≤ d : v(i) ≥ k} ≤ #{i ≤ d : w(i) ≥ k}.
        let mut small = [[0i32; 34]; 2];
        let mut big = Vec::new();
        let (cv, cw): (&mut [i32], &mut [i32]) = if n + 2 <= 34 {
            let [a, b] = &mut small;
            (a, b)
        } else {
            big.resize(2 * (n + 2), 0);
            big.split_at_mut(n + 2)
        };
        for d in 0..n - 1 {
            cv[self.images[d] as usize] += 1;
            cw[other.images[d] as usize] += 1;
            let (mut sv, mut sw) = (0, 0);
            for k in (1..=n).rev() {
                sv += cv[k];
                sw += cw[k];
                if sv > sw {
                    return false;
                }
            }
        }
        true
    }

    /// `w₀ w w₀`.
    pub fn conjugate_by_longest(&self) -> Self {
        let n = self.n() as u8;
        Self::from_u8_unchecked(
            self.images
                .iter()
                .rev()
                .map(|&x| n + 1 - x)
                .collect(),
        )
    }

    /// Moment vector `(w⁻¹(1), ..., w⁻¹(n))`.
    pub fn moment_vector(&self) -> Vec<i64> {
        self.inverse().images.iter().map(|&x| x as i64).collect()
    }

    /// The action on coordinates: `w·(a_1..a_n) = (a_{w⁻¹(1)}, ..., a_{w⁻¹(n)})`.
    pub fn act_on<T: Clone>(&self, a: &[T]) -> Vec<T> {
        let inv = self.inverse();
        (1..=self.n()).map(|i| a[inv.at(i) - 1].clone()).collect()
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> impl Iterator<Item = Permutation> {
        use itertools::Itertools;
        (1..=n as u8)
            .permutations(n)
            .map(Permutation::from_u8_unchecked)
    }
}

/// Parses `"3412"`, `"10,2,3,...,1"`, `"e@4"` (identity) or `"w0@4"` (longest element).
impl FromStr for Permutation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if let Some((head, n)) = s.split_once('@') {
            let n: usize = n
                .parse()
                .map_err(|_| GroupError::Parse(s.to_string()))?;
            if n == 0 {
                return Err(GroupError::Empty);
            }
            return match head {
                "e" => Ok(Self::identity(n)),
                "w0" | "w₀" => Ok(Self::longest(n)),
                _ => Err(GroupError::Parse(s.to_string())),
            };
        }
        let images: Option<Vec<usize>> = if s.contains(',') {
            s.split(',').map(|t| t.trim().parse::<usize>().ok()).collect()
        } else {
            s.chars().map(|c| c.to_digit(10).map(|d| d as usize)).collect()
        };
        Self::new(images.ok_or_else(|| GroupError::Parse(s.to_string()))?)
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n() <= 9 {
            for &x in self.images.iter() {
                write!(f, "{x}")?;
            }
            Ok(())
        } else {
            let parts: Vec<String> = self.images.iter().map(|x| x.to_string()).collect();
            write!(f, "{}", parts.join(","))
        }
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Permutation({self})")
    }
}

impl std::ops::Mul for &Permutation {
    type Output = Permutation;

    /// Composition; panics on rank mismatch.
    fn mul(self, rhs: &Permutation) -> Permutation {
        assert_eq!(self.n(), rhs.n(), "rank mismatch in composition");
        self.compose_unchecked(rhs)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Permutation {
        s.parse().unwrap()
    }

    #[test]
    fn compose_examples() {
        assert_eq!(p("312").compose(&p("231")).unwrap(), p("123"));
        let w = p("23451");
        let mut prod = Permutation::identity(5);
        for i in 1..=4 {
            prod = &prod * &Permutation::simple(5, i).unwrap();
        }
        assert_eq!(prod, w);
        assert!(p("12").compose(&p("123")).is_err());
    }

    #[test]
    fn lengths() {
        assert_eq!(p("4213").length(), 4);
        assert_eq!(p("1234").length(), 0);
        assert_eq!(p("4321").length(), 6);
    }

    #[test]
    fn bruhat_examples() {
        assert!(!p("213").bruhat_le(&p("132")));
        assert!(!p("132").bruhat_le(&p("213")));
        assert!(p("1324").bruhat_le(&p("4231")));
        assert!(p("123").bruhat_le(&p("321")));
    }

    #[test]
    fn parse_and_print() {
        assert_eq!(p("e@3"), Permutation::identity(3));
        assert_eq!(p("w0@4"), p("4321"));
        let big = p("10,2,3,4,5,6,7,8,9,1");
        assert_eq!(big.to_string(), "10,2,3,4,5,6,7,8,9,1");
        assert!("1224".parse::<Permutation>().is_err());
        assert!("12a".parse::<Permutation>().is_err());
    }

    #[test]
    fn moment_vector_example() {
        assert_eq!(p("312").moment_vector(), vec![2, 3, 1]);
    }

    #[test]
    fn swaps() {
        let u = p("2143");
        assert_eq!(u.swap_values(1, 4), p("2413"));
        assert_eq!(u.swap_positions(1, 4), p("3142"));
        assert_eq!(
            u.swap_values(1, 4),
            &Permutation::transposition(4, 1, 4).unwrap() * &u
        );
    }
}
