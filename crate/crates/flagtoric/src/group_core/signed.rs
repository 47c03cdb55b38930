use std::fmt;
use std::str::FromStr;

use super::GroupError;

/// Parity constraint on the number of barred entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Parity {
    /// Types B and C.
    None,
    /// Type D: an even number of bars.
    Even,
}

/// A signed permutation in one-line notation; a negative entry `-i` is the barred letter `ī`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SignedPermutation {
    images: Box<[i16]>,
    parity_even: bool,
}

impl SignedPermutation {
    pub fn new(images: Vec<i64>, parity: Parity) -> Result<Self, GroupError> {
        let n = images.len();
        if n == 0 {
            return Err(GroupError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for &x in &images {
            let a = x.unsigned_abs() as usize;
            if a == 0 || a > n || seen[a] {
                return Err(GroupError::NotBijection(
                    images.iter().map(|x| x.unsigned_abs() as usize).collect(),
                ));
            }
            seen[a] = true;
        }
        let bars = images.iter().filter(|&&x| x < 0).count();
        if parity == Parity::Even && bars % 2 == 1 {
            return Err(GroupError::OddBars(bars));
        }
        Ok(Self {
            images: images.into_iter().map(|x| x as i16).collect(),
            parity_even: parity == Parity::Even,
        })
    }

    pub fn with_parity(&self, parity: Parity) -> Result<Self, GroupError> {
        Self::new(self.images(), parity)
    }

    pub fn n(&self) -> usize {
        self.images.len()
    }

    pub fn parity(&self) -> Parity {
        if self.parity_even {
            Parity::Even
        } else {
            Parity::None
        }
    }

    /// `u(i)` for a signed index `i` (`u(-i) = -u(i)`).
    pub fn at(&self, i: i64) -> i64 {
        let v = self.images[i.unsigned_abs() as usize - 1] as i64;
        if i < 0 {
            -v
        } else {
            v
        }
    }

    pub fn images(&self) -> Vec<i64> {
        self.images.iter().map(|&x| x as i64).collect()
    }

    pub fn bar_count(&self) -> usize {
        self.images.iter().filter(|&&x| x < 0).count()
    }
}

/// Parses `"2,-3,1,-4"` or the compact digit form `"1-423"` where `-` bars the next digit.
impl FromStr for SignedPermutation {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || GroupError::Parse(s.to_string());
        let images: Vec<i64> = if s.contains(',') {
            s.split(',')
                .map(|t| t.trim().parse::<i64>().map_err(|_| err()))
                .collect::<Result<_, _>>()?
        } else {
            let mut out = Vec::new();
            let mut bar = false;
            for c in s.chars() {
                if c == '-' {
                    if bar {
                        return Err(err());
                    }
                    bar = true;
                } else {
                    let d = c.to_digit(10).ok_or_else(err)? as i64;
                    out.push(if bar { -d } else { d });
                    bar = false;
                }
            }
            if bar {
                return Err(err());
            }
            out
        };
        Self::new(images, Parity::None)
    }
}

impl fmt::Display for SignedPermutation {
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

impl fmt::Debug for SignedPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SignedPermutation({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms_agree() {
        let a: SignedPermutation = "2,-3,1,-4".parse().unwrap();
        let b: SignedPermutation = "2-31-4".parse().unwrap();
        assert_eq!(a, b);
        assert_eq!(a.at(-2), 3);
        assert_eq!(a.to_string(), "2-31-4");
    }

    #[test]
    fn type_d_parity() {
        let a: SignedPermutation = "-21".parse().unwrap();
        assert!(a.with_parity(Parity::Even).is_err());
        let b: SignedPermutation = "-2-1".parse().unwrap();
        assert!(b.with_parity(Parity::Even).is_ok());
    }

    #[test]
    fn rejects_bad_input() {
        assert!("1-1".parse::<SignedPermutation>().is_err());
        assert!("12-".parse::<SignedPermutation>().is_err());
        assert!("--1".parse::<SignedPermutation>().is_err());
    }
}
