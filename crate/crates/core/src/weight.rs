//! Exact weights in the fundamental-weight (Dynkin) basis.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// A weight `λ = Σ λ_i Λ_(i)` with exact rational Dynkin labels.
///
/// Ordering is lexicographic on the labels, which fixes the index order of
/// every enumerated domain and matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Weight(Vec<Rational64>);

impl Weight {
    pub fn new(coords: Vec<Rational64>) -> Self {
        Weight(coords)
    }

    pub fn zero(rank: usize) -> Self {
        Weight(vec![Rational64::zero(); rank])
    }

    /// The fundamental weight `Λ_(i)` (0-based node index).
    pub fn fundamental(rank: usize, i: usize) -> Self {
        let mut w = Self::zero(rank);
        w.0[i] = Rational64::one();
        w
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Weight(
            coords
                .iter()
                .map(|&c| Rational64::from_integer(c))
                .collect(),
        )
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational64] {
        &self.0
    }

    pub fn coords_mut(&mut self) -> &mut [Rational64] {
        &mut self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|c| !c.is_negative())
    }

    pub fn is_dominant_integral(&self) -> bool {
        self.is_integral() && self.is_dominant()
    }

    /// Integer labels, if every label is integral.
    pub fn to_ints(&self) -> Option<Vec<i64>> {
        self.0
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    /// Least common multiple of the label denominators.
    pub fn denominator(&self) -> i64 {
        self.0.iter().fold(1, |acc, c| acc.lcm(c.denom()))
    }

    pub fn scale(&self, factor: Rational64) -> Weight {
        Weight(self.0.iter().map(|&c| c * factor).collect())
    }

    /// `self + factor * other`.
    pub fn add_scaled(&self, factor: Rational64, other: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), other.rank());
        Weight(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(&a, &b)| a + factor * b)
                .collect(),
        )
    }

    pub(crate) fn check_rank(&self, rank: usize) -> Result<()> {
        if self.rank() == rank {
            Ok(())
        } else {
            Err(Error::DimensionMismatch {
                expected: rank,
                got: self.rank(),
            })
        }
    }
}

impl Index<usize> for Weight {
    type Output = Rational64;

    fn index(&self, i: usize) -> &Rational64 {
        &self.0[i]
    }
}

impl Add for &Weight {
    type Output = Weight;

    fn add(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a + b).collect())
    }
}

impl Sub for &Weight {
    type Output = Weight;

    fn sub(self, rhs: &Weight) -> Weight {
        debug_assert_eq!(self.rank(), rhs.rank());
        Weight(self.0.iter().zip(&rhs.0).map(|(&a, &b)| a - b).collect())
    }
}

impl Neg for &Weight {
    type Output = Weight;

    fn neg(self) -> Weight {
        Weight(self.0.iter().map(|&c| -c).collect())
    }
}

impl Mul<&Weight> for Rational64 {
    type Output = Weight;

    fn mul(self, rhs: &Weight) -> Weight {
        rhs.scale(self)
    }
}

/// Formats a rational as `p` or `p/q` in lowest terms.
pub fn format_rational(r: &Rational64) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses `p` or `p/q`; the result is reduced.
pub fn parse_rational(s: &str) -> Result<Rational64> {
    let s = s.trim();
    let bad = || Error::Parse(format!("invalid rational label {s:?}"));
    match s.split_once('/') {
        None => s
            .parse::<i64>()
            .map(Rational64::from_integer)
            .map_err(|_| bad()),
        Some((p, q)) => {
            let p: i64 = p.trim().parse().map_err(|_| bad())?;
            let q: i64 = q.trim().parse().map_err(|_| bad())?;
            if q == 0 {
                return Err(bad());
            }
            Ok(Rational64::new(p, q))
        }
    }
}

impl fmt::Display for Weight {
    /// Comma-separated labels, e.g. `1/2,1/2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<String> = self.0.iter().map(format_rational).collect();
        f.write_str(&labels.join(","))
    }
}

impl fmt::Debug for Weight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({self})")
    }
}

impl FromStr for Weight {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('(').trim_end_matches(')');
        if s.trim().is_empty() {
            return Err(Error::Parse("empty weight".into()));
        }
        s.split(',')
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()
            .map(Weight)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn display_uses_reduced_fractions() {
        let w = Weight::new(vec![Rational64::new(2, 4), Rational64::from_integer(-3)]);
        assert_eq!(w.to_string(), "1/2,-3");
    }

    #[test]
    fn parse_accepts_fractions_and_parentheses() {
        let w: Weight = "(1/2, 2/4,0)".parse().unwrap();
        assert_eq!(w.to_string(), "1/2,1/2,0");
        assert!("1/0".parse::<Weight>().is_err());
        assert!("".parse::<Weight>().is_err());
        assert!("a,b".parse::<Weight>().is_err());
    }

    #[test]
    fn ordering_is_lexicographic() {
        let mut ws = [
            Weight::from_ints(&[1, 0]),
            Weight::from_ints(&[0, 2]),
            Weight::new(vec![Rational64::new(1, 2), Rational64::new(1, 2)]),
        ];
        ws.sort();
        assert_eq!(ws[0], Weight::from_ints(&[0, 2]));
        assert_eq!(ws[2], Weight::from_ints(&[1, 0]));
    }

    #[test]
    fn denominator_is_lcm() {
        let w: Weight = "1/2,1/3,1".parse().unwrap();
        assert_eq!(w.denominator(), 6);
    }
}
