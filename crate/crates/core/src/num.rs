//! Exact scalars: rationals for symplectic areas and an extended energy
//! type for validity cutoffs.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;

/// Exact rational with 128-bit numerator and denominator.
pub type Rational = Ratio<i128>;

pub fn rat(n: i128) -> Rational {
    Rational::from_integer(n)
}

pub fn rat2(n: i128, d: i128) -> Rational {
    Rational::new(n, d)
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct RationalParseError(pub String);

/// Parses `p`, `p/q` or a finite decimal such as `-4.25`.
pub fn parse_rational(s: &str) -> Result<Rational, RationalParseError> {
    let t = s.trim();
    let err = || RationalParseError(s.to_string());
    if t.is_empty() {
        return Err(err());
    }
    if let Some((p, q)) = t.split_once('/') {
        let p: i128 = p.trim().parse().map_err(|_| err())?;
        let q: i128 = q.trim().parse().map_err(|_| err())?;
        if q == 0 {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = t.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) || frac.len() > 30 {
            return Err(err());
        }
        let negative = int.starts_with('-');
        let int_part: i128 = match int.trim_start_matches(['-', '+']) {
            "" => 0,
            digits => digits.parse().map_err(|_| err())?,
        };
        let scale = 10i128.checked_pow(frac.len() as u32).ok_or_else(err)?;
        let frac_part: i128 = frac.parse().map_err(|_| err())?;
        let mag = int_part
            .checked_mul(scale)
            .and_then(|v| v.checked_add(frac_part))
            .ok_or_else(err)?;
        return Ok(Rational::new(if negative { -mag } else { mag }, scale));
    }
    t.parse::<i128>().map(rat).map_err(|_| err())
}

/// Canonical text form: `p` for integers, `p/q` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// An energy level: a rational or `+∞`.
///
/// Used both for valuations (the zero series has valuation `+∞`) and for
/// validity cutoffs (an exactly known series has cutoff `+∞`).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Energy {
    Finite(Rational),
    Infinite,
}

impl Energy {
    pub fn zero() -> Self {
        Energy::Finite(Rational::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, Energy::Finite(_))
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            Energy::Finite(r) => Some(r),
            Energy::Infinite => None,
        }
    }

    /// `value <= self`.
    pub fn admits(&self, value: &Rational) -> bool {
        match self {
            Energy::Finite(e) => value <= e,
            Energy::Infinite => true,
        }
    }

    pub fn shifted(&self, by: &Rational) -> Energy {
        match self {
            Energy::Finite(e) => Energy::Finite(e + by),
            Energy::Infinite => Energy::Infinite,
        }
    }
}

impl From<Rational> for Energy {
    fn from(r: Rational) -> Self {
        Energy::Finite(r)
    }
}

impl PartialOrd for Energy {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Energy {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Energy::Finite(a), Energy::Finite(b)) => a.cmp(b),
            (Energy::Finite(_), Energy::Infinite) => Ordering::Less,
            (Energy::Infinite, Energy::Finite(_)) => Ordering::Greater,
            (Energy::Infinite, Energy::Infinite) => Ordering::Equal,
        }
    }
}

impl Add for Energy {
    type Output = Energy;
    fn add(self, rhs: Energy) -> Energy {
        match (self, rhs) {
            (Energy::Finite(a), Energy::Finite(b)) => Energy::Finite(a + b),
            _ => Energy::Infinite,
        }
    }
}

impl<'a> Add<&'a Energy> for &'a Energy {
    type Output = Energy;
    fn add(self, rhs: &'a Energy) -> Energy {
        self.clone() + rhs.clone()
    }
}

impl fmt::Display for Energy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Energy::Finite(r) => f.write_str(&format_rational(r)),
            Energy::Infinite => f.write_str("inf"),
        }
    }
}

impl FromStr for Energy {
    type Err = RationalParseError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "inf" | "+inf" | "∞" => Ok(Energy::Infinite),
            other => parse_rational(other).map(Energy::Finite),
        }
    }
}

/// Non-negative gcd over a slice; `0` for an empty or all-zero slice.
pub fn gcd_all<I: IntoIterator<Item = i64>>(values: I) -> i64 {
    values.into_iter().fold(0i64, |acc, v| acc.gcd(&v)).abs()
}

pub(crate) fn lcm_denominators<'a, I: IntoIterator<Item = &'a Rational>>(values: I) -> i128 {
    values
        .into_iter()
        .fold(1i128, |acc, r| acc.lcm(r.denom()))
        .abs()
}
