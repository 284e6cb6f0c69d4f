use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// The coefficient field of an exact matrix: the rationals, or a prime
/// field GF(p).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FieldSpec {
    Rational,
    Prime(u64),
}

impl FieldSpec {
    pub fn parse(s: &str) -> Result<Self> {
        if s == "Q" {
            return Ok(FieldSpec::Rational);
        }
        if let Some(body) = s.strip_prefix("GF(").and_then(|rest| rest.strip_suffix(')')) {
            let p: u64 = body
                .parse()
                .map_err(|_| Error::Format { what: "matrix", detail: format!("bad field tag `{s}`") })?;
            check_prime(p)?;
            return Ok(FieldSpec::Prime(p));
        }
        Err(Error::Format { what: "matrix", detail: format!("unknown field tag `{s}`, expected \"Q\" or \"GF(p)\"") })
    }
}

impl std::fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FieldSpec::Rational => write!(f, "Q"),
            FieldSpec::Prime(p) => write!(f, "GF({p})"),
        }
    }
}

pub fn check_prime(p: u64) -> Result<()> {
    if p < 2 {
        return Err(Error::NotPrime(p));
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return Err(Error::NotPrime(p));
        }
        d += 1;
    }
    Ok(())
}

/// Minimal scalar interface for exact Gaussian elimination.
pub(crate) trait Scalar: Clone + PartialEq {
    fn is_zero(&self) -> bool;
    /// `self - factor * other`
    fn sub_mul(&self, factor: &Self, other: &Self) -> Self;
    /// `self / other`, `other` nonzero
    fn div(&self, other: &Self) -> Self;
}

impl Scalar for BigRational {
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn sub_mul(&self, factor: &Self, other: &Self) -> Self {
        self - factor * other
    }

    fn div(&self, other: &Self) -> Self {
        self / other
    }
}

/// A residue mod `p`, carrying its modulus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Fp {
    pub value: u64,
    pub p: u64,
}

impl Fp {
    pub fn new(value: u64, p: u64) -> Self {
        Fp { value: value % p, p }
    }

    fn mul(self, other: Fp) -> Fp {
        debug_assert_eq!(self.p, other.p);
        Fp { value: ((self.value as u128 * other.value as u128) % self.p as u128) as u64, p: self.p }
    }

    fn inverse(self) -> Fp {
        // Fermat: p is prime and self is nonzero.
        debug_assert_ne!(self.value, 0);
        let (mut base, mut exp, mut acc) = (self, self.p - 2, Fp { value: 1, p: self.p });
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            exp >>= 1;
        }
        acc
    }
}

impl Scalar for Fp {
    fn is_zero(&self) -> bool {
        self.value == 0
    }

    fn sub_mul(&self, factor: &Self, other: &Self) -> Self {
        let prod = factor.mul(*other);
        Fp { value: (self.value + self.p - prod.value) % self.p, p: self.p }
    }

    fn div(&self, other: &Self) -> Self {
        self.mul(other.inverse())
    }
}

/// Rank of a column-major matrix by exact Gaussian elimination.
pub(crate) fn column_rank<T: Scalar>(columns: &mut Vec<Vec<T>>, rows: usize) -> u32 {
    let mut rank = 0usize;
    let mut used = vec![false; rows];
    for col in columns.iter_mut() {
        debug_assert_eq!(col.len(), rows);
    }
    for c in 0..columns.len() {
        // find a pivot row not yet used
        let Some(pivot) = (0..rows).find(|&r| !used[r] && !columns[c][r].is_zero()) else {
            continue;
        };
        used[pivot] = true;
        rank += 1;
        let (head, tail) = columns.split_at_mut(c + 1);
        let pivot_col = &head[c];
        for other in tail.iter_mut() {
            if other[pivot].is_zero() {
                continue;
            }
            let factor = other[pivot].div(&pivot_col[pivot]);
            for r in 0..rows {
                other[r] = other[r].sub_mul(&factor, &pivot_col[r]);
            }
        }
    }
    rank as u32
}

/// Parse a decimal integer or `num/den` fraction into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::Format { what: "matrix", detail: format!("bad rational entry `{s}`") };
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| bad())?;
    let den: BigInt = den.trim().parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

/// Render a rational the way `parse_rational` reads it back.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else if x.denom().is_negative() {
        format!("{}/{}", -x.numer(), -x.denom())
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
