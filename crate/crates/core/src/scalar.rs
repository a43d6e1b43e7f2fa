//! Exact scalars.
//!
//! Every coefficient in the engine is an arbitrary-precision rational. The
//! generalized-pair analysis additionally works with polynomials in one formal
//! parameter `c`; those live in [`Poly`] and are only accepted where a form is
//! generic over [`Coeff`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::ParseScalarError;

/// Exact rational number, always kept in lowest terms with positive denominator.
pub type Scalar = BigRational;

/// Coefficient ring for exterior forms.
pub trait Coeff:
    Clone
    + fmt::Debug
    + PartialEq
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
{
    fn from_scalar(s: &Scalar) -> Self;
}

impl Coeff for Scalar {
    fn from_scalar(s: &Scalar) -> Self {
        s.clone()
    }
}

pub fn int(n: i64) -> Scalar {
    Scalar::from_integer(BigInt::from(n))
}

pub fn ratio(p: i64, q: i64) -> Scalar {
    Scalar::new(BigInt::from(p), BigInt::from(q))
}

/// Sign of a scalar as -1, 0 or 1.
pub fn sign(s: &Scalar) -> i8 {
    if s.is_zero() {
        0
    } else if s.is_negative() {
        -1
    } else {
        1
    }
}

/// Parses `"p"` or `"p/q"` in base 10. Decimal points, exponents and zero
/// denominators are rejected.
pub fn parse_scalar(text: &str) -> Result<Scalar, ParseScalarError> {
    let bad = |reason: &str| ParseScalarError {
        input: text.to_string(),
        reason: reason.to_string(),
    };
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let num = parse_integer(num).ok_or_else(|| bad("numerator is not a base-10 integer"))?;
    let den = match den {
        Some(d) => {
            let d = parse_unsigned(d).ok_or_else(|| bad("denominator is not a positive base-10 integer"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            d
        }
        None => BigInt::one(),
    };
    Ok(Scalar::new(num, den))
}

fn parse_integer(s: &str) -> Option<BigInt> {
    let digits = s.strip_prefix('-').unwrap_or(s);
    let value = parse_unsigned(digits)?;
    Some(if s.starts_with('-') { -value } else { value })
}

fn parse_unsigned(s: &str) -> Option<BigInt> {
    if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
        return None;
    }
    BigInt::from_str(s).ok()
}

/// Canonical text form: `"p"` for integers, `"p/q"` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    if s.denom().is_one() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

/// Exact square root when `s` is the square of a rational.
pub fn rational_sqrt(s: &Scalar) -> Option<Scalar> {
    if s.is_negative() {
        return None;
    }
    let n = s.numer().sqrt();
    let d = s.denom().sqrt();
    if &(&n * &n) == s.numer() && &(&d * &d) == s.denom() {
        Some(Scalar::new(n, d))
    } else {
        None
    }
}

/// Polynomial in the formal parameter `c` with rational coefficients.
///
/// `coeffs[i]` multiplies `c^i`; trailing zeros are always trimmed so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    coeffs: Vec<Scalar>,
}

impl Poly {
    pub fn new(coeffs: Vec<Scalar>) -> Self {
        let mut p = Poly { coeffs };
        p.trim();
        p
    }

    /// The parameter `c` itself.
    pub fn var() -> Self {
        Poly::new(vec![Scalar::zero(), Scalar::one()])
    }

    pub fn constant(s: Scalar) -> Self {
        Poly::new(vec![s])
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Scalar {
        self.coeffs.get(i).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn coeffs(&self) -> &[Scalar] {
        &self.coeffs
    }

    pub fn eval(&self, c: &Scalar) -> Scalar {
        self.coeffs
            .iter()
            .rev()
            .fold(Scalar::zero(), |acc, a| acc * c + a)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let neg = a.is_negative();
            let mag = a.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            }
            first = false;
            let body = format_scalar(&mag);
            match i {
                0 => write!(f, "{body}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{body}")?;
                    }
                    write!(f, "c")?;
                    if i > 1 {
                        write!(f, "^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Zero for Poly {
    fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Poly {
    fn one() -> Self {
        Poly::constant(Scalar::one())
    }
}

impl Add for Poly {
    type Output = Poly;
    fn add(self, rhs: Poly) -> Poly {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for Poly {
    type Output = Poly;
    fn sub(self, rhs: Poly) -> Poly {
        self + (-rhs)
    }
}

impl Neg for Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            coeffs: self.coeffs.into_iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for Poly {
    type Output = Poly;
    fn mul(self, rhs: Poly) -> Poly {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Scalar::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl Coeff for Poly {
    fn from_scalar(s: &Scalar) -> Self {
        Poly::constant(s.clone())
    }
}
