//! Coefficient fields: prime fields `F_p` with word-sized `p`, and the rationals.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::FieldError;

/// Largest admissible modulus. Products of two residues must fit in a `u64`.
pub const MAX_PRIME: u64 = u32::MAX as u64;

/// The coefficient field of a computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Field {
    Prime(u64),
    Rationals,
}

/// A field element in canonical form.
///
/// Residues are always in `[0, p)`; fractions are always reduced with a positive
/// denominator, so structural equality is equality of field elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Residue(u64),
    Fraction(BigRational),
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p % 2 == 0 {
        return p == 2;
    }
    let mut d = 3u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, FieldError> {
        if p > MAX_PRIME {
            return Err(FieldError::ModulusTooLarge(p));
        }
        if !is_prime(p) {
            return Err(FieldError::NotPrime(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(&self) -> u64 {
        match self {
            Field::Prime(p) => *p,
            Field::Rationals => 0,
        }
    }

    pub fn zero(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Residue(0),
            Field::Rationals => Scalar::Fraction(BigRational::zero()),
        }
    }

    pub fn one(&self) -> Scalar {
        match self {
            Field::Prime(_) => Scalar::Residue(1),
            Field::Rationals => Scalar::Fraction(BigRational::one()),
        }
    }

    pub fn from_i64(&self, n: i64) -> Scalar {
        match self {
            Field::Prime(p) => Scalar::Residue(n.rem_euclid(*p as i64) as u64),
            Field::Rationals => Scalar::Fraction(BigRational::from_integer(BigInt::from(n))),
        }
    }

    /// Maps `num/den` into the field; `None` when `den` vanishes in it.
    pub fn from_ratio(&self, num: &BigInt, den: &BigInt) -> Option<Scalar> {
        match self {
            Field::Prime(p) => {
                let m = BigInt::from(*p);
                let n = num.mod_floor(&m).to_u64()?;
                let d = den.mod_floor(&m).to_u64()?;
                if d == 0 {
                    return None;
                }
                let inv = self.inv(&Scalar::Residue(d))?;
                Some(self.mul(&Scalar::Residue(n), &inv))
            }
            Field::Rationals => {
                if den.is_zero() {
                    None
                } else {
                    Some(Scalar::Fraction(BigRational::new(num.clone(), den.clone())))
                }
            }
        }
    }

    /// Parses `"7"`, `"-3"` or `"a/b"` into the field.
    pub fn parse_scalar(&self, text: &str) -> Result<Scalar, FieldError> {
        let bad = || FieldError::BadScalar(text.to_string());
        let t = text.trim();
        let (num, den) = match t.split_once('/') {
            Some((n, d)) => (
                BigInt::from_str(n.trim()).map_err(|_| bad())?,
                BigInt::from_str(d.trim()).map_err(|_| bad())?,
            ),
            None => (BigInt::from_str(t).map_err(|_| bad())?, BigInt::one()),
        };
        self.from_ratio(&num, &den).ok_or_else(|| FieldError::DenominatorVanishes(text.to_string()))
    }

    pub fn format_scalar(&self, a: &Scalar) -> String {
        match a {
            Scalar::Residue(v) => v.to_string(),
            Scalar::Fraction(q) => {
                if q.is_integer() {
                    q.numer().to_string()
                } else {
                    format!("{}/{}", q.numer(), q.denom())
                }
            }
        }
    }

    /// The scalar as a small signed integer, when it is one. Residues are read
    /// as least nonnegative representatives.
    pub fn to_i64(&self, a: &Scalar) -> Option<i64> {
        match a {
            Scalar::Residue(v) => i64::try_from(*v).ok(),
            Scalar::Fraction(q) => {
                if q.is_integer() {
                    q.numer().to_i64()
                } else {
                    None
                }
            }
        }
    }

    pub fn is_zero(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(v) => *v == 0,
            Scalar::Fraction(q) => q.is_zero(),
        }
    }

    pub fn is_one(&self, a: &Scalar) -> bool {
        match a {
            Scalar::Residue(v) => *v == 1,
            Scalar::Fraction(q) => q.is_one(),
        }
    }

    pub fn add(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => {
                let s = x + y;
                Scalar::Residue(if s >= *p { s - p } else { s })
            }
            (Field::Rationals, Scalar::Fraction(x), Scalar::Fraction(y)) => Scalar::Fraction(x + y),
            _ => mismatch(self, a, b),
        }
    }

    pub fn sub(&self, a: &Scalar, b: &Scalar) -> Scalar {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &Scalar) -> Scalar {
        match (self, a) {
            (Field::Prime(p), Scalar::Residue(x)) => Scalar::Residue(if *x == 0 { 0 } else { p - x }),
            (Field::Rationals, Scalar::Fraction(x)) => Scalar::Fraction(-x),
            _ => mismatch(self, a, a),
        }
    }

    pub fn mul(&self, a: &Scalar, b: &Scalar) -> Scalar {
        match (self, a, b) {
            (Field::Prime(p), Scalar::Residue(x), Scalar::Residue(y)) => Scalar::Residue(x * y % p),
            (Field::Rationals, Scalar::Fraction(x), Scalar::Fraction(y)) => Scalar::Fraction(x * y),
            _ => mismatch(self, a, b),
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: &Scalar) -> Option<Scalar> {
        if self.is_zero(a) {
            return None;
        }
        match (self, a) {
            (Field::Prime(p), Scalar::Residue(x)) => {
                // extended Euclid on (x, p)
                let (mut r0, mut r1) = (*p as i64, *x as i64);
                let (mut t0, mut t1) = (0i64, 1i64);
                while r1 != 0 {
                    let q = r0 / r1;
                    (r0, r1) = (r1, r0 - q * r1);
                    (t0, t1) = (t1, t0 - q * t1);
                }
                debug_assert_eq!(r0, 1);
                Some(Scalar::Residue(t0.rem_euclid(*p as i64) as u64))
            }
            (Field::Rationals, Scalar::Fraction(q)) => Some(Scalar::Fraction(q.recip())),
            _ => mismatch(self, a, a),
        }
    }

    pub fn div(&self, a: &Scalar, b: &Scalar) -> Option<Scalar> {
        self.inv(b).map(|bi| self.mul(a, &bi))
    }

    /// `(-1)^k` in the field.
    pub fn sign(&self, k: i64) -> Scalar {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            self.from_i64(-1)
        }
    }

    /// Whether `a` is a legal element of this field (right variant, canonical form).
    pub fn owns(&self, a: &Scalar) -> bool {
        match (self, a) {
            (Field::Prime(p), Scalar::Residue(x)) => x < p,
            (Field::Rationals, Scalar::Fraction(q)) => q.denom().is_positive(),
            _ => false,
        }
    }
}

fn mismatch(field: &Field, a: &Scalar, b: &Scalar) -> ! {
    panic!("scalars {a:?}, {b:?} do not belong to {field}")
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Prime(p) => write!(f, "F{p}"),
            Field::Rationals => write!(f, "Q"),
        }
    }
}

impl FromStr for Field {
    type Err = FieldError;

    /// Accepts `"Q"` or `"F<p>"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Q" {
            return Ok(Field::Rationals);
        }
        let digits = t
            .strip_prefix('F')
            .ok_or_else(|| FieldError::UnknownField(s.to_string()))?;
        let p: u64 = digits
            .parse()
            .map_err(|_| FieldError::UnknownField(s.to_string()))?;
        Field::prime(p)
    }
}
