//! Exact scalars: arbitrary-precision rationals or residues modulo an odd
//! prime.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::AlgebraError;

/// Coefficient field. Characteristic two is not representable.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "String", try_from = "String")]
pub enum Field {
    Rational,
    Prime(u64),
}

impl Field {
    pub fn prime(p: u64) -> Result<Field, AlgebraError> {
        if p < 3 || !is_prime(p) {
            return Err(AlgebraError::InvalidModulus(p));
        }
        Ok(Field::Prime(p))
    }

    pub fn characteristic(self) -> u64 {
        match self {
            Field::Rational => 0,
            Field::Prime(p) => p,
        }
    }

    pub fn zero(self) -> FieldScalar {
        self.from_i64(0)
    }

    pub fn one(self) -> FieldScalar {
        self.from_i64(1)
    }

    pub fn from_i64(self, v: i64) -> FieldScalar {
        match self {
            Field::Rational => FieldScalar::Rational(BigRational::from_integer(BigInt::from(v))),
            Field::Prime(p) => FieldScalar::Residue { value: v.rem_euclid(p as i64) as u64, modulus: p },
        }
    }

    /// `num / den` in this field. `den` must be nonzero in the field.
    pub fn ratio(self, num: i64, den: i64) -> Option<FieldScalar> {
        match self {
            Field::Rational => (den != 0).then(|| {
                FieldScalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
            }),
            Field::Prime(p) => {
                let d = den.rem_euclid(p as i64) as u64;
                (d != 0).then(|| {
                    let n = num.rem_euclid(p as i64) as u64;
                    FieldScalar::Residue { value: mul_mod(n, pow_mod(d, p - 2, p), p), modulus: p }
                })
            }
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Rational => f.write_str("rational"),
            Field::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Field {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim() {
            "rational" | "Q" | "q" => Ok(Field::Rational),
            other => {
                let digits = other
                    .strip_prefix("fp:")
                    .ok_or_else(|| format!("expected `rational` or `fp:P`, got `{other}`"))?;
                let p: u64 = digits.parse().map_err(|e| format!("bad prime `{digits}`: {e}"))?;
                Field::prime(p).map_err(|e| e.to_string())
            }
        }
    }
}

impl From<Field> for String {
    fn from(f: Field) -> String {
        f.to_string()
    }
}

impl TryFrom<String> for Field {
    type Error = String;

    fn try_from(s: String) -> Result<Self, Self::Error> {
        s.parse()
    }
}

/// A field element. Rationals are kept in lowest terms with a positive
/// denominator (maintained by `BigRational`); residues lie in `0..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FieldScalar {
    Rational(BigRational),
    Residue { value: u64, modulus: u64 },
}

impl FieldScalar {
    pub fn field(&self) -> Field {
        match self {
            FieldScalar::Rational(_) => Field::Rational,
            FieldScalar::Residue { modulus, .. } => Field::Prime(*modulus),
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_zero(),
            FieldScalar::Residue { value, .. } => *value == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            FieldScalar::Rational(r) => r.is_one(),
            FieldScalar::Residue { value, .. } => *value == 1,
        }
    }

    /// The value as a machine integer, when it is an integer that fits.
    /// Residues report their canonical representative.
    pub fn as_small_integer(&self) -> Option<i64> {
        match self {
            FieldScalar::Rational(r) if r.is_integer() => r.numer().to_i64(),
            FieldScalar::Rational(_) => None,
            FieldScalar::Residue { value, .. } => i64::try_from(*value).ok(),
        }
    }

    pub fn add(&self, other: &FieldScalar) -> FieldScalar {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a + b),
            (FieldScalar::Residue { value: a, modulus: p }, FieldScalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                FieldScalar::Residue { value: ((*a as u128 + *b as u128) % *p as u128) as u64, modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn neg(&self) -> FieldScalar {
        match self {
            FieldScalar::Rational(a) => FieldScalar::Rational(-a),
            FieldScalar::Residue { value, modulus } => {
                FieldScalar::Residue { value: (modulus - value) % modulus, modulus: *modulus }
            }
        }
    }

    pub fn sub(&self, other: &FieldScalar) -> FieldScalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &FieldScalar) -> FieldScalar {
        match (self, other) {
            (FieldScalar::Rational(a), FieldScalar::Rational(b)) => FieldScalar::Rational(a * b),
            (FieldScalar::Residue { value: a, modulus: p }, FieldScalar::Residue { value: b, modulus: q })
                if p == q =>
            {
                FieldScalar::Residue { value: mul_mod(*a, *b, *p), modulus: *p }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn scale_i64(&self, k: i64) -> FieldScalar {
        self.mul(&self.field().from_i64(k))
    }
}

impl fmt::Display for FieldScalar {
    /// `p/q` (or `p` when the denominator is one) for rationals, `k mod p`
    /// for residues.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldScalar::Rational(r) => {
                if r.is_integer() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            FieldScalar::Residue { value, modulus } => write!(f, "{value} mod {modulus}"),
        }
    }
}

impl FieldScalar {
    /// Parse the output of `Display` back into a scalar of `field`.
    pub fn parse(field: Field, s: &str) -> Option<FieldScalar> {
        match field {
            Field::Rational => {
                let (num, den) = match s.split_once('/') {
                    Some((n, d)) => (n.trim().parse::<BigInt>().ok()?, d.trim().parse::<BigInt>().ok()?),
                    None => (s.trim().parse::<BigInt>().ok()?, BigInt::one()),
                };
                if den.is_zero() {
                    return None;
                }
                let r = BigRational::new(num, den);
                debug_assert!(r.denom().is_positive());
                Some(FieldScalar::Rational(r))
            }
            Field::Prime(p) => {
                let (v, m) = s.split_once(" mod ")?;
                let m: u64 = m.trim().parse().ok()?;
                let v: u64 = v.trim().parse().ok()?;
                (m == p && v < p).then_some(FieldScalar::Residue { value: v, modulus: p })
            }
        }
    }
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, p);
        }
        base = mul_mod(base, base, p);
        exp >>= 1;
    }
    acc
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}
