//! Exact scalar arithmetic: arbitrary-precision rationals and prime fields.
//!
//! Every computation in this crate runs over one of these two coefficient
//! fields; there is no floating point anywhere.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The coefficient field of a job: the rationals or `F_p` for a prime `p`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(tag = "type")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarError {
    #[error("characteristic {0} is not prime")]
    NonPrimeCharacteristic(u64),
    #[error("cannot parse {text:?} as an element of {field}")]
    Parse { field: FieldSpec, text: String },
    #[error("division by zero")]
    DivisionByZero,
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F{p}"),
        }
    }
}

impl FieldSpec {
    pub fn validate(&self) -> Result<(), ScalarError> {
        match *self {
            FieldSpec::Rationals => Ok(()),
            FieldSpec::Prime { p } if is_prime_u64(p) => Ok(()),
            FieldSpec::Prime { p } => Err(ScalarError::NonPrimeCharacteristic(p)),
        }
    }

    pub fn is_rational(&self) -> bool {
        matches!(self, FieldSpec::Rationals)
    }

    pub fn zero(&self) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::zero()),
            FieldSpec::Prime { p } => Scalar::Mod { v: 0, p },
        }
    }

    pub fn one(&self) -> Scalar {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Scalar {
        match *self {
            FieldSpec::Rationals => Scalar::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime { p } => {
                let r = v.rem_euclid(p as i64) as u64;
                Scalar::Mod { v: r % p, p }
            }
        }
    }

    /// Parses an exact scalar: `"a"` or `"a/b"` over the rationals, an
    /// integer residue (possibly negative) over a prime field.
    pub fn parse(&self, text: &str) -> Result<Scalar, ScalarError> {
        let bad = || ScalarError::Parse { field: *self, text: text.to_owned() };
        let text = text.trim();
        match *self {
            FieldSpec::Rationals => {
                if let Some((n, d)) = text.split_once('/') {
                    let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
                    let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
                    if d.is_zero() {
                        return Err(bad());
                    }
                    Ok(Scalar::Rat(BigRational::new(n, d)))
                } else {
                    let n = BigInt::from_str(text).map_err(|_| bad())?;
                    Ok(Scalar::Rat(BigRational::from_integer(n)))
                }
            }
            FieldSpec::Prime { p } => {
                let n = BigInt::from_str(text).map_err(|_| bad())?;
                let m = BigInt::from(p);
                let r = ((n % &m) + &m) % &m;
                let (_, digits) = r.to_u64_digits();
                Ok(Scalar::Mod { v: digits.first().copied().unwrap_or(0), p })
            }
        }
    }
}

/// An element of the active coefficient field.
///
/// Prime-field elements carry their modulus; mixing moduli is a programming
/// error and panics.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub enum Scalar {
    Rat(BigRational),
    Mod { v: u64, p: u64 },
}

impl Scalar {
    pub fn field(&self) -> FieldSpec {
        match self {
            Scalar::Rat(_) => FieldSpec::Rationals,
            Scalar::Mod { p, .. } => FieldSpec::Prime { p: *p },
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_zero(),
            Scalar::Mod { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rat(r) => r.is_one(),
            Scalar::Mod { v, .. } => *v == 1,
        }
    }

    pub fn inv(&self) -> Result<Scalar, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rat(r) => Scalar::Rat(r.recip()),
            Scalar::Mod { v, p } => Scalar::Mod { v: mod_inv(*v, *p), p: *p },
        })
    }

    pub fn div(&self, rhs: &Scalar) -> Result<Scalar, ScalarError> {
        Ok(self * &rhs.inv()?)
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rat(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Mod { v, .. } => write!(f, "{v}"),
        }
    }
}

macro_rules! scalar_binop {
    ($trait:ident, $method:ident, $ratop:tt, $modop:expr) => {
        impl $trait for &Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                match (self, rhs) {
                    (Scalar::Rat(a), Scalar::Rat(b)) => Scalar::Rat(a $ratop b),
                    (Scalar::Mod { v: a, p }, Scalar::Mod { v: b, p: q }) => {
                        assert_eq!(p, q, "scalar arithmetic across distinct prime fields");
                        Scalar::Mod { v: $modop(*a, *b, *p), p: *p }
                    }
                    _ => panic!("scalar arithmetic across distinct fields"),
                }
            }
        }
        impl $trait for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
    };
}

scalar_binop!(Add, add, +, |a: u64, b: u64, p: u64| ((a as u128 + b as u128) % p as u128) as u64);
scalar_binop!(Sub, sub, -, |a: u64, b: u64, p: u64| ((a as u128 + p as u128 - b as u128) % p as u128) as u64);
scalar_binop!(Mul, mul, *, |a: u64, b: u64, p: u64| ((a as u128 * b as u128) % p as u128) as u64);

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rat(a) => Scalar::Rat(-a),
            Scalar::Mod { v, p } => Scalar::Mod { v: if *v == 0 { 0 } else { p - v }, p: *p },
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

fn mod_pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc: u64 = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = ((acc as u128 * base as u128) % p as u128) as u64;
        }
        base = ((base as u128 * base as u128) % p as u128) as u64;
        exp >>= 1;
    }
    acc
}

fn mod_inv(v: u64, p: u64) -> u64 {
    // p prime, v != 0: Fermat.
    mod_pow(v, p - 2, p)
}

/// Deterministic Miller-Rabin over the full u64 range.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for q in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == q {
            return true;
        }
        if n.is_multiple_of(q) {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = ((x as u128 * x as u128) % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const F5: FieldSpec = FieldSpec::Prime { p: 5 };

    #[test]
    fn primality() {
        assert!(FieldSpec::Prime { p: 1009 }.validate().is_ok());
        assert!(FieldSpec::Prime { p: 2 }.validate().is_ok());
        assert_eq!(
            FieldSpec::Prime { p: 1 }.validate(),
            Err(ScalarError::NonPrimeCharacteristic(1))
        );
        assert!(FieldSpec::Prime { p: 1000 }.validate().is_err());
        assert!(is_prime_u64((1 << 61) - 1));
        assert!(!is_prime_u64(3215031751)); // strong pseudoprime to bases 2,3,5,7
    }

    #[test]
    fn parse_and_display() {
        let q = FieldSpec::Rationals;
        assert_eq!(q.parse("3/2").unwrap().to_string(), "3/2");
        assert_eq!(q.parse("-4/2").unwrap().to_string(), "-2");
        assert!(q.parse("1/0").is_err());
        assert_eq!(F5.parse("-1").unwrap(), F5.from_i64(4));
        assert_eq!(F5.parse("12").unwrap(), F5.from_i64(2));
        assert!(F5.parse("x").is_err());
    }

    #[test]
    fn prime_field_arithmetic() {
        let a = F5.from_i64(3);
        let b = F5.from_i64(4);
        assert_eq!(&a + &b, F5.from_i64(2));
        assert_eq!(&a - &b, F5.from_i64(4));
        assert_eq!(&a * &b, F5.from_i64(2));
        assert_eq!(a.inv().unwrap(), F5.from_i64(2));
        assert!(F5.zero().inv().is_err());
    }

    proptest! {
        // (a/b) * (b/a) = 1 for nonzero rationals.
        #[test]
        fn rational_inverse_exact(n in -10_000i64..10_000, d in 1i64..10_000) {
            prop_assume!(n != 0);
            let q = FieldSpec::Rationals;
            let a = Scalar::Rat(BigRational::new(BigInt::from(n), BigInt::from(d)));
            let prod = &a * &a.inv().unwrap();
            prop_assert_eq!(prod, q.one());
        }

        #[test]
        fn mod_field_inverse(v in 1u64..1009) {
            let f = FieldSpec::Prime { p: 1009 };
            let a = Scalar::Mod { v, p: 1009 };
            prop_assert_eq!(&a * &a.inv().unwrap(), f.one());
        }
    }
}
