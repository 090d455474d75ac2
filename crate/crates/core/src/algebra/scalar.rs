//! Field scalars: arbitrary-precision rationals and prime fields `F_p`
//! with `p < 2^31`.
//!
//! Rationals are kept in lowest terms with positive denominator (the
//! `num-rational` invariant); `F_p` values are canonical representatives
//! in `0..p`. Mixing scalars from different fields is a programming
//! error and panics; user-triggerable mismatches are caught earlier, at
//! ring construction time.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

use crate::error::{AlgebraError, Result};

/// Which coefficient field a ring works over.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FieldKind {
    /// The rational numbers.
    Q,
    /// The prime field with the given number of elements.
    Fp(u32),
}

impl FieldKind {
    /// Validates that `p` names a prime field we support.
    pub fn prime_field(p: u64) -> Result<FieldKind> {
        if p < 2 || p >= (1 << 31) || !is_prime(p) {
            return Err(AlgebraError::NotPrime(p));
        }
        Ok(FieldKind::Fp(p as u32))
    }
}

impl fmt::Display for FieldKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FieldKind::Q => write!(f, "Q"),
            FieldKind::Fp(p) => write!(f, "F{p}"),
        }
    }
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

/// An exact field element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Scalar {
    Q(BigRational),
    Fp { p: u32, v: u64 },
}

impl Scalar {
    pub fn kind(&self) -> FieldKind {
        match self {
            Scalar::Q(_) => FieldKind::Q,
            Scalar::Fp { p, .. } => FieldKind::Fp(*p),
        }
    }

    pub fn zero(kind: FieldKind) -> Scalar {
        Scalar::from_i64(kind, 0)
    }

    pub fn one(kind: FieldKind) -> Scalar {
        Scalar::from_i64(kind, 1)
    }

    pub fn from_i64(kind: FieldKind, n: i64) -> Scalar {
        match kind {
            FieldKind::Q => Scalar::Q(BigRational::from(BigInt::from(n))),
            FieldKind::Fp(p) => {
                let m = n.rem_euclid(p as i64) as u64;
                Scalar::Fp { p, v: m }
            }
        }
    }

    /// Builds `num/den` in the given field. In `F_p` the denominator is
    /// inverted mod `p`; a denominator divisible by `p` is an error.
    pub fn from_ratio(kind: FieldKind, num: i64, den: u64) -> Result<Scalar> {
        if den == 0 {
            return Err(AlgebraError::DivisionByZero);
        }
        match kind {
            FieldKind::Q => Ok(Scalar::Q(BigRational::new(
                BigInt::from(num),
                BigInt::from(den),
            ))),
            FieldKind::Fp(p) => {
                let d = den % p as u64;
                if d == 0 {
                    return Err(AlgebraError::DivisionByZero);
                }
                let n = num.rem_euclid(p as i64) as u64;
                let inv = mod_inverse(d, p as u64).ok_or(AlgebraError::DivisionByZero)?;
                Ok(Scalar::Fp {
                    p,
                    v: n * inv % p as u64,
                })
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_zero(),
            Scalar::Fp { v, .. } => *v == 0,
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Q(r) => r.is_one(),
            Scalar::Fp { v, .. } => *v == 1,
        }
    }

    pub fn neg(&self) -> Scalar {
        match self {
            Scalar::Q(r) => Scalar::Q(-r),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: if *v == 0 { 0 } else { *p as u64 - *v },
            },
        }
    }

    pub fn add(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a + b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp {
                    p: *p,
                    v: (a + b) % *p as u64,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn sub(&self, other: &Scalar) -> Scalar {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Scalar) -> Scalar {
        match (self, other) {
            (Scalar::Q(a), Scalar::Q(b)) => Scalar::Q(a * b),
            (Scalar::Fp { p, v: a }, Scalar::Fp { p: q, v: b }) => {
                assert_eq!(p, q, "scalar field mismatch");
                Scalar::Fp {
                    p: *p,
                    v: a * b % *p as u64,
                }
            }
            _ => panic!("scalar field mismatch"),
        }
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(AlgebraError::DivisionByZero);
        }
        Ok(match self {
            Scalar::Q(r) => Scalar::Q(r.recip()),
            Scalar::Fp { p, v } => Scalar::Fp {
                p: *p,
                v: mod_inverse(*v, *p as u64).expect("nonzero element of a prime field"),
            },
        })
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self.mul(&other.inv()?))
    }

    /// Parses an integer or `num/den` literal.
    pub fn parse(kind: FieldKind, text: &str) -> Result<Scalar> {
        let err = || AlgebraError::Other(format!("bad scalar literal: {text}"));
        let (sign, rest) = match text.strip_prefix('-') {
            Some(r) => (-1i64, r),
            None => (1i64, text),
        };
        if let Some((n, d)) = rest.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| err())?;
            let d: u64 = d.trim().parse().map_err(|_| err())?;
            Scalar::from_ratio(kind, sign * n, d)
        } else {
            let n: i64 = rest.trim().parse().map_err(|_| err())?;
            Ok(Scalar::from_i64(kind, sign * n))
        }
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Q(r) => {
                if r.denom().is_one() {
                    write!(f, "{}", r.numer())
                } else {
                    write!(f, "{}/{}", r.numer(), r.denom())
                }
            }
            Scalar::Fp { v, .. } => write!(f, "{v}"),
        }
    }
}

fn mod_inverse(a: u64, p: u64) -> Option<u64> {
    // Extended Euclid on (a, p); p is prime so any nonzero a works.
    let (mut r0, mut r1) = (p as i128, (a % p) as i128);
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return None;
    }
    Some(t0.rem_euclid(p as i128) as u64)
}

/// True when the rational scalar is negative; used only for printing.
pub fn is_display_negative(s: &Scalar) -> bool {
    match s {
        Scalar::Q(r) => r.is_negative(),
        Scalar::Fp { .. } => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_arithmetic_is_reduced() {
        let k = FieldKind::Q;
        let a = Scalar::from_ratio(k, 2, 4).unwrap();
        let b = Scalar::from_ratio(k, 1, 2).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.add(&b), Scalar::from_i64(k, 1));
        assert_eq!(a.to_string(), "1/2");
        assert_eq!(a.sub(&b).to_string(), "0");
    }

    #[test]
    fn prime_field_inverse() {
        let k = FieldKind::prime_field(101).unwrap();
        let a = Scalar::from_i64(k, 37);
        let inv = a.inv().unwrap();
        assert!(a.mul(&inv).is_one());
        assert_eq!(Scalar::from_i64(k, -1).to_string(), "100");
    }

    #[test]
    fn rejects_non_primes() {
        assert!(FieldKind::prime_field(1).is_err());
        assert!(FieldKind::prime_field(91).is_err());
        assert!(FieldKind::prime_field(1 << 32).is_err());
        assert!(FieldKind::prime_field(2147483647).is_ok());
    }

    #[test]
    fn fp_division_by_p_multiple_fails() {
        let k = FieldKind::prime_field(7).unwrap();
        assert!(Scalar::from_ratio(k, 1, 14).is_err());
        assert_eq!(Scalar::from_ratio(k, 3, 2).unwrap().to_string(), "5");
    }

    #[test]
    fn scalar_parsing() {
        let k = FieldKind::Q;
        assert_eq!(
            Scalar::parse(k, "-3/2").unwrap(),
            Scalar::from_ratio(k, -3, 2).unwrap()
        );
        assert_eq!(Scalar::parse(k, "7").unwrap(), Scalar::from_i64(k, 7));
        assert!(Scalar::parse(k, "x").is_err());
    }
}
