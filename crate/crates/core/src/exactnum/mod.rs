//! Exact scalar arithmetic: big rationals and cyclotomic numbers.
//!
//! Every quantity the library computes — character values, Casimir scalars,
//! spin traces — lives in a cyclotomic field ℚ(ζ_N).  [`CycNum`] represents
//! such a value exactly as a residue modulo the N-th cyclotomic polynomial
//! with big-rational coefficients; no floating point enters any arithmetic
//! path.  Floats appear only as a read-only "shadow" for display and for
//! ordering real quantities.

mod cyclotomic;

pub use cyclotomic::{cyclotomic_poly, CycNum};

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};
use thiserror::Error;

/// Arbitrary-precision integer used throughout the crate.
pub type Int = BigInt;
/// Arbitrary-precision rational used throughout the crate.
pub type Rat = BigRational;

/// Errors raised by exact-arithmetic operations.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumError {
    #[error("division by zero cyclotomic number")]
    DivisionByZero,
    #[error("sqrt_int requires a squarefree radicand, got {0}")]
    NotSquarefree(i64),
    #[error("sqrt_int requires a nonzero radicand")]
    ZeroRadicand,
    #[error("integer too large for factorization: {0}")]
    TooLarge(String),
}

/// Shorthand constructor for a rational from two machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    Rat::new(Int::from(num), Int::from(den))
}

/// Shorthand constructor for an integral rational.
pub fn rat_int(num: i64) -> Rat {
    Rat::from_integer(Int::from(num))
}

/// Greatest common divisor of two machine integers.
pub fn gcd_u64(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd_u64(b, a % b)
    }
}

/// Least common multiple of two machine integers.
pub fn lcm_u64(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd_u64(a, b) * b
    }
}

/// Trial-division factorization of a positive machine integer.
///
/// All integers factored by this crate are tiny (root norms, Gram
/// determinants, group exponents), so trial division is more than enough.
pub fn factor_u64(mut x: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= x {
        if x % p == 0 {
            let mut e = 0;
            while x % p == 0 {
                x /= p;
                e += 1;
            }
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push((x, 1));
    }
    out
}

/// Euler totient of a machine integer.
pub fn euler_phi(n: u64) -> u64 {
    factor_u64(n)
        .into_iter()
        .map(|(p, e)| (p - 1) * p.pow(e - 1))
        .product::<u64>()
        .max(1)
}

fn bigint_to_i128(x: &Int) -> Result<i128, NumError> {
    let (sign, digits) = x.to_u64_digits();
    let mag: i128 = match digits.len() {
        0 => 0,
        1 => digits[0] as i128,
        2 => ((digits[1] as i128) << 64) | digits[0] as i128,
        _ => return Err(NumError::TooLarge(x.to_string())),
    };
    if mag < 0 {
        return Err(NumError::TooLarge(x.to_string()));
    }
    Ok(match sign {
        Sign::Minus => -mag,
        _ => mag,
    })
}

/// Decompose a positive integer as `s² · d` with `d` squarefree.
///
/// Returns `(s, d)`.
pub fn squarefree_decompose(x: &Int) -> Result<(Int, i64), NumError> {
    assert!(x.is_positive(), "squarefree_decompose needs a positive input");
    let v = bigint_to_i128(x)?;
    let v = u64::try_from(v).map_err(|_| NumError::TooLarge(x.to_string()))?;
    let mut s = 1u64;
    let mut d = 1u64;
    for (p, e) in factor_u64(v) {
        s *= p.pow(e / 2);
        if e % 2 == 1 {
            d *= p;
        }
    }
    Ok((Int::from(s), d as i64))
}

/// Decompose a nonzero rational as `s² · d` with `s` rational positive and
/// `d` a squarefree (possibly negative) machine integer: `r = s² · d`.
pub fn squarefree_decompose_rat(r: &Rat) -> Result<(Rat, i64), NumError> {
    assert!(!r.is_zero(), "squarefree_decompose_rat needs a nonzero input");
    let num = r.numer().abs();
    let den = r.denom().clone();
    // r = num·den / den², so the squarefree part of |r| is that of num·den.
    let (s, d) = squarefree_decompose(&(&num * &den))?;
    let sign = if r.is_negative() { -1 } else { 1 };
    Ok((Rat::new(s, den), sign * d))
}

/// Integer square root check: returns `Some(s)` when `x = s²`.
pub fn exact_sqrt(x: &Int) -> Option<Int> {
    if x.is_negative() {
        return None;
    }
    let s = x.sqrt();
    if &(&s * &s) == x {
        Some(s)
    } else {
        None
    }
}

/// Nonnegative rational square root, if the argument is a perfect square.
pub fn exact_sqrt_rat(x: &Rat) -> Option<Rat> {
    let n = exact_sqrt(x.numer())?;
    let d = exact_sqrt(x.denom())?;
    Some(Rat::new(n, d))
}

/// Serde helpers representing a big rational as an exact `[num, den]` pair of
/// arbitrary-precision JSON numbers.
pub mod rat_pair {
    use super::{Int, Rat};
    use serde::de::Error as DeError;
    use serde::ser::Error as SerError;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::str::FromStr;

    pub fn number_from_int(x: &Int) -> Result<serde_json::Number, String> {
        serde_json::Number::from_str(&x.to_string()).map_err(|e| e.to_string())
    }

    pub fn int_from_number(n: &serde_json::Number) -> Result<Int, String> {
        Int::from_str(&n.to_string()).map_err(|e| e.to_string())
    }

    pub fn serialize<S: Serializer>(r: &Rat, ser: S) -> Result<S::Ok, S::Error> {
        let pair = (
            number_from_int(r.numer()).map_err(S::Error::custom)?,
            number_from_int(r.denom()).map_err(S::Error::custom)?,
        );
        pair.serialize(ser)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> Result<Rat, D::Error> {
        let (num, den): (serde_json::Number, serde_json::Number) = Deserialize::deserialize(de)?;
        let num = int_from_number(&num).map_err(D::Error::custom)?;
        let den = int_from_number(&den).map_err(D::Error::custom)?;
        if den == Int::from(0) {
            return Err(D::Error::custom("rational with zero denominator"));
        }
        Ok(Rat::new(num, den))
    }
}

/// Format a rational as `p` or `p/q`.
pub fn rat_display(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_and_phi() {
        assert_eq!(factor_u64(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        assert_eq!(euler_phi(12), 4);
        assert_eq!(euler_phi(24), 8);
        assert_eq!(euler_phi(97), 96);
    }

    #[test]
    fn squarefree_decomposition() {
        let (s, d) = squarefree_decompose(&Int::from(72)).unwrap();
        assert_eq!((s, d), (Int::from(6), 2));
        let (s, d) = squarefree_decompose_rat(&rat(3, 2)).unwrap();
        // 3/2 = (1/2)² · 6
        assert_eq!((s, d), (rat(1, 2), 6));
        let (s, d) = squarefree_decompose_rat(&rat(-9, 4)).unwrap();
        assert_eq!((s, d), (rat(3, 2), -1));
    }

    #[test]
    fn exact_sqrt_detects_squares() {
        assert_eq!(exact_sqrt(&Int::from(49)), Some(Int::from(7)));
        assert_eq!(exact_sqrt(&Int::from(50)), None);
    }
}
