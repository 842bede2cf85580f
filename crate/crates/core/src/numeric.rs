//! Scalar types used for transition probabilities.
//!
//! Every walk computation is generic over [`Weight`], which is implemented for
//! `f64` (fast, approximate) and [`BigRational`] (exact). The numeric mode of a
//! computation is therefore chosen by the type parameter at the call site.

use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Sub};

use num::bigint::{BigInt, BigUint, Sign};
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

pub trait Weight:
    Clone
    + Debug
    + PartialEq
    + PartialOrd
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + AddAssign
{
    /// True when arithmetic is exact.
    const EXACT: bool;
    /// Name used in reports ("rational" or "float").
    const MODE: &'static str;

    fn from_ratio(num: u64, den: u64) -> Self;
    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self;
    fn from_rational(r: &BigRational) -> Self;
    fn to_float(&self) -> f64;
    /// Natural logarithm of a positive value, without underflow for tiny rationals.
    fn ln(&self) -> f64;
    fn abs_diff(&self, other: &Self) -> f64;
    /// "1/4" in exact mode, shortest round-trip decimal in float mode.
    fn render(&self) -> String;

    fn positive(&self) -> bool {
        *self > Self::zero()
    }

    /// Equality up to `tol` in float mode, exact equality in rational mode.
    fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        if Self::EXACT {
            self == other
        } else {
            self.abs_diff(other) <= tol
        }
    }
}

impl Weight for f64 {
    const EXACT: bool = false;
    const MODE: &'static str = "float";

    fn from_ratio(num: u64, den: u64) -> Self {
        num as f64 / den as f64
    }

    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
            
            .to_f64()
            .unwrap_or(f64::NAN)
    }

    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }

    fn to_float(&self) -> f64 {
        *self
    }

    fn ln(&self) -> f64 {
        f64::ln(*self)
    }

    fn abs_diff(&self, other: &Self) -> f64 {
        (self - other).abs()
    }

    fn render(&self) -> String {
        format!("{}", self)
    }
}

impl Weight for BigRational {
    const EXACT: bool = true;
    const MODE: &'static str = "rational";

    fn from_ratio(num: u64, den: u64) -> Self {
        BigRational::new(BigInt::from(num), BigInt::from(den))
    }

    fn from_big_ratio(num: &BigUint, den: &BigUint) -> Self {
        BigRational::new(BigInt::from(num.clone()), BigInt::from(den.clone()))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn to_float(&self) -> f64 {
        if let Some(v) = ToPrimitive::to_f64(self) {
            if v != 0.0 || self.is_zero() {
                return v;
            }
        }
        let l = Weight::ln(self);
        if l.is_nan() {
            f64::NAN
        } else {
            self.signum().to_f64().unwrap_or(1.0) * l.exp()
        }
    }

    fn ln(&self) -> f64 {
        if !Weight::positive(self) {
            return if self.is_zero() { f64::NEG_INFINITY } else { f64::NAN };
        }
        ln_biguint(self.numer().magnitude()) - ln_biguint(self.denom().magnitude())
    }

    fn abs_diff(&self, other: &Self) -> f64 {
        Weight::to_float(&(self - other).abs())
    }

    fn render(&self) -> String {
        if self.is_integer() {
            self.numer().to_string()
        } else {
            format!("{}/{}", self.numer(), self.denom())
        }
    }
}

fn ln_biguint(n: &BigUint) -> f64 {
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().map(f64::ln).unwrap_or(f64::NAN);
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    top.to_f64().unwrap_or(f64::NAN).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Exact `k`-th root of a nonnegative rational, if it is a perfect power.
pub fn exact_rational_root(r: &BigRational, k: u32) -> Option<BigRational> {
    if k == 0 || r.is_negative() {
        return None;
    }
    if k == 1 || r.is_zero() {
        return Some(r.clone());
    }
    let root_of = |v: &BigInt| -> Option<BigInt> {
        let c = v.nth_root(k);
        if num::pow(c.clone(), k as usize) == *v {
            Some(c)
        } else {
            None
        }
    };
    let n = root_of(r.numer())?;
    let d = root_of(r.denom())?;
    Some(BigRational::new(n, d))
}

pub fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse "p/q", "p" or a decimal into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q.is_zero() {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    if let Ok(i) = s.parse::<BigInt>() {
        return Some(BigRational::from_integer(i));
    }
    let (int, frac) = s.split_once('.')?;
    let sign = if int.starts_with('-') { Sign::Minus } else { Sign::Plus };
    let digits = format!("{}{}", int.trim_start_matches('-'), frac);
    let mag: BigUint = digits.parse().ok()?;
    let den = num::pow(BigInt::from(10u32), frac.len());
    Some(BigRational::new(BigInt::from_biguint(sign, mag), den))
}
