use std::ops::{Add, Mul, Sub};

use num::rational::BigRational;
use num::{One, Signed, Zero};

/// Formal power series over the rationals, truncated after degree `order`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<BigRational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![BigRational::zero(); order + 1],
        }
    }

    /// Pads or truncates `coeffs` to `order + 1` terms.
    pub fn from_coeffs(mut coeffs: Vec<BigRational>, order: usize) -> Self {
        coeffs.resize(order + 1, BigRational::zero());
        PowerSeries { coeffs }
    }

    pub fn constant(c: BigRational, order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = c;
        s
    }

    /// `c · t^k`.
    pub fn monomial(c: BigRational, k: usize, order: usize) -> Self {
        let mut s = Self::zero(order);
        if k <= order {
            s.coeffs[k] = c;
        }
        s
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &BigRational {
        &self.coeffs[k]
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplicative inverse; `None` when the constant term is zero.
    pub fn inverse(&self) -> Option<Self> {
        let a0 = &self.coeffs[0];
        if a0.is_zero() {
            return None;
        }
        let n = self.order();
        let inv0 = a0.recip();
        let mut b = vec![BigRational::zero(); n + 1];
        b[0] = inv0.clone();
        for k in 1..=n {
            let mut acc = BigRational::zero();
            for j in 1..=k {
                acc += &self.coeffs[j] * &b[k - j];
            }
            b[k] = -acc * &inv0;
        }
        Some(PowerSeries { coeffs: b })
    }

    /// `self(inner(t))` for `inner` without constant term, by Horner's rule.
    pub fn compose(&self, inner: &PowerSeries) -> Option<Self> {
        if !inner.coeffs[0].is_zero() {
            return None;
        }
        let n = self.order().min(inner.order());
        let inner = PowerSeries::from_coeffs(inner.coeffs.clone(), n);
        let mut acc = PowerSeries::zero(n);
        for c in self.coeffs[..=n].iter().rev() {
            acc = &(&acc * &inner) + &PowerSeries::constant(c.clone(), n);
        }
        Some(acc)
    }

    /// Largest `|a_k − b_k|` over the common degrees.
    pub fn max_abs_diff(&self, other: &PowerSeries) -> BigRational {
        self.coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| (a - b).abs())
            .fold(BigRational::zero(), |m, d| if d > m { d } else { m })
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }
}

impl Add for &PowerSeries {
    type Output = PowerSeries;

    fn add(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &PowerSeries {
    type Output = PowerSeries;

    fn sub(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        PowerSeries {
            coeffs: (0..=n).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &PowerSeries {
    type Output = PowerSeries;

    fn mul(self, rhs: &PowerSeries) -> PowerSeries {
        let n = self.order().min(rhs.order());
        let mut out = vec![BigRational::zero(); n + 1];
        for (i, a) in self.coeffs[..=n].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PowerSeries { coeffs: out }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::rational;

    fn series(c: &[i64], order: usize) -> PowerSeries {
        PowerSeries::from_coeffs(c.iter().map(|&a| rational(a, 1)).collect(), order)
    }

    #[test]
    fn inverse_of_one_minus_t_is_geometric() {
        let s = series(&[1, -1], 6);
        assert_eq!(s.inverse().unwrap(), series(&[1; 7], 6));
        assert!((&s * &s.inverse().unwrap()).is_one());
    }

    #[test]
    fn compose_with_double_t() {
        // (1 + t + t²) ∘ 2t = 1 + 2t + 4t²
        let f = series(&[1, 1, 1], 4);
        let g = series(&[0, 2], 4);
        assert_eq!(f.compose(&g).unwrap(), series(&[1, 2, 4], 4));
        assert!(f.compose(&series(&[1, 1], 4)).is_none());
    }

    #[test]
    fn compose_geometric_with_t_squared() {
        let geo = series(&[1; 9], 8);
        let t2 = series(&[0, 0, 1], 8);
        assert_eq!(geo.compose(&t2).unwrap(), series(&[1, 0, 1, 0, 1, 0, 1, 0, 1], 8));
    }
}
