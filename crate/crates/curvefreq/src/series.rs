//! Truncated formal power series with rational coefficients.
//!
//! The truncation order is an explicit parameter everywhere; there is no
//! implicit global precision. A series of order `N` stores the coefficients
//! of `z^0 .. z^N`.

use crate::rational::{int, Rational};
use num::{One, Zero};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PowerSeries {
    coeffs: Vec<Rational>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        PowerSeries {
            coeffs: vec![Rational::zero(); order + 1],
        }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = Rational::one();
        s
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        assert!(!coeffs.is_empty());
        PowerSeries { coeffs }
    }

    /// Build from a coefficient function `k -> [z^k]`.
    pub fn from_fn(order: usize, f: impl Fn(usize) -> Rational) -> Self {
        PowerSeries {
            coeffs: (0..=order).map(f).collect(),
        }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coefficient(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn truncate(&self, order: usize) -> Self {
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(order + 1, Rational::zero());
        PowerSeries { coeffs }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::from_fn(order, |k| self.coefficient(k) + other.coefficient(k))
    }

    pub fn scale(&self, c: &Rational) -> Self {
        PowerSeries {
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut coeffs = vec![Rational::zero(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(order - i) {
                if other.coeffs[j].is_zero() {
                    continue;
                }
                coeffs[i + j] += &self.coeffs[i] * &other.coeffs[j];
            }
        }
        PowerSeries { coeffs }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Multiplicative inverse; the constant term must be nonzero.
    pub fn invert(&self) -> Self {
        assert!(!self.coeffs[0].is_zero(), "series has zero constant term");
        let order = self.order();
        let c0inv = Rational::one() / &self.coeffs[0];
        let mut inv = vec![Rational::zero(); order + 1];
        inv[0] = c0inv.clone();
        for k in 1..=order {
            let mut s = Rational::zero();
            for j in 1..=k {
                s += &self.coeffs[j] * &inv[k - j];
            }
            inv[k] = -s * &c0inv;
        }
        PowerSeries { coeffs: inv }
    }

    /// `log(1/(1 - c z^2))` truncated: sum over k >= 1 of c^k z^(2k) / k.
    pub fn log_inv_one_minus_cz2(c: &Rational, order: usize) -> Self {
        let mut s = Self::zero(order);
        let mut ck = Rational::one();
        let mut k = 1usize;
        while 2 * k <= order {
            ck *= c;
            s.coeffs[2 * k] = &ck / int(k as i64);
            k += 1;
        }
        s
    }

    /// `log(1/(1 - z))` truncated: sum over k >= 1 of z^k / k.
    pub fn log_inv_one_minus_z(order: usize) -> Self {
        Self::from_fn(order, |k| {
            if k == 0 {
                Rational::zero()
            } else {
                Rational::new(1.into(), (k as i64).into())
            }
        })
    }
}
