use num_integer::Integer;
use num_traits::Zero;

use super::{IntPoly, IntScalar};
use crate::error::{Error, Result};

/// Power series truncated after `t^order`; always holds `order + 1`
/// coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PowerSeries {
    order: usize,
    coeffs: Vec<IntScalar>,
}

impl PowerSeries {
    pub fn zero(order: usize) -> Self {
        Self { order, coeffs: vec![IntScalar::zero(); order + 1] }
    }

    /// Builds a series from its coefficients; the order is `coeffs.len() - 1`.
    ///
    /// Panics on an empty list.
    pub fn from_coeffs(coeffs: Vec<IntScalar>) -> Self {
        assert!(!coeffs.is_empty(), "a power series has at least one coefficient");
        Self { order: coeffs.len() - 1, coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| IntScalar::from(c)).collect())
    }

    /// Truncation of a polynomial.
    pub fn from_poly(p: &IntPoly, order: usize) -> Self {
        Self { order, coeffs: (0..=order).map(|k| p.coeff(k)).collect() }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn coeffs(&self) -> &[IntScalar] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> &IntScalar {
        &self.coeffs[k]
    }

    pub fn coeffs_mut(&mut self) -> &mut [IntScalar] {
        &mut self.coeffs
    }

    /// Adds `c t^k` in place; no-op beyond the truncation order.
    pub fn add_monomial(&mut self, k: usize, c: i64) {
        if k <= self.order {
            self.coeffs[k] += c;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        let order = order.min(self.order);
        Self { order, coeffs: self.coeffs[..=order].to_vec() }
    }

    /// Product truncated to the smaller of the two orders.
    pub fn mul(&self, other: &PowerSeries) -> PowerSeries {
        let order = self.order.min(other.order);
        let mut out = vec![IntScalar::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self { order, coeffs: out }
    }

    /// Index of the first differing coefficient, or `None` when equal.
    pub fn first_mismatch(&self, other: &PowerSeries) -> Result<Option<usize>> {
        if self.order != other.order {
            return Err(Error::OrderMismatch { left: self.order, right: other.order });
        }
        Ok(self.coeffs.iter().zip(&other.coeffs).position(|(a, b)| a != b))
    }

    /// `{"order": N, "coeffs": [...]}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "order": self.order, "coeffs": super::coeffs_to_json(&self.coeffs) })
    }

    /// Coefficients as `i64`, if they all fit.
    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        use num_traits::ToPrimitive;
        self.coeffs.iter().map(ToPrimitive::to_i64).collect()
    }
}

/// Equality of two series of the same order, with the first index where they
/// differ.
pub fn series_equal(a: &PowerSeries, b: &PowerSeries) -> Result<(bool, Option<usize>)> {
    let k = a.first_mismatch(b)?;
    Ok((k.is_none(), k))
}

/// Expands `num / den` to `t^order` by the recurrence
/// `den_0 c_k = num_k - sum_{j>=1} den_j c_{k-j}`.
///
/// Every quotient this crate forms is integral, so a fractional coefficient is
/// reported as an error rather than promoted.
pub fn series_from_rational(num: &IntPoly, den: &IntPoly, order: usize) -> Result<PowerSeries> {
    let d0 = den.coeff(0);
    if d0.is_zero() {
        return Err(Error::ZeroConstantTerm);
    }
    let dc = den.coeffs();
    let mut out: Vec<IntScalar> = Vec::with_capacity(order + 1);
    for k in 0..=order {
        let mut acc = num.coeff(k);
        for j in 1..dc.len().min(k + 1) {
            if !dc[j].is_zero() {
                acc -= &dc[j] * &out[k - j];
            }
        }
        let (q, r) = acc.div_rem(&d0);
        if !r.is_zero() {
            return Err(Error::NonIntegralCoefficient { index: k });
        }
        out.push(q);
    }
    Ok(PowerSeries { order, coeffs: out })
}
