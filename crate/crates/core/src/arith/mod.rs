//! Exact integer and rational arithmetic: dense polynomials and truncated
//! power series over arbitrary-precision integers.

mod poly;
mod series;

pub use poly::IntPoly;
pub use series::{series_equal, series_from_rational, PowerSeries};

/// Unbounded signed integer used for every coefficient and matrix entry.
pub type IntScalar = num_bigint::BigInt;

/// Reduced fraction with positive denominator.
pub type Rational = num_rational::BigRational;

pub(crate) fn int(v: i64) -> IntScalar {
    IntScalar::from(v)
}

/// JSON number when it fits in `i64`, decimal string otherwise.
pub fn int_to_json(v: &IntScalar) -> serde_json::Value {
    use num_traits::ToPrimitive;
    match v.to_i64() {
        Some(x) => x.into(),
        None => v.to_string().into(),
    }
}

pub(crate) fn coeffs_to_json(c: &[IntScalar]) -> serde_json::Value {
    serde_json::Value::Array(c.iter().map(int_to_json).collect())
}
