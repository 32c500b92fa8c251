//! Division-free characteristic polynomial (Berkowitz).
//!
//! The leading `r x r` block's polynomial is obtained from the previous one
//! by a Toeplitz product whose first column is
//! `1, -a_rr, -R C, -R M C, ..., -R M^(r-2) C`, so no division ever happens.
//! The computation first runs in checked `i128`; on overflow it restarts
//! over `BigInt`.

use num_traits::ToPrimitive;

use super::IntMatrix;
use crate::arith::{IntPoly, IntScalar};

trait Ring: Clone {
    fn zero() -> Self;
    fn one() -> Self;
    fn add(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
}

impl Ring for i128 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn add(&self, o: &Self) -> Option<Self> {
        self.checked_add(*o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        self.checked_mul(*o)
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
}

impl Ring for IntScalar {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
}

fn dot<R: Ring>(a: &[R], b: &[R]) -> Option<R> {
    a.iter().zip(b).try_fold(R::zero(), |acc, (x, y)| acc.add(&x.mul(y)?))
}

/// Coefficients of `det(tI - A)`, highest degree first.
fn berkowitz<R: Ring>(a: &[Vec<R>]) -> Option<Vec<R>> {
    let n = a.len();
    let mut p = vec![R::one()];
    for r in 0..n {
        // first Toeplitz column, length r + 2
        let mut col = Vec::with_capacity(r + 2);
        col.push(R::one());
        col.push(a[r][r].neg()?);
        let row: Vec<R> = a[r][..r].to_vec();
        let mut v: Vec<R> = (0..r).map(|i| a[i][r].clone()).collect();
        for k in 0..r {
            col.push(dot(&row, &v)?.neg()?);
            if k + 1 < r {
                let mut next = Vec::with_capacity(r);
                for i in 0..r {
                    next.push(dot(&a[i][..r], &v)?);
                }
                v = next;
            }
        }
        let mut q = Vec::with_capacity(r + 2);
        for i in 0..r + 2 {
            let mut acc = R::zero();
            for j in 0..=i.min(r) {
                acc = acc.add(&col[i - j].mul(&p[j])?)?;
            }
            q.push(acc);
        }
        p = q;
    }
    Some(p)
}

fn to_poly(mut high_first: Vec<IntScalar>) -> IntPoly {
    high_first.reverse();
    IntPoly::new(high_first)
}

/// Monic characteristic polynomial `det(tI - M)`.
///
/// Panics if `m` is not square.
pub fn char_poly(m: &IntMatrix) -> IntPoly {
    assert!(m.is_square(), "characteristic polynomial of a non-square matrix");
    if let Some(p) = char_poly_i128(m) {
        return p;
    }
    char_poly_big(m)
}

fn char_poly_i128(m: &IntMatrix) -> Option<IntPoly> {
    let rows: Vec<Vec<i128>> = m
        .to_rows()
        .iter()
        .map(|r| r.iter().map(ToPrimitive::to_i128).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let p = berkowitz(&rows)?;
    Some(to_poly(p.into_iter().map(IntScalar::from).collect()))
}

pub(crate) fn char_poly_big(m: &IntMatrix) -> IntPoly {
    let p = berkowitz(&m.to_rows()).expect("BigInt arithmetic does not overflow");
    to_poly(p)
}
