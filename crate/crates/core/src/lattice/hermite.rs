//! Row Hermite normal form and the integer kernel / quotient built on it.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;
use crate::arith::IntScalar;

/// Row-style Hermite form: `transform * input == form`, with `transform`
/// unimodular, pivots positive and entries above each pivot reduced into
/// `[0, pivot)`.
#[derive(Clone, Debug)]
pub struct Hermite {
    pub form: IntMatrix,
    pub transform: IntMatrix,
    /// `(row, column)` of each pivot, in row order.
    pub pivots: Vec<(usize, usize)>,
}

/// Hermite normal form, scanning columns in the given order.
pub fn hermite_rows_in_order(m: &IntMatrix, col_order: &[usize]) -> Hermite {
    let rows = m.rows();
    let mut a = m.to_rows();
    let mut u = IntMatrix::identity(rows).to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for &c in col_order {
        if r == rows {
            break;
        }
        loop {
            // smallest nonzero magnitude at or below r
            let best = (r..rows)
                .filter(|&i| !a[i][c].is_zero())
                .min_by(|&i, &j| a[i][c].abs().cmp(&a[j][c].abs()));
            let Some(p) = best else { break };
            a.swap(r, p);
            u.swap(r, p);
            let mut done = true;
            for i in r + 1..rows {
                if a[i][c].is_zero() {
                    continue;
                }
                let q = a[i][c].div_floor(&a[r][c]);
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
                if !a[i][c].is_zero() {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
        if a[r][c].is_zero() {
            continue;
        }
        if a[r][c].is_negative() {
            negate_row(&mut a, r);
            negate_row(&mut u, r);
        }
        for i in 0..r {
            let q = a[i][c].div_floor(&a[r][c]);
            if !q.is_zero() {
                sub_row(&mut a, i, r, &q);
                sub_row(&mut u, i, r, &q);
            }
        }
        pivots.push((r, c));
        r += 1;
    }
    Hermite { form: IntMatrix::from_rows(a), transform: IntMatrix::from_rows(u), pivots }
}

pub fn hermite_rows(m: &IntMatrix) -> Hermite {
    let order: Vec<usize> = (0..m.cols()).collect();
    hermite_rows_in_order(m, &order)
}

fn sub_row(a: &mut [Vec<IntScalar>], target: usize, src: usize, q: &IntScalar) {
    let (t, s) = if target < src {
        let (lo, hi) = a.split_at_mut(src);
        (&mut lo[target], &hi[0])
    } else {
        let (lo, hi) = a.split_at_mut(target);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in t.iter_mut().zip(s) {
        if !y.is_zero() {
            *x -= q * y;
        }
    }
}

fn negate_row(a: &mut [Vec<IntScalar>], i: usize) {
    for x in a[i].iter_mut() {
        *x = -&*x;
    }
}

/// A Z-basis of `{x : M x = 0}`, as Hermite-reduced primitive rows.
pub fn integer_kernel(m: &IntMatrix) -> Vec<Vec<IntScalar>> {
    // rows of U with U M^T = H and H_row = 0 span the kernel of M
    let h = hermite_rows(&m.transpose());
    let rank = h.pivots.len();
    if rank == m.cols() {
        return Vec::new();
    }
    let basis = h.transform.select(&(rank..m.cols()).collect::<Vec<_>>(), &(0..m.cols()).collect::<Vec<_>>());
    hermite_rows(&basis).form.to_rows()
}

/// Greatest common divisor of the entries.
pub fn content(v: &[IntScalar]) -> IntScalar {
    v.iter().fold(IntScalar::zero(), |g, x| g.gcd(x))
}

/// Projection onto `Z^n / span(kernel)` for a saturated sublattice, with a
/// lift of the quotient basis back to `Z^n`.
#[derive(Clone, Debug)]
pub struct QuotientMap {
    /// `(n - k) x n`; kernel vectors map to zero.
    pub projection: IntMatrix,
    /// `n x (n - k)`; `projection * lift = I`.
    pub lift: IntMatrix,
    /// Original basis indices whose images form the quotient basis, when the
    /// quotient basis is a subset of the original one.
    pub kept: Option<Vec<usize>>,
}

/// Quotient of `Z^n` by the span of `kernel` (rows, linearly independent,
/// saturated).
///
/// Pivots are taken from the right so that, whenever the sublattice allows
/// it, the quotient basis consists of images of the leading original basis
/// vectors.
pub fn quotient_map(kernel: &[Vec<IntScalar>], n: usize) -> QuotientMap {
    let k = kernel.len();
    if k == 0 {
        return QuotientMap {
            projection: IntMatrix::identity(n),
            lift: IntMatrix::identity(n),
            kept: Some((0..n).collect()),
        };
    }
    let km = IntMatrix::from_rows(kernel.to_vec());
    let rev: Vec<usize> = (0..n).rev().collect();
    let h = hermite_rows_in_order(&km, &rev);
    let unit_pivots = h.pivots.len() == k && h.pivots.iter().all(|&(r, c)| h.form[(r, c)].is_one());
    if unit_pivots {
        let pivot_cols: Vec<usize> = h.pivots.iter().map(|&(_, c)| c).collect();
        let kept: Vec<usize> = (0..n).filter(|j| !pivot_cols.contains(j)).collect();
        let q = kept.len();
        let mut projection = IntMatrix::zeros(q, n);
        let mut lift = IntMatrix::zeros(n, q);
        for (a, &j) in kept.iter().enumerate() {
            projection[(a, j)] = IntScalar::one();
            lift[(j, a)] = IntScalar::one();
        }
        // e_p = -(sum over kept j of h_j e_j) modulo the kernel; pivot
        // columns are cleared in the other rows by the reduction step
        for &(r, p) in &h.pivots {
            for (a, &j) in kept.iter().enumerate() {
                projection[(a, p)] = -&h.form[(r, j)];
            }
        }
        return QuotientMap { projection, lift, kept: Some(kept) };
    }
    // general case: U K^T = [H; 0] with a unimodular top block
    let t = hermite_rows(&km.transpose());
    let rest: Vec<usize> = (k..n).collect();
    let all: Vec<usize> = (0..n).collect();
    let projection = t.transform.select(&rest, &all);
    let inv = t.transform.integral_inverse().expect("Hermite transform is unimodular");
    let lift = inv.select(&all, &rest);
    QuotientMap { projection, lift, kept: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn v(c: &[i64]) -> Vec<IntScalar> {
        c.iter().map(|&x| IntScalar::from(x)).collect()
    }

    #[test]
    fn hermite_transform_is_consistent() {
        let a = m(&[vec![4, 6, 2], vec![2, 3, 1], vec![0, 5, 7]]);
        let h = hermite_rows(&a);
        assert_eq!(&h.transform * &a, h.form);
        assert!(h.transform.determinant().abs().is_one());
        assert_eq!(h.pivots.len(), 2);
    }

    #[test]
    fn kernel_of_degenerate_gram() {
        let g = m(&[vec![-2, -2], vec![-2, -2]]);
        assert_eq!(integer_kernel(&g), vec![v(&[1, -1])]);
        assert!(integer_kernel(&m(&[vec![-2, 1], vec![1, -2]])).is_empty());
        assert_eq!(integer_kernel(&IntMatrix::zeros(2, 2)).len(), 2);
    }

    #[test]
    fn kernel_is_primitive() {
        let g = m(&[vec![2, 4, 6]]);
        for row in integer_kernel(&g) {
            assert!(content(&row).is_one());
            assert!(g.mul_vec(&row).iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn quotient_keeps_leading_basis() {
        let q = quotient_map(&[v(&[0, 1, -1])], 3);
        assert_eq!(q.kept, Some(vec![0, 1]));
        assert_eq!(q.projection, m(&[vec![1, 0, 0], vec![0, 1, 1]]));
        assert!((&q.projection * &q.lift).is_identity());
    }

    #[test]
    fn quotient_general_case() {
        // (2, 3) is saturated but has no unit coordinate
        let q = quotient_map(&[v(&[2, 3])], 2);
        assert_eq!(q.kept, None);
        assert!((&q.projection * &q.lift).is_identity());
        assert!(q.projection.mul_vec(&v(&[2, 3])).iter().all(Zero::is_zero));
        assert!(q.projection.mul_vec(&v(&[1, 0])).iter().any(|x| !x.is_zero()));
    }
}
