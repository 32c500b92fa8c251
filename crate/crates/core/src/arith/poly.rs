use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};
use super::{IntScalar, Rational};

/// Dense univariate polynomial; `coeffs[i]` is the coefficient of `t^i`.
///
/// The coefficient list never ends in a zero, so the zero polynomial is the
/// empty list and equality is structural.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<IntScalar>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<IntScalar>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| IntScalar::from(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self { coeffs: vec![IntScalar::one()] }
    }

    /// `t^k`.
    pub fn monomial(k: usize) -> Self {
        let mut coeffs = vec![IntScalar::zero(); k + 1];
        coeffs[k] = IntScalar::one();
        Self { coeffs }
    }

    pub fn coeffs(&self) -> &[IntScalar] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<IntScalar> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree for reporting, with the zero polynomial at -1.
    pub fn degree_or_neg(&self) -> i64 {
        self.coeffs.len() as i64 - 1
    }

    /// Coefficient of `t^k` (zero past the degree).
    pub fn coeff(&self, k: usize) -> IntScalar {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn eval(&self, x: &IntScalar) -> IntScalar {
        self.coeffs
            .iter()
            .rev()
            .fold(IntScalar::zero(), |acc, c| acc * x + c)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        poly_mul(self, other)
    }

    /// Coefficient array, lowest degree first.
    pub fn to_json(&self) -> serde_json::Value {
        super::coeffs_to_json(&self.coeffs)
    }

    /// `t^n p(1/t)`.
    pub fn reversed(&self) -> IntPoly {
        let mut c = self.coeffs.clone();
        c.reverse();
        IntPoly::new(c)
    }

    pub fn derivative(&self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * IntScalar::from(k)).collect())
    }

    /// `p / gcd(p, p')`: the product of the distinct irreducible factors of a
    /// monic `p`, again monic with integer coefficients.
    ///
    /// Panics if `p` is not monic.
    pub fn squarefree_part(&self) -> IntPoly {
        assert!(self.coeffs.last().is_some_and(One::is_one), "squarefree_part needs a monic polynomial");
        let p = to_rational(self);
        let g = rat_gcd(p.clone(), to_rational(&self.derivative()));
        let (q, r) = rat_divmod(&p, &g);
        debug_assert!(r.is_empty());
        IntPoly::new(
            q.into_iter()
                .map(|c| {
                    assert!(c.is_integer(), "quotient of monic integer polynomials is integral");
                    c.to_integer()
                })
                .collect(),
        )
    }
}

// dense rational polynomials, lowest degree first, no trailing zeros
fn to_rational(p: &IntPoly) -> Vec<Rational> {
    p.coeffs.iter().map(|c| Rational::from_integer(c.clone())).collect()
}

fn trim(v: &mut Vec<Rational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn rat_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r = a.to_vec();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead = b.last().expect("nonzero divisor");
    let mut q = vec![Rational::zero(); r.len() - b.len() + 1];
    while r.len() >= b.len() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() / lead;
        for (i, bc) in b.iter().enumerate() {
            r[shift + i] -= &c * bc;
        }
        q[shift] = c;
        // leading term cancels exactly
        r.pop();
        trim(&mut r);
    }
    (q, r)
}

/// Monic gcd.
fn rat_gcd(mut a: Vec<Rational>, mut b: Vec<Rational>) -> Vec<Rational> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = rat_divmod(&a, &b);
        a = std::mem::replace(&mut b, r);
    }
    if let Some(lead) = a.last().cloned() {
        for c in &mut a {
            *c /= &lead;
        }
    }
    a
}

/// Exact product by schoolbook convolution.
pub fn poly_mul(p: &IntPoly, q: &IntPoly) -> IntPoly {
    if p.is_zero() || q.is_zero() {
        return IntPoly::zero();
    }
    let mut out = vec![IntScalar::zero(); p.coeffs.len() + q.coeffs.len() - 1];
    for (i, a) in p.coeffs.iter().enumerate() {
        if a.is_zero() {
            continue;
        }
        for (j, b) in q.coeffs.iter().enumerate() {
            out[i + j] += a * b;
        }
    }
    IntPoly::new(out)
}

impl From<Vec<IntScalar>> for IntPoly {
    fn from(coeffs: Vec<IntScalar>) -> Self {
        Self::new(coeffs)
    }
}

impl From<IntPoly> for Vec<IntScalar> {
    fn from(p: IntPoly) -> Self {
        p.coeffs
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;
    fn add(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect())
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;
    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        IntPoly::new((0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect())
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;
    fn neg(self) -> IntPoly {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        poly_mul(self, rhs)
    }
}

/// Signed monomials, highest degree first: `t^2 - 2t + 1`.
impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            }
            first = false;
            let unit = mag.is_one();
            match k {
                0 => write!(f, "{mag}")?,
                1 if unit => f.write_str("t")?,
                1 => write!(f, "{mag}t")?,
                _ if unit => write!(f, "t^{k}")?,
                _ => write!(f, "{mag}t^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPoly {
        IntPoly::from_i64s(c)
    }

    #[test]
    fn difference_of_squares() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, -1])), p(&[1, 0, -1]));
    }

    #[test]
    fn zero_annihilates() {
        assert_eq!(IntPoly::zero().mul(&p(&[3, 1, 4])), IntPoly::zero());
        assert_eq!(IntPoly::zero().degree_or_neg(), -1);
    }

    #[test]
    fn hand_expansion() {
        assert_eq!(p(&[1, 1]).mul(&p(&[1, 1, 1])), p(&[1, 2, 2, 1]));
    }

    #[test]
    fn trailing_zeros_stripped() {
        let q = p(&[1, 2, 0, 0]);
        assert_eq!(q.coeffs().len(), 2);
        assert_eq!(q.degree(), Some(1));
    }

    #[test]
    fn display() {
        assert_eq!(p(&[1, 1, 0, -1, -1, -1, 0, 1, 1]).to_string(), "t^8 + t^7 - t^5 - t^4 - t^3 + t + 1");
        assert_eq!(p(&[1, -2, 1]).to_string(), "t^2 - 2t + 1");
        assert_eq!(p(&[-3]).to_string(), "-3");
        assert_eq!(p(&[0, -1]).to_string(), "-t");
    }

    #[test]
    fn squarefree_parts() {
        // (t + 1)^2 (t^2 - t + 1)
        assert_eq!(p(&[1, 1, 0, 1, 1]).squarefree_part(), p(&[1, 0, 0, 1]));
        assert_eq!(p(&[1, -2, 1]).squarefree_part(), p(&[-1, 1]));
        assert_eq!(p(&[1, 1, 1]).squarefree_part(), p(&[1, 1, 1]));
        assert_eq!(p(&[0, 0, 0, 1]).squarefree_part(), p(&[0, 1]));
        assert_eq!(IntPoly::one().squarefree_part(), IntPoly::one());
    }

    fn small_poly() -> impl Strategy<Value = IntPoly> {
        prop::collection::vec(-20i64..20, 0..8).prop_map(|c| IntPoly::from_i64s(&c))
    }

    proptest! {
        #[test]
        fn mul_commutative_associative(a in small_poly(), b in small_poly(), c in small_poly()) {
            prop_assert_eq!(a.mul(&b), b.mul(&a));
            prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        }

        #[test]
        fn squarefree_part_drops_repeats(roots in prop::collection::vec(-4i64..4, 1..6)) {
            let mut distinct = roots.clone();
            distinct.sort_unstable();
            distinct.dedup();
            let prod = |rs: &[i64]| rs.iter().fold(IntPoly::one(), |acc, &r| acc.mul(&p(&[-r, 1])));
            let full = prod(&roots);
            prop_assert_eq!(full.mul(&full).squarefree_part(), prod(&distinct));
        }

        #[test]
        fn mul_agrees_with_evaluation(a in small_poly(), b in small_poly(),
                                      xs in prop::collection::vec(-50i64..50, 20)) {
            let ab = a.mul(&b);
            for x in xs {
                let x = IntScalar::from(x);
                prop_assert_eq!(ab.eval(&x), a.eval(&x) * b.eval(&x));
            }
        }
    }
}
