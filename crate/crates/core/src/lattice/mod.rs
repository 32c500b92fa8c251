//! Even lattices with an ordered basis of roots, their reflections and
//! Coxeter elements, the asymmetric (Euler-type) form, and the quotient by
//! the radical.

mod charpoly;
mod hermite;
mod matrix;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

pub use charpoly::char_poly;
pub use hermite::{content, hermite_rows, integer_kernel, quotient_map, Hermite, QuotientMap};
pub use matrix::IntMatrix;

use crate::arith::{int, IntScalar};
use crate::error::{Error, Result};
use matrix::dot;

/// Integer coordinate vector with respect to a lattice basis.
pub type Coords = Vec<IntScalar>;

/// Free Z-module with a symmetric integral bilinear form, given on a labelled
/// basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lattice {
    labels: Vec<String>,
    gram: IntMatrix,
}

impl Lattice {
    pub fn new(labels: Vec<String>, gram: IntMatrix) -> Result<Self> {
        if !gram.is_square() {
            return Err(Error::Dimension(format!("Gram matrix is {}x{}", gram.rows(), gram.cols())));
        }
        if labels.len() != gram.rows() {
            return Err(Error::Dimension(format!("{} labels for rank {}", labels.len(), gram.rows())));
        }
        if let Some((row, col)) = gram.first_asymmetry() {
            return Err(Error::NotSymmetric { row, col });
        }
        Ok(Self { labels, gram })
    }

    /// Lattice with labels `e1, e2, ...`.
    pub fn unlabeled(gram: IntMatrix) -> Result<Self> {
        let labels = (1..=gram.rows()).map(|i| format!("e{i}")).collect();
        Self::new(labels, gram)
    }

    pub fn rank(&self) -> usize {
        self.gram.rows()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn pairing(&self, x: &[IntScalar], y: &[IntScalar]) -> IntScalar {
        dot(x, &self.gram.mul_vec(y))
    }

    /// Coordinates of the `i`-th basis vector.
    pub fn basis_vector(&self, i: usize) -> Coords {
        unit(self.rank(), i)
    }

    pub fn is_root(&self, i: usize) -> bool {
        self.gram[(i, i)] == int(-2)
    }

    fn require_root(&self, i: usize) -> Result<()> {
        if self.is_root(i) {
            Ok(())
        } else {
            Err(Error::NotARoot { index: i, self_pairing: self.gram[(i, i)].to_string() })
        }
    }

    /// Reflection `s_e(x) = x + <x, e> e` in the `i`-th basis vector, acting on
    /// column coordinate vectors.
    pub fn reflection_matrix(&self, i: usize) -> Result<IntMatrix> {
        self.require_root(i)?;
        let mut s = IntMatrix::identity(self.rank());
        for j in 0..self.rank() {
            s[(i, j)] += &self.gram[(i, j)];
        }
        Ok(s)
    }

    /// Sub-lattice spanned by a subset of the basis.
    pub fn restrict(&self, indices: &[usize]) -> Lattice {
        Lattice {
            labels: indices.iter().map(|&i| self.labels[i].clone()).collect(),
            gram: self.gram.select(indices, indices),
        }
    }

    /// Basis of the radical `{x : <x, y> = 0 for all y}`, primitive and
    /// Hermite-reduced.
    pub fn radical_basis(&self) -> Vec<Coords> {
        integer_kernel(&self.gram)
    }

    /// `V / rad V` with its induced nondegenerate form.
    pub fn quotient_by_radical(&self) -> RadicalQuotient {
        let radical = self.radical_basis();
        let map = quotient_map(&radical, self.rank());
        let gram = &(&map.lift.transpose() * &self.gram) * &map.lift;
        let labels = match &map.kept {
            Some(kept) => kept.iter().map(|&i| self.labels[i].clone()).collect(),
            None => (1..=gram.rows()).map(|i| format!("q{i}")).collect(),
        };
        RadicalQuotient { lattice: Lattice { labels, gram }, radical, map }
    }
}

pub(crate) fn unit(n: usize, i: usize) -> Coords {
    let mut v = vec![IntScalar::zero(); n];
    v[i] = IntScalar::one();
    v
}

/// Quotient of a lattice by its radical, with the maps relating the two.
#[derive(Clone, Debug)]
pub struct RadicalQuotient {
    pub lattice: Lattice,
    pub radical: Vec<Coords>,
    pub map: QuotientMap,
}

impl RadicalQuotient {
    /// Matrix of the automorphism induced by `m`, which must map the radical
    /// into itself (every isometry does).
    pub fn induced(&self, m: &IntMatrix) -> IntMatrix {
        &(&self.map.projection * m) * &self.map.lift
    }

    pub fn project(&self, x: &[IntScalar]) -> Coords {
        self.map.projection.mul_vec(x)
    }

    pub fn projection(&self) -> &IntMatrix {
        &self.map.projection
    }
}

/// Ordered sequence of basis indices, each a root, covering the basis once.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RootBasis {
    order: Vec<usize>,
}

impl RootBasis {
    pub fn new(lattice: &Lattice, order: Vec<usize>) -> Result<Self> {
        let n = lattice.rank();
        let mut seen = vec![false; n];
        for &i in &order {
            if i >= n || seen[i] {
                return Err(Error::InvalidBasis { rank: n });
            }
            seen[i] = true;
        }
        if order.len() != n {
            return Err(Error::InvalidBasis { rank: n });
        }
        for &i in &order {
            lattice.require_root(i)?;
        }
        Ok(Self { order })
    }

    /// The lattice basis in its stored order.
    pub fn natural(lattice: &Lattice) -> Result<Self> {
        Self::new(lattice, (0..lattice.rank()).collect())
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    /// Column `p` is the lattice coordinate vector of the `p`-th root.
    pub fn change_of_basis(&self) -> IntMatrix {
        let n = self.order.len();
        let mut m = IntMatrix::zeros(n, n);
        for (p, &i) in self.order.iter().enumerate() {
            m[(i, p)] = IntScalar::one();
        }
        m
    }
}

/// `s_{e_1} s_{e_2} ... s_{e_n}`; the rightmost reflection acts first.
pub fn coxeter_matrix(lattice: &Lattice, basis: &RootBasis) -> Result<IntMatrix> {
    let mut tau = IntMatrix::identity(lattice.rank());
    for &i in basis.order() {
        tau = &tau * &lattice.reflection_matrix(i)?;
    }
    Ok(tau)
}

/// Matrix of the asymmetric form in the root-basis coordinates:
/// `(e_p, e_q) = -<e_p, e_q>` for `p < q`, zero below the diagonal and one
/// on it. Satisfies `A + A^T = -Gram`.
pub fn asym_form_matrix(lattice: &Lattice, basis: &RootBasis) -> IntMatrix {
    let n = basis.len();
    let order = basis.order();
    let mut a = IntMatrix::identity(n);
    for p in 0..n {
        for q in p + 1..n {
            a[(p, q)] = -&lattice.gram()[(order[p], order[q])];
        }
    }
    a
}

/// `-A^{-1} A^T` for an upper unitriangular `A`, solved by back substitution.
pub fn coxeter_via_form(a: &IntMatrix) -> Result<IntMatrix> {
    if !a.is_square() {
        return Err(Error::NotUnitriangular);
    }
    let n = a.rows();
    for i in 0..n {
        if !a[(i, i)].is_one() || (0..i).any(|j| !a[(i, j)].is_zero()) {
            return Err(Error::NotUnitriangular);
        }
    }
    let at = a.transpose();
    let mut x = IntMatrix::zeros(n, n);
    for c in 0..n {
        for i in (0..n).rev() {
            let mut acc = at[(i, c)].clone();
            for j in i + 1..n {
                if !a[(i, j)].is_zero() {
                    acc -= &a[(i, j)] * &x[(j, c)];
                }
            }
            x[(i, c)] = acc;
        }
    }
    Ok(x.neg())
}

/// Result of [`matrix_order`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MatrixOrder {
    Finite(u64),
    ExceedsCap(u64),
}

pub const DEFAULT_ORDER_CAP: u64 = 1000;

/// Least `k <= cap` with `M^k = I`.
///
/// `M^k = I` forces the minimal polynomial, hence the square-free part `p`
/// of the characteristic polynomial, to divide `t^k - 1`, so powers are only
/// formed at the `k` where `t^k mod p` is 1; the residue is carried along in
/// `O(deg p)` per step.
pub fn matrix_order(m: &IntMatrix, cap: u64) -> MatrixOrder {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return MatrixOrder::Finite(1);
    }
    let p = char_poly(m).squarefree_part();
    let d = p.degree().expect("characteristic polynomial is monic");
    let pc = p.coeffs();
    // residue of t^k modulo the monic p, degree < d
    let mut r = vec![IntScalar::zero(); d];
    if d == 1 {
        r[0] = -&pc[0];
    } else {
        r[1] = IntScalar::one();
    }
    for k in 1..=cap {
        let is_one = r[0].is_one() && r[1..].iter().all(Zero::is_zero);
        if is_one && m.pow(k).is_identity() {
            return MatrixOrder::Finite(k);
        }
        // multiply by t and reduce with t^d = -(p_0 + ... + p_{d-1} t^{d-1})
        let top = r[d - 1].clone();
        for i in (1..d).rev() {
            r[i] = std::mem::take(&mut r[i - 1]);
        }
        r[0] = IntScalar::zero();
        if !top.is_zero() {
            for i in 0..d {
                r[i] -= &top * &pc[i];
            }
        }
    }
    MatrixOrder::ExceedsCap(cap)
}

/// Coxeter element applied as its sequence of reflections.
///
/// `s_e` with `e` a basis vector changes only the `e` coordinate, by
/// `<x, e>`, which is a sparse dot product with one Gram row. Applying
/// `tau` or its inverse therefore costs `O(nnz(Gram))`.
#[derive(Clone, Debug)]
pub struct CoxeterAction {
    order: Vec<usize>,
    rows: Vec<Vec<(usize, IntScalar)>>,
}

impl CoxeterAction {
    pub fn new(lattice: &Lattice, basis: &RootBasis) -> Self {
        let n = lattice.rank();
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| !lattice.gram()[(i, j)].is_zero())
                    .map(|j| (j, lattice.gram()[(i, j)].clone()))
                    .collect()
            })
            .collect();
        Self { order: basis.order().to_vec(), rows }
    }

    fn reflect(&self, i: usize, x: &mut [IntScalar]) {
        let mut pair = IntScalar::zero();
        for (j, g) in &self.rows[i] {
            if !x[*j].is_zero() {
                pair += g * &x[*j];
            }
        }
        x[i] += pair;
    }

    pub fn apply(&self, x: &mut [IntScalar]) {
        for &i in self.order.iter().rev() {
            self.reflect(i, x);
        }
    }

    pub fn apply_inverse(&self, x: &mut [IntScalar]) {
        for &i in &self.order {
            self.reflect(i, x);
        }
    }
}

/// Whether `c_i = eps * c_{n-i}` for a single sign `eps`.
pub fn is_palindromic_up_to_sign(coeffs: &[IntScalar]) -> bool {
    let n = coeffs.len();
    let same = (0..n).all(|i| coeffs[i] == coeffs[n - 1 - i]);
    let flipped = (0..n).all(|i| coeffs[i] == -&coeffs[n - 1 - i]);
    same || flipped
}

/// Max-norm of a coordinate vector.
pub fn max_abs(v: &[IntScalar]) -> IntScalar {
    v.iter().map(Signed::abs).max().unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::IntPoly;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_i64_rows(rows)
    }

    fn lat(rows: &[Vec<i64>]) -> Lattice {
        Lattice::unlabeled(m(rows)).unwrap()
    }

    fn a2() -> Lattice {
        lat(&[vec![-2, 1], vec![1, -2]])
    }

    #[test]
    fn rank_one_reflection() {
        let l = lat(&[vec![-2]]);
        assert_eq!(l.reflection_matrix(0).unwrap(), m(&[vec![-1]]));
    }

    #[test]
    fn a2_reflection() {
        assert_eq!(a2().reflection_matrix(0).unwrap(), m(&[vec![-1, 1], vec![0, 1]]));
    }

    #[test]
    fn orthogonal_vectors_fixed() {
        let l = lat(&[vec![-2, 0, 1], vec![0, -2, 0], vec![1, 0, -2]]);
        let s = l.reflection_matrix(1).unwrap();
        let x = vec![int(3), int(0), int(-5)];
        assert_eq!(s.mul_vec(&x), x);
    }

    #[test]
    fn not_a_root() {
        let l = lat(&[vec![-4]]);
        assert!(matches!(l.reflection_matrix(0), Err(Error::NotARoot { index: 0, .. })));
        assert!(matches!(RootBasis::natural(&l), Err(Error::NotARoot { .. })));
    }

    #[test]
    fn coxeter_small_cases() {
        let l = lat(&[vec![-2]]);
        let b = RootBasis::natural(&l).unwrap();
        assert_eq!(coxeter_matrix(&l, &b).unwrap(), m(&[vec![-1]]));

        let b = RootBasis::natural(&a2()).unwrap();
        assert_eq!(coxeter_matrix(&a2(), &b).unwrap(), m(&[vec![0, -1], vec![1, -1]]));

        let v0 = lat(&[vec![-2, -2], vec![-2, -2]]);
        let b = RootBasis::natural(&v0).unwrap();
        let tau = coxeter_matrix(&v0, &b).unwrap();
        assert_eq!(tau, m(&[vec![3, 2], vec![-2, -1]]));
        assert_eq!(char_poly(&tau), IntPoly::from_i64s(&[1, -2, 1]));
    }

    #[test]
    fn a2_char_poly_and_order() {
        let b = RootBasis::natural(&a2()).unwrap();
        let tau = coxeter_matrix(&a2(), &b).unwrap();
        assert_eq!(char_poly(&tau), IntPoly::from_i64s(&[1, 1, 1]));
        assert_eq!(matrix_order(&tau, DEFAULT_ORDER_CAP), MatrixOrder::Finite(3));
        assert_eq!(matrix_order(&m(&[vec![-1]]), DEFAULT_ORDER_CAP), MatrixOrder::Finite(2));
        assert_eq!(matrix_order(&m(&[vec![1, 1], vec![0, 1]]), 50), MatrixOrder::ExceedsCap(50));
    }

    #[test]
    fn asym_form_cases() {
        let b = RootBasis::natural(&a2()).unwrap();
        assert_eq!(asym_form_matrix(&a2(), &b), m(&[vec![1, -1], vec![0, 1]]));
        let l = lat(&[vec![-2]]);
        assert_eq!(asym_form_matrix(&l, &RootBasis::natural(&l).unwrap()), m(&[vec![1]]));
        let d = lat(&[vec![-2, 0, 0], vec![0, -2, 0], vec![0, 0, -2]]);
        assert!(asym_form_matrix(&d, &RootBasis::natural(&d).unwrap()).is_identity());
    }

    #[test]
    fn coxeter_from_form() {
        assert_eq!(coxeter_via_form(&m(&[vec![1, -1], vec![0, 1]])).unwrap(), m(&[vec![0, -1], vec![1, -1]]));
        assert_eq!(coxeter_via_form(&IntMatrix::identity(3)).unwrap(), IntMatrix::identity(3).neg());
        assert_eq!(coxeter_via_form(&m(&[vec![1]])).unwrap(), m(&[vec![-1]]));
        assert_eq!(coxeter_via_form(&m(&[vec![1, 0], vec![1, 1]])), Err(Error::NotUnitriangular));
        assert_eq!(coxeter_via_form(&m(&[vec![2]])), Err(Error::NotUnitriangular));
    }

    #[test]
    fn permuted_basis_form_route() {
        let l = lat(&[vec![-2, 1, 0], vec![1, -2, 1], vec![0, 1, -2]]);
        let b = RootBasis::new(&l, vec![2, 0, 1]).unwrap();
        let tau = coxeter_matrix(&l, &b).unwrap();
        let p = b.change_of_basis();
        let via = coxeter_via_form(&asym_form_matrix(&l, &b)).unwrap();
        // via acts in root-basis coordinates
        assert_eq!(&tau * &p, &p * &via);
        assert!(RootBasis::new(&l, vec![0, 0, 1]).is_err());
    }

    #[test]
    fn radicals() {
        assert!(a2().radical_basis().is_empty());
        assert_eq!(lat(&[vec![0, 0], vec![0, 0]]).radical_basis().len(), 2);
        let v0 = lat(&[vec![-2, -2], vec![-2, -2]]);
        let q = v0.quotient_by_radical();
        assert_eq!(q.radical, vec![vec![int(1), int(-1)]]);
        assert_eq!(q.lattice.gram(), &m(&[vec![-2]]));
        let nd = a2().quotient_by_radical();
        assert!(nd.map.projection.is_identity());
    }

    #[test]
    fn sparse_action_matches_matrix() {
        let l = lat(&[vec![-2, 1, 0, 0], vec![1, -2, 1, 1], vec![0, 1, -2, 0], vec![0, 1, 0, -2]]);
        let b = RootBasis::natural(&l).unwrap();
        let tau = coxeter_matrix(&l, &b).unwrap();
        let act = CoxeterAction::new(&l, &b);
        let x: Coords = [3, -1, 4, 1].iter().map(|&v| int(v)).collect();
        let mut y = x.clone();
        act.apply(&mut y);
        assert_eq!(y, tau.mul_vec(&x));
        act.apply_inverse(&mut y);
        assert_eq!(y, x);
    }

    #[test]
    fn palindromes() {
        let c = |v: &[i64]| v.iter().map(|&x| int(x)).collect::<Vec<_>>();
        assert!(is_palindromic_up_to_sign(&c(&[1, -2, 1])));
        assert!(is_palindromic_up_to_sign(&c(&[1, 0, -1])));
        assert!(!is_palindromic_up_to_sign(&c(&[1, 2, 3])));
    }
}
