//! Poincaré series of the graded coordinate ring from divisor degrees, and
//! the two Hilbert–Poincaré series `P`, `Q` of a lattice with a root.

use num_traits::{One, Zero};

use crate::arith::{int, IntScalar, PowerSeries};
use crate::error::{Error, Result};
use crate::lattice::{Coords, CoxeterAction};
use crate::star::{CoxeterLattice, OrbitInvariants, SingularityKind};

/// `deg D^(k)` on the genus-0 base curve.
///
/// Kleinian: `k(2 - r) + sum floor(k / alpha_i)`.
/// Fuchsian: `-2k + sum floor(k (alpha_i - 1) / alpha_i)`.
pub fn divisor_degree(inv: &OrbitInvariants, kind: SingularityKind, k: u64) -> i64 {
    let k = k as i64;
    let alphas = inv.alphas();
    match kind {
        SingularityKind::Kleinian => {
            k * (2 - alphas.len() as i64) + alphas.iter().map(|&a| k.div_euclid(a)).sum::<i64>()
        }
        SingularityKind::Fuchsian => {
            -2 * k + alphas.iter().map(|&a| (k * (a - 1)).div_euclid(a)).sum::<i64>()
        }
    }
}

/// `sum dim L(D^(k)) t^k` with `dim L = 1 + deg` (Riemann–Roch on P^1),
/// except the Fuchsian degree-1 term `dim L(D_0) = 0`.
pub fn poincare_direct(inv: &OrbitInvariants, kind: SingularityKind, order: usize) -> Result<PowerSeries> {
    let mut s = PowerSeries::zero(order);
    for k in 0..=order {
        if kind == SingularityKind::Fuchsian && k == 1 {
            continue;
        }
        let dim = 1 + divisor_degree(inv, kind, k as u64);
        if dim < 0 {
            return Err(Error::NegativeDimension { k, value: dim });
        }
        s.coeffs_mut()[k] = int(dim);
    }
    Ok(s)
}

/// Lattice with Coxeter basis and a distinguished root `a`.
#[derive(Clone, Debug)]
pub struct RootedLattice<'a> {
    lattice: &'a CoxeterLattice,
    root: Coords,
}

impl<'a> RootedLattice<'a> {
    pub fn new(lattice: &'a CoxeterLattice, root: Coords) -> Result<Self> {
        if root.len() != lattice.rank() {
            return Err(Error::Dimension(format!("root has {} coordinates, rank is {}", root.len(), lattice.rank())));
        }
        let self_pairing = lattice.lattice.pairing(&root, &root);
        if self_pairing != int(-2) {
            return Err(Error::NotARootVector { self_pairing: self_pairing.to_string() });
        }
        Ok(Self { lattice, root })
    }

    /// The `i`-th basis vector as the root.
    pub fn basis_root(lattice: &'a CoxeterLattice, i: usize) -> Result<Self> {
        Self::new(lattice, lattice.lattice.basis_vector(i))
    }

    pub fn root(&self) -> &[IntScalar] {
        &self.root
    }

    pub fn lattice(&self) -> &CoxeterLattice {
        self.lattice
    }
}

/// Direction of the Coxeter orbit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

/// The sequences `<a, tau^{+-l} a>` and `(a, tau^{+-l} a)` for `l = 0..=len`,
/// computed along one orbit of exact vectors.
#[derive(Clone, Debug)]
pub struct OrbitPairings {
    pub symmetric: Vec<IntScalar>,
    pub asymmetric: Vec<IntScalar>,
}

/// Walks `a, tau^{+-1} a, ...` and records both pairings with `a`.
pub fn orbit_pairings(rl: &RootedLattice<'_>, len: usize, direction: Direction) -> OrbitPairings {
    let cl = rl.lattice;
    let n = cl.rank();
    let a = &rl.root;
    // row vectors a^T G and a_B^T A, with A in root-basis coordinates
    let gram_row = cl.lattice.gram().transpose().mul_vec(a);
    let order = cl.basis.order();
    let a_b: Coords = order.iter().map(|&i| a[i].clone()).collect();
    let form = cl.asym_form();
    let form_row_b = form.transpose().mul_vec(&a_b);
    let mut form_row = vec![IntScalar::zero(); n];
    for (p, &i) in order.iter().enumerate() {
        form_row[i] = form_row_b[p].clone();
    }
    let action: CoxeterAction = cl.action();
    let mut v = a.clone();
    let mut out = OrbitPairings { symmetric: Vec::with_capacity(len + 1), asymmetric: Vec::with_capacity(len + 1) };
    for step in 0..=len {
        out.symmetric.push(sparse_dot(&gram_row, &v));
        out.asymmetric.push(sparse_dot(&form_row, &v));
        if step < len {
            match direction {
                Direction::Forward => action.apply(&mut v),
                Direction::Backward => action.apply_inverse(&mut v),
            }
        }
    }
    out
}

fn sparse_dot(row: &[IntScalar], v: &[IntScalar]) -> IntScalar {
    row.iter()
        .zip(v)
        .filter(|(r, _)| !r.is_zero())
        .fold(IntScalar::zero(), |acc, (r, x)| acc + r * x)
}

/// `P(t) = sum_k (1 + sum_{l<k} <a, tau^l a>) t^k`, checked term by term
/// against `(a, tau^k a)`.
pub fn hilbert_p(rl: &RootedLattice<'_>, order: usize) -> Result<PowerSeries> {
    let orbit = orbit_pairings(rl, order, Direction::Forward);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut acc = IntScalar::one();
    for k in 0..=order {
        if acc != orbit.asymmetric[k] {
            return Err(Error::RouteMismatch { series: "P", index: k });
        }
        coeffs.push(acc.clone());
        acc += &orbit.symmetric[k];
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}

/// `Q(t) = sum_k (1 - sum_{1<=l<=k} <a, tau^{-l} a>) t^k`, checked term by
/// term against `(a, tau^{-k} a)`.
pub fn hilbert_q(rl: &RootedLattice<'_>, order: usize) -> Result<PowerSeries> {
    let orbit = orbit_pairings(rl, order, Direction::Backward);
    let mut coeffs = Vec::with_capacity(order + 1);
    let mut acc = IntScalar::one();
    for k in 0..=order {
        if k > 0 {
            acc -= &orbit.symmetric[k];
        }
        if acc != orbit.asymmetric[k] {
            return Err(Error::RouteMismatch { series: "Q", index: k });
        }
        coeffs.push(acc.clone());
    }
    Ok(PowerSeries::from_coeffs(coeffs))
}
