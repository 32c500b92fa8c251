use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use coxlat::poincare::{hilbert_p, hilbert_q, orbit_pairings, poincare_direct, Direction, RootedLattice};
use coxlat::star::{OrbitInvariants, SingularityKind, StarLattices};
use coxlat::verify::{infer_kind, verify_lattices};

fn alphas() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(2i64..=12, 0..=5).prop_map(|mut a| {
        a.sort_unstable();
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn every_star_off_the_boundary_verifies(alpha in alphas()) {
        prop_assume!(infer_kind(&alpha).is_some());
        let st = StarLattices::from_alphas(&alpha).unwrap();
        for r in verify_lattices(&st, 60, "prop") {
            prop_assert!(r.passed(), "{} {:?}: {:?}", r.check, alpha, r.witness());
        }
    }

    #[test]
    fn telescoping_on_every_basis_root(alpha in alphas(), which in 0usize..64) {
        let st = StarLattices::from_alphas(&alpha).unwrap();
        for cl in [&st.minus, &st.zero, &st.plus] {
            let rl = RootedLattice::basis_root(cl, which % cl.rank()).unwrap();
            // both series check the partial sums against the asymmetric form internally
            let p = hilbert_p(&rl, 30).unwrap();
            let q = hilbert_q(&rl, 30).unwrap();
            prop_assert_eq!(p.coeff(0), &1.into());
            prop_assert_eq!(q.coeff(0), &1.into());
            let fwd = orbit_pairings(&rl, 0, Direction::Forward);
            prop_assert_eq!(&fwd.symmetric[0], &(-2).into());
        }
    }

    #[test]
    fn radical_shift_leaves_series_unchanged(alpha in alphas()) {
        let st = StarLattices::from_alphas(&alpha).unwrap();
        let e = RootedLattice::basis_root(&st.zero, st.center).unwrap();
        let f = RootedLattice::basis_root(&st.zero, st.isotropic_index()).unwrap();
        prop_assert_eq!(hilbert_p(&e, 40).unwrap(), hilbert_p(&f, 40).unwrap());
        prop_assert_eq!(hilbert_q(&e, 40).unwrap(), hilbert_q(&f, 40).unwrap());
    }

    #[test]
    fn direct_series_nonnegative_and_floor_exact(alpha in alphas(), order in 0usize..150) {
        let Some(kind) = infer_kind(&alpha) else { return Ok(()) };
        let inv = OrbitInvariants::of_kind(kind, &alpha);
        let s = poincare_direct(&inv, kind, order).unwrap();
        prop_assert_eq!(s.coeff(0), &1.into());
        for (k, c) in s.coeffs().iter().enumerate() {
            prop_assert!(*c >= 0.into());
            // recomputed with rational floors
            let kk = BigRational::from_integer(k.into());
            let frac = |n: i64, d: i64| BigRational::new(n.into(), d.into());
            let floors: BigInt = alpha
                .iter()
                .map(|&a| match kind {
                    SingularityKind::Kleinian => (&kk * frac(1, a)).floor().to_integer(),
                    SingularityKind::Fuchsian => (&kk * frac(a - 1, a)).floor().to_integer(),
                })
                .sum();
            let base = match kind {
                SingularityKind::Kleinian => k as i64 * (2 - alpha.len() as i64),
                SingularityKind::Fuchsian => -2 * k as i64,
            };
            let expected = if kind == SingularityKind::Fuchsian && k == 1 { BigInt::from(0) } else { floors + base + 1 };
            prop_assert_eq!(c, &expected, "k = {}", k);
        }
    }
}
