//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each and
//! exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use coxlat::arith::{IntPoly, PowerSeries};
use coxlat::lattice::{matrix_order, Lattice, MatrixOrder, DEFAULT_ORDER_CAP};
use coxlat::poincare::{hilbert_q, poincare_direct, RootedLattice};
use coxlat::star::{star_lattice, validate, OrbitInvariants, SingularityKind, StarLattices};
use coxlat::verify::{
    identities_report, orbit_report, random_fuchsian, suite_inputs, theorem_report, verify_prop_lp,
    verify_theorem, VerificationReport, DEFAULT_SEED, RANDOM_TUPLES,
};
use coxlat::Error;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

struct Outcome {
    detail: String,
    failures: Vec<String>,
}

impl Outcome {
    fn from_reports(count: usize, reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        let mut checks = 0;
        let mut failures = Vec::new();
        for r in reports {
            checks += r.checks.len();
            if let Some((name, w)) = r.witness() {
                failures.push(format!("{} {}: {name}: {w}", r.check, r.subject));
            }
        }
        Self { detail: format!("{count} inputs, {checks} checks"), failures }
    }
}

fn par_map<T: Sync, U: Send>(items: &[T], f: impl Fn(&T) -> U + Sync + Send) -> Vec<U> {
    #[cfg(feature = "parallel")]
    {
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        items.iter().map(f).collect()
    }
}

fn kleinian_inputs() -> Vec<OrbitInvariants> {
    let mut alphas: Vec<Vec<i64>> = vec![vec![]];
    alphas.extend((2..=6).map(|a| vec![a, a]));
    alphas.extend((2..=10).map(|n| vec![2, 2, n]));
    alphas.extend([vec![2, 3, 3], vec![2, 3, 4], vec![2, 3, 5]]);
    alphas.iter().map(|a| OrbitInvariants::kleinian(a)).collect()
}

fn fuchsian_inputs() -> Vec<OrbitInvariants> {
    let mut out = Vec::new();
    for a in 2..=12i64 {
        for b in a..=12 {
            for c in b..=12 {
                // 1/a + 1/b + 1/c < 1
                if b * c + a * c + a * b < a * b * c {
                    out.push(OrbitInvariants::fuchsian(&[a, b, c]));
                }
            }
        }
    }
    out.extend(random_fuchsian(DEFAULT_SEED, 20, &[4, 5]));
    out
}

fn theorem_over(inputs: &[OrbitInvariants], order: usize) -> Outcome {
    let reports = par_map(inputs, |inv| verify_theorem(inv, order).expect("valid input"));
    Outcome::from_reports(inputs.len(), reports)
}

fn criterion_1() -> Outcome {
    theorem_over(&kleinian_inputs(), 200)
}

fn criterion_2() -> Outcome {
    theorem_over(&fuchsian_inputs(), 200)
}

/// `(1 - t^d) / prod (1 - t^w)` by counting monomials, in machine integers.
fn weighted_hypersurface(weights: &[usize], degree: usize, order: usize) -> Vec<i64> {
    let mut count = vec![0i64; order + 1];
    count[0] = 1;
    for &w in weights {
        for k in w..=order {
            count[k] += count[k - w];
        }
    }
    let mut out = count.clone();
    for k in degree..=order {
        out[k] -= count[k - degree];
    }
    out
}

fn criterion_3() -> Outcome {
    let cases: [(&str, OrbitInvariants, SingularityKind, [usize; 3], usize); 6] = [
        ("E6", OrbitInvariants::kleinian(&[2, 3, 3]), SingularityKind::Kleinian, [3, 4, 6], 12),
        ("E7", OrbitInvariants::kleinian(&[2, 3, 4]), SingularityKind::Kleinian, [4, 6, 9], 18),
        ("E8", OrbitInvariants::kleinian(&[2, 3, 5]), SingularityKind::Kleinian, [6, 10, 15], 30),
        ("A3", OrbitInvariants::kleinian(&[2, 2]), SingularityKind::Kleinian, [1, 2, 2], 4),
        ("A1", OrbitInvariants::kleinian(&[]), SingularityKind::Kleinian, [1, 1, 1], 2),
        ("(2,3,7)", OrbitInvariants::fuchsian(&[2, 3, 7]), SingularityKind::Fuchsian, [6, 14, 21], 42),
    ];
    let order = 100;
    let mut failures = Vec::new();
    for (name, inv, kind, w, d) in &cases {
        let oracle = PowerSeries::from_i64s(&weighted_hypersurface(w, *d, order));
        let direct = poincare_direct(inv, *kind, order).expect("valid input");
        if let Some(k) = oracle.first_mismatch(&direct).unwrap() {
            failures.push(format!("{name}: t^{k}: monomials {}, direct {}", oracle.coeff(k), direct.coeff(k)));
        }
    }
    Outcome { detail: format!("{} hypersurfaces to order {order}", cases.len()), failures }
}

fn criterion_4() -> Outcome {
    let inputs = suite_inputs(DEFAULT_SEED, RANDOM_TUPLES);
    let reports = par_map(&inputs, |(_, inv)| verify_prop_lp(inv, 100).expect("valid input"));
    Outcome::from_reports(inputs.len(), reports)
}

fn criterion_5() -> Outcome {
    let inputs = suite_inputs(DEFAULT_SEED, RANDOM_TUPLES);
    let reports = par_map(&inputs, |(key, inv)| {
        let kind = validate(inv).expect("valid input");
        let st = StarLattices::from_alphas(&inv.alphas()).unwrap();
        [identities_report(&st, key), orbit_report(&st, kind, 200, key).unwrap()]
    });
    Outcome::from_reports(inputs.len(), reports.into_iter().flatten())
}

fn criterion_6() -> Outcome {
    let mut failures = Vec::new();
    let e8 = StarLattices::from_alphas(&[2, 3, 5]).unwrap();
    let expected = IntPoly::from_i64s(&[1, 1, 0, -1, -1, -1, 0, 1, 1]);
    let got = e8.minus.char_poly();
    if got != expected {
        failures.push(format!("E8 char poly: {got}"));
    }
    let order = matrix_order(&e8.minus.coxeter_matrix(), DEFAULT_ORDER_CAP);
    if order != MatrixOrder::Finite(30) {
        failures.push(format!("E8 Coxeter order: {order:?}"));
    }

    let empty = StarLattices::from_alphas(&[]).unwrap();
    let q = hilbert_q(&RootedLattice::basis_root(&empty.zero, empty.center).unwrap(), 200).unwrap();
    let odd: Vec<i64> = (0..=200).map(|k| 2 * k + 1).collect();
    if let Some(k) = q.first_mismatch(&PowerSeries::from_i64s(&odd)).unwrap() {
        failures.push(format!("empty-arm Q at t^{k}: {}", q.coeff(k)));
    }

    let direct = poincare_direct(&OrbitInvariants::fuchsian(&[2, 3, 7]), SingularityKind::Fuchsian, 14).unwrap();
    let head = PowerSeries::from_i64s(&[1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 1]);
    if direct != head {
        failures.push(format!("(2,3,7) direct series: {:?}", direct.to_i64s()));
    }
    Outcome { detail: "4 spot values".into(), failures }
}

fn criterion_7() -> Outcome {
    let mut failures = Vec::new();
    let good = star_lattice(&[2, 3, 5]).unwrap();
    let center = good.rank() - 1;
    let n = good.rank();
    let mut edges = 0;
    for i in 0..n {
        for j in i + 1..n {
            if good.gram()[(i, j)] == 0.into() {
                continue;
            }
            edges += 1;
            let mut g = good.gram().clone();
            g[(i, j)] = 0.into();
            g[(j, i)] = 0.into();
            let bad = Lattice::new(good.labels().to_vec(), g).unwrap();
            let st = StarLattices::from_minus(bad, center).unwrap();
            let inv = OrbitInvariants::kleinian(&[2, 3, 5]);
            let r = theorem_report(&st, &inv, SingularityKind::Kleinian, 200, "deleted edge");
            if r.witness().is_none() {
                failures.push(format!("deleting edge {i}-{j} went unnoticed"));
            }
        }
    }
    for inv in [OrbitInvariants::fuchsian(&[2, 3, 6]), OrbitInvariants::kleinian(&[2, 3, 6])] {
        match validate(&inv) {
            Err(Error::NeitherKind(_)) => {}
            other => failures.push(format!("{inv}: {other:?}")),
        }
    }
    Outcome { detail: format!("{edges} deleted edges, 2 boundary inputs"), failures }
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome, Duration); 7] = [
        ("kleinian quotient series equal direct series, order 200", criterion_1, Duration::from_secs(5)),
        ("fuchsian quotient series equal direct series, order 200", criterion_2, Duration::from_secs(30)),
        ("direct series equal weighted hypersurface counts, order 100", criterion_3, Duration::MAX),
        ("rooted series of V0 equal quotient series, order 100", criterion_4, Duration::MAX),
        ("form, reflection, radical and orbit identities, k <= 200", criterion_5, Duration::MAX),
        ("spot values", criterion_6, Duration::MAX),
        ("negative controls", criterion_7, Duration::MAX),
    ];
    let mut all_ok = true;
    for (i, (title, run, budget)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let ok = outcome.failures.is_empty();
        let over = elapsed > *budget;
        let status = if ok { "PASS" } else { "FAIL" };
        println!("criterion {}: {status}  {title} ({}; {:.2} s)", i + 1, outcome.detail, elapsed.as_secs_f64());
        if over {
            println!("    note: exceeded the {} s budget", budget.as_secs());
        }
        for f in outcome.failures.iter().take(10) {
            println!("    {f}");
        }
        all_ok &= ok;
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
