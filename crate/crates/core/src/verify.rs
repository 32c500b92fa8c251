//! Exact verification of the series identities, reported check by check
//! with the first failing coefficient or entry.

use std::fmt;
use std::time::Duration;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::arith::{coeffs_to_json, int, int_to_json, series_from_rational, IntScalar, PowerSeries, Rational};
use crate::error::{Error, Result};
use crate::lattice::{coxeter_via_form, is_palindromic_up_to_sign, unit, IntMatrix};
use crate::poincare::{divisor_degree, hilbert_p, hilbert_q, poincare_direct, RootedLattice};
use crate::star::{catalog_entries, star_alphas_from_labels, validate, OrbitInvariants, SingularityKind, StarLattices};

pub const DEFAULT_ORDER: usize = 200;
pub const DEFAULT_SEED: u64 = 7919;
pub const RANDOM_TUPLES: usize = 50;

/// First discrepancy found by a check.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    /// Series index, flattened matrix entry, arm number or step, depending on
    /// the check.
    pub index: usize,
    pub expected: Value,
    pub got: Value,
    pub context: String,
}

impl Witness {
    pub fn to_json(&self) -> Value {
        json!({ "index": self.index, "expected": self.expected, "got": self.got, "context": self.context })
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} [{}]: expected {}, got {}", self.context, self.index, self.expected, self.got)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CheckResult {
    pub name: String,
    pub witness: Option<Witness>,
}

impl CheckResult {
    fn pass(name: impl Into<String>) -> Self {
        Self { name: name.into(), witness: None }
    }

    fn fail(name: impl Into<String>, witness: Witness) -> Self {
        Self { name: name.into(), witness: Some(witness) }
    }

    pub fn passed(&self) -> bool {
        self.witness.is_none()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "status": if self.passed() { "pass" } else { "fail" },
            "witness": self.witness.as_ref().map(Witness::to_json),
        })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerificationReport {
    pub check: String,
    pub subject: String,
    pub order: usize,
    pub checks: Vec<CheckResult>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckResult::passed)
    }

    pub fn status(&self) -> &'static str {
        if self.passed() {
            "pass"
        } else {
            "fail"
        }
    }

    /// The first failing sub-check and its witness.
    pub fn witness(&self) -> Option<(&str, &Witness)> {
        self.checks.iter().find_map(|c| c.witness.as_ref().map(|w| (c.name.as_str(), w)))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "check": self.check,
            "subject": self.subject,
            "order": self.order,
            "status": self.status(),
            "witness": self.witness().map(|(name, w)| {
                let mut v = w.to_json();
                v["check"] = name.into();
                v
            }),
            "checks": self.checks.iter().map(CheckResult::to_json).collect::<Vec<_>>(),
            "elapsed_ms": self.elapsed.as_secs_f64() * 1e3,
        })
    }
}

#[cfg(not(target_arch = "wasm32"))]
fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = std::time::Instant::now();
    let v = f();
    (v, start.elapsed())
}

// no monotonic clock on wasm32-unknown-unknown
#[cfg(target_arch = "wasm32")]
fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    (f(), Duration::ZERO)
}

fn report(check: &str, subject: &str, order: usize, f: impl FnOnce() -> Vec<CheckResult>) -> VerificationReport {
    let (checks, elapsed) = timed(f);
    VerificationReport { check: check.into(), subject: subject.into(), order, checks, elapsed }
}

/// `kleinian(2,3,5)`, the form accepted by the catalog lookup.
pub fn subject_of(kind: SingularityKind, alpha: &[i64]) -> String {
    let list: Vec<String> = alpha.iter().map(i64::to_string).collect();
    format!("{}({})", kind.name(), list.join(","))
}

fn compare_series(name: &str, expected: &PowerSeries, got: &PowerSeries) -> CheckResult {
    match expected.first_mismatch(got) {
        Ok(None) => CheckResult::pass(name),
        Ok(Some(k)) => CheckResult::fail(
            name,
            Witness {
                index: k,
                expected: int_to_json(expected.coeff(k)),
                got: int_to_json(got.coeff(k)),
                context: "coefficient of t^k".into(),
            },
        ),
        Err(e) => error_check(name, e),
    }
}

/// A computation that could not be carried out counts as a failure at the
/// index where it stopped.
fn error_check(name: &str, err: Error) -> CheckResult {
    let index = match err {
        Error::NonIntegralCoefficient { index } | Error::RouteMismatch { index, .. } => index,
        Error::NegativeDimension { k, .. } => k,
        Error::OrderMismatch { left, right } => left.min(right) + 1,
        _ => 0,
    };
    CheckResult::fail(name, Witness { index, expected: Value::Null, got: err.to_string().into(), context: "error".into() })
}

fn series_check(name: &str, expected: Result<PowerSeries>, got: Result<PowerSeries>) -> CheckResult {
    match (expected, got) {
        (Ok(e), Ok(g)) => compare_series(name, &e, &g),
        (Err(err), _) | (_, Err(err)) => error_check(name, err),
    }
}

fn compare_matrices(name: &str, expected: &IntMatrix, got: &IntMatrix) -> CheckResult {
    if expected.rows() != got.rows() || expected.cols() != got.cols() {
        return CheckResult::fail(
            name,
            Witness {
                index: 0,
                expected: json!([expected.rows(), expected.cols()]),
                got: json!([got.rows(), got.cols()]),
                context: "shape".into(),
            },
        );
    }
    for i in 0..expected.rows() {
        for j in 0..expected.cols() {
            if expected[(i, j)] != got[(i, j)] {
                return CheckResult::fail(
                    name,
                    Witness {
                        index: i * expected.cols() + j,
                        expected: int_to_json(&expected[(i, j)]),
                        got: int_to_json(&got[(i, j)]),
                        context: format!("entry ({i}, {j})"),
                    },
                );
            }
        }
    }
    CheckResult::pass(name)
}

fn compare_ints(name: &str, index: usize, context: &str, expected: &IntScalar, got: &IntScalar) -> Option<CheckResult> {
    (expected != got).then(|| {
        CheckResult::fail(
            name,
            Witness { index, expected: int_to_json(expected), got: int_to_json(got), context: context.into() },
        )
    })
}

/// Kind determined by the sign of `sum 1/alpha - (r - 2)`, `None` on the
/// boundary.
pub fn infer_kind(alpha: &[i64]) -> Option<SingularityKind> {
    let sum: Rational = alpha.iter().map(|&a| Rational::new(int(1), int(a))).sum();
    let bound = Rational::from_integer(int(alpha.len() as i64 - 2));
    match sum.cmp(&bound) {
        std::cmp::Ordering::Greater => Some(SingularityKind::Kleinian),
        std::cmp::Ordering::Less => Some(SingularityKind::Fuchsian),
        std::cmp::Ordering::Equal => None,
    }
}

fn built(inv: &OrbitInvariants) -> Result<(SingularityKind, StarLattices)> {
    let kind = validate(inv)?;
    Ok((kind, StarLattices::from_alphas(&inv.alphas())?))
}

/// Kleinian: `Delta-/Delta0 == direct`; Fuchsian: `Delta+/Delta0 == direct`.
pub fn verify_theorem(inv: &OrbitInvariants, order: usize) -> Result<VerificationReport> {
    let (kind, st) = built(inv)?;
    Ok(theorem_report(&st, inv, kind, order, &subject_of(kind, &inv.alphas())))
}

/// The theorem check on given lattices, which need not be the ones `inv`
/// describes.
pub fn theorem_report(
    st: &StarLattices,
    inv: &OrbitInvariants,
    kind: SingularityKind,
    order: usize,
    subject: &str,
) -> VerificationReport {
    report("theorem", subject, order, || {
        let [dm, d0, dp] = st.char_polys();
        let (num, name) = match kind {
            SingularityKind::Kleinian => (&dm, "delta-/delta0 == direct"),
            SingularityKind::Fuchsian => (&dp, "delta+/delta0 == direct"),
        };
        vec![series_check(name, poincare_direct(inv, kind, order), series_from_rational(num, &d0, order))]
    })
}

/// `Q(V0, E) == Delta-/Delta0` and `P(V0, E) + t == Delta+/Delta0`, plus the
/// composed comparison with the direct series.
pub fn verify_prop_lp(inv: &OrbitInvariants, order: usize) -> Result<VerificationReport> {
    let (kind, st) = built(inv)?;
    Ok(rooted_series_report(&st, Some((inv, kind)), order, &subject_of(kind, &inv.alphas())))
}

/// Pass `direct = None` to check only the lattice identities.
pub fn rooted_series_report(
    st: &StarLattices,
    direct: Option<(&OrbitInvariants, SingularityKind)>,
    order: usize,
    subject: &str,
) -> VerificationReport {
    report("rooted_series", subject, order, || {
        let [dm, d0, dp] = st.char_polys();
        let e = RootedLattice::basis_root(&st.zero, st.center).expect("E is a basis root");
        let q = hilbert_q(&e, order);
        let p_plus_t = hilbert_p(&e, order).map(|mut p| {
            p.add_monomial(1, 1);
            p
        });
        let mut checks = vec![
            series_check("Q(V0,E) == delta-/delta0", series_from_rational(&dm, &d0, order), q.clone()),
            series_check("P(V0,E) + t == delta+/delta0", series_from_rational(&dp, &d0, order), p_plus_t.clone()),
        ];
        if let Some((inv, kind)) = direct {
            let d = poincare_direct(inv, kind, order);
            checks.push(match kind {
                SingularityKind::Kleinian => series_check("direct == Q(V0,E)", d, q),
                SingularityKind::Fuchsian => series_check("direct == P(V0,E) + t", d, p_plus_t),
            });
        }
        checks
    })
}

/// Orbit computations on `V0 / rad V0`: the two reflections at `E` and
/// `E - u` cancel, `tau0` factors through the arms, each arm factor has
/// period `alpha_i` on `E`, and the orbit sums of `E` give `1 + deg D^(k)`
/// for `1 <= k <= k_max`.
pub fn verify_orbit_formulas(inv: &OrbitInvariants, k_max: usize) -> Result<VerificationReport> {
    let (kind, st) = built(inv)?;
    orbit_report(&st, kind, k_max, &subject_of(kind, &inv.alphas()))
}

pub fn orbit_report(st: &StarLattices, kind: SingularityKind, k_max: usize, subject: &str) -> Result<VerificationReport> {
    if star_alphas_from_labels(st.minus.lattice.labels()).is_none() {
        return Err(Error::InvalidInput("orbit formulas need a lattice with star labels".into()));
    }
    let inv = OrbitInvariants::of_kind(kind, &st.alphas());
    Ok(report("orbit_formulas", subject, k_max, || orbit_checks(st, &inv, kind, k_max)))
}

fn orbit_checks(st: &StarLattices, inv: &OrbitInvariants, kind: SingularityKind, k_max: usize) -> Vec<CheckResult> {
    let v0 = &st.zero.lattice;
    let n = v0.rank();
    let q = v0.quotient_by_radical();
    let m = q.lattice.rank();
    let refl = |i: usize| v0.reflection_matrix(i).expect("basis of V0 consists of roots");
    let mut checks = Vec::new();

    let cancel = q.induced(&(&refl(st.center) * &refl(st.isotropic_index())));
    checks.push(compare_matrices("s_E s_(E-u) == id", &IntMatrix::identity(m), &cancel));

    let arm_factors: Vec<IntMatrix> = st
        .arms
        .iter()
        .map(|arm| q.induced(&arm.clone().fold(IntMatrix::identity(n), |acc, i| &acc * &refl(i))))
        .collect();
    let product = arm_factors.iter().fold(IntMatrix::identity(m), |acc, t| &acc * t);
    let tau0 = q.induced(&st.zero.coxeter_matrix());
    checks.push(compare_matrices("tau0 == tau_1 ... tau_r", &tau0, &product));

    let e_bar = q.project(&unit(n, st.center));
    let period_name = "arm factor period on E == alpha";
    let mut period_fail = None;
    for (i, (t, alpha)) in arm_factors.iter().zip(inv.alphas()).enumerate() {
        let mut v = e_bar.clone();
        let mut period = None;
        for k in 1..=alpha {
            v = t.mul_vec(&v);
            if v == e_bar {
                period = Some(k);
                break;
            }
        }
        if period != Some(alpha) {
            period_fail = Some(Witness {
                index: i + 1,
                expected: alpha.into(),
                got: period.map_or(Value::Null, Value::from),
                context: "arm".into(),
            });
            break;
        }
    }
    checks.push(match period_fail {
        None => CheckResult::pass(period_name),
        Some(w) => CheckResult::fail(period_name, w),
    });

    // <e, .> as a row vector on the quotient
    let e_row = q.lattice.gram().mul_vec(&e_bar);
    let pair_e = |x: &[IntScalar]| -> IntScalar { e_row.iter().zip(x).map(|(a, b)| a * b).sum() };
    let ends: Vec<IntScalar> = st.arms.iter().map(|arm| pair_e(&q.project(&unit(n, arm.end - 1)))).collect();
    let (name, step) = match kind {
        SingularityKind::Fuchsian => ("1 + <e, sum_{l<k} tau0^l e> == 1 + deg D^(k)", tau0.clone()),
        SingularityKind::Kleinian => (
            "1 - <e, sum_{1<=l<=k} tau0^-l e> == 1 + deg D^(k)",
            tau0.integral_inverse().expect("an isometry is invertible over the integers"),
        ),
    };
    let e_e = pair_e(&e_bar);
    let mut v = e_bar.clone();
    let mut orbit_sum = IntScalar::zero();
    if kind == SingularityKind::Fuchsian {
        orbit_sum += &e_e;
    }
    for k in 1..=k_max {
        if kind == SingularityKind::Kleinian {
            v = step.mul_vec(&v);
            orbit_sum += pair_e(&v);
        }
        let kk = k as i64;
        let (lhs, middle) = match kind {
            SingularityKind::Fuchsian => {
                let coeffs = inv.alphas().into_iter().map(|a| int((kk * (a - 1)).div_euclid(a)));
                let mid = coeffs.zip(&ends).fold(int(kk) * &e_e, |acc, (c, end)| acc + c * end);
                (IntScalar::one() + &orbit_sum, IntScalar::one() + mid)
            }
            SingularityKind::Kleinian => {
                let coeffs = inv.alphas().into_iter().map(|a| int(kk - kk.div_euclid(a)));
                let mid = coeffs.zip(&ends).fold(int(kk) * &e_e, |acc, (c, end)| acc + c * end);
                (IntScalar::one() - &orbit_sum, IntScalar::one() - mid)
            }
        };
        let rhs = int(1 + divisor_degree(inv, kind, k as u64));
        let fail = compare_ints(name, k, "orbit sum at k", &rhs, &lhs)
            .or_else(|| compare_ints(name, k, "closed form at k", &rhs, &middle));
        if let Some(f) = fail {
            checks.push(f);
            return checks;
        }
        if kind == SingularityKind::Fuchsian {
            v = step.mul_vec(&v);
            orbit_sum += pair_e(&v);
        }
    }
    checks.push(CheckResult::pass(name));
    checks
}

/// Form identities on `V-`, `V0`, `V+` and the radical of `V0`.
pub fn verify_identities(inv: &OrbitInvariants) -> Result<VerificationReport> {
    let (kind, st) = built(inv)?;
    Ok(identities_report(&st, &subject_of(kind, &inv.alphas())))
}

pub fn identities_report(st: &StarLattices, subject: &str) -> VerificationReport {
    report("identities", subject, 0, || {
        let mut checks = Vec::new();
        for (label, cl) in [("V-", &st.minus), ("V0", &st.zero), ("V+", &st.plus)] {
            let n = cl.rank();
            let tau = cl.coxeter_matrix();
            let a = cl.asym_form();
            let c = cl.basis.change_of_basis();
            let via = coxeter_via_form(&a).expect("the form matrix is unitriangular by construction");
            checks.push(compare_matrices(&format!("{label}: tau == -A^-1 A^T"), &(&tau * &c), &(&c * &via)));
            checks.push(compare_matrices(&format!("{label}: (y,x) == -(x,tau y)"), &a.transpose(), &(&a * &via).neg()));

            let name = format!("{label}: det tau == (-1)^rank");
            let sign = if n % 2 == 0 { int(1) } else { int(-1) };
            checks.push(compare_ints(&name, n, "determinant", &sign, &tau.determinant()).unwrap_or(CheckResult::pass(name)));

            let p = cl.char_poly();
            let name = format!("{label}: char poly constant term == 1");
            checks.push(compare_ints(&name, 0, "coefficient of t^0", &int(1), &p.coeff(0)).unwrap_or(CheckResult::pass(name)));

            let name = format!("{label}: char poly palindromic up to sign");
            checks.push(if is_palindromic_up_to_sign(p.coeffs()) {
                CheckResult::pass(name)
            } else {
                let k = (0..=n).find(|&i| p.coeff(i) != p.coeff(n - i)).unwrap_or(0);
                CheckResult::fail(
                    name,
                    Witness {
                        index: k,
                        expected: int_to_json(&p.coeff(n - k)),
                        got: int_to_json(&p.coeff(k)),
                        context: "coefficient of t^k against t^(rank-k)".into(),
                    },
                )
            });
        }
        let name = "V0: radical == <u>";
        let u = st.u_in_zero();
        let minus_u: Vec<IntScalar> = u.iter().map(|x| -x).collect();
        let rad = st.zero.lattice.radical_basis();
        checks.push(if rad.len() == 1 && (rad[0] == u || rad[0] == minus_u) {
            CheckResult::pass(name)
        } else {
            CheckResult::fail(
                name,
                Witness {
                    index: 0,
                    expected: Value::Array(vec![coeffs_to_json(&u)]),
                    got: Value::Array(rad.iter().map(|r| coeffs_to_json(r)).collect()),
                    context: "radical basis".into(),
                },
            )
        });
        checks
    })
}

/// Every check for validated invariants; `order` bounds both the series and
/// the orbit sums.
pub fn verify_all(inv: &OrbitInvariants, order: usize) -> Result<Vec<VerificationReport>> {
    let (kind, st) = built(inv)?;
    let subject = subject_of(kind, &inv.alphas());
    Ok(vec![
        theorem_report(&st, inv, kind, order, &subject),
        rooted_series_report(&st, Some((inv, kind)), order, &subject),
        orbit_report(&st, kind, order, &subject)?,
        identities_report(&st, &subject),
    ])
}

/// Checks for lattices given directly. The form identities and rooted series
/// identities always apply; when the labels describe a star that is not on
/// the Kleinian/Fuchsian boundary, the series are also compared with the
/// direct series of that star and the orbit formulas are checked.
pub fn verify_lattices(st: &StarLattices, order: usize, subject: &str) -> Vec<VerificationReport> {
    let kind = star_alphas_from_labels(st.minus.lattice.labels())
        .and_then(|alpha| infer_kind(&alpha).map(|k| (k, OrbitInvariants::of_kind(k, &alpha))));
    let mut out = Vec::new();
    if let Some((kind, inv)) = &kind {
        out.push(theorem_report(st, inv, *kind, order, subject));
    }
    out.push(rooted_series_report(st, kind.as_ref().map(|(k, inv)| (inv, *k)), order, subject));
    if let Some((kind, _)) = kind {
        out.push(orbit_report(st, kind, order, subject).expect("star labels present"));
    }
    out.push(identities_report(st, subject));
    out
}

/// `count` Fuchsian tuples with `r` drawn from `arm_counts`, `alpha_i` from
/// `2..=12`, kept when `sum 1/alpha_i < r - 2`; sorted ascending.
pub fn random_fuchsian(seed: u64, count: usize, arm_counts: &[usize]) -> Vec<OrbitInvariants> {
    assert!(!arm_counts.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    while out.len() < count {
        let r = arm_counts[rng.random_range(0..arm_counts.len())];
        let mut alpha: Vec<i64> = (0..r).map(|_| rng.random_range(2..=12)).collect();
        alpha.sort_unstable();
        if infer_kind(&alpha) == Some(SingularityKind::Fuchsian) {
            out.push(OrbitInvariants::fuchsian(&alpha));
        }
    }
    out
}

/// Named catalog entries followed by `random` seeded Fuchsian tuples with
/// `r` in `{3, 4, 5}`.
pub fn suite_inputs(seed: u64, random: usize) -> Vec<(String, OrbitInvariants)> {
    let mut inputs = catalog_entries();
    for (i, inv) in random_fuchsian(seed, random, &[3, 4, 5]).into_iter().enumerate() {
        inputs.push((format!("random-{:02}", i + 1), inv));
    }
    inputs
}

/// Runs [`verify_all`] over the inputs, in parallel when enabled; results
/// keep the input order and every report subject is prefixed by its key.
pub fn run_suite(inputs: &[(String, OrbitInvariants)], order: usize) -> Vec<(String, Result<Vec<VerificationReport>>)> {
    let one = |(key, inv): &(String, OrbitInvariants)| {
        let res = verify_all(inv, order).map(|mut reports| {
            for r in &mut reports {
                r.subject = format!("{key} {}", r.subject);
            }
            reports
        });
        (key.clone(), res)
    };
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        inputs.par_iter().map(one).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        inputs.iter().map(one).collect()
    }
}

/// Fixed-width table, one row per report.
pub fn format_table(reports: &[VerificationReport]) -> String {
    let w = reports.iter().map(|r| r.subject.len()).max().unwrap_or(7).max(7);
    let mut out = format!("{:<w$}  {:<14}  {:>5}  {:<6}  {}\n", "subject", "check", "order", "status", "witness");
    for r in reports {
        let witness = r.witness().map_or(String::new(), |(name, wit)| format!("{name}: {wit}"));
        out += &format!("{:<w$}  {:<14}  {:>5}  {:<6}  {}\n", r.subject, r.check, r.order, r.status(), witness);
    }
    out
}
