//! Orbit invariants of genus-0 Kleinian and Fuchsian singularities and the
//! star-shaped lattices `V-`, `V0 = V-[u]`, `V+ = V-[u, w]` built from them.
//!
//! Basis order of `V-`: the arms `E{i}_1, ..., E{i}_{alpha_i - 1}` for
//! `i = 1..r`, then the center `E`. The center meets the *last* element of
//! every arm. `V0` appends `E-u` and `V+` further appends `u-w`.

use std::fmt;
use std::ops::Range;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{int, IntPoly, IntScalar, Rational};
use crate::error::{Error, Result};
use crate::lattice::{
    asym_form_matrix, char_poly, coxeter_matrix, CoxeterAction, IntMatrix, Lattice, RootBasis,
};

pub const CENTER_LABEL: &str = "E";
pub const ISOTROPIC_LABEL: &str = "E-u";
pub const HYPERBOLIC_LABEL: &str = "u-w";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SingularityKind {
    Kleinian,
    Fuchsian,
}

impl SingularityKind {
    /// The integer `R` of the Gorenstein relations.
    pub fn gorenstein_r(self) -> i64 {
        match self {
            SingularityKind::Kleinian => -1,
            SingularityKind::Fuchsian => 1,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            SingularityKind::Kleinian => "kleinian",
            SingularityKind::Fuchsian => "fuchsian",
        }
    }
}

impl fmt::Display for SingularityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// `{g; b; (alpha_1, beta_1), ..., (alpha_r, beta_r)}` with the pairs sorted
/// by `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct OrbitInvariants {
    pub g: u64,
    pub b: i64,
    pub pairs: Vec<(i64, i64)>,
}

impl OrbitInvariants {
    pub fn new(g: u64, b: i64, mut pairs: Vec<(i64, i64)>) -> Self {
        pairs.sort();
        Self { g, b, pairs }
    }

    /// `{0; 2; (alpha_i, alpha_i - 1)}`.
    pub fn kleinian(alpha: &[i64]) -> Self {
        Self::new(0, 2, alpha.iter().map(|&a| (a, a - 1)).collect())
    }

    /// `{0; r - 2; (alpha_i, 1)}`.
    pub fn fuchsian(alpha: &[i64]) -> Self {
        Self::new(0, alpha.len() as i64 - 2, alpha.iter().map(|&a| (a, 1)).collect())
    }

    pub fn of_kind(kind: SingularityKind, alpha: &[i64]) -> Self {
        match kind {
            SingularityKind::Kleinian => Self::kleinian(alpha),
            SingularityKind::Fuchsian => Self::fuchsian(alpha),
        }
    }

    pub fn r(&self) -> usize {
        self.pairs.len()
    }

    pub fn alphas(&self) -> Vec<i64> {
        self.pairs.iter().map(|&(a, _)| a).collect()
    }

    /// `-b + sum beta_i / alpha_i`.
    pub fn vdeg(&self) -> Rational {
        let s: Rational = self.pairs.iter().map(|&(a, b)| ratio(b, a)).sum();
        s - Rational::from_integer(int(self.b))
    }

    pub fn reciprocal_sum(&self) -> Rational {
        self.pairs.iter().map(|&(a, _)| ratio(1, a)).sum()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: InvariantsJson = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
        Ok(raw.into())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({ "g": self.g, "b": self.b, "pairs": self.pairs })
    }
}

fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(int(n), int(d))
}

impl fmt::Display for OrbitInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}; {}; ", self.g, self.b)?;
        let pairs: Vec<String> = self.pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        write!(f, "{}}}", pairs.join(","))
    }
}

/// Either the full record `{"g":0,"b":2,"pairs":[[2,1],...]}` or the
/// shorthand `{"kind":"kleinian","alpha":[2,3,5]}`.
#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum InvariantsJson {
    Full { g: u64, b: i64, pairs: Vec<(i64, i64)> },
    Short { kind: SingularityKind, alpha: Vec<i64> },
}

impl From<InvariantsJson> for OrbitInvariants {
    fn from(raw: InvariantsJson) -> Self {
        match raw {
            InvariantsJson::Full { g, b, pairs } => OrbitInvariants::new(g, b, pairs),
            InvariantsJson::Short { kind, alpha } => OrbitInvariants::of_kind(kind, &alpha),
        }
    }
}

fn check_pairs(inv: &OrbitInvariants) -> Result<()> {
    for &(alpha, beta) in &inv.pairs {
        let bad = |reason| Err(Error::InvalidPair { alpha, beta, reason });
        if alpha < 2 {
            return bad("alpha must be at least 2");
        }
        if beta <= 0 || beta >= alpha {
            return bad("beta must satisfy 0 < beta < alpha");
        }
        if alpha.gcd(&beta) != 1 {
            return bad("alpha and beta must be coprime");
        }
    }
    Ok(())
}

/// First Gorenstein relation that fails for the given `R`, if any.
fn gorenstein_failure(inv: &OrbitInvariants, r_int: i64) -> Option<String> {
    for &(alpha, beta) in &inv.pairs {
        if (r_int * beta - 1).rem_euclid(alpha) != 0 {
            return Some(format!("R*beta = {} is not 1 mod {alpha} (R = {r_int})", r_int * beta));
        }
    }
    let lhs = inv.vdeg() * Rational::from_integer(int(r_int));
    let rhs = Rational::from_integer(int(2 - 2 * inv.g as i64 - inv.r() as i64)) + inv.reciprocal_sum();
    if lhs != rhs {
        return Some(format!("R*vdeg = {lhs} differs from 2-2g-r+sum 1/alpha = {rhs} (R = {r_int})"));
    }
    None
}

/// Classifies validated orbit invariants.
///
/// The Gorenstein relations are tried with `R = -1` (Kleinian) and `R = +1`
/// (Fuchsian); a record satisfying one of them is then accepted only if
/// `sum 1/alpha_i` lies strictly on the matching side of `r - 2`.
pub fn validate(inv: &OrbitInvariants) -> Result<SingularityKind> {
    if inv.g != 0 {
        return Err(Error::UnsupportedGenus(inv.g));
    }
    if inv.pairs.windows(2).any(|w| w[0].0 > w[1].0) {
        return Err(Error::InvalidInput("pairs must be sorted by alpha".into()));
    }
    check_pairs(inv)?;
    let sum = inv.reciprocal_sum();
    let bound = Rational::from_integer(int(inv.r() as i64 - 2));
    let mut failures = Vec::new();
    let mut boundary = None;
    for kind in [SingularityKind::Kleinian, SingularityKind::Fuchsian] {
        if let Some(why) = gorenstein_failure(inv, kind.gorenstein_r()) {
            failures.push(why);
            continue;
        }
        let side_ok = match kind {
            SingularityKind::Kleinian => sum > bound,
            SingularityKind::Fuchsian => sum < bound,
        };
        if side_ok {
            return Ok(kind);
        }
        boundary = Some(format!("{kind} pattern but sum 1/alpha = {sum} against r - 2 = {bound}"));
    }
    match boundary {
        Some(why) => Err(Error::NeitherKind(why)),
        None => Err(Error::GorensteinViolation(failures.join("; "))),
    }
}

/// A lattice together with the ordered root basis defining its Coxeter
/// element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterLattice {
    pub lattice: Lattice,
    pub basis: RootBasis,
}

impl CoxeterLattice {
    pub fn new(lattice: Lattice) -> Result<Self> {
        let basis = RootBasis::natural(&lattice)?;
        Ok(Self { lattice, basis })
    }

    pub fn rank(&self) -> usize {
        self.lattice.rank()
    }

    pub fn coxeter_matrix(&self) -> IntMatrix {
        coxeter_matrix(&self.lattice, &self.basis).expect("basis already checked to consist of roots")
    }

    pub fn char_poly(&self) -> IntPoly {
        char_poly(&self.coxeter_matrix())
    }

    pub fn asym_form(&self) -> IntMatrix {
        asym_form_matrix(&self.lattice, &self.basis)
    }

    pub fn action(&self) -> CoxeterAction {
        CoxeterAction::new(&self.lattice, &self.basis)
    }
}

/// The three lattices attached to a star, with their Coxeter bases.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarLattices {
    pub minus: CoxeterLattice,
    pub zero: CoxeterLattice,
    pub plus: CoxeterLattice,
    /// Index of `E` in every basis.
    pub center: usize,
    /// Index ranges of the arms, in basis order; empty when the labels do not
    /// describe a star.
    pub arms: Vec<Range<usize>>,
}

impl StarLattices {
    /// Star of arms of lengths `alpha_i - 1` around a central root.
    pub fn from_alphas(alpha: &[i64]) -> Result<Self> {
        let minus = star_lattice(alpha)?;
        let center = minus.rank() - 1;
        Self::from_minus(minus, center)
    }

    /// Extends an arbitrary root lattice, whose basis element `center` plays
    /// the role of `E`.
    pub fn from_minus(minus: Lattice, center: usize) -> Result<Self> {
        if center >= minus.rank() {
            return Err(Error::Dimension(format!("center index {center} out of range")));
        }
        let zero = extend_isotropic(&minus, center);
        let plus = extend_hyperbolic(&zero);
        let arms = star_alphas_from_labels(minus.labels())
            .map(|alpha| arm_ranges(&alpha))
            .unwrap_or_default();
        Ok(Self {
            minus: CoxeterLattice::new(minus)?,
            zero: CoxeterLattice::new(zero)?,
            plus: CoxeterLattice::new(plus)?,
            center,
            arms,
        })
    }

    /// Index of `E-u` in `V0` and `V+`.
    pub fn isotropic_index(&self) -> usize {
        self.minus.rank()
    }

    /// Coordinates in `V0` of the radical generator `u = E - (E-u)`.
    pub fn u_in_zero(&self) -> Vec<IntScalar> {
        let mut u = vec![IntScalar::zero(); self.zero.rank()];
        u[self.center] = IntScalar::one();
        u[self.isotropic_index()] = int(-1);
        u
    }

    /// Arm lengths plus one, when the star structure is known.
    pub fn alphas(&self) -> Vec<i64> {
        self.arms.iter().map(|r| r.len() as i64 + 1).collect()
    }

    pub fn char_polys(&self) -> [IntPoly; 3] {
        [self.minus.char_poly(), self.zero.char_poly(), self.plus.char_poly()]
    }
}

/// Validates and builds.
pub fn build(inv: &OrbitInvariants) -> Result<StarLattices> {
    validate(inv)?;
    StarLattices::from_alphas(&inv.alphas())
}

/// Label of the `j`-th element (1-based) of arm `i` (1-based).
pub fn arm_label(i: usize, j: usize) -> String {
    format!("E{i}_{j}")
}

fn arm_ranges(alpha: &[i64]) -> Vec<Range<usize>> {
    let mut start = 0;
    alpha
        .iter()
        .map(|&a| {
            let r = start..start + (a - 1) as usize;
            start = r.end;
            r
        })
        .collect()
}

/// Gram matrix of the star: arms are `A_{alpha_i - 1}` chains, the last
/// element of each arm meets the center.
pub fn star_lattice(alpha: &[i64]) -> Result<Lattice> {
    if let Some(&a) = alpha.iter().find(|&&a| a < 2) {
        return Err(Error::InvalidPair { alpha: a, beta: 0, reason: "alpha must be at least 2" });
    }
    let ranges = arm_ranges(alpha);
    let n = ranges.last().map_or(0, |r| r.end) + 1;
    let center = n - 1;
    let mut labels = Vec::with_capacity(n);
    let mut g = IntMatrix::zeros(n, n);
    for (i, range) in ranges.iter().enumerate() {
        for (j, idx) in range.clone().enumerate() {
            labels.push(arm_label(i + 1, j + 1));
            if idx + 1 < range.end {
                g[(idx, idx + 1)] = IntScalar::one();
                g[(idx + 1, idx)] = IntScalar::one();
            }
        }
        let last = range.end - 1;
        g[(last, center)] = IntScalar::one();
        g[(center, last)] = IntScalar::one();
    }
    labels.push(CENTER_LABEL.to_string());
    for i in 0..n {
        g[(i, i)] = int(-2);
    }
    Lattice::new(labels, g)
}

/// `V[u]` with basis `(B, E - u)`: `E - u` pairs with everything exactly as
/// `E` does, since `u` is isotropic and orthogonal to `V`.
pub fn extend_isotropic(v: &Lattice, center: usize) -> Lattice {
    let n = v.rank();
    let mut g = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = v.gram()[(i, j)].clone();
        }
        g[(i, n)] = v.gram()[(i, center)].clone();
        g[(n, i)] = v.gram()[(center, i)].clone();
    }
    g[(n, n)] = v.gram()[(center, center)].clone();
    let mut labels = v.labels().to_vec();
    labels.push(ISOTROPIC_LABEL.to_string());
    Lattice::new(labels, g).expect("extension of a symmetric Gram matrix is symmetric")
}

/// `V[u, w]` with basis `(B, E - u, u - w)`, given `V[u]` with basis
/// `(B, E - u)`: `u - w` is a root orthogonal to `B` and meets `E - u` once.
pub fn extend_hyperbolic(v0: &Lattice) -> Lattice {
    let n = v0.rank();
    let mut g = IntMatrix::zeros(n + 1, n + 1);
    for i in 0..n {
        for j in 0..n {
            g[(i, j)] = v0.gram()[(i, j)].clone();
        }
    }
    g[(n, n)] = int(-2);
    g[(n - 1, n)] = IntScalar::one();
    g[(n, n - 1)] = IntScalar::one();
    let mut labels = v0.labels().to_vec();
    labels.push(HYPERBOLIC_LABEL.to_string());
    Lattice::new(labels, g).expect("extension of a symmetric Gram matrix is symmetric")
}

/// Recovers the arm data from canonical star labels
/// (`E1_1, ..., E1_{a-1}, E2_1, ..., E`).
pub fn star_alphas_from_labels(labels: &[String]) -> Option<Vec<i64>> {
    let (last, arms) = labels.split_last()?;
    if last != CENTER_LABEL {
        return None;
    }
    let mut alpha: Vec<i64> = Vec::new();
    for label in arms {
        let (i, j) = label.strip_prefix('E')?.split_once('_')?;
        let (i, j): (usize, usize) = (i.parse().ok()?, j.parse().ok()?);
        if i == alpha.len() + 1 && j == 1 {
            alpha.push(2);
        } else if i == alpha.len() && j as i64 == *alpha.last()? {
            *alpha.last_mut()? += 1;
        } else {
            return None;
        }
    }
    Some(alpha)
}

const FUCHSIAN_NAMES: [(&str, [i64; 3]); 14] = [
    ("E12", [2, 3, 7]),
    ("E13", [2, 4, 5]),
    ("E14", [3, 3, 4]),
    ("Z11", [2, 3, 8]),
    ("Z12", [2, 4, 6]),
    ("Z13", [3, 3, 5]),
    ("Q10", [2, 3, 9]),
    ("Q11", [2, 4, 7]),
    ("Q12", [3, 3, 6]),
    ("W12", [2, 5, 5]),
    ("W13", [3, 4, 4]),
    ("S11", [2, 5, 6]),
    ("S12", [3, 4, 5]),
    ("U12", [4, 4, 4]),
];

/// Looks up a named singularity.
///
/// Kleinian: `A1`, `A{2a-1}` (a >= 2), `D{n+2}` (n >= 2), `E6`, `E7`, `E8`.
/// Fuchsian: the fourteen exceptional unimodal names keyed by their
/// Dolgachev triples (`E12` = (2,3,7), ...). Explicit data is accepted as
/// `kleinian(2,3,5)` or `fuchsian(2,3,7)`. Even-index `A` types are not
/// catalogued.
pub fn catalog(name: &str) -> Result<OrbitInvariants> {
    let unknown = || Error::UnknownName(name.to_string());
    if let Some((kind, rest)) = name.split_once('(') {
        let kind = match kind.trim() {
            "kleinian" => SingularityKind::Kleinian,
            "fuchsian" => SingularityKind::Fuchsian,
            _ => return Err(unknown()),
        };
        let body = rest.strip_suffix(')').ok_or_else(unknown)?;
        let alpha = parse_alpha_list(body).map_err(|_| unknown())?;
        return Ok(OrbitInvariants::of_kind(kind, &alpha));
    }
    if let Some(&(_, alpha)) = FUCHSIAN_NAMES.iter().find(|(n, _)| *n == name) {
        return Ok(OrbitInvariants::fuchsian(&alpha));
    }
    let (head, tail) = name.split_at(name.chars().next().map_or(0, char::len_utf8));
    let index: i64 = tail.parse().map_err(|_| unknown())?;
    let alpha: Vec<i64> = match (head, index) {
        ("A", 1) => vec![],
        ("A", m) if m >= 3 && m % 2 == 1 => vec![(m + 1) / 2; 2],
        ("D", m) if m >= 4 => vec![2, 2, m - 2],
        ("E", 6) => vec![2, 3, 3],
        ("E", 7) => vec![2, 3, 4],
        ("E", 8) => vec![2, 3, 5],
        _ => return Err(unknown()),
    };
    Ok(OrbitInvariants::kleinian(&alpha))
}

/// Comma-separated alpha list, e.g. `2,3,7`.
pub fn parse_alpha_list(s: &str) -> Result<Vec<i64>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|t| t.trim().parse::<i64>().map_err(|e| Error::InvalidInput(format!("bad alpha {t:?}: {e}"))))
        .collect()
}

/// Named entries: `A1`, `A3..A11`, `D4..D12`, `E6..E8` and the Fuchsian names.
pub fn catalog_entries() -> Vec<(String, OrbitInvariants)> {
    let mut names: Vec<String> = vec!["A1".into()];
    names.extend((2..=6).map(|a| format!("A{}", 2 * a - 1)));
    names.extend((4..=12).map(|m| format!("D{m}")));
    names.extend(["E6", "E7", "E8"].map(String::from));
    names.extend(FUCHSIAN_NAMES.iter().map(|(n, _)| n.to_string()));
    names
        .into_iter()
        .map(|n| {
            let inv = catalog(&n).expect("catalog names resolve");
            (n, inv)
        })
        .collect()
}

/// Gram rows as `i64`, for serialization of the small lattices built here.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramJson {
    pub labels: Vec<String>,
    pub gram: Vec<Vec<i64>>,
}

impl GramJson {
    pub fn from_lattice(l: &Lattice) -> Self {
        Self {
            labels: l.labels().to_vec(),
            gram: l.gram().to_i64_rows().expect("Gram entries of built lattices fit in i64"),
        }
    }

    pub fn to_lattice(&self) -> Result<Lattice> {
        let n = self.gram.len();
        if self.gram.iter().any(|r| r.len() != n) {
            return Err(Error::Dimension("Gram matrix must be square".into()));
        }
        Lattice::new(self.labels.clone(), IntMatrix::from_i64_rows(&self.gram))
    }
}

/// `V-` from either a bare `{"labels", "gram"}` object or a document with a
/// `"minus"` entry (as written by `build --format json`).
pub fn lattice_from_json(text: &str) -> Result<Lattice> {
    let value: serde_json::Value = serde_json::from_str(text).map_err(|e| Error::InvalidInput(e.to_string()))?;
    let node = value.get("minus").cloned().unwrap_or(value);
    let parsed: GramJson = serde_json::from_value(node).map_err(|e| Error::InvalidInput(e.to_string()))?;
    parsed.to_lattice()
}
