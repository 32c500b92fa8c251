//! WebAssembly entry points for the browser demo in `www/`.
//!
//! Every entry point takes the kind (`kleinian`, `fuchsian` or `auto`) and
//! either a comma-separated arm list or a catalog name, and returns a JSON
//! document as a string. The plain `*_json` functions hold the logic and are
//! what the native tests exercise.

use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

use coxlat::arith::{series_from_rational, PowerSeries};
use coxlat::lattice::{matrix_order, Lattice, MatrixOrder};
use coxlat::poincare::{hilbert_p, hilbert_q, poincare_direct, RootedLattice};
use coxlat::star::{catalog, parse_alpha_list, validate, GramJson, OrbitInvariants, SingularityKind, StarLattices};
use coxlat::verify::{infer_kind, subject_of, verify_all};

pub const MAX_ORDER: usize = 2000;
pub const MAX_ALPHA: i64 = 60;
pub const MAX_ARMS: usize = 8;
const ORDER_CAP: u64 = 500;

fn resolve(kind: &str, alpha: &str) -> Result<(OrbitInvariants, SingularityKind), String> {
    let alpha = alpha.trim();
    let inv = if alpha.starts_with(|c: char| c.is_ascii_alphabetic()) {
        catalog(alpha).map_err(|e| e.to_string())?
    } else {
        let a = parse_alpha_list(alpha).map_err(|e| e.to_string())?;
        if a.len() > MAX_ARMS || a.iter().any(|&x| x > MAX_ALPHA) {
            return Err(format!("the demo is limited to {MAX_ARMS} arms with alpha at most {MAX_ALPHA}"));
        }
        let kind = match kind {
            "kleinian" => SingularityKind::Kleinian,
            "fuchsian" => SingularityKind::Fuchsian,
            "auto" => infer_kind(&a).ok_or("sum 1/alpha = r - 2: neither Kleinian nor Fuchsian")?,
            other => return Err(format!("unknown kind {other:?}")),
        };
        OrbitInvariants::of_kind(kind, &a)
    };
    let kind = validate(&inv).map_err(|e| e.to_string())?;
    Ok((inv, kind))
}

fn check_order(order: usize) -> Result<(), String> {
    if order > MAX_ORDER {
        return Err(format!("order is limited to {MAX_ORDER} in the demo"));
    }
    Ok(())
}

fn coeffs(s: &PowerSeries) -> Value {
    s.to_json()["coeffs"].clone()
}

/// Direct series, polynomial quotient and rooted-lattice series side by side.
pub fn series_json(kind: &str, alpha: &str, order: usize) -> Result<String, String> {
    check_order(order)?;
    let (inv, kind) = resolve(kind, alpha)?;
    let st = StarLattices::from_alphas(&inv.alphas()).map_err(|e| e.to_string())?;
    let [m, z, p] = st.char_polys();
    let direct = poincare_direct(&inv, kind, order).map_err(|e| e.to_string())?;
    let e = RootedLattice::basis_root(&st.zero, st.center).map_err(|e| e.to_string())?;
    let (quotient, rooted, rooted_name) = match kind {
        SingularityKind::Kleinian => (
            series_from_rational(&m, &z, order),
            hilbert_q(&e, order),
            "Q(V0,E)",
        ),
        SingularityKind::Fuchsian => (
            series_from_rational(&p, &z, order),
            hilbert_p(&e, order).map(|mut s| {
                s.add_monomial(1, 1);
                s
            }),
            "P(V0,E) + t",
        ),
    };
    let quotient = quotient.map_err(|e| e.to_string())?;
    let rooted = rooted.map_err(|e| e.to_string())?;
    let mismatch = [&quotient, &rooted].into_iter().filter_map(|s| direct.first_mismatch(s).ok().flatten()).min();
    let doc = json!({
        "subject": subject_of(kind, &inv.alphas()),
        "invariants": inv.to_string(),
        "kind": kind.name(),
        "order": order,
        "direct": coeffs(&direct),
        "quotient": coeffs(&quotient),
        "quotient_name": if kind == SingularityKind::Kleinian { "Delta-/Delta0" } else { "Delta+/Delta0" },
        "rooted": coeffs(&rooted),
        "rooted_name": rooted_name,
        "first_mismatch": mismatch,
    });
    Ok(doc.to_string())
}

/// Node positions for drawing the diagram of `V+`: arms fan out above the
/// center, `E-u` and `u-w` hang below it.
fn layout(st: &StarLattices) -> Vec<(f64, f64)> {
    let n = st.plus.rank();
    let mut pos = vec![(0.0, 0.0); n];
    let r = st.arms.len();
    for (i, arm) in st.arms.iter().enumerate() {
        let angle = std::f64::consts::PI * (i as f64 + 1.0) / (r as f64 + 1.0);
        let len = arm.len();
        for (j, idx) in arm.clone().enumerate() {
            let dist = (len - j) as f64;
            pos[idx] = (-dist * angle.cos(), -dist * angle.sin());
        }
    }
    pos[st.isotropic_index()] = (0.0, 1.0);
    pos[st.isotropic_index() + 1] = (0.0, 2.0);
    pos
}

fn gram(l: &Lattice) -> Value {
    serde_json::to_value(GramJson::from_lattice(l)).expect("plain data serializes")
}

fn order_json(o: MatrixOrder) -> Value {
    match o {
        MatrixOrder::Finite(k) => json!(k),
        MatrixOrder::ExceedsCap(cap) => json!(format!("> {cap}")),
    }
}

/// Gram matrices, characteristic polynomials and Coxeter orders of the three
/// lattices, with a layout of the diagram of `V+`.
pub fn lattices_json(kind: &str, alpha: &str) -> Result<String, String> {
    let (inv, kind) = resolve(kind, alpha)?;
    let st = StarLattices::from_alphas(&inv.alphas()).map_err(|e| e.to_string())?;
    let part = |cl: &coxlat::star::CoxeterLattice| {
        let p = cl.char_poly();
        json!({
            "rank": cl.rank(),
            "gram": gram(&cl.lattice),
            "charpoly": p.to_json(),
            "charpoly_text": p.to_string(),
            "coxeter_order": order_json(matrix_order(&cl.coxeter_matrix(), ORDER_CAP)),
        })
    };
    let g = st.plus.lattice.gram();
    let mut edges = Vec::new();
    for i in 0..st.plus.rank() {
        for j in i + 1..st.plus.rank() {
            if g[(i, j)] != 0.into() {
                edges.push(json!([i, j, g[(i, j)].to_string()]));
            }
        }
    }
    let nodes: Vec<Value> = st
        .plus
        .lattice
        .labels()
        .iter()
        .zip(layout(&st))
        .map(|(label, (x, y))| json!({ "label": label, "x": x, "y": y }))
        .collect();
    let doc = json!({
        "subject": subject_of(kind, &inv.alphas()),
        "invariants": inv.to_string(),
        "kind": kind.name(),
        "minus": part(&st.minus),
        "zero": part(&st.zero),
        "plus": part(&st.plus),
        "nodes": nodes,
        "edges": edges,
    });
    Ok(doc.to_string())
}

/// Every verification report for the input.
pub fn verify_json(kind: &str, alpha: &str, order: usize) -> Result<String, String> {
    check_order(order)?;
    let (inv, _) = resolve(kind, alpha)?;
    let reports = verify_all(&inv, order).map_err(|e| e.to_string())?;
    let list: Vec<Value> = reports.iter().map(|r| r.to_json()).collect();
    Ok(Value::Array(list).to_string())
}

#[wasm_bindgen]
pub fn series(kind: &str, alpha: &str, order: usize) -> Result<String, JsError> {
    series_json(kind, alpha, order).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn lattices(kind: &str, alpha: &str) -> Result<String, JsError> {
    lattices_json(kind, alpha).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(kind: &str, alpha: &str, order: usize) -> Result<String, JsError> {
    verify_json(kind, alpha, order).map_err(|e| JsError::new(&e))
}
