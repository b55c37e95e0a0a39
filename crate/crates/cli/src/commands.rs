use serde_json::{json, Value};

use kktlab_core::chevalley::{
    build_chevalley, classify_gcm, extend_diagram, positive_roots, verify_theorem1, Gcm, GcmClass,
};
use kktlab_core::compalg::CompositionKind;
use kktlab_core::jordan::JordanAlgebra;
use kktlab_core::kantorvf::{check_five_grading, close_fields, conformal_fields, generalized_fields};
use kktlab_core::kkt::{is_homomorphism, kkt_construct};
use kktlab_core::liealg::fingerprint_equal;
use kktlab_core::sampling::CheckMode;
use kktlab_core::{RatLieAlgebra, Rational};

use crate::report::{CliError, Outcome};
use crate::targets;

fn to_value<S: serde::Serialize>(s: &S) -> Value {
    serde_json::to_value(s).expect("reports serialize")
}

fn algebra_summary(l: &RatLieAlgebra) -> Value {
    json!({ "dim": l.dim(), "graded_dims": l.graded_dims(), "fingerprint": to_value(&l.fingerprint()) })
}

pub fn tower(target: &str, mode: CheckMode, seed: u64) -> Result<Outcome, CliError> {
    let j = targets::jordan(target)?;
    let t = kkt_construct(&j)?;
    let jacobi = t.con.check_jacobi(mode, seed);
    let grading = t.con.check_grading()?;
    let involution = t.con.check_graded_involution()?;
    let embeddings = json!({
        "der_in_str": is_homomorphism(&t.der_in_str, &t.der, &t.str),
        "str_to_reduced": is_homomorphism(&t.str_to_reduced, &t.str, &t.str_reduced),
        "str_in_con": is_homomorphism(&t.str_in_con, &t.str, &t.con),
    });
    let depth_ok = grading.graded_dims.iter().map(|(k, _)| *k).eq([-1, 0, 1]);
    let passed = jacobi.passed
        && grading.passed
        && involution.passed
        && depth_ok
        && t.dims_consistent()
        && embeddings.as_object().expect("object").values().all(|v| v == &Value::Bool(true));
    Ok(Outcome::new(
        json!({
            "jordan": j.name(),
            "jordan_dim": j.dim(),
            "der": algebra_summary(&t.der),
            "str_reduced": algebra_summary(&t.str_reduced),
            "str": algebra_summary(&t.str),
            "con": algebra_summary(&t.con),
            "dim_con_equals_2dimJ_plus_dim_str": t.dims_consistent(),
            "con_jacobi": to_value(&jacobi),
            "con_grading": to_value(&grading),
            "con_involution": to_value(&involution),
            "embeddings": embeddings,
        }),
        passed,
    ))
}

pub fn verify(identity: &str, target: &str, mode: CheckMode, seed: u64) -> Result<Outcome, CliError> {
    match identity {
        "jordan" => {
            let j = targets::jordan(target)?;
            let trials = match mode {
                CheckMode::Full => 0,
                CheckMode::Sampled(n) => n,
            };
            let r = j.check_jordan_identity(trials, seed);
            Ok(Outcome::new(to_value(&r), r.passed))
        }
        "gjts" => {
            let t = targets::triple(target)?;
            let r = t.check_gjts(mode, seed);
            let sym = t.check_outer_symmetry();
            Ok(Outcome::new(json!({ "gjts": to_value(&r), "outer_symmetry": to_value(&sym) }), r.passed))
        }
        "jacobi" => {
            let l = targets::lie(target)?;
            let r = l.check_jacobi(mode, seed);
            Ok(Outcome::new(json!({ "dim": l.dim(), "jacobi": to_value(&r) }), r.passed))
        }
        "grading" => {
            let l = targets::lie(target)?;
            let g = l.check_grading()?;
            let mut passed = g.passed;
            let involution = match l.involution() {
                Some(_) => {
                    let r = l.check_graded_involution()?;
                    passed &= r.passed;
                    to_value(&r)
                }
                None => Value::Null,
            };
            let depth = g.graded_dims.iter().filter(|(_, c)| *c > 0).count();
            let five = check_five_grading(&l)?;
            Ok(Outcome::new(
                json!({
                    "dim": l.dim(),
                    "grading": to_value(&g),
                    "depth": depth,
                    "involution": involution,
                    "five_grading": to_value(&five),
                }),
                passed,
            ))
        }
        other => Err(CliError::Usage(format!("unknown identity '{other}' (expected jordan, gjts, jacobi or grading)"))),
    }
}

pub fn grade(g: &Gcm, node: usize) -> Result<Outcome, CliError> {
    let ch = build_chevalley(g)?;
    let graded = ch.graded(node)?;
    let dims = graded.graded_dims().unwrap_or_default();
    let depth = ch.grading_depth(node)?;
    Ok(Outcome::new(
        json!({
            "type": g.identify(),
            "matrix": g.rows(),
            "node": node + 1,
            "dim": graded.dim(),
            "graded_dims": dims,
            "depth": depth,
        }),
        true,
    ))
}

pub fn extend(g: &Gcm, node: usize, n: usize) -> Result<Outcome, CliError> {
    let e = extend_diagram(g, node, n)?;
    let class = classify_gcm(&e);
    Ok(Outcome::new(
        json!({
            "base": g.identify(),
            "node": node + 1,
            "n": n,
            "matrix": e.rows(),
            "labels": e.labels(),
            "class": class,
            "type": e.identify(),
            "determinant": e.to_matrix().determinant().to_string(),
        }),
        true,
    ))
}

pub fn theorem1(g: &Gcm, node: usize, n: usize) -> Result<Outcome, CliError> {
    let r = verify_theorem1(g, node, n)?;
    Ok(Outcome::new(to_value(&r), r.passed))
}

pub fn fields(family: &str, sig: &str, n: Option<usize>, seed: u64) -> Result<Outcome, CliError> {
    let (p, q) = targets::signature(sig)?;
    let d = p + q;
    let (list, expected, n) = match family {
        "conformal" => (conformal_fields::<Rational>(p, q)?, (d + 2) * (d + 1) / 2, None),
        "generalized" => {
            let n = n.ok_or_else(|| CliError::Usage("--n is required for the generalized family".into()))?;
            (generalized_fields(p, q, n)?, (d + 2 * n) * (d + 2 * n - 1) / 2, Some(n))
        }
        other => return Err(CliError::Usage(format!("unknown family '{other}' (expected conformal or generalized)"))),
    };
    let defs: Vec<Value> =
        list.iter().map(|f| json!({ "name": f.name(), "field": f.to_plain_string() })).collect();
    let count = list.len();
    let c = close_fields(list, None, usize::MAX)?;
    let l = &c.algebra;
    let jacobi = l.check_jacobi(CheckMode::Full, seed);
    let mut passed = l.dim() == expected && jacobi.passed;
    let five = match n {
        Some(n) if n >= 2 => {
            let r = check_five_grading(l)?;
            let want = [n * (n - 1) / 2, n * d, d * (d - 1) / 2 + n * n, n * d, n * (n - 1) / 2];
            let dims_ok = r.graded_dims.iter().map(|(_, c)| *c).eq(want);
            passed &= r.passed && dims_ok;
            json!({ "report": to_value(&r), "expected_dims": want })
        }
        _ => Value::Null,
    };
    Ok(Outcome::new(
        json!({
            "family": family,
            "signature": [p, q],
            "n": n,
            "field_count": count,
            "fields": defs,
            "closure_dim": l.dim(),
            "expected_dim": expected,
            "graded_dims": l.graded_dims(),
            "fingerprint": to_value(&l.fingerprint()),
            "jacobi": to_value(&jacobi),
            "five_grading": five,
        }),
        passed,
    ))
}

/// The lower right 3×3 corner: `str′ H3(K)`, `con H3(K)`, and the
/// extension of the con-row diagram at its black node by one copy.
pub fn magic() -> Result<Outcome, CliError> {
    let columns = [
        (CompositionKind::C, "A2xA2", "A5", "E6"),
        (CompositionKind::H, "A5", "D6", "E7"),
        (CompositionKind::O, "E6", "E7", "E8"),
    ];
    let mut out = Vec::new();
    let mut passed = true;
    for (k, str_type, con_type, last_type) in columns {
        let j = JordanAlgebra::<Rational>::new(3, k)?;
        let t = kkt_construct(&j)?;
        let str_ref = build_chevalley(&Gcm::named(str_type)?)?;
        let con_ref = build_chevalley(&Gcm::named(con_type)?)?;
        let str_match = fingerprint_equal(&t.str_reduced.fingerprint().ungraded(), &str_ref.algebra().fingerprint().ungraded());
        let con_match = fingerprint_equal(&t.con.fingerprint().ungraded(), &con_ref.algebra().fingerprint().ungraded());
        let black = kktlab_core::chevalley::named_node(con_type, "black")?;
        let ext = extend_diagram(&Gcm::named(con_type)?, black, 2)?;
        let class = classify_gcm(&ext);
        let ext_type = ext.identify();
        let g_minus1 = if class == GcmClass::Finite {
            Some(positive_roots(&ext)?.iter().filter(|r| r[black] == 1).count())
        } else {
            None
        };
        let last_match = ext_type.as_deref() == Some(last_type) && g_minus1 == Some(2 * j.dim());
        passed &= str_match && con_match && last_match;
        out.push(json!({
            "K": k.to_string(),
            "str_reduced": { "expected": str_type, "dim": t.str_reduced.dim(), "matches": str_match },
            "con": { "expected": con_type, "dim": t.con.dim(), "matches": con_match },
            "extension": {
                "expected": last_type,
                "found": ext_type,
                "class": class,
                "dim_g_minus1": g_minus1,
                "matches": last_match,
            },
        }));
    }
    Ok(Outcome::new(json!({ "columns": out }), passed))
}
