//! Parsing of the textual target descriptions accepted on the command line.

use std::path::Path;

use kktlab_core::chevalley::{build_chevalley, graded_slice, named_node, Gcm};
use kktlab_core::compalg::CompositionKind;
use kktlab_core::jordan::JordanAlgebra;
use kktlab_core::kantorvf::{close_fields, conformal_fields, generalized_fields, kantor_closure};
use kktlab_core::kkt::{derivation_algebra, kkt_construct, reduced_structure, structure_algebra};
use kktlab_core::triplesys::{eq7_tensor, jts_tensor, theorem1_tensor, TripleTensor};
use kktlab_core::{RatJordan, RatLieAlgebra, Rational};

use crate::report::CliError;

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

/// `H3:O` style Jordan algebra names.
pub fn jordan(target: &str) -> Result<RatJordan, CliError> {
    let (n, k) = target
        .trim()
        .strip_prefix(['H', 'h'])
        .and_then(|r| r.split_once(':'))
        .ok_or_else(|| usage(format!("bad Jordan algebra '{target}' (expected e.g. H3:O)")))?;
    let n: usize = n.parse().map_err(|_| usage(format!("bad matrix size in '{target}'")))?;
    let kind: CompositionKind = k.parse()?;
    Ok(JordanAlgebra::new(n, kind)?)
}

/// A named type (`E6`, `A2xA2`) or a JSON file holding a matrix.
pub fn gcm(type_name: Option<&str>, file: Option<&Path>) -> Result<Gcm, CliError> {
    match (type_name, file) {
        (Some(t), None) => Ok(Gcm::named(t)?),
        (None, Some(f)) => {
            let text = std::fs::read_to_string(f).map_err(|e| usage(format!("{}: {e}", f.display())))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", f.display())))?;
            Ok(Gcm::from_json(&v)?)
        }
        _ => Err(usage("give exactly one of --type and --gcm")),
    }
}

/// Resolves a node name against a named type, or a 1-based number otherwise.
pub fn node(type_name: Option<&str>, g: &Gcm, node: &str) -> Result<usize, CliError> {
    match type_name {
        Some(t) if !t.contains(['x', 'X']) => Ok(named_node(t, node)?),
        _ => {
            let k: usize = node.trim().parse().map_err(|_| usage(format!("node '{node}' must be a number here")))?;
            if (1..=g.rank()).contains(&k) {
                Ok(k - 1)
            } else {
                Err(usage(format!("node {k} out of range 1..={}", g.rank())))
            }
        }
    }
}

fn parts(target: &str) -> Vec<&str> {
    target.split(':').map(str::trim).collect()
}

fn number(s: &str, what: &str) -> Result<usize, CliError> {
    s.parse().map_err(|_| usage(format!("bad {what} '{s}'")))
}

/// `p,q` signature.
pub fn signature(s: &str) -> Result<(usize, usize), CliError> {
    let (p, q) = s.split_once(',').ok_or_else(|| usage(format!("bad signature '{s}' (expected p,q)")))?;
    Ok((number(p.trim(), "signature")?, number(q.trim(), "signature")?))
}

/// Triple systems: `jts:H3:O`, `eq7:H2:R:2`, `slice:E6:trivalent`,
/// `slotted:A5:middle:2`, or `file:<path>` holding tensor JSON.
pub fn triple(target: &str) -> Result<TripleTensor<Rational>, CliError> {
    let p = parts(target);
    match p.as_slice() {
        ["jts", h, k] => Ok(jts_tensor(&jordan(&format!("{h}:{k}"))?)),
        ["eq7", h, k, n] => Ok(eq7_tensor(&jordan(&format!("{h}:{k}"))?, number(n, "copy count")?)?),
        ["slice", t, node] => {
            let g = Gcm::named(t)?;
            let ch = build_chevalley(&g)?;
            Ok(graded_slice(&ch, named_node(t, node)?)?.triple)
        }
        ["slotted", t, node, n] => {
            let g = Gcm::named(t)?;
            let ch = build_chevalley(&g)?;
            let s = graded_slice(&ch, named_node(t, node)?)?;
            Ok(theorem1_tensor(&s.triple, &s.form, number(n, "copy count")?)?)
        }
        ["file", path] => {
            let text = std::fs::read_to_string(path).map_err(|e| usage(format!("{path}: {e}")))?;
            let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| usage(format!("{path}: {e}")))?;
            Ok(TripleTensor::from_json(&v)?)
        }
        _ => Err(usage(format!(
            "bad triple system '{target}' (expected jts:H3:O, eq7:H2:R:2, slice:E6:trivalent, slotted:A5:middle:2 or file:<path>)"
        ))),
    }
}

/// Lie algebras: `chevalley:E8`, `chevalley:E6:trivalent` (graded by that
/// node), `der|str|str-reduced|con:H3:O`, `conformal:1,3`,
/// `generalized:1,2:2`, `kantor:<triple system>`.
pub fn lie(target: &str) -> Result<RatLieAlgebra, CliError> {
    let p = parts(target);
    match p.as_slice() {
        ["chevalley", t] => Ok(build_chevalley(&Gcm::named(t)?)?.algebra().clone()),
        ["chevalley", t, node] => Ok(build_chevalley(&Gcm::named(t)?)?.graded(named_node(t, node)?)?),
        ["der", h, k] => Ok(derivation_algebra(&jordan(&format!("{h}:{k}"))?)?),
        ["str", h, k] => Ok(structure_algebra(&jordan(&format!("{h}:{k}"))?)?),
        ["str-reduced", h, k] => Ok(reduced_structure(&jordan(&format!("{h}:{k}"))?)?),
        ["con", h, k] => Ok(kkt_construct(&jordan(&format!("{h}:{k}"))?)?.con),
        ["conformal", sig] => {
            let (a, b) = signature(sig)?;
            Ok(close_fields(conformal_fields(a, b)?, None, usize::MAX)?.algebra)
        }
        ["generalized", sig, n] => {
            let (a, b) = signature(sig)?;
            Ok(close_fields(generalized_fields(a, b, number(n, "copy count")?)?, None, usize::MAX)?.algebra)
        }
        ["kantor", rest @ ..] if !rest.is_empty() => Ok(kantor_closure(&triple(&rest.join(":"))?)?.algebra),
        _ => Err(usage(format!(
            "bad Lie algebra '{target}' (expected chevalley:E8, chevalley:E6:trivalent, con:H3:O, der:.., str:.., str-reduced:.., conformal:1,3, generalized:1,2:2 or kantor:<triple>)"
        ))),
    }
}
