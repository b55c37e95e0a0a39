use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::gcm::{classify_gcm, extend_diagram, Gcm, GcmClass};
use super::roots::build_chevalley;
use super::slice::graded_slice;
use crate::error::{Error, Result};
use crate::exactnum::SparseVec;
use crate::scalar::Scalar;
use crate::triplesys::theorem1_tensor;
use crate::Rational;

pub const FORM_NORMALIZATION: &str =
    "B(x, y) = kappa(x, tau y) / kappa(e_b, f_b), b the black simple root; B(e_mu, e_nu) = -delta (b,b)/(mu,mu)";

#[derive(Clone, Debug, Serialize)]
pub struct Theorem1Report {
    pub h: String,
    pub g: String,
    pub black: usize,
    pub n: usize,
    pub g_class: GcmClass,
    pub g_depth: usize,
    pub dim_h_minus1: usize,
    pub dim_g_minus1: usize,
    /// Slot (1-based) and inner index of every `g_{−1}` basis vector.
    pub slots: Vec<usize>,
    pub inner: Vec<usize>,
    /// Sign `λ_i` attached to the slotted basis vector `i`.
    pub signs: Vec<i8>,
    pub tensor_entries: usize,
    pub form_normalization: String,
    pub passed: bool,
    pub mismatch: Option<String>,
    /// Nonzero entries `(row, col, value)` of the isomorphism from the slotted
    /// space to `g_{−1}`: column `slot·dim h_{−1} + inner`, row = `g_{−1}` index.
    pub isomorphism: Vec<(usize, usize, i8)>,
}

/// Solves `A s = b` over GF(2); free variables are set to 0.
fn solve_gf2(n: usize, equations: &[(Vec<usize>, bool)]) -> Option<Vec<bool>> {
    let words = n / 64 + 1;
    let mut rows: Vec<Vec<u64>> = Vec::new();
    let mut seen = HashSet::new();
    for (vars, rhs) in equations {
        let mut row = vec![0u64; words];
        for &v in vars {
            row[v / 64] ^= 1 << (v % 64);
        }
        if *rhs {
            row[n / 64] ^= 1 << (n % 64);
        }
        if seen.insert(row.clone()) {
            rows.push(row);
        }
    }
    let bit = |r: &Vec<u64>, c: usize| r[c / 64] >> (c % 64) & 1 == 1;
    let mut pivots = Vec::new();
    let mut rank = 0;
    for c in 0..n {
        let Some(p) = (rank..rows.len()).find(|&r| bit(&rows[r], c)) else { continue };
        rows.swap(rank, p);
        let pr = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && bit(row, c) {
                for (w, x) in row.iter_mut().zip(&pr) {
                    *w ^= x;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rows[rank..].iter().any(|r| bit(r, n)) {
        return None;
    }
    let mut s = vec![false; n];
    for (r, &c) in pivots.iter().enumerate() {
        s[c] = bit(&rows[r], n);
    }
    Some(s)
}

/// Compares the slotted product on `(h_{−1})^n` with the triple system
/// `g_{−1}` of the extended algebra.
///
/// A `g_{−1}` root whose coefficients on the appended chain are `1` exactly
/// on chain nodes `k..n−1` goes to slot `k`; no chain part means slot `n`.
/// Its restriction to the nodes of `h` fixes the inner index. Signs are then
/// fixed by solving the parity constraints of all nonzero entries, and the
/// resulting map is checked entry by entry.
pub fn verify_theorem1(h: &Gcm, black: usize, n: usize) -> Result<Theorem1Report> {
    let g_gcm = extend_diagram(h, black, n)?;
    let class = classify_gcm(&g_gcm);
    if class != GcmClass::Finite {
        return Err(Error::NotFinite(format!(
            "extension is {class}; only classify_gcm and grading depth apply to it"
        )));
    }
    let r = h.rank();
    let hch = build_chevalley(h)?;
    let gch = build_chevalley(&g_gcm)?;
    let hs = graded_slice(&hch, black)?;
    let gs = graded_slice(&gch, black)?;
    let dh = hs.dim();
    let dg = gs.dim();
    let target = theorem1_tensor(&hs.triple, &hs.form, n)?;
    let mut report = Theorem1Report {
        h: h.identify().unwrap_or_else(|| "custom".into()),
        g: g_gcm.identify().unwrap_or_else(|| "custom".into()),
        black: black + 1,
        n,
        g_class: class,
        g_depth: gch.grading_depth(black)?,
        dim_h_minus1: dh,
        dim_g_minus1: dg,
        slots: Vec::new(),
        inner: Vec::new(),
        signs: Vec::new(),
        tensor_entries: target.nnz(),
        form_normalization: FORM_NORMALIZATION.into(),
        passed: false,
        mismatch: None,
        isomorphism: Vec::new(),
    };
    if dg != n * dh {
        report.mismatch = Some(format!("dim g_-1 = {dg} but n dim h_-1 = {}", n * dh));
        return Ok(report);
    }

    let h_index: HashMap<&[i64], usize> = hs.coefficients.iter().enumerate().map(|(i, c)| (c.as_slice(), i)).collect();
    // pi[slotted] = g_{-1} index
    let mut pi = vec![usize::MAX; dg];
    for (gi, c) in gs.coefficients.iter().enumerate() {
        let chain = &c[r..];
        let ones: Vec<usize> = (0..n - 1).filter(|&k| chain[k] != 0).collect();
        let slot = match ones.first() {
            None => n,
            Some(&k) if ones.len() == n - 1 - k && chain.iter().all(|&x| x == 0 || x == 1) => k + 1,
            _ => {
                report.mismatch = Some(format!("root {c:?} has an unexpected chain pattern"));
                return Ok(report);
            }
        };
        let Some(&inner) = h_index.get(&c[..r]) else {
            report.mismatch = Some(format!("root {c:?} restricts to no root of h_-1"));
            return Ok(report);
        };
        let flat = (slot - 1) * dh + inner;
        if pi[flat] != usize::MAX {
            report.mismatch = Some(format!("slot {slot} inner {inner} is hit twice"));
            return Ok(report);
        }
        pi[flat] = gi;
        report.slots.push(slot);
        report.inner.push(inner);
    }
    let mut pinv = vec![0; dg];
    for (t, &gi) in pi.iter().enumerate() {
        pinv[gi] = t;
    }

    // Pull g's tensor back along pi and compare magnitudes; collect parities.
    let pulled = |x: usize, y: usize, z: usize| -> SparseVec<Rational> {
        gs.triple.basis_product(pi[x], pi[y], pi[z]).map_indices(|i| pinv[i])
    };
    let label = |i: usize| format!("{}^{}", hs.triple.label(i % dh), i / dh + 1);
    let mut equations = Vec::new();
    for x in 0..dg {
        for y in 0..dg {
            for z in 0..dg {
                let t = target.basis_product(x, y, z);
                let g = pulled(x, y, z);
                let ts: Vec<usize> = t.iter().map(|(i, _)| *i).collect();
                let gs_: Vec<usize> = g.iter().map(|(i, _)| *i).collect();
                let bad = ts != gs_
                    || t.iter().zip(g.iter()).any(|((_, a), (_, b))| a.abs_ref() != b.abs_ref());
                if bad {
                    report.mismatch = Some(format!(
                        "({} {} {}): slotted product {:?} vs g_-1 product {:?}",
                        label(x),
                        label(y),
                        label(z),
                        t.iter().map(|(i, v)| (label(*i), v.to_exact_string())).collect::<Vec<_>>(),
                        g.iter().map(|(i, v)| (label(*i), v.to_exact_string())).collect::<Vec<_>>(),
                    ));
                    return Ok(report);
                }
                for ((w, a), (_, b)) in t.iter().zip(g.iter()) {
                    equations.push((vec![x, y, z, *w], a.signum_i8() != b.signum_i8()));
                }
            }
        }
    }
    let Some(s) = solve_gf2(dg, &equations) else {
        report.mismatch = Some("sign constraints are inconsistent".into());
        return Ok(report);
    };
    let lambda: Vec<Rational> = s.iter().map(|&b| Rational::from_int(if b { -1 } else { 1 })).collect();

    // Exact check: λ_w t_{xyz}^w = λ_x λ_y λ_z g_{xyz}^w.
    for x in 0..dg {
        for y in 0..dg {
            for z in 0..dg {
                let lhs = SparseVec::from_pairs(target.basis_product(x, y, z).iter().map(|(w, a)| (*w, a.mul_ref(&lambda[*w]))));
                let c = lambda[x].mul_ref(&lambda[y]).mul_ref(&lambda[z]);
                let rhs = pulled(x, y, z).scaled(&c);
                if lhs != rhs {
                    report.mismatch = Some(format!("({} {} {}) differs after sign fixing", label(x), label(y), label(z)));
                    return Ok(report);
                }
            }
        }
    }
    report.signs = s.iter().map(|&b| if b { -1 } else { 1 }).collect();
    report.isomorphism = (0..dg).map(|t| (pi[t], t, report.signs[t])).collect();
    report.isomorphism.sort_unstable();
    report.passed = true;
    Ok(report)
}

trait AbsRef {
    fn abs_ref(&self) -> Self;
}

impl AbsRef for Rational {
    fn abs_ref(&self) -> Self {
        if self.signum_i8() < 0 {
            self.neg_ref()
        } else {
            self.clone()
        }
    }
}
