//! The real division algebras R, C, H, O with exact coordinates.
//!
//! Multiplication tables come from Cayley–Dickson doubling with
//! `(a, b)(c, d) = (ac - conj(d) b, d a + b conj(c))` and
//! `conj(a, b) = (conj(a), -b)`. Basis element `e_i` of the doubled algebra
//! is `(e_i, 0)` for `i < half` and `(0, e_{i-half})` otherwise, so each
//! algebra's table is the leading block of the next one.

use std::fmt;
use std::str::FromStr;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum CompositionKind {
    R,
    C,
    H,
    O,
}

impl CompositionKind {
    pub const ALL: [CompositionKind; 4] =
        [CompositionKind::R, CompositionKind::C, CompositionKind::H, CompositionKind::O];

    pub fn dim(self) -> usize {
        match self {
            CompositionKind::R => 1,
            CompositionKind::C => 2,
            CompositionKind::H => 4,
            CompositionKind::O => 8,
        }
    }

    /// `table()[i][j] = (s, k)` means `e_i e_j = s e_k`.
    pub fn table(self) -> &'static [Vec<(i8, usize)>] {
        static TABLES: OnceLock<[Vec<Vec<(i8, usize)>>; 4]> = OnceLock::new();
        let tables = TABLES.get_or_init(|| {
            [1usize, 2, 4, 8].map(|d| {
                (0..d)
                    .map(|i| {
                        (0..d)
                            .map(|j| {
                                let prod = cd_mul(&unit(d, i), &unit(d, j));
                                let (k, v) = prod
                                    .iter()
                                    .enumerate()
                                    .find(|(_, v)| **v != 0)
                                    .expect("basis product is a signed basis element");
                                (*v as i8, k)
                            })
                            .collect()
                    })
                    .collect()
            })
        });
        &tables[self as usize]
    }
}

impl fmt::Display for CompositionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            CompositionKind::R => "R",
            CompositionKind::C => "C",
            CompositionKind::H => "H",
            CompositionKind::O => "O",
        };
        f.write_str(s)
    }
}

impl FromStr for CompositionKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "R" => Ok(CompositionKind::R),
            "C" => Ok(CompositionKind::C),
            "H" => Ok(CompositionKind::H),
            "O" => Ok(CompositionKind::O),
            other => Err(Error::Parse(format!("unknown composition algebra '{other}'"))),
        }
    }
}

fn unit(d: usize, i: usize) -> Vec<i64> {
    let mut v = vec![0; d];
    v[i] = 1;
    v
}

fn cd_conj(x: &[i64]) -> Vec<i64> {
    if x.len() == 1 {
        return x.to_vec();
    }
    let h = x.len() / 2;
    let mut out = cd_conj(&x[..h]);
    out.extend(x[h..].iter().map(|v| -v));
    out
}

fn cd_mul(x: &[i64], y: &[i64]) -> Vec<i64> {
    if x.len() == 1 {
        return vec![x[0] * y[0]];
    }
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let ac = cd_mul(a, c);
    let dbar_b = cd_mul(&cd_conj(d), b);
    let da = cd_mul(d, a);
    let b_cbar = cd_mul(b, &cd_conj(c));
    let mut out: Vec<i64> = ac.iter().zip(&dbar_b).map(|(p, q)| p - q).collect();
    out.extend(da.iter().zip(&b_cbar).map(|(p, q)| p + q));
    out
}

/// Renders the multiplication table, one row per left factor.
pub fn format_table(kind: CompositionKind) -> String {
    let mut out = String::new();
    for row in kind.table() {
        let cells: Vec<String> = row
            .iter()
            .map(|(s, k)| format!("{}e{}", if *s > 0 { '+' } else { '-' }, k))
            .collect();
        out.push_str(&cells.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Clone, Debug, PartialEq)]
pub struct CompositionElement<T> {
    kind: CompositionKind,
    coords: Vec<T>,
}

impl<T: Scalar> CompositionElement<T> {
    pub fn new(kind: CompositionKind, coords: Vec<T>) -> Result<Self> {
        if coords.len() != kind.dim() {
            return Err(Error::DimensionMismatch { expected: kind.dim(), got: coords.len() });
        }
        Ok(CompositionElement { kind, coords })
    }

    pub fn zero(kind: CompositionKind) -> Self {
        CompositionElement { kind, coords: vec![T::zero(); kind.dim()] }
    }

    pub fn one(kind: CompositionKind) -> Self {
        Self::basis(kind, 0)
    }

    pub fn basis(kind: CompositionKind, i: usize) -> Self {
        let mut e = Self::zero(kind);
        e.coords[i] = T::one();
        e
    }

    pub fn real(kind: CompositionKind, v: T) -> Self {
        let mut e = Self::zero(kind);
        e.coords[0] = v;
        e
    }

    pub fn kind(&self) -> CompositionKind {
        self.kind
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn is_real(&self) -> bool {
        self.coords[1..].iter().all(|c| c.is_zero())
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.kind == other.kind {
            Ok(())
        } else {
            Err(Error::KindMismatch(self.kind.to_string(), other.kind.to_string()))
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CompositionElement {
            kind: self.kind,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.add_ref(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(CompositionElement {
            kind: self.kind,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a.sub_ref(b)).collect(),
        })
    }

    pub fn scaled(&self, c: &T) -> Self {
        CompositionElement { kind: self.kind, coords: self.coords.iter().map(|a| a.mul_ref(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let table = self.kind.table();
        let mut out = vec![T::zero(); self.kind.dim()];
        for (i, a) in self.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let (s, k) = table[i][j];
                if s > 0 {
                    out[k].add_product(a, b);
                } else {
                    let p = a.mul_ref(b);
                    out[k] -= p;
                }
            }
        }
        Ok(CompositionElement { kind: self.kind, coords: out })
    }

    pub fn conj(&self) -> Self {
        let coords = self
            .coords
            .iter()
            .enumerate()
            .map(|(i, c)| if i == 0 { c.clone() } else { c.neg_ref() })
            .collect();
        CompositionElement { kind: self.kind, coords }
    }

    pub fn norm(&self) -> T {
        let mut acc = T::zero();
        for c in &self.coords {
            acc.add_product(c, c);
        }
        acc
    }
}

pub fn ca_mul<T: Scalar>(x: &CompositionElement<T>, y: &CompositionElement<T>) -> Result<CompositionElement<T>> {
    x.mul(y)
}

pub fn ca_conj<T: Scalar>(x: &CompositionElement<T>) -> CompositionElement<T> {
    x.conj()
}

pub fn ca_norm<T: Scalar>(x: &CompositionElement<T>) -> T {
    x.norm()
}
