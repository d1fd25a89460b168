//! Γ-frame matrices, Dowling geometries and their one-element extensions.

mod extension;
mod frame;
mod geometry;
mod witness;


pub use extension::{dowling_extension_minor, extension_host, primesubfield_minor, ExtensionMinor, ExtensionOutcome};
pub use frame::{frame_minor_step, is_frame_matrix_up_to_scaling, MinorOp, StackedFrame};
pub use geometry::{ag, geometry, pg, GeometryKind};
pub use witness::{witness_techodd, witness_techthree, witness_techtwo, WitnessCheck, WitnessReport};


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{numbered, Mat, PrimeField, SubgroupGamma};
use crate::matroid::RepresentedMatroid;

/// The class 𝒢(Γ)^t: Γ-frame matrices stacked under at most `t` arbitrary rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameClassParams {
    pub gamma: SubgroupGamma,
    pub t: usize,
}

impl FrameClassParams {
    pub fn new(gamma: SubgroupGamma, t: usize) -> Self {
        Self { gamma, t }
    }

    pub fn field(&self) -> PrimeField {
        self.gamma.field()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Variant {
    Plain,
    XExtension { x: u8 },
    Box,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DowlingSpec {
    pub params: FrameClassParams,
    pub n: usize,
    pub variant: Variant,
}

fn binom2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// `f_{p,g,t}(n) = p^t (g·C(n-t, 2) + n - t) + (p^t - 1)/(p - 1)`.
pub fn extremal_f(p: u64, g: u64, t: u64, n: u64) -> Result<u64> {
    if n < t {
        return Err(Error::Precondition(format!("n = {n} is less than t = {t}")));
    }
    if p < 2 {
        return Err(Error::UnsupportedModulus(p as u32));
    }
    let pt = p.pow(t as u32);
    Ok(pt * (g * binom2(n - t) + (n - t)) + (pt - 1) / (p - 1))
}

/// Compact label text for a vector: plain digits, or dot-separated when p > 10.
pub(crate) fn vector_text(v: &[u8], p: u8) -> String {
    let parts: Vec<String> = v.iter().map(|d| d.to_string()).collect();
    if p > 10 {
        parts.join(".")
    } else {
        parts.concat()
    }
}

/// Label of the unit vector `b_i` (1-based).
pub fn unit_label(i: usize) -> String {
    format!("b{i}")
}

/// Label of `-b_i + γ b_j` for `i < j` (1-based).
pub fn frame_label(gamma: u8, i: usize, j: usize) -> String {
    format!("g{gamma}:{i},{j}")
}

/// The columns of `W(n)`, as `(label, vector)` pairs in construction order.
pub fn w_columns(n: usize, gamma: &SubgroupGamma) -> Vec<(String, Vec<u8>)> {
    let f = gamma.field();
    let mut cols = Vec::new();
    for i in 0..n {
        let mut v = vec![0u8; n];
        v[i] = 1;
        cols.push((unit_label(i + 1), v));
    }
    for i in 0..n {
        for j in i + 1..n {
            for &g in gamma.elements() {
                let mut v = vec![0u8; n];
                v[i] = f.neg(1);
                v[j] = g;
                cols.push((frame_label(g, i + 1, j + 1), v));
            }
        }
    }
    cols
}

fn sorted_matrix(field: PrimeField, rows: Vec<String>, mut cols: Vec<(String, Vec<u8>)>) -> Mat {
    cols.sort_by(|a, b| a.0.cmp(&b.0));
    Mat::from_columns(field, rows, cols).expect("canonical labels are distinct")
}

pub fn x_rows(t: usize) -> Vec<String> {
    numbered("x", t)
}

pub fn b_rows(k: usize) -> Vec<String> {
    numbered("r", k)
}

/// Standard representation of `DG(n, Γ)` with rows `r1..rn`.
pub fn build_w(n: usize, gamma: &SubgroupGamma) -> Mat {
    sorted_matrix(gamma.field(), b_rows(n), w_columns(n, gamma))
}

/// All vectors of `F^t`, in lexicographic order.
pub fn all_vectors(field: PrimeField, t: usize) -> Vec<Vec<u8>> {
    let p = field.p();
    let mut out = vec![vec![]];
    for _ in 0..t {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..p).map(move |d| {
                    let mut w = v.clone();
                    w.push(d);
                    w
                })
            })
            .collect();
    }
    out
}

/// Nonzero vectors of `F^t` whose first nonzero entry is 1.
pub fn projective_points(field: PrimeField, t: usize) -> Vec<Vec<u8>> {
    all_vectors(field, t)
        .into_iter()
        .filter(|v| v.iter().find(|&&d| d != 0) == Some(&1))
        .collect()
}

/// Standard representation of `DG(n, Γ)^t`: rows `x1..xt` then `r1..r(n-t)`.
pub fn build_wt(n: usize, params: &FrameClassParams) -> Result<Mat> {
    let t = params.t;
    if n < t {
        return Err(Error::Precondition(format!("n = {n} is less than t = {t}")));
    }
    let f = params.field();
    let p = f.p();
    let mut rows = x_rows(t);
    rows.extend(b_rows(n - t));
    let mut cols = Vec::new();
    for x in all_vectors(f, t) {
        for (label, w) in w_columns(n - t, &params.gamma) {
            let label = if t == 0 { label } else { format!("{label}@{}", vector_text(&x, p)) };
            let mut v = x.clone();
            v.extend(w);
            cols.push((label, v));
        }
    }
    for u in projective_points(f, t) {
        let label = format!("u{}", vector_text(&u, p));
        let mut v = u.clone();
        v.extend(std::iter::repeat_n(0, n - t));
        cols.push((label, v));
    }
    Ok(sorted_matrix(f, rows, cols))
}

/// Label of the extra column of an extension.
pub const EXTENSION_LABEL: &str = "e";

/// Standard matrix of a Dowling geometry or one of its extensions.
pub fn dowling_matrix(spec: &DowlingSpec) -> Result<Mat> {
    let DowlingSpec { params, n, variant } = spec;
    let t = params.t;
    let a = build_wt(*n, params)?;
    let f = params.field();
    let k = n - t;
    let mut w = vec![0u8; *n];
    match *variant {
        Variant::Plain => return Ok(a),
        Variant::XExtension { x } => {
            if x == 0 || x >= f.p() || params.gamma.contains(x) {
                return Err(Error::Precondition(format!("x = {x} must be a nonzero element outside Γ")));
            }
            if k < 2 {
                return Err(Error::Precondition("an x-extension needs at least two frame rows".into()));
            }
            w[t] = f.neg(1);
            w[t + 1] = x;
        }
        Variant::Box => {
            if k < 3 {
                return Err(Error::Precondition("a box extension needs at least three frame rows".into()));
            }
            w[t] = 1;
            w[t + 1] = 1;
            w[t + 2] = 1;
        }
    }
    let col = Mat::from_columns(f, a.row_labels().to_vec(), vec![(EXTENSION_LABEL.to_string(), w)])?;
    a.hstack(&col)
}

pub fn dowling(spec: &DowlingSpec) -> Result<RepresentedMatroid> {
    Ok(RepresentedMatroid::new(dowling_matrix(spec)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gamma(p: u32, els: &[u8]) -> SubgroupGamma {
        SubgroupGamma::new(PrimeField::new(p).unwrap(), els.iter().copied()).unwrap()
    }

    #[test]
    fn extremal_values() {
        assert_eq!(extremal_f(2, 1, 0, 4).unwrap(), 10);
        assert_eq!(extremal_f(2, 1, 1, 4).unwrap(), 13);
        assert_eq!(extremal_f(3, 2, 0, 5).unwrap(), 25);
        assert_eq!(extremal_f(5, 2, 1, 3).unwrap(), 21);
        assert!(extremal_f(2, 1, 3, 2).is_err());
    }

    #[test]
    fn closed_forms_for_binary_and_ternary() {
        for t in 0..=4u64 {
            for n in t..=12 {
                let k = n - t + 1;
                assert_eq!(extremal_f(2, 1, t, n).unwrap(), 2u64.pow(t as u32) * (k * (k - 1) / 2) + 2u64.pow(t as u32) - 1);
                let three = 3u64.pow(t as u32);
                assert_eq!(extremal_f(3, 2, t, n).unwrap(), three * (n - t) * (n - t) + (three - 1) / 2);
            }
        }
    }

    #[test]
    fn w_sizes() {
        let w = build_w(2, &gamma(2, &[1]));
        assert_eq!(w.col_labels(), &["b1", "b2", "g1:1,2"]);
        assert_eq!(w.column(2), vec![1, 1]);
        assert_eq!(build_w(4, &gamma(3, &[1, 2])).ncols(), 16);
        let p = FrameClassParams::new(gamma(2, &[1]), 1);
        assert_eq!(build_wt(4, &p).unwrap().ncols(), 13);
    }

    #[test]
    fn dowling_sizes_and_simplicity() {
        let m = dowling(&DowlingSpec { params: FrameClassParams::new(gamma(2, &[1]), 0), n: 4, variant: Variant::Plain })
            .unwrap();
        assert_eq!((m.len(), m.rank()), (10, 4));
        let params = FrameClassParams::new(gamma(5, &[1, 4]), 0);
        let m = dowling(&DowlingSpec { params: params.clone(), n: 3, variant: Variant::Plain }).unwrap();
        assert_eq!(m.len(), 9);
        let ext = dowling(&DowlingSpec { params: params.clone(), n: 3, variant: Variant::XExtension { x: 2 } }).unwrap();
        assert_eq!(ext.len(), 10);
        assert!(ext.is_simple());
        assert!(dowling(&DowlingSpec { params, n: 3, variant: Variant::XExtension { x: 4 } }).is_err());
    }
}
