//! Frame templates: respect and conformance, the reduction pipeline, enumeration of
//! conforming matroids and the density bounds.

mod conform;
mod density;
mod enumerate;
mod random;
mod reduce;
mod respect;
mod subclass;
mod transform;

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

pub use conform::{conforming_matroid, ShiftMatrix};
pub use density::{coframe_bound_holds, density_bound_dual, density_bound_primal, DensityVerdict};
pub use enumerate::{enumerate_conforming, enumeration_cost, ConformingMember, Enumeration, EnumerationLimits};
pub use random::{random_template, RandomTemplateSpec};
pub use reduce::{is_reduced, is_y_reduced, reduce, reduced_partition, PassKind, ReductionPass, ReductionTrace};
pub use respect::{is_exact_frame_column, respects, respects_with_z, RespectWitness};
pub use subclass::{subclass_witness, SubclassInput, SubclassWitness};
pub use transform::{apply_unitary, contract_template, normalize_delta, project_delta, project_delta_onto};

use crate::error::{Error, Result};
use crate::frames::x_rows;
use crate::gf::{Mat, PrimeField, SubgroupGamma, Subspace};

/// Φ = (Γ, C, X, Y0, Y1, A1, Δ, Λ).
///
/// `a1` has rows `X` and columns `Y0 ∪ Y1 ∪ C` in that order; `delta` lives in
/// `F^{Y0 ∪ Y1 ∪ C}` with the same coordinate order and `lambda` in `F^X`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameTemplate {
    gamma: SubgroupGamma,
    c: Vec<String>,
    x: Vec<String>,
    y0: Vec<String>,
    y1: Vec<String>,
    a1: Mat,
    delta: Subspace,
    lambda: Subspace,
}

impl FrameTemplate {
    pub fn new(
        gamma: SubgroupGamma,
        c: Vec<String>,
        x: Vec<String>,
        y0: Vec<String>,
        y1: Vec<String>,
        a1: Mat,
        delta: Subspace,
        lambda: Subspace,
    ) -> Result<Self> {
        let f = gamma.field();
        let mut seen = BTreeSet::new();
        for l in c.iter().chain(&x).chain(&y0).chain(&y1) {
            if !seen.insert(l.as_str()) {
                return Err(Error::DuplicateLabel(l.clone()));
            }
        }
        let cols: Vec<String> = y0.iter().chain(&y1).chain(&c).cloned().collect();
        for (what, p) in [("A1", a1.field()), ("delta", delta.field()), ("lambda", lambda.field())] {
            if p != f {
                return Err(Error::Malformed(format!("{what} is over GF({}) but gamma is over GF({})", p.p(), f.p())));
            }
        }
        if a1.row_labels() != x.as_slice() || a1.col_labels() != cols.as_slice() {
            return Err(Error::Dimension("A1 must have rows X and columns Y0, Y1, C".into()));
        }
        if delta.ambient() != cols.as_slice() {
            return Err(Error::Dimension("delta must live in F^{Y0 ∪ Y1 ∪ C}".into()));
        }
        if lambda.ambient() != x.as_slice() {
            return Err(Error::Dimension("lambda must live in F^X".into()));
        }
        Ok(Self { gamma, c, x, y0, y1, a1, delta, lambda })
    }

    /// All sets empty, Λ = {0}: the respecting matrices are exactly the Γ-frame matrices.
    pub fn trivial(gamma: SubgroupGamma) -> Self {
        let f = gamma.field();
        Self {
            a1: Mat::zeros(f, vec![], vec![]),
            delta: Subspace::zero(f, vec![]),
            lambda: Subspace::zero(f, vec![]),
            gamma,
            c: vec![],
            x: vec![],
            y0: vec![],
            y1: vec![],
        }
    }

    /// |X| = t, Λ = F^X and C = Y0 = Y1 = ∅; its conforming matroids form 𝒢(Γ)^t.
    pub fn frame_class(gamma: SubgroupGamma, t: usize) -> Self {
        let f = gamma.field();
        let x = x_rows(t);
        Self {
            a1: Mat::zeros(f, x.clone(), vec![]),
            delta: Subspace::zero(f, vec![]),
            lambda: Subspace::full(f, x.clone()),
            gamma,
            c: vec![],
            x,
            y0: vec![],
            y1: vec![],
        }
    }

    pub fn field(&self) -> PrimeField {
        self.gamma.field()
    }

    pub fn gamma(&self) -> &SubgroupGamma {
        &self.gamma
    }

    pub fn c(&self) -> &[String] {
        &self.c
    }

    pub fn x(&self) -> &[String] {
        &self.x
    }

    pub fn y0(&self) -> &[String] {
        &self.y0
    }

    pub fn y1(&self) -> &[String] {
        &self.y1
    }

    pub fn a1(&self) -> &Mat {
        &self.a1
    }

    pub fn delta(&self) -> &Subspace {
        &self.delta
    }

    pub fn lambda(&self) -> &Subspace {
        &self.lambda
    }

    /// Column labels of `A1` and ambient labels of Δ: `Y0`, then `Y1`, then `C`.
    pub fn columns(&self) -> Vec<String> {
        self.y0.iter().chain(&self.y1).chain(&self.c).cloned().collect()
    }

    /// `Y0 ∪ Y1`, in order.
    pub fn y(&self) -> Vec<String> {
        self.y0.iter().chain(&self.y1).cloned().collect()
    }

    /// c(Φ) = |X ∪ Y0 ∪ Y1 ∪ C|.
    pub fn complexity(&self) -> usize {
        self.x.len() + self.y0.len() + self.y1.len() + self.c.len()
    }

    pub(crate) fn labels(&self) -> BTreeSet<String> {
        self.c.iter().chain(&self.x).chain(&self.y0).chain(&self.y1).cloned().collect()
    }
}

pub fn complexity(phi: &FrameTemplate) -> usize {
    phi.complexity()
}

pub fn frame_class_template(gamma: SubgroupGamma, t: usize) -> FrameTemplate {
    FrameTemplate::frame_class(gamma, t)
}

/// Wire form of a template.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TemplateJson {
    pub p: u32,
    pub gamma: Vec<u8>,
    #[serde(rename = "C")]
    pub c: Vec<String>,
    #[serde(rename = "X")]
    pub x: Vec<String>,
    #[serde(rename = "Y0")]
    pub y0: Vec<String>,
    #[serde(rename = "Y1")]
    pub y1: Vec<String>,
    #[serde(rename = "A1")]
    pub a1: Vec<Vec<i64>>,
    pub delta_basis: Vec<Vec<i64>>,
    pub lambda_basis: Vec<Vec<i64>>,
}

fn ints(m: &Mat) -> Vec<Vec<i64>> {
    m.rows_vec().into_iter().map(|r| r.into_iter().map(i64::from).collect()).collect()
}

fn subspace_from(f: PrimeField, ambient: Vec<String>, rows: &[Vec<i64>], what: &str) -> Result<Subspace> {
    let mut vs = Vec::with_capacity(rows.len());
    for r in rows {
        if r.len() != ambient.len() {
            return Err(Error::Malformed(format!("{what} row of length {} in dimension {}", r.len(), ambient.len())));
        }
        vs.push(r.iter().map(|&v| f.element(v)).collect::<Result<Vec<u8>>>()?);
    }
    Subspace::from_vectors(f, ambient, &vs)
}

impl From<&FrameTemplate> for TemplateJson {
    fn from(t: &FrameTemplate) -> Self {
        TemplateJson {
            p: t.field().p() as u32,
            gamma: t.gamma.elements().to_vec(),
            c: t.c.clone(),
            x: t.x.clone(),
            y0: t.y0.clone(),
            y1: t.y1.clone(),
            a1: ints(&t.a1),
            delta_basis: ints(t.delta.basis()),
            lambda_basis: ints(t.lambda.basis()),
        }
    }
}

impl TryFrom<TemplateJson> for FrameTemplate {
    type Error = Error;

    fn try_from(j: TemplateJson) -> Result<Self> {
        let f = PrimeField::new(j.p)?;
        let gamma = SubgroupGamma::new(f, j.gamma.iter().map(|&g| g % f.p()))?;
        if j.gamma.iter().any(|&g| g >= f.p()) {
            return Err(Error::Malformed("gamma element out of range".into()));
        }
        let cols: Vec<String> = j.y0.iter().chain(&j.y1).chain(&j.c).cloned().collect();
        if j.a1.len() != j.x.len() {
            return Err(Error::Malformed(format!("A1 has {} rows but |X| = {}", j.a1.len(), j.x.len())));
        }
        for v in j.a1.iter().flatten() {
            f.element(*v)?;
        }
        let a1 = Mat::from_rows(f, j.x.clone(), cols.clone(), &j.a1)?;
        let delta = subspace_from(f, cols, &j.delta_basis, "delta_basis")?;
        let lambda = subspace_from(f, j.x.clone(), &j.lambda_basis, "lambda_basis")?;
        FrameTemplate::new(gamma, j.c, j.x, j.y0, j.y1, a1, delta, lambda)
    }
}

impl Serialize for FrameTemplate {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TemplateJson::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for FrameTemplate {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = TemplateJson::deserialize(d)?;
        FrameTemplate::try_from(j).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn complexity_counts() {
        let f = gf(2);
        assert_eq!(FrameTemplate::trivial(SubgroupGamma::trivial(f)).complexity(), 0);
        assert_eq!(frame_class_template(SubgroupGamma::trivial(f), 2).complexity(), 2);
        let a1 = Mat::from_rows(f, vec!["x".into()], vec!["y".into(), "c".into()], &[vec![1, 1]]).unwrap();
        let cols = vec!["y".to_string(), "c".to_string()];
        let phi = FrameTemplate::new(
            SubgroupGamma::trivial(f),
            vec!["c".into()],
            vec!["x".into()],
            vec![],
            vec!["y".into()],
            a1,
            Subspace::zero(f, cols),
            Subspace::zero(f, vec!["x".into()]),
        )
        .unwrap();
        assert_eq!(complexity(&phi), 3);
    }

    #[test]
    fn json_round_trip() {
        let f = gf(3);
        let phi = frame_class_template(SubgroupGamma::full(f), 1);
        let s = serde_json::to_string(&phi).unwrap();
        assert!(s.contains("\"lambda_basis\":[[1]]"));
        let back: FrameTemplate = serde_json::from_str(&s).unwrap();
        assert_eq!(back, phi);
    }

    #[test]
    fn rejects_overlapping_labels() {
        let f = gf(2);
        let cols = vec!["a".to_string()];
        let r = FrameTemplate::new(
            SubgroupGamma::trivial(f),
            vec![],
            vec!["a".into()],
            vec!["a".into()],
            vec![],
            Mat::zeros(f, vec!["a".into()], cols.clone()),
            Subspace::zero(f, cols),
            Subspace::zero(f, vec!["a".into()]),
        );
        assert!(matches!(r, Err(Error::DuplicateLabel(_))));
    }
}
