use serde::{Deserialize, Serialize};

use super::conform::{conforming_matroid, ShiftMatrix};
use super::reduce::reduced_partition;
use super::FrameTemplate;
use crate::error::{Error, Result};
use crate::frames::is_frame_matrix_up_to_scaling;
use crate::gf::Mat;
use crate::matroid::{IsoMode, MinorCertificate, RepresentedMatroid};

/// A matroid `N0 = M(matrix)` given in the form `[P2; P0 | D]`: the rows `top` are
/// arbitrary, the columns `extra` are arbitrary, and the rest is a Γ-frame matrix up to
/// column scaling.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubclassInput {
    pub matrix: Mat,
    pub top: Vec<String>,
    pub extra: Vec<String>,
}

/// A respecting host, its shift and a certificate that `N0` is a minor of the conforming
/// matroid `M(AS) / C \ Y1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubclassWitness {
    pub host: Mat,
    pub shift: ShiftMatrix,
    pub certificate: MinorCertificate,
}

impl SubclassWitness {
    /// Rebuilds the conforming matroid from the host and shift and replays the certificate.
    pub fn replay(&self, phi: &FrameTemplate, n0: &RepresentedMatroid) -> Result<bool> {
        let m = conforming_matroid(&self.host, &self.shift, phi)?;
        self.certificate.verify(&m, n0, IsoMode::Represented)
    }
}

fn form_error(msg: impl Into<String>) -> Error {
    Error::Precondition(msg.into())
}

/// Builds a matrix respecting the reduced template `phi` and a shift whose conforming
/// matroid has `N0` as a minor, provided `N0` has at most `dim Λ` top rows and at most
/// `dim Δ` extra columns.
pub fn subclass_witness(phi: &FrameTemplate, input: &SubclassInput) -> Result<SubclassWitness> {
    let f = phi.field();
    let (x0, x1) = reduced_partition(phi).ok_or_else(|| form_error("template is not reduced"))?;
    let n0 = &input.matrix;
    if n0.field() != f {
        return Err(form_error("matroid and template are over different fields"));
    }
    let t = x0.len();
    let d = phi.delta().dim();
    if input.top.len() > t || input.extra.len() > d {
        return Err(form_error(format!(
            "{} top rows and {} extra columns exceed dim Λ = {t}, dim Δ = {d}",
            input.top.len(),
            input.extra.len()
        )));
    }
    let fl = n0.col_labels().to_vec();
    let rows_b0: Vec<String> = n0.row_labels().iter().filter(|r| !input.top.contains(r)).cloned().collect();
    n0.row_indices(&input.top)?;
    n0.col_indices(&input.extra)?;
    let frame_cols: Vec<String> = fl.iter().filter(|c| !input.extra.contains(c)).cloned().collect();
    let taken = phi.labels();
    if let Some(l) = fl.iter().find(|l| taken.contains(*l) || l.contains('*')) {
        return Err(form_error(format!("column {l} clashes with template labels")));
    }

    // Scale the frame part to an exact Γ-frame matrix.
    let scal = is_frame_matrix_up_to_scaling(&n0.submatrix(&rows_b0, &frame_cols)?, phi.gamma())
        .ok_or_else(|| form_error("the rows outside top are not a Γ-frame matrix off the extra columns"))?;
    let mut n = n0.clone();
    let mut col_scale = vec![1u8; fl.len()];
    for (c, s) in frame_cols.iter().zip(&scal) {
        let j = n.col_index(c)?;
        n.scale_col(j, *s);
        col_scale[j] = *s;
    }

    let cols = phi.columns();
    let r_rows: Vec<String> = (1..=d).map(|i| format!("r*{i}")).collect();
    let b0: Vec<String> = (1..=rows_b0.len()).map(|i| format!("b*{i}")).collect();
    // W: a basis of Δ. P1: unit rows on the extra columns.
    let w = phi.delta().basis().clone().with_row_labels(r_rows.clone())?;
    let mut p1 = Mat::zeros(f, r_rows.clone(), fl.clone());
    for (i, c) in input.extra.iter().enumerate() {
        p1.set_entry(&r_rows[i], c, 1)?;
    }
    let mut p2 = Mat::zeros(f, x0.clone(), fl.clone());
    for (i, r) in input.top.iter().enumerate() {
        for c in &fl {
            p2.set_entry(&x0[i], c, n.entry(r, c)?)?;
        }
    }

    // Ĉ: pivots of [A1[X1]; W], with C tried first.
    let stacked = phi.a1().select_rows(&x1)?.vstack(&w)?;
    let order: Vec<String> = phi.c().iter().chain(phi.y0()).chain(phi.y1()).cloned().collect();
    let chat = stacked.select_cols(&order)?.rref().pivot_labels();
    if chat.len() != x1.len() + d {
        return Err(form_error("rows of A1[X1] and Δ are not independent"));
    }
    if phi.c().iter().any(|c| !chat.contains(c)) {
        return Err(form_error("C is not covered by the nonsingular block"));
    }
    let q = stacked.select_cols(&chat)?;
    let k = phi.a1().submatrix(&x0, &chat)?.mul(&q.inverse()?)?;
    let zero_x1 = Mat::zeros(f, x1.clone(), fl.clone());
    let p2_prime = {
        let lift = k.mul(&zero_x1.vstack(&p1)?)?;
        let mut out = p2.clone();
        for i in 0..out.nrows() {
            for j in 0..out.ncols() {
                out.set(i, j, f.add(p2.get(i, j), lift.get(i, j)));
            }
        }
        out
    };
    let c0: Vec<String> = chat.iter().filter(|l| phi.y0().contains(l)).cloned().collect();
    let c1: Vec<String> = chat.iter().filter(|l| phi.y1().contains(l)).cloned().collect();
    let z: Vec<String> = c1.iter().map(|l| format!("z*{l}")).collect();

    let row_labels: Vec<String> =
        phi.x().iter().cloned().chain(r_rows.iter().cloned()).chain(b0.iter().cloned()).chain(["d*".to_string()]).collect();
    let e: Vec<String> = fl.iter().cloned().chain(["c*".to_string()]).chain(z.iter().cloned()).chain(cols.iter().cloned()).collect();
    let mut a = Mat::zeros(f, row_labels, e.clone());
    let a1 = phi.a1();
    for x in phi.x() {
        for c in &cols {
            a.set_entry(x, c, a1.entry(x, c)?)?;
        }
    }
    for (i, x) in x0.iter().enumerate() {
        for (j, c) in fl.iter().enumerate() {
            a.set_entry(x, c, p2_prime.get(i, j))?;
        }
    }
    for (i, r) in r_rows.iter().enumerate() {
        for (j, c) in fl.iter().enumerate() {
            a.set_entry(r, c, p1.get(i, j))?;
        }
        for (j, c) in cols.iter().enumerate() {
            a.set_entry(r, c, w.get(i, j))?;
        }
    }
    // Rows B0 carry the frame part; undoing the extra columns leaves -E·W on C ∪ Y.
    for (b, src) in b0.iter().zip(&rows_b0) {
        for c in &frame_cols {
            a.set_entry(b, c, n.entry(src, c)?)?;
        }
        for (j, c) in cols.iter().enumerate() {
            let mut v = 0u8;
            for (i, x) in input.extra.iter().enumerate() {
                v = f.sub(v, f.mul(n.entry(src, x)?, w.get(i, j)));
            }
            a.set_entry(b, c, v)?;
        }
    }
    a.set_entry("d*", "c*", 1)?;
    for l in &z {
        a.set_entry("d*", l, 1)?;
    }

    let shift = ShiftMatrix::new(e, z.iter().cloned().zip(c1.iter().cloned()).collect())?;
    let contract: Vec<String> = ["c*".to_string()].into_iter().chain(z).chain(c0.iter().cloned()).collect();
    let delete: Vec<String> = phi.y0().iter().filter(|l| !c0.contains(l)).cloned().collect();
    let certificate = MinorCertificate {
        contract,
        delete,
        map: fl.iter().map(|l| (l.clone(), l.clone())).collect(),
        scalings: Some(col_scale.iter().map(|&s| f.inv(s)).collect()),
    };
    Ok(SubclassWitness { host: a, shift, certificate })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{build_wt, x_rows, FrameClassParams};
    use crate::gf::{numbered, PrimeField, SubgroupGamma, Subspace};

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    fn check(phi: &FrameTemplate, input: &SubclassInput) {
        let w = subclass_witness(phi, input).unwrap();
        assert!(super::super::respects_with_z(&w.host, phi, &w.shift.z()).is_some());
        assert!(w.replay(phi, &RepresentedMatroid::new(input.matrix.clone())).unwrap());
    }

    #[test]
    fn frame_class_needs_no_projection() {
        let f = PrimeField::new(3).unwrap();
        let params = FrameClassParams::new(SubgroupGamma::full(f), 1);
        let phi = FrameTemplate::frame_class(params.gamma.clone(), 1);
        let matrix = build_wt(3, &params).unwrap();
        check(&phi, &SubclassInput { matrix, top: x_rows(1), extra: vec![] });
    }

    #[test]
    fn binary_single_projection_column() {
        let f = PrimeField::new(2).unwrap();
        let c = labels(&["c"]);
        let phi = FrameTemplate::new(
            SubgroupGamma::trivial(f),
            c.clone(),
            vec![],
            vec![],
            vec![],
            Mat::zeros(f, vec![], c.clone()),
            Subspace::full(f, c),
            Subspace::zero(f, vec![]),
        )
        .unwrap();
        let matrix = Mat::from_rows(f, numbered("b", 3), numbered("e", 4), &[vec![1, 0, 1, 1], vec![0, 1, 1, 1], vec![0, 0, 0, 1]])
            .unwrap();
        check(&phi, &SubclassInput { matrix, top: vec![], extra: labels(&["e4"]) });
    }

    #[test]
    fn ternary_with_shifted_column() {
        let f = PrimeField::new(3).unwrap();
        let x = labels(&["x0", "x1"]);
        let cols = labels(&["y", "c"]);
        let phi = FrameTemplate::new(
            SubgroupGamma::full(f),
            labels(&["c"]),
            x.clone(),
            vec![],
            labels(&["y"]),
            Mat::from_rows(f, x.clone(), cols.clone(), &[vec![2, 1], vec![1, 0]]).unwrap(),
            Subspace::coordinate(f, cols, &["c"]).unwrap(),
            Subspace::coordinate(f, x, &["x0"]).unwrap(),
        )
        .unwrap();
        let matrix = Mat::from_rows(
            f,
            labels(&["top", "b1", "b2", "b3"]),
            numbered("e", 5),
            &[vec![1, 2, 0, 1, 1], vec![1, 0, 0, 2, 1], vec![0, 1, 0, 1, 2], vec![0, 0, 2, 0, 1]],
        )
        .unwrap();
        let input = SubclassInput { matrix, top: labels(&["top"]), extra: labels(&["e5"]) };
        let w = subclass_witness(&phi, &input).unwrap();
        assert_eq!(w.shift.assignment, vec![("z*y".to_string(), "y".to_string())]);
        check(&phi, &input);
    }

    #[test]
    fn rejects_inputs_outside_the_class() {
        let f = PrimeField::new(2).unwrap();
        let phi = FrameTemplate::trivial(SubgroupGamma::trivial(f));
        let matrix = Mat::from_ints(f, &[vec![1, 0, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        let r = subclass_witness(&phi, &SubclassInput { matrix: matrix.clone(), top: vec![], extra: vec![] });
        assert!(matches!(r, Err(Error::Precondition(_))));
        let extra = vec![matrix.col_labels()[3].clone()];
        assert!(subclass_witness(&phi, &SubclassInput { matrix, top: vec![], extra }).is_err());
    }
}
