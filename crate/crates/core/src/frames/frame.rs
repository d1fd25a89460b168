use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gf::{Mat, SubgroupGamma};

/// Column scalings that turn `m` into an exact Γ-frame matrix, if any exist.
///
/// Weight-1 columns are scaled to unit vectors and weight-2 columns to `-e_i + γ e_j` with
/// `i < j` in row order. Zero columns keep scaling 1.
pub fn is_frame_matrix_up_to_scaling(m: &Mat, gamma: &SubgroupGamma) -> Option<Vec<u8>> {
    let f = m.field();
    if f != gamma.field() {
        return None;
    }
    let mut d = Vec::with_capacity(m.ncols());
    for j in 0..m.ncols() {
        let nz: Vec<usize> = (0..m.nrows()).filter(|&i| m.get(i, j) != 0).collect();
        match nz.len() {
            0 => d.push(1),
            1 => d.push(f.inv(m.get(nz[0], j))),
            2 => {
                let (a, b) = (m.get(nz[0], j), m.get(nz[1], j));
                if !gamma.contains(f.neg(f.div(a, b))) {
                    return None;
                }
                d.push(f.neg(f.inv(a)));
            }
            _ => return None,
        }
    }
    Some(d)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MinorOp {
    Delete,
    Contract,
}

/// A matrix `[P; Q]` whose top `t` rows form `P` and whose remaining rows form a Γ-frame matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StackedFrame {
    pub mat: Mat,
    pub t: usize,
}

impl StackedFrame {
    pub fn new(mat: Mat, t: usize, gamma: &SubgroupGamma) -> Result<Self> {
        let s = Self { mat, t };
        if t > s.mat.nrows() {
            return Err(Error::Dimension(format!("t = {t} exceeds the row count")));
        }
        if !s.is_valid(gamma) {
            return Err(Error::Precondition("lower block is not a Γ-frame matrix".into()));
        }
        Ok(s)
    }

    pub fn q(&self) -> Mat {
        let rows: Vec<usize> = (self.t..self.mat.nrows()).collect();
        self.mat.select_rows_idx(&rows)
    }

    /// Whether the lower block is an exact Γ-frame matrix (all scalings equal to 1).
    pub fn is_exact(&self, gamma: &SubgroupGamma) -> bool {
        let q = self.q();
        matches!(is_frame_matrix_up_to_scaling(&q, gamma), Some(d) if (0..q.ncols()).all(|j| d[j] == 1 || q.column(j).iter().all(|&v| v == 0)))
    }

    pub fn is_valid(&self, gamma: &SubgroupGamma) -> bool {
        is_frame_matrix_up_to_scaling(&self.q(), gamma).is_some()
    }
}

/// One deletion or contraction, keeping the stacked shape with at most `t` rows on top.
pub fn frame_minor_step(m: &StackedFrame, e: &str, op: MinorOp, gamma: &SubgroupGamma) -> Result<StackedFrame> {
    let j = m.mat.col_index(e)?;
    let keep_cols: Vec<usize> = (0..m.mat.ncols()).filter(|&c| c != j).collect();
    if op == MinorOp::Delete {
        let rows: Vec<usize> = (0..m.mat.nrows()).collect();
        return Ok(StackedFrame { mat: m.mat.submatrix_idx(&rows, &keep_cols), t: m.t });
    }
    let f = m.mat.field();
    let mut a = m.mat.clone();
    let t = m.t;
    let q_rows: Vec<usize> = (t..a.nrows()).filter(|&i| a.get(i, j) != 0).collect();
    let (drop, new_t) = if q_rows.is_empty() {
        let Some(pi) = (0..t).find(|&i| a.get(i, j) != 0) else {
            return Err(Error::Precondition(format!("{e} is a loop")));
        };
        for i in 0..t {
            if i != pi && a.get(i, j) != 0 {
                let c = f.neg(f.div(a.get(i, j), a.get(pi, j)));
                a.add_row_multiple(i, pi, c);
            }
        }
        (pi, t - 1)
    } else {
        let qi = q_rows[0];
        for i in 0..t {
            if a.get(i, j) != 0 {
                let c = f.neg(f.div(a.get(i, j), a.get(qi, j)));
                a.add_row_multiple(i, qi, c);
            }
        }
        if let Some(&q2) = q_rows.get(1) {
            let c = f.neg(f.div(a.get(q2, j), a.get(qi, j)));
            a.add_row_multiple(q2, qi, c);
        }
        (qi, t)
    };
    let rows: Vec<usize> = (0..a.nrows()).filter(|&i| i != drop).collect();
    let mut out = a.submatrix_idx(&rows, &keep_cols);
    let lower: Vec<usize> = (new_t..out.nrows()).collect();
    let q = out.select_rows_idx(&lower);
    let d = is_frame_matrix_up_to_scaling(&q, gamma)
        .ok_or_else(|| Error::Precondition("contraction left the frame class".into()))?;
    for (c, &s) in d.iter().enumerate() {
        out.scale_col(c, s);
    }
    Ok(StackedFrame { mat: out, t: new_t })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{build_w, build_wt, FrameClassParams};
    use crate::gf::PrimeField;
    use crate::matroid::RepresentedMatroid;

    fn g(p: u32, els: &[u8]) -> SubgroupGamma {
        SubgroupGamma::new(PrimeField::new(p).unwrap(), els.iter().copied()).unwrap()
    }

    #[test]
    fn weight_two_ratio_check() {
        let f = PrimeField::new(3).unwrap();
        let gamma = g(3, &[1]);
        let ok = Mat::from_ints(f, &[vec![1], vec![2]]);
        let d = is_frame_matrix_up_to_scaling(&ok, &gamma).unwrap();
        let mut scaled = ok.clone();
        scaled.scale_col(0, d[0]);
        assert_eq!(scaled.column(0), vec![2, 1]);
        let bad = Mat::from_ints(f, &[vec![1], vec![1]]);
        assert!(is_frame_matrix_up_to_scaling(&bad, &gamma).is_none());
        let heavy = Mat::from_ints(f, &[vec![1], vec![1], vec![1]]);
        assert!(is_frame_matrix_up_to_scaling(&heavy, &g(3, &[1, 2])).is_none());
    }

    #[test]
    fn standard_w_has_identity_witness() {
        for (p, els) in [(2, vec![1u8]), (3, vec![1, 2]), (5, vec![1, 4])] {
            let gamma = g(p, &els);
            let w = build_w(4, &gamma);
            assert!(is_frame_matrix_up_to_scaling(&w, &gamma).unwrap().iter().all(|&d| d == 1));
        }
    }

    #[test]
    fn contract_unit_in_plain_dowling() {
        let gamma = g(2, &[1]);
        let s = StackedFrame::new(build_w(4, &gamma), 0, &gamma).unwrap();
        let c = frame_minor_step(&s, "b1", MinorOp::Contract, &gamma).unwrap();
        assert_eq!(c.mat.nrows(), 3);
        assert!(c.is_exact(&gamma));
        let host = RepresentedMatroid::new(s.mat.clone());
        assert_eq!(RepresentedMatroid::new(c.mat.clone()), host.contract(&["b1"]).unwrap());
    }

    #[test]
    fn contract_projection_only_column_drops_top_row() {
        let f = PrimeField::new(2).unwrap();
        let gamma = g(2, &[1]);
        let m = Mat::from_ints(f, &[vec![1, 1, 0, 1], vec![0, 1, 0, 1], vec![0, 0, 1, 1]]);
        let s = StackedFrame::new(m.clone(), 1, &gamma).unwrap();
        let c = frame_minor_step(&s, "1", MinorOp::Contract, &gamma).unwrap();
        assert_eq!(c.t, 0);
        assert_eq!(RepresentedMatroid::new(c.mat), RepresentedMatroid::new(m).contract(&["1"]).unwrap());
    }

    #[test]
    fn contract_in_lifted_frame_keeps_t() {
        let gamma = g(3, &[1, 2]);
        let params = FrameClassParams::new(gamma.clone(), 1);
        let a = build_wt(4, &params).unwrap();
        let s = StackedFrame::new(a.clone(), 1, &gamma).unwrap();
        let e = "g2:1,2@1";
        let c = frame_minor_step(&s, e, MinorOp::Contract, &gamma).unwrap();
        assert_eq!(c.t, 1);
        assert!(c.is_exact(&gamma));
        assert_eq!(RepresentedMatroid::new(c.mat), RepresentedMatroid::new(a).contract(&[e]).unwrap());
    }
}
