use std::collections::VecDeque;

use super::Mat;
use crate::error::{Error, Result};

/// Decides whether `rowspace(a) = rowspace(b · D)` for a nonsingular diagonal `D`.
///
/// `b` may list the same column labels in a different order. On success the diagonal of `D` is
/// returned in the column order of `a`.
pub fn projectively_equivalent(a: &Mat, b: &Mat) -> Result<Option<Vec<u8>>> {
    if a.field() != b.field() {
        return Err(Error::FieldMismatch(a.field().p(), b.field().p()));
    }
    let b = if a.col_labels() == b.col_labels() {
        b.clone()
    } else {
        if a.ncols() != b.ncols() {
            return Err(Error::LabelMismatch);
        }
        b.select_cols(a.col_labels()).map_err(|_| Error::LabelMismatch)?
    };
    let f = a.field();
    let n = a.ncols();
    let ra = a.rref();
    let rb = b.rref();
    if ra.rank != rb.rank || ra.pivots != rb.pivots {
        return Ok(None);
    }
    let r = ra.rank;
    let (pa, pb) = (&ra.matrix, &rb.matrix);
    for i in 0..r {
        for j in 0..n {
            if (pa.get(i, j) == 0) != (pb.get(i, j) == 0) {
                return Ok(None);
            }
        }
    }
    // Entry (i, j) of the normal form must satisfy a_ij = b_ij * d_j / d_{pivot(i)}.
    let mut d: Vec<u8> = vec![0; n];
    let is_pivot: Vec<bool> = (0..n).map(|j| ra.pivots.contains(&j)).collect();
    for start in 0..n {
        if d[start] != 0 {
            continue;
        }
        d[start] = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(j) = queue.pop_front() {
            if is_pivot[j] {
                let i = ra.pivots.iter().position(|&c| c == j).unwrap();
                for k in 0..n {
                    if k != j && d[k] == 0 && pa.get(i, k) != 0 {
                        // d_k = a_ik * d_j / b_ik
                        d[k] = f.div(f.mul(pa.get(i, k), d[j]), pb.get(i, k));
                        queue.push_back(k);
                    }
                }
            } else {
                for (i, &pc) in ra.pivots.iter().enumerate() {
                    if d[pc] == 0 && pa.get(i, j) != 0 {
                        // d_pc = b_ij * d_j / a_ij
                        d[pc] = f.div(f.mul(pb.get(i, j), d[j]), pa.get(i, j));
                        queue.push_back(pc);
                    }
                }
            }
        }
    }
    for (i, &pc) in ra.pivots.iter().enumerate() {
        for j in 0..n {
            let lhs = f.mul(pa.get(i, j), d[pc]);
            let rhs = f.mul(pb.get(i, j), d[j]);
            if lhs != rhs {
                return Ok(None);
            }
        }
    }
    Ok(Some(d))
}

/// Applies a column scaling: column `j` of the result is `d[j]` times column `j` of `m`.
pub fn scale_columns(m: &Mat, d: &[u8]) -> Mat {
    let mut out = m.clone();
    for (j, &s) in d.iter().enumerate() {
        out.scale_col(j, s);
    }
    out
}
