use serde::{Deserialize, Serialize};

use super::FrameTemplate;
use crate::gf::{Mat, SubgroupGamma};

/// Evidence that a matrix respects a template: the row/column labels, the chosen `Z`
/// and the split of the remaining columns.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RespectWitness {
    pub b: Vec<String>,
    pub e: Vec<String>,
    pub z: Vec<String>,
    pub template_part: Vec<String>,
    pub frame_part: Vec<String>,
    /// Every column that could be placed in `Z` (zero on `X`, a unit vector on `B - X`).
    pub z_candidates: Vec<String>,
}

impl RespectWitness {
    /// Re-checks conditions (a)-(e) for this witness.
    pub fn validate(&self, a: &Mat, phi: &FrameTemplate) -> bool {
        a.row_labels() == self.b.as_slice()
            && a.col_labels() == self.e.as_slice()
            && respects_with_z(a, phi, &self.z).as_ref() == Some(self)
    }
}

/// Zero, a unit vector, or `γe_j - e_i` with `γ ∈ Γ` and `i ≠ j`.
pub fn is_exact_frame_column(v: &[u8], gamma: &SubgroupGamma) -> bool {
    let f = gamma.field();
    let nz: Vec<u8> = v.iter().copied().filter(|&x| x != 0).collect();
    match nz.as_slice() {
        [] => true,
        [a] => *a == 1,
        [a, b] => {
            let m1 = f.neg(1);
            (*a == m1 && gamma.contains(*b)) || (*b == m1 && gamma.contains(*a))
        }
        _ => false,
    }
}

fn is_unit(v: &[u8]) -> bool {
    let mut nz = v.iter().filter(|&&x| x != 0);
    nz.next() == Some(&1) && nz.next().is_none()
}

struct Split {
    x_idx: Vec<usize>,
    rest_idx: Vec<usize>,
    template_part: Vec<String>,
    other: Vec<usize>,
}

/// Conditions (a), (b) and (d); returns the row and column split on success.
fn check_fixed_block(a: &Mat, phi: &FrameTemplate) -> Option<Split> {
    if a.field() != phi.field() {
        return None;
    }
    let x_idx = a.row_indices(phi.x()).ok()?;
    let cols = phi.columns();
    let col_idx = a.col_indices(&cols).ok()?;
    if a.submatrix_idx(&x_idx, &col_idx).data() != phi.a1().data() {
        return None;
    }
    let rest_idx: Vec<usize> = (0..a.nrows()).filter(|i| !x_idx.contains(i)).collect();
    for &i in &rest_idx {
        let row: Vec<u8> = col_idx.iter().map(|&j| a.get(i, j)).collect();
        if !phi.delta().contains(&row) {
            return None;
        }
    }
    let other = (0..a.ncols()).filter(|j| !col_idx.contains(j)).collect();
    Some(Split { x_idx, rest_idx, template_part: cols, other })
}

fn column_parts(a: &Mat, s: &Split, j: usize) -> (Vec<u8>, Vec<u8>) {
    (s.x_idx.iter().map(|&i| a.get(i, j)).collect(), s.rest_idx.iter().map(|&i| a.get(i, j)).collect())
}

/// Checks conditions (a)-(e) with the given `Z`.
pub fn respects_with_z(a: &Mat, phi: &FrameTemplate, z: &[String]) -> Option<RespectWitness> {
    let s = check_fixed_block(a, phi)?;
    let mut z_candidates = Vec::new();
    let mut frame_part = Vec::new();
    for &j in &s.other {
        let label = &a.col_labels()[j];
        let (top, bottom) = column_parts(a, &s, j);
        let z_ok = top.iter().all(|&v| v == 0) && is_unit(&bottom);
        if z_ok {
            z_candidates.push(label.clone());
        }
        if z.contains(label) {
            if !z_ok {
                return None;
            }
        } else {
            if !phi.lambda().contains(&top) || !is_exact_frame_column(&bottom, phi.gamma()) {
                return None;
            }
            frame_part.push(label.clone());
        }
    }
    let z_in_order: Vec<String> = a.col_labels().iter().filter(|l| z.contains(l)).cloned().collect();
    if z_in_order.len() != z.len() {
        return None;
    }
    Some(RespectWitness {
        b: a.row_labels().to_vec(),
        e: a.col_labels().to_vec(),
        z: z_in_order,
        template_part: s.template_part,
        frame_part,
        z_candidates,
    })
}

/// Searches for the lexicographically smallest valid `Z`.
///
/// A column eligible for `Z` also satisfies condition (e), so a witness exists iff
/// `Z = ∅` works.
pub fn respects(a: &Mat, phi: &FrameTemplate) -> Option<RespectWitness> {
    respects_with_z(a, phi, &[])
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{build_wt, FrameClassParams};
    use crate::gf::{PrimeField, Subspace};
    use crate::templates::frame_class_template;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn exact_frame_columns() {
        let f = gf(5);
        let g = SubgroupGamma::new(f, [1, 4]).unwrap();
        assert!(is_exact_frame_column(&[0, 0, 0], &g));
        assert!(is_exact_frame_column(&[0, 1, 0], &g));
        assert!(!is_exact_frame_column(&[0, 2, 0], &g));
        assert!(is_exact_frame_column(&[4, 1, 0], &g));
        assert!(is_exact_frame_column(&[4, 0, 4], &g));
        assert!(!is_exact_frame_column(&[4, 2, 0], &g));
        assert!(!is_exact_frame_column(&[1, 1, 0], &g));
        assert!(!is_exact_frame_column(&[1, 4, 4], &g));
    }

    #[test]
    fn trivial_template_accepts_frame_matrices() {
        let f = gf(3);
        let g = SubgroupGamma::full(f);
        let a = build_wt(4, &FrameClassParams::new(g.clone(), 0)).unwrap();
        let w = respects(&a, &FrameTemplate::trivial(g)).unwrap();
        assert!(w.z.is_empty());
        assert_eq!(w.frame_part.len(), a.ncols());
        assert!(w.validate(&a, &FrameTemplate::trivial(SubgroupGamma::full(f))));
    }

    #[test]
    fn frame_class_template_accepts_dowling_matrix() {
        for t in 0..=2 {
            let g = SubgroupGamma::trivial(gf(2));
            let a = build_wt(4, &FrameClassParams::new(g.clone(), t)).unwrap();
            let phi = frame_class_template(g, t);
            assert!(respects(&a, &phi).is_some(), "t = {t}");
        }
    }

    #[test]
    fn weight_three_column_is_rejected() {
        let f = gf(2);
        let a = Mat::from_ints(f, &[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 1]]);
        assert!(respects(&a, &FrameTemplate::trivial(SubgroupGamma::trivial(f))).is_none());
        let b = Mat::from_ints(f, &[vec![1, 0, 1], vec![0, 1, 1], vec![0, 0, 0]]);
        assert!(respects(&b, &FrameTemplate::trivial(SubgroupGamma::trivial(f))).is_some());
    }

    #[test]
    fn fixed_block_and_delta_rows() {
        let f = gf(2);
        let x = vec!["x".to_string()];
        let cols = vec!["y".to_string()];
        let a1 = Mat::from_rows(f, x.clone(), cols.clone(), &[vec![1]]).unwrap();
        let phi = FrameTemplate::new(
            SubgroupGamma::trivial(f),
            vec![],
            x.clone(),
            vec![],
            cols.clone(),
            a1,
            Subspace::full(f, cols),
            Subspace::zero(f, x),
        )
        .unwrap();
        let rows = vec!["x".to_string(), "b1".into(), "b2".into()];
        let e = vec!["y".to_string(), "z".into(), "f".into()];
        let a = Mat::from_rows(f, rows.clone(), e.clone(), &[vec![1, 0, 0], vec![1, 1, 1], vec![0, 0, 1]]).unwrap();
        let w = respects(&a, &phi).unwrap();
        assert_eq!(w.z_candidates, vec!["z".to_string()]);
        let wz = respects_with_z(&a, &phi, &["z".into()]).unwrap();
        assert_eq!(wz.frame_part, vec!["f".to_string()]);
        assert!(wz.validate(&a, &phi));
        assert!(respects_with_z(&a, &phi, &["f".into()]).is_none());
        let bad = Mat::from_rows(f, rows, e, &[vec![0, 0, 0], vec![1, 1, 1], vec![0, 0, 1]]).unwrap();
        assert!(respects(&bad, &phi).is_none());
    }
}
