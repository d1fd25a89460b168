use serde::{Deserialize, Serialize};

use super::respect::respects_with_z;
use super::FrameTemplate;
use crate::error::{Error, Result};
use crate::gf::Mat;
use crate::matroid::RepresentedMatroid;

/// An `(E, Z, Y1)`-shift matrix `S = I_E + H`, stored as the map `z ↦ y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShiftMatrix {
    pub e: Vec<String>,
    pub assignment: Vec<(String, String)>,
}

impl ShiftMatrix {
    pub fn identity(e: Vec<String>) -> Self {
        Self { e, assignment: vec![] }
    }

    pub fn new(e: Vec<String>, assignment: Vec<(String, String)>) -> Result<Self> {
        for (z, y) in &assignment {
            for l in [z, y] {
                if !e.contains(l) {
                    return Err(Error::UnknownLabel(l.clone()));
                }
            }
            if z == y {
                return Err(Error::Precondition(format!("{z} is shifted onto itself")));
            }
        }
        let mut zs: Vec<&String> = assignment.iter().map(|(z, _)| z).collect();
        zs.sort();
        zs.dedup();
        if zs.len() != assignment.len() {
            return Err(Error::Precondition("a column of Z is shifted twice".into()));
        }
        Ok(Self { e, assignment })
    }

    pub fn z(&self) -> Vec<String> {
        self.assignment.iter().map(|(z, _)| z.clone()).collect()
    }

    /// The matrix `S`; column `z` has an extra 1 in row `y`.
    pub fn matrix(&self, field: crate::gf::PrimeField) -> Mat {
        let mut s = Mat::identity(field, self.e.clone());
        for (z, y) in &self.assignment {
            s.set_entry(y, z, 1).expect("labels checked on construction");
        }
        s
    }
}

/// `M(AS) / C \ Y1` for a matrix respecting `phi` with `Z` the domain of the shift.
pub fn conforming_matroid(a: &Mat, s: &ShiftMatrix, phi: &FrameTemplate) -> Result<RepresentedMatroid> {
    if s.e.as_slice() != a.col_labels() {
        return Err(Error::Precondition("shift matrix is indexed by a different ground set".into()));
    }
    for (_, y) in &s.assignment {
        if !phi.y1().contains(y) {
            return Err(Error::Precondition(format!("{y} is not in Y1")));
        }
    }
    if respects_with_z(a, phi, &s.z()).is_none() {
        return Err(Error::Precondition("matrix does not respect the template with this Z".into()));
    }
    let as_ = a.mul(&s.matrix(a.field()))?.with_col_labels(a.col_labels().to_vec())?;
    RepresentedMatroid::new(as_).minor(phi.c(), phi.y1())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{PrimeField, SubgroupGamma, Subspace};
    use crate::matroid::{is_isomorphic, IsoMode};

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn identity_shift_on_trivial_template() {
        let f = PrimeField::new(2).unwrap();
        let a = Mat::from_ints(f, &[vec![1, 0, 1], vec![0, 1, 1]]);
        let phi = FrameTemplate::trivial(SubgroupGamma::trivial(f));
        let m = conforming_matroid(&a, &ShiftMatrix::identity(a.col_labels().to_vec()), &phi).unwrap();
        assert_eq!(m, RepresentedMatroid::new(a));
    }

    #[test]
    fn three_by_five_shift() {
        let f = PrimeField::new(2).unwrap();
        let x = labels(&["x"]);
        let cols = labels(&["y"]);
        let phi = FrameTemplate::new(
            SubgroupGamma::trivial(f),
            vec![],
            x.clone(),
            vec![],
            cols.clone(),
            Mat::from_rows(f, x.clone(), cols.clone(), &[vec![1]]).unwrap(),
            Subspace::full(f, cols),
            Subspace::zero(f, x),
        )
        .unwrap();
        let rows = labels(&["x", "b1", "b2"]);
        let e = labels(&["y", "z", "f1", "f2", "f3"]);
        let a = Mat::from_rows(
            f,
            rows.clone(),
            e.clone(),
            &[vec![1, 0, 0, 0, 0], vec![1, 1, 1, 0, 1], vec![0, 0, 0, 1, 1]],
        )
        .unwrap();
        let s = ShiftMatrix::new(e.clone(), vec![("z".into(), "y".into())]).unwrap();
        let m = conforming_matroid(&a, &s, &phi).unwrap();
        let expected = Mat::from_rows(
            f,
            rows,
            labels(&["z", "f1", "f2", "f3"]),
            &[vec![1, 0, 0, 0], vec![0, 1, 0, 1], vec![0, 0, 1, 1]],
        )
        .unwrap();
        let expected = RepresentedMatroid::new(expected);
        assert_eq!(m.ground(), expected.ground());
        assert!(is_isomorphic(&m, &expected, IsoMode::Represented).is_some());
        assert_eq!(m.rank(), 3);
        let bad = ShiftMatrix::new(e, vec![("f3".into(), "y".into())]).unwrap();
        assert!(conforming_matroid(&a, &bad, &phi).is_err());
    }
}
