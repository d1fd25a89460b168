use serde::{Deserialize, Serialize};

use super::{all_vectors, projective_points, vector_text};
use crate::error::{Error, Result};
use crate::gf::{numbered, Mat, PrimeField};
use crate::matroid::RepresentedMatroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Pg,
    Ag,
}

fn labelled(field: PrimeField, rank: usize, vectors: Vec<Vec<u8>>) -> Mat {
    let cols = vectors.into_iter().map(|v| (format!("p{}", vector_text(&v, field.p())), v)).collect();
    Mat::from_columns(field, numbered("r", rank), cols).expect("distinct points")
}

/// `PG(dim, p)`: one representative of each nonzero vector of `F^{dim+1}` up to scaling.
pub fn pg(dim: usize, field: PrimeField) -> RepresentedMatroid {
    RepresentedMatroid::new(labelled(field, dim + 1, projective_points(field, dim + 1)))
}

/// `AG(dim, p)`: all vectors of `F^{dim+1}` with first coordinate 1.
pub fn ag(dim: usize, field: PrimeField) -> RepresentedMatroid {
    let pts = all_vectors(field, dim)
        .into_iter()
        .map(|v| {
            let mut w = vec![1];
            w.extend(v);
            w
        })
        .collect();
    RepresentedMatroid::new(labelled(field, dim + 1, pts))
}

pub fn geometry(kind: GeometryKind, dim: usize, field: PrimeField) -> Result<RepresentedMatroid> {
    if dim < 1 {
        return Err(Error::Precondition("geometry dimension must be at least 1".into()));
    }
    Ok(match kind {
        GeometryKind::Pg => pg(dim, field),
        GeometryKind::Ag => ag(dim, field),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let f2 = PrimeField::new(2).unwrap();
        let f3 = PrimeField::new(3).unwrap();
        let f5 = PrimeField::new(5).unwrap();
        let fano = pg(2, f2);
        assert_eq!((fano.len(), fano.rank()), (7, 3));
        let line = pg(1, f5);
        assert_eq!((line.len(), line.rank()), (6, 2));
        let a = ag(2, f3);
        assert_eq!((a.len(), a.rank()), (9, 3));
        assert!(geometry(GeometryKind::Pg, 0, f2).is_err());
    }

    #[test]
    fn affine_plane_lines_have_three_points() {
        let a = ag(2, PrimeField::new(3).unwrap());
        let o = a.oracle();
        let mut lines = std::collections::HashSet::new();
        for i in 0..9 {
            for j in i + 1..9 {
                let line: Vec<usize> = (0..9).filter(|&k| o.rank(&[i, j, k]) == 2).collect();
                assert_eq!(line.len(), 3);
                lines.insert(line);
            }
        }
        assert_eq!(lines.len(), 12);
    }
}
