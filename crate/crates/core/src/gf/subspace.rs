use super::mat::numbered;
use super::{Mat, PrimeField};
use crate::error::{Error, Result};

/// A subspace of `F^E`, stored by its canonical RREF basis.
///
/// Two subspaces over the same ambient labels are equal iff their bases are identical.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: Mat,
}

impl Subspace {
    /// The row space of `m`, over the column labels of `m`.
    pub fn row_space(m: &Mat) -> Self {
        let b = m.row_basis();
        let rows = numbered("s", b.nrows());
        Self { basis: b.with_row_labels(rows).expect("fresh labels") }
    }

    pub fn from_vectors(field: PrimeField, ambient: Vec<String>, vectors: &[Vec<u8>]) -> Result<Self> {
        let m = Mat::new(
            field,
            numbered("v", vectors.len()),
            ambient,
            vectors.iter().flatten().copied().collect(),
        )?;
        Ok(Self::row_space(&m))
    }

    pub fn zero(field: PrimeField, ambient: Vec<String>) -> Self {
        Self { basis: Mat::zeros(field, vec![], ambient) }
    }

    pub fn full(field: PrimeField, ambient: Vec<String>) -> Self {
        Self::coordinate(field, ambient.clone(), &ambient).expect("own labels")
    }

    /// `F^S × 0`, the span of the unit vectors on `support`.
    pub fn coordinate<S: AsRef<str>>(field: PrimeField, ambient: Vec<String>, support: &[S]) -> Result<Self> {
        let mut m = Mat::zeros(field, numbered("v", support.len()), ambient);
        for (i, s) in support.iter().enumerate() {
            let j = m.col_index(s.as_ref())?;
            m.set(i, j, 1);
        }
        Ok(Self::row_space(&m))
    }

    pub fn field(&self) -> PrimeField {
        self.basis.field()
    }

    pub fn ambient(&self) -> &[String] {
        self.basis.col_labels()
    }

    pub fn dim(&self) -> usize {
        self.basis.nrows()
    }

    /// RREF basis, one row per basis vector.
    pub fn basis(&self) -> &Mat {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<u8>> {
        self.basis.rows_vec()
    }

    pub fn contains(&self, v: &[u8]) -> bool {
        if self.dim() == 0 {
            return v.iter().all(|&x| x == 0);
        }
        self.basis.solve_left(v).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace) -> bool {
        self.ambient() == other.ambient() && self.basis_vectors().iter().all(|v| other.contains(v))
    }

    fn check_ambient(&self, other: &Subspace) -> Result<()> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().p(), other.field().p()));
        }
        if self.ambient() != other.ambient() {
            return Err(Error::LabelMismatch);
        }
        Ok(())
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        let mut rows = self.basis_vectors();
        rows.extend(other.basis_vectors());
        Subspace::from_vectors(self.field(), self.ambient().to_vec(), &rows)
    }

    pub fn is_skew(&self, other: &Subspace) -> Result<bool> {
        Ok(self.sum(other)?.dim() == self.dim() + other.dim())
    }

    /// Orthogonal complement under the standard bilinear form.
    pub fn perp(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient().to_vec());
        }
        Subspace::row_space(&self.basis.kernel())
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace> {
        self.check_ambient(other)?;
        Ok(self.perp().sum(&other.perp())?.perp())
    }

    /// `U[X]`: the projection onto the coordinates `x`, in the given order.
    pub fn restrict<S: AsRef<str>>(&self, x: &[S]) -> Result<Subspace> {
        Ok(Subspace::row_space(&self.basis.select_cols(x)?))
    }

    /// `U × 0` inside `F^{ambient}`, where `ambient` contains every label of `self`.
    pub fn extend_by_zero(&self, ambient: Vec<String>) -> Result<Subspace> {
        let mut m = Mat::zeros(self.field(), numbered("v", self.dim()), ambient);
        for (j, l) in self.ambient().iter().enumerate() {
            let jj = m.col_index(l)?;
            for i in 0..self.dim() {
                m.set(i, jj, self.basis.get(i, j));
            }
        }
        Ok(Subspace::row_space(&m))
    }

    /// Reorders the ambient coordinates; `order` must be a permutation of the ambient labels.
    pub fn reorder<S: AsRef<str>>(&self, order: &[S]) -> Result<Subspace> {
        if order.len() != self.ambient().len() {
            return Err(Error::LabelMismatch);
        }
        self.restrict(order)
    }

    /// Image under `v ↦ v · T` for a square matrix `T` indexed by the ambient labels.
    pub fn transform(&self, t: &Mat) -> Result<Subspace> {
        Ok(Subspace::row_space(&self.basis.mul(t)?.with_col_labels(self.ambient().to_vec())?))
    }
}

/// For complementary `u` and `w`, the `w`-component of `v` in `v = u' + w'`.
pub fn complementary_projection(u: &Subspace, w: &Subspace, v: &[u8]) -> Result<Vec<u8>> {
    u.check_ambient(w)?;
    let n = u.ambient().len();
    if v.len() != n {
        return Err(Error::Dimension(format!("vector of length {} in F^{n}", v.len())));
    }
    if u.dim() + w.dim() != n || !u.is_skew(w)? {
        return Err(Error::NotComplementary);
    }
    let f = u.field();
    if n == 0 {
        return Ok(vec![]);
    }
    let stacked = Mat::new(
        f,
        numbered("r", n),
        u.ambient().to_vec(),
        u.basis_vectors().into_iter().chain(w.basis_vectors()).flatten().collect(),
    )?;
    let c = stacked.solve_left(v).ok_or(Error::NotComplementary)?;
    let mut coeffs = vec![0u8; n];
    coeffs[u.dim()..].copy_from_slice(&c[u.dim()..]);
    Ok(stacked.left_apply(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(n: usize) -> Vec<String> {
        numbered("e", n)
    }

    #[test]
    fn coordinate_split() {
        let f = PrimeField::new(2).unwrap();
        let u = Subspace::from_vectors(f, lab(2), &[vec![1, 0]]).unwrap();
        let w = Subspace::from_vectors(f, lab(2), &[vec![0, 1]]).unwrap();
        assert_eq!(complementary_projection(&u, &w, &[1, 1]).unwrap(), vec![0, 1]);
        assert_eq!(complementary_projection(&u, &w, &[0, 1]).unwrap(), vec![0, 1]);
    }

    #[test]
    fn skew_split_over_gf3_matches_brute_force() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::from_vectors(f, lab(2), &[vec![1, 1]]).unwrap();
        let w = Subspace::from_vectors(f, lab(2), &[vec![0, 1]]).unwrap();
        let v = [2u8, 0];
        let mut found = None;
        for a in 0..3u8 {
            for b in 0..3u8 {
                if [a, f.add(a, b)] == v {
                    found = Some(vec![0, b]);
                }
            }
        }
        let found = found.unwrap();
        assert_eq!(complementary_projection(&u, &w, &v).unwrap(), found);
        assert_eq!(found, vec![0, 1]);
    }

    #[test]
    fn non_complementary_rejected() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::from_vectors(f, lab(2), &[vec![1, 1]]).unwrap();
        assert_eq!(complementary_projection(&u, &u, &[1, 0]), Err(Error::NotComplementary));
    }

    #[test]
    fn equality_is_canonical() {
        let f = PrimeField::new(5).unwrap();
        let a = Subspace::from_vectors(f, lab(3), &[vec![1, 2, 3], vec![0, 1, 1]]).unwrap();
        let b = Subspace::from_vectors(f, lab(3), &[vec![1, 3, 4], vec![2, 4, 1]]).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.perp().perp(), a);
        assert_eq!(a.intersection(&a.perp()).unwrap().dim() + a.sum(&a.perp()).unwrap().dim(), 3);
    }
}
