//! Represented matroids: a ground set together with a row space taken up to column scaling.

mod affine;
mod cert;
mod connectivity;
mod iso;
mod json;
mod oracle;

pub use cert::{IsoCertificate, MinorCertificate};
pub use iso::{embed, embed_with, embeddings, invariants, is_isomorphic, is_isomorphic_with, Invariants, IsoMode};
pub use json::MatroidJson;
pub use oracle::ColumnOracle;

use std::collections::{BTreeMap, HashSet};

use crate::error::{Error, Result};
use crate::gf::{numbered, projectively_equivalent, Mat, PrimeField};

#[derive(Clone, Debug)]
pub struct RepresentedMatroid {
    rep: Mat,
}

impl PartialEq for RepresentedMatroid {
    fn eq(&self, other: &Self) -> bool {
        let a: HashSet<&String> = self.ground().iter().collect();
        let b: HashSet<&String> = other.ground().iter().collect();
        a == b && matches!(projectively_equivalent(&self.rep, &other.rep), Ok(Some(_)))
    }
}

impl Eq for RepresentedMatroid {}

impl RepresentedMatroid {
    /// The matroid whose subspace is the row space of `m`; redundant rows are removed.
    pub fn new(m: Mat) -> Self {
        let b = m.row_basis();
        let rows = numbered("r", b.nrows());
        Self { rep: b.with_row_labels(rows).expect("fresh labels") }
    }

    /// Uses `m` verbatim as the stored representation; the caller guarantees full row rank.
    fn from_full_rank(m: Mat) -> Self {
        debug_assert_eq!(m.rank(), m.nrows());
        Self { rep: m }
    }

    pub fn field(&self) -> PrimeField {
        self.rep.field()
    }

    pub fn rep(&self) -> &Mat {
        &self.rep
    }

    pub fn ground(&self) -> &[String] {
        self.rep.col_labels()
    }

    pub fn len(&self) -> usize {
        self.rep.ncols()
    }

    pub fn is_empty(&self) -> bool {
        self.rep.ncols() == 0
    }

    pub fn rank(&self) -> usize {
        self.rep.nrows()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.rep.col_index(label)
    }

    pub fn oracle(&self) -> ColumnOracle {
        ColumnOracle::new(&self.rep)
    }

    pub fn rank_of<S: AsRef<str>>(&self, x: &[S]) -> Result<usize> {
        let idx = self.rep.col_indices(x)?;
        Ok(self.rank_of_idx(&idx))
    }

    pub fn rank_of_idx(&self, idx: &[usize]) -> usize {
        self.oracle().rank(idx)
    }

    fn complement<S: AsRef<str>>(&self, x: &[S]) -> Result<Vec<String>> {
        let drop: HashSet<&str> = x.iter().map(|s| s.as_ref()).collect();
        for s in &drop {
            self.rep.col_index(s)?;
        }
        Ok(self.ground().iter().filter(|l| !drop.contains(l.as_str())).cloned().collect())
    }

    /// `M \ X`.
    pub fn delete<S: AsRef<str>>(&self, x: &[S]) -> Result<Self> {
        let keep = self.complement(x)?;
        Ok(Self::new(self.rep.select_cols(&keep)?))
    }

    /// `M | X`.
    pub fn restrict<S: AsRef<str>>(&self, x: &[S]) -> Result<Self> {
        Ok(Self::new(self.rep.select_cols(x)?))
    }

    /// `M*`, represented by the orthogonal complement of the row space.
    pub fn dual(&self) -> Self {
        Self::from_full_rank(self.rep.kernel().with_row_labels(numbered("r", self.len() - self.rank())).unwrap())
    }

    /// `M / X = (M* \ X)*`.
    pub fn contract<S: AsRef<str>>(&self, x: &[S]) -> Result<Self> {
        Ok(self.dual().delete(x)?.dual())
    }

    /// Contraction by row reduction: pivot on `X` first and keep the rows without an `X` pivot.
    pub fn contract_by_pivoting<S: AsRef<str>>(&self, x: &[S]) -> Result<Self> {
        let rest = self.complement(x)?;
        let xs: Vec<String> = x.iter().map(|s| s.as_ref().to_string()).collect();
        let mut order = xs.clone();
        order.extend(rest.iter().cloned());
        let rr = self.rep.select_cols(&order)?.rref();
        let keep: Vec<usize> = (0..rr.rank).filter(|&i| rr.pivots[i] >= xs.len()).collect();
        let cols: Vec<usize> = (xs.len()..order.len()).collect();
        Ok(Self::new(rr.matrix.submatrix_idx(&keep, &cols)))
    }

    /// `M / C \ D`.
    pub fn minor<S: AsRef<str>, T: AsRef<str>>(&self, contract: &[S], delete: &[T]) -> Result<Self> {
        self.contract_by_pivoting(contract)?.delete(delete)
    }

    pub fn relabel(&self, labels: Vec<String>) -> Result<Self> {
        Ok(Self { rep: self.rep.clone().with_col_labels(labels)? })
    }

    pub fn is_loop(&self, j: usize) -> bool {
        self.rep.column(j).iter().all(|&v| v == 0)
    }

    /// Parallel classes of nonloops, each sorted by label, listed by least label.
    pub fn parallel_classes(&self) -> Vec<Vec<String>> {
        let f = self.field();
        let mut classes: BTreeMap<Vec<u8>, Vec<String>> = BTreeMap::new();
        for j in 0..self.len() {
            if self.is_loop(j) {
                continue;
            }
            let mut c = self.rep.column(j);
            f.normalize(&mut c);
            classes.entry(c).or_default().push(self.ground()[j].clone());
        }
        let mut out: Vec<Vec<String>> = classes
            .into_values()
            .map(|mut v| {
                v.sort();
                v
            })
            .collect();
        out.sort();
        out
    }

    /// `si(M)` together with `ε(M)`; each parallel class keeps its least label.
    pub fn simplify(&self) -> (Self, usize) {
        let keep: HashSet<String> = self.parallel_classes().into_iter().map(|c| c[0].clone()).collect();
        let labels: Vec<String> = self.ground().iter().filter(|l| keep.contains(*l)).cloned().collect();
        let si = Self::new(self.rep.select_cols(&labels).expect("own labels"));
        let eps = si.len();
        (si, eps)
    }

    pub fn epsilon(&self) -> usize {
        self.parallel_classes().len()
    }

    pub fn is_simple(&self) -> bool {
        self.epsilon() == self.len()
    }

    /// Closure of a set of element indices.
    pub fn closure_idx(&self, idx: &[usize]) -> Vec<usize> {
        let o = self.oracle();
        let r = o.rank(idx);
        let mut buf = idx.to_vec();
        (0..self.len())
            .filter(|&j| {
                if idx.contains(&j) {
                    return true;
                }
                buf.push(j);
                let inside = o.rank(&buf) == r;
                buf.pop();
                inside
            })
            .collect()
    }

    /// Direct sum; ground sets must be disjoint.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        if self.field() != other.field() {
            return Err(Error::FieldMismatch(self.field().p(), other.field().p()));
        }
        let (r1, r2) = (self.rank(), other.rank());
        let mut cols = self.ground().to_vec();
        cols.extend(other.ground().iter().cloned());
        let mut m = Mat::new(
            self.field(),
            numbered("r", r1 + r2),
            cols,
            vec![0; (r1 + r2) * (self.len() + other.len())],
        )?;
        for i in 0..r1 {
            for j in 0..self.len() {
                m.set(i, j, self.rep.get(i, j));
            }
        }
        for i in 0..r2 {
            for j in 0..other.len() {
                m.set(r1 + i, self.len() + j, other.rep.get(i, j));
            }
        }
        Ok(Self::new(m))
    }

    /// The matroid of an integer matrix, with columns labelled `1..n`.
    pub fn from_ints(field: PrimeField, rows: &[Vec<i64>]) -> Self {
        Self::new(Mat::from_ints(field, rows))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf(p: u32) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    pub(crate) fn fano() -> RepresentedMatroid {
        RepresentedMatroid::from_ints(
            gf(2),
            &[vec![1, 0, 0, 1, 1, 0, 1], vec![0, 1, 0, 1, 0, 1, 1], vec![0, 0, 1, 0, 1, 1, 1]],
        )
    }

    #[test]
    fn fano_rank_and_empty_set() {
        let m = fano();
        assert_eq!(m.rank_of(m.ground()).unwrap(), 3);
        assert_eq!(m.rank_of::<&str>(&[]).unwrap(), 0);
        assert!(matches!(m.rank_of(&["zz"]), Err(Error::UnknownLabel(_))));
    }

    #[test]
    fn dual_of_triangle() {
        let m = RepresentedMatroid::from_ints(gf(2), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let d = m.dual();
        assert_eq!(d.rank(), 1);
        assert_eq!(d.rep().row(0), &[1, 1, 1]);
        assert_eq!(d.dual(), m);
    }

    #[test]
    fn contract_fano_point_gives_line() {
        let m = fano();
        let c = m.contract(&["1"]).unwrap();
        let (si, eps) = c.simplify();
        assert_eq!((eps, si.rank()), (3, 2));
        assert_eq!(c, m.contract_by_pivoting(&["1"]).unwrap());
    }

    #[test]
    fn simplify_examples() {
        let m = RepresentedMatroid::from_ints(gf(2), &[vec![1, 0, 1, 1], vec![0, 1, 1, 0]]);
        let (si, eps) = m.simplify();
        assert_eq!(eps, 3);
        assert_eq!(si.ground(), &["1", "2", "3"]);
        let m = RepresentedMatroid::from_ints(gf(3), &[vec![1, 2, 0], vec![0, 0, 1]]);
        assert_eq!(m.simplify().1, 2);
        let m = RepresentedMatroid::from_ints(gf(3), &[vec![1, 0, 2], vec![0, 0, 0]]);
        let (si, eps) = m.simplify();
        assert_eq!((eps, si.ground()), (1, &["1".to_string()][..]));
    }
}
