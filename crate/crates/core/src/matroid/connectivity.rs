use rayon::prelude::*;

use super::RepresentedMatroid;
use crate::error::{Error, Result};

pub const CONNECTIVITY_CAP: usize = 20;

impl RepresentedMatroid {
    /// `λ_M(A) = r(A) + r(E - A) - r(M)`.
    pub fn lambda<S: AsRef<str>>(&self, a: &[S]) -> Result<usize> {
        let idx = self.rep().col_indices(a)?;
        let rest: Vec<usize> = (0..self.len()).filter(|j| !idx.contains(j)).collect();
        let o = self.oracle();
        Ok(o.rank(&idx) + o.rank(&rest) - self.rank())
    }

    /// Exhaustive partition scan: every `(A, B)` with `λ(A) < k - 1` must have a spanning side.
    pub fn is_vertically_k_connected(&self, k: usize) -> Result<bool> {
        if k > self.rank() {
            return Err(Error::Precondition(format!("k = {k} exceeds the rank {}", self.rank())));
        }
        let n = self.len();
        if n > CONNECTIVITY_CAP {
            return Err(Error::TooLarge { size: n, cap: CONNECTIVITY_CAP });
        }
        if n == 0 || k <= 1 {
            return Ok(true);
        }
        let o = self.oracle();
        let r = self.rank();
        // Element 0 always lies in A; the swap is covered by symmetry of λ.
        let half = 1u32 << (n - 1);
        let bad = (0..half).into_par_iter().any(|s| {
            let mask = (s << 1) | 1;
            let a: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let b: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 0).collect();
            let (ra, rb) = (o.rank(&a), o.rank(&b));
            ra + rb - r < k - 1 && ra < r && rb < r
        });
        Ok(!bad)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    fn gf2() -> PrimeField {
        PrimeField::new(2).unwrap()
    }

    #[test]
    fn triangle_connectivity() {
        let m = RepresentedMatroid::from_ints(gf2(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        assert_eq!(m.lambda(&["1"]).unwrap(), 1);
        assert!(m.is_vertically_k_connected(2).unwrap());
        assert!(m.is_vertically_k_connected(3).is_err());
    }

    #[test]
    fn two_triangles_disconnected() {
        let t = RepresentedMatroid::from_ints(gf2(), &[vec![1, 0, 1], vec![0, 1, 1]]);
        let t2 = t.relabel(vec!["4".into(), "5".into(), "6".into()]).unwrap();
        let m = t.direct_sum(&t2).unwrap();
        assert_eq!(m.lambda(&["1", "2", "3"]).unwrap(), 0);
        assert!(!m.is_vertically_k_connected(2).unwrap());
    }
}
