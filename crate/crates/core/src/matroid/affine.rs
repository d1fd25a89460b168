use super::RepresentedMatroid;

impl RepresentedMatroid {
    /// Whether the row space contains a vector with no zero entry, i.e. whether the matroid is a
    /// restriction of an affine geometry.
    pub fn is_affine_restriction(&self) -> bool {
        if self.is_empty() {
            return true;
        }
        let f = self.field();
        let rr = self.rep().rref();
        let r = rr.rank;
        let m = &rr.matrix;
        let n = self.len();
        if r == 0 {
            return false;
        }
        // Each column can be checked once the coefficients up to its last nonzero row are fixed.
        let mut by_last: Vec<Vec<usize>> = vec![Vec::new(); r];
        for j in 0..n {
            match (0..r).rev().find(|&i| m.get(i, j) != 0) {
                Some(last) => by_last[last].push(j),
                None => return false,
            }
        }
        let mut c = vec![0u8; r];
        fn rec(
            f: crate::gf::PrimeField,
            m: &crate::gf::Mat,
            by_last: &[Vec<usize>],
            c: &mut Vec<u8>,
            i: usize,
        ) -> bool {
            if i == c.len() {
                return true;
            }
            // Pivot columns force c_i != 0; the first coefficient is fixed up to scaling.
            let range: Vec<u8> = if i == 0 { vec![1] } else { f.nonzero().collect() };
            for v in range {
                c[i] = v;
                let ok = by_last[i].iter().all(|&j| {
                    (0..=i).fold(0u8, |acc, k| f.add(acc, f.mul(c[k], m.get(k, j)))) != 0
                });
                if ok && rec(f, m, by_last, c, i + 1) {
                    return true;
                }
            }
            false
        }
        rec(f, m, &by_last, &mut c, 0)
    }
}
