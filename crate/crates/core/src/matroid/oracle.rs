use crate::gf::{Mat, PrimeField};

/// Column vectors of a matrix, prepared for repeated rank queries on small index sets.
#[derive(Clone, Debug)]
pub struct ColumnOracle {
    field: PrimeField,
    cols: Vec<Vec<u8>>,
    /// Bit-packed columns when p = 2 and there are at most 64 rows.
    bits: Option<Vec<u64>>,
}

impl ColumnOracle {
    pub fn new(m: &Mat) -> Self {
        let cols = m.columns();
        let bits = (m.field().p() == 2 && m.nrows() <= 64).then(|| {
            cols.iter()
                .map(|c| c.iter().enumerate().fold(0u64, |acc, (i, &v)| acc | ((v as u64) << i)))
                .collect()
        });
        Self { field: m.field(), cols, bits }
    }

    pub fn len(&self) -> usize {
        self.cols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cols.is_empty()
    }

    pub fn column(&self, j: usize) -> &[u8] {
        &self.cols[j]
    }

    pub fn rank(&self, idx: &[usize]) -> usize {
        if let Some(bits) = &self.bits {
            let mut basis: Vec<u64> = Vec::with_capacity(idx.len());
            for &j in idx {
                let mut v = bits[j];
                for &b in &basis {
                    v = v.min(v ^ b);
                }
                if v != 0 {
                    basis.push(v);
                    basis.sort_unstable_by(|a, b| b.cmp(a));
                }
            }
            return basis.len();
        }
        let f = self.field;
        // Echelon basis keyed by leading coordinate.
        let mut basis: Vec<(usize, Vec<u8>)> = Vec::with_capacity(idx.len());
        for &j in idx {
            let mut v = self.cols[j].clone();
            for (lead, b) in &basis {
                let c = v[*lead];
                if c != 0 {
                    for (x, &y) in v.iter_mut().zip(b) {
                        *x = f.sub(*x, f.mul(c, y));
                    }
                }
            }
            if let Some(lead) = v.iter().position(|&x| x != 0) {
                let s = f.inv(v[lead]);
                for x in v.iter_mut() {
                    *x = f.mul(*x, s);
                }
                basis.push((lead, v));
            }
        }
        basis.len()
    }

    pub fn is_independent(&self, idx: &[usize]) -> bool {
        self.rank(idx) == idx.len()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_and_generic_paths_agree() {
        let f2 = PrimeField::new(2).unwrap();
        let m = Mat::from_ints(f2, &[vec![1, 0, 1, 1], vec![0, 1, 1, 0], vec![0, 0, 0, 1]]);
        let o = ColumnOracle::new(&m);
        assert!(o.bits.is_some());
        assert_eq!(o.rank(&[0, 1, 2]), 2);
        assert_eq!(o.rank(&[0, 1, 3]), 3);
        let generic = ColumnOracle { bits: None, ..o.clone() };
        for s in 0u32..16 {
            let idx: Vec<usize> = (0..4).filter(|i| s >> i & 1 == 1).collect();
            assert_eq!(o.rank(&idx), generic.rank(&idx));
            assert_eq!(o.rank(&idx), m.select_cols_idx(&idx).rank());
        }
    }
}
