use crate::error::Result;
use crate::matroid::RepresentedMatroid;

/// The matroids that are vertically `k`-connected, in input order.
pub fn vertically_connected_filter(matroids: &[RepresentedMatroid], k: usize) -> Result<Vec<RepresentedMatroid>> {
    let mut out = Vec::new();
    for m in matroids {
        if k == 0 || m.is_vertically_k_connected(k)? {
            out.push(m.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::PrimeField;

    #[test]
    fn triangle_passes_and_two_triangles_fail() {
        let f = PrimeField::new(2).unwrap();
        let u23 = RepresentedMatroid::from_ints(f, &[vec![1, 0, 1], vec![0, 1, 1]]);
        let two = u23.direct_sum(&u23.relabel(vec!["4".into(), "5".into(), "6".into()]).unwrap()).unwrap();
        let all = vec![u23.clone(), two];
        assert_eq!(vertically_connected_filter(&all, 0).unwrap().len(), 2);
        assert_eq!(vertically_connected_filter(&all, 2).unwrap(), vec![u23]);
    }
}
