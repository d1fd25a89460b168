use framelab::gf::{Mat, PrimeField};
use framelab::matroid::RepresentedMatroid;
use proptest::prelude::*;

fn cases() -> ProptestConfig {
    ProptestConfig { cases: 1000, ..ProptestConfig::default() }
}

fn matroid() -> impl Strategy<Value = RepresentedMatroid> {
    (prop::sample::select(vec![2u32, 3, 5, 7]), 1usize..=4, 1usize..=7).prop_flat_map(|(p, r, n)| {
        prop::collection::vec(prop::collection::vec(0..p as i64, n), r).prop_map(move |rows| {
            RepresentedMatroid::new(Mat::from_ints(PrimeField::new(p).unwrap(), &rows))
        })
    })
}

/// Plain Gaussian elimination over Z/p, kept separate from the library's elimination.
fn naive_rank(p: u64, cols: &[Vec<u8>]) -> usize {
    let mut rows: Vec<Vec<u64>> = match cols.first() {
        None => return 0,
        Some(c) => (0..c.len()).map(|i| cols.iter().map(|col| col[i] as u64).collect()).collect(),
    };
    let inv = |a: u64| (1..p).find(|b| a * b % p == 1).unwrap();
    let mut rank = 0;
    for j in 0..cols.len() {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][j] != 0) else { continue };
        rows.swap(rank, piv);
        let s = inv(rows[rank][j]);
        for x in rows[rank].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows.len() {
            if i != rank && rows[i][j] != 0 {
                let c = rows[i][j];
                for k in 0..cols.len() {
                    rows[i][k] = (rows[i][k] + (p - c) * rows[rank][k]) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn subset(labels: &[String], mask: u32) -> Vec<String> {
    labels.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, l)| l.clone()).collect()
}

fn complement(labels: &[String], mask: u32) -> Vec<String> {
    subset(labels, !mask)
}

/// Two matroids on the same labels have the same rank function.
fn same_rank_function(a: &RepresentedMatroid, b: &RepresentedMatroid) -> bool {
    let mut la = a.ground().to_vec();
    let mut lb = b.ground().to_vec();
    la.sort();
    lb.sort();
    la == lb && (0..1u32 << la.len()).all(|m| a.rank_of(&subset(&la, m)).unwrap() == b.rank_of(&subset(&la, m)).unwrap())
}

proptest! {
    #![proptest_config(cases())]

    #[test]
    fn rank_agrees_with_naive_elimination(m in matroid(), mask in any::<u32>()) {
        let cols: Vec<Vec<u8>> = (0..m.len()).filter(|j| mask >> j & 1 == 1).map(|j| m.rep().column(j)).collect();
        let labels = subset(m.ground(), mask);
        prop_assert_eq!(m.rank_of(&labels).unwrap(), naive_rank(m.field().p() as u64, &cols));
    }

    #[test]
    fn dual_is_an_involution(m in matroid()) {
        let d = m.dual();
        prop_assert_eq!(d.rank(), m.len() - m.rank());
        prop_assert!(same_rank_function(&m, &d.dual()));
    }

    #[test]
    fn dual_rank_formula(m in matroid(), mask in any::<u32>()) {
        let e = m.ground().to_vec();
        let x = subset(&e, mask);
        let d = m.dual();
        let want = x.len() + m.rank_of(&complement(&e, mask)).unwrap() - m.rank();
        prop_assert_eq!(d.rank_of(&x).unwrap(), want);
    }

    #[test]
    fn deletion_and_contraction_commute(m in matroid(), a in any::<u32>(), b in any::<u32>()) {
        let e = m.ground().to_vec();
        let x = subset(&e, a);
        let y = subset(&e, b & !a);
        let one = m.contract(&x).unwrap().delete(&y).unwrap();
        let two = m.delete(&y).unwrap().contract(&x).unwrap();
        prop_assert!(same_rank_function(&one, &two));
        prop_assert!(same_rank_function(&m.contract(&x).unwrap().dual(), &m.dual().delete(&x).unwrap()));
        prop_assert!(same_rank_function(&m.contract_by_pivoting(&x).unwrap(), &m.contract(&x).unwrap()));
    }

    #[test]
    fn contraction_rank_formula(m in matroid(), a in any::<u32>(), b in any::<u32>()) {
        let e = m.ground().to_vec();
        let x = subset(&e, a);
        let y = subset(&e, b & !a);
        let mut xy = x.clone();
        xy.extend(y.iter().cloned());
        let c = m.contract(&x).unwrap();
        prop_assert_eq!(c.rank_of(&y).unwrap(), m.rank_of(&xy).unwrap() - m.rank_of(&x).unwrap());
    }

    #[test]
    fn connectivity_is_symmetric(m in matroid(), mask in any::<u32>()) {
        let e = m.ground().to_vec();
        let (a, b) = (subset(&e, mask), complement(&e, mask));
        let l = m.lambda(&a).unwrap();
        prop_assert_eq!(l, m.lambda(&b).unwrap());
        prop_assert_eq!(l, m.rank_of(&a).unwrap() + m.rank_of(&b).unwrap() - m.rank());
        prop_assert_eq!(l, m.dual().lambda(&a).unwrap());
    }

    #[test]
    fn rank_is_submodular(m in matroid(), a in any::<u32>(), b in any::<u32>()) {
        let e = m.ground().to_vec();
        let r = |mask: u32| m.rank_of(&subset(&e, mask)).unwrap();
        prop_assert!(r(a) + r(b) >= r(a | b) + r(a & b));
        prop_assert!(r(a) <= r(a | b));
        prop_assert!(r(a) <= subset(&e, a).len());
    }

    #[test]
    fn simplification_is_idempotent(m in matroid()) {
        let (s, _) = m.simplify();
        prop_assert!(s.is_simple());
        prop_assert_eq!(s.len(), m.epsilon());
        prop_assert_eq!(s.rank(), m.rank());
        let (ss, _) = s.simplify();
        prop_assert!(same_rank_function(&s, &ss));
    }
}
