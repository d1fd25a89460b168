use std::collections::HashMap;

use rayon::prelude::*;
use serde::Serialize;

use super::minor::has_minor_with;
use super::SearchConfig;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::frames::projective_points;
use crate::gf::{numbered, Mat, PrimeField};
use crate::matroid::{invariants, is_isomorphic_with, IsoMode, RepresentedMatroid};

/// Outcome of [`max_simple_no_minor`].
#[derive(Clone, Debug, Serialize)]
pub struct ExtremalResult {
    /// Largest pattern-free point set of rank exactly `n`, if any exists.
    pub max_size: Option<usize>,
    /// Largest pattern-free point set of rank at most `n`.
    pub max_size_at_most: usize,
    /// The rank-`n` sets of size `max_size`, one per isomorphism class.
    pub extremal: Vec<RepresentedMatroid>,
    /// Set when every class of pattern-free point sets was generated.
    pub exhaustive: bool,
    /// Number of pattern-free classes generated, by size.
    pub classes_by_size: Vec<usize>,
}

/// Caps on `n`: the point-subset search works inside `PG(n-1, p)`.
fn check_scale(p: u8, n: usize) -> Result<()> {
    let cap = match p {
        2 => 5,
        3 => 4,
        _ => 3,
    };
    if n > cap {
        return Err(Error::TooLarge { size: n, cap });
    }
    Ok(())
}

type Key = (usize, usize, Vec<usize>);

fn key_of(m: &RepresentedMatroid) -> Key {
    let inv = invariants(m);
    (inv.size, inv.rank, inv.hyperplane_sizes.unwrap_or_default())
}

/// The maximum size of a simple rank-`n` GF(p)-represented matroid with no `pattern`-minor.
///
/// Classes of pattern-free subsets of the points of `PG(n-1, p)` are grown one point at a
/// time and deduplicated up to projective equivalence. Since pattern-freeness passes to
/// subsets, every pattern-free set is reached.
pub fn max_simple_no_minor(p: u32, n: usize, pattern: &RepresentedMatroid, cfg: &SearchConfig) -> Result<ExtremalResult> {
    let f = PrimeField::new(p)?;
    check_scale(f.p(), n)?;
    let points = projective_points(f, n);
    let rows = numbered("r", n);
    let labels = numbered("p", points.len());
    let build = |set: &[usize]| -> RepresentedMatroid {
        let cols = set.iter().map(|&i| (labels[i].clone(), points[i].clone())).collect();
        RepresentedMatroid::new(Mat::from_columns(f, rows.clone(), cols).expect("point columns"))
    };
    let budget = Budget::new(cfg.max_candidates);
    let inner = SearchConfig { max_ground: points.len(), parallel: false, ..*cfg };

    let mut level: Vec<Vec<usize>> = vec![vec![]];
    let mut classes_by_size = vec![1];
    let mut best_at_most = 0;
    let mut best_exact: Option<(usize, Vec<Vec<usize>>)> = None;
    loop {
        for set in &level {
            let m = build(set);
            best_at_most = best_at_most.max(set.len());
            if m.rank() == n {
                match &mut best_exact {
                    Some((s, v)) if *s == set.len() => v.push(set.clone()),
                    Some((s, _)) if *s > set.len() => {}
                    _ => best_exact = Some((set.len(), vec![set.clone()])),
                }
            }
        }
        // Grow by one point, dedupe up to projective equivalence, then test for the pattern.
        let mut buckets: HashMap<Key, Vec<usize>> = HashMap::new();
        let mut fresh: Vec<(Vec<usize>, RepresentedMatroid)> = Vec::new();
        for set in &level {
            for q in 0..points.len() {
                if set.contains(&q) {
                    continue;
                }
                budget.charge(1)?;
                let mut grown = set.clone();
                grown.push(q);
                grown.sort_unstable();
                let m = build(&grown);
                let key = key_of(&m);
                let bucket = buckets.entry(key).or_default();
                let mut dup = false;
                for &i in bucket.iter() {
                    if is_isomorphic_with(&fresh[i].1, &m, IsoMode::Represented, &budget)?.is_some() {
                        dup = true;
                        break;
                    }
                }
                if !dup {
                    bucket.push(fresh.len());
                    fresh.push((grown, m));
                }
            }
        }
        let test = |(_, m): &(Vec<usize>, RepresentedMatroid)| has_minor_with(m, pattern, &inner, &budget).map(|c| c.is_none());
        let free: Vec<bool> = if cfg.parallel {
            fresh.par_iter().map(test).collect::<Result<_>>()?
        } else {
            fresh.iter().map(test).collect::<Result<_>>()?
        };
        let next: Vec<Vec<usize>> = fresh.into_iter().zip(free).filter(|(_, ok)| *ok).map(|((s, _), _)| s).collect();
        if next.is_empty() {
            break;
        }
        classes_by_size.push(next.len());
        level = next;
    }
    let (max_size, extremal) = match best_exact {
        Some((s, sets)) => (Some(s), sets.iter().map(|s| build(s)).collect()),
        None => (None, vec![]),
    };
    Ok(ExtremalResult { max_size, max_size_at_most: best_at_most, extremal, exhaustive: true, classes_by_size })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::pg;
    use crate::matroid::is_isomorphic;

    #[test]
    fn fano_free_rank_three() {
        let f = PrimeField::new(2).unwrap();
        let r = max_simple_no_minor(2, 3, &pg(2, f), &SearchConfig::default()).unwrap();
        assert_eq!(r.max_size, Some(6));
        assert_eq!(r.max_size_at_most, 6);
        assert_eq!(r.extremal.len(), 1);
        let k4 = RepresentedMatroid::from_ints(
            f,
            &[vec![1, 0, 0, 1, 1, 0], vec![0, 1, 0, 1, 0, 1], vec![0, 0, 1, 0, 1, 1]],
        );
        assert!(is_isomorphic(&r.extremal[0], &k4, IsoMode::Abstract).is_some());
        assert!(r.exhaustive);
    }

    #[test]
    fn rank_caps() {
        let f = PrimeField::new(3).unwrap();
        assert!(matches!(
            max_simple_no_minor(3, 5, &pg(1, f), &SearchConfig::default()),
            Err(Error::TooLarge { .. })
        ));
    }
}
