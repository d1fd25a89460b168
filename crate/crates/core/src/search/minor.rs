use std::collections::HashSet;

use rayon::prelude::*;

use super::SearchConfig;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::matroid::{embed, MinorCertificate, RepresentedMatroid};

/// Independent sets of size `k` in lexicographic order, one per closure.
fn contraction_sets(host: &RepresentedMatroid, k: usize, budget: &Budget) -> Result<Vec<Vec<usize>>> {
    let o = host.oracle();
    let n = host.len();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut stack = Vec::with_capacity(k);
    fn rec(
        host: &RepresentedMatroid,
        o: &crate::matroid::ColumnOracle,
        n: usize,
        k: usize,
        start: usize,
        stack: &mut Vec<usize>,
        seen: &mut HashSet<Vec<usize>>,
        out: &mut Vec<Vec<usize>>,
        budget: &Budget,
    ) -> Result<()> {
        if stack.len() == k {
            budget.charge(1)?;
            if seen.insert(host.closure_idx(stack)) {
                out.push(stack.clone());
            }
            return Ok(());
        }
        for j in start..n {
            stack.push(j);
            if o.is_independent(stack) {
                rec(host, o, n, k, j + 1, stack, seen, out, budget)?;
            }
            stack.pop();
        }
        Ok(())
    }
    rec(host, &o, n, k, 0, &mut stack, &mut seen, &mut out, budget)?;
    Ok(out)
}

/// As [`has_minor`], charging an existing budget.
pub fn has_minor_with(
    host: &RepresentedMatroid,
    pattern: &RepresentedMatroid,
    cfg: &SearchConfig,
    budget: &Budget,
) -> Result<Option<MinorCertificate>> {
    if host.len() > cfg.max_ground {
        return Err(Error::TooLarge { size: host.len(), cap: cfg.max_ground });
    }
    let (rh, rp) = (host.rank(), pattern.rank());
    if rp > rh || pattern.len() > host.len() {
        return Ok(None);
    }
    let sets = contraction_sets(host, rh - rp, budget)?;
    let simple = pattern.is_simple();
    let attempt = |c: &Vec<usize>| -> Result<Option<MinorCertificate>> {
        budget.charge(1)?;
        let contract: Vec<String> = c.iter().map(|&i| host.ground()[i].clone()).collect();
        let m = host.contract_by_pivoting(&contract)?;
        let target = if simple { m.simplify().0 } else { m };
        let Some(map) = embed(pattern, &target, budget)? else { return Ok(None) };
        let image: HashSet<&String> = map.iter().map(|&j| &target.ground()[j]).collect();
        let delete = host.ground().iter().filter(|l| !image.contains(l) && !contract.contains(l)).cloned().collect();
        Ok(Some(MinorCertificate {
            contract,
            delete,
            map: map.iter().enumerate().map(|(i, &j)| (pattern.ground()[i].clone(), target.ground()[j].clone())).collect(),
            scalings: None,
        }))
    };
    let settle = |r: Result<Option<MinorCertificate>>| match r {
        Ok(None) => None,
        other => Some(other),
    };
    let hit = if cfg.parallel {
        sets.par_iter().map(attempt).find_map_first(settle)
    } else {
        sets.iter().map(attempt).find_map(settle)
    };
    Ok(hit.transpose()?.flatten())
}

/// Searches for `pattern` as a minor of `host`: contracts one independent set per flat of
/// rank `r(host) - r(pattern)` and looks for the pattern as a restriction.
///
/// The certificate is abstract (no scalings). `Ok(None)` is exhaustive; running out of
/// budget is an error.
pub fn has_minor(
    host: &RepresentedMatroid,
    pattern: &RepresentedMatroid,
    cfg: &SearchConfig,
) -> Result<Option<MinorCertificate>> {
    has_minor_with(host, pattern, cfg, &Budget::new(cfg.max_candidates))
}
