use std::collections::HashSet;

use rayon::prelude::*;

use super::{ColumnOracle, IsoCertificate, RepresentedMatroid};
use crate::budget::Budget;
use crate::error::Result;
use crate::gf::projectively_equivalent;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum IsoMode {
    Abstract,
    Represented,
}

/// Pruning invariants for isomorphism tests.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Invariants {
    pub size: usize,
    pub rank: usize,
    pub loops: usize,
    pub parallel_sizes: Vec<usize>,
    /// Sorted sizes of all hyperplanes; computed only for at most 20 elements.
    pub hyperplane_sizes: Option<Vec<usize>>,
}

pub fn invariants(m: &RepresentedMatroid) -> Invariants {
    let mut parallel_sizes: Vec<usize> = m.parallel_classes().iter().map(|c| c.len()).collect();
    parallel_sizes.sort_unstable();
    let loops = (0..m.len()).filter(|&j| m.is_loop(j)).count();
    Invariants {
        size: m.len(),
        rank: m.rank(),
        loops,
        parallel_sizes,
        hyperplane_sizes: (m.len() <= 20).then(|| hyperplane_sizes(m)),
    }
}

fn hyperplane_sizes(m: &RepresentedMatroid) -> Vec<usize> {
    let r = m.rank();
    if r == 0 {
        return vec![];
    }
    let o = m.oracle();
    let n = m.len();
    let mut seen: HashSet<u64> = HashSet::new();
    let mut stack = Vec::with_capacity(r);
    fn rec(o: &ColumnOracle, n: usize, target: usize, start: usize, stack: &mut Vec<usize>, seen: &mut HashSet<u64>) {
        if stack.len() == target {
            let mut mask = 0u64;
            let mut buf = stack.clone();
            for j in 0..n {
                buf.push(j);
                if o.rank(&buf) == target {
                    mask |= 1 << j;
                }
                buf.pop();
            }
            seen.insert(mask);
            return;
        }
        for j in start..n {
            stack.push(j);
            if o.is_independent(stack) {
                rec(o, n, target, j + 1, stack, seen);
            }
            stack.pop();
        }
    }
    rec(&o, n, r - 1, 0, &mut stack, &mut seen);
    let mut sizes: Vec<usize> = seen.iter().map(|m| m.count_ones() as usize).collect();
    sizes.sort_unstable();
    sizes
}

/// Per-element constraints of the pattern, in element order.
struct PatternPlan {
    /// `circuits[k]`: sets `S` of earlier elements with `S + k` a circuit.
    circuits: Vec<Vec<Vec<usize>>>,
    /// `bases[k]`: sets `S` of earlier elements with `S + k` a basis of the elements up to `k`.
    bases: Vec<Vec<Vec<usize>>>,
}

impl PatternPlan {
    fn new(p: &RepresentedMatroid) -> Self {
        let o = p.oracle();
        let n = p.len();
        let r = p.rank();
        let mut circuits = vec![Vec::new(); n];
        let mut bases = vec![Vec::new(); n];
        for k in 0..n {
            let prefix: Vec<usize> = (0..=k).collect();
            let rk = o.rank(&prefix);
            let mut s = Vec::new();
            // Walk independent subsets of 0..k of size at most r.
            fn rec(
                o: &ColumnOracle,
                k: usize,
                r: usize,
                rk: usize,
                start: usize,
                s: &mut Vec<usize>,
                circuits: &mut Vec<Vec<usize>>,
                bases: &mut Vec<Vec<usize>>,
            ) {
                let mut with_k = s.clone();
                with_k.push(k);
                let dep = !o.is_independent(&with_k);
                if dep {
                    let minimal = (0..s.len()).all(|i| {
                        let mut t = with_k.clone();
                        t.remove(i);
                        o.is_independent(&t)
                    });
                    if minimal {
                        circuits.push(s.clone());
                    }
                } else if with_k.len() == rk {
                    bases.push(s.clone());
                }
                if s.len() == r {
                    return;
                }
                for j in start..k {
                    s.push(j);
                    if o.is_independent(s) {
                        rec(o, k, r, rk, j + 1, s, circuits, bases);
                    }
                    s.pop();
                }
            }
            rec(&o, k, r, rk, 0, &mut s, &mut circuits[k], &mut bases[k]);
        }
        Self { circuits, bases }
    }

    fn consistent(&self, host: &ColumnOracle, map: &[usize], k: usize, buf: &mut Vec<usize>) -> bool {
        let hk = map[k];
        for c in &self.circuits[k] {
            buf.clear();
            buf.extend(c.iter().map(|&i| map[i]));
            buf.push(hk);
            if host.is_independent(buf) {
                return false;
            }
        }
        for b in &self.bases[k] {
            buf.clear();
            buf.extend(b.iter().map(|&i| map[i]));
            buf.push(hk);
            if !host.is_independent(buf) {
                return false;
            }
        }
        true
    }
}

struct Search<'a> {
    plan: &'a PatternPlan,
    host: &'a ColumnOracle,
    n: usize,
    budget: &'a Budget,
}

impl Search<'_> {
    fn dfs(
        &self,
        map: &mut Vec<usize>,
        used: &mut Vec<bool>,
        accept: &(dyn Fn(&[usize]) -> bool + Sync),
        buf: &mut Vec<usize>,
    ) -> Result<bool> {
        let k = map.len();
        if k == self.n {
            return Ok(accept(map));
        }
        self.budget.charge(1)?;
        for h in 0..self.host.len() {
            if used[h] {
                continue;
            }
            map.push(h);
            if self.plan.consistent(self.host, map, k, buf) {
                used[h] = true;
                let found = self.dfs(map, used, accept, buf)?;
                used[h] = false;
                if found {
                    return Ok(true);
                }
            }
            map.pop();
        }
        Ok(false)
    }
}

/// Finds an injective map from the elements of `pattern` to those of `host` under which the
/// pattern is isomorphic to the restriction of `host` to the image, subject to `accept`.
///
/// Returns the lexicographically first such map (by host index, in pattern order).
pub fn embed_with(
    pattern: &RepresentedMatroid,
    host: &RepresentedMatroid,
    budget: &Budget,
    accept: &(dyn Fn(&[usize]) -> bool + Sync),
) -> Result<Option<Vec<usize>>> {
    let n = pattern.len();
    if n > host.len() || pattern.rank() > host.rank() {
        return Ok(None);
    }
    if n == 0 {
        return Ok(accept(&[]).then(Vec::new));
    }
    let plan = PatternPlan::new(pattern);
    let oracle = host.oracle();
    let search = Search { plan: &plan, host: &oracle, n, budget };
    let first: Vec<Result<Option<Vec<usize>>>> = (0..host.len())
        .into_par_iter()
        .map(|h0| {
            let mut map = vec![h0];
            let mut buf = Vec::new();
            if !plan.consistent(&oracle, &map, 0, &mut buf) {
                return Ok(None);
            }
            let mut used = vec![false; oracle.len()];
            used[h0] = true;
            Ok(search.dfs(&mut map, &mut used, accept, &mut buf)?.then_some(map))
        })
        .collect();
    for r in first {
        if let Some(m) = r? {
            return Ok(Some(m));
        }
    }
    Ok(None)
}

pub fn embed(pattern: &RepresentedMatroid, host: &RepresentedMatroid, budget: &Budget) -> Result<Option<Vec<usize>>> {
    embed_with(pattern, host, budget, &|_| true)
}

/// All embeddings, in lexicographic order, up to `limit`.
pub fn embeddings(
    pattern: &RepresentedMatroid,
    host: &RepresentedMatroid,
    limit: usize,
    budget: &Budget,
) -> Result<Vec<Vec<usize>>> {
    let found = std::sync::Mutex::new(Vec::new());
    embed_with(pattern, host, budget, &|m| {
        let mut f = found.lock().unwrap();
        f.push(m.to_vec());
        f.len() >= limit
    })?;
    let mut v = found.into_inner().unwrap();
    v.sort();
    v.truncate(limit);
    Ok(v)
}

fn represented_witness(a: &RepresentedMatroid, b: &RepresentedMatroid, map: &[usize]) -> Option<Vec<u8>> {
    let sel = b.rep().select_cols_idx(map).with_col_labels(a.ground().to_vec()).ok()?;
    projectively_equivalent(a.rep(), &sel).ok().flatten()
}

/// Searches for a bijection from the elements of `a` to those of `b`.
pub fn is_isomorphic_with(
    a: &RepresentedMatroid,
    b: &RepresentedMatroid,
    mode: IsoMode,
    budget: &Budget,
) -> Result<Option<IsoCertificate>> {
    if mode == IsoMode::Represented && a.field() != b.field() {
        return Ok(None);
    }
    if a.len() != b.len() || a.rank() != b.rank() {
        return Ok(None);
    }
    if invariants(a) != invariants(b) {
        return Ok(None);
    }
    let map = match mode {
        IsoMode::Abstract => embed(a, b, budget)?,
        IsoMode::Represented => embed_with(a, b, budget, &|m| represented_witness(a, b, m).is_some())?,
    };
    Ok(map.map(|m| {
        let scalings = match mode {
            IsoMode::Abstract => None,
            IsoMode::Represented => represented_witness(a, b, &m),
        };
        IsoCertificate {
            bijection: m.iter().enumerate().map(|(i, &j)| (a.ground()[i].clone(), b.ground()[j].clone())).collect(),
            scalings,
        }
    }))
}

pub fn is_isomorphic(a: &RepresentedMatroid, b: &RepresentedMatroid, mode: IsoMode) -> Option<IsoCertificate> {
    is_isomorphic_with(a, b, mode, &Budget::unlimited()).expect("unlimited budget")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Mat, PrimeField};

    fn brute_iso(a: &RepresentedMatroid, b: &RepresentedMatroid) -> bool {
        let n = a.len();
        if n != b.len() {
            return false;
        }
        let (oa, ob) = (a.oracle(), b.oracle());
        let mut perm: Vec<usize> = (0..n).collect();
        fn next(p: &mut [usize]) -> bool {
            let n = p.len();
            if n < 2 {
                return false;
            }
            let mut i = n - 1;
            while i > 0 && p[i - 1] >= p[i] {
                i -= 1;
            }
            if i == 0 {
                return false;
            }
            let mut j = n - 1;
            while p[j] <= p[i - 1] {
                j -= 1;
            }
            p.swap(i - 1, j);
            p[i..].reverse();
            true
        }
        loop {
            let ok = (0u32..1 << n).all(|s| {
                let x: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
                let y: Vec<usize> = x.iter().map(|&i| perm[i]).collect();
                oa.rank(&x) == ob.rank(&y)
            });
            if ok {
                return true;
            }
            if !next(&mut perm) {
                return false;
            }
        }
    }

    #[test]
    fn column_permutation_is_isomorphic() {
        let f = PrimeField::new(3).unwrap();
        let m = RepresentedMatroid::from_ints(f, &[vec![1, 0, 1, 1, 0], vec![0, 1, 1, 2, 1]]);
        let perm = m.rep().select_cols(&["3", "5", "1", "4", "2"]).unwrap();
        let pm = RepresentedMatroid::new(perm);
        for mode in [IsoMode::Abstract, IsoMode::Represented] {
            let cert = is_isomorphic(&m, &pm, mode).unwrap();
            assert!(cert.verify(&m, &pm, mode).unwrap());
        }
    }

    #[test]
    fn line_over_gf5_both_modes() {
        let f = PrimeField::new(5).unwrap();
        let pg = RepresentedMatroid::from_ints(f, &[vec![1, 0, 1, 1, 1, 1], vec![0, 1, 1, 2, 3, 4]]);
        let other = RepresentedMatroid::from_ints(f, &[vec![3, 2, 0, 4, 2, 3], vec![3, 4, 3, 2, 0, 2]]);
        assert!(other.is_simple());
        assert!(is_isomorphic(&pg, &other, IsoMode::Abstract).is_some());
        assert!(is_isomorphic(&pg, &other, IsoMode::Represented).is_some());
    }

    #[test]
    fn represented_mode_matches_permutation_oracle() {
        // Copies of U_{2,4} over GF(5) with different cross-ratios.
        let f = PrimeField::new(5).unwrap();
        let a = RepresentedMatroid::from_ints(f, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]);
        for last in 2..5 {
            let b = RepresentedMatroid::from_ints(f, &[vec![1, 0, 1, 1], vec![0, 1, 1, last]]);
            assert!(is_isomorphic(&a, &b, IsoMode::Abstract).is_some());
            assert_eq!(is_isomorphic(&a, &b, IsoMode::Represented).is_some(), brute_represented(&a, &b));
        }
    }

    fn brute_represented(a: &RepresentedMatroid, b: &RepresentedMatroid) -> bool {
        let n = a.len();
        let mut best = false;
        let idx: Vec<usize> = (0..n).collect();
        fn perms(v: Vec<usize>) -> Vec<Vec<usize>> {
            if v.len() <= 1 {
                return vec![v];
            }
            let mut out = Vec::new();
            for i in 0..v.len() {
                let mut rest = v.clone();
                let x = rest.remove(i);
                for mut p in perms(rest) {
                    p.insert(0, x);
                    out.push(p);
                }
            }
            out
        }
        for p in perms(idx) {
            let sel: Mat = b.rep().select_cols_idx(&p).with_col_labels(a.ground().to_vec()).unwrap();
            if projectively_equivalent(a.rep(), &sel).unwrap().is_some() {
                best = true;
            }
        }
        best
    }

    #[test]
    fn fano_vs_affine_cube_sizes() {
        let f = PrimeField::new(2).unwrap();
        let fano = RepresentedMatroid::from_ints(
            f,
            &[vec![1, 0, 0, 1, 1, 0, 1], vec![0, 1, 0, 1, 0, 1, 1], vec![0, 0, 1, 0, 1, 1, 1]],
        );
        let mut cube = vec![vec![1i64; 8]];
        for b in 0..3 {
            cube.push((0..8).map(|v| (v >> b) & 1).collect());
        }
        let ag = RepresentedMatroid::from_ints(f, &cube);
        assert!(is_isomorphic(&fano, &ag, IsoMode::Abstract).is_none());
    }

    #[test]
    fn backtracking_agrees_with_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..40 {
            let p = [2u32, 3][rng.gen_range(0..2)];
            let f = PrimeField::new(p).unwrap();
            let n = rng.gen_range(2..=6);
            let gen = |rng: &mut rand_chacha::ChaCha8Rng| {
                let rows: Vec<Vec<i64>> = (0..3).map(|_| (0..n).map(|_| rng.gen_range(0..p as i64)).collect()).collect();
                RepresentedMatroid::from_ints(f, &rows)
            };
            let a = gen(&mut rng);
            let b = if rng.gen_bool(0.5) {
                let mut order: Vec<String> = a.ground().to_vec();
                order.reverse();
                RepresentedMatroid::new(a.rep().select_cols(&order).unwrap().with_col_labels(a.ground().to_vec()).unwrap())
            } else {
                gen(&mut rng)
            };
            assert_eq!(is_isomorphic(&a, &b, IsoMode::Abstract).is_some(), brute_iso(&a, &b));
        }
    }
}
