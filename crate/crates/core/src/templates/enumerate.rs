use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::Serialize;

use super::conform::{conforming_matroid, ShiftMatrix};
use super::FrameTemplate;
use crate::error::{Error, Result};
use crate::frames::all_vectors;
use crate::gf::{numbered, Mat, PrimeField};
use crate::matroid::RepresentedMatroid;

/// Hard cap on `max_ground`.
pub const MAX_GROUND: usize = 8;
const R: usize = 16;

type Vector = [u8; R];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumerationLimits {
    /// Largest number of point subsets the enumeration may visit.
    pub ceiling: u64,
}

impl Default for EnumerationLimits {
    fn default() -> Self {
        Self { ceiling: 20_000_000 }
    }
}

/// One isomorphism class: its simplification and a conforming matroid realizing it,
/// with the respecting matrix and shift that produce it.
#[derive(Clone, Debug, Serialize)]
pub struct ConformingMember {
    pub simple: RepresentedMatroid,
    pub conforming: RepresentedMatroid,
    pub respecting: Mat,
    pub shift: ShiftMatrix,
}

/// The simplifications of all conforming matroids within the bounds, one per
/// represented isomorphism class, in canonical order.
#[derive(Clone, Debug, Serialize)]
pub struct Enumeration {
    pub members: Vec<ConformingMember>,
    #[serde(skip)]
    keys: Vec<Vec<u8>>,
    pub hosts: usize,
    pub subsets: u64,
}

impl Enumeration {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Canonical keys of the members; equal key lists mean equal families.
    pub fn keys(&self) -> &[Vec<u8>] {
        &self.keys
    }

    pub fn same_family(&self, other: &Enumeration) -> bool {
        self.keys == other.keys
    }
}

#[derive(Clone, Debug)]
enum ColumnType {
    Frame { lambda: Vec<u8>, frame: Vec<u8> },
    Shift { row: usize, y: usize },
}

struct Host {
    base: Vec<Vector>,
    points: Vec<Vector>,
    origin: Vec<usize>,
    d: Vec<Vec<u8>>,
    len: usize,
}

struct Setup<'a> {
    phi: &'a FrameTemplate,
    f: PrimeField,
    k: usize,
    budget: usize,
    types: Vec<ColumnType>,
}

fn binom(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let mut r: u64 = 1;
    for i in 0..k {
        r = r.saturating_mul(n - i) / (i + 1);
    }
    r
}

fn subset_count(points: usize, depth: usize) -> u64 {
    (0..=depth as u64).fold(0u64, |a, j| a.saturating_add(binom(points as u64, j)))
}

fn combos(f: PrimeField, basis: &[Vec<u8>], len: usize) -> Vec<Vec<u8>> {
    all_vectors(f, basis.len())
        .into_iter()
        .map(|coef| {
            let mut v = vec![0u8; len];
            for (c, b) in coef.iter().zip(basis) {
                for (x, y) in v.iter_mut().zip(b) {
                    *x = f.add(*x, f.mul(*c, *y));
                }
            }
            v
        })
        .collect()
}

fn frame_classes(k: usize, phi: &FrameTemplate) -> Vec<Vec<u8>> {
    let f = phi.field();
    let mut out = Vec::new();
    for i in 0..k {
        let mut e = vec![0u8; k];
        e[i] = 1;
        out.push(e);
    }
    for i in 0..k {
        for j in i + 1..k {
            for &g in phi.gamma().elements() {
                let mut v = vec![0u8; k];
                v[i] = f.neg(1);
                v[j] = g;
                out.push(v);
            }
        }
    }
    out
}

/// Choices of the rows of `A[B - X, Y0 ∪ Y1 ∪ C]` up to row order, and up to
/// Γ-scaling of single rows when `Y1 = ∅`.
fn delta_rows(phi: &FrameTemplate, k: usize) -> Vec<Vec<Vec<u8>>> {
    let f = phi.field();
    let n = phi.columns().len();
    let mut vecs = combos(f, &phi.delta().basis_vectors(), n);
    if phi.y1().is_empty() {
        vecs = vecs
            .into_iter()
            .map(|v| {
                phi.gamma().elements().iter().map(|&g| v.iter().map(|&x| f.mul(g, x)).collect::<Vec<u8>>()).min().unwrap()
            })
            .collect();
    }
    vecs.sort();
    vecs.dedup();
    let mut out = Vec::new();
    let mut idx = vec![0usize; k];
    loop {
        out.push(idx.iter().map(|&i| vecs[i].clone()).collect());
        let mut pos = k;
        loop {
            if pos == 0 {
                return out;
            }
            pos -= 1;
            if idx[pos] + 1 < vecs.len() {
                let v = idx[pos] + 1;
                for slot in &mut idx[pos..] {
                    *slot = v;
                }
                break;
            }
        }
    }
}

impl<'a> Setup<'a> {
    fn new(phi: &'a FrameTemplate, max_ground: usize, k: usize) -> Self {
        let f = phi.field();
        let lambdas = combos(f, &phi.lambda().basis_vectors(), phi.x().len());
        let mut types = Vec::new();
        for frame in frame_classes(k, phi) {
            for l in &lambdas {
                types.push(ColumnType::Frame { lambda: l.clone(), frame: frame.clone() });
            }
        }
        for l in lambdas.iter().filter(|l| l.iter().any(|&v| v != 0)) {
            types.push(ColumnType::Frame { lambda: l.clone(), frame: vec![0; k] });
        }
        for row in 0..k {
            for y in 0..phi.y1().len() {
                types.push(ColumnType::Shift { row, y });
            }
        }
        let budget = max_ground - phi.y0().len();
        Setup { phi, f, k, budget, types }
    }

    /// Column of `AS` for a template column (`Y0`, `Y1` or `C`) at position `j`.
    fn template_column(&self, d: &[Vec<u8>], j: usize) -> Vec<u8> {
        let a1 = self.phi.a1();
        (0..a1.nrows()).map(|i| a1.get(i, j)).chain(d.iter().map(|row| row[j])).collect()
    }

    fn type_column(&self, d: &[Vec<u8>], t: &ColumnType) -> Vec<u8> {
        match t {
            ColumnType::Frame { lambda, frame } => lambda.iter().chain(frame).copied().collect(),
            ColumnType::Shift { row, y } => {
                let j = self.phi.y0().len() + y;
                let mut v = self.template_column(d, j);
                let top = self.phi.x().len();
                v[top + row] = self.f.add(v[top + row], 1);
                v
            }
        }
    }

    fn host(&self, d: Vec<Vec<u8>>) -> Host {
        let f = self.f;
        let ny0 = self.phi.y0().len();
        let ny = ny0 + self.phi.y1().len();
        let ncols = self.phi.columns().len();
        let mut cs: Vec<Vec<u8>> = (ny..ncols).map(|j| self.template_column(&d, j)).collect();
        let mut others: Vec<Vec<u8>> = (0..ny0).map(|j| self.template_column(&d, j)).collect();
        others.extend(self.types.iter().map(|t| self.type_column(&d, t)));
        let rows = self.phi.x().len() + self.k;
        let mut dead = vec![false; rows];
        for ci in 0..cs.len() {
            let Some(piv) = (0..rows).find(|&i| !dead[i] && cs[ci][i] != 0) else { continue };
            let inv = f.inv(cs[ci][piv]);
            let pivot_col = cs[ci].clone();
            for v in cs.iter_mut().skip(ci + 1).chain(others.iter_mut()) {
                let s = f.mul(v[piv], inv);
                if s != 0 {
                    for i in 0..rows {
                        v[i] = f.sub(v[i], f.mul(s, pivot_col[i]));
                    }
                }
            }
            dead[piv] = true;
        }
        let live: Vec<usize> = (0..rows).filter(|&i| !dead[i]).collect();
        let project = |v: &Vec<u8>| -> Option<Vector> {
            let mut out = [0u8; R];
            for (slot, &i) in live.iter().enumerate() {
                out[slot] = v[i];
            }
            (f.normalize(&mut out[..live.len()]) != 0).then_some(out)
        };
        let mut base: Vec<Vector> = Vec::new();
        for v in &others[..ny0] {
            if let Some(p) = project(v) {
                if !base.contains(&p) {
                    base.push(p);
                }
            }
        }
        let mut seen: HashMap<Vector, usize> = HashMap::new();
        let mut points = Vec::new();
        let mut origin = Vec::new();
        for (t, v) in others[ny0..].iter().enumerate() {
            if let Some(p) = project(v) {
                if !base.contains(&p) && !seen.contains_key(&p) {
                    seen.insert(p, points.len());
                    points.push(p);
                    origin.push(t);
                }
            }
        }
        Host { base, points, origin, d, len: live.len() }
    }
}

struct Arith {
    p: u8,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

impl Arith {
    fn new(f: PrimeField) -> Self {
        let p = f.p();
        let mut mul = vec![0u8; p as usize * p as usize];
        let mut inv = vec![0u8; p as usize];
        for a in 0..p {
            for b in 0..p {
                mul[a as usize * p as usize + b as usize] = f.mul(a, b);
            }
            if a != 0 {
                inv[a as usize] = f.inv(a);
            }
        }
        Self { p, mul, inv }
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.p as usize + b as usize]
    }

    #[inline]
    fn sub(&self, a: u8, b: u8) -> u8 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }
}

/// An independent subset (bitmask over positions) with an echelon basis of its span.
#[derive(Clone)]
struct Indep {
    set: u16,
    basis: Vec<(u8, Vector)>,
}

fn reduce_against(ar: &Arith, basis: &[(u8, Vector)], v: &Vector, len: usize) -> Option<(u8, Vector)> {
    let mut w = *v;
    for (piv, b) in basis {
        let c = w[*piv as usize];
        if c != 0 {
            for i in 0..len {
                w[i] = ar.sub(w[i], ar.mul(c, b[i]));
            }
        }
    }
    let piv = (0..len).find(|&i| w[i] != 0)?;
    let s = ar.inv[w[piv] as usize];
    for x in w.iter_mut().take(len) {
        *x = ar.mul(*x, s);
    }
    Some((piv as u8, w))
}

fn extend_indep(ar: &Arith, indep: &[Indep], v: &Vector, pos: usize, len: usize) -> Vec<Indep> {
    let mut out = indep.to_vec();
    for a in indep {
        if let Some(b) = reduce_against(ar, &a.basis, v, len) {
            let mut basis = a.basis.clone();
            basis.push(b);
            out.push(Indep { set: a.set | (1 << pos), basis });
        }
    }
    out
}

fn mask_of(indep: &[Indep]) -> [u64; 4] {
    let mut m = [0u64; 4];
    for a in indep {
        m[(a.set >> 6) as usize] |= 1u64 << (a.set & 63);
    }
    m
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn heap(k: usize, p: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(p.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, p, out);
            if k.is_multiple_of(2) {
                p.swap(i, k - 1);
            } else {
                p.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut p, &mut out);
    out
}

fn canonical_mask(n: usize, mask: &[u64; 4], perms: &[Vec<usize>]) -> [u64; 4] {
    let sets: Vec<usize> = (0..1usize << n).filter(|&s| mask[s >> 6] >> (s & 63) & 1 == 1).collect();
    let mut best: Option<[u64; 4]> = None;
    for perm in perms {
        let mut m = [0u64; 4];
        for &s in &sets {
            let mut t = 0usize;
            for (i, &pi) in perm.iter().enumerate() {
                if s >> i & 1 == 1 {
                    t |= 1 << pi;
                }
            }
            m[t >> 6] |= 1u64 << (t & 63);
        }
        let key = [m[3], m[2], m[1], m[0]];
        if best.is_none_or(|b| key < b) {
            best = Some(key);
        }
    }
    best.unwrap_or([0; 4])
}

/// Normal form of a column configuration under row operations and column scaling.
fn projective_normal_form(f: PrimeField, cols: &[Vector], len: usize) -> Vec<u8> {
    let n = cols.len();
    let mut m = Mat::zeros(f, numbered("r", len), numbered("e", n));
    for (j, c) in cols.iter().enumerate() {
        for i in 0..len {
            m.set(i, j, c[i]);
        }
    }
    let rr = m.rref();
    let r = rr.rank;
    let mut a = rr.matrix.select_rows_idx(&(0..r).collect::<Vec<_>>());
    let nonpivot: Vec<usize> = (0..n).filter(|j| !rr.pivots.contains(j)).collect();
    let mut row_done = vec![false; r];
    let mut col_done = vec![false; n];
    for start in 0..r {
        if row_done[start] {
            continue;
        }
        row_done[start] = true;
        let mut queue = vec![(true, start)];
        while let Some((is_row, idx)) = queue.pop() {
            if is_row {
                for &j in &nonpivot {
                    if !col_done[j] && a.get(idx, j) != 0 {
                        let s = f.inv(a.get(idx, j));
                        for i in 0..r {
                            a.set(i, j, f.mul(a.get(i, j), s));
                        }
                        col_done[j] = true;
                        queue.insert(0, (false, j));
                    }
                }
            } else {
                for i in 0..r {
                    if !row_done[i] && a.get(i, idx) != 0 {
                        let s = f.inv(a.get(i, idx));
                        a.scale_row(i, s);
                        let piv = rr.pivots[i];
                        a.set(i, piv, 1);
                        row_done[i] = true;
                        queue.insert(0, (true, i));
                    }
                }
            }
        }
    }
    let mut key = vec![n as u8, r as u8];
    key.extend_from_slice(a.data());
    key
}

fn represented_canonical(f: PrimeField, cols: &[Vector], len: usize, perms: &[Vec<usize>]) -> Vec<u8> {
    perms
        .iter()
        .map(|perm| {
            let mut permuted = vec![[0u8; R]; cols.len()];
            for (i, &pi) in perm.iter().enumerate() {
                permuted[pi] = cols[i];
            }
            projective_normal_form(f, &permuted, len)
        })
        .min()
        .unwrap_or_default()
}

/// Raw (order-dependent) key of the current point set.
fn raw_key(f: PrimeField, elems: &[Vector], indep: &[Indep], len: usize) -> Vec<u8> {
    if f.p() <= 3 {
        let m = mask_of(indep);
        let mut key = vec![elems.len() as u8];
        for w in m {
            key.extend_from_slice(&w.to_le_bytes());
        }
        key
    } else {
        projective_normal_form(f, elems, len)
    }
}

fn canonical_key(f: PrimeField, raw: &[u8], elems: &[Vector], len: usize, perms: &[Vec<usize>]) -> Vec<u8> {
    if f.p() <= 3 {
        let n = raw[0] as usize;
        let mut m = [0u64; 4];
        for (i, w) in m.iter_mut().enumerate() {
            *w = u64::from_le_bytes(raw[1 + 8 * i..9 + 8 * i].try_into().unwrap());
        }
        let c = canonical_mask(n, &m, perms);
        let mut key = vec![n as u8];
        for w in c {
            key.extend_from_slice(&w.to_be_bytes());
        }
        key
    } else {
        represented_canonical(f, elems, len, perms)
    }
}

struct Walk<'a> {
    ar: &'a Arith,
    f: PrimeField,
    host: &'a Host,
    len: usize,
    depth: usize,
    found: HashMap<Vec<u8>, Vec<u16>>,
    order: Vec<Vec<u8>>,
    nodes: u64,
}

impl Walk<'_> {
    fn visit(&mut self, elems: &mut Vec<Vector>, chosen: &mut Vec<u16>, indep: &[Indep], next: usize) {
        self.nodes += 1;
        let key = raw_key(self.f, elems, indep, self.len);
        if !self.found.contains_key(&key) {
            self.found.insert(key.clone(), chosen.clone());
            self.order.push(key);
        }
        if chosen.len() == self.depth {
            return;
        }
        for idx in next..self.host.points.len() {
            let v = self.host.points[idx];
            let grown = extend_indep(self.ar, indep, &v, elems.len(), self.len);
            elems.push(v);
            chosen.push(idx as u16);
            self.visit(elems, chosen, &grown, idx + 1);
            elems.pop();
            chosen.pop();
        }
    }
}

/// Number of point subsets the enumeration would visit.
pub fn enumeration_cost(phi: &FrameTemplate, max_ground: usize, max_rows: usize) -> Result<u64> {
    Ok(plan(phi, max_ground, max_rows)?.1)
}

fn check_bounds(phi: &FrameTemplate, max_ground: usize, max_rows: usize) -> Result<()> {
    if max_ground > MAX_GROUND {
        return Err(Error::TooLarge { size: max_ground, cap: MAX_GROUND });
    }
    if phi.x().len() + max_rows > R {
        return Err(Error::TooLarge { size: phi.x().len() + max_rows, cap: R });
    }
    Ok(())
}

fn plan(phi: &FrameTemplate, max_ground: usize, max_rows: usize) -> Result<(Vec<Host>, u64)> {
    check_bounds(phi, max_ground, max_rows)?;
    if phi.y0().len() > max_ground {
        return Ok((vec![], 0));
    }
    let setup = Setup::new(phi, max_ground, max_rows);
    let hosts: Vec<Host> = delta_rows(phi, max_rows).into_par_iter().map(|d| setup.host(d)).collect();
    let cost = hosts.iter().fold(0u64, |a, h| a.saturating_add(subset_count(h.points.len(), setup.budget)));
    Ok((hosts, cost))
}

/// Simplifications of all matroids `M(AS)/C \ Y1` with `|E(M)| ≤ max_ground` and at
/// most `max_rows` rows outside `X`, up to represented isomorphism.
///
/// The respecting matrices with fewer rows are covered by zero rows. The visited
/// point subsets are counted up front and the call fails with `BudgetExceeded` when
/// the count is above `limits.ceiling`.
pub fn enumerate_conforming(
    phi: &FrameTemplate,
    max_ground: usize,
    max_rows: usize,
    limits: &EnumerationLimits,
) -> Result<Enumeration> {
    let (hosts, cost) = plan(phi, max_ground, max_rows)?;
    if cost > limits.ceiling {
        return Err(Error::BudgetExceeded(limits.ceiling));
    }
    if hosts.is_empty() {
        return Ok(Enumeration { members: vec![], keys: vec![], hosts: 0, subsets: 0 });
    }
    let f = phi.field();
    let ar = Arith::new(f);
    let depth = max_ground - phi.y0().len();
    let walks: Vec<(Vec<(Vec<u8>, Vec<u16>)>, u64)> = hosts
        .par_iter()
        .map(|host| {
            let len = host.len;
            let mut walk = Walk { ar: &ar, f, host, len, depth, found: HashMap::new(), order: vec![], nodes: 0 };
            let mut indep = vec![Indep { set: 0, basis: vec![] }];
            let mut elems = Vec::new();
            for (pos, v) in host.base.iter().enumerate() {
                indep = extend_indep(&ar, &indep, v, pos, len);
                elems.push(*v);
            }
            walk.visit(&mut elems, &mut vec![], &indep, 0);
            let Walk { mut found, order, nodes, .. } = walk;
            (order.into_iter().map(|k| { let c = found.remove(&k).unwrap(); (k, c) }).collect(), nodes)
        })
        .collect();
    let subsets = walks.iter().map(|w| w.1).sum();
    let max_n = hosts.iter().map(|h| h.base.len()).max().unwrap_or(0) + depth;
    let perm_table: Vec<Vec<Vec<usize>>> = (0..=max_n).map(permutations).collect();
    let mut classes: BTreeMap<Vec<u8>, (usize, Vec<u16>)> = BTreeMap::new();
    let mut memo: HashMap<Vec<u8>, Vec<u8>> = HashMap::new();
    for (hi, (found, _)) in walks.into_iter().enumerate() {
        let host = &hosts[hi];
        let len = host.len;
        for (raw, chosen) in found {
            let elems: Vec<Vector> =
                host.base.iter().copied().chain(chosen.iter().map(|&i| host.points[i as usize])).collect();
            let key = if f.p() <= 3 {
                memo.entry(raw.clone())
                    .or_insert_with(|| canonical_key(f, &raw, &elems, len, &perm_table[elems.len()]))
                    .clone()
            } else {
                canonical_key(f, &raw, &elems, len, &perm_table[elems.len()])
            };
            classes.entry(key).or_insert((hi, chosen));
        }
    }
    let setup = Setup::new(phi, max_ground, max_rows);
    let mut members = Vec::with_capacity(classes.len());
    let mut keys = Vec::with_capacity(classes.len());
    for (key, (hi, chosen)) in classes {
        members.push(realize(&setup, &hosts[hi], &chosen)?);
        keys.push(key);
    }
    Ok(Enumeration { members, keys, hosts: hosts.len(), subsets })
}

/// Builds the respecting matrix, shift and conforming matroid for a chosen point set.
fn realize(setup: &Setup, host: &Host, chosen: &[u16]) -> Result<ConformingMember> {
    let phi = setup.phi;
    let f = setup.f;
    let k = setup.k;
    let rows: Vec<String> = phi.x().iter().cloned().chain(numbered("b#", k)).collect();
    let cols = phi.columns();
    let mut columns: Vec<(String, Vec<u8>)> = Vec::new();
    for (j, l) in cols.iter().enumerate() {
        columns.push((l.clone(), setup.template_column(&host.d, j)));
    }
    let mut assignment = Vec::new();
    for (n, &i) in chosen.iter().enumerate() {
        let t = &setup.types[host.origin[i as usize]];
        let label = format!("e#{}", n + 1);
        let v = match t {
            ColumnType::Frame { .. } => setup.type_column(&host.d, t),
            ColumnType::Shift { row, y } => {
                assignment.push((label.clone(), phi.y1()[*y].clone()));
                let mut v = vec![0u8; rows.len()];
                v[phi.x().len() + row] = 1;
                v
            }
        };
        columns.push((label, v));
    }
    let respecting = Mat::from_columns(f, rows, columns)?;
    let shift = ShiftMatrix::new(respecting.col_labels().to_vec(), assignment)?;
    let conforming = conforming_matroid(&respecting, &shift, phi)?;
    let (simple, _) = conforming.simplify();
    Ok(ConformingMember { simple, conforming, respecting, shift })
}
