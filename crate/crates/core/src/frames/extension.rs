use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{b_rows, build_wt, dowling_matrix, x_rows, DowlingSpec, FrameClassParams, Variant, EXTENSION_LABEL};
use crate::error::{Error, Result};
use crate::gf::{projectively_equivalent, Mat, PrimeField, SubgroupGamma};
use crate::matroid::{IsoMode, MinorCertificate, RepresentedMatroid};

/// Which side of the dichotomy a construction landed on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum ExtensionOutcome {
    XExtension { x: u8 },
    Box,
}

#[derive(Clone, Debug)]
pub struct ExtensionMinor {
    pub outcome: ExtensionOutcome,
    /// The pattern the certificate exhibits, as a standard matrix.
    pub pattern: Mat,
    pub certificate: MinorCertificate,
}

/// A matrix row-equivalent to a minor of the host, still carrying host column labels.
struct Bench {
    field: PrimeField,
    cur: Mat,
    contracted: Vec<String>,
}

impl Bench {
    fn new(host: &Mat) -> Self {
        Self { field: host.field(), cur: host.clone(), contracted: Vec::new() }
    }

    fn row(&self, label: &str) -> usize {
        self.cur.row_index(label).expect("bench row")
    }

    fn entry(&self, row: &str, col: &str) -> u8 {
        self.cur.entry(row, col).expect("bench entry")
    }

    fn add_row(&mut self, dst: &str, src: &str, c: u8) {
        let (d, s) = (self.row(dst), self.row(src));
        self.cur.add_row_multiple(d, s, c);
    }

    fn scale_row(&mut self, row: &str, c: u8) {
        let i = self.row(row);
        self.cur.scale_row(i, c);
    }

    /// Contracts `col` by pivoting on `pivot` (default: first nonzero row), then drops both.
    fn contract(&mut self, col: &str, pivot: Option<&str>) -> Result<()> {
        let f = self.field;
        let j = self.cur.col_index(col)?;
        let pi = match pivot {
            Some(r) => self.row(r),
            None => (0..self.cur.nrows())
                .find(|&i| self.cur.get(i, j) != 0)
                .ok_or_else(|| Error::Precondition(format!("{col} is a loop")))?,
        };
        let pv = self.cur.get(pi, j);
        if pv == 0 {
            return Err(Error::Precondition(format!("zero pivot contracting {col}")));
        }
        for i in 0..self.cur.nrows() {
            if i != pi && self.cur.get(i, j) != 0 {
                let c = f.neg(f.div(self.cur.get(i, j), pv));
                self.cur.add_row_multiple(i, pi, c);
            }
        }
        let rows: Vec<usize> = (0..self.cur.nrows()).filter(|&i| i != pi).collect();
        let cols: Vec<usize> = (0..self.cur.ncols()).filter(|&c| c != j).collect();
        self.cur = self.cur.submatrix_idx(&rows, &cols);
        self.contracted.push(col.to_string());
        Ok(())
    }

    /// Index of projective classes of the current columns; each class lists labels in order.
    fn classes(&self) -> BTreeMap<Vec<u8>, Vec<String>> {
        let f = self.field;
        let mut out: BTreeMap<Vec<u8>, Vec<String>> = BTreeMap::new();
        for j in 0..self.cur.ncols() {
            let mut v = self.cur.column(j);
            if f.normalize(&mut v) != 0 {
                out.entry(v).or_default().push(self.cur.col_labels()[j].clone());
            }
        }
        for v in out.values_mut() {
            v.sort();
        }
        out
    }

    /// A current column parallel to the vector with the given entries on named rows.
    fn find(&self, entries: &[(&str, u8)]) -> Result<String> {
        let mut v = vec![0u8; self.cur.nrows()];
        for &(r, x) in entries {
            v[self.row(r)] = x;
        }
        let f = self.field;
        f.normalize(&mut v);
        self.classes()
            .get(&v)
            .map(|c| c[0].clone())
            .ok_or_else(|| Error::Precondition(format!("no column parallel to {entries:?}")))
    }

    fn unit(&self, row: &str) -> Result<String> {
        self.find(&[(row, 1)])
    }

    fn contract_unit(&mut self, row: &str) -> Result<()> {
        let u = self.unit(row)?;
        self.contract(&u, Some(row))
    }

    /// Matches every pattern column against the bench, with pattern rows sent to `row_map`.
    fn certificate(
        &self,
        host: &Mat,
        pattern: &Mat,
        row_map: &[String],
        extension: Option<&str>,
    ) -> Result<MinorCertificate> {
        if row_map.len() != self.cur.nrows() || row_map.len() != pattern.nrows() {
            return Err(Error::Precondition("row correspondence does not cover the bench".into()));
        }
        let mut map = Vec::with_capacity(pattern.ncols());
        let mut used = HashSet::new();
        for (j, label) in pattern.col_labels().iter().enumerate() {
            let target = if label == EXTENSION_LABEL && extension.is_some() {
                extension.unwrap().to_string()
            } else {
                let entries: Vec<(&str, u8)> =
                    (0..pattern.nrows()).map(|i| (row_map[i].as_str(), pattern.get(i, j))).collect();
                self.find(&entries)?
            };
            if !used.insert(target.clone()) {
                return Err(Error::Precondition(format!("pattern columns collide on {target}")));
            }
            map.push((label.clone(), target));
        }
        let contracted: HashSet<&String> = self.contracted.iter().collect();
        let delete: Vec<String> = host
            .col_labels()
            .iter()
            .filter(|l| !contracted.contains(l) && !used.contains(*l))
            .cloned()
            .collect();
        let mut cert = MinorCertificate { contract: self.contracted.clone(), delete, map, scalings: None };
        let host_m = RepresentedMatroid::new(host.clone());
        let minor = cert.apply(&host_m)?;
        let order: Vec<&str> = cert.map.iter().map(|(_, h)| h.as_str()).collect();
        let pushed = minor.rep().select_cols(&order)?.with_col_labels(pattern.col_labels().to_vec())?;
        cert.scalings = projectively_equivalent(pattern, &pushed)?;
        if cert.scalings.is_none() || !cert.verify(&host_m, &RepresentedMatroid::new(pattern.clone()), IsoMode::Represented)? {
            return Err(Error::Precondition("constructed minor does not match the pattern".into()));
        }
        Ok(cert)
    }
}

fn x_spec(params: &FrameClassParams, n: usize, x: u8) -> DowlingSpec {
    DowlingSpec { params: params.clone(), n, variant: Variant::XExtension { x } }
}

/// Element `γ ∈ Γ` with `γ ≠ -1` and `γ + 1 ∉ Γ`.
fn pick_gamma(gamma: &SubgroupGamma) -> Option<u8> {
    let f = gamma.field();
    gamma.elements().iter().copied().find(|&g| g != f.neg(1) && !gamma.contains(f.add(g, 1)))
}

/// The `DG^□(n+1, Γ)` to `DG^(x)(n, Γ)` step on bench rows `r = [r1, r2, r3]` (the box support).
///
/// Leaves the bench with `r1` removed and returns the new `x`; the extension column then has
/// entries `-1` on `r2` and `x` on `r3` after scaling.
fn box_to_x(bench: &mut Bench, gamma: &SubgroupGamma, r: &[String; 3]) -> Result<u8> {
    let f = gamma.field();
    if !gamma.contains(f.neg(1)) {
        bench.contract_unit(&r[0])?;
        return Ok(f.neg(1));
    }
    let g = pick_gamma(gamma).ok_or_else(|| Error::Precondition("Γ is the whole multiplicative group".into()))?;
    let c = bench.find(&[(&r[0], f.neg(1)), (&r[1], g)])?;
    bench.contract(&c, Some(&r[0]))?;
    // Extension entries are now 1 + γ and 1; scaling by -(1 + γ)^{-1} gives -1 and x.
    Ok(f.neg(f.inv(f.add(1, g))))
}

/// A `DG^(x)(n, Γ)`-minor of `DG^□(n+1, Γ)`, following the two cases of the construction.
pub fn primesubfield_minor(n: usize, gamma: &SubgroupGamma) -> Result<ExtensionMinor> {
    if gamma.is_full() {
        return Err(Error::Precondition("Γ must be a proper subgroup".into()));
    }
    if n < 2 {
        return Err(Error::Precondition("n must be at least 2".into()));
    }
    let params = FrameClassParams::new(gamma.clone(), 0);
    let host = dowling_matrix(&DowlingSpec { params: params.clone(), n: n + 1, variant: Variant::Box })?;
    let mut bench = Bench::new(&host);
    let r = b_rows(n + 1);
    let x = box_to_x(&mut bench, gamma, &[r[0].clone(), r[1].clone(), r[2].clone()])?;
    let pattern = dowling_matrix(&x_spec(&params, n, x))?;
    let certificate = bench.certificate(&host, &pattern, &r[1..], Some(EXTENSION_LABEL))?;
    Ok(ExtensionMinor { outcome: ExtensionOutcome::XExtension { x }, pattern, certificate })
}

/// The standard representation of `DG(n, Γ)^t` with an extra column `e = w`.
pub fn extension_host(n: usize, params: &FrameClassParams, w: &[u8]) -> Result<Mat> {
    let a = build_wt(n, params)?;
    if w.len() != n {
        return Err(Error::Dimension(format!("extension vector of length {} for rank {n}", w.len())));
    }
    let col = Mat::from_columns(a.field(), a.row_labels().to_vec(), vec![(EXTENSION_LABEL.into(), w.to_vec())])?;
    a.hstack(&col)
}

/// Finds a `DG^(x)(m, Γ)^t`- or `DG^□(m, Γ)^t`-minor of a simple extension of `DG(n, Γ)^t`.
///
/// `host` must be [`build_wt`] (possibly with columns rescaled) plus one column `e`.
pub fn dowling_extension_minor(host: &Mat, e: &str, m: usize, params: &FrameClassParams) -> Result<ExtensionMinor> {
    let f = params.field();
    let t = params.t;
    let gamma = &params.gamma;
    let n = host.nrows();
    if host.field() != f {
        return Err(Error::FieldMismatch(host.field().p(), f.p()));
    }
    let p = f.p() as usize;
    if n < p * p * m + t + 3 {
        return Err(Error::Precondition(format!("rank {n} is below |F|^2 m + t + 3 = {}", p * p * m + t + 3)));
    }
    if m < t + 3 {
        return Err(Error::Precondition(format!("m = {m} leaves fewer than three frame rows")));
    }
    let std = build_wt(n, params)?;
    let rest: Vec<&String> = host.col_labels().iter().filter(|l| l.as_str() != e).collect();
    let mut expected: Vec<&String> = std.col_labels().iter().collect();
    let mut got = rest.clone();
    expected.sort();
    got.sort();
    if expected != got || host.row_labels() != std.row_labels() {
        return Err(Error::Precondition("host is not a standard representation plus one column".into()));
    }
    for l in &rest {
        let mut a = host.column(host.col_index(l)?);
        let mut b = std.column(std.col_index(l)?);
        if f.normalize(&mut a) != 0 && f.normalize(&mut b) != 0 && a == b {
            continue;
        }
        return Err(Error::Precondition(format!("column {l} is not a rescaled standard column")));
    }
    let xs = x_rows(t);
    let bs = b_rows(n - t);
    let w = host.column(host.col_index(e)?);
    let mut bench = Bench::new(host);
    let Some(r0) = (0..n - t).find(|&i| w[t + i] != 0) else {
        return Err(Error::Precondition("extension column is parallel to a column of the host".into()));
    };
    for (k, x) in xs.iter().enumerate() {
        if w[k] != 0 {
            bench.add_row(x, &bs[r0], f.neg(f.div(w[k], w[t + r0])));
        }
    }
    let wv = |b: &Bench, r: &str| b.entry(r, e);
    let support: Vec<usize> = (0..n - t).filter(|&i| w[t + i] != 0).collect();
    let k = m - t;
    let mut row_map: Vec<String> = xs.clone();

    if support.len() <= 2 {
        if support.len() == 1 {
            return Err(Error::Precondition("extension column is parallel to a unit column".into()));
        }
        let (i, j) = (support[0], support[1]);
        let (a, b) = (w[t + i], w[t + j]);
        let x = f.neg(f.div(b, a));
        if gamma.contains(x) {
            return Err(Error::Precondition("extension column is parallel to a frame column".into()));
        }
        let fill: Vec<usize> = (0..n - t).filter(|&r| r != i && r != j).take(k - 2).collect();
        for r in 0..n - t {
            if r != i && r != j && !fill.contains(&r) {
                bench.contract_unit(&bs[r])?;
            }
        }
        row_map.push(bs[i].clone());
        row_map.push(bs[j].clone());
        row_map.extend(fill.iter().map(|&r| bs[r].clone()));
        let pattern = dowling_matrix(&x_spec(params, m, x))?;
        let certificate = bench.certificate(host, &pattern, &row_map, Some(e))?;
        return Ok(ExtensionMinor { outcome: ExtensionOutcome::XExtension { x }, pattern, certificate });
    }

    let rr: Vec<usize> = support[..3].to_vec();
    let others: Vec<usize> = (0..n - t).filter(|r| !rr.contains(r)).collect();
    let block = p * (m - 2);
    let mut alpha = None;
    for v in 0..f.p() {
        if others.iter().filter(|&&r| w[t + r] == v).count() >= block {
            alpha = Some(v);
            break;
        }
    }
    let alpha = alpha.ok_or_else(|| Error::Precondition("no constant block of the required size".into()))?;
    let bset: Vec<usize> = others.iter().copied().filter(|&r| w[t + r] == alpha).take(block).collect();
    let chunk = m - 2;
    let b0: Vec<usize> = bset[..chunk].to_vec();
    for i in 1..p {
        for kk in 0..chunk {
            let (lo, hi) = (&bs[b0[kk]], &bs[bset[i * chunk + kk]]);
            let c = bench.find(&[(lo.as_str(), 1), (hi.as_str(), f.neg(1))])?;
            bench.contract(&c, Some(hi))?;
        }
    }
    // Rows outside R and B^0 go; of B^0 only the rows needed to fill the pattern stay.
    let keep_fill: Vec<usize> = b0.iter().copied().take(k + 1 - 3).collect();
    for r in 0..n - t {
        if rr.contains(&r) || keep_fill.contains(&r) || bset[chunk..].contains(&r) {
            continue;
        }
        bench.contract_unit(&bs[r])?;
    }
    let rl: [String; 3] = [bs[rr[0]].clone(), bs[rr[1]].clone(), bs[rr[2]].clone()];
    let fill: Vec<String> = keep_fill.iter().map(|&r| bs[r].clone()).collect();
    let s = f.neg(f.inv(wv(&bench, &rl[0])));
    let (beta1, beta2) = (f.mul(s, wv(&bench, &rl[1])), f.mul(s, wv(&bench, &rl[2])));

    let finish_x = |bench: Bench, x: u8, a: &str, b: &str| -> Result<ExtensionMinor> {
        let mut rows = xs.clone();
        rows.push(a.to_string());
        rows.push(b.to_string());
        rows.extend(fill.iter().cloned());
        let pattern = dowling_matrix(&x_spec(params, m, x))?;
        let certificate = bench.certificate(host, &pattern, &rows, Some(e))?;
        Ok(ExtensionMinor { outcome: ExtensionOutcome::XExtension { x }, pattern, certificate })
    };

    if !gamma.contains(beta1) {
        bench.contract_unit(&rl[2])?;
        return finish_x(bench, beta1, &rl[0], &rl[1]);
    }
    if !gamma.contains(beta2) {
        bench.contract_unit(&rl[1])?;
        return finish_x(bench, beta2, &rl[0], &rl[2]);
    }
    bench.scale_row(&rl[1], f.inv(beta1));
    bench.scale_row(&rl[2], f.inv(beta2));
    if !gamma.contains(f.neg(1)) {
        bench.contract_unit(&rl[0])?;
        return finish_x(bench, f.neg(1), &rl[1], &rl[2]);
    }
    bench.scale_row(&rl[0], f.neg(1));
    if gamma.is_full() {
        // Now e spans the sum of the three units; drop one fill row to reach rank m.
        let mut fill_box = fill.clone();
        let last = fill_box.pop().ok_or_else(|| Error::Precondition("no fill row to drop".into()))?;
        bench.contract_unit(&last)?;
        let mut rows = xs.clone();
        rows.extend(rl.iter().cloned());
        rows.extend(fill_box);
        let pattern = dowling_matrix(&DowlingSpec { params: params.clone(), n: m, variant: Variant::Box })?;
        let certificate = bench.certificate(host, &pattern, &rows, Some(e))?;
        return Ok(ExtensionMinor { outcome: ExtensionOutcome::Box, pattern, certificate });
    }
    let x = box_to_x(&mut bench, gamma, &rl)?;
    finish_x(bench, x, &rl[1], &rl[2])
}
