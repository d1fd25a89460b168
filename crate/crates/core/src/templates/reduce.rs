use serde::{Deserialize, Serialize};

use super::transform::{contract_template, normalize_delta_blocks, pivot_columns, project_delta, project_delta_onto};
use super::{apply_unitary, FrameTemplate};
use crate::error::Result;
use crate::gf::{Mat, Subspace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PassKind {
    NormalizeDelta,
    ApplyUnitary,
    ContractTemplate,
    ProjectDelta,
    PruneRows,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionPass {
    pub pass: PassKind,
    pub before: FrameTemplate,
    pub after: FrameTemplate,
    pub evidence: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub passes: Vec<ReductionPass>,
}

impl ReductionTrace {
    fn record(&mut self, pass: PassKind, before: &FrameTemplate, after: FrameTemplate, evidence: String) -> FrameTemplate {
        if &after != before {
            self.passes.push(ReductionPass { pass, before: before.clone(), after: after.clone(), evidence });
        }
        after
    }

    pub fn is_empty(&self) -> bool {
        self.passes.is_empty()
    }
}

fn support(s: &Subspace) -> Vec<usize> {
    let b = s.basis();
    (0..b.ncols()).filter(|&j| (0..b.nrows()).any(|i| b.get(i, j) != 0)).collect()
}

/// Λ = F^{X0} × 0 for `X0` its support; returns `(X0, X1)`.
fn lambda_partition(phi: &FrameTemplate) -> Option<(Vec<String>, Vec<String>)> {
    let sup = support(phi.lambda());
    if sup.len() != phi.lambda().dim() {
        return None;
    }
    let (x0, x1) = phi.x().iter().enumerate().partition::<Vec<_>, _>(|(i, _)| sup.contains(i));
    Some((x0.into_iter().map(|(_, l)| l.clone()).collect(), x1.into_iter().map(|(_, l)| l.clone()).collect()))
}

pub fn is_y_reduced(phi: &FrameTemplate) -> bool {
    let d = phi.delta();
    d.restrict(phi.c()).map(|s| s.dim() == phi.c().len()).unwrap_or(false)
        && d.restrict(&phi.y()).map(|s| s.dim() == 0).unwrap_or(false)
        && lambda_partition(phi).is_some()
}

/// The partition `(X0, X1)` certifying that `phi` is reduced.
pub fn reduced_partition(phi: &FrameTemplate) -> Option<(Vec<String>, Vec<String>)> {
    let f = phi.field();
    let cols = phi.columns();
    let delta = phi.delta();
    for c in phi.c() {
        let e: Vec<u8> = cols.iter().map(|l| u8::from(l == c)).collect();
        if !delta.contains(&e) {
            return None;
        }
    }
    let (x0, x1) = lambda_partition(phi)?;
    let a = phi.a1();
    if !a.submatrix(&x1, phi.c()).ok()?.is_zero() {
        return None;
    }
    let rows = a.select_rows(&x1).ok()?;
    if rows.rank() != x1.len() {
        return None;
    }
    let w = Subspace::row_space(&rows);
    debug_assert_eq!(w.field(), f);
    if !w.is_skew(delta).ok()? {
        return None;
    }
    Some((x0, x1))
}

pub fn is_reduced(phi: &FrameTemplate) -> bool {
    reduced_partition(phi).is_some()
}

fn labels_at(all: &[String], idx: impl IntoIterator<Item = usize>) -> Vec<String> {
    idx.into_iter().map(|i| all[i].clone()).collect()
}

/// `U` with `U·M` in RREF, from the RREF of `[M | I]`.
fn row_reducer(m: &Mat) -> Mat {
    let f = m.field();
    let n = m.nrows();
    let aug = m.hstack(&Mat::identity(f, m.row_labels().to_vec()).with_col_labels(crate::gf::numbered("u#", n)).unwrap()).unwrap();
    let r = aug.rref().matrix;
    let idx: Vec<usize> = (m.ncols()..m.ncols() + n).collect();
    r.select_cols_idx(&idx)
}

/// Runs the reduction pipeline and records every pass that changes the template.
pub fn reduce(phi: &FrameTemplate) -> Result<(FrameTemplate, ReductionTrace)> {
    let mut trace = ReductionTrace::default();
    if is_reduced(phi) {
        return Ok((phi.clone(), trace));
    }
    let f = phi.field();
    let mut cur = phi.clone();

    // Δ = F^{C0} × 0 for some C0 ⊆ C.
    let sup = support(cur.delta());
    let ncols_y = cur.y().len();
    let coordinate = sup.len() == cur.delta().dim() && sup.iter().all(|&j| j >= ncols_y);
    if !coordinate {
        let (next, xhat, chat) = normalize_delta_blocks(&cur)?;
        let ev = format!("generators of Δ installed on rows {xhat:?} over fresh columns {chat:?}");
        cur = trace.record(PassKind::NormalizeDelta, &cur, next, ev);
    }

    // Y-reduction: clear C1 = C - C0 from all but a full-rank block of rows, then contract.
    let cols = cur.columns();
    let sup: Vec<String> = labels_at(&cols, support(cur.delta()));
    let c1: Vec<String> = cur.c().iter().filter(|c| !sup.contains(c)).cloned().collect();
    if !c1.is_empty() {
        let block = cur.a1().select_cols(&c1)?;
        let u = row_reducer(&block);
        let next = apply_unitary(&cur, &u)?;
        let q = block.rank();
        let ev = format!("A1[X, {c1:?}] brought to row echelon form of rank {q}");
        cur = trace.record(PassKind::ApplyUnitary, &cur, next, ev);
        let xhat: Vec<String> = cur.x()[..q].to_vec();
        let next = contract_template(&cur, &xhat, &c1)?;
        let ev = format!("contracted {c1:?} against rows {xhat:?}");
        cur = trace.record(PassKind::ContractTemplate, &cur, next, ev);
    }
    if lambda_partition(&cur).is_none() {
        let n = cur.x().len();
        let lam = cur.lambda();
        let pivots = pivot_columns(lam);
        let mut rows = lam.basis_vectors();
        for j in (0..n).filter(|j| !pivots.contains(j)) {
            let mut e = vec![0u8; n];
            e[j] = 1;
            rows.push(e);
        }
        let r = Mat::new(f, crate::gf::numbered("v", n), cur.x().to_vec(), rows.concat())?;
        let u = r.transpose().inverse()?;
        let next = apply_unitary(&cur, &u)?;
        let ev = format!("basis of Λ (dimension {}) mapped to unit vectors", lam.dim());
        cur = trace.record(PassKind::ApplyUnitary, &cur, next, ev);
    }

    // Block triangularization without adding X0 rows into X1 rows.
    let (x0, x1) = lambda_partition(&cur).expect("Λ is coordinate after the basis change");
    let c = cur.c().to_vec();
    let x_all = cur.x().to_vec();
    let x1_idx = cur.a1().row_indices(&x1)?;
    let x0_idx = cur.a1().row_indices(&x0)?;
    let mut u = Mat::identity(f, x_all.clone());
    let block = cur.a1().submatrix(&x1, &c)?;
    let u11 = row_reducer(&block);
    for (a, &i) in x1_idx.iter().enumerate() {
        for (b, &j) in x1_idx.iter().enumerate() {
            u.set(i, j, u11.get(a, b));
        }
    }
    let stage = u.mul(cur.a1())?.with_row_labels(x_all.clone())?;
    let rref = block.rref();
    let q = rref.rank;
    let c_prime: Vec<String> = rref.pivots.iter().map(|&j| c[j].clone()).collect();
    let x1p: Vec<String> = x1[..q].to_vec();
    let x1pp: Vec<String> = x1[q..].to_vec();
    let cp_idx = stage.col_indices(&c_prime)?;
    let mut elim = Mat::identity(f, x_all.clone());
    for &r in &x0_idx {
        for (k, &cj) in cp_idx.iter().enumerate() {
            let v = stage.get(r, cj);
            if v != 0 {
                elim.set(r, x1_idx[k], f.neg(v));
            }
        }
    }
    let u = elim.mul(&u)?;
    let next = apply_unitary(&cur, &u)?;
    let ev = format!("rows {x1p:?} carry a nonsingular block on {c_prime:?}; rows {x1pp:?} vanish on C");
    cur = trace.record(PassKind::ApplyUnitary, &cur, next, ev);

    if !x1p.is_empty() {
        let cols = cur.columns();
        let rest: Vec<&String> = cols.iter().filter(|l| !c_prime.contains(l)).collect();
        let v = Subspace::coordinate(f, cols.clone(), &rest)?;
        let next = project_delta_onto(&cur, &x1p, &v)?;
        let ev = format!("Δ projected along rows {x1p:?} onto the coordinates outside {c_prime:?}");
        cur = trace.record(PassKind::ProjectDelta, &cur, next, ev);
        let next = contract_template(&cur, &x1p, &c_prime)?;
        let ev = format!("contracted {c_prime:?} against rows {x1p:?}");
        cur = trace.record(PassKind::ContractTemplate, &cur, next, ev);
    }

    if !x1pp.is_empty() {
        let next = project_delta(&cur, &x1pp)?;
        let ev = format!("Δ made skew to the row space of {x1pp:?}");
        cur = trace.record(PassKind::ProjectDelta, &cur, next, ev);
        let rows = cur.a1().select_rows(&x1pp)?;
        let mut keep: Vec<String> = Vec::new();
        let mut kept_rows: Vec<Vec<u8>> = Vec::new();
        for (i, l) in x1pp.iter().enumerate() {
            kept_rows.push(rows.row(i).to_vec());
            let m = Mat::new(f, crate::gf::numbered("k", kept_rows.len()), rows.col_labels().to_vec(), kept_rows.concat())?;
            if m.rank() == kept_rows.len() {
                keep.push(l.clone());
            } else {
                kept_rows.pop();
            }
        }
        let dropped: Vec<String> = x1pp.iter().filter(|l| !keep.contains(l)).cloned().collect();
        if !dropped.is_empty() {
            let x: Vec<String> = cur.x().iter().filter(|l| !dropped.contains(l)).cloned().collect();
            let next = FrameTemplate::new(
                cur.gamma().clone(),
                cur.c().to_vec(),
                x.clone(),
                cur.y0().to_vec(),
                cur.y1().to_vec(),
                cur.a1().select_rows(&x)?,
                cur.delta().clone(),
                cur.lambda().restrict(&x)?,
            )?;
            let ev = format!("dropped dependent rows {dropped:?}");
            cur = trace.record(PassKind::PruneRows, &cur, next, ev);
        }
    }
    debug_assert!(is_reduced(&cur), "reduction left a non-reduced template");
    Ok((cur, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{PrimeField, SubgroupGamma};
    use crate::templates::frame_class_template;

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn trivial_and_frame_class_are_reduced() {
        let f = PrimeField::new(3).unwrap();
        let g = SubgroupGamma::full(f);
        let t = FrameTemplate::trivial(g.clone());
        let (out, trace) = reduce(&t).unwrap();
        assert_eq!(out, t);
        assert!(trace.is_empty());
        for k in 0..3 {
            let phi = frame_class_template(g.clone(), k);
            assert!(is_reduced(&phi));
            assert!(is_y_reduced(&phi));
            assert_eq!(reduced_partition(&phi).unwrap().1.len(), 0);
            assert!(reduce(&phi).unwrap().1.is_empty());
        }
    }

    #[test]
    fn reduces_a_tangled_template() {
        let f = PrimeField::new(3).unwrap();
        let x = labels(&["x1", "x2"]);
        let cols = labels(&["y0", "y1", "c"]);
        let phi = FrameTemplate::new(
            SubgroupGamma::full(f),
            labels(&["c"]),
            x.clone(),
            labels(&["y0"]),
            labels(&["y1"]),
            Mat::from_rows(f, x.clone(), cols.clone(), &[vec![1, 2, 1], vec![0, 1, 1]]).unwrap(),
            Subspace::from_vectors(f, cols, &[vec![1, 1, 0]]).unwrap(),
            Subspace::from_vectors(f, x, &[vec![1, 1]]).unwrap(),
        )
        .unwrap();
        assert!(!is_reduced(&phi));
        let (out, trace) = reduce(&phi).unwrap();
        assert!(is_reduced(&out), "{out:?}");
        assert!(!trace.is_empty());
        assert!(out.lambda().dim() <= 1);
        for w in trace.passes.windows(2) {
            assert_eq!(w[0].after, w[1].before);
        }
        let (again, t2) = reduce(&out).unwrap();
        assert_eq!(again, out);
        assert!(t2.is_empty());
    }
}
