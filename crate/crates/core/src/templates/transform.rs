use super::FrameTemplate;
use crate::error::{Error, Result};
use crate::gf::{complementary_projection, Mat, Subspace};

fn minus(all: &[String], drop: &[String]) -> Vec<String> {
    all.iter().filter(|l| !drop.contains(l)).cloned().collect()
}

fn check_subset(sub: &[String], of: &[String], what: &str) -> Result<()> {
    match sub.iter().find(|l| !of.contains(l)) {
        Some(l) => Err(Error::Precondition(format!("{l} is not in {what}"))),
        None => Ok(()),
    }
}

/// Contracts `Ĉ` against the rows `X̂`.
///
/// Requires `rank(A1[X̂, Ĉ]) = |X̂|`, `A1[X - X̂, Ĉ] = 0` and `Δ[Ĉ] = 0`.
pub fn contract_template(phi: &FrameTemplate, xhat: &[String], chat: &[String]) -> Result<FrameTemplate> {
    check_subset(xhat, phi.x(), "X")?;
    check_subset(chat, phi.c(), "C")?;
    let a1 = phi.a1();
    if a1.submatrix(xhat, chat)?.rank() != xhat.len() {
        return Err(Error::Precondition("A1[X̂, Ĉ] does not have full row rank".into()));
    }
    let x2 = minus(phi.x(), xhat);
    if !a1.submatrix(&x2, chat)?.is_zero() {
        return Err(Error::Precondition("A1[X - X̂, Ĉ] is not zero".into()));
    }
    if phi.delta().restrict(chat)?.dim() != 0 {
        return Err(Error::Precondition("Δ[Ĉ] is not zero".into()));
    }
    let c2 = minus(phi.c(), chat);
    let cols: Vec<String> = phi.y0().iter().chain(phi.y1()).chain(&c2).cloned().collect();
    FrameTemplate::new(
        phi.gamma().clone(),
        c2,
        x2.clone(),
        phi.y0().to_vec(),
        phi.y1().to_vec(),
        a1.submatrix(&x2, &cols)?,
        phi.delta().restrict(&cols)?,
        phi.lambda().restrict(&x2)?,
    )
}

/// Replaces `A1` by `U·A1` and Λ by `UΛ`; `u` is indexed positionally by `X`.
pub fn apply_unitary(phi: &FrameTemplate, u: &Mat) -> Result<FrameTemplate> {
    let n = phi.x().len();
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::Dimension(format!("U is {}x{} but |X| = {n}", u.nrows(), u.ncols())));
    }
    if u.field() != phi.field() {
        return Err(Error::FieldMismatch(u.field().p(), phi.field().p()));
    }
    if !u.is_nonsingular() {
        return Err(Error::Singular);
    }
    let x = phi.x().to_vec();
    let u = u.clone().with_row_labels(x.clone())?.with_col_labels(x.clone())?;
    let a1 = u.mul(phi.a1())?.with_row_labels(x.clone())?;
    let lambda = phi.lambda().transform(&u.transpose())?;
    FrameTemplate::new(
        phi.gamma().clone(),
        phi.c().to_vec(),
        x,
        phi.y0().to_vec(),
        phi.y1().to_vec(),
        a1,
        phi.delta().clone(),
        lambda,
    )
}

/// Column indices of the leading entries of an RREF basis.
pub(crate) fn pivot_columns(s: &Subspace) -> Vec<usize> {
    let b = s.basis();
    (0..b.nrows()).map(|i| b.row(i).iter().position(|&v| v != 0).expect("basis rows are nonzero")).collect()
}

/// Projects Δ along `rowspace(A1[X1])` onto the span of the coordinates that are not
/// pivots of its RREF basis.
pub fn project_delta(phi: &FrameTemplate, x1: &[String]) -> Result<FrameTemplate> {
    check_subset(x1, phi.x(), "X")?;
    let w = Subspace::row_space(&phi.a1().select_rows(x1)?);
    let pivots = pivot_columns(&w);
    let cols = phi.columns();
    let free: Vec<&String> = cols.iter().enumerate().filter(|(j, _)| !pivots.contains(j)).map(|(_, l)| l).collect();
    let v = Subspace::coordinate(phi.field(), cols.clone(), &free)?;
    project_delta_onto(phi, x1, &v)
}

/// Projects Δ along `W = rowspace(A1[X1])` onto the complement `v`; needs `Λ[X1] = 0`.
pub fn project_delta_onto(phi: &FrameTemplate, x1: &[String], v: &Subspace) -> Result<FrameTemplate> {
    check_subset(x1, phi.x(), "X")?;
    if phi.lambda().restrict(x1)?.dim() != 0 {
        return Err(Error::Precondition("Λ[X1] is not zero".into()));
    }
    let w = Subspace::row_space(&phi.a1().select_rows(x1)?);
    let images = phi
        .delta()
        .basis_vectors()
        .iter()
        .map(|d| complementary_projection(&w, v, d))
        .collect::<Result<Vec<_>>>()?;
    if w.dim() + v.dim() != phi.columns().len() {
        return Err(Error::NotComplementary);
    }
    let delta = Subspace::from_vectors(phi.field(), phi.columns(), &images)?;
    FrameTemplate::new(
        phi.gamma().clone(),
        phi.c().to_vec(),
        phi.x().to_vec(),
        phi.y0().to_vec(),
        phi.y1().to_vec(),
        phi.a1().clone(),
        delta,
        phi.lambda().clone(),
    )
}

/// `count` labels `prefix#k` that do not occur in the template, with consecutive `k`.
pub(crate) fn fresh_labels(phi: &FrameTemplate, prefix: &str, count: usize) -> Vec<String> {
    let tag = format!("{prefix}#");
    let start = phi
        .labels()
        .iter()
        .filter_map(|l| l.strip_prefix(&tag).and_then(|k| k.parse::<usize>().ok()))
        .max()
        .unwrap_or(0);
    (1..=count).map(|k| format!("{tag}{}", start + k)).collect()
}

/// Replaces Δ by `F^Ĉ × 0` on a fresh block `Ĉ`, installing the RREF basis of Δ and
/// `P = I` in new rows `X̂`. Returns the template and the blocks `(X̂, Ĉ)`.
pub fn normalize_delta_blocks(phi: &FrameTemplate) -> Result<(FrameTemplate, Vec<String>, Vec<String>)> {
    let d = phi.delta().dim();
    if d == 0 {
        return Ok((phi.clone(), vec![], vec![]));
    }
    let f = phi.field();
    let xhat = fresh_labels(phi, "x", d);
    let chat = fresh_labels(phi, "c", d);
    let old_cols = phi.columns();
    let x: Vec<String> = phi.x().iter().chain(&xhat).cloned().collect();
    let c: Vec<String> = phi.c().iter().chain(&chat).cloned().collect();
    let cols: Vec<String> = old_cols.iter().chain(&chat).cloned().collect();
    let mut a1 = Mat::zeros(f, x.clone(), cols.clone());
    let old = phi.a1();
    for i in 0..old.nrows() {
        for j in 0..old.ncols() {
            a1.set(i, j, old.get(i, j));
        }
    }
    let basis = phi.delta().basis();
    let base = old.nrows();
    for i in 0..d {
        for j in 0..old_cols.len() {
            a1.set(base + i, j, basis.get(i, j));
        }
        a1.set(base + i, old_cols.len() + i, 1);
    }
    let delta = Subspace::coordinate(f, cols, &chat)?;
    let lambda = phi.lambda().extend_by_zero(x.clone())?;
    let out = FrameTemplate::new(phi.gamma().clone(), c, x, phi.y0().to_vec(), phi.y1().to_vec(), a1, delta, lambda)?;
    Ok((out, xhat, chat))
}

pub fn normalize_delta(phi: &FrameTemplate) -> Result<FrameTemplate> {
    Ok(normalize_delta_blocks(phi)?.0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{PrimeField, SubgroupGamma};

    fn labels(ls: &[&str]) -> Vec<String> {
        ls.iter().map(|s| s.to_string()).collect()
    }

    fn toy() -> FrameTemplate {
        let f = PrimeField::new(2).unwrap();
        let x = labels(&["x1", "x2"]);
        let cols = labels(&["y", "c"]);
        FrameTemplate::new(
            SubgroupGamma::trivial(f),
            labels(&["c"]),
            x.clone(),
            vec![],
            labels(&["y"]),
            Mat::from_rows(f, x.clone(), cols.clone(), &[vec![1, 1], vec![1, 0]]).unwrap(),
            Subspace::from_vectors(f, cols, &[vec![1, 0]]).unwrap(),
            Subspace::from_vectors(f, x, &[vec![1, 1]]).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn contract_preconditions() {
        let phi = toy();
        assert_eq!(contract_template(&phi, &[], &[]).unwrap(), phi);
        assert!(contract_template(&phi, &labels(&["x1"]), &labels(&["c"])).is_ok());
        let f = phi.field();
        let bad = FrameTemplate::new(
            phi.gamma().clone(),
            labels(&["c"]),
            phi.x().to_vec(),
            vec![],
            labels(&["y"]),
            phi.a1().clone(),
            Subspace::from_vectors(f, phi.columns(), &[vec![0, 1]]).unwrap(),
            phi.lambda().clone(),
        )
        .unwrap();
        assert!(matches!(contract_template(&bad, &labels(&["x1"]), &labels(&["c"])), Err(Error::Precondition(_))));
        assert!(contract_template(&phi, &labels(&["x2"]), &labels(&["c"])).is_err());
    }

    #[test]
    fn unitary_identity_and_composition() {
        let phi = toy();
        let f = phi.field();
        let i = Mat::identity(f, labels(&["a", "b"]));
        assert_eq!(apply_unitary(&phi, &i).unwrap(), phi);
        let u1 = Mat::from_ints(f, &[vec![0, 1], vec![1, 0]]);
        let u2 = Mat::from_ints(f, &[vec![1, 1], vec![0, 1]]);
        let two = apply_unitary(&apply_unitary(&phi, &u1).unwrap(), &u2).unwrap();
        let one = apply_unitary(&phi, &u2.mul(&u1.with_row_labels(labels(&["1", "2"])).unwrap()).unwrap()).unwrap();
        assert_eq!(two, one);
        assert!(matches!(apply_unitary(&phi, &Mat::from_ints(f, &[vec![1, 1], vec![1, 1]])), Err(Error::Singular)));
    }

    #[test]
    fn projection_makes_delta_skew() {
        let phi = toy();
        let f = phi.field();
        let phi = FrameTemplate::new(
            phi.gamma().clone(),
            phi.c().to_vec(),
            phi.x().to_vec(),
            vec![],
            phi.y1().to_vec(),
            phi.a1().clone(),
            Subspace::from_vectors(f, phi.columns(), &[vec![1, 1]]).unwrap(),
            Subspace::from_vectors(f, phi.x().to_vec(), &[vec![0, 1]]).unwrap(),
        )
        .unwrap();
        assert_eq!(project_delta(&phi, &[]).unwrap(), phi);
        let out = project_delta(&phi, &labels(&["x1"])).unwrap();
        let w = Subspace::row_space(&phi.a1().select_rows(&labels(&["x1"])).unwrap());
        assert_eq!(out.delta().dim(), 0);
        assert!(out.delta().is_skew(&w).unwrap());
        assert!(project_delta(&phi, &labels(&["x2"])).is_err());
    }

    #[test]
    fn normalize_installs_fresh_block() {
        let f = PrimeField::new(2).unwrap();
        let y0 = labels(&["y1", "y2"]);
        let phi = FrameTemplate::new(
            SubgroupGamma::trivial(f),
            vec![],
            vec![],
            y0.clone(),
            vec![],
            Mat::zeros(f, vec![], y0.clone()),
            Subspace::from_vectors(f, y0, &[vec![1, 1]]).unwrap(),
            Subspace::zero(f, vec![]),
        )
        .unwrap();
        let (out, xhat, chat) = normalize_delta_blocks(&phi).unwrap();
        assert_eq!(xhat, labels(&["x#1"]));
        assert_eq!(chat, labels(&["c#1"]));
        assert_eq!(out.a1().row(0), &[1, 1, 1]);
        assert_eq!(out.delta().basis_vectors(), vec![vec![0, 0, 1]]);
        assert_eq!(out.lambda().dim(), 0);
        let (again, x2, _) = normalize_delta_blocks(&out).unwrap();
        assert_eq!(x2, labels(&["x#2"]));
        assert_eq!(again.x().len(), 2);
        let trivial = FrameTemplate::trivial(SubgroupGamma::trivial(f));
        assert_eq!(normalize_delta(&trivial).unwrap(), trivial);
    }
}
