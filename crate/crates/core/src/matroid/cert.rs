use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};

use super::{IsoMode, RepresentedMatroid};
use crate::error::{Error, Result};
use crate::gf::{projectively_equivalent, scale_columns, Subspace};

/// `(C, D, φ, scalings)` witnessing that `host / C \ D` is isomorphic to a pattern.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinorCertificate {
    pub contract: Vec<String>,
    pub delete: Vec<String>,
    /// Pattern label to host label.
    pub map: Vec<(String, String)>,
    /// Column scalings in pattern order, present when the minor is witnessed as represented.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalings: Option<Vec<u8>>,
}

/// A bijection between ground sets, with a diagonal witness in represented mode.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IsoCertificate {
    pub bijection: Vec<(String, String)>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scalings: Option<Vec<u8>>,
}

/// Compares `pattern` with `image` under the bijection `pairs` (pattern label → image label).
fn compare(
    pattern: &RepresentedMatroid,
    image: &RepresentedMatroid,
    pairs: &[(String, String)],
    scalings: Option<&[u8]>,
    mode: IsoMode,
) -> Result<bool> {
    if pairs.len() != pattern.len() || image.len() != pattern.len() {
        return Ok(false);
    }
    let to: HashMap<&str, &str> = pairs.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
    let targets: HashSet<&str> = to.values().copied().collect();
    if to.len() != pairs.len() || targets.len() != pairs.len() {
        return Ok(false);
    }
    let order: Vec<&str> = pattern
        .ground()
        .iter()
        .map(|l| to.get(l.as_str()).copied().ok_or_else(|| Error::UnknownLabel(l.clone())))
        .collect::<Result<_>>()?;
    let pushed = image.rep().select_cols(&order)?.with_col_labels(pattern.ground().to_vec())?;
    match mode {
        IsoMode::Represented => {
            if pattern.field() != image.field() {
                return Ok(false);
            }
            match scalings {
                Some(d) => {
                    if d.len() != pattern.len() || d.contains(&0) {
                        return Ok(false);
                    }
                    Ok(Subspace::row_space(pattern.rep()) == Subspace::row_space(&scale_columns(&pushed, d)))
                }
                None => Ok(projectively_equivalent(pattern.rep(), &pushed)?.is_some()),
            }
        }
        IsoMode::Abstract => {
            let n = pattern.len();
            if n > 24 {
                return Err(Error::TooLarge { size: n, cap: 24 });
            }
            if pattern.rank() != image.rank() {
                return Ok(false);
            }
            let (oa, ob) = (pattern.oracle(), RepresentedMatroid::new(pushed).oracle());
            Ok((0u32..1 << n).all(|s| {
                let x: Vec<usize> = (0..n).filter(|i| s >> i & 1 == 1).collect();
                oa.rank(&x) == ob.rank(&x)
            }))
        }
    }
}

impl IsoCertificate {
    /// Checks the certificate for an isomorphism from `a` to `b`.
    pub fn verify(&self, a: &RepresentedMatroid, b: &RepresentedMatroid, mode: IsoMode) -> Result<bool> {
        compare(a, b, &self.bijection, self.scalings.as_deref(), mode)
    }
}

impl MinorCertificate {
    /// Applies the certificate to `host` and returns the minor `host / C \ D`.
    pub fn apply(&self, host: &RepresentedMatroid) -> Result<RepresentedMatroid> {
        let c: HashSet<&String> = self.contract.iter().collect();
        if self.delete.iter().any(|d| c.contains(d)) {
            return Err(Error::Precondition("contract and delete sets overlap".into()));
        }
        host.minor(&self.contract, &self.delete)
    }

    /// Replays the certificate and checks the result against `pattern`.
    pub fn verify(&self, host: &RepresentedMatroid, pattern: &RepresentedMatroid, mode: IsoMode) -> Result<bool> {
        let minor = self.apply(host)?;
        let scal = if mode == IsoMode::Represented { self.scalings.as_deref() } else { None };
        compare(pattern, &minor, &self.map, scal, mode)
    }
}
