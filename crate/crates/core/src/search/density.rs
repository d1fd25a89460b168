use serde::Serialize;

use crate::error::{Error, Result};
use crate::frames::is_frame_matrix_up_to_scaling;
use crate::gf::{Mat, SubgroupGamma};
use crate::matroid::RepresentedMatroid;

/// `ε(M*) ≤ 3 r(M*)` for the dual of a frame matroid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoframeReport {
    pub rank: usize,
    pub epsilon: usize,
    pub holds: bool,
    /// `M(frame)` has no coloops and no series pairs, i.e. its dual is simple.
    pub cosimple: bool,
}

pub fn coframe_density_check(frame: &Mat, gamma: &SubgroupGamma) -> Result<CoframeReport> {
    if is_frame_matrix_up_to_scaling(frame, gamma).is_none() {
        return Err(Error::Precondition("not a Γ-frame matrix".into()));
    }
    let dual = RepresentedMatroid::new(frame.clone()).dual();
    let (rank, epsilon) = (dual.rank(), dual.epsilon());
    Ok(CoframeReport { rank, epsilon, holds: epsilon <= 3 * rank, cosimple: dual.is_simple() })
}
