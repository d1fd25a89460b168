use serde::{Deserialize, Serialize};

use super::FrameTemplate;
use crate::frames::extremal_f;
use crate::matroid::RepresentedMatroid;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DensityVerdict {
    pub rank: usize,
    pub epsilon: usize,
    pub bound: u64,
    pub holds: bool,
}

impl DensityVerdict {
    fn new(m: &RepresentedMatroid, bound: u64) -> Self {
        let epsilon = m.epsilon();
        Self { rank: m.rank(), epsilon, bound, holds: epsilon as u64 <= bound }
    }
}

/// `f_{p,g,t}(r)`, or the size of PG(r-1, p) when `r < t`.
fn frame_density(p: u64, g: u64, t: u64, r: u64) -> u64 {
    if r < t {
        (p.pow(r as u32) - 1) / (p - 1)
    } else {
        extremal_f(p, g, t, r).expect("r >= t and p >= 2")
    }
}

/// `ε(M) ≤ f_{p,|Γ|,t}(r) + p^{t+1}·c·(r + c)` with `t = dim Λ` and `c = c(Φ)`.
pub fn density_bound_primal(phi: &FrameTemplate, m: &RepresentedMatroid) -> DensityVerdict {
    let p = phi.field().p() as u64;
    let t = phi.lambda().dim() as u64;
    let c = phi.complexity() as u64;
    let r = m.rank() as u64;
    let bound = frame_density(p, phi.gamma().len() as u64, t, r) + p.pow(t as u32 + 1) * c * (r + c);
    DensityVerdict::new(m, bound)
}

/// `ε(M) ≤ p^c·(3r + 6c + 1)` for `M` whose dual conforms.
pub fn density_bound_dual(phi: &FrameTemplate, m: &RepresentedMatroid) -> DensityVerdict {
    let p = phi.field().p() as u64;
    let c = phi.complexity() as u64;
    let r = m.rank() as u64;
    DensityVerdict::new(m, p.pow(c as u32) * (3 * r + 6 * c + 1))
}

/// `ε(M) ≤ 3r(M)` for `M` whose dual is a frame matroid.
pub fn coframe_bound_holds(m: &RepresentedMatroid) -> DensityVerdict {
    DensityVerdict::new(m, 3 * m.rank() as u64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::frames::{dowling, DowlingSpec, FrameClassParams, Variant};
    use crate::gf::{PrimeField, SubgroupGamma};

    #[test]
    fn trivial_template_bound_is_tight_on_k5() {
        let g = SubgroupGamma::trivial(PrimeField::new(2).unwrap());
        let m = dowling(&DowlingSpec { params: FrameClassParams::new(g.clone(), 0), n: 4, variant: Variant::Plain }).unwrap();
        let v = density_bound_primal(&FrameTemplate::trivial(g.clone()), &m);
        assert_eq!((v.bound, v.epsilon, v.holds), (10, 10, true));
        let d = density_bound_dual(&FrameTemplate::trivial(g), &m);
        assert_eq!(d.bound, 3 * 4 + 1);
    }
}
