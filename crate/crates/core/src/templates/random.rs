use rand::seq::SliceRandom;
use rand::Rng;

use super::FrameTemplate;
use crate::error::Result;
use crate::gf::{numbered, Mat, PrimeField, SubgroupGamma, Subspace};

/// Bounds for [`random_template`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RandomTemplateSpec {
    pub p: u32,
    pub max_complexity: usize,
    pub max_delta_dim: usize,
    pub max_lambda_dim: usize,
}

fn random_subspace<R: Rng>(rng: &mut R, f: PrimeField, ambient: Vec<String>, max_dim: usize) -> Result<Subspace> {
    let n = ambient.len();
    let d = rng.gen_range(0..=max_dim.min(n));
    let vs: Vec<Vec<u8>> = (0..d).map(|_| (0..n).map(|_| rng.gen_range(0..f.p())).collect()).collect();
    Subspace::from_vectors(f, ambient, &vs)
}

/// A template with uniformly chosen Γ, block sizes, `A1` entries and spanning vectors
/// for Δ and Λ. The dimensions of Δ and Λ may fall below the drawn count.
pub fn random_template<R: Rng>(spec: &RandomTemplateSpec, rng: &mut R) -> Result<FrameTemplate> {
    let f = PrimeField::new(spec.p)?;
    let gamma = SubgroupGamma::all(f).choose(rng).expect("at least the trivial group").clone();
    let total = rng.gen_range(0..=spec.max_complexity);
    let mut sizes = [0usize; 4];
    for _ in 0..total {
        sizes[rng.gen_range(0..4)] += 1;
    }
    let [nx, ny0, ny1, nc] = sizes;
    let x = numbered("x", nx);
    let y0 = numbered("u", ny0);
    let y1 = numbered("v", ny1);
    let c = numbered("c", nc);
    let cols: Vec<String> = y0.iter().chain(&y1).chain(&c).cloned().collect();
    let entries: Vec<u8> = (0..nx * cols.len()).map(|_| rng.gen_range(0..f.p())).collect();
    let a1 = Mat::new(f, x.clone(), cols.clone(), entries)?;
    let delta = random_subspace(rng, f, cols, spec.max_delta_dim)?;
    let lambda = random_subspace(rng, f, x.clone(), spec.max_lambda_dim)?;
    FrameTemplate::new(gamma, c, x, y0, y1, a1, delta, lambda)
}
