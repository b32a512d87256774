//! Deterministic random fields for property suites and experiments.

use std::sync::Arc;

use ndrustfft::Complex;
use rand_chacha::ChaCha12Rng;
use rand_core::{RngCore, SeedableRng};

use super::field::{Rank, SpectralField};
use super::grid::Grid;

/// Uniform draw in `[0, 1)` from the raw generator.
pub(crate) fn unit(rng: &mut ChaCha12Rng) -> f64 {
    (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64
}

/// Seeded, zero-mean, band-limited random field with all `|k_j| <= kmax`
/// and a `1/(1+|k|²)` falloff. Deterministic in the seed.
pub fn band_limited(grid: &Arc<Grid>, rank: Rank, kmax: usize, seed: u64) -> SpectralField {
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let mut field = SpectralField::zeros(grid.clone(), rank);
    let d = grid.dim();
    for ci in 0..field.ncomp() {
        let comp = field.comp_mut(ci);
        for (idx, v) in comp.indexed_iter_mut() {
            let mut inside = true;
            let mut ksq = 0.0;
            let mut zero = true;
            for a in 0..d {
                let k = grid.wave(a, idx[a]);
                inside &= k.abs() <= kmax as f64;
                ksq += k * k;
                zero &= k == 0.0;
            }
            if !inside || zero {
                continue;
            }
            let re = unit(&mut rng) - 0.5;
            let im = unit(&mut rng) - 0.5;
            let amp = 1.0 / (1.0 + ksq);
            *v = Complex::new(re * amp, im * amp);
        }
    }
    field.enforce_hermitian_mut();
    field
}

/// Divergence-free variant of [`band_limited`].
pub fn band_limited_solenoidal(
    grid: &Arc<Grid>,
    kmax: usize,
    seed: u64,
) -> SpectralField {
    let mut f = band_limited(grid, Rank::Vector, kmax, seed);
    f.leray_project_mut().expect("vector field");
    f.enforce_hermitian_mut();
    f
}
