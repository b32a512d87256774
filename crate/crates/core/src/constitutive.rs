//! Shear-dependent stress law `T(Du) = 2(ν0 + ν1 |Du|_F^{p-2}) Du`,
//! the strain-rate tensor, and the stress monotonicity gap used as a
//! structural oracle: `(T(A) − T(B)) : (A − B) ≥ 2 ν0 |A − B|_F²` for all
//! symmetric `A`, `B`.

use ndarray::{Array2, Zip};

use crate::error::{Error, Result};
use crate::spectral::{PhysicalField, Rank, SpectralField};

/// Parameters of the stress law.
///
/// `ν0` carries `length²/time`; `ν1` carries `time^{p-3} · length²`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StressParams {
    pub p: f64,
    pub nu0: f64,
    pub nu1: f64,
}

impl StressParams {
    pub fn new(p: f64, nu0: f64, nu1: f64) -> Result<Self> {
        if !(p >= 2.0) {
            return Err(Error::InvalidParam(format!("p must be >= 2, got {p}")));
        }
        if !(nu0 > 0.0) {
            return Err(Error::InvalidParam(format!("nu0 must be positive, got {nu0}")));
        }
        if !(nu1 >= 0.0) {
            return Err(Error::InvalidParam(format!("nu1 must be nonnegative, got {nu1}")));
        }
        Ok(StressParams { p, nu0, nu1 })
    }

    /// `|D|_F^{p-2}` via `exp((p−2) ln |D|)` with an exact-zero fast path;
    /// `p = 2` yields 1 for every magnitude including zero.
    pub fn power_factor(&self, mag: f64) -> f64 {
        if self.p == 2.0 {
            1.0
        } else if mag == 0.0 {
            0.0
        } else {
            ((self.p - 2.0) * mag.ln()).exp()
        }
    }
}

/// Symmetric part `½(g + gᵀ)` of a spectral velocity gradient.
pub fn strain_rate(grad: &SpectralField) -> Result<SpectralField> {
    if grad.rank() != Rank::Tensor {
        return Err(Error::InvalidParam("strain_rate needs a rank-2 field".into()));
    }
    let d = grad.grid().dim();
    let mut out = grad.clone();
    for i in 0..d {
        for j in 0..i {
            let (upper, lower) = out.comp_pair_mut(j * d + i, i * d + j);
            Zip::from(upper).and(lower).for_each(|a, b| {
                let s = (*a + *b) * 0.5;
                *a = s;
                *b = s;
            });
        }
    }
    Ok(out)
}

/// Pointwise strain rate on collocation nodes.
pub fn strain_rate_phys(grad: &PhysicalField) -> Result<PhysicalField> {
    if grad.rank() != Rank::Tensor {
        return Err(Error::InvalidParam("strain_rate needs a rank-2 field".into()));
    }
    let d = grad.grid().dim();
    let mut out = grad.clone();
    for i in 0..d {
        for j in 0..i {
            let (upper, lower) = out.comp_pair_mut(j * d + i, i * d + j);
            Zip::from(upper).and(lower).for_each(|a, b| {
                let s = (*a + *b) * 0.5;
                *a = s;
                *b = s;
            });
        }
    }
    Ok(out)
}

/// Frobenius magnitude per node of a rank-2 physical field.
pub fn frobenius(d_phys: &PhysicalField) -> Vec<f64> {
    let n = d_phys.comp(0).len();
    let mut mag = vec![0.0; n];
    for c in 0..d_phys.ncomp() {
        let s = d_phys.comp(c).as_slice().expect("standard layout");
        for (m, v) in mag.iter_mut().zip(s) {
            *m += v * v;
        }
    }
    for m in &mut mag {
        *m = m.sqrt();
    }
    mag
}

/// Full stress `T(D) = 2(ν0 + ν1 |D|_F^{p-2}) D` at the collocation nodes.
pub fn stress(d_phys: &PhysicalField, params: &StressParams) -> Result<PhysicalField> {
    if d_phys.rank() != Rank::Tensor {
        return Err(Error::InvalidParam("stress needs a rank-2 field".into()));
    }
    let mag = frobenius(d_phys);
    let mut out = d_phys.clone();
    for c in 0..out.ncomp() {
        let s = out.comp_mut(c).as_slice_mut().expect("standard layout");
        for (v, m) in s.iter_mut().zip(&mag) {
            *v *= 2.0 * (params.nu0 + params.nu1 * params.power_factor(*m));
        }
    }
    Ok(out)
}

/// Only the power-law part `2 ν1 |D|_F^{p-2} D`; the Newtonian `2 ν0 D`
/// contribution is treated implicitly by the time stepper.
pub fn stress_power_law(d_phys: &PhysicalField, params: &StressParams) -> PhysicalField {
    let mag = frobenius(d_phys);
    let mut out = d_phys.clone();
    for c in 0..out.ncomp() {
        let s = out.comp_mut(c).as_slice_mut().expect("standard layout");
        for (v, m) in s.iter_mut().zip(&mag) {
            *v *= 2.0 * params.nu1 * params.power_factor(*m);
        }
    }
    out
}

/// Stress of a single symmetric matrix.
pub fn stress_matrix(a: &Array2<f64>, params: &StressParams) -> Array2<f64> {
    let mag = a.iter().map(|v| v * v).sum::<f64>().sqrt();
    let factor = 2.0 * (params.nu0 + params.nu1 * params.power_factor(mag));
    a.mapv(|v| v * factor)
}

/// `(T(A) − T(B)) : (A − B) − 2 ν0 |A − B|_F²` for symmetric matrices;
/// nonnegative up to round-off for every admissible parameter set.
pub fn monotonicity_gap(a: &Array2<f64>, b: &Array2<f64>, params: &StressParams) -> Result<f64> {
    if a.shape() != b.shape() || a.nrows() != a.ncols() {
        return Err(Error::ShapeMismatch(
            "monotonicity_gap needs square matrices of equal size".into(),
        ));
    }
    let ta = stress_matrix(a, params);
    let tb = stress_matrix(b, params);
    let mut contraction = 0.0;
    let mut diff_sq = 0.0;
    Zip::from(&ta).and(&tb).and(a).and(b).for_each(|&x, &y, &u, &v| {
        let e = u - v;
        contraction += (x - y) * e;
        diff_sq += e * e;
    });
    Ok(contraction - 2.0 * params.nu0 * diff_sq)
}
