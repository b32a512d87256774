//! Body-force construction: a deterministic solenoidal 2D force normalized
//! to a target Grashof number `G = ‖f‖ / (ν0² λ1^{3/4})`, its lift to a 3D
//! force plane by plane, and the `ν1` calibration
//! `ν1 = ½ (C_s δ)² ν0^{3−p}` with `δ = 2π/N`.

use std::f64::consts::PI;
use std::sync::Arc;

use ndarray::IxDyn;
use rand_chacha::ChaCha12Rng;
use rand_core::SeedableRng;

use crate::error::{Error, Result};
use crate::spectral::{sampling, Grid, Rank, SpectralField, C64};

/// How the body force is produced. The force is always time-independent,
/// divergence-free, zero-mean and real-valued.
#[derive(Debug, Clone, PartialEq)]
pub enum ForceKind {
    /// Seeded random phases on the wavenumber shell `kmin <= |k| <= kmax`,
    /// built from a streamfunction so the result is exactly solenoidal.
    Builtin2d { seed: u64, shell: (usize, usize) },
    /// 3D force lifted from the 2D pattern via `g = ∇×f_2D`.
    Lifted3d { seed: u64, shell: (usize, usize) },
    /// Externally supplied spectral coefficients (field-file layout).
    File { path: std::path::PathBuf },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ForceSpec {
    pub kind: ForceKind,
    pub g_target: f64,
}

/// Grashof number `G = ‖f‖ / (ν0² λ1^{3/4})`.
pub fn grashof(f_norm: f64, nu0: f64, lambda1: f64) -> f64 {
    f_norm / (nu0 * nu0 * lambda1.powf(0.75))
}

/// Force norm that realizes a target Grashof number at given `ν0`.
pub fn force_norm_for(g_target: f64, nu0: f64, lambda1: f64) -> f64 {
    g_target * nu0 * nu0 * lambda1.powf(0.75)
}

/// `ν0` that realizes a target Grashof number at given force norm; this is
/// the 3D convention, where the force is kept and the viscosity adjusted.
pub fn nu0_for_grashof(f_norm: f64, g_target: f64, lambda1: f64) -> f64 {
    (f_norm / (g_target * lambda1.powf(0.75))).sqrt()
}

/// Power-law coefficient from the grid filter width:
/// `ν1 = ½ (C_s 2π/N)² ν0^{3−p}`.
pub fn nu1_of(cs: f64, n: usize, nu0: f64, p: f64) -> f64 {
    let delta = 2.0 * PI / n as f64;
    0.5 * (cs * delta) * (cs * delta) * nu0.powf(3.0 - p)
}

/// Deterministic 2D solenoidal force with `‖f‖` hitting the Grashof target
/// exactly (renormalized after construction).
pub fn build_force_2d(
    grid: &Arc<Grid>,
    seed: u64,
    shell: (usize, usize),
    g_target: f64,
    nu0: f64,
) -> Result<SpectralField> {
    if grid.dim() != 2 {
        return Err(Error::InvalidParam("build_force_2d needs a 2D grid".into()));
    }
    if shell.0 > shell.1 || shell.1 > grid.n() / 2 {
        return Err(Error::InvalidParam(format!(
            "empty or out-of-range shell {shell:?} for N = {}",
            grid.n()
        )));
    }
    let mut f = SpectralField::zeros(grid.clone(), Rank::Vector);
    if g_target == 0.0 {
        return Ok(f);
    }
    let mut rng = ChaCha12Rng::seed_from_u64(seed);
    let (kmin, kmax) = (shell.0 as f64, shell.1 as f64);
    let shape = grid.spec_shape();
    let mut hit = 0usize;
    for i0 in 0..shape[0] {
        for i1 in 0..shape[1] {
            let k0 = grid.wave(0, i0);
            let k1 = grid.wave(1, i1);
            let mag = (k0 * k0 + k1 * k1).sqrt();
            if mag < kmin || mag > kmax {
                continue;
            }
            let theta = 2.0 * PI * sampling::unit(&mut rng);
            let psi = C64::new(theta.cos(), theta.sin());
            // f = (d/dx2 psi, -d/dx1 psi): divergence-free by construction.
            f.comp_mut(0)[[i0, i1]] = C64::new(0.0, k1) * psi;
            f.comp_mut(1)[[i0, i1]] = C64::new(0.0, -k0) * psi;
            hit += 1;
        }
    }
    if hit == 0 {
        return Err(Error::InvalidParam(format!("shell {shell:?} contains no modes")));
    }
    f.enforce_hermitian_mut();
    f.zero_mean_mut();
    let target = force_norm_for(g_target, nu0, grid.lambda1());
    let cur = f.l2_norm();
    f.scale(target / cur);
    Ok(f)
}

/// Outcome details of the 3D lift.
#[derive(Debug, Clone, Default)]
pub struct LiftReport {
    /// Stored modes where two coefficient families both produced a nonzero
    /// value; the earlier family wins.
    pub collisions: usize,
    /// `‖∇·f‖ / ‖f‖` after construction.
    pub divergence_rel: f64,
}

/// Lift a 2D force to 3D: with `g = ∇×f_2D`, populate the three
/// coordinate planes of wavevector space so that the force restricted to
/// each plane mirrors the 2D pattern. Families are applied in a fixed
/// order and collisions are counted (they only occur where both values
/// vanish). The third-component family on the `(0, k2, k3)` plane uses
/// `ĝ(k2, k3)`, mirroring the other planes; `verbatim_f3` switches to the
/// `ĝ(0, k2)` variant.
pub fn lift_force_3d(
    f2d: &SpectralField,
    grid3: &Arc<Grid>,
    verbatim_f3: bool,
) -> Result<(SpectralField, LiftReport)> {
    if f2d.grid().dim() != 2 || f2d.rank() != Rank::Vector {
        return Err(Error::InvalidParam("lift_force_3d needs a 2D vector force".into()));
    }
    if grid3.dim() != 3 {
        return Err(Error::InvalidParam("lift_force_3d needs a 3D target grid".into()));
    }
    let g2 = f2d.grid().clone();
    if grid3.n() < g2.n() {
        return Err(Error::InvalidParam(
            "3D grid must resolve the 2D force modes".into(),
        ));
    }

    // g = curl of the 2D force, as a closure over integer wavevectors with
    // Hermitian closure for negative second components.
    let n2 = g2.n() as i64;
    let curl = {
        let mut c = SpectralField::zeros(g2.clone(), Rank::Scalar);
        let shape = g2.spec_shape();
        for i0 in 0..shape[0] {
            for i1 in 0..shape[1] {
                let k0 = g2.wave_deriv(0, i0);
                let k1 = g2.wave_deriv(1, i1);
                let f0 = f2d.comp(0)[[i0, i1]];
                let f1 = f2d.comp(1)[[i0, i1]];
                c.comp_mut(0)[[i0, i1]] = C64::new(0.0, k0) * f1 - C64::new(0.0, k1) * f0;
            }
        }
        c
    };
    let g_at = |a: i64, b: i64| -> C64 {
        if a.abs() >= n2 / 2 || b.abs() >= n2 / 2 {
            return C64::new(0.0, 0.0);
        }
        if b >= 0 {
            curl.comp(0)[[a.rem_euclid(n2) as usize, b as usize]]
        } else {
            curl.comp(0)[[(-a).rem_euclid(n2) as usize, (-b) as usize]].conj()
        }
    };

    let n3 = grid3.n();
    let half = n3 / 2;
    let mut f = SpectralField::zeros(grid3.clone(), Rank::Vector);
    let mut collisions = 0usize;
    let mut write = |f: &mut SpectralField, comp: usize, idx: [usize; 3], val: C64| {
        if val.norm_sqr() == 0.0 {
            return;
        }
        let ix = IxDyn(&idx);
        let cur = f.comp(comp)[&ix];
        if cur.norm_sqr() != 0.0 {
            collisions += 1;
            return;
        }
        f.comp_mut(comp)[&ix] = val;
    };

    let kof = |i: usize| -> i64 {
        if i <= half {
            i as i64
        } else {
            i as i64 - n3 as i64
        }
    };

    // Plane (k1, 0, k3): f1 and f3 families.
    for i0 in 0..n3 {
        for i2 in 0..=half {
            let k1 = kof(i0);
            let k3 = i2 as i64;
            let den = (k1 * k1 + k3 * k3) as f64;
            if den == 0.0 {
                continue;
            }
            let g = g_at(k1, k3);
            let ik3 = C64::new(0.0, k3 as f64);
            let ik1 = C64::new(0.0, k1 as f64);
            write(&mut f, 0, [i0, 0, i2], ik3 * g / den);
            write(&mut f, 2, [i0, 0, i2], -ik1 * g / den);
        }
    }
    // Plane (k1, k2, 0): f1 and f2 families.
    for i0 in 0..n3 {
        for i1 in 0..n3 {
            let k1 = kof(i0);
            let k2 = kof(i1);
            let den = (k1 * k1 + k2 * k2) as f64;
            if den == 0.0 {
                continue;
            }
            let g = g_at(k1, k2);
            let ik1 = C64::new(0.0, k1 as f64);
            let ik2 = C64::new(0.0, k2 as f64);
            write(&mut f, 0, [i0, i1, 0], ik2 * g / den);
            write(&mut f, 1, [i0, i1, 0], -ik1 * g / den);
        }
    }
    // Plane (0, k2, k3): f2 and f3 families.
    for i1 in 0..n3 {
        for i2 in 0..=half {
            let k2 = kof(i1);
            let k3 = i2 as i64;
            let den = (k2 * k2 + k3 * k3) as f64;
            if den == 0.0 {
                continue;
            }
            let g = g_at(k2, k3);
            let g3 = if verbatim_f3 { g_at(0, k2) } else { g };
            let ik2 = C64::new(0.0, k2 as f64);
            let ik3 = C64::new(0.0, k3 as f64);
            write(&mut f, 1, [0, i1, i2], ik3 * g / den);
            write(&mut f, 2, [0, i1, i2], -ik2 * g3 / den);
        }
    }

    f.enforce_hermitian_mut();
    f.zero_mean_mut();
    let norm = f.l2_norm();
    let div_rel = if norm > 0.0 {
        f.divergence()?.l2_norm() / norm
    } else {
        0.0
    };
    Ok((
        f,
        LiftReport {
            collisions,
            divergence_rel: div_rel,
        },
    ))
}
