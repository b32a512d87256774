//! Periodic-box grid and wavevector bookkeeping.
//!
//! The domain is fixed to `[0, 2π]^d`, `d ∈ {2, 3}`, with `N` collocation
//! nodes per direction. Spectral coefficients are stored in real-to-complex
//! layout: the last axis holds wavenumbers `0..=N/2`, all other axes the
//! usual FFT order `0, 1, .., N/2, -N/2+1, .., -1`. With box length `2π`
//! the wavevectors are integers and the smallest Stokes eigenvalue is 1.

use std::f64::consts::PI;

use ndarray::{ArrayD, IxDyn};

use crate::error::{Error, Result};

/// Periodic box `[0, 2π]^d` sampled with `N` nodes per direction.
#[derive(Debug)]
pub struct Grid {
    d: usize,
    n: usize,
    /// Wavenumber along a full axis, by storage index.
    k_full: Vec<f64>,
    /// Wavenumber along the half (last) axis, by storage index.
    k_half: Vec<f64>,
    /// Same as `k_full`/`k_half` but with the Nyquist mode set to zero;
    /// used for every differential operator so that odd derivatives of
    /// real fields stay real.
    k_full_deriv: Vec<f64>,
    k_half_deriv: Vec<f64>,
    /// `|k|²` per stored mode (derivative convention).
    ksq: ArrayD<f64>,
    /// 1.0 on modes kept by the 2/3 rule, 0.0 elsewhere.
    dealias_mask: ArrayD<f64>,
    /// Parseval weight per stored mode: 2 except on the `k_d = 0` and
    /// `k_d = N/2` planes of the half axis, which represent themselves.
    parseval_weight: ArrayD<f64>,
}

impl PartialEq for Grid {
    fn eq(&self, other: &Self) -> bool {
        self.d == other.d && self.n == other.n
    }
}
impl Eq for Grid {}

impl Grid {
    pub fn new(d: usize, n: usize) -> Result<Self> {
        if !(d == 2 || d == 3) {
            return Err(Error::InvalidParam(format!("dimension must be 2 or 3, got {d}")));
        }
        if n < 8 || n % 2 != 0 {
            return Err(Error::InvalidParam(format!("N must be even and >= 8, got {n}")));
        }
        let nyq = n / 2;
        let k_full: Vec<f64> = (0..n)
            .map(|i| if i <= nyq { i as f64 } else { i as f64 - n as f64 })
            .collect();
        let k_half: Vec<f64> = (0..=nyq).map(|i| i as f64).collect();
        let mut k_full_deriv = k_full.clone();
        k_full_deriv[nyq] = 0.0;
        let mut k_half_deriv = k_half.clone();
        k_half_deriv[nyq] = 0.0;

        let mut grid = Grid {
            d,
            n,
            k_full,
            k_half,
            k_full_deriv,
            k_half_deriv,
            ksq: ArrayD::zeros(IxDyn(&[0])),
            dealias_mask: ArrayD::zeros(IxDyn(&[0])),
            parseval_weight: ArrayD::zeros(IxDyn(&[0])),
        };

        let shape = grid.spec_shape();
        let cutoff = grid.dealias_cutoff() as f64;
        let mut ksq = ArrayD::zeros(IxDyn(&shape));
        let mut mask = ArrayD::zeros(IxDyn(&shape));
        let mut weight = ArrayD::zeros(IxDyn(&shape));
        for (idx, v) in ksq.indexed_iter_mut() {
            let mut s = 0.0;
            for a in 0..d {
                let k = grid.wave_deriv(a, idx[a]);
                s += k * k;
            }
            *v = s;
        }
        for (idx, v) in mask.indexed_iter_mut() {
            let keep = (0..d).all(|a| grid.wave(a, idx[a]).abs() <= cutoff);
            *v = if keep { 1.0 } else { 0.0 };
        }
        for (idx, v) in weight.indexed_iter_mut() {
            let j = idx[d - 1];
            *v = if j == 0 || j == nyq { 1.0 } else { 2.0 };
        }
        grid.ksq = ksq;
        grid.dealias_mask = mask;
        grid.parseval_weight = weight;
        Ok(grid)
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Node spacing `2π/N`.
    pub fn dx(&self) -> f64 {
        2.0 * PI / self.n as f64
    }

    /// Box volume `(2π)^d`.
    pub fn volume(&self) -> f64 {
        (2.0 * PI).powi(self.d as i32)
    }

    /// Smallest Stokes eigenvalue on the `[0, 2π]^d` box.
    pub fn lambda1(&self) -> f64 {
        1.0
    }

    /// 2/3-rule cutoff `⌊N/3⌋`.
    pub fn dealias_cutoff(&self) -> usize {
        self.n / 3
    }

    pub fn phys_shape(&self) -> Vec<usize> {
        vec![self.n; self.d]
    }

    pub fn spec_shape(&self) -> Vec<usize> {
        let mut s = vec![self.n; self.d];
        s[self.d - 1] = self.n / 2 + 1;
        s
    }

    /// Wavenumber component along `axis` at storage index `idx`.
    pub fn wave(&self, axis: usize, idx: usize) -> f64 {
        if axis == self.d - 1 {
            self.k_half[idx]
        } else {
            self.k_full[idx]
        }
    }

    /// Wavenumber for differential operators (Nyquist mode zeroed).
    pub fn wave_deriv(&self, axis: usize, idx: usize) -> f64 {
        if axis == self.d - 1 {
            self.k_half_deriv[idx]
        } else {
            self.k_full_deriv[idx]
        }
    }

    /// `|k|²` table (derivative convention), in spectral storage layout.
    pub fn ksq(&self) -> &ArrayD<f64> {
        &self.ksq
    }

    pub fn dealias_mask(&self) -> &ArrayD<f64> {
        &self.dealias_mask
    }

    pub fn parseval_weight(&self) -> &ArrayD<f64> {
        &self.parseval_weight
    }

    /// Physical coordinate of node `i` along any axis.
    pub fn node(&self, i: usize) -> f64 {
        i as f64 * self.dx()
    }
}
