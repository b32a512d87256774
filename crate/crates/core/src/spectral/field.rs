//! Scalar/vector/tensor fields on the periodic box, in spectral or
//! collocation representation, plus the spectral calculus built on them.

use std::sync::Arc;

use ndarray::{ArrayD, IxDyn, Zip};
use ndrustfft::Complex;

use super::fft;
use super::grid::Grid;
use crate::error::{Error, Result};

pub type C64 = Complex<f64>;

/// Tensorial rank of a field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rank {
    Scalar,
    Vector,
    Tensor,
}

impl Rank {
    pub fn ncomp(self, d: usize) -> usize {
        match self {
            Rank::Scalar => 1,
            Rank::Vector => d,
            Rank::Tensor => d * d,
        }
    }
}

/// Fourier coefficients of a real field, half-spectrum storage.
///
/// Component order: scalars have one component; vectors are indexed by
/// direction; rank-2 tensors are row-major, `comp(i*d + j)` holding the
/// `(i, j)` entry (for gradients, `∂_j u_i`).
#[derive(Debug, Clone)]
pub struct SpectralField {
    grid: Arc<Grid>,
    rank: Rank,
    comps: Vec<ArrayD<C64>>,
}

/// Collocation values of a real field on the `N^d` grid.
#[derive(Debug, Clone)]
pub struct PhysicalField {
    grid: Arc<Grid>,
    rank: Rank,
    comps: Vec<ArrayD<f64>>,
}

impl SpectralField {
    pub fn zeros(grid: Arc<Grid>, rank: Rank) -> Self {
        let shape = IxDyn(&grid.spec_shape());
        let comps = (0..rank.ncomp(grid.dim()))
            .map(|_| ArrayD::zeros(shape.clone()))
            .collect();
        SpectralField { grid, rank, comps }
    }

    pub fn from_comps(grid: Arc<Grid>, rank: Rank, comps: Vec<ArrayD<C64>>) -> Result<Self> {
        if comps.len() != rank.ncomp(grid.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} components, got {}",
                rank.ncomp(grid.dim()),
                comps.len()
            )));
        }
        let shape = grid.spec_shape();
        for c in &comps {
            if c.shape() != shape.as_slice() {
                return Err(Error::ShapeMismatch(format!(
                    "component shape {:?} does not match grid {:?}",
                    c.shape(),
                    shape
                )));
            }
        }
        Ok(SpectralField { grid, rank, comps })
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn ncomp(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> &ArrayD<C64> {
        &self.comps[i]
    }

    pub fn comp_mut(&mut self, i: usize) -> &mut ArrayD<C64> {
        &mut self.comps[i]
    }

    /// Two distinct components borrowed mutably at once.
    pub fn comp_pair_mut(&mut self, a: usize, b: usize) -> (&mut ArrayD<C64>, &mut ArrayD<C64>) {
        assert!(a < b, "components must be distinct and ordered");
        let (lo, hi) = self.comps.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    }

    pub fn same_grid(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.grid, &other.grid) || *self.grid == *other.grid
    }

    /// Inverse transform to collocation values.
    pub fn to_physical(&self) -> PhysicalField {
        let comps = self
            .comps
            .iter()
            .map(|c| fft::inverse(c, self.grid.n()))
            .collect();
        PhysicalField {
            grid: self.grid.clone(),
            rank: self.rank,
            comps,
        }
    }

    /// Exact spectral derivative; raises the rank by one.
    ///
    /// For a vector `u` the result holds the Jacobian, `comp(i*d+j) = ∂_j u_i`.
    pub fn gradient(&self) -> Result<SpectralField> {
        let d = self.grid.dim();
        let out_rank = match self.rank {
            Rank::Scalar => Rank::Vector,
            Rank::Vector => Rank::Tensor,
            Rank::Tensor => {
                return Err(Error::InvalidParam(
                    "gradient of a rank-2 tensor is not supported".into(),
                ))
            }
        };
        let mut comps = Vec::with_capacity(out_rank.ncomp(d));
        for c in &self.comps {
            for axis in 0..d {
                comps.push(derivative(c, &self.grid, axis));
            }
        }
        Ok(SpectralField {
            grid: self.grid.clone(),
            rank: out_rank,
            comps,
        })
    }

    /// Contraction `∂_j f_{·j}`; lowers the rank by one.
    pub fn divergence(&self) -> Result<SpectralField> {
        let d = self.grid.dim();
        let out_rank = match self.rank {
            Rank::Vector => Rank::Scalar,
            Rank::Tensor => Rank::Vector,
            Rank::Scalar => {
                return Err(Error::InvalidParam("divergence of a scalar".into()))
            }
        };
        let mut comps = Vec::with_capacity(out_rank.ncomp(d));
        match self.rank {
            Rank::Vector => {
                let mut acc = derivative(&self.comps[0], &self.grid, 0);
                for j in 1..d {
                    acc += &derivative(&self.comps[j], &self.grid, j);
                }
                comps.push(acc);
            }
            Rank::Tensor => {
                for i in 0..d {
                    let mut acc = derivative(&self.comps[i * d], &self.grid, 0);
                    for j in 1..d {
                        acc += &derivative(&self.comps[i * d + j], &self.grid, j);
                    }
                    comps.push(acc);
                }
            }
            Rank::Scalar => unreachable!(),
        }
        Ok(SpectralField {
            grid: self.grid.clone(),
            rank: out_rank,
            comps,
        })
    }

    /// Orthogonal projection onto divergence-free fields,
    /// `P̂(k) = I − kkᵀ/|k|²`; the `k = 0` mode passes through.
    pub fn leray_project(&self) -> Result<SpectralField> {
        let mut out = self.clone();
        out.leray_project_mut()?;
        Ok(out)
    }

    pub fn leray_project_mut(&mut self) -> Result<()> {
        if self.rank != Rank::Vector {
            return Err(Error::InvalidParam("Leray projection needs a vector field".into()));
        }
        let d = self.grid.dim();
        let grid = self.grid.clone();
        let shape = grid.spec_shape();
        let mut idx = vec![0usize; d];
        loop {
            let mut k = [0.0f64; 3];
            let mut ksq = 0.0;
            for a in 0..d {
                k[a] = grid.wave_deriv(a, idx[a]);
                ksq += k[a] * k[a];
            }
            if ksq > 0.0 {
                let ix = IxDyn(&idx);
                let mut dot = C64::new(0.0, 0.0);
                for a in 0..d {
                    dot += self.comps[a][&ix] * k[a];
                }
                let f = dot / ksq;
                for a in 0..d {
                    let v = self.comps[a][&ix] - f * k[a];
                    self.comps[a][&ix] = v;
                }
            }
            if !advance(&mut idx, &shape) {
                break;
            }
        }
        Ok(())
    }

    /// Zero every mode with any `|k_j| > ⌊N/3⌋` (2/3 rule).
    pub fn dealias_mut(&mut self) {
        let mask = self.grid.dealias_mask().clone();
        for c in &mut self.comps {
            Zip::from(&mut *c).and(&mask).for_each(|v, &m| *v = *v * m);
        }
    }

    pub fn dealias(&self) -> SpectralField {
        let mut out = self.clone();
        out.dealias_mut();
        out
    }

    /// Set the mean mode `ĉ(0)` of every component to zero.
    pub fn zero_mean_mut(&mut self) {
        let d = self.grid.dim();
        let zero = IxDyn(&vec![0usize; d]);
        for c in &mut self.comps {
            c[&zero] = C64::new(0.0, 0.0);
        }
    }

    /// Restore `ĉ(−k) = conj ĉ(k)` exactly on the self-conjugate planes of
    /// the half-spectrum storage (`k_d = 0` and `k_d = N/2`), where FFT
    /// round-off can break it.
    pub fn enforce_hermitian_mut(&mut self) {
        let d = self.grid.dim();
        let n = self.grid.n();
        let planes = [0usize, n / 2];
        for c in &mut self.comps {
            for &plane in &planes {
                match d {
                    2 => {
                        for i in 0..=n / 2 {
                            let j = (n - i) % n;
                            if j < i {
                                continue;
                            }
                            if j == i {
                                let v = c[[i, plane]];
                                c[[i, plane]] = C64::new(v.re, 0.0);
                            } else {
                                let a = c[[i, plane]];
                                let b = c[[j, plane]];
                                let m = (a + b.conj()) * 0.5;
                                c[[i, plane]] = m;
                                c[[j, plane]] = m.conj();
                            }
                        }
                    }
                    3 => {
                        for i0 in 0..n {
                            for i1 in 0..n {
                                let j0 = (n - i0) % n;
                                let j1 = (n - i1) % n;
                                if (j0, j1) < (i0, i1) {
                                    continue;
                                }
                                if (j0, j1) == (i0, i1) {
                                    let v = c[[i0, i1, plane]];
                                    c[[i0, i1, plane]] = C64::new(v.re, 0.0);
                                } else {
                                    let a = c[[i0, i1, plane]];
                                    let b = c[[j0, j1, plane]];
                                    let m = (a + b.conj()) * 0.5;
                                    c[[i0, i1, plane]] = m;
                                    c[[j0, j1, plane]] = m.conj();
                                }
                            }
                        }
                    }
                    _ => unreachable!(),
                }
            }
        }
    }

    /// Squared `L²` norm over the box, by Parseval.
    pub fn l2_norm_sq(&self) -> f64 {
        let w = self.grid.parseval_weight();
        let mut sum = 0.0;
        for c in &self.comps {
            let mut s = 0.0;
            Zip::from(c).and(w).for_each(|v, &wt| s += wt * v.norm_sqr());
            sum += s;
        }
        sum * self.grid.volume()
    }

    pub fn l2_norm(&self) -> f64 {
        self.l2_norm_sq().sqrt()
    }

    /// Squared `H¹` seminorm `‖∇f‖²`, by Parseval.
    pub fn h1_seminorm_sq(&self) -> f64 {
        let w = self.grid.parseval_weight();
        let ksq = self.grid.ksq();
        let mut sum = 0.0;
        for c in &self.comps {
            let mut s = 0.0;
            Zip::from(c)
                .and(w)
                .and(ksq)
                .for_each(|v, &wt, &k2| s += wt * k2 * v.norm_sqr());
            sum += s;
        }
        sum * self.grid.volume()
    }

    /// Real `L²` inner product `(self, other)` over the box.
    pub fn inner(&self, other: &SpectralField) -> Result<f64> {
        if !self.same_grid(other) || self.rank != other.rank {
            return Err(Error::GridMismatch("inner product operands differ".into()));
        }
        let w = self.grid.parseval_weight();
        let mut sum = 0.0;
        for (a, b) in self.comps.iter().zip(&other.comps) {
            let mut s = 0.0;
            Zip::from(a)
                .and(b)
                .and(w)
                .for_each(|x, y, &wt| s += wt * (x.re * y.re + x.im * y.im));
            sum += s;
        }
        Ok(sum * self.grid.volume())
    }

    /// `self += a * other`.
    pub fn axpy(&mut self, a: f64, other: &SpectralField) {
        debug_assert!(self.same_grid(other) && self.rank == other.rank);
        for (c, o) in self.comps.iter_mut().zip(&other.comps) {
            Zip::from(c).and(o).for_each(|v, &u| *v += u * a);
        }
    }

    pub fn scale(&mut self, a: f64) {
        for c in &mut self.comps {
            c.mapv_inplace(|v| v * a);
        }
    }

    pub fn is_finite(&self) -> bool {
        self.comps
            .iter()
            .all(|c| c.iter().all(|v| v.re.is_finite() && v.im.is_finite()))
    }

    /// Largest coefficient magnitude (diagnostics).
    pub fn max_coeff(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .map(|v| v.norm())
            .fold(0.0, f64::max)
    }
}

impl PhysicalField {
    pub fn zeros(grid: Arc<Grid>, rank: Rank) -> Self {
        let shape = IxDyn(&grid.phys_shape());
        let comps = (0..rank.ncomp(grid.dim()))
            .map(|_| ArrayD::zeros(shape.clone()))
            .collect();
        PhysicalField { grid, rank, comps }
    }

    pub fn from_comps(grid: Arc<Grid>, rank: Rank, comps: Vec<ArrayD<f64>>) -> Result<Self> {
        if comps.len() != rank.ncomp(grid.dim()) {
            return Err(Error::ShapeMismatch(format!(
                "expected {} components, got {}",
                rank.ncomp(grid.dim()),
                comps.len()
            )));
        }
        let shape = grid.phys_shape();
        for c in &comps {
            if c.shape() != shape.as_slice() {
                return Err(Error::ShapeMismatch(format!(
                    "component shape {:?} does not match grid {:?}",
                    c.shape(),
                    shape
                )));
            }
        }
        Ok(PhysicalField { grid, rank, comps })
    }

    /// Fill from a function of the node coordinates (component, x).
    pub fn from_fn(grid: Arc<Grid>, rank: Rank, f: impl Fn(usize, &[f64]) -> f64) -> Self {
        let mut out = Self::zeros(grid.clone(), rank);
        let d = grid.dim();
        for (ci, c) in out.comps.iter_mut().enumerate() {
            for (idx, v) in c.indexed_iter_mut() {
                let mut x = [0.0f64; 3];
                for a in 0..d {
                    x[a] = grid.node(idx[a]);
                }
                *v = f(ci, &x[..d]);
            }
        }
        out
    }

    pub fn grid(&self) -> &Arc<Grid> {
        &self.grid
    }

    pub fn rank(&self) -> Rank {
        self.rank
    }

    pub fn ncomp(&self) -> usize {
        self.comps.len()
    }

    pub fn comp(&self, i: usize) -> &ArrayD<f64> {
        &self.comps[i]
    }

    pub fn comp_mut(&mut self, i: usize) -> &mut ArrayD<f64> {
        &mut self.comps[i]
    }

    /// Two distinct components borrowed mutably at once.
    pub fn comp_pair_mut(&mut self, a: usize, b: usize) -> (&mut ArrayD<f64>, &mut ArrayD<f64>) {
        assert!(a < b, "components must be distinct and ordered");
        let (lo, hi) = self.comps.split_at_mut(b);
        (&mut lo[a], &mut hi[0])
    }

    /// Forward transform to Fourier coefficients. Hermitian symmetry is
    /// enforced on the self-conjugate planes afterwards.
    pub fn to_spectral(&self) -> SpectralField {
        let comps = self
            .comps
            .iter()
            .map(|c| fft::forward(c, self.grid.n()))
            .collect();
        let mut out = SpectralField {
            grid: self.grid.clone(),
            rank: self.rank,
            comps,
        };
        out.enforce_hermitian_mut();
        out
    }

    pub fn max_abs(&self) -> f64 {
        self.comps
            .iter()
            .flat_map(|c| c.iter())
            .map(|v| v.abs())
            .fold(0.0, f64::max)
    }

    /// `L^p` norm by collocation quadrature (exact trapezoid on the
    /// periodic grid), treating multi-component fields pointwise through
    /// their Euclidean/Frobenius magnitude.
    pub fn lp_norm(&self, p: f64) -> f64 {
        let dv = self.grid.dx().powi(self.grid.dim() as i32);
        let nelem = self.comps[0].len();
        let mut sum = 0.0;
        for i in 0..nelem {
            let mut mag2 = 0.0;
            for c in &self.comps {
                let v = c.as_slice().expect("standard layout")[i];
                mag2 += v * v;
            }
            sum += mag2.sqrt().powf(p);
        }
        (sum * dv).powf(1.0 / p)
    }

    /// Squared `L²` norm by collocation quadrature.
    pub fn l2_norm_sq(&self) -> f64 {
        let dv = self.grid.dx().powi(self.grid.dim() as i32);
        let mut sum = 0.0;
        for c in &self.comps {
            for v in c.iter() {
                sum += v * v;
            }
        }
        sum * dv
    }

    pub fn mean(&self, comp: usize) -> f64 {
        let c = &self.comps[comp];
        c.sum() / c.len() as f64
    }
}

/// `∂_axis` in spectral space: multiply by `i k̃_axis` (Nyquist zeroed).
fn derivative(c: &ArrayD<C64>, grid: &Grid, axis: usize) -> ArrayD<C64> {
    let mut out = c.clone();
    let d = grid.dim();
    let shape = grid.spec_shape();
    // Scale whole hyperplanes: cheaper than per-element wavevector lookups.
    for i in 0..shape[axis] {
        let k = grid.wave_deriv(axis, i);
        let mut lane = out.index_axis_mut(ndarray::Axis(axis), i);
        lane.mapv_inplace(|v| C64::new(-v.im * k, v.re * k));
    }
    debug_assert_eq!(out.ndim(), d);
    out
}

/// Odometer-style multi-index increment; returns false after the last index.
pub(crate) fn advance(idx: &mut [usize], shape: &[usize]) -> bool {
    for a in (0..idx.len()).rev() {
        idx[a] += 1;
        if idx[a] < shape[a] {
            return true;
        }
        idx[a] = 0;
    }
    false
}
