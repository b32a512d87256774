//! Forward/inverse transforms between collocation values and Fourier
//! coefficients.
//!
//! Normalization: the forward transform divides by `N^d`, so `ĉ(0)` is the
//! spatial mean and `‖g‖²_{L²} = (2π)^d Σ_k w_k |ĉ(k)|²` with the Hermitian
//! weights `w_k` from [`crate::spectral::Grid::parseval_weight`]. The
//! inverse applies no scaling. FFT plans are cached per thread and per
//! transform length.

use std::cell::RefCell;
use std::collections::HashMap;

use ndarray::ArrayD;
use ndrustfft::{
    ndfft, ndfft_r2c, ndifft, ndifft_r2c, Complex, FftHandler, Normalization, R2cFftHandler,
};

struct Handlers {
    c2c: FftHandler<f64>,
    r2c: R2cFftHandler<f64>,
}

thread_local! {
    static CACHE: RefCell<HashMap<usize, Handlers>> = RefCell::new(HashMap::new());
}

fn with_handlers<T>(n: usize, f: impl FnOnce(&mut Handlers) -> T) -> T {
    CACHE.with(|cache| {
        let mut cache = cache.borrow_mut();
        let handlers = cache.entry(n).or_insert_with(|| Handlers {
            c2c: FftHandler::new(n).normalization(Normalization::None),
            r2c: R2cFftHandler::new(n).normalization(Normalization::None),
        });
        f(handlers)
    })
}

/// Physical nodes -> spectral coefficients (divides by `N^d`).
pub fn forward(phys: &ArrayD<f64>, n: usize) -> ArrayD<Complex<f64>> {
    let d = phys.ndim();
    let mut spec_shape: Vec<usize> = phys.shape().to_vec();
    spec_shape[d - 1] = n / 2 + 1;
    let mut out = ArrayD::<Complex<f64>>::zeros(spec_shape.clone());
    with_handlers(n, |h| {
        ndfft_r2c(phys, &mut out, &mut h.r2c, d - 1);
        if d > 1 {
            let mut scratch = ArrayD::<Complex<f64>>::zeros(spec_shape.clone());
            for axis in (0..d - 1).rev() {
                ndfft(&out, &mut scratch, &mut h.c2c, axis);
                std::mem::swap(&mut out, &mut scratch);
            }
        }
    });
    let scale = 1.0 / (n as f64).powi(d as i32);
    out.mapv_inplace(|c| c * scale);
    out
}

/// Spectral coefficients -> physical nodes (no scaling; see module docs).
pub fn inverse(spec: &ArrayD<Complex<f64>>, n: usize) -> ArrayD<f64> {
    let d = spec.ndim();
    let mut phys_shape: Vec<usize> = spec.shape().to_vec();
    phys_shape[d - 1] = n;
    let mut out = ArrayD::<f64>::zeros(phys_shape);
    with_handlers(n, |h| {
        let mut work = spec.clone();
        if d > 1 {
            let mut scratch = ArrayD::<Complex<f64>>::zeros(work.raw_dim());
            for axis in 0..d - 1 {
                ndifft(&work, &mut scratch, &mut h.c2c, axis);
                std::mem::swap(&mut work, &mut scratch);
            }
        }
        ndifft_r2c(&work, &mut out, &mut h.r2c, d - 1);
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use ndarray::IxDyn;

    #[test]
    fn constant_field_has_only_mean_mode() {
        let n = 16;
        let phys = ArrayD::from_elem(IxDyn(&[n, n]), 3.25);
        let spec = forward(&phys, n);
        assert!((spec[[0, 0]].re - 3.25).abs() < 1e-13);
        assert!(spec[[0, 0]].im.abs() < 1e-13);
        let off: f64 = spec
            .indexed_iter()
            .filter(|(idx, _)| !(idx[0] == 0 && idx[1] == 0))
            .map(|(_, c)| c.norm())
            .fold(0.0, f64::max);
        assert!(off < 1e-14);
    }

    #[test]
    fn single_harmonic_coefficients() {
        // g(x) = sin(x_0): coefficients ∓i/2 at k_0 = ±1.
        let n = 16;
        let mut phys = ArrayD::zeros(IxDyn(&[n, n]));
        for (idx, v) in phys.indexed_iter_mut() {
            let x = idx[0] as f64 * 2.0 * std::f64::consts::PI / n as f64;
            *v = x.sin();
        }
        let spec = forward(&phys, n);
        let c_plus = spec[[1, 0]];
        let c_minus = spec[[n - 1, 0]];
        assert!((c_plus - Complex::new(0.0, -0.5)).norm() < 1e-13);
        assert!((c_minus - Complex::new(0.0, 0.5)).norm() < 1e-13);
    }

    #[test]
    fn roundtrip_3d() {
        let n = 8;
        let mut phys = ArrayD::zeros(IxDyn(&[n, n, n]));
        for (i, v) in phys.iter_mut().enumerate() {
            *v = ((i * 2654435761) % 1000) as f64 / 1000.0 - 0.5;
        }
        let back = inverse(&forward(&phys, n), n);
        let err = (&back - &phys).iter().map(|e| e.abs()).fold(0.0, f64::max);
        assert!(err < 1e-12);
    }
}
