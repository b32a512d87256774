//! Periodic-box spectral substrate: grids, transforms, calculus,
//! Leray projection and dealiasing.
//!
//! All operations are pure functions of their inputs; reductions run in a
//! fixed order so results are bit-reproducible.

mod fft;
mod field;
mod grid;
pub mod sampling;

pub use field::{PhysicalField, Rank, SpectralField, C64};
pub use grid::Grid;

#[cfg(test)]
mod tests {
    use std::collections::HashMap;
    use std::sync::Arc;

    use super::*;
    use ndarray::{Dimension, IxDyn};
    use proptest::prelude::*;

    fn grid2(n: usize) -> Arc<Grid> {
        Arc::new(Grid::new(2, n).unwrap())
    }

    #[test]
    fn roundtrip_random_smooth_field() {
        let g = grid2(32);
        let f = sampling::band_limited(&g, Rank::Scalar, 9, 42);
        let phys = f.to_physical();
        let back = phys.to_spectral().to_physical();
        let scale = phys.max_abs();
        let mut err: f64 = 0.0;
        for (a, b) in back.comp(0).iter().zip(phys.comp(0).iter()) {
            err = err.max((a - b).abs());
        }
        assert!(err <= 1e-12 * scale, "roundtrip error {err:.3e} vs scale {scale:.3e}");
    }

    #[test]
    fn parseval_identity() {
        let g = grid2(32);
        for seed in 0..5 {
            let f = sampling::band_limited(&g, Rank::Vector, 10, seed);
            let spectral = f.l2_norm_sq();
            let quadrature = f.to_physical().l2_norm_sq();
            assert!(
                (spectral - quadrature).abs() <= 1e-12 * spectral,
                "Parseval mismatch: {spectral} vs {quadrature}"
            );
        }
    }

    #[test]
    fn gradient_of_single_harmonic() {
        let g = grid2(16);
        let f = PhysicalField::from_fn(g.clone(), Rank::Scalar, |_, x| x[0].sin());
        let grad = f.to_spectral().gradient().unwrap();
        let gp = grad.to_physical();
        let mut err: f64 = 0.0;
        for (idx, v) in gp.comp(0).indexed_iter() {
            err = err.max((v - g.node(idx[0]).cos()).abs());
        }
        for v in gp.comp(1).iter() {
            err = err.max(v.abs());
        }
        assert!(err < 1e-13);
    }

    #[test]
    fn gradient_of_constant_is_zero() {
        let g = grid2(16);
        let f = PhysicalField::from_fn(g, Rank::Scalar, |_, _| 4.2);
        let grad = f.to_spectral().gradient().unwrap();
        assert!(grad.max_coeff() < 1e-14);
    }

    #[test]
    fn gradient_zero_mean_field_keeps_zero_mode() {
        let g = grid2(16);
        let f = sampling::band_limited(&g, Rank::Scalar, 4, 3);
        let grad = f.gradient().unwrap();
        for c in 0..2 {
            assert_eq!(grad.comp(c)[[0, 0]], C64::new(0.0, 0.0));
        }
    }

    /// 4th-order centered differences as an independent derivative oracle.
    fn fd4(phys: &PhysicalField, comp: usize, axis: usize) -> ndarray::ArrayD<f64> {
        let g = phys.grid();
        let n = g.n();
        let h = g.dx();
        let c = phys.comp(comp);
        let mut out = ndarray::ArrayD::zeros(c.raw_dim());
        for (idx, v) in out.indexed_iter_mut() {
            let mut at = |off: i64| {
                let mut j = idx.slice().to_vec();
                j[axis] = ((idx[axis] as i64 + off).rem_euclid(n as i64)) as usize;
                c[IxDyn(&j)]
            };
            *v = (-at(2) + 8.0 * at(1) - 8.0 * at(-1) + at(-2)) / (12.0 * h);
        }
        out
    }

    #[test]
    fn gradient_matches_fd4_at_fourth_order() {
        // Same band-limited content on two resolutions: the FD4 error
        // must drop by ~16x per refinement while the spectral derivative
        // is exact, so the discrepancy is the FD truncation error,
        // bounded per mode by |c(k)| k^5 h^4 / 30.
        let mut errs = Vec::new();
        for &n in &[32usize, 64] {
            let g = grid2(n);
            let f = sampling::band_limited(&g, Rank::Scalar, 4, 11);
            let phys = f.to_physical();
            let grad = f.gradient().unwrap().to_physical();
            let oracle = fd4(&phys, 0, 0);
            let mut err: f64 = 0.0;
            for (a, b) in grad.comp(0).iter().zip(oracle.iter()) {
                err = err.max((a - b).abs());
            }
            let h4 = g.dx().powi(4);
            let bound: f64 = full_coeffs(&f)
                .iter()
                .map(|((k0, _), v)| v.norm() * (k0.abs() as f64).powi(5) * h4 / 30.0)
                .sum();
            assert!(err <= 1.5 * bound, "fd4 error {err:.3e} above bound {bound:.3e}");
            errs.push(err);
        }
        assert!(errs[0] / errs[1] > 12.0, "expected ~16x decay, got {errs:?}");
    }

    #[test]
    fn leray_annihilates_gradients() {
        let g = grid2(24);
        let phi = sampling::band_limited(&g, Rank::Scalar, 7, 5);
        let gradient = phi.gradient().unwrap();
        let projected = gradient.leray_project().unwrap();
        assert!(projected.max_coeff() < 1e-12 * gradient.max_coeff().max(1.0));
    }

    #[test]
    fn leray_fixes_divergence_free_fields() {
        let g = grid2(24);
        let f = sampling::band_limited_solenoidal(&g, 7, 6);
        let again = f.leray_project().unwrap();
        let mut rel: f64 = 0.0;
        let scale = f.max_coeff();
        for c in 0..2 {
            for (a, b) in again.comp(c).iter().zip(f.comp(c).iter()) {
                rel = rel.max((a - b).norm() / scale);
            }
        }
        assert!(rel < 1e-14);
    }

    #[test]
    fn leray_kills_divergence_of_random_fields() {
        let g = grid2(32);
        let f = sampling::band_limited(&g, Rank::Vector, 10, 7);
        let h1 = f.h1_seminorm_sq().sqrt();
        let div = f.leray_project().unwrap().divergence().unwrap();
        assert!(div.l2_norm() <= 1e-12 * h1);
    }

    #[test]
    fn leray_self_adjoint() {
        let g = grid2(16);
        let f = sampling::band_limited(&g, Rank::Vector, 5, 8);
        let h = sampling::band_limited(&g, Rank::Vector, 5, 9);
        let pf_h = f.leray_project().unwrap().inner(&h).unwrap();
        let f_ph = f.inner(&h.leray_project().unwrap()).unwrap();
        let scale = pf_h.abs().max(f_ph.abs()).max(1e-30);
        assert!((pf_h - f_ph).abs() <= 1e-12 * scale);
    }

    #[test]
    fn dealias_is_identity_below_cutoff() {
        let g = grid2(16); // cutoff 5
        let f = sampling::band_limited(&g, Rank::Scalar, 5, 10);
        let d = f.dealias();
        for (a, b) in d.comp(0).iter().zip(f.comp(0).iter()) {
            assert_eq!(a, b);
        }
    }

    #[test]
    fn dealias_kills_near_nyquist_mode() {
        let g = grid2(16);
        let mut f = SpectralField::zeros(g.clone(), Rank::Scalar);
        f.comp_mut(0)[[7, 0]] = C64::new(1.0, 0.0); // k = (N/2-1, 0)
        f.enforce_hermitian_mut();
        let d = f.dealias();
        assert!(d.max_coeff() == 0.0);
    }

    /// Reconstruct the full-spectrum coefficient table of a 2-D field.
    fn full_coeffs(f: &SpectralField) -> HashMap<(i64, i64), C64> {
        let g = f.grid();
        let n = g.n() as i64;
        let mut map = HashMap::new();
        for (idx, v) in f.comp(0).indexed_iter() {
            let k0 = g.wave(0, idx[0]) as i64;
            let k1 = idx[1] as i64;
            map.insert((k0, k1), *v);
            if k1 != 0 && k1 != n / 2 {
                map.insert((-k0, -k1), v.conj());
            }
        }
        map
    }

    #[test]
    fn dealiased_product_matches_direct_convolution() {
        let n = 16;
        let g = grid2(n);
        let cut = g.dealias_cutoff() as i64;
        let fa = sampling::band_limited(&g, Rank::Scalar, cut as usize, 20);
        let fb = sampling::band_limited(&g, Rank::Scalar, cut as usize, 21);

        // Pseudospectral product with the 2/3 rule.
        let pa = fa.to_physical();
        let pb = fb.to_physical();
        let mut prod = PhysicalField::zeros(g.clone(), Rank::Scalar);
        ndarray::Zip::from(prod.comp_mut(0))
            .and(pa.comp(0))
            .and(pb.comp(0))
            .for_each(|o, &x, &y| *o = x * y);
        let ps = prod.to_spectral().dealias();

        // Direct convolution oracle over the full spectrum.
        let ca = full_coeffs(&fa);
        let cb = full_coeffs(&fb);
        let mut max_err: f64 = 0.0;
        for (idx, v) in ps.comp(0).indexed_iter() {
            let k0 = g.wave(0, idx[0]) as i64;
            let k1 = idx[1] as i64;
            if k0.abs() > cut || k1 > cut {
                assert_eq!(*v, C64::new(0.0, 0.0));
                continue;
            }
            let mut conv = C64::new(0.0, 0.0);
            for ((a0, a1), &va) in &ca {
                if let Some(&vb) = cb.get(&(k0 - a0, k1 - a1)) {
                    conv += va * vb;
                }
            }
            max_err = max_err.max((v - conv).norm());
        }
        assert!(max_err <= 1e-12, "convolution mismatch {max_err:.3e}");
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(12))]

        #[test]
        fn prop_parseval_and_projector(seed in 0u64..1000, kmax in 2usize..5) {
            let g = Arc::new(Grid::new(2, 16).unwrap());
            let f = sampling::band_limited(&g, Rank::Vector, kmax, seed);
            let spectral = f.l2_norm_sq();
            let quadrature = f.to_physical().l2_norm_sq();
            prop_assert!((spectral - quadrature).abs() <= 1e-12 * spectral.max(1e-30));

            let p1 = f.leray_project().unwrap();
            let p2 = p1.leray_project().unwrap();
            let scale = p1.max_coeff().max(1e-30);
            for c in 0..2 {
                for (a, b) in p2.comp(c).iter().zip(p1.comp(c).iter()) {
                    prop_assert!((a - b).norm() <= 1e-12 * scale);
                }
            }
        }

        #[test]
        fn prop_to_spectral_is_hermitian(seed in 0u64..1000) {
            let g = Arc::new(Grid::new(2, 16).unwrap());
            let f = sampling::band_limited(&g, Rank::Scalar, 5, seed);
            // A physical-space square breaks band limits but must still
            // produce a real-representable (Hermitian) spectrum.
            let p = f.to_physical();
            let mut sq = PhysicalField::zeros(g.clone(), Rank::Scalar);
            ndarray::Zip::from(sq.comp_mut(0)).and(p.comp(0)).for_each(|o, &x| *o = x * x);
            let s = sq.to_spectral();
            let n = g.n();
            for i in 0..n {
                for &plane in &[0usize, n / 2] {
                    let a = s.comp(0)[[i, plane]];
                    let b = s.comp(0)[[(n - i) % n, plane]];
                    prop_assert!((a - b.conj()).norm() <= 1e-13);
                }
            }
        }
    }
}
