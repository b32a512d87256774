//! Pseudospectral solver for incompressible shear-thickening
//! (power-law/Smagorinsky) flow on the periodic box `[0, 2π]^d`, `d = 2, 3`,
//! with a nudging data-assimilation layer, analytical synchronization
//! threshold calculators, and a twin-experiment harness.
//!
//! The stress law is `T(Du) = 2(ν0 + ν1 |Du|_F^{p-2}) Du` with `p ≥ 2`;
//! `p = 2` is Newtonian flow with viscosity `ν0 + ν1`, `p = 3` the
//! Smagorinsky model. The nudged twin evolves under an extra relaxation
//! `−μ I_h(v − u)` toward coarse observations `I_h u` of a reference
//! solution and synchronizes to it when `μ` is large and `h` small enough.



pub mod constitutive;
pub mod error;



pub mod spectral;

pub use error::{Error, Result};
