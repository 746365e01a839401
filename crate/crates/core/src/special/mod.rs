//! Special functions: Bernoulli numbers, digamma/log-gamma, Hurwitz zeta,
//! and the von Mangoldt sieve.

pub mod bernoulli;
pub mod gamma;
pub mod hurwitz;
pub mod mangoldt;

pub use gamma::{digamma, digamma_real, ln_abs_gamma, log_gamma, EULER_GAMMA};
pub use hurwitz::{
    hurwitz_eval, hurwitz_zeta, hurwitz_zeta_ds, riemann_zeta, EulerMaclaurinConfig, HurwitzEval,
};
pub use mangoldt::{chebyshev_psi, MangoldtSieve};
