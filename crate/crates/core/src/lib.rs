//! Spectral laboratory for coupled semilinear time-fractional wave systems
//! with Caputo orders in (1,2).
//!
//! The crate is organized around the pipeline
//!
//! ```text
//!   mittag_leffler  ──►  spectral_grid  ──►  mild_solver
//!        │                    │                   │
//!        └── frac_calculus    └── estimate_validator
//!                                      │
//!                             regime_analyzer (pure arithmetic)
//! ```
//!
//! * [`mittag_leffler`] evaluates the two-parameter function `E_{α,β}(z)` on
//!   the real line, the scalar kernel of every operator here.
//! * [`frac_calculus`] provides Riemann-Liouville integrals and Caputo
//!   derivatives on sampled time grids, plus closed-form test identities.
//! * [`spectral_grid`] discretizes a periodic box and realizes the
//!   Mittag-Leffler operator families as Fourier multipliers.
//! * [`mild_solver`] integrates the coupled Volterra (mild-solution) system
//!   with per-mode exact product-integration weights and blow-up detection.
//! * [`regime_analyzer`] evaluates the global-existence/blow-up inequalities
//!   and every derived exponent in exact f64 arithmetic.
//! * [`estimate_validator`] measures smoothing rates and kernel envelopes
//!   against their predicted exponents.
//! * [`cli`] wires everything to the `fracwave` binary.

pub mod cli;
pub mod estimate_validator;
pub mod frac_calculus;
pub mod mild_solver;
pub mod mittag_leffler;
pub mod quadrature;
pub mod regime_analyzer;
pub mod spectral_grid;

pub use mittag_leffler::{ml_eval, MLParams};
