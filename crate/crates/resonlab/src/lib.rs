//! Numerical laboratory for extreme values of ζ′/ζ and L′/L.
//!
//! The crate provides:
//!
//! * [`arith`] — prime sieves, the von Mangoldt function, weighted prime
//!   sums and the explicit constants built from them;
//! * [`special`] — Euler–Maclaurin evaluation of Hurwitz zeta, generalized
//!   Stieltjes constants, and two routes to ζ′/ζ(σ + it);
//! * [`dirichlet`] — character groups mod prime q, batch truncated Λ-sums
//!   over all characters via a discrete Fourier transform, an L′/L(1, χ)
//!   oracle, and Euler–Kronecker constants;
//! * [`resonator`] — the three resonator families and numeric verification
//!   of their Gaussian-weight moment identities;
//! * [`search`] — extreme-value scans over t, sweeps over prime moduli,
//!   threshold measure/count studies and directional (θ) reports;
//! * [`cli`] — the command-line surface and CSV/JSON emission.
//!
//! Everything is deterministic: identical inputs give bit-identical
//! outputs, independent of thread count.

pub mod arith;
pub mod cli;
pub mod dirichlet;
pub mod error;
pub mod quad;
pub mod resonator;
pub mod search;
pub mod special;

pub use error::{Error, Result};
