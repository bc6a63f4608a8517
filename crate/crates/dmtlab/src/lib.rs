//! dmtlab — diversity–multiplexing tradeoff (DMT) analysis for the dynamic
//! decode-and-forward (DDF) protocol on a MIMO half-duplex relay channel.
//!
//! A source with `m` antennas talks to a destination with `n` antennas,
//! helped by a half-duplex relay with `k` antennas. Under DDF the relay
//! listens for a channel-dependent fraction `f` of the codeword, decodes,
//! and re-encodes for the remainder. At high SNR the outage probability
//! decays as `ρ^(−d(r))`; this crate computes the tradeoff curve `d(r)`
//! numerically for any `(m, k, n)`, provides the known closed forms as
//! oracles, and validates both against finite-SNR Monte Carlo simulation.
//!
//! Module map:
//!
//! * [`curves`] — piecewise-linear DMT curves and the point-to-point
//!   baseline `d_{m,n}(r)`, with CSV/JSON export.
//! * [`exponents`] — SNR-exponent algebra: the joint eigenvalue exponent
//!   `E(α, β)`, the full objective `F`, its reduced form `G(r, b, y)`, and
//!   the relay decision fraction.
//! * [`optimizer`] — the two-level minimization producing `d(r)`: exact
//!   breakpoint enumeration in `b`, grid + golden-section search in `y`.
//! * [`closedform`] — analytic curves for (1,1,1), (n,1,n), (1,k,1) and the
//!   (2,k,2) upper bound, plus reference protocols (SCF, full-duplex DF).
//! * [`simulator`] — Rayleigh Monte Carlo: outage estimates, diversity
//!   slope fits, and an empirical check of the eigenvalue-exponent support.
//! * [`validation`] — the acceptance suites behind `dmtlab validate`.
//! * [`cli`] — the batch command-line front end (`curve`, `compare`,
//!   `simulate`, `validate`).
//!
//! The `examples/` directory shows one runnable program per capability;
//! start with `examples/ddf_curve.rs`.

// Guard clauses use `!(x > bound)` so that NaN inputs fail validation; the
// de-negated forms clippy suggests would silently admit NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod closedform;
pub mod curves;
pub mod exponents;
pub mod optimizer;
pub mod simulator;
pub mod validation;

pub use curves::{ptp_dmt, PiecewiseLinearCurve};
pub use exponents::AntennaConfig;
pub use optimizer::{ddf_curve, ddf_dmt, SolverSettings};
