//! Analytic tradeoff formulas for the antenna configurations where the
//! relay problem has been solved in closed form, plus the reference curves
//! used for comparison (full-duplex decode-and-forward, static compress-
//! and-forward, the fundamental channel tradeoff, point-to-point).
//!
//! These double as oracles for the numeric solver: on the configurations
//! covered here the solver's sampled curve must reproduce these values.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{ptp_dmt, CurveError, PiecewiseLinearCurve};

/// Tolerance on domain-boundary comparisons.
const DOMAIN_TOL: f64 = 1e-9;

#[derive(Debug, Error)]
pub enum ClosedFormError {
    #[error("r = {r} outside [{lo}, {hi}]")]
    OutOfDomain { r: f64, lo: f64, hi: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
}

fn check_domain(r: f64, hi: f64) -> Result<f64, ClosedFormError> {
    if !r.is_finite() || r < -DOMAIN_TOL || r > hi + DOMAIN_TOL {
        return Err(ClosedFormError::OutOfDomain { r, lo: 0.0, hi });
    }
    Ok(r.clamp(0.0, hi))
}

/// Single-antenna relay tradeoff: `2(1−r)` up to `r = 1/2`, then `(1−r)/r`.
pub fn ddf_111(r: f64) -> Result<f64, ClosedFormError> {
    let r = check_domain(r, 1.0)?;
    Ok(if r <= 0.5 { 2.0 * (1.0 - r) } else { (1.0 - r) / r })
}

/// `(n, 1, n)` relay tradeoff: `(n−1)² + (3n−1)(1−r)` on `[0, 1]` (n ≥ 2),
/// the `n×n` point-to-point curve on `[1, n]`. For `n = 1` the formula
/// `(1−r)/max{1/2, r}` applies, which coincides with [`ddf_111`].
pub fn ddf_n1n(n: usize, r: f64) -> Result<f64, ClosedFormError> {
    if n == 0 {
        return Err(ClosedFormError::InvalidParam("n must be ≥ 1".into()));
    }
    let r = check_domain(r, n as f64)?;
    if n == 1 {
        return Ok((1.0 - r) / 0.5f64.max(r));
    }
    let nf = n as f64;
    if r <= 1.0 {
        Ok((nf - 1.0).powi(2) + (3.0 * nf - 1.0) * (1.0 - r))
    } else {
        Ok(ptp_dmt(n, n)?.eval(r)?)
    }
}

/// `(1, k, 1)` relay tradeoff, three pieces split at `1/(k+1)` and `1/2`:
/// `(k+1)(1−r)`, then `1 + k(1−2r)/(1−r)`, then `(1−r)/r`.
pub fn ddf_1k1(k: usize, r: f64) -> Result<f64, ClosedFormError> {
    if k == 0 {
        return Err(ClosedFormError::InvalidParam("k must be ≥ 1".into()));
    }
    let r = check_domain(r, 1.0)?;
    let kf = k as f64;
    if r <= 1.0 / (kf + 1.0) {
        Ok((kf + 1.0) * (1.0 - r))
    } else if r <= 0.5 {
        Ok(1.0 + kf * (1.0 - 2.0 * r) / (1.0 - r))
    } else {
        Ok((1.0 - r) / r)
    }
}

/// The seven competing pieces of the `(2, k, 2)` upper bound, each with its
/// validity interval `[lo, hi]`.
fn two_k_two_pieces(k: usize, r: f64) -> Result<Vec<(f64, f64, f64)>, ClosedFormError> {
    let kf = k as f64;
    Ok(vec![
        (0.0, 2.0, ptp_dmt(2, 2)?.eval(r.min(2.0))? + ptp_dmt(2, k)?.eval(r.min(2.0))?),
        (0.0, 2.0 / 3.0, kf + 3.0 + (kf + 1.0) * (2.0 - 3.0 * r) / (2.0 - r)),
        (2.0 / 3.0, 1.0, kf + 6.0 * (1.0 - r) / r),
        (2.0 / 3.0, 1.0, 4.0 + 4.0 * (kf - 1.0) * (1.0 - r) / (2.0 - r)),
        (1.0, 4.0 / 3.0, 1.0 + (kf - 1.0) * (4.0 - 3.0 * r) / (2.0 - r)),
        (1.0, 4.0 / 3.0, 4.0 * (3.0 - 2.0 * r) / r),
        (4.0 / 3.0, 2.0, 2.0 * (2.0 - r) / r),
    ])
}

/// Upper bound on the `(2, k, 2)` relay tradeoff (`k ≥ 2`): the pointwise
/// minimum of seven pieces, each only over its own sub-interval of `[0, 2]`.
pub fn ddf_2k2_upper(k: usize, r: f64) -> Result<f64, ClosedFormError> {
    if k < 2 {
        return Err(ClosedFormError::InvalidParam(format!(
            "the (2,k,2) bound needs k ≥ 2, got {k}"
        )));
    }
    let r = check_domain(r, 2.0)?;
    let v = two_k_two_pieces(k, r)?
        .into_iter()
        .filter(|&(lo, hi, _)| r >= lo - DOMAIN_TOL && r <= hi + DOMAIN_TOL)
        .map(|(_, _, v)| v)
        .fold(f64::INFINITY, f64::min);
    Ok(v)
}

/// Full-duplex decode-and-forward reference on `(n, 1, n)`:
/// `min{d_{n+1,n}(r), d_{n,n}(r) + d_{n,1}(r)}` on `[0, 1]`, then
/// `d_{n,n}(r)`.
pub fn fd_df_n1n(n: usize, r: f64) -> Result<f64, ClosedFormError> {
    if n == 0 {
        return Err(ClosedFormError::InvalidParam("n must be ≥ 1".into()));
    }
    let r = check_domain(r, n as f64)?;
    if r <= 1.0 {
        let combined = ptp_dmt(n + 1, n)?.eval(r)?;
        let split = ptp_dmt(n, n)?.eval(r)? + ptp_dmt(n, 1)?.eval(r)?;
        Ok(combined.min(split))
    } else {
        Ok(ptp_dmt(n, n)?.eval(r)?)
    }
}

/// Static compress-and-forward reference on `(1, k, 1)` for `k ≥ 2`:
/// piecewise linear through `(0, k+1)`, `(1/2, 1)`, `(1, 0)`.
pub fn scf_1k1(k: usize, r: f64) -> Result<f64, ClosedFormError> {
    if k < 2 {
        return Err(ClosedFormError::UnsupportedCase(format!(
            "the static compress-and-forward corner points are only given for k ≥ 2, got {k}"
        )));
    }
    let r = check_domain(r, 1.0)?;
    let kf = k as f64;
    Ok(if r <= 0.5 {
        (kf + 1.0) - 2.0 * kf * r
    } else {
        2.0 * (1.0 - r)
    })
}

/// Fundamental half-duplex tradeoff of the `(1, k, 1)` channel: shares the
/// first two pieces with [`ddf_1k1`], then `2(1−r)` on `[1/2, 1]`.
pub fn fundamental_1k1(k: usize, r: f64) -> Result<f64, ClosedFormError> {
    if k == 0 {
        return Err(ClosedFormError::InvalidParam("k must be ≥ 1".into()));
    }
    let r = check_domain(r, 1.0)?;
    if r <= 0.5 {
        ddf_1k1(k, r)
    } else {
        Ok(2.0 * (1.0 - r))
    }
}

/// Identifier for an analytic curve, carried as metadata when exporting.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "tag", rename_all = "snake_case")]
pub enum ClosedFormId {
    Ddf111,
    DdfN1n { n: usize },
    Ddf1k1 { k: usize },
    Ddf2k2Upper { k: usize },
    FddfN1n { n: usize },
    Scf1k1 { k: usize },
    Fund1k1 { k: usize },
    Ptp { m: usize, n: usize },
}

impl ClosedFormId {
    /// Upper end of the multiplexing-gain domain.
    pub fn domain_hi(&self) -> f64 {
        match *self {
            ClosedFormId::Ddf111 => 1.0,
            ClosedFormId::DdfN1n { n } | ClosedFormId::FddfN1n { n } => n as f64,
            ClosedFormId::Ddf1k1 { .. }
            | ClosedFormId::Scf1k1 { .. }
            | ClosedFormId::Fund1k1 { .. } => 1.0,
            ClosedFormId::Ddf2k2Upper { .. } => 2.0,
            ClosedFormId::Ptp { m, n } => m.min(n) as f64,
        }
    }

    /// Evaluates the identified curve at `r`.
    pub fn eval(&self, r: f64) -> Result<f64, ClosedFormError> {
        match *self {
            ClosedFormId::Ddf111 => ddf_111(r),
            ClosedFormId::DdfN1n { n } => ddf_n1n(n, r),
            ClosedFormId::Ddf1k1 { k } => ddf_1k1(k, r),
            ClosedFormId::Ddf2k2Upper { k } => ddf_2k2_upper(k, r),
            ClosedFormId::FddfN1n { n } => fd_df_n1n(n, r),
            ClosedFormId::Scf1k1 { k } => scf_1k1(k, r),
            ClosedFormId::Fund1k1 { k } => fundamental_1k1(k, r),
            ClosedFormId::Ptp { m, n } => Ok(ptp_dmt(m, n)?.eval(r)?),
        }
    }

    /// Samples the curve on `{0, r_step, …, domain_hi}`. Point-to-point
    /// curves keep their exact breakpoints instead.
    pub fn sample(&self, r_step: f64) -> Result<PiecewiseLinearCurve, ClosedFormError> {
        if let ClosedFormId::Ptp { m, n } = *self {
            return Ok(ptp_dmt(m, n)?);
        }
        let hi = self.domain_hi();
        if !(r_step > 0.0) || !r_step.is_finite() || r_step > hi {
            return Err(ClosedFormError::InvalidParam(format!(
                "r_step {r_step} outside (0, {hi}]"
            )));
        }
        let mut pts: Vec<(f64, f64)> = Vec::new();
        let mut i = 0usize;
        loop {
            let r = i as f64 * r_step;
            if r >= hi - DOMAIN_TOL {
                break;
            }
            pts.push((r, self.eval(r)?));
            i += 1;
        }
        pts.push((hi, self.eval(hi)?));
        Ok(PiecewiseLinearCurve::new(pts, false)?)
    }

    /// JSON export of a sampled curve tagged with this identifier.
    pub fn to_json(&self, r_step: f64) -> Result<serde_json::Value, ClosedFormError> {
        Ok(serde_json::json!({
            "id": self,
            "curve": self.sample(r_step)?.to_json(),
        }))
    }
}
