//! Finite-SNR Monte Carlo validation of the asymptotic tradeoff results.
//!
//! Draws quasi-static Rayleigh channel triples, computes the relay's
//! decision fraction and the destination's mutual information, estimates
//! outage probability over an SNR grid, fits the diversity slope, and
//! empirically checks the joint eigenvalue-exponent support set.
//!
//! Everything is deterministic: each trial derives its own counter-based
//! RNG from `(seed, stream, trial)`, so results are bit-identical no matter
//! how trials are scheduled across threads.

pub mod linalg;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exponents::AntennaConfig;
use linalg::{hermitian_eigendecomposition, hermitian_eigenvalues, ComplexMatrix, LinalgError};

/// Default slack on the empirical exponent-pairing check.
pub const DEFAULT_SUPPORT_MARGIN: f64 = 0.15;

/// Minimum outage events for an SNR point to enter the slope fit.
pub const MIN_SLOPE_EVENTS: u64 = 20;

/// Two-sided 95% normal quantile used by the Wilson interval.
const WILSON_Z: f64 = 1.959_963_984_540_054;

#[derive(Debug, Error)]
pub enum SimError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(
        "insufficient outage statistics: fewer than 2 SNR points reached \
         {MIN_SLOPE_EVENTS} outage events"
    )]
    InsufficientStatistics(Box<OutageEstimate>),
}

/// One quasi-static draw of the three channel matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelRealization {
    /// Source→relay, k×m.
    pub h_sr: ComplexMatrix,
    /// Source→destination, n×m.
    pub h_sd: ComplexMatrix,
    /// Relay→destination, n×k.
    pub h_rd: ComplexMatrix,
}

impl ChannelRealization {
    fn check_dims(&self, cfg: AntennaConfig) -> Result<(), SimError> {
        let ok = self.h_sr.rows() == cfg.k
            && self.h_sr.cols() == cfg.m
            && self.h_sd.rows() == cfg.n
            && self.h_sd.cols() == cfg.m
            && self.h_rd.rows() == cfg.n
            && self.h_rd.cols() == cfg.k;
        if ok {
            Ok(())
        } else {
            Err(SimError::InvalidInput(format!(
                "channel dimensions do not match antenna config {cfg:?}"
            )))
        }
    }
}

/// Base seed plus substream index; the substream isolates SNR grid points
/// from each other so per-point results are independent of grid ordering.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SimSeed {
    pub seed: u64,
    pub stream: u64,
}

/// 64-bit finalizer with full avalanche (the splitmix64 mixer).
fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Counter-based per-trial generator: hashing `(seed, stream, trial)` into
/// a ChaCha key makes every trial reproducible in isolation, so parallel
/// schedules cannot change the sample set.
pub fn trial_rng(seed: SimSeed, trial: u64) -> ChaCha8Rng {
    let mut z = mix64(seed.seed ^ mix64(seed.stream ^ mix64(trial)));
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        z = mix64(z);
        chunk.copy_from_slice(&z.to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

fn gaussian_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let scale = 0.5f64.sqrt(); // variance 1/2 per real component
    ComplexMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re * scale, im * scale)
    })
}

/// Fresh i.i.d. circularly-symmetric complex Gaussian draw of all three
/// links, unit variance per entry.
pub fn sample_channel(cfg: AntennaConfig, rng: &mut ChaCha8Rng) -> ChannelRealization {
    ChannelRealization {
        h_sr: gaussian_matrix(rng, cfg.k, cfg.m),
        h_sd: gaussian_matrix(rng, cfg.n, cfg.m),
        h_rd: gaussian_matrix(rng, cfg.n, cfg.k),
    }
}

/// `Σ log2(1 + c·λ_i(gram))` with eigenvalues clamped to ≥ 0.
fn log2_det_i_plus(c: f64, gram: &ComplexMatrix) -> Result<f64, SimError> {
    let vals = hermitian_eigenvalues(gram)?;
    Ok(vals.iter().map(|&l| (1.0 + c * l.max(0.0)).log2()).sum())
}

/// Fraction of the block the relay spends listening:
/// `f = min{1, r·log2(ρ) / log2 det(I + ρ·Gram(H_SR))}`, clamped to [0, 1],
/// with `f = 0` at `r = 0` and `f = 1` for a dead source–relay link.
pub fn decision_fraction(h_sr: &ComplexMatrix, rho: f64, r: f64) -> Result<f64, SimError> {
    if !(rho > 1.0) {
        return Err(SimError::InvalidInput(format!(
            "rho must exceed 1 for the high-SNR surrogate, got {rho}"
        )));
    }
    if r < 0.0 {
        return Err(SimError::InvalidInput(format!(
            "multiplexing gain must be nonnegative, got {r}"
        )));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    // Min-dimension Gram keeps the eigenproblem t×t.
    let gram = if h_sr.rows() <= h_sr.cols() {
        h_sr.times_adjoint()
    } else {
        h_sr.adjoint_times()
    };
    let denom = log2_det_i_plus(rho, &gram)?;
    if denom <= 0.0 {
        return Ok(1.0);
    }
    Ok((r * rho.log2() / denom).min(1.0))
}

/// Destination mutual information for a pinned decision fraction `f`:
/// `I = f·log2 det(I_n + ρ/(2n)·S) + (1−f)·log2 det(I_n + ρ/(2n)·(S + R))`
/// with `S = H_SD H_SD†` and `R = H_RD H_RD†`. The ρ/(2n) factor is the
/// per-phase power split; it vanishes on the exponential scale but matters
/// at finite SNR.
pub fn mutual_information(
    cfg: AntennaConfig,
    ch: &ChannelRealization,
    rho: f64,
    f: f64,
) -> Result<f64, SimError> {
    ch.check_dims(cfg)?;
    if !(0.0..=1.0).contains(&f) {
        return Err(SimError::InvalidInput(format!(
            "decision fraction must lie in [0, 1], got {f}"
        )));
    }
    let c = rho / (2.0 * cfg.n as f64);
    let s = ch.h_sd.times_adjoint();
    let listen = log2_det_i_plus(c, &s)?;
    if f >= 1.0 {
        return Ok(listen);
    }
    let both = s.add(&ch.h_rd.times_adjoint())?;
    let helped = log2_det_i_plus(c, &both)?;
    Ok(f * listen + (1.0 - f) * helped)
}

/// Outage predicate: mutual information at the channel's own decision
/// fraction falls at or below the target rate `r·log2(ρ)`.
pub fn is_outage(
    cfg: AntennaConfig,
    ch: &ChannelRealization,
    rho: f64,
    r: f64,
) -> Result<bool, SimError> {
    let f = decision_fraction(&ch.h_sr, rho, r)?;
    let info = mutual_information(cfg, ch, rho, f)?;
    Ok(info <= r * rho.log2())
}

/// Which protocol the Monte Carlo loop simulates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutageModel {
    /// The dynamic relay protocol: `f` from the drawn source–relay link.
    DynamicRelay,
    /// Baseline with the relay ignored (`f` pinned to 1): the plain
    /// point-to-point outage event on the source–destination link. The
    /// channel draws are identical to [`OutageModel::DynamicRelay`]'s, so
    /// the two models are directly comparable per trial.
    FullListen,
}

fn trial_is_outage(
    cfg: AntennaConfig,
    r: f64,
    rho: f64,
    seed: SimSeed,
    trial: u64,
    model: OutageModel,
) -> Result<bool, SimError> {
    let mut rng = trial_rng(seed, trial);
    let ch = sample_channel(cfg, &mut rng);
    match model {
        OutageModel::DynamicRelay => is_outage(cfg, &ch, rho, r),
        OutageModel::FullListen => {
            let info = mutual_information(cfg, &ch, rho, 1.0)?;
            Ok(info <= r * rho.log2())
        }
    }
}

fn count_outages(
    cfg: AntennaConfig,
    r: f64,
    rho: f64,
    trials: u64,
    seed: SimSeed,
    model: OutageModel,
) -> Result<u64, SimError> {
    (0..trials)
        .into_par_iter()
        .map(|i| trial_is_outage(cfg, r, rho, seed, i, model).map(u64::from))
        .try_reduce(|| 0u64, |a, b| Ok(a + b))
}

/// Wilson 95% half-width for `events` successes in `trials`.
fn wilson_radius(events: u64, trials: u64) -> f64 {
    let n = trials as f64;
    let p = events as f64 / n;
    let z = WILSON_Z;
    let denom = 1.0 + z * z / n;
    z * (p * (1.0 - p) / n + z * z / (4.0 * n * n)).sqrt() / denom
}

/// Outage estimate at a single SNR point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutagePoint {
    pub p_out: f64,
    pub wilson_radius: f64,
    pub events: u64,
    pub trials: u64,
}

/// Monte Carlo outage probability with a Wilson 95% confidence radius.
/// Deterministic given the seed, independent of thread scheduling.
pub fn estimate_outage(
    cfg: AntennaConfig,
    r: f64,
    rho: f64,
    trials: u64,
    seed: SimSeed,
) -> Result<OutagePoint, SimError> {
    if trials < 1_000 {
        return Err(SimError::InvalidInput(format!(
            "at least 1000 trials are needed for a meaningful estimate, got {trials}"
        )));
    }
    let events = count_outages(cfg, r, rho, trials, seed, OutageModel::DynamicRelay)?;
    Ok(OutagePoint {
        p_out: events as f64 / trials as f64,
        wilson_radius: wilson_radius(events, trials),
        events,
        trials,
    })
}

/// Outage sweep over an SNR grid with a fitted diversity slope.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OutageEstimate {
    pub snr_db_grid: Vec<f64>,
    pub p_out: Vec<f64>,
    pub trials: Vec<u64>,
    pub wilson_radius: Vec<f64>,
    /// Outage events per point; points below [`MIN_SLOPE_EVENTS`] are
    /// excluded from the fit (reported via `included`, never silent).
    pub events: Vec<u64>,
    pub included: Vec<bool>,
    /// Least-squares slope of −log10(p_out) against log10(ρ), when at
    /// least two points qualified.
    pub slope: Option<f64>,
    pub slope_stderr: Option<f64>,
}

impl OutageEstimate {
    /// CSV rendering with header `snr_db,p_out,trials,ci_radius`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("snr_db,p_out,trials,ci_radius\n");
        for i in 0..self.snr_db_grid.len() {
            s.push_str(&format!(
                "{},{},{},{}\n",
                self.snr_db_grid[i], self.p_out[i], self.trials[i], self.wilson_radius[i]
            ));
        }
        s
    }
}

/// Estimates the diversity order of `model` at gain `r`: per-point outage
/// estimation over the dB grid, then a least-squares fit of
/// `−log10(p_out)` against `log10(ρ)`. Grid point `i` uses substream `i`.
pub fn diversity_slope_for_model(
    cfg: AntennaConfig,
    r: f64,
    snr_db_grid: &[f64],
    trials_per_point: u64,
    seed: u64,
    model: OutageModel,
) -> Result<OutageEstimate, SimError> {
    if snr_db_grid.len() < 3 {
        return Err(SimError::InvalidInput(format!(
            "slope fitting needs at least 3 SNR points, got {}",
            snr_db_grid.len()
        )));
    }
    let lo = snr_db_grid.iter().cloned().fold(f64::INFINITY, f64::min);
    let hi = snr_db_grid.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    if !(hi - lo >= 15.0 - 1e-9) {
        return Err(SimError::InvalidInput(format!(
            "SNR grid must span at least 15 dB, got {:.3} dB",
            hi - lo
        )));
    }
    if lo <= 0.0 {
        return Err(SimError::InvalidInput(
            "every SNR point must exceed 0 dB (ρ > 1)".into(),
        ));
    }
    if trials_per_point == 0 {
        return Err(SimError::InvalidInput("trials_per_point must be ≥ 1".into()));
    }

    let mut events = Vec::with_capacity(snr_db_grid.len());
    for (i, &db) in snr_db_grid.iter().enumerate() {
        let rho = 10f64.powf(db / 10.0);
        let sub = SimSeed { seed, stream: i as u64 };
        events.push(count_outages(cfg, r, rho, trials_per_point, sub, model)?);
    }

    let n_pts = snr_db_grid.len();
    let p_out: Vec<f64> = events
        .iter()
        .map(|&e| e as f64 / trials_per_point as f64)
        .collect();
    let radii: Vec<f64> = events
        .iter()
        .map(|&e| wilson_radius(e, trials_per_point))
        .collect();
    let included: Vec<bool> = events.iter().map(|&e| e >= MIN_SLOPE_EVENTS).collect();

    let pts: Vec<(f64, f64)> = (0..n_pts)
        .filter(|&i| included[i])
        .map(|i| (snr_db_grid[i] / 10.0, -p_out[i].log10()))
        .collect();

    let mut estimate = OutageEstimate {
        snr_db_grid: snr_db_grid.to_vec(),
        p_out,
        trials: vec![trials_per_point; n_pts],
        wilson_radius: radii,
        events,
        included,
        slope: None,
        slope_stderr: None,
    };

    if pts.len() < 2 {
        return Err(SimError::InsufficientStatistics(Box::new(estimate)));
    }

    let n = pts.len() as f64;
    let x_bar = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let y_bar = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - x_bar).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - x_bar) * (p.1 - y_bar)).sum();
    let slope = sxy / sxx;
    estimate.slope = Some(slope);
    if pts.len() > 2 {
        let sse: f64 = pts
            .iter()
            .map(|p| (p.1 - (y_bar + slope * (p.0 - x_bar))).powi(2))
            .sum();
        estimate.slope_stderr = Some((sse / (n - 2.0) / sxx).sqrt());
    }
    Ok(estimate)
}

/// [`diversity_slope_for_model`] for the dynamic relay protocol itself.
pub fn diversity_slope(
    cfg: AntennaConfig,
    r: f64,
    snr_db_grid: &[f64],
    trials_per_point: u64,
    seed: u64,
) -> Result<OutageEstimate, SimError> {
    diversity_slope_for_model(
        cfg,
        r,
        snr_db_grid,
        trials_per_point,
        seed,
        OutageModel::DynamicRelay,
    )
}

/// Empirical check of the joint exponent support: draws destination-side
/// channels, extracts decay orders `α` from `H_SD H_SD†` and `β` from the
/// whitened relay Gram `H_RD†(I + ρ·H_SD H_SD†)^{−1}H_RD`, and counts draws
/// where some required pair has `α_i + β_j < 1 − margin`. The fraction
/// should shrink as `ρ` grows.
pub fn support_set_check(
    cfg: AntennaConfig,
    rho: f64,
    samples: u64,
    margin: f64,
    seed: SimSeed,
) -> Result<f64, SimError> {
    if !(rho >= 1e3) {
        return Err(SimError::InvalidInput(format!(
            "support check needs rho ≥ 10^3 to separate scales, got {rho}"
        )));
    }
    if samples == 0 {
        return Err(SimError::InvalidInput("samples must be ≥ 1".into()));
    }
    if !(margin > 0.0) {
        return Err(SimError::InvalidInput(format!(
            "margin must be positive, got {margin}"
        )));
    }

    let violations: u64 = (0..samples)
        .into_par_iter()
        .map(|i| -> Result<u64, SimError> {
            let mut rng = trial_rng(seed, i);
            let ch = sample_channel(cfg, &mut rng);
            Ok(u64::from(draw_violates_support(cfg, &ch, rho, margin)?))
        })
        .try_reduce(|| 0u64, |a, b| Ok(a + b))?;
    Ok(violations as f64 / samples as f64)
}

fn draw_violates_support(
    cfg: AntennaConfig,
    ch: &ChannelRealization,
    rho: f64,
    margin: f64,
) -> Result<bool, SimError> {
    let (p, q, n) = (cfg.p(), cfg.q(), cfg.n);
    let log_rho = rho.ln();

    // α from the direct-link Gram.
    let s = ch.h_sd.times_adjoint();
    let (s_vals, s_vecs) = hermitian_eigendecomposition(&s)?;
    let alpha: Vec<f64> = s_vals[..p]
        .iter()
        .map(|&l| -l.max(1e-300).ln() / log_rho)
        .collect();

    // β from the relay Gram whitened by the direct link:
    // (I + ρS)^{−1} = V·diag(1/(1+ρλ))·V†, so with W = V†·H_RD the
    // whitened Gram is W†·diag(1/(1+ρλ))·W.
    let w = s_vecs.adjoint().mul(&ch.h_rd)?;
    let k = cfg.k;
    let mut v1 = ComplexMatrix::zeros(k, k);
    for a in 0..k {
        for b in 0..k {
            let mut acc = Complex64::new(0.0, 0.0);
            for (c, sv) in s_vals.iter().enumerate() {
                let weight = 1.0 / (1.0 + rho * sv.max(0.0));
                acc += w.get(c, a).conj() * w.get(c, b) * weight;
            }
            v1.set(a, b, acc);
        }
    }
    // Symmetrize away roundoff before the eigensolve.
    let v1 = v1.add(&v1.adjoint())?.scale(0.5);
    let xi = hermitian_eigenvalues(&v1)?;
    let beta: Vec<f64> = xi[..q]
        .iter()
        .map(|&l| -l.max(1e-300).ln() / log_rho)
        .collect();

    for (i, &a) in alpha.iter().enumerate() {
        for (j, &b) in beta.iter().enumerate() {
            if (i + 1) + (j + 1) > n && a + b < 1.0 - margin {
                return Ok(true);
            }
        }
    }
    Ok(false)
}
