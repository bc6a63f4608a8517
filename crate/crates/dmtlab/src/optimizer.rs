//! Numeric solver for the relay tradeoff.
//!
//! The diversity order at multiplexing gain `r` is the minimum of the
//! objective `G(r, b, y)` over the source–relay deficit `y` and the
//! relay–destination deficit `b`. The feasible `y` axis splits into three
//! regions with different `b` intervals; within each region the inner
//! problem is piecewise linear in `b` and is solved exactly by breakpoint
//! enumeration, while the outer problem over `y` is piecewise smooth and is
//! handled by dense sampling plus golden-section refinement. The final
//! curve is the minimum of this branch (where the relay can still decode,
//! `r < t`) and the no-listen branch `d_{m,n}(r) + d_{k,m}(r)`.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curves::{ptp_dmt, CurveError, PiecewiseLinearCurve};
use crate::exponents::{objective_G, varphi, AntennaConfig, ExponentError, FEAS_TOL};

/// Relative offset used to probe open-left region boundaries, where the
/// infimum may be approached but not attained.
const EDGE_EPS: f64 = 1e-9;

/// Value slack when comparing candidate minima; ties resolve toward the
/// earlier candidate (smaller `b`, then smaller region index).
const TIE_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("invalid solver settings: {0}")]
    InvalidSettings(String),
    #[error("multiplexing gain {r} outside [0, {max}]")]
    MuxOutOfRange { r: f64, max: f64 },
    #[error("y = {y} outside ({r}, {t}]")]
    YOutOfRange { y: f64, r: f64, t: f64 },
    #[error("grid step {step} outside (0, {max}]")]
    BadStep { step: f64, max: f64 },
    #[error(transparent)]
    Exponent(#[from] ExponentError),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error("internal solver error: {0}")]
    Internal(String),
}

/// The three sub-intervals of the outer variable `y`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RegionId {
    R1,
    R2,
    R3,
}

impl std::fmt::Display for RegionId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RegionId::R1 => write!(f, "R1"),
            RegionId::R2 => write!(f, "R2"),
            RegionId::R3 => write!(f, "R3"),
        }
    }
}

/// Where and how small the solver found the objective.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OptimumRecord {
    pub value: f64,
    pub arg_b: f64,
    pub arg_y: f64,
    pub region: RegionId,
    pub r: f64,
}

/// How the inner (exact) minimization over `b` is carried out.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum InnerMinMode {
    /// Enumerate every breakpoint of the piecewise-linear map `b ↦ G`.
    #[default]
    BreakpointEnumeration,
}

/// Outer-search knobs. Defaults balance the ≤1e−3 curve-accuracy target
/// against runtime; the inner step is exact regardless.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SolverSettings {
    /// Outer samples per region (≥ 16).
    pub y_grid: usize,
    /// Bracket width at which golden-section refinement stops.
    pub refine_tol: f64,
    /// Inner minimization strategy.
    pub b_mode: InnerMinMode,
}

impl Default for SolverSettings {
    fn default() -> Self {
        Self {
            y_grid: 2000,
            refine_tol: 1e-6,
            b_mode: InnerMinMode::BreakpointEnumeration,
        }
    }
}

impl SolverSettings {
    fn validate(&self) -> Result<(), SolveError> {
        if self.y_grid < 16 {
            return Err(SolveError::InvalidSettings(format!(
                "y_grid must be at least 16, got {}",
                self.y_grid
            )));
        }
        if !(self.refine_tol > 0.0) || !self.refine_tol.is_finite() {
            return Err(SolveError::InvalidSettings(format!(
                "refine_tol must be positive and finite, got {}",
                self.refine_tol
            )));
        }
        Ok(())
    }
}

/// The three `y` intervals `(lo, hi]` for a given `r`; empty when `lo ≥ hi`.
///
/// Boundaries: `R1` ends at `qr/(n−r)`, `R2` at `qr/(q−r)` (+∞ once
/// `r ≥ q`), and everything is intersected with `(r, t]`.
fn region_intervals(cfg: AntennaConfig, r: f64) -> [(RegionId, f64, f64); 3] {
    let (q, t, n) = (cfg.q() as f64, cfg.t() as f64, cfg.n as f64);
    let b1 = q * r / (n - r);
    let b2 = if r < q { q * r / (q - r) } else { f64::INFINITY };
    [
        (RegionId::R1, r, b1.min(t)),
        (RegionId::R2, b1.max(r), b2.min(t)),
        (RegionId::R3, b2.max(r), t),
    ]
}

fn region_of(cfg: AntennaConfig, r: f64, y: f64) -> Result<RegionId, SolveError> {
    let t = cfg.t() as f64;
    if !(y > r) || y > t + FEAS_TOL {
        return Err(SolveError::YOutOfRange { y, r, t });
    }
    for (id, lo, hi) in region_intervals(cfg, r) {
        if y > lo && y <= hi {
            return Ok(id);
        }
    }
    // y ∈ (t, t + FEAS_TOL]: attribute to the last nonempty region.
    Ok(RegionId::R3)
}

/// Feasible interval `[0, b_max]` of the relay–destination deficit at a
/// given outer point `y ∈ (r, t]`, clamped to `[0, q]`.
pub fn b_range(cfg: AntennaConfig, r: f64, y: f64) -> Result<(f64, f64), SolveError> {
    let q = cfg.q() as f64;
    let region = region_of(cfg, r, y)?;
    let raw = match region {
        RegionId::R1 => y * (cfg.n as f64 - r) / r,
        RegionId::R2 => q,
        RegionId::R3 => r * y / (y - r),
    };
    Ok((0.0, raw.min(q)))
}

/// Exact inner minimum of `b ↦ G(r, b, y)` over [`b_range`].
///
/// The map is piecewise linear: each φ component is a clamped-linear
/// function and each cross term is clamped-affine. Its kinks lie where `b`
/// is an integer, where the derived `a(b)` is an integer, or where a cross
/// term `α_i + β_j` crosses 1 (equivalently `a + b` crosses an integer).
/// Evaluating every such candidate plus the interval endpoints is therefore
/// an exact minimization. Among equal values the smallest `b` is returned.
pub fn min_over_b(cfg: AntennaConfig, r: f64, y: f64) -> Result<(f64, f64), SolveError> {
    let (lo, b_max) = b_range(cfg, r, y)?;
    debug_assert_eq!(lo, 0.0);
    let (p, q) = (cfg.p() as f64, cfg.q() as f64);

    let mut cands: Vec<f64> = Vec::with_capacity(8 + cfg.p() + 2 * cfg.q());
    cands.push(0.0);
    cands.push(b_max);
    let mut push = |b: f64| {
        if b.is_finite() && b >= -FEAS_TOL && b <= b_max + FEAS_TOL {
            cands.push(b.clamp(0.0, b_max));
        }
    };
    let mut c = 0.0;
    while c <= q {
        push(c);
        c += 1.0;
    }
    // a(b) = r − b(y−r)/y hits an integer c at b = (r−c)·y/(y−r).
    let mut c = 0.0;
    while c <= p {
        push((r - c) * y / (y - r));
        c += 1.0;
    }
    // Cross-term kinks sit on a(b) + b = c, i.e. b = (c−r)·y/r.
    if r > 0.0 {
        let mut c = 1.0;
        while c <= p + q {
            push((c - r) * y / r);
            c += 1.0;
        }
    }

    cands.sort_by(|a, b| a.partial_cmp(b).expect("finite candidates"));
    cands.dedup_by(|a, b| (*a - *b).abs() <= TIE_TOL * b_max.max(1.0));

    let mut best: Option<(f64, f64)> = None;
    for b in cands {
        let v = objective_G(cfg, r, b, y)?;
        if best.is_none_or(|(_, bv)| v < bv - TIE_TOL) {
            best = Some((b, v));
        }
    }
    best.ok_or_else(|| SolveError::Internal(format!("empty candidate set at y = {y}")))
}

/// Golden-section search tracking the best evaluated point; robust to the
/// mild non-unimodality left between sampled kinks.
fn golden_min<F>(mut f: F, mut a: f64, mut b: f64, tol: f64) -> Result<(f64, f64), SolveError>
where
    F: FnMut(f64) -> Result<f64, SolveError>,
{
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut c = b - INV_PHI * (b - a);
    let mut d = a + INV_PHI * (b - a);
    let mut fc = f(c)?;
    let mut fd = f(d)?;
    let mut best = if fc <= fd { (c, fc) } else { (d, fd) };
    for _ in 0..200 {
        if b - a <= tol {
            break;
        }
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - INV_PHI * (b - a);
            fc = f(c)?;
            if fc < best.1 {
                best = (c, fc);
            }
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + INV_PHI * (b - a);
            fd = f(d)?;
            if fd < best.1 {
                best = (d, fd);
            }
        }
    }
    Ok(best)
}

/// Global minimum of `G` over `y ∈ (r, t]` (all three regions), for
/// `0 < r < min(m, n, k distances permitting)`; the relay-decoding branch
/// of the tradeoff.
///
/// Each nonempty region is sampled on a uniform grid (plus a probe just
/// inside the open left end), and the bracket around the best sample is
/// refined by golden-section search. Ties across regions resolve to the
/// smaller region index.
pub fn d_hat(
    cfg: AntennaConfig,
    r: f64,
    settings: SolverSettings,
) -> Result<OptimumRecord, SolveError> {
    settings.validate()?;
    let p = cfg.max_mux();
    if !(r > 0.0) || r >= p {
        return Err(SolveError::MuxOutOfRange { r, max: p });
    }

    let mut overall: Option<OptimumRecord> = None;
    for (id, lo, hi) in region_intervals(cfg, r) {
        if !(hi > lo) {
            continue;
        }
        let width = hi - lo;
        let probe = (lo + width * EDGE_EPS).min(hi);

        let mut ys: Vec<f64> = Vec::with_capacity(settings.y_grid + 1);
        ys.push(probe);
        for i in 1..=settings.y_grid {
            let y = if i == settings.y_grid {
                hi
            } else {
                lo + width * i as f64 / settings.y_grid as f64
            };
            if y > probe {
                ys.push(y);
            }
        }

        let mut best_i = 0usize;
        let mut best_v = f64::INFINITY;
        let mut vals: Vec<f64> = Vec::with_capacity(ys.len());
        for (i, &y) in ys.iter().enumerate() {
            let (_, v) = min_over_b(cfg, r, y)?;
            vals.push(v);
            if v < best_v - TIE_TOL {
                best_v = v;
                best_i = i;
            }
        }

        let left = if best_i == 0 { ys[0] } else { ys[best_i - 1] };
        let right = if best_i + 1 == ys.len() {
            ys[best_i]
        } else {
            ys[best_i + 1]
        };
        let (mut arg_y, mut value) = (ys[best_i], vals[best_i]);
        if right > left {
            let (gy, gv) = golden_min(
                |y| min_over_b(cfg, r, y).map(|(_, v)| v),
                left,
                right,
                settings.refine_tol,
            )?;
            if gv < value {
                arg_y = gy;
                value = gv;
            }
        }
        let (arg_b, _) = min_over_b(cfg, r, arg_y)?;

        if overall.is_none_or(|o| value < o.value - TIE_TOL) {
            overall = Some(OptimumRecord {
                value,
                arg_b,
                arg_y,
                region: id,
                r,
            });
        }
    }
    overall.ok_or_else(|| {
        SolveError::Internal(format!(
            "all regions empty at r = {r} (requires r < t = {})",
            cfg.t()
        ))
    })
}

/// Full tradeoff value `d*(r) = min{ d̂(r) + φ(r, t), d_{m,n}(r) + d_{k,m}(r) }`.
///
/// At `r = 0` both branches equal the full diversity `mn + km`. Once
/// `r ≥ t` the relay can no longer decode in time (`φ` saturates) and the
/// source–relay curve has hit zero, leaving exactly `d_{m,n}(r)`.
pub fn ddf_dmt(cfg: AntennaConfig, r: f64, settings: SolverSettings) -> Result<f64, SolveError> {
    settings.validate()?;
    let p = cfg.max_mux();
    if r < -FEAS_TOL || r > p + FEAS_TOL {
        return Err(SolveError::MuxOutOfRange { r, max: p });
    }
    let r = r.clamp(0.0, p);
    if r == 0.0 {
        return Ok((cfg.m * cfg.n + cfg.k * cfg.m) as f64);
    }
    if (r - p).abs() <= FEAS_TOL {
        return Ok(0.0);
    }
    let t = cfg.t() as f64;
    let relay_off = ptp_dmt(cfg.m, cfg.n)?.eval(r)?;
    if !varphi(r, t).is_finite() {
        return Ok(relay_off);
    }
    let no_listen = relay_off + ptp_dmt(cfg.k, cfg.m)?.eval(r)?;
    let relay_on = d_hat(cfg, r, settings)?.value;
    Ok(relay_on.min(no_listen))
}

/// Samples [`ddf_dmt`] on `{0, r_step, 2·r_step, …, min(m,n)}` into a
/// (sampled, monotonicity-checked) curve. Points are solved in parallel.
pub fn ddf_curve(
    cfg: AntennaConfig,
    r_step: f64,
    settings: SolverSettings,
) -> Result<PiecewiseLinearCurve, SolveError> {
    settings.validate()?;
    let p = cfg.max_mux();
    if !(r_step > 0.0) || !r_step.is_finite() || r_step > p {
        return Err(SolveError::BadStep { step: r_step, max: p });
    }
    let mut rs: Vec<f64> = Vec::new();
    let mut i = 0usize;
    loop {
        let r = i as f64 * r_step;
        if r >= p - FEAS_TOL {
            break;
        }
        rs.push(r);
        i += 1;
    }
    rs.push(p);

    let values: Vec<f64> = rs
        .par_iter()
        .map(|&r| ddf_dmt(cfg, r, settings))
        .collect::<Result<_, _>>()?;

    let pts: Vec<(f64, f64)> = rs
        .into_iter()
        .zip(values.into_iter().map(|v| v.max(0.0)))
        .collect();
    Ok(PiecewiseLinearCurve::new(pts, false)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cfg(m: usize, k: usize, n: usize) -> AntennaConfig {
        AntennaConfig::new(m, k, n).unwrap()
    }

    fn settings() -> SolverSettings {
        SolverSettings::default()
    }

    #[test]
    fn b_range_examples() {
        let c111 = cfg(1, 1, 1);
        let y = 0.5 + 1e-6;
        let (lo, hi) = b_range(c111, 0.5, y).unwrap();
        assert_eq!(lo, 0.0);
        assert!((hi - y).abs() < 1e-12); // B1 = y(n−r)/r = y here

        let (_, hi) = b_range(c111, 0.25, 1.0).unwrap();
        assert!((hi - 1.0 / 3.0).abs() < 1e-12);

        let (_, hi) = b_range(cfg(2, 2, 2), 1.0, 2.0).unwrap();
        assert!((hi - 2.0).abs() < 1e-12);
    }

    #[test]
    fn b_range_rejects_y_outside_regions() {
        let c = cfg(1, 1, 1);
        assert!(matches!(
            b_range(c, 0.5, 0.5),
            Err(SolveError::YOutOfRange { .. })
        ));
        assert!(matches!(
            b_range(c, 0.5, 1.5),
            Err(SolveError::YOutOfRange { .. })
        ));
    }

    #[test]
    fn min_over_b_examples() {
        let c = cfg(1, 1, 1);
        // Negative slope in b: optimum at the right endpoint.
        let (b, v) = min_over_b(c, 0.5, 0.75).unwrap();
        assert!((b - 0.75).abs() < 1e-12);
        assert!((v - 1.0).abs() < 1e-12);
        // Positive slope: optimum at b = 0.
        let (b, v) = min_over_b(c, 0.25, 1.0).unwrap();
        assert_eq!(b, 0.0);
        assert!((v - 1.5).abs() < 1e-12);
        // Flat in b: value pinned, tie resolved to the smallest b.
        let (b, v) = min_over_b(c, 0.25, 0.5).unwrap();
        assert!((v - 2.0).abs() < 1e-12);
        assert_eq!(b, 0.0);
    }

    #[test]
    fn inner_minimum_beats_brute_force() {
        let configs = [
            cfg(1, 1, 1),
            cfg(2, 2, 2),
            cfg(1, 2, 1),
            cfg(2, 1, 2),
            cfg(2, 3, 2),
            cfg(3, 2, 3),
            cfg(1, 2, 3),
            cfg(3, 1, 2),
        ];
        let mut rng = ChaCha8Rng::seed_from_u64(101);
        let mut tested = 0;
        while tested < 100 {
            let c = configs[rng.gen_range(0..configs.len())];
            let (p, t) = (c.max_mux(), c.t() as f64);
            let r = rng.gen::<f64>() * p.min(t);
            if r <= 1e-3 || r >= t - 1e-3 {
                continue;
            }
            let y = r + rng.gen::<f64>() * (t - r);
            if y <= r + 1e-6 {
                continue;
            }
            let (_, v) = min_over_b(c, r, y).unwrap();
            let (_, b_max) = b_range(c, r, y).unwrap();
            let mut brute = f64::INFINITY;
            for i in 0..=10_000 {
                let b = b_max * i as f64 / 10_000.0;
                brute = brute.min(objective_G(c, r, b, y).unwrap());
            }
            assert!(v <= brute + 1e-12, "cfg {c:?} r={r} y={y}: {v} vs brute {brute}");
            tested += 1;
        }
    }

    #[test]
    fn value_is_continuous_across_region_boundaries() {
        // (3,3,4) at r=1.2 has all three regions nonempty; the b-interval
        // formulas of adjacent regions agree (value q) exactly at each
        // boundary, so the minimized value must be continuous there.
        let c = cfg(3, 3, 4);
        let r = 1.2;
        let regions = region_intervals(c, r);
        for boundary in [regions[0].2, regions[1].2] {
            assert!(boundary < c.t() as f64);
            let (_, left) = min_over_b(c, r, boundary).unwrap();
            let (_, right) = min_over_b(c, r, boundary * (1.0 + 1e-12)).unwrap();
            assert!(
                (left - right).abs() <= 1e-9,
                "jump at boundary {boundary}: {left} vs {right}"
            );
        }
        // R1/R2 boundary of (2,2,3).
        let c = cfg(2, 2, 3);
        let r = 1.2;
        let b1 = region_intervals(c, r)[0].2;
        let (_, left) = min_over_b(c, r, b1).unwrap();
        let (_, right) = min_over_b(c, r, b1 * (1.0 + 1e-12)).unwrap();
        assert!((left - right).abs() <= 1e-9);
    }

    #[test]
    fn d_hat_examples() {
        let rec = d_hat(cfg(1, 1, 1), 0.25, settings()).unwrap();
        assert!((rec.value - 1.5).abs() <= 1e-9);
        assert!((rec.arg_y - 1.0).abs() <= 1e-6);
        assert!(rec.arg_b.abs() <= 1e-9);
        let check = objective_G(cfg(1, 1, 1), rec.r, rec.arg_b, rec.arg_y).unwrap();
        assert!((check - rec.value).abs() <= 1e-9);

        let rec = d_hat(cfg(1, 1, 1), 0.75, settings()).unwrap();
        assert!((rec.value - 1.0 / 3.0).abs() <= 1e-9);

        let rec = d_hat(cfg(1, 2, 1), 0.4, settings()).unwrap();
        assert!((rec.value - 5.0 / 3.0).abs() <= 1e-9);
    }

    #[test]
    fn d_hat_handles_empty_leading_region() {
        // (1,1,2): R1 is empty for every feasible r; the solve must still
        // succeed through R2/R3.
        let rec = d_hat(cfg(1, 1, 2), 0.5, settings()).unwrap();
        assert!(rec.value.is_finite() && rec.value > 0.0);
        assert!(rec.region != RegionId::R1);
    }

    #[test]
    fn d_hat_validates_inputs() {
        assert!(matches!(
            d_hat(cfg(1, 1, 1), 0.5, SolverSettings { y_grid: 8, ..settings() }),
            Err(SolveError::InvalidSettings(_))
        ));
        assert!(matches!(
            d_hat(cfg(1, 1, 1), 0.5, SolverSettings { refine_tol: 0.0, ..settings() }),
            Err(SolveError::InvalidSettings(_))
        ));
        assert!(matches!(
            d_hat(cfg(1, 1, 1), 0.0, settings()),
            Err(SolveError::MuxOutOfRange { .. })
        ));
        assert!(matches!(
            d_hat(cfg(1, 1, 1), 1.0, settings()),
            Err(SolveError::MuxOutOfRange { .. })
        ));
        // r ≥ t leaves every region empty; d_hat reports it, ddf_dmt routes
        // around it.
        assert!(matches!(
            d_hat(cfg(2, 1, 2), 1.5, settings()),
            Err(SolveError::Internal(_))
        ));
    }

    #[test]
    fn d_hat_never_beats_handpicked_feasible_points() {
        let configs = [cfg(1, 1, 1), cfg(2, 2, 2), cfg(1, 2, 1), cfg(2, 3, 2)];
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        for c in configs {
            let cap = c.max_mux().min(c.t() as f64);
            for _ in 0..5 {
                let r = (0.05 + 0.9 * rng.gen::<f64>()) * cap;
                let rec = d_hat(c, r, settings()).unwrap();
                let easy = objective_G(c, r, 0.0, c.t() as f64).unwrap();
                assert!(rec.value <= easy + 1e-9, "cfg {c:?} r={r}");
            }
        }
    }

    #[test]
    fn ddf_dmt_examples() {
        assert_eq!(ddf_dmt(cfg(1, 2, 1), 0.0, settings()).unwrap(), 3.0);
        let v = ddf_dmt(cfg(2, 1, 2), 0.5, settings()).unwrap();
        assert!((v - 3.5).abs() <= 1e-9);
        let v = ddf_dmt(cfg(2, 1, 2), 1.5, settings()).unwrap();
        assert_eq!(v, 0.5);
        assert_eq!(ddf_dmt(cfg(1, 1, 1), 1.0, settings()).unwrap(), 0.0);
        assert!(matches!(
            ddf_dmt(cfg(2, 1, 2), -0.1, settings()),
            Err(SolveError::MuxOutOfRange { .. })
        ));
        assert!(matches!(
            ddf_dmt(cfg(2, 1, 2), 2.1, settings()),
            Err(SolveError::MuxOutOfRange { .. })
        ));
    }

    #[test]
    fn ddf_curve_single_antenna_closed_form() {
        let c = ddf_curve(cfg(1, 1, 1), 0.25, settings()).unwrap();
        let expect = [2.0, 1.5, 1.0, 1.0 / 3.0, 0.0];
        assert_eq!(c.breakpoints.len(), 5);
        assert!(!c.exact);
        for (i, &(r, d)) in c.breakpoints.iter().enumerate() {
            assert!((r - 0.25 * i as f64).abs() < 1e-12);
            assert!((d - expect[i]).abs() <= 1e-9, "r={r}: {d} vs {}", expect[i]);
        }

        let c = ddf_curve(cfg(1, 1, 1), 0.5, settings()).unwrap();
        let ds: Vec<f64> = c.breakpoints.iter().map(|p| p.1).collect();
        assert!((ds[0] - 2.0).abs() <= 1e-9);
        assert!((ds[1] - 1.0).abs() <= 1e-9);
        assert!(ds[2].abs() <= 1e-9);
    }

    #[test]
    fn ddf_curve_grid_covers_endpoint() {
        // 0.3 does not divide 1: the grid is 0, .3, .6, .9 then the exact
        // endpoint r = 1.
        let c = ddf_curve(cfg(1, 1, 1), 0.3, settings()).unwrap();
        let rs: Vec<f64> = c.breakpoints.iter().map(|p| p.0).collect();
        assert_eq!(rs.len(), 5);
        assert_eq!(*rs.last().unwrap(), 1.0);
        assert_eq!(c.breakpoints.last().unwrap().1, 0.0);
    }

    #[test]
    fn ddf_curve_rejects_bad_steps() {
        for bad in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                ddf_curve(cfg(1, 1, 1), bad, settings()),
                Err(SolveError::BadStep { .. })
            ));
        }
    }
}
