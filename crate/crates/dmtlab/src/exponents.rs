//! Scalar building blocks of the outage-exponent optimization.
//!
//! High-SNR outage analysis replaces channel eigenvalues by their polynomial
//! decay orders: `λ_i = ρ^{−α_i}`, `ξ_j = ρ^{−β_j}`, and relay-link orders
//! `γ_l`. This module provides the clamp maps that generate extremal
//! exponent vectors from a single "sum deficit" scalar, the joint exponent
//! `E(ᾱ, β̄)` with its support set, the full objective `F`, its scalarized
//! form `G(r, b, y)`, the relay decision fraction `f`, and the `φ(x, y)`
//! indicator used when assembling the final tradeoff.

use thiserror::Error;

/// Slack for feasibility comparisons on constraint boundaries.
pub const FEAS_TOL: f64 = 1e-9;

/// Slack for set-membership predicates evaluated on exact-arithmetic inputs.
const SUPPORT_TOL: f64 = 1e-12;

#[derive(Debug, Error)]
pub enum ExponentError {
    #[error("antenna counts must be positive, got ({m}, {k}, {n})")]
    InvalidAntennas { m: usize, k: usize, n: usize },
    #[error("{what} must have length {expected}, got {got}")]
    DimensionMismatch {
        what: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("sum deficit {s} outside [0, {len}]")]
    InfeasibleDeficit { s: f64, len: usize },
    #[error("infeasible point: {0}")]
    InfeasiblePoint(String),
    #[error("multiplexing gain must be nonnegative, got {0}")]
    NegativeRate(f64),
}

/// Antenna counts of the three-node relay network.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct AntennaConfig {
    /// Source antennas.
    pub m: usize,
    /// Relay antennas.
    pub k: usize,
    /// Destination antennas.
    pub n: usize,
}

impl AntennaConfig {
    pub fn new(m: usize, k: usize, n: usize) -> Result<Self, ExponentError> {
        if m == 0 || k == 0 || n == 0 {
            return Err(ExponentError::InvalidAntennas { m, k, n });
        }
        Ok(Self { m, k, n })
    }

    /// Source–destination eigenvalue count, `min(m, n)`.
    pub fn p(&self) -> usize {
        self.m.min(self.n)
    }

    /// Relay–destination eigenvalue count, `min(k, n)`.
    pub fn q(&self) -> usize {
        self.k.min(self.n)
    }

    /// Source–relay eigenvalue count, `min(k, m)`.
    pub fn t(&self) -> usize {
        self.k.min(self.m)
    }

    /// Largest multiplexing gain with nonzero diversity, `min(m, n)`.
    pub fn max_mux(&self) -> f64 {
        self.p() as f64
    }
}

/// A point in exponent space: ordered, clamped decay-order vectors.
#[derive(Debug, Clone, PartialEq)]
pub struct ExponentPoint {
    /// Source–destination orders, length `p`, nondecreasing in `[0, 1]`.
    pub alpha: Vec<f64>,
    /// Relay–destination orders, length `q`, nondecreasing in `[0, 1]`.
    pub beta: Vec<f64>,
    /// Source–relay orders, length `t`, nondecreasing in `[0, 1]`.
    pub gamma: Vec<f64>,
}

/// Extended real used for the hard constraint `φ(x, y)`: finite values plus
/// a saturating +∞ marker, so infeasible branches never overflow floats.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ExtReal {
    Finite(f64),
    PosInf,
}

impl ExtReal {
    pub fn plus(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a + b),
            _ => ExtReal::PosInf,
        }
    }

    pub fn min(self, rhs: ExtReal) -> ExtReal {
        match (self, rhs) {
            (ExtReal::Finite(a), ExtReal::Finite(b)) => ExtReal::Finite(a.min(b)),
            (ExtReal::Finite(a), ExtReal::PosInf) => ExtReal::Finite(a),
            (ExtReal::PosInf, x) => x,
        }
    }

    pub fn is_finite(self) -> bool {
        matches!(self, ExtReal::Finite(_))
    }

    /// Finite payload, if any.
    pub fn finite(self) -> Option<f64> {
        match self {
            ExtReal::Finite(v) => Some(v),
            ExtReal::PosInf => None,
        }
    }
}

impl From<f64> for ExtReal {
    fn from(v: f64) -> Self {
        ExtReal::Finite(v)
    }
}

/// Hard indicator: 0 when `x < y`, +∞ otherwise.
pub fn varphi(x: f64, y: f64) -> ExtReal {
    if x < y {
        ExtReal::Finite(0.0)
    } else {
        ExtReal::PosInf
    }
}

/// Compensated (Kahan) accumulator for the short exponent sums.
#[derive(Default)]
struct Kahan {
    sum: f64,
    c: f64,
}

impl Kahan {
    fn add(&mut self, x: f64) {
        let y = x - self.c;
        let t = self.sum + y;
        self.c = (t - self.sum) - y;
        self.sum = t;
    }

    fn value(&self) -> f64 {
        self.sum
    }
}

#[inline]
fn pos(x: f64) -> f64 {
    x.max(0.0)
}

/// Extremal ordered exponent vector for a given sum deficit:
/// `v_i = (1 − (s − i + 1)^+)^+` for `i = 1..len`, so `Σ (1 − v_i) = s`.
///
/// Intuitively this "fills" the deficit into the smallest-index components
/// first, which is where it costs the least in the objective.
pub fn phi_vector(s: f64, len: usize) -> Result<Vec<f64>, ExponentError> {
    if !s.is_finite() || s < -FEAS_TOL || s > len as f64 + FEAS_TOL {
        return Err(ExponentError::InfeasibleDeficit { s, len });
    }
    let s = s.clamp(0.0, len as f64);
    Ok((1..=len)
        .map(|i| pos(1.0 - pos(s - i as f64 + 1.0)).min(1.0))
        .collect())
}

/// Joint decay exponent of the ordered source–destination orders `ᾱ` and
/// relay–destination orders `β̄`:
///
/// `E = Σ_i [(m+n−2i+1) α_i − k (1−α_i)^+]
///    + Σ_j (k+n−2j+1) β_j
///    + Σ_j Σ_{i ≤ min(n−j, m)} (1 − α_i − β_j)^+`
#[allow(non_snake_case)] // E is the functional's name in the literature
pub fn exponent_E(
    cfg: AntennaConfig,
    alpha: &[f64],
    beta: &[f64],
) -> Result<f64, ExponentError> {
    let (p, q) = (cfg.p(), cfg.q());
    if alpha.len() != p {
        return Err(ExponentError::DimensionMismatch {
            what: "alpha",
            expected: p,
            got: alpha.len(),
        });
    }
    if beta.len() != q {
        return Err(ExponentError::DimensionMismatch {
            what: "beta",
            expected: q,
            got: beta.len(),
        });
    }
    let (m, k, n) = (cfg.m, cfg.k, cfg.n);
    let mut acc = Kahan::default();
    for (i, &a) in alpha.iter().enumerate() {
        let coeff = (m + n + 1 - 2 * (i + 1)) as f64;
        acc.add(coeff * a - k as f64 * pos(1.0 - a));
    }
    for (j, &b) in beta.iter().enumerate() {
        let coeff = (k + n + 1 - 2 * (j + 1)) as f64;
        acc.add(coeff * b);
    }
    for (j, &b) in beta.iter().enumerate() {
        let imax = n.saturating_sub(j + 1).min(m);
        for &a in &alpha[..imax] {
            acc.add(pos(1.0 - a - b));
        }
    }
    Ok(acc.value())
}

/// Membership in the support set of the joint exponent distribution:
/// both vectors nonnegative and nondecreasing, and `α_i + β_j ≥ 1`
/// whenever `i + j ≥ n + 1`.
#[allow(non_snake_case)] // 𝒜 is the set's name in the literature
pub fn in_support_A(alpha: &[f64], beta: &[f64], n: usize) -> bool {
    let ordered = |v: &[f64]| {
        v.iter().all(|&x| x >= -SUPPORT_TOL)
            && v.windows(2).all(|w| w[1] >= w[0] - SUPPORT_TOL)
    };
    if !ordered(alpha) || !ordered(beta) {
        return false;
    }
    for (i, &a) in alpha.iter().enumerate() {
        for (j, &b) in beta.iter().enumerate() {
            if (i + 1) + (j + 1) > n && a + b < 1.0 - SUPPORT_TOL {
                return false;
            }
        }
    }
    true
}

/// Full objective: `F = E(ᾱ, β̄) + Σ_l (k+m−2l+1) γ_l`.
#[allow(non_snake_case)] // F is the functional's name in the literature
pub fn objective_F(cfg: AntennaConfig, pt: &ExponentPoint) -> Result<f64, ExponentError> {
    let t = cfg.t();
    if pt.gamma.len() != t {
        return Err(ExponentError::DimensionMismatch {
            what: "gamma",
            expected: t,
            got: pt.gamma.len(),
        });
    }
    let mut acc = Kahan::default();
    acc.add(exponent_E(cfg, &pt.alpha, &pt.beta)?);
    for (l, &g) in pt.gamma.iter().enumerate() {
        let coeff = (cfg.k + cfg.m + 1 - 2 * (l + 1)) as f64;
        acc.add(coeff * g);
    }
    Ok(acc.value())
}

/// Scalarized objective along the extremal rays:
/// `G(r, b, y) = F(φ(a, p), φ(b, q), φ(y, t))` with `a = r − b (1 − r/y)`.
///
/// `y` is the decoded-rate deficit of the source–relay link and `b` the
/// relay–destination deficit; `a` follows from the rate constraint.
#[allow(non_snake_case)] // G is the functional's name in the literature
pub fn objective_G(
    cfg: AntennaConfig,
    r: f64,
    b: f64,
    y: f64,
) -> Result<f64, ExponentError> {
    if r < 0.0 {
        return Err(ExponentError::NegativeRate(r));
    }
    // y = r is admitted as the closure of the feasible region: the b term
    // vanishes there and G reduces to F(φ(r), φ(b), φ(y)) continuously.
    if !(y > 0.0) || y < r - FEAS_TOL {
        return Err(ExponentError::InfeasiblePoint(format!(
            "y = {y} must be positive and at least r = {r}"
        )));
    }
    let (p, q, t) = (cfg.p(), cfg.q(), cfg.t());
    if b < -FEAS_TOL || b > q as f64 + FEAS_TOL {
        return Err(ExponentError::InfeasiblePoint(format!(
            "b = {b} outside [0, {q}]"
        )));
    }
    if y > t as f64 + FEAS_TOL {
        return Err(ExponentError::InfeasiblePoint(format!(
            "y = {y} outside (r, {t}]"
        )));
    }
    let b = b.clamp(0.0, q as f64);
    let y = y.min(t as f64);
    let a = r - b * (1.0 - r / y);
    if a < -FEAS_TOL {
        return Err(ExponentError::InfeasiblePoint(format!(
            "derived a = {a} is negative at (r={r}, b={b}, y={y})"
        )));
    }
    if a > p as f64 + FEAS_TOL {
        return Err(ExponentError::InfeasiblePoint(format!(
            "derived a = {a} exceeds p = {p}"
        )));
    }
    let a = a.clamp(0.0, p as f64);
    let pt = ExponentPoint {
        alpha: phi_vector(a, p)?,
        beta: phi_vector(b, q)?,
        gamma: phi_vector(y, t)?,
    };
    objective_F(cfg, &pt)
}

/// Reduced objective valid on the face `a + b = n`, where the cross terms
/// pair up exactly: `Σ_i (m+n+1−2i) α̂_i + Σ_l (m+k+1−2l) γ̂_l`.
pub(crate) fn claim1_reduced(cfg: AntennaConfig, a: f64, y: f64) -> Result<f64, ExponentError> {
    let (p, t) = (cfg.p(), cfg.t());
    let alpha = phi_vector(a, p)?;
    let gamma = phi_vector(y, t)?;
    let mut acc = Kahan::default();
    for (i, &ai) in alpha.iter().enumerate() {
        acc.add((cfg.m + cfg.n + 1 - 2 * (i + 1)) as f64 * ai);
    }
    for (l, &g) in gamma.iter().enumerate() {
        acc.add((cfg.m + cfg.k + 1 - 2 * (l + 1)) as f64 * g);
    }
    Ok(acc.value())
}

/// Relay decision fraction `f = min{1, r / Σ (1−γ_i)^+}`, with the
/// conventions `f = 0` at `r = 0` (zero rate decodes immediately) and
/// `f = 1` when the denominator vanishes (the relay never decodes).
pub fn compute_f(r: f64, gamma: &[f64]) -> Result<f64, ExponentError> {
    if r < 0.0 {
        return Err(ExponentError::NegativeRate(r));
    }
    if r == 0.0 {
        return Ok(0.0);
    }
    let denom: f64 = gamma.iter().map(|&g| pos(1.0 - g)).sum();
    if denom <= 0.0 {
        return Ok(1.0);
    }
    Ok((r / denom).min(1.0))
}
