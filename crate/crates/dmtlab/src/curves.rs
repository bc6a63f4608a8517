//! Piecewise-linear diversity–multiplexing tradeoff curves.
//!
//! A DMT curve maps multiplexing gain `r` to diversity order `d(r)`. Every
//! curve handled by this crate is finite, nonnegative and nonincreasing in
//! `r`; it is stored as a breakpoint list and evaluated by linear
//! interpolation. The point-to-point baseline `d_{m,n}(r)` connects the
//! integer lattice points `(j, (m−j)(n−j))` and is the building block for
//! the relay bounds assembled elsewhere.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Tolerance for deciding whether two affine pieces cross (and for merging
/// nearly identical knots) inside [`PiecewiseLinearCurve::pointwise_min`].
pub const CROSSING_TOL: f64 = 1e-12;

/// Slack allowed by the nonincreasing check. Sampled curves carry outer-
/// search noise of roughly the solver refinement tolerance.
pub const MONOTONE_SLACK: f64 = 1e-6;

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("antenna counts must be positive, got ({m}, {n})")]
    InvalidAntennas { m: usize, n: usize },
    #[error("a curve needs at least two breakpoints, got {0}")]
    TooFewBreakpoints(usize),
    #[error("breakpoints must be finite, nonnegative and strictly increasing in r")]
    MalformedBreakpoints,
    #[error("diversity must be nonincreasing in r (rises near r = {r})")]
    IncreasingDiversity { r: f64 },
    #[error("r = {r} lies outside the curve domain [{lo}, {hi}]")]
    OutOfDomain { r: f64, lo: f64, hi: f64 },
    #[error("curve domains [{a_lo}, {a_hi}] and [{b_lo}, {b_hi}] do not overlap")]
    DisjointDomains {
        a_lo: f64,
        a_hi: f64,
        b_lo: f64,
        b_hi: f64,
    },
}

/// A nonincreasing piecewise-linear curve `r ↦ d(r)`.
///
/// `exact` records whether the breakpoints are analytic (closed forms,
/// point-to-point baselines, mins thereof) or samples of a numeric solve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PiecewiseLinearCurve {
    /// `(r, d)` pairs with strictly increasing `r`.
    pub breakpoints: Vec<(f64, f64)>,
    /// True when the breakpoints are exact rather than sampled.
    pub exact: bool,
}

impl PiecewiseLinearCurve {
    /// Validates and wraps a breakpoint list.
    pub fn new(breakpoints: Vec<(f64, f64)>, exact: bool) -> Result<Self, CurveError> {
        if breakpoints.len() < 2 {
            return Err(CurveError::TooFewBreakpoints(breakpoints.len()));
        }
        for &(r, d) in &breakpoints {
            if !r.is_finite() || !d.is_finite() || r < 0.0 || d < 0.0 {
                return Err(CurveError::MalformedBreakpoints);
            }
        }
        for w in breakpoints.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(CurveError::MalformedBreakpoints);
            }
            if w[1].1 > w[0].1 + MONOTONE_SLACK {
                return Err(CurveError::IncreasingDiversity { r: w[1].0 });
            }
        }
        Ok(Self { breakpoints, exact })
    }

    /// Domain of definition `[r_first, r_last]`.
    pub fn domain(&self) -> (f64, f64) {
        (
            self.breakpoints[0].0,
            self.breakpoints[self.breakpoints.len() - 1].0,
        )
    }

    /// Linear interpolation; exact at breakpoints.
    pub fn eval(&self, r: f64) -> Result<f64, CurveError> {
        let (lo, hi) = self.domain();
        if !(r >= lo && r <= hi) {
            return Err(CurveError::OutOfDomain { r, lo, hi });
        }
        match self
            .breakpoints
            .binary_search_by(|p| p.0.partial_cmp(&r).expect("finite breakpoints"))
        {
            Ok(i) => Ok(self.breakpoints[i].1),
            Err(i) => {
                // r is strictly between breakpoints i−1 and i.
                let (r0, d0) = self.breakpoints[i - 1];
                let (r1, d1) = self.breakpoints[i];
                let w = (r - r0) / (r1 - r0);
                Ok(d0 + w * (d1 - d0))
            }
        }
    }

    /// Exact pointwise minimum of two curves on their overlapping domain.
    ///
    /// Knots of both inputs are kept and a new breakpoint is inserted
    /// wherever the two curves cross in the interior of a segment. The
    /// result is exact iff both inputs are.
    pub fn pointwise_min(&self, other: &Self) -> Result<Self, CurveError> {
        let (a_lo, a_hi) = self.domain();
        let (b_lo, b_hi) = other.domain();
        let lo = a_lo.max(b_lo);
        let hi = a_hi.min(b_hi);
        if !(lo < hi) {
            return Err(CurveError::DisjointDomains {
                a_lo,
                a_hi,
                b_lo,
                b_hi,
            });
        }

        let mut knots: Vec<f64> = self
            .breakpoints
            .iter()
            .chain(other.breakpoints.iter())
            .map(|p| p.0)
            .filter(|&x| x >= lo && x <= hi)
            .chain([lo, hi])
            .collect();
        knots.sort_by(|a, b| a.partial_cmp(b).expect("finite knots"));
        knots.dedup_by(|a, b| (*a - *b).abs() <= CROSSING_TOL);

        let mut out: Vec<(f64, f64)> = Vec::with_capacity(knots.len() + 4);
        for (idx, &x) in knots.iter().enumerate() {
            let fa = self.eval(x)?;
            let fb = other.eval(x)?;
            out.push((x, fa.min(fb)));
            if idx + 1 == knots.len() {
                break;
            }
            // Both curves are affine on (x, x_next); insert the crossing if
            // the difference changes sign decisively.
            let xn = knots[idx + 1];
            let d0 = fa - fb;
            let d1 = self.eval(xn)? - other.eval(xn)?;
            if (d0 > CROSSING_TOL && d1 < -CROSSING_TOL)
                || (d0 < -CROSSING_TOL && d1 > CROSSING_TOL)
            {
                let xc = x + (xn - x) * d0 / (d0 - d1);
                if xc - x > CROSSING_TOL && xn - xc > CROSSING_TOL {
                    let v = self.eval(xc)?.min(other.eval(xc)?);
                    out.push((xc, v));
                }
            }
        }
        Self::new(out, self.exact && other.exact)
    }

    /// CSV rendering with header `r,d`, '.' decimal separator.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("r,d\n");
        for &(r, d) in &self.breakpoints {
            s.push_str(&format!("{r},{d}\n"));
        }
        s
    }

    /// JSON rendering: `{"breakpoints": [[r, d], …], "exact": bool}`.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("curve serializes")
    }
}

/// Point-to-point MIMO tradeoff `d_{m,n}(r)`: the piecewise-linear curve
/// through `(j, (m−j)(n−j))` at integer `j = 0 … min(m,n)`.
pub fn ptp_dmt(m: usize, n: usize) -> Result<PiecewiseLinearCurve, CurveError> {
    if m == 0 || n == 0 {
        return Err(CurveError::InvalidAntennas { m, n });
    }
    let pts = (0..=m.min(n))
        .map(|j| (j as f64, ((m - j) * (n - j)) as f64))
        .collect();
    PiecewiseLinearCurve::new(pts, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn curve(pts: &[(f64, f64)]) -> PiecewiseLinearCurve {
        PiecewiseLinearCurve::new(pts.to_vec(), true).unwrap()
    }

    #[test]
    fn ptp_breakpoints_match_lattice() {
        assert_eq!(ptp_dmt(1, 1).unwrap().breakpoints, vec![(0.0, 1.0), (1.0, 0.0)]);
        assert_eq!(
            ptp_dmt(2, 2).unwrap().breakpoints,
            vec![(0.0, 4.0), (1.0, 1.0), (2.0, 0.0)]
        );
        assert_eq!(ptp_dmt(2, 1).unwrap().breakpoints, vec![(0.0, 2.0), (1.0, 0.0)]);
    }

    #[test]
    fn ptp_rejects_zero_antennas() {
        assert!(matches!(
            ptp_dmt(0, 3),
            Err(CurveError::InvalidAntennas { .. })
        ));
    }

    #[test]
    fn ptp_transpose_symmetry() {
        for m in 1..=4usize {
            for n in 1..=4usize {
                let a = ptp_dmt(m, n).unwrap();
                let b = ptp_dmt(n, m).unwrap();
                assert_eq!(a.breakpoints, b.breakpoints, "({m},{n})");
            }
        }
    }

    #[test]
    fn eval_examples() {
        let c22 = ptp_dmt(2, 2).unwrap();
        assert_eq!(c22.eval(0.5).unwrap(), 2.5);
        assert_eq!(c22.eval(2.0).unwrap(), 0.0);
        assert_eq!(ptp_dmt(1, 1).unwrap().eval(1.0).unwrap(), 0.0);
        assert!(matches!(
            c22.eval(2.5),
            Err(CurveError::OutOfDomain { .. })
        ));
        assert!(matches!(
            c22.eval(-0.1),
            Err(CurveError::OutOfDomain { .. })
        ));
    }

    #[test]
    fn eval_exact_at_breakpoints_and_above_chord_function() {
        // The interpolation of the convex function (m−r)(n−r) lies on or
        // above it, with equality at integers.
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for (m, n) in [(2usize, 2usize), (3, 2), (4, 4), (3, 1)] {
            let c = ptp_dmt(m, n).unwrap();
            let p = m.min(n) as f64;
            for _ in 0..200 {
                let r: f64 = rng.gen::<f64>() * p;
                let v = c.eval(r).unwrap();
                let f = (m as f64 - r) * (n as f64 - r);
                assert!(v >= f - 1e-12, "({m},{n}) at r={r}: {v} < {f}");
            }
            for j in 0..=m.min(n) {
                let v = c.eval(j as f64).unwrap();
                assert_eq!(v, ((m - j) * (n - j)) as f64);
            }
        }
    }

    #[test]
    fn min_inserts_crossing_breakpoint() {
        let a = curve(&[(0.0, 4.0), (1.0, 0.0)]);
        let b = curve(&[(0.0, 2.0), (1.0, 2.0)]);
        let m = a.pointwise_min(&b).unwrap();
        assert_eq!(m.breakpoints, vec![(0.0, 2.0), (0.5, 2.0), (1.0, 0.0)]);
        assert!(m.exact);
    }

    #[test]
    fn min_is_idempotent() {
        let c = ptp_dmt(3, 2).unwrap();
        let m = c.pointwise_min(&c).unwrap();
        assert_eq!(m, c);
    }

    #[test]
    fn min_rejects_disjoint_domains() {
        let a = curve(&[(0.0, 2.0), (1.0, 1.0)]);
        let b = curve(&[(2.0, 2.0), (3.0, 1.0)]);
        assert!(matches!(
            a.pointwise_min(&b),
            Err(CurveError::DisjointDomains { .. })
        ));
    }

    #[test]
    fn min_never_exceeds_either_input() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let a = ptp_dmt(3, 3).unwrap();
        let b = curve(&[(0.0, 5.0), (0.7, 4.0), (2.2, 0.1), (3.0, 0.0)]);
        let m = a.pointwise_min(&b).unwrap();
        for _ in 0..100 {
            let r: f64 = rng.gen::<f64>() * 3.0;
            let v = m.eval(r).unwrap();
            let lim = a.eval(r).unwrap().min(b.eval(r).unwrap());
            assert!(v <= lim + 1e-12, "min exceeds inputs at r={r}");
        }
    }

    #[test]
    fn construction_rejects_bad_breakpoints() {
        assert!(matches!(
            PiecewiseLinearCurve::new(vec![(0.0, 1.0)], true),
            Err(CurveError::TooFewBreakpoints(1))
        ));
        assert!(matches!(
            PiecewiseLinearCurve::new(vec![(0.0, 1.0), (0.0, 0.5)], true),
            Err(CurveError::MalformedBreakpoints)
        ));
        assert!(matches!(
            PiecewiseLinearCurve::new(vec![(0.0, 1.0), (1.0, f64::NAN)], true),
            Err(CurveError::MalformedBreakpoints)
        ));
        assert!(matches!(
            PiecewiseLinearCurve::new(vec![(0.0, 1.0), (1.0, 2.0)], true),
            Err(CurveError::IncreasingDiversity { .. })
        ));
    }

    #[test]
    fn csv_and_json_round_trip() {
        let c = ptp_dmt(2, 2).unwrap();
        let csv = c.to_csv();
        assert!(csv.starts_with("r,d\n"));
        assert_eq!(csv.lines().count(), 4);
        assert!(csv.contains("1,1"));

        let json = c.to_json();
        assert_eq!(json["exact"], serde_json::json!(true));
        assert_eq!(json["breakpoints"][0][1], serde_json::json!(4.0));
        let back: PiecewiseLinearCurve = serde_json::from_value(json).unwrap();
        assert_eq!(back, c);
    }
}
