//! Symmetric log-concave probability measures on the real line.
//!
//! A measure is described by its density `f`, cdf `F`, quantile `F^{-1}`, and
//! isoperimetric profile `J(r) = f(F^{-1}(r))`, all exposed through
//! [`MeasureModel`]. Three families have closed forms (Gaussian, logistic,
//! Laplace); arbitrary symmetric measures are described by their profile
//! alone, from which the quantile is recovered as
//! `F^{-1}(r) = int_{1/2}^r dt / J(t)` by adaptive quadrature.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quad;
use crate::special;

/// Default absolute tolerance on probability-scale quantities.
pub const DEFAULT_PROB_TOL: f64 = 1e-12;

/// Default half-width of the refused quantile band for profile-defined
/// measures: quantiles are only resolved for `p` in `[eps, 1-eps]`.
pub const DEFAULT_QUANTILE_EPS: f64 = 1e-9;

/// Profile data for a measure given without closed forms.
#[derive(Clone)]
pub enum ProfileSpec {
    /// Piecewise-linear profile through `(t, J(t))` knots. The first knot
    /// must sit at `t = 0` and the last at `t = 1`; their values act as
    /// one-sided limits (the profile itself vanishes at the closed ends).
    Knots(Vec<(f64, f64)>),
    /// The profile as a function on (0, 1).
    Function(Arc<dyn Fn(f64) -> f64 + Send + Sync>),
}

impl ProfileSpec {
    fn raw(&self, t: f64) -> f64 {
        match self {
            ProfileSpec::Knots(knots) => {
                // binary search for the containing segment
                let mut lo = 0;
                let mut hi = knots.len() - 1;
                while hi - lo > 1 {
                    let mid = (lo + hi) / 2;
                    if knots[mid].0 <= t {
                        lo = mid;
                    } else {
                        hi = mid;
                    }
                }
                let (t0, v0) = knots[lo];
                let (t1, v1) = knots[hi];
                v0 + (v1 - v0) * ((t - t0) / (t1 - t0))
            }
            ProfileSpec::Function(f) => f(t),
        }
    }
}

impl fmt::Debug for ProfileSpec {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProfileSpec::Knots(k) => write!(out, "Knots({} points)", k.len()),
            ProfileSpec::Function(_) => write!(out, "Function"),
        }
    }
}

/// Precomputed quantile table for a profile-defined measure.
///
/// `qs[i]` is the quantile at probability `ps[i]`; the grid runs from the
/// band edge `eps` up to exactly `1/2` (where the quantile is 0), and every
/// profile kink is a grid node, so local integrals never cross a kink.
#[derive(Clone, Debug)]
struct CustomMeasure {
    spec: ProfileSpec,
    ps: Vec<f64>,
    qs: Vec<f64>,
}

impl CustomMeasure {
    fn folded(&self, t: f64) -> f64 {
        self.spec.raw(t.min(1.0 - t))
    }

    /// Quantile for p in [eps, 1/2]: table node plus a short local integral.
    fn quantile_left(&self, p: f64) -> f64 {
        if p >= 0.5 {
            return 0.0;
        }
        let i = match self.ps.binary_search_by(|v| v.partial_cmp(&p).unwrap()) {
            Ok(i) => return self.qs[i],
            Err(i) => i - 1,
        };
        let inv_j = |t: f64| 1.0 / self.folded(t);
        self.qs[i] + quad::integrate(&inv_j, self.ps[i], p, 1e-13, &[])
    }

    /// Solves `quantile_left(p) = x` for x in (support_lo, 0], clamping to
    /// the band edges outside the resolvable range.
    fn cdf_left(&self, x: f64, prob_tol: f64) -> f64 {
        if x >= 0.0 {
            return 0.5;
        }
        if x <= self.qs[0] {
            return self.ps[0];
        }
        let j = match self.qs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(j) => return self.ps[j],
            Err(j) => j - 1,
        };
        let base = self.ps[j];
        let (mut lo, mut hi) = (base, self.ps[j + 1]);
        let (qlo, qhi) = (self.qs[j], self.qs[j + 1]);
        let inv_j = |t: f64| 1.0 / self.folded(t);
        let mut p = lo + (x - qlo) / (qhi - qlo) * (hi - lo);
        for _ in 0..80 {
            let q_p = if p > base {
                qlo + quad::integrate(&inv_j, base, p, 1e-14, &[])
            } else {
                qlo
            };
            let err = q_p - x;
            let dens = self.folded(p);
            if err.abs() * dens <= 0.5 * prob_tol || hi - lo <= f64::EPSILON * p {
                break;
            }
            if err > 0.0 {
                hi = p;
            } else {
                lo = p;
            }
            let next = p - err * dens;
            p = if next > lo && next < hi {
                next
            } else {
                0.5 * (lo + hi)
            };
        }
        p
    }
}

#[derive(Clone, Debug)]
enum Family {
    Gaussian,
    Logistic { scale: f64 },
    Laplace { rate: f64 },
    Custom(CustomMeasure),
}

/// A symmetric probability measure with log-concave density.
#[derive(Clone)]
pub struct MeasureModel {
    family: Family,
    prob_tol: f64,
    quantile_eps: f64,
}

impl fmt::Debug for MeasureModel {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(out, "MeasureModel({})", self.describe())
    }
}

impl MeasureModel {
    /// Standard Gaussian measure.
    pub fn gaussian() -> Self {
        MeasureModel {
            family: Family::Gaussian,
            prob_tol: DEFAULT_PROB_TOL,
            quantile_eps: DEFAULT_QUANTILE_EPS,
        }
    }

    /// Logistic measure with density `e^{-|x|/s} / (s (1 + e^{-|x|/s})^2)`.
    pub fn logistic(scale: f64) -> Result<Self> {
        if !(scale.is_finite() && scale > 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "logistic scale must be a positive finite number, got {scale}"
            )));
        }
        Ok(MeasureModel {
            family: Family::Logistic { scale },
            prob_tol: DEFAULT_PROB_TOL,
            quantile_eps: DEFAULT_QUANTILE_EPS,
        })
    }

    /// Two-sided exponential measure with density `c/2 e^{-c|x|}`.
    pub fn laplace(rate: f64) -> Result<Self> {
        if !(rate.is_finite() && rate > 0.0) {
            return Err(Error::InvalidMeasure(format!(
                "laplace rate must be a positive finite number, got {rate}"
            )));
        }
        Ok(MeasureModel {
            family: Family::Laplace { rate },
            prob_tol: DEFAULT_PROB_TOL,
            quantile_eps: DEFAULT_QUANTILE_EPS,
        })
    }

    /// Measure defined by its isoperimetric profile alone.
    ///
    /// The profile must be finite, symmetric about 1/2 (checked on a grid to
    /// within 1e-9 relative), and strictly positive on (0, 1). Concavity is
    /// deliberately not required here; use [`check_profile_concavity`] to
    /// test it, so that non-log-concave profiles can be constructed and shown
    /// to break the inequalities.
    pub fn custom_profile(spec: ProfileSpec) -> Result<Self> {
        Self::custom_profile_with(spec, DEFAULT_PROB_TOL, DEFAULT_QUANTILE_EPS)
    }

    fn custom_profile_with(spec: ProfileSpec, prob_tol: f64, quantile_eps: f64) -> Result<Self> {
        validate_profile_spec(&spec)?;
        let custom = build_custom_tables(spec, quantile_eps);
        Ok(MeasureModel {
            family: Family::Custom(custom),
            prob_tol,
            quantile_eps,
        })
    }

    /// Replaces the numeric tolerances, rebuilding internal tables if needed.
    pub fn with_tolerances(self, prob_tol: f64, quantile_eps: f64) -> Result<Self> {
        if !(prob_tol.is_finite() && prob_tol >= 1e-14 && prob_tol <= 1e-6) {
            return Err(Error::Config(format!(
                "prob_tol must lie in [1e-14, 1e-6], got {prob_tol}"
            )));
        }
        if !(quantile_eps.is_finite() && quantile_eps > 0.0 && quantile_eps <= 1e-3) {
            return Err(Error::Config(format!(
                "quantile_eps must lie in (0, 1e-3], got {quantile_eps}"
            )));
        }
        match self.family {
            Family::Custom(custom) => {
                Self::custom_profile_with(custom.spec, prob_tol, quantile_eps)
            }
            family => Ok(MeasureModel {
                family,
                prob_tol,
                quantile_eps,
            }),
        }
    }

    pub fn prob_tol(&self) -> f64 {
        self.prob_tol
    }

    pub fn quantile_eps(&self) -> f64 {
        self.quantile_eps
    }

    /// True when density, cdf, and quantile all have closed forms.
    pub fn has_closed_form(&self) -> bool {
        !matches!(self.family, Family::Custom(_))
    }

    /// Short human-readable tag for reports.
    pub fn describe(&self) -> String {
        match &self.family {
            Family::Gaussian => "gaussian".to_owned(),
            Family::Logistic { scale } => format!("logistic(scale={scale})"),
            Family::Laplace { rate } => format!("laplace(rate={rate})"),
            Family::Custom(c) => match &c.spec {
                ProfileSpec::Knots(k) => format!("custom-profile(knots={})", k.len()),
                ProfileSpec::Function(_) => "custom-profile(function)".to_owned(),
            },
        }
    }

    /// Support of the density. Closed-form families live on the whole line;
    /// profile-defined measures report the effective support, the range of
    /// quantiles resolvable within the band `[eps, 1-eps]`.
    pub fn support(&self) -> (f64, f64) {
        match &self.family {
            Family::Custom(c) => (c.qs[0], -c.qs[0]),
            _ => (f64::NEG_INFINITY, f64::INFINITY),
        }
    }

    /// Density at `x`. Even in `x`; at the edges of a bounded effective
    /// support this returns the one-sided limit, and outside it returns 0.
    pub fn density(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let ax = x.abs();
        match &self.family {
            Family::Gaussian => special::norm_pdf(ax),
            Family::Logistic { scale } => {
                if ax == f64::INFINITY {
                    return 0.0;
                }
                let e = (-ax / scale).exp();
                let d = 1.0 + e;
                e / (scale * d * d)
            }
            Family::Laplace { rate } => {
                if ax == f64::INFINITY {
                    return 0.0;
                }
                0.5 * rate * (-rate * ax).exp()
            }
            Family::Custom(c) => {
                if ax > -c.qs[0] {
                    return 0.0;
                }
                let p = c.cdf_left(-ax, self.prob_tol);
                c.folded(p)
            }
        }
    }

    /// Cumulative distribution function. Total on the extended line;
    /// antisymmetric about 0. For profile-defined measures the value is
    /// clamped to the resolvable band `[eps, 1-eps]` outside the effective
    /// support.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        match &self.family {
            Family::Gaussian => special::norm_cdf(x),
            Family::Logistic { scale } => {
                if x == f64::NEG_INFINITY {
                    return 0.0;
                }
                if x == f64::INFINITY {
                    return 1.0;
                }
                if x <= 0.0 {
                    let e = (x / scale).exp();
                    e / (1.0 + e)
                } else {
                    1.0 / (1.0 + (-x / scale).exp())
                }
            }
            Family::Laplace { rate } => {
                if x == f64::NEG_INFINITY {
                    return 0.0;
                }
                if x == f64::INFINITY {
                    return 1.0;
                }
                if x <= 0.0 {
                    0.5 * (rate * x).exp()
                } else {
                    1.0 - 0.5 * (-rate * x).exp()
                }
            }
            Family::Custom(c) => {
                if x <= 0.0 {
                    c.cdf_left(x, self.prob_tol)
                } else {
                    1.0 - c.cdf_left(-x, self.prob_tol)
                }
            }
        }
    }

    /// Quantile function, the inverse of [`cdf`](Self::cdf) to within
    /// `prob_tol` on the probability scale. Exactly antisymmetric:
    /// `quantile(1-p) == -quantile(p)`, and `quantile(1/2) == 0`.
    ///
    /// Errors with [`Error::QuantileOutOfBand`] when `p` is outside (0, 1),
    /// or outside `[eps, 1-eps]` for a profile-defined measure.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::QuantileOutOfBand { p, band: 0.0 });
        }
        if p == 0.5 {
            return Ok(0.0);
        }
        if p > 0.5 {
            // 1 - p is exact for p in [1/2, 1]
            return Ok(-self.quantile_left(1.0 - p)?);
        }
        self.quantile_left(p)
    }

    fn quantile_left(&self, p: f64) -> Result<f64> {
        match &self.family {
            Family::Gaussian => Ok(special::norm_quantile(p)),
            Family::Logistic { scale } => Ok(scale * (p / (1.0 - p)).ln()),
            Family::Laplace { rate } => Ok((2.0 * p).ln() / rate),
            Family::Custom(c) => {
                if p < self.quantile_eps {
                    return Err(Error::QuantileOutOfBand {
                        p,
                        band: self.quantile_eps,
                    });
                }
                Ok(c.quantile_left(p))
            }
        }
    }

    /// Isoperimetric profile `J(r) = f(F^{-1}(r))` for r in [0, 1].
    ///
    /// Evaluated as `J(min(r, 1-r))`, so the symmetry `J(r) = J(1-r)` holds
    /// exactly. The closed endpoints return 0 by convention even when the
    /// one-sided limit is positive (bounded support).
    pub fn profile(&self, r: f64) -> f64 {
        if r.is_nan() {
            return f64::NAN;
        }
        if r <= 0.0 || r >= 1.0 {
            return 0.0;
        }
        let t = r.min(1.0 - r);
        match &self.family {
            Family::Gaussian => special::norm_pdf(special::norm_quantile(t)),
            Family::Logistic { scale } => t * (1.0 - t) / scale,
            Family::Laplace { rate } => rate * t,
            Family::Custom(c) => c.folded(t),
        }
    }

    /// Tests the tail-growth condition: `J(t)/t` must strictly increase as
    /// `t` decreases through `(0, eps]`. Checked on a geometric grid from
    /// `eps` down to 1e-8 with relative margin 1e-10, so the two-sided
    /// exponential (constant ratio) is correctly rejected.
    pub fn satisfies_h(&self, eps: f64) -> Result<bool> {
        if !(eps.is_finite() && eps > 1e-7 && eps < 0.5) {
            return Err(Error::Config(format!(
                "tail neighborhood eps must lie in (1e-7, 0.5), got {eps}"
            )));
        }
        const STEPS: usize = 48;
        let shrink = (1e-8 / eps).powf(1.0 / STEPS as f64);
        let mut t = eps;
        let mut prev = self.profile(t) / t;
        for _ in 0..STEPS {
            t *= shrink;
            let ratio = self.profile(t) / t;
            if !(ratio > prev * (1.0 + 1e-10)) {
                return Ok(false);
            }
            prev = ratio;
        }
        Ok(true)
    }

    /// Builds a model from a parsed configuration.
    pub fn from_config(cfg: &MeasureConfig) -> Result<Self> {
        let base = match cfg.kind.as_str() {
            "gaussian" => {
                if cfg.params.scale.is_some() || cfg.params.rate.is_some() {
                    return Err(Error::Config(
                        "gaussian takes no parameters".to_owned(),
                    ));
                }
                MeasureModel::gaussian()
            }
            "logistic" => {
                if cfg.params.rate.is_some() {
                    return Err(Error::Config(
                        "logistic takes a scale, not a rate".to_owned(),
                    ));
                }
                MeasureModel::logistic(cfg.params.scale.unwrap_or(1.0))?
            }
            "laplace" => {
                if cfg.params.scale.is_some() {
                    return Err(Error::Config(
                        "laplace takes a rate, not a scale".to_owned(),
                    ));
                }
                MeasureModel::laplace(cfg.params.rate.unwrap_or(1.0))?
            }
            "custom" => {
                let knots = cfg.custom_profile.as_ref().ok_or_else(|| {
                    Error::Config("kind \"custom\" requires custom_profile knots".to_owned())
                })?;
                let knots: Vec<(f64, f64)> = knots.iter().map(|k| (k[0], k[1])).collect();
                MeasureModel::custom_profile(ProfileSpec::Knots(knots))?
            }
            other => {
                return Err(Error::Config(format!(
                    "unknown measure kind {other:?}; expected gaussian, logistic, laplace, or custom"
                )))
            }
        };
        if cfg.kind != "custom" && cfg.custom_profile.is_some() {
            return Err(Error::Config(
                "custom_profile is only valid with kind \"custom\"".to_owned(),
            ));
        }
        let prob_tol = cfg.prob_tol.unwrap_or(DEFAULT_PROB_TOL);
        let quantile_eps = cfg.quantile_eps.unwrap_or(DEFAULT_QUANTILE_EPS);
        base.with_tolerances(prob_tol, quantile_eps)
    }

    /// Parses a JSON configuration document and builds the model.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: MeasureConfig =
            serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        MeasureModel::from_config(&cfg)
    }
}

/// JSON-facing description of a measure.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureConfig {
    pub kind: String,
    #[serde(default)]
    pub params: MeasureParams,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub custom_profile: Option<Vec<[f64; 2]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub prob_tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quantile_eps: Option<f64>,
}

#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeasureParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rate: Option<f64>,
}

fn validate_profile_spec(spec: &ProfileSpec) -> Result<()> {
    if let ProfileSpec::Knots(knots) = spec {
        if knots.len() < 2 {
            return Err(Error::InvalidMeasure(
                "profile needs at least two knots".to_owned(),
            ));
        }
        if knots[0].0 != 0.0 || knots[knots.len() - 1].0 != 1.0 {
            return Err(Error::InvalidMeasure(
                "profile knots must start at t=0 and end at t=1".to_owned(),
            ));
        }
        for w in knots.windows(2) {
            if !(w[1].0 > w[0].0) {
                return Err(Error::InvalidMeasure(format!(
                    "knot abscissae must strictly increase, got {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(t, v) in knots {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "profile value at t={t} must be finite and nonnegative, got {v}"
                )));
            }
            if t > 0.0 && t < 1.0 && v == 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "profile must be strictly positive on (0,1); zero at t={t}"
                )));
            }
        }
    }
    // symmetry and positivity on a grid
    for k in 1..256 {
        let t = k as f64 / 256.0;
        let v = spec.raw(t);
        if !v.is_finite() || v <= 0.0 {
            return Err(Error::InvalidMeasure(format!(
                "profile must be finite and strictly positive on (0,1); J({t}) = {v}"
            )));
        }
        let w = spec.raw(1.0 - t);
        if (v - w).abs() > 1e-9 * v.abs().max(1.0) {
            return Err(Error::InvalidMeasure(format!(
                "profile must be symmetric about 1/2; J({t}) = {v} but J({}) = {w}",
                1.0 - t
            )));
        }
    }
    if let ProfileSpec::Function(f) = spec {
        for t in [1e-6, 1e-9] {
            let v = f(t);
            if !v.is_finite() || v <= 0.0 {
                return Err(Error::InvalidMeasure(format!(
                    "profile must stay finite and positive near 0; J({t:e}) = {v}"
                )));
            }
        }
    }
    Ok(())
}

fn build_custom_tables(spec: ProfileSpec, quantile_eps: f64) -> CustomMeasure {
    // grid: geometric from the band edge to 1/4, linear from 1/4 to 1/2,
    // with every folded kink inserted as a node
    let mut ps: Vec<f64> = Vec::new();
    let mut t = quantile_eps;
    while t < 0.25 {
        ps.push(t);
        t *= 2.0;
    }
    for i in 0..=32 {
        ps.push(0.25 + i as f64 * (0.25 / 32.0));
    }
    if let ProfileSpec::Knots(knots) = &spec {
        for &(t, _) in knots {
            let folded = t.min(1.0 - t);
            if folded > quantile_eps && folded < 0.5 {
                ps.push(folded);
            }
        }
    }
    ps.sort_by(|a, b| a.partial_cmp(b).unwrap());
    ps.dedup();
    debug_assert_eq!(*ps.last().unwrap(), 0.5);

    let inv_j = |t: f64| 1.0 / spec.raw(t.min(1.0 - t));
    let n = ps.len();
    let mut qs = vec![0.0; n];
    for i in (0..n - 1).rev() {
        qs[i] = qs[i + 1] - quad::integrate(&inv_j, ps[i], ps[i + 1], 1e-13, &[]);
    }
    CustomMeasure { spec, ps, qs }
}

/// Result of a grid concavity check of the profile.
#[derive(Debug, Clone, Serialize)]
pub struct ConcavityReport {
    /// True when no midpoint violation above 1e-11 was found.
    pub concave: bool,
    /// Largest value of `(J(a)+J(b))/2 - J((a+b)/2)` found (positive means
    /// a violation).
    pub worst_violation: f64,
    /// The pair `(a, b)` realizing the worst violation.
    pub at: (f64, f64),
}

/// Midpoint concavity test of the profile on a uniform grid of `grid_n`
/// cells over [0, 1]. Pairs up to `grid_n/4` cells apart are tested, with
/// midpoints landing exactly on grid nodes.
pub fn check_profile_concavity(measure: &MeasureModel, grid_n: usize) -> ConcavityReport {
    let n = grid_n.max(8);
    let vals: Vec<f64> = (0..=n).map(|i| measure.profile(i as f64 / n as f64)).collect();
    let mut worst = f64::NEG_INFINITY;
    let mut at = (0.0, 0.0);
    for gap in 1..=(n / 4).max(1) {
        for i in 0..=n - 2 * gap {
            let j = i + 2 * gap;
            let viol = 0.5 * (vals[i] + vals[j]) - vals[i + gap];
            if viol > worst {
                worst = viol;
                at = (i as f64 / n as f64, j as f64 / n as f64);
            }
        }
    }
    ConcavityReport {
        concave: worst <= 1e-11,
        worst_violation: worst,
        at,
    }
}
