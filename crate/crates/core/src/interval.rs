//! Finite unions of open intervals on the extended real line, with the
//! measure-theoretic functionals built on them: mass, perimeter, and
//! asymmetry relative to a [`MeasureModel`].

use serde::Serialize;

use crate::error::{Error, Result};
use crate::measure::MeasureModel;

/// A finite union of intervals in normalized form: components are sorted,
/// pairwise disjoint with gaps of positive length, and nonempty. Touching
/// components are merged, because a shared endpoint is not in the essential
/// boundary and must not be double counted by the perimeter.
#[derive(Clone, Debug, PartialEq)]
pub struct IntervalSet {
    comps: Vec<(f64, f64)>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { comps: Vec::new() }
    }

    pub fn full_line() -> Self {
        IntervalSet {
            comps: vec![(f64::NEG_INFINITY, f64::INFINITY)],
        }
    }

    pub fn left_half_line(b: f64) -> Self {
        IntervalSet::new(&[(f64::NEG_INFINITY, b)]).expect("half line")
    }

    pub fn right_half_line(a: f64) -> Self {
        IntervalSet::new(&[(a, f64::INFINITY)]).expect("half line")
    }

    pub fn interval(lo: f64, hi: f64) -> Result<Self> {
        IntervalSet::new(&[(lo, hi)])
    }

    /// Builds a normalized set from raw intervals. Empty intervals
    /// (`lo == hi`) are dropped; `lo > hi` or NaN endpoints are rejected.
    pub fn new(intervals: &[(f64, f64)]) -> Result<Self> {
        let mut comps: Vec<(f64, f64)> = Vec::with_capacity(intervals.len());
        for &(lo, hi) in intervals {
            if lo.is_nan() || hi.is_nan() || lo > hi {
                return Err(Error::InvalidInterval { lo, hi });
            }
            if lo < hi {
                comps.push((lo, hi));
            }
        }
        comps.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let mut merged: Vec<(f64, f64)> = Vec::with_capacity(comps.len());
        for (lo, hi) in comps {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        Ok(IntervalSet { comps: merged })
    }

    pub fn components(&self) -> &[(f64, f64)] {
        &self.comps
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn num_components(&self) -> usize {
        self.comps.len()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.comps.iter().any(|&(lo, hi)| lo < x && x < hi)
    }

    /// Finite endpoints in ascending order; this is the essential boundary.
    pub fn finite_endpoints(&self) -> Vec<f64> {
        let mut out = Vec::with_capacity(2 * self.comps.len());
        for &(lo, hi) in &self.comps {
            if lo.is_finite() {
                out.push(lo);
            }
            if hi.is_finite() {
                out.push(hi);
            }
        }
        out
    }

    /// Complement within the line. Reuses the same endpoint values, so the
    /// complement is an exact involution and has the identical essential
    /// boundary.
    pub fn complement(&self) -> IntervalSet {
        if self.comps.is_empty() {
            return IntervalSet::full_line();
        }
        let mut out = Vec::with_capacity(self.comps.len() + 1);
        let first = self.comps[0].0;
        if first > f64::NEG_INFINITY {
            out.push((f64::NEG_INFINITY, first));
        }
        for w in self.comps.windows(2) {
            out.push((w[0].1, w[1].0));
        }
        let last = self.comps[self.comps.len() - 1].1;
        if last < f64::INFINITY {
            out.push((last, f64::INFINITY));
        }
        IntervalSet { comps: out }
    }

    /// Reflection `x -> -x`.
    pub fn reflect(&self) -> IntervalSet {
        let comps = self
            .comps
            .iter()
            .rev()
            .map(|&(lo, hi)| (-hi, -lo))
            .collect();
        IntervalSet { comps }
    }

    fn combine(&self, other: &IntervalSet, keep: impl Fn(bool, bool) -> bool) -> IntervalSet {
        let mut events: Vec<f64> = Vec::new();
        events.push(f64::NEG_INFINITY);
        events.push(f64::INFINITY);
        for set in [self, other] {
            for &(lo, hi) in &set.comps {
                events.push(lo);
                events.push(hi);
            }
        }
        events.sort_by(|a, b| a.partial_cmp(b).unwrap());
        events.dedup();

        let mut kept: Vec<(f64, f64)> = Vec::new();
        for w in events.windows(2) {
            let (lo, hi) = (w[0], w[1]);
            // a representative interior point of the gap; if the gap holds
            // no representable point, membership is vacuous either way
            let probe = if lo == f64::NEG_INFINITY && hi == f64::INFINITY {
                0.0
            } else if lo == f64::NEG_INFINITY {
                hi - 1.0
            } else if hi == f64::INFINITY {
                lo + 1.0
            } else {
                0.5 * lo + 0.5 * hi
            };
            if probe <= lo || probe >= hi {
                continue;
            }
            if keep(self.contains(probe), other.contains(probe)) {
                kept.push((lo, hi));
            }
        }
        // merge touching segments
        let mut merged: Vec<(f64, f64)> = Vec::new();
        for (lo, hi) in kept {
            match merged.last_mut() {
                Some(last) if lo <= last.1 => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        IntervalSet { comps: merged }
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a && b)
    }

    pub fn symmetric_difference(&self, other: &IntervalSet) -> IntervalSet {
        self.combine(other, |a, b| a != b)
    }

    /// Mass of the set under the measure: the sum of `F(hi) - F(lo)` over
    /// components, accumulated left to right.
    pub fn mu_measure(&self, measure: &MeasureModel) -> f64 {
        let mut total = 0.0;
        for &(lo, hi) in &self.comps {
            total += measure.cdf(hi) - measure.cdf(lo);
        }
        total
    }

    /// Weighted perimeter: the sum of the density over the finite endpoints
    /// of the normalized components (the essential boundary). Infinite
    /// endpoints contribute nothing; endpoints on the edge of a bounded
    /// support contribute the one-sided density limit; endpoints strictly
    /// outside the support contribute 0. Summation is in ascending endpoint
    /// order, so a set and its complement get bit-identical perimeters.
    pub fn perimeter(&self, measure: &MeasureModel) -> f64 {
        self.finite_endpoints()
            .iter()
            .map(|&x| measure.density(x))
            .sum()
    }

    /// Asymmetry: the distance from the set to the nearest half line of the
    /// same mass, `min over s in {left, right} of mu(set delta H_s)`.
    ///
    /// Requires the mass to be nondegenerate (inside `(tol, 1-tol)` for the
    /// measure's probability tolerance). Ties report the left half line.
    pub fn asymmetry(&self, measure: &MeasureModel) -> Result<AsymmetryReport> {
        let mu = self.mu_measure(measure);
        let tol = measure.prob_tol();
        if !(mu > tol && mu < 1.0 - tol) {
            return Err(Error::DegenerateMeasure { mu, tol });
        }
        let sigma_left = measure.quantile(mu)?;
        let sigma_right = measure.quantile(1.0 - mu)?;
        let mass_left = self
            .intersection(&IntervalSet::left_half_line(sigma_left))
            .mu_measure(measure);
        let mass_right = self
            .intersection(&IntervalSet::right_half_line(sigma_right))
            .mu_measure(measure);
        let left_candidate = 2.0 * (mu - mass_left);
        let right_candidate = 2.0 * (mu - mass_right);
        let (lambda, side) = if left_candidate <= right_candidate {
            (left_candidate.max(0.0), HalfLineSide::Left)
        } else {
            (right_candidate.max(0.0), HalfLineSide::Right)
        };
        Ok(AsymmetryReport {
            mu,
            lambda,
            side,
            left_candidate,
            right_candidate,
            sigma_left,
            sigma_right,
        })
    }
}

/// Which equal-mass half line is nearest.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum HalfLineSide {
    Left,
    Right,
}

/// Asymmetry of a set together with the quantities behind it.
#[derive(Clone, Debug, Serialize)]
pub struct AsymmetryReport {
    /// Mass of the set.
    pub mu: f64,
    /// The asymmetry, the smaller of the two candidates.
    pub lambda: f64,
    /// Side achieving the minimum (left on ties).
    pub side: HalfLineSide,
    /// Mass of the symmetric difference to the left half line of mass `mu`.
    pub left_candidate: f64,
    /// Mass of the symmetric difference to the right half line of mass `mu`.
    pub right_candidate: f64,
    /// Right endpoint of the left comparison half line, `F^{-1}(mu)`.
    pub sigma_left: f64,
    /// Left endpoint of the right comparison half line, `F^{-1}(1-mu)`.
    pub sigma_right: f64,
}

/// Formats a float with 15 significant digits, trailing zeros trimmed.
/// Infinities render as `inf`/`-inf`.
pub fn format_f15(x: f64) -> String {
    if x.is_nan() {
        return "nan".to_owned();
    }
    if x == f64::INFINITY {
        return "inf".to_owned();
    }
    if x == f64::NEG_INFINITY {
        return "-inf".to_owned();
    }
    if x == 0.0 {
        return "0".to_owned();
    }
    let formatted = format!("{:.14e}", x.abs());
    let (mant, exp) = formatted.split_once('e').expect("exponent form");
    let exp: i32 = exp.parse().expect("exponent digits");
    let all_digits: String = mant.chars().filter(|c| *c != '.').collect();
    let digits = all_digits.trim_end_matches('0');
    if digits.is_empty() {
        return "0".to_owned();
    }
    let mut out = String::new();
    if x < 0.0 {
        out.push('-');
    }
    let point = exp + 1; // digits before the decimal point
    let n = digits.len() as i32;
    if point <= 0 && point > -4 {
        out.push_str("0.");
        for _ in 0..-point {
            out.push('0');
        }
        out.push_str(digits);
    } else if point > 0 && point <= 15 {
        if n <= point {
            out.push_str(digits);
            for _ in 0..point - n {
                out.push('0');
            }
        } else {
            out.push_str(&digits[..point as usize]);
            out.push('.');
            out.push_str(&digits[point as usize..]);
        }
    } else {
        out.push_str(&digits[..1]);
        if digits.len() > 1 {
            out.push('.');
            out.push_str(&digits[1..]);
        }
        out.push('e');
        out.push_str(&exp.to_string());
    }
    out
}

/// Renders a set as a literal like `(-inf,0) u (1.5,2)`, or `empty`.
pub fn format_set(set: &IntervalSet) -> String {
    if set.is_empty() {
        return "empty".to_owned();
    }
    set.components()
        .iter()
        .map(|&(lo, hi)| format!("({},{})", format_f15(lo), format_f15(hi)))
        .collect::<Vec<_>>()
        .join(" u ")
}

/// Parses a set literal: interval terms `(lo,hi)` joined by `u`, where an
/// endpoint is a decimal float, a rational `p/q`, or `inf`/`+inf`/`-inf`;
/// `empty` denotes the empty set. Unlike [`IntervalSet::new`], each term
/// must have `lo < hi` strictly, so a typo like `(0.3,0.3)` is rejected
/// instead of silently vanishing.
pub fn parse_set_literal(text: &str) -> Result<IntervalSet> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Err(Error::Config("empty set literal".to_owned()));
    }
    if trimmed.eq_ignore_ascii_case("empty") {
        return Ok(IntervalSet::empty());
    }
    let mut intervals = Vec::new();
    for term in trimmed.split(['u', 'U']) {
        let term = term.trim();
        let inner = term
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| {
                Error::Config(format!(
                    "interval term {term:?} must look like (lo,hi)"
                ))
            })?;
        let (lo_text, hi_text) = inner.split_once(',').ok_or_else(|| {
            Error::Config(format!("interval term {term:?} needs two endpoints"))
        })?;
        let lo = parse_endpoint(lo_text)?;
        let hi = parse_endpoint(hi_text)?;
        if !(lo < hi) {
            return Err(Error::InvalidInterval { lo, hi });
        }
        intervals.push((lo, hi));
    }
    IntervalSet::new(&intervals)
}

fn parse_endpoint(text: &str) -> Result<f64> {
    let t = text.trim();
    match t.to_ascii_lowercase().as_str() {
        "inf" | "+inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => {
            if let Some((num, den)) = t.split_once('/') {
                let n: f64 = num
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad endpoint {t:?}")))?;
                let d: f64 = den
                    .trim()
                    .parse()
                    .map_err(|_| Error::Config(format!("bad endpoint {t:?}")))?;
                if d == 0.0 || !n.is_finite() || !d.is_finite() {
                    return Err(Error::Config(format!("bad endpoint {t:?}")));
                }
                return Ok(n / d);
            }
            t.parse::<f64>()
                .map_err(|_| Error::Config(format!("bad endpoint {t:?}")))
        }
    }
}
