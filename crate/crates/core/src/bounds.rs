//! Quantitative deficit bounds: the sharp two-branch modulus `K`, its chordal
//! minorant `L`, the inverse modulus, the four-way domain classification of
//! `(mass, asymmetry)` pairs, the explicit minimizing sets, and the perimeter
//! lower bound at fixed asymmetry.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::interval::IntervalSet;
use crate::measure::MeasureModel;

/// Largest asymmetry any set of mass `mu` can have: `min(2m, 1-m)` with
/// `m = min(mu, 1-mu)`. (Each half-line candidate is at most `2m`, and their
/// average is at most `1-m`.)
pub fn max_asymmetry(mu: f64) -> f64 {
    let m = mu.min(1.0 - mu);
    (2.0 * m).min(1.0 - m)
}

/// Folds `x` to `min(x, 1-x)` and clamps `y` into `[0, min(2x, 1-x)]`,
/// rejecting arguments outside the feasible region (with 1e-12 slack).
fn fold_pair(x: f64, y: f64) -> Result<(f64, f64)> {
    if !(x > 0.0 && x < 1.0) {
        return Err(Error::OutOfDomain {
            x,
            y,
            constraint: "0 < x < 1",
        });
    }
    let xt = x.min(1.0 - x);
    let ymax = (2.0 * xt).min(1.0 - xt);
    if !(y >= -1e-15 && y <= ymax + 1e-12) {
        return Err(Error::OutOfDomain {
            x,
            y,
            constraint: "0 <= y <= min(2 min(x,1-x), 1 - min(x,1-x))",
        });
    }
    Ok((xt, y.clamp(0.0, ymax)))
}

/// Sharp deficit modulus `K(x, y)`: the exact perimeter excess of the
/// minimizing set at mass `x` and asymmetry `y` over the profile `J(x)`.
///
/// Two branches, both invariant under `x -> 1-x`:
/// `J(x - y/2) - J(x) + J(y/2)` for `0 <= y <= x`, and
/// `J(x + y/2) - J(x) + J(y/2)` for `x < y <= min(2x, 1-x)`,
/// with `K(x, 0) = 0` as the continuous extension. `K(x, .)` jumps upward
/// by `J(3x/2) - J(x/2)` across the seam `y = x`.
pub fn k_bound(measure: &MeasureModel, x: f64, y: f64) -> Result<f64> {
    let (xt, y) = fold_pair(x, y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let j = |r: f64| measure.profile(r);
    if y <= xt {
        Ok(j(xt - y / 2.0) - j(xt) + j(y / 2.0))
    } else {
        Ok(j(xt + y / 2.0) - j(xt) + j(y / 2.0))
    }
}

/// Chordal minorant `L(x, y) <= K(x, y)`: replaces the profile increments of
/// `K` by chords through the origin, giving a closed-form lower bound that is
/// often easier to invert. Branches match those of [`k_bound`]:
/// `J(y/2) - (y/(2x)) J(x)` for `y <= x`, and
/// `J(y/2) - (y/(2(1-x))) J(x)` above the seam.
pub fn l_bound(measure: &MeasureModel, x: f64, y: f64) -> Result<f64> {
    let (xt, y) = fold_pair(x, y)?;
    if y == 0.0 {
        return Ok(0.0);
    }
    let j = |r: f64| measure.profile(r);
    if y <= xt {
        Ok(j(y / 2.0) - (y / (2.0 * xt)) * j(xt))
    } else {
        Ok(j(y / 2.0) - (y / (2.0 * (1.0 - xt))) * j(xt))
    }
}

/// Inverse modulus: `sup { y in [0, min(2x, 1-x)] : K(x, y) <= d }`, the
/// largest asymmetry compatible with a deficit of `d`.
///
/// A 2048-point scan (always including the seam `y = x`, where `K` may sit
/// exactly at a plateau edge) locates the last feasible point, and bisection
/// sharpens the boundary to full precision. For a concave profile `K` is
/// nondecreasing in `y`, so the scan is exact; for non-concave profiles dips
/// narrower than `ymax/2048` may be missed.
pub fn k_inverse(measure: &MeasureModel, x: f64, d: f64) -> Result<f64> {
    let (xt, _) = fold_pair(x, 0.0)?;
    if !(d >= 0.0) {
        return Err(Error::OutOfDomain {
            x,
            y: d,
            constraint: "deficit d >= 0",
        });
    }
    let ymax = (2.0 * xt).min(1.0 - xt);
    let k = |y: f64| k_bound(measure, xt, y).expect("y within feasible range");
    if k(ymax) <= d {
        return Ok(ymax);
    }
    const N: usize = 2048;
    let mut points: Vec<f64> = (0..=N).map(|i| ymax * i as f64 / N as f64).collect();
    if xt < ymax {
        points.push(xt);
        points.sort_by(|a, b| a.partial_cmp(b).unwrap());
        points.dedup();
    }
    let last_ok = points
        .iter()
        .rposition(|&y| k(y) <= d)
        .expect("K(x, 0) = 0 <= d");
    debug_assert!(last_ok + 1 < points.len());
    let mut lo = points[last_ok];
    let mut hi = points[last_ok + 1];
    for _ in 0..80 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if k(mid) <= d {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

/// The four regions of the `(mass, asymmetry)` plane, each with its own
/// minimizing shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DomainId {
    D1,
    D2,
    D3,
    D4,
}

/// A classified `(mass, asymmetry)` pair.
#[derive(Clone, Debug, Serialize)]
pub struct DomainClass {
    pub id: DomainId,
    /// The defining inequalities of the region, human readable.
    pub constraints: &'static str,
}

/// Classifies a feasible `(mu, lambda)` pair. Boundaries go to the
/// two-half-line regions: `mu = 1/2` is D2 side, `lambda = m` stays with
/// D2/D3.
pub fn classify_domain(mu: f64, lambda: f64) -> Result<DomainClass> {
    if !(mu > 0.0 && mu < 1.0) {
        return Err(Error::OutOfDomain {
            x: mu,
            y: lambda,
            constraint: "0 < mu < 1",
        });
    }
    if !(lambda >= -1e-15 && lambda <= max_asymmetry(mu) + 1e-12) {
        return Err(Error::OutOfDomain {
            x: mu,
            y: lambda,
            constraint: "0 <= lambda <= min(2m, 1-m)",
        });
    }
    let lambda = lambda.clamp(0.0, max_asymmetry(mu));
    let class = if mu <= 0.5 {
        if lambda <= mu {
            DomainClass {
                id: DomainId::D2,
                constraints: "mu <= 1/2 and 0 <= lambda <= mu",
            }
        } else {
            DomainClass {
                id: DomainId::D1,
                constraints: "mu <= 1/2 and mu < lambda <= min(2 mu, 1 - mu)",
            }
        }
    } else if lambda <= 1.0 - mu {
        DomainClass {
            id: DomainId::D3,
            constraints: "mu > 1/2 and 0 <= lambda <= 1 - mu",
        }
    } else {
        DomainClass {
            id: DomainId::D4,
            constraints: "mu > 1/2 and 1 - mu < lambda <= min(2(1-mu), mu)",
        }
    };
    Ok(class)
}

/// Shape of a minimizing set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OptimalForm {
    /// A single half line (asymmetry 0).
    HalfLine,
    /// A bounded interval.
    BoundedInterval,
    /// Two unbounded components (a left and a right half line).
    TwoHalfLines,
}

/// An explicit perimeter minimizer at given mass and asymmetry.
#[derive(Clone, Debug)]
pub struct OptimalSet {
    pub set: IntervalSet,
    pub form: OptimalForm,
    pub domain: DomainClass,
    pub perimeter: f64,
}

/// Builds the minimizing set for a feasible `(mu, lambda)` pair:
///
/// - D2 (`mu <= 1/2`, `lambda <= mu`): two tails
///   `(-inf, F^{-1}(mu - lambda/2)) u (F^{-1}(1 - lambda/2), inf)`;
/// - D1 (`mu <= 1/2`, `lambda > mu`): the interval
///   `(F^{-1}(lambda/2), F^{-1}(mu + lambda/2))`;
/// - D3, D4: complements of the D2/D1 sets at mass `1 - mu`, written out
///   directly so endpoint arithmetic matches [`lower_bound_perimeter`].
///
/// At `lambda == 0` the set degenerates to a single half line. The returned
/// perimeter is checked against the lower bound and the set's recomputed
/// mass and asymmetry; disagreement reports an internal invariant violation.
pub fn optimal_set(measure: &MeasureModel, mu: f64, lambda: f64) -> Result<OptimalSet> {
    let domain = classify_domain(mu, lambda)?;
    let lambda = lambda.clamp(0.0, max_asymmetry(mu));
    let m = if mu <= 0.5 { mu } else { 1.0 - mu };
    let q = |p: f64| measure.quantile(p);

    let (set, form) = if lambda == 0.0 {
        match domain.id {
            DomainId::D2 => (IntervalSet::left_half_line(q(mu)?), OptimalForm::HalfLine),
            DomainId::D3 => (
                IntervalSet::right_half_line(q(1.0 - mu)?),
                OptimalForm::HalfLine,
            ),
            _ => unreachable!("lambda = 0 classifies as D2 or D3"),
        }
    } else {
        match domain.id {
            DomainId::D2 => (
                IntervalSet::new(&[
                    (f64::NEG_INFINITY, q(m - lambda / 2.0)?),
                    (q(1.0 - lambda / 2.0)?, f64::INFINITY),
                ])?,
                OptimalForm::TwoHalfLines,
            ),
            DomainId::D1 => (
                IntervalSet::interval(q(lambda / 2.0)?, q(m + lambda / 2.0)?)?,
                OptimalForm::BoundedInterval,
            ),
            DomainId::D3 => (
                IntervalSet::interval(q(m - lambda / 2.0)?, q(1.0 - lambda / 2.0)?)?,
                OptimalForm::BoundedInterval,
            ),
            DomainId::D4 => (
                IntervalSet::new(&[
                    (f64::NEG_INFINITY, q(lambda / 2.0)?),
                    (q(m + lambda / 2.0)?, f64::INFINITY),
                ])?,
                OptimalForm::TwoHalfLines,
            ),
        }
    };

    let perimeter = set.perimeter(measure);
    let bound = lower_bound_perimeter(measure, mu, lambda)?;
    if (perimeter - bound).abs() > 1e-9 * bound.max(1.0) {
        return Err(Error::InvariantViolated(format!(
            "minimizer perimeter {perimeter} disagrees with lower bound {bound} at (mu={mu}, lambda={lambda})"
        )));
    }
    let got_mu = set.mu_measure(measure);
    if (got_mu - mu).abs() > 1e-9 {
        return Err(Error::InvariantViolated(format!(
            "minimizer mass {got_mu} disagrees with requested mu={mu}"
        )));
    }
    let got_lambda = set.asymmetry(measure)?.lambda;
    if (got_lambda - lambda).abs() > 1e-9 {
        return Err(Error::InvariantViolated(format!(
            "minimizer asymmetry {got_lambda} disagrees with requested lambda={lambda}"
        )));
    }
    Ok(OptimalSet {
        set,
        form,
        domain,
        perimeter,
    })
}

/// Smallest possible perimeter among sets of mass `mu` and asymmetry
/// `lambda`: with `m = min(mu, 1-mu)`,
/// `J(m - lambda/2) + J(lambda/2)` for `lambda <= m` (two-tail region) and
/// `J(m + lambda/2) + J(lambda/2)` for `lambda > m` (interval region).
/// At `lambda = 0` this reduces to the isoperimetric profile `J(m)`.
pub fn lower_bound_perimeter(measure: &MeasureModel, mu: f64, lambda: f64) -> Result<f64> {
    classify_domain(mu, lambda)?;
    let lambda = lambda.clamp(0.0, max_asymmetry(mu));
    let m = if mu <= 0.5 { mu } else { 1.0 - mu };
    let j = |r: f64| measure.profile(r);
    if lambda <= m {
        Ok(j(m - lambda / 2.0) + j(lambda / 2.0))
    } else {
        Ok(j(m + lambda / 2.0) + j(lambda / 2.0))
    }
}

/// Everything the deficit theorem says about one set.
#[derive(Clone, Debug, Serialize)]
pub struct DeficitReport {
    /// Mass of the set.
    pub mu: f64,
    /// `min` of the masses of the set and its complement, measured both
    /// ways so that a set and its complement report the identical value.
    pub m: f64,
    /// Asymmetry.
    pub lambda: f64,
    /// Weighted perimeter.
    pub perimeter: f64,
    /// Profile value `J(mu)`, the perimeter of the comparison half line.
    pub j_at_mu: f64,
    /// Isoperimetric deficit `perimeter - J(mu)`.
    pub delta: f64,
    /// Sharp modulus `K(mu, lambda)`; the theorem asserts `delta >= K`.
    pub k_bound: f64,
    /// Chordal minorant `L(mu, lambda) <= K(mu, lambda)`.
    pub l_bound: f64,
    /// Region of the `(mu, lambda)` plane.
    pub domain: DomainClass,
}

/// Measures a set and evaluates both deficit bounds at its
/// `(mass, asymmetry)` pair. Degenerate sets (mass within `prob_tol` of 0
/// or 1) are rejected.
pub fn deficit(measure: &MeasureModel, set: &IntervalSet) -> Result<DeficitReport> {
    let report = set.asymmetry(measure)?;
    let mu = report.mu;
    let lambda = report.lambda;
    let m = set
        .mu_measure(measure)
        .min(set.complement().mu_measure(measure));
    let perimeter = set.perimeter(measure);
    let j_at_mu = measure.profile(mu);
    let delta = perimeter - j_at_mu;
    let domain = classify_domain(mu, lambda)?;
    Ok(DeficitReport {
        mu,
        m,
        lambda,
        perimeter,
        j_at_mu,
        delta,
        k_bound: k_bound(measure, mu, lambda)?,
        l_bound: l_bound(measure, mu, lambda)?,
        domain,
    })
}

/// Ratio of the Gaussian modulus `K(1/4, lambda)` to its small-asymmetry
/// asymptotic `(lambda/2) sqrt(2 ln(2/lambda))`. Approaches 1 from below as
/// `lambda -> 0`, but only logarithmically fast.
pub fn gaussian_asymptotic_ratio(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda <= 0.5) {
        return Err(Error::OutOfDomain {
            x: 0.25,
            y: lambda,
            constraint: "0 < lambda <= 1/2",
        });
    }
    let gauss = MeasureModel::gaussian();
    let k = k_bound(&gauss, 0.25, lambda)?;
    let asymptotic = (lambda / 2.0) * (2.0 * (2.0 / lambda).ln()).sqrt();
    Ok(k / asymptotic)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gauss() -> MeasureModel {
        MeasureModel::gaussian()
    }

    #[test]
    fn k_and_l_match_reference_digits() {
        // 12-digit references from a 50-digit computation
        let g = gauss();
        assert!((k_bound(&g, 0.25, 0.1).unwrap() - 0.0653209880991).abs() < 1e-12);
        assert!((l_bound(&g, 0.25, 0.1).unwrap() - 0.0395803258385).abs() < 1e-12);
        assert!((k_bound(&g, 0.2, 0.3).unwrap() - 0.323595859245).abs() < 1e-12);
        assert!((l_bound(&g, 0.2, 0.3).unwrap() - 0.180665915177).abs() < 1e-12);
    }

    #[test]
    fn k_is_complement_symmetric_and_extends_continuously_to_zero() {
        let g = gauss();
        // dyadic masses form exact complement pairs: equality is bitwise
        for (x, y) in [(0.25, 0.1), (0.375, 0.3), (0.4375, 0.2)] {
            let a = k_bound(&g, x, y).unwrap();
            let b = k_bound(&g, 1.0 - x, y).unwrap();
            assert_eq!(a, b);
        }
        // fl(0.2) and fl(0.8) differ from exact complements by 1 ulp
        let a = k_bound(&g, 0.2, 0.3).unwrap();
        let b = k_bound(&g, 0.8, 0.3).unwrap();
        assert!((a - b).abs() < 1e-15);
        assert_eq!(k_bound(&g, 0.3, 0.0).unwrap(), 0.0);
        assert_eq!(l_bound(&g, 0.3, 0.0).unwrap(), 0.0);
        assert!(k_bound(&g, 0.3, 1e-9).unwrap() < 1e-7);
    }

    #[test]
    fn seam_jump_matches_profile_difference() {
        let g = gauss();
        let x = 0.3f64;
        let below = k_bound(&g, x, x).unwrap();
        let above = k_bound(&g, x, x + 1e-12).unwrap();
        let jump = g.profile(1.5 * x) - g.profile(0.5 * x);
        assert!((jump - 0.162646103234).abs() < 1e-12);
        assert!(((above - below) - jump).abs() < 1e-9);
    }

    #[test]
    fn sandwich_l_below_k_for_concave_profiles() {
        for m in [
            gauss(),
            MeasureModel::logistic(1.0).unwrap(),
            MeasureModel::laplace(1.0).unwrap(),
        ] {
            for x in [0.1f64, 0.25, 0.4, 0.5, 0.7] {
                let ymax = (2.0 * x.min(1.0 - x)).min(1.0 - x.min(1.0 - x));
                for k in 1..=8 {
                    let y = ymax * k as f64 / 8.0;
                    let kk = k_bound(&m, x, y).unwrap();
                    let ll = l_bound(&m, x, y).unwrap();
                    assert!(ll <= kk + 1e-14, "{} x={x} y={y}", m.describe());
                    assert!(ll >= -1e-14);
                }
            }
        }
    }

    #[test]
    fn domain_checks_reject_infeasible_pairs() {
        let g = gauss();
        assert!(k_bound(&g, 0.0, 0.1).is_err());
        assert!(k_bound(&g, 0.3, -0.1).is_err());
        assert!(k_bound(&g, 0.3, 0.61).is_err());
        assert!(k_bound(&g, 0.3, 0.6).is_ok()); // ymax = min(0.6, 0.7)
        assert!(k_bound(&g, 0.45, 0.56).is_err()); // ymax = 0.55
        assert!(classify_domain(0.5, 0.51).is_err()); // max asymmetry 1/2
        assert!(k_inverse(&g, 0.3, -1e-3).is_err());
    }

    #[test]
    fn laplace_inverse_modulus_is_exact_at_the_plateau() {
        let lap = MeasureModel::laplace(1.0).unwrap();
        // K vanishes identically on the first branch, then jumps
        assert_eq!(k_inverse(&lap, 0.3, 0.0).unwrap(), 0.3);
        assert_eq!(k_inverse(&lap, 0.3, 0.1).unwrap(), 0.3);
        // above the jump, K(y) = rate * y until x + y/2 crosses 1/2, after
        // which K saturates at rate * (1 - 2x) = 0.4
        let y = k_inverse(&lap, 0.3, 0.35).unwrap();
        assert!((y - 0.35).abs() < 1e-12);
        assert_eq!(k_inverse(&lap, 0.3, 0.45).unwrap(), 0.6);
        // saturated: every feasible y qualifies
        assert_eq!(k_inverse(&lap, 0.3, 10.0).unwrap(), 0.6);
    }

    #[test]
    fn gaussian_inverse_modulus_inverts_k() {
        let g = gauss();
        for x in [0.2, 0.35, 0.5] {
            for d in [1e-6, 1e-3, 0.05] {
                let y = k_inverse(&g, x, d).unwrap();
                let k_at = k_bound(&g, x, y).unwrap();
                assert!(k_at <= d + 1e-15, "x={x} d={d}");
                let ymax = (2.0f64 * x.min(1.0 - x)).min(1.0 - x.min(1.0 - x));
                if y < ymax {
                    let above = k_bound(&g, x, (y + 1e-9).min(ymax)).unwrap();
                    assert!(above > d, "x={x} d={d}: K just above {y} is {above}");
                }
            }
        }
    }

    #[test]
    fn classification_covers_all_four_regions() {
        assert_eq!(classify_domain(0.3, 0.2).unwrap().id, DomainId::D2);
        assert_eq!(classify_domain(0.3, 0.4).unwrap().id, DomainId::D1);
        assert_eq!(classify_domain(0.7, 0.2).unwrap().id, DomainId::D3);
        assert_eq!(classify_domain(0.7, 0.4).unwrap().id, DomainId::D4);
        assert_eq!(classify_domain(0.5, 0.5).unwrap().id, DomainId::D2);
        assert_eq!(classify_domain(0.3, 0.3).unwrap().id, DomainId::D2);
    }

    #[test]
    fn optimal_sets_hit_the_bound_with_requested_mass_and_asymmetry() {
        let g = gauss();
        for (mu, lambda) in [
            (0.3, 0.2),
            (0.3, 0.4),
            (0.7, 0.2),
            (0.7, 0.4),
            (0.5, 0.3),
            (0.2, 0.15),
        ] {
            let opt = optimal_set(&g, mu, lambda).unwrap();
            let bound = lower_bound_perimeter(&g, mu, lambda).unwrap();
            assert!(
                (opt.perimeter - bound).abs() < 1e-12,
                "(mu={mu}, lambda={lambda})"
            );
            assert!((opt.set.mu_measure(&g) - mu).abs() < 1e-12);
            let rep = opt.set.asymmetry(&g).unwrap();
            assert!((rep.lambda - lambda).abs() < 1e-11);
        }
    }

    #[test]
    fn optimal_set_shapes_per_domain() {
        let g = gauss();
        assert_eq!(
            optimal_set(&g, 0.3, 0.2).unwrap().form,
            OptimalForm::TwoHalfLines
        );
        assert_eq!(
            optimal_set(&g, 0.3, 0.4).unwrap().form,
            OptimalForm::BoundedInterval
        );
        assert_eq!(
            optimal_set(&g, 0.7, 0.2).unwrap().form,
            OptimalForm::BoundedInterval
        );
        assert_eq!(
            optimal_set(&g, 0.7, 0.4).unwrap().form,
            OptimalForm::TwoHalfLines
        );
        let half = optimal_set(&g, 0.3, 0.0).unwrap();
        assert_eq!(half.form, OptimalForm::HalfLine);
        assert_eq!(half.set.num_components(), 1);
        assert!((half.perimeter - g.profile(0.3)).abs() < 1e-15);
        // D2/D3 sets at exactly complementary masses are exact complements
        let d2 = optimal_set(&g, 0.25, 0.2).unwrap();
        let d3 = optimal_set(&g, 0.75, 0.2).unwrap();
        assert_eq!(d2.set.complement(), d3.set);
        // fl(0.3)/fl(0.7) are off by an ulp from true complements
        let a = optimal_set(&g, 0.3, 0.2).unwrap().set.complement();
        let b = optimal_set(&g, 0.7, 0.2).unwrap().set;
        for (ca, cb) in a.components().iter().zip(b.components()) {
            assert!((ca.0 - cb.0).abs() < 1e-14 && (ca.1 - cb.1).abs() < 1e-14);
        }
    }

    #[test]
    fn lower_bound_reduces_to_profile_at_zero_asymmetry() {
        let g = gauss();
        for mu in [0.1, 0.3, 0.5, 0.8] {
            let b = lower_bound_perimeter(&g, mu, 0.0).unwrap();
            assert_eq!(b, g.profile(mu));
        }
        assert!((lower_bound_perimeter(&g, 0.3, 0.4).unwrap() - 0.678904200809).abs() < 1e-12);
    }

    #[test]
    fn deficit_report_is_consistent() {
        let g = gauss();
        let s = IntervalSet::interval(-1.0, 1.0).unwrap();
        let rep = deficit(&g, &s).unwrap();
        assert!((rep.mu - 0.682689492137).abs() < 1e-12);
        assert!((rep.delta - (rep.perimeter - rep.j_at_mu)).abs() < 1e-16);
        assert!((rep.delta - 0.127598497098).abs() < 1e-12);
        assert!(rep.l_bound <= rep.k_bound + 1e-14);
        assert!(rep.k_bound <= rep.delta + 1e-12, "theorem holds on this set");
        assert!(matches!(
            deficit(&g, &IntervalSet::empty()),
            Err(Error::DegenerateMeasure { .. })
        ));
    }

    #[test]
    fn asymptotic_ratio_grows_toward_one() {
        let r3 = gaussian_asymptotic_ratio(1e-3).unwrap();
        let r5 = gaussian_asymptotic_ratio(1e-5).unwrap();
        let r8 = gaussian_asymptotic_ratio(1e-8).unwrap();
        assert!((r3 - 0.738430740153).abs() < 1e-10);
        // at lambda = 1e-8 the J-difference inside K cancels ~8 digits, so
        // only ~2e-9 relative accuracy is achievable in doubles
        assert!((r8 - 0.844503955868).abs() < 1e-7);
        assert!(r3 < r5 && r5 < r8 && r8 < 1.0);
        assert!(gaussian_asymptotic_ratio(0.0).is_err());
    }
}
