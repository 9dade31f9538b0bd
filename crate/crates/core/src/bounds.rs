//! Scalar inequalities behind the monogamy chain.
//!
//! Each check returns `LHS − RHS`; a valid instance has a nonnegative residual
//! up to rounding. Arguments outside an inequality's domain are rejected, not
//! clamped, because the domain is part of the statement.
//!
//! Quarter-disk inequalities take `(x, y)` or `(x, y, η)` with `x, y ≥ 0` and
//! `x² + y² ≤ 1`. Writing `s(t) = √(1 − t²)` and `r = √(1 − x² − y²)`:
//!
//! | check | inequality |
//! |---|---|
//! | `BuresSuperadditive` | `B^η(√(x²+y²)) ≥ B^η(x) + B^η(y)` |
//! | `GeometricSuperadditive` | `G^η(√(x²+y²)) ≥ G^η(x) + G^η(y)` |
//! | `RootSum` | `s(x) + s(y) ≥ 1 + r` |
//! | `RootProduct` | `s(x)·s(y) ≥ r` |
//! | `HalfGap` | `(1 − r)/2 ≥ (1 − s(x))/2 + (1 − s(y))/2` |
//! | `GeometricPowerSplit` | `[G(x) + G(y)]^η ≥ G^η(x) + G^η(y)` |
//! | `ProductExpansion` | `(1 + s(x))(1 + s(y)) ≥ 2 + 2r` |
//! | `ExpandedSum` | `1 + s(x)/2 + s(y)/2 + √((1+s(x))(1+s(y))) ≥ 1 + (1+r)/2 + √(2+2r)` |
//! | `HalfAngleSum` | `√((1+s(x))/2) + √((1+s(y))/2) ≥ 1 + √((1+r)/2)` |
//!
//! Two helper inequalities take other arguments:
//!
//! * `SortedPowerSum`, args `(a₁, …, aₙ, μ)` with `a₁ ≥ ⋯ ≥ aₙ ≥ 0`, `μ ≥ 1`:
//!   `(Σ aᵢ)^μ ≥ Σ [i^μ − (i−1)^μ] aᵢ^μ`.
//! * `BinomialTail`, args `(t, k, x)` with `t ≥ 1`, `k ≥ 1`, `0 ≤ x ≤ 1/k`:
//!   `(1+x)^t ≥ 1 + kt/(k+1)·x + [(k+1)^t − (1 + t/(k+1))k^t]·x^t`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{b_unchecked, g_unchecked};

/// Slack allowed on `x² + y² ≤ 1` for points computed in floating point.
pub const DOMAIN_ROUNDING: f64 = 1e-12;
/// Residuals at or above `-LEMMA_TOL` count as satisfied.
pub const LEMMA_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ScalarLemma {
    BuresSuperadditive,
    GeometricSuperadditive,
    RootSum,
    RootProduct,
    HalfGap,
    GeometricPowerSplit,
    ProductExpansion,
    ExpandedSum,
    HalfAngleSum,
    SortedPowerSum,
    BinomialTail,
}

impl ScalarLemma {
    /// Checks defined on the quarter disk.
    pub const QUARTER_DISK: [ScalarLemma; 9] = [
        ScalarLemma::BuresSuperadditive,
        ScalarLemma::GeometricSuperadditive,
        ScalarLemma::RootSum,
        ScalarLemma::RootProduct,
        ScalarLemma::HalfGap,
        ScalarLemma::GeometricPowerSplit,
        ScalarLemma::ProductExpansion,
        ScalarLemma::ExpandedSum,
        ScalarLemma::HalfAngleSum,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ScalarLemma::BuresSuperadditive => "bures-superadditive",
            ScalarLemma::GeometricSuperadditive => "geometric-superadditive",
            ScalarLemma::RootSum => "root-sum",
            ScalarLemma::RootProduct => "root-product",
            ScalarLemma::HalfGap => "half-gap",
            ScalarLemma::GeometricPowerSplit => "geometric-power-split",
            ScalarLemma::ProductExpansion => "product-expansion",
            ScalarLemma::ExpandedSum => "expanded-sum",
            ScalarLemma::HalfAngleSum => "half-angle-sum",
            ScalarLemma::SortedPowerSum => "sorted-power-sum",
            ScalarLemma::BinomialTail => "binomial-tail",
        }
    }

    /// Whether the residual depends on the power `η`.
    pub fn uses_eta(self) -> bool {
        matches!(
            self,
            ScalarLemma::BuresSuperadditive | ScalarLemma::GeometricSuperadditive | ScalarLemma::GeometricPowerSplit
        )
    }
}

impl fmt::Display for ScalarLemma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ScalarLemma {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [ScalarLemma::SortedPowerSum, ScalarLemma::BinomialTail]
            .into_iter()
            .chain(ScalarLemma::QUARTER_DISK)
            .find(|l| l.as_str() == s)
            .ok_or_else(|| Error::Param(format!("unknown scalar inequality '{s}'")))
    }
}

fn domain(msg: String) -> Error {
    Error::Domain(msg)
}

fn check_eta(eta: f64) -> Result<f64> {
    if !eta.is_finite() || eta < 1.0 {
        return Err(domain(format!("power {eta} must be >= 1")));
    }
    Ok(eta)
}

fn quarter_disk_args(which: ScalarLemma, args: &[f64]) -> Result<(f64, f64, f64)> {
    let (x, y, eta) = match *args {
        [x, y] => (x, y, 1.0),
        [x, y, eta] => (x, y, eta),
        _ => return Err(domain(format!("{which} takes (x, y) or (x, y, eta), got {} values", args.len()))),
    };
    if !x.is_finite() || !y.is_finite() || x < 0.0 || y < 0.0 {
        return Err(domain(format!("({x}, {y}) is not in the nonnegative quadrant")));
    }
    if x * x + y * y > 1.0 + DOMAIN_ROUNDING {
        return Err(domain(format!("({x}, {y}) lies outside the unit quarter disk")));
    }
    Ok((x, y, check_eta(eta)?))
}

fn root(v: f64) -> f64 {
    v.max(0.0).sqrt()
}

/// `LHS − RHS` of the named inequality at `args`.
pub fn check_scalar_lemma(which: ScalarLemma, args: &[f64]) -> Result<f64> {
    match which {
        ScalarLemma::SortedPowerSum => return sorted_power_sum(args),
        ScalarLemma::BinomialTail => return binomial_tail(args),
        _ => {}
    }
    let (x, y, eta) = quarter_disk_args(which, args)?;
    let sx = root(1.0 - x * x);
    let sy = root(1.0 - y * y);
    let r = root(1.0 - x * x - y * y);
    let z = (x * x + y * y).sqrt().min(1.0);
    let residual = match which {
        ScalarLemma::BuresSuperadditive => {
            b_unchecked(z).powf(eta) - b_unchecked(x).powf(eta) - b_unchecked(y).powf(eta)
        }
        ScalarLemma::GeometricSuperadditive => {
            g_unchecked(z).powf(eta) - g_unchecked(x).powf(eta) - g_unchecked(y).powf(eta)
        }
        ScalarLemma::RootSum => sx + sy - 1.0 - r,
        ScalarLemma::RootProduct => sx * sy - r,
        ScalarLemma::HalfGap => (1.0 - r) / 2.0 - (1.0 - sx) / 2.0 - (1.0 - sy) / 2.0,
        ScalarLemma::GeometricPowerSplit => {
            let (gx, gy) = (g_unchecked(x), g_unchecked(y));
            (gx + gy).powf(eta) - gx.powf(eta) - gy.powf(eta)
        }
        ScalarLemma::ProductExpansion => (1.0 + sx) * (1.0 + sy) - 2.0 - 2.0 * r,
        ScalarLemma::ExpandedSum => {
            let lhs = 1.0 + sx / 2.0 + sy / 2.0 + ((1.0 + sx) * (1.0 + sy)).sqrt();
            let rhs = 1.0 + (1.0 + r) / 2.0 + (2.0 + 2.0 * r).sqrt();
            lhs - rhs
        }
        ScalarLemma::HalfAngleSum => {
            ((1.0 + sx) / 2.0).sqrt() + ((1.0 + sy) / 2.0).sqrt() - 1.0 - ((1.0 + r) / 2.0).sqrt()
        }
        ScalarLemma::SortedPowerSum | ScalarLemma::BinomialTail => unreachable!(),
    };
    Ok(residual)
}

fn sorted_power_sum(args: &[f64]) -> Result<f64> {
    let Some((&mu, values)) = args.split_last() else {
        return Err(domain("sorted-power-sum takes (a1, ..., an, mu)".into()));
    };
    if values.is_empty() {
        return Err(domain("sorted-power-sum needs at least one value before mu".into()));
    }
    let mu = check_eta(mu)?;
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(domain("sorted-power-sum values must be finite and nonnegative".into()));
    }
    if values.windows(2).any(|w| w[0] < w[1]) {
        return Err(domain("sorted-power-sum values must be in descending order".into()));
    }
    let lhs = values.iter().sum::<f64>().powf(mu);
    let rhs: f64 = values
        .iter()
        .enumerate()
        .map(|(i, _)| ((i + 1) as f64).powf(mu) - (i as f64).powf(mu))
        .zip(values)
        .map(|(c, a)| c * a.powf(mu))
        .sum();
    Ok(lhs - rhs)
}

fn binomial_tail(args: &[f64]) -> Result<f64> {
    let [t, k, x] = *args else {
        return Err(domain(format!("binomial-tail takes (t, k, x), got {} values", args.len())));
    };
    let t = check_eta(t)?;
    if !k.is_finite() || k < 1.0 {
        return Err(domain(format!("k = {k} must be >= 1")));
    }
    if !x.is_finite() || x < 0.0 || x > 1.0 / k {
        return Err(domain(format!("x = {x} must lie in [0, 1/k] = [0, {}]", 1.0 / k)));
    }
    let rhs = 1.0 + k * t / (k + 1.0) * x + ((k + 1.0).powf(t) - (1.0 + t / (k + 1.0)) * k.powf(t)) * x.powf(t);
    Ok((1.0 + x).powf(t) - rhs)
}

/// Sample points of the quarter disk: the `resolution × resolution` lattice on
/// `[0, 1]²` restricted to `x² + y² ≤ 1`, plus one boundary point `(x, √(1−x²))`
/// per lattice column.
pub fn quarter_disk_points(resolution: usize) -> Vec<[f64; 2]> {
    let steps = resolution.max(2) - 1;
    let coord = |i: usize| i as f64 / steps as f64;
    let mut points = Vec::new();
    for i in 0..=steps {
        for j in 0..=steps {
            let (x, y) = (coord(i), coord(j));
            if x * x + y * y <= 1.0 {
                points.push([x, y]);
            }
        }
    }
    for i in 0..=steps {
        let x = coord(i);
        let y = root(1.0 - x * x);
        if !points.contains(&[x, y]) {
            points.push([x, y]);
        }
    }
    points
}

/// Minimum residual of one quarter-disk check over [`quarter_disk_points`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub inequality: ScalarLemma,
    pub eta: f64,
    pub resolution: usize,
    pub points: usize,
    pub min_residual: f64,
    pub argmin: [f64; 2],
    /// Points with `|residual| ≤ LEMMA_TOL`.
    pub equality_points: usize,
    /// Equality points on the arc `x² + y² = 1`.
    pub boundary_equalities: Vec<[f64; 2]>,
}

impl SweepSummary {
    pub fn holds(&self) -> bool {
        self.min_residual >= -LEMMA_TOL
    }
}

pub fn sweep_quarter_disk(which: ScalarLemma, eta: f64, resolution: usize) -> Result<SweepSummary> {
    if !ScalarLemma::QUARTER_DISK.contains(&which) {
        return Err(Error::Param(format!("{which} is not a quarter-disk inequality")));
    }
    if resolution < 2 {
        return Err(Error::Param("sweep resolution must be at least 2".into()));
    }
    let points = quarter_disk_points(resolution);
    let mut summary = SweepSummary {
        inequality: which,
        eta,
        resolution,
        points: points.len(),
        min_residual: f64::INFINITY,
        argmin: [0.0, 0.0],
        equality_points: 0,
        boundary_equalities: Vec::new(),
    };
    for p in &points {
        let r = check_scalar_lemma(which, &[p[0], p[1], eta])?;
        if r < summary.min_residual {
            summary.min_residual = r;
            summary.argmin = *p;
        }
        if r.abs() <= LEMMA_TOL {
            summary.equality_points += 1;
            if (p[0] * p[0] + p[1] * p[1] - 1.0).abs() <= DOMAIN_ROUNDING {
                summary.boundary_equalities.push(*p);
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measures::{b_of, g_of};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn res(which: ScalarLemma, args: &[f64]) -> f64 {
        check_scalar_lemma(which, args).unwrap()
    }

    #[test]
    fn bures_fixtures() {
        assert_abs_diff_eq!(res(ScalarLemma::BuresSuperadditive, &[1.0, 0.0, 1.0]), 0.0, epsilon = 1e-15);
        let expected = b_of(1.0).unwrap() - b_of(0.6).unwrap() - b_of(0.8).unwrap();
        assert_abs_diff_eq!(expected, 0.5857864 - 0.1026334 - 0.2111456, epsilon = 1e-7);
        assert_abs_diff_eq!(res(ScalarLemma::BuresSuperadditive, &[0.6, 0.8, 1.0]), expected, epsilon = 1e-15);
        assert!(expected > 0.0);
    }

    #[test]
    fn geometric_fixture_is_exact() {
        // √(1 − 0.36) = 0.8 and √(1 − 0.64) = 0.6, so the residual is 0.5 − 0.1 − 0.2.
        assert_abs_diff_eq!(res(ScalarLemma::GeometricSuperadditive, &[0.6, 0.8]), 0.2, epsilon = 1e-15);
        assert_abs_diff_eq!(g_of(0.6).unwrap(), 0.1, epsilon = 1e-15);
    }

    #[test]
    fn binomial_tail_fixture() {
        // (1+1)² = 4 against 1 + 1 + (4 − 2)·1 = 4.
        assert_abs_diff_eq!(res(ScalarLemma::BinomialTail, &[2.0, 1.0, 1.0]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn sorted_power_sum_fixture() {
        // (3 + 2 + 1)² = 36 against 9 + 3·4 + 5·1 = 26.
        assert_abs_diff_eq!(res(ScalarLemma::SortedPowerSum, &[3.0, 2.0, 1.0, 2.0]), 10.0, epsilon = 1e-12);
        assert_abs_diff_eq!(res(ScalarLemma::SortedPowerSum, &[0.4, 0.3, 1.0]), 0.0, epsilon = 1e-15);
    }

    #[test]
    fn domain_violations_are_errors() {
        let bad: &[(ScalarLemma, &[f64])] = &[
            (ScalarLemma::BuresSuperadditive, &[0.9, 0.9, 1.0]),
            (ScalarLemma::GeometricSuperadditive, &[-0.1, 0.2]),
            (ScalarLemma::RootSum, &[0.5, 0.5, 0.5]),
            (ScalarLemma::RootProduct, &[0.5]),
            (ScalarLemma::SortedPowerSum, &[0.1, 0.2, 1.0]),
            (ScalarLemma::SortedPowerSum, &[0.3, -0.1, 1.0]),
            (ScalarLemma::SortedPowerSum, &[2.0]),
            (ScalarLemma::BinomialTail, &[0.5, 1.0, 0.1]),
            (ScalarLemma::BinomialTail, &[2.0, 2.0, 0.6]),
            (ScalarLemma::BinomialTail, &[2.0, 0.5, 0.1]),
        ];
        for (which, args) in bad {
            assert!(matches!(check_scalar_lemma(*which, args), Err(Error::Domain(_))), "{which} {args:?}");
        }
    }

    #[test]
    fn names_round_trip() {
        for which in
            ScalarLemma::QUARTER_DISK.into_iter().chain([ScalarLemma::SortedPowerSum, ScalarLemma::BinomialTail])
        {
            assert_eq!(which.as_str().parse::<ScalarLemma>().unwrap(), which);
            assert_eq!(serde_json::to_string(&which).unwrap(), format!("\"{which}\""));
        }
    }

    #[test]
    fn sweep_finds_boundary_equalities() {
        let s = sweep_quarter_disk(ScalarLemma::BuresSuperadditive, 2.0, 11).unwrap();
        assert!(s.holds());
        assert!(s.boundary_equalities.contains(&[1.0, 0.0]));
        assert!(s.boundary_equalities.contains(&[0.0, 1.0]));
        assert!(sweep_quarter_disk(ScalarLemma::BinomialTail, 1.0, 11).is_err());
    }

    proptest! {
        #[test]
        fn quarter_disk_checks_hold(r in 0.0f64..=1.0, angle in 0.0f64..=std::f64::consts::FRAC_PI_2, eta in 1.0f64..5.0) {
            let (x, y) = (r * angle.cos(), r * angle.sin());
            for which in ScalarLemma::QUARTER_DISK {
                prop_assert!(res(which, &[x.max(0.0), y.max(0.0), eta]) >= -LEMMA_TOL, "{}", which);
            }
        }

        #[test]
        fn binomial_tail_holds(t in 1.0f64..6.0, k in 1.0f64..5.0, frac in 0.0f64..=1.0) {
            prop_assert!(res(ScalarLemma::BinomialTail, &[t, k, frac / k]) >= -LEMMA_TOL);
        }
    }
}
