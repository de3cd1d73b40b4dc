//! Numerical checks of the mixture identities by quadrature.

use rayon::prelude::*;
use serde::Serialize;

use super::mixing_lambda::{MixingLambda, MixingLambdaGivenS};
use super::mixing_s::MixingS;
use crate::distributions::{GeometricShifted, ZipfDist, ZtpDist};
use crate::error::{domain, Result};
use crate::specfun::{integrate_log_scale, polylog_integral, riemann_zeta, QuadResult, QuadratureConfig};

/// Conditioning values used for the inner geometric-from-ZTP PGF identity.
pub const INNER_S_GRID: [f64; 5] = [0.1, 0.5, 1.0, 2.0, 5.0];

/// Whether a report is judged on relative or absolute error.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ErrorScale {
    Relative,
    Absolute,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct IdentityReport {
    pub identity: String,
    pub alpha: f64,
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    /// Grid point with the largest judged error.
    pub worst_point: String,
    pub grid_description: String,
    pub tolerance: f64,
    pub judged_on: ErrorScale,
    /// All quadratures met their own error targets.
    pub converged: bool,
    pub passed: bool,
}

struct Comparison {
    label: String,
    lhs: QuadResult,
    rhs: f64,
}

fn summarize(
    identity: &str,
    alpha: f64,
    grid_description: String,
    tolerance: f64,
    judged_on: ErrorScale,
    comparisons: Vec<Comparison>,
) -> IdentityReport {
    let mut max_abs: f64 = 0.0;
    let mut max_rel: f64 = 0.0;
    let mut worst = (f64::NEG_INFINITY, String::new());
    let mut converged = true;
    for c in &comparisons {
        converged &= c.lhs.converged;
        let abs = (c.lhs.value - c.rhs).abs();
        let rel = if c.rhs != 0.0 { abs / c.rhs.abs() } else { abs };
        // NaN must not hide behind max().
        let (abs, rel) = if abs.is_nan() {
            (f64::INFINITY, f64::INFINITY)
        } else {
            (abs, rel)
        };
        max_abs = max_abs.max(abs);
        max_rel = max_rel.max(rel);
        let judged = match judged_on {
            ErrorScale::Relative => rel,
            ErrorScale::Absolute => abs,
        };
        if judged > worst.0 {
            worst = (judged, c.label.clone());
        }
    }
    let judged_max = match judged_on {
        ErrorScale::Relative => max_rel,
        ErrorScale::Absolute => max_abs,
    };
    IdentityReport {
        identity: identity.to_string(),
        alpha,
        max_abs_error: max_abs,
        max_rel_error: max_rel,
        worst_point: worst.1,
        grid_description,
        tolerance,
        judged_on,
        converged,
        passed: converged && judged_max <= tolerance,
    }
}

fn check_tolerance(tol: f64) -> Result<()> {
    if !(tol > 0.0) || !tol.is_finite() {
        return domain(format!("tolerance must be finite and > 0, got {tol}"));
    }
    Ok(())
}

/// Quadrature target a factor below the identity tolerance, but not beyond what
/// double precision can deliver.
fn quad_config(tol: f64) -> QuadratureConfig {
    QuadratureConfig::relative((tol * 1e-2).max(1e-13))
}

/// `int_0^inf geom_pmf(x; s) f(s) ds = x^-alpha / zeta(alpha)` for `x = 1..=x_max`,
/// judged on relative error.
pub fn verify_geometric_mixture(alpha: f64, x_max: u64, tol: f64) -> Result<IdentityReport> {
    check_tolerance(tol)?;
    if x_max == 0 {
        return domain("x_max must be at least 1");
    }
    let mixing = MixingS::new(alpha)?;
    let zipf = ZipfDist::new(alpha)?;
    let cfg = quad_config(tol);
    let comparisons = (1..=x_max)
        .into_par_iter()
        .map(|x| {
            let lhs = integrate_log_scale(
                |s| {
                    let g = GeometricShifted::new(s).expect("s > 0 on the integration range");
                    g.pmf(x) * mixing.density(s)
                },
                f64::INFINITY,
                &cfg,
            );
            Comparison {
                label: format!("x = {x}"),
                lhs,
                rhs: zipf.pmf(x).expect("x >= 1"),
            }
        })
        .collect();
    Ok(summarize(
        "geometric mixture reproduces the Zipf pmf",
        alpha,
        format!("x = 1..={x_max}"),
        tol,
        ErrorScale::Relative,
        comparisons,
    ))
}

/// `int_0^inf ztp_pmf(x; lambda) f(lambda) dlambda = x^-alpha / zeta(alpha)` for
/// `x = 1..=x_max`, judged on relative error. Every outer node evaluates the inner
/// integral of the mixing density.
pub fn verify_ztp_mixture(alpha: f64, x_max: u64, tol: f64) -> Result<IdentityReport> {
    check_tolerance(tol)?;
    if x_max == 0 {
        return domain("x_max must be at least 1");
    }
    let mixing = MixingLambda::new(alpha)?;
    let zipf = ZipfDist::new(alpha)?;
    let cfg = quad_config(tol);
    let comparisons = (1..=x_max)
        .into_par_iter()
        .map(|x| {
            let inner_ok = std::cell::Cell::new(true);
            let mut lhs = integrate_log_scale(
                |l| {
                    let ztp = ZtpDist::new(l).expect("lambda > 0 on the integration range");
                    let p = ztp.pmf(x);
                    if p == 0.0 {
                        return 0.0;
                    }
                    match mixing.pdf_with_error(l) {
                        Ok(r) => {
                            if !r.converged {
                                inner_ok.set(false);
                            }
                            p * r.value
                        }
                        Err(_) => {
                            inner_ok.set(false);
                            0.0
                        }
                    }
                },
                f64::INFINITY,
                &cfg,
            );
            lhs.converged &= inner_ok.get();
            Comparison {
                label: format!("x = {x}"),
                lhs,
                rhs: zipf.pmf(x).expect("x >= 1"),
            }
        })
        .collect();
    Ok(summarize(
        "zero-truncated Poisson mixture reproduces the Zipf pmf",
        alpha,
        format!("x = 1..={x_max}"),
        tol,
        ErrorScale::Relative,
        comparisons,
    ))
}

/// PGF forms of both mixtures, judged on absolute error:
/// `int geom_pgf(z; s) f(s) ds = Li_alpha(z)/zeta(alpha)` on `z_grid`, and
/// `int ztp_pgf(z; lambda) f*(lambda; s) dlambda = geom_pgf(z; s)` on
/// `z_grid x` [`INNER_S_GRID`].
pub fn verify_pgf_mixtures(alpha: f64, z_grid: &[f64], tol: f64) -> Result<IdentityReport> {
    check_tolerance(tol)?;
    if let Some(z) = z_grid.iter().find(|z| !(**z < 1.0)) {
        return domain(format!("PGF identities are checked for z < 1, got {z}"));
    }
    let mixing = MixingS::new(alpha)?;
    let zipf = ZipfDist::new(alpha)?;
    let cfg = quad_config(tol);

    let mut jobs: Vec<(f64, Option<f64>)> = z_grid.iter().map(|&z| (z, None)).collect();
    for &z in z_grid {
        jobs.extend(INNER_S_GRID.iter().map(|&s| (z, Some(s))));
    }

    let comparisons: Result<Vec<Comparison>> = jobs
        .into_par_iter()
        .map(|(z, s)| match s {
            None => Ok(Comparison {
                label: format!("outer z = {z}"),
                lhs: integrate_log_scale(
                    |s| {
                        let g = GeometricShifted::new(s).expect("s > 0");
                        g.pgf(z).expect("z < 1 <= e^s") * mixing.density(s)
                    },
                    f64::INFINITY,
                    &cfg,
                ),
                rhs: zipf.pgf(z)?,
            }),
            Some(s) => {
                let cond = MixingLambdaGivenS::new(s)?;
                Ok(Comparison {
                    label: format!("inner z = {z}, s = {s}"),
                    lhs: integrate_log_scale(
                        |l| {
                            let ztp = ZtpDist::new(l).expect("lambda > 0");
                            ztp.pgf(z) * cond.pdf(l).unwrap_or(0.0)
                        },
                        f64::INFINITY,
                        &cfg,
                    ),
                    rhs: GeometricShifted::new(s)?.pgf(z)?,
                })
            }
        })
        .collect();

    let grid: Vec<String> = z_grid.iter().map(|z| z.to_string()).collect();
    Ok(summarize(
        "PGF mixtures (geometric over s, ZTP over lambda given s)",
        alpha,
        format!("z in {{{}}}, inner s in {:?}", grid.join(", "), INNER_S_GRID),
        tol,
        ErrorScale::Absolute,
        comparisons?,
    ))
}

/// `h(z) = Li_alpha(z) / zeta(alpha)` at each (negative, strictly decreasing) `z`,
/// evaluated through the Bose-Einstein integral. A ZTMP law would need `h` to
/// approach a finite limit as `z -> -inf`.
pub fn check_not_ztmp(alpha: f64, z_values: &[f64]) -> Result<Vec<f64>> {
    if z_values.is_empty() {
        return domain("no z values supplied");
    }
    if let Some(z) = z_values.iter().find(|z| !(**z < 0.0) || z.is_infinite()) {
        return domain(format!("z values must be finite and negative, got {z}"));
    }
    if z_values.windows(2).any(|w| !(w[1] < w[0])) {
        return domain("z values must be strictly decreasing");
    }
    let zeta = riemann_zeta(alpha)?;
    z_values
        .iter()
        .map(|&z| Ok(polylog_integral(alpha, z)? / zeta))
        .collect()
}

pub fn is_strictly_decreasing(values: &[f64]) -> bool {
    values.windows(2).all(|w| w[1] < w[0])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_identity_small_grid() {
        let r = verify_geometric_mixture(2.0, 20, 1e-8).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(r.max_rel_error < 1e-10);
    }

    #[test]
    fn ztp_identity_small_grid() {
        let r = verify_ztp_mixture(2.0, 5, 1e-6).unwrap();
        assert!(r.passed, "{r:?}");
    }

    #[test]
    fn pgf_identities() {
        let r = verify_pgf_mixtures(2.0, &[-0.5, 0.0, 0.3, 0.9], 1e-7).unwrap();
        assert!(r.passed, "{r:?}");
        assert!(verify_pgf_mixtures(2.0, &[1.0], 1e-7).is_err());
    }

    #[test]
    fn impossible_tolerance_fails_honestly() {
        let r = verify_geometric_mixture(2.0, 3, 1e-30).unwrap();
        assert!(!r.passed);
        assert!(verify_geometric_mixture(2.0, 3, 0.0).is_err());
    }

    #[test]
    fn not_ztmp_sequence() {
        let z: Vec<f64> = (1..=6).map(|k| -(10f64.powi(k))).collect();
        let h = check_not_ztmp(2.0, &z).unwrap();
        assert!(h.iter().all(|&v| v < 0.0));
        assert!(is_strictly_decreasing(&h));
        assert!(check_not_ztmp(2.0, &[0.0]).is_err());
        assert!(check_not_ztmp(2.0, &[-1.0, -0.5]).is_err());
    }
}
