use clap::Args;
use serde::Serialize;
use zipfmix::mixtures::{
    check_not_ztmp, is_strictly_decreasing, verify_geometric_mixture, verify_pgf_mixtures, verify_ztp_mixture,
    ErrorScale, IdentityReport,
};

use crate::error::{CliError, CliResult};
use crate::output::Context;

pub const DEFAULT_ALPHAS: [f64; 4] = [1.5, 2.0, 3.5, 5.0];
pub const PGF_Z: [f64; 3] = [-0.5, 0.3, 0.9];
pub const NOT_ZTMP_Z: [f64; 6] = [-1e1, -1e2, -1e3, -1e4, -1e5, -1e6];

/// Smallest tolerance the quadratures can certify in double precision.
pub const TOL_FLOOR: f64 = 1e-12;

#[derive(Args)]
pub struct VerifyArgs {
    /// Exponents to check; defaults to 1.5, 2, 3.5 and 5.
    #[arg(long = "alpha", num_args = 1..)]
    alphas: Vec<f64>,
    /// A single tolerance replacing the per-check defaults.
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long, default_value_t = 200)]
    x_max_geometric: u64,
    #[arg(long, default_value_t = 50)]
    x_max_ztp: u64,
}

#[derive(Debug, Serialize)]
struct VerifyRow {
    check: &'static str,
    alpha: f64,
    /// Judged error for identities, `h(z)` at the last z for the ZTMP check.
    statistic: f64,
    tolerance: Option<f64>,
    converged: bool,
    passed: bool,
    detail: String,
}

fn identity_row(check: &'static str, r: IdentityReport) -> VerifyRow {
    let (statistic, scale) = match r.judged_on {
        ErrorScale::Relative => (r.max_rel_error, "relative"),
        ErrorScale::Absolute => (r.max_abs_error, "absolute"),
    };
    VerifyRow {
        check,
        alpha: r.alpha,
        statistic,
        tolerance: Some(r.tolerance),
        converged: r.converged,
        passed: r.passed,
        detail: format!("{scale} error, worst at {}; {}", r.worst_point, r.grid_description),
    }
}

/// A ZTMP law needs `h(z)` to approach a finite limit as `z -> -inf`. Decade
/// steps that never shrink rule that out on the sampled range.
fn not_ztmp_row(alpha: f64) -> CliResult<VerifyRow> {
    let h = check_not_ztmp(alpha, &NOT_ZTMP_Z)?;
    let decreasing = is_strictly_decreasing(&h);
    let steps: Vec<f64> = h.windows(2).map(|w| w[0] - w[1]).collect();
    let growing = steps.windows(2).all(|s| s[1] >= s[0]);
    let last = *h.last().expect("non-empty grid");
    Ok(VerifyRow {
        check: "not-ztmp",
        alpha,
        statistic: last,
        tolerance: None,
        converged: h.iter().all(|v| v.is_finite()),
        passed: decreasing && growing,
        detail: format!("h(-1e6) = {last}; strictly decreasing: {decreasing}; decade steps non-shrinking: {growing}"),
    })
}

fn ztp_default_tol(alpha: f64) -> f64 {
    // Heavier tails converge more slowly.
    if alpha < 1.5 {
        1e-5
    } else {
        1e-6
    }
}

pub fn run(ctx: &Context, args: &VerifyArgs) -> CliResult {
    if let Some(t) = args.tol {
        if t.is_nan() || t < TOL_FLOOR {
            return Err(CliError::Input(format!(
                "tolerance {t:e} is below {TOL_FLOOR:e}, which double-precision quadrature cannot certify"
            )));
        }
    }
    let alphas: Vec<f64> = if args.alphas.is_empty() {
        DEFAULT_ALPHAS.to_vec()
    } else {
        args.alphas.clone()
    };
    let mut rows = Vec::new();
    for &a in &alphas {
        rows.push(identity_row(
            "geometric-mixture",
            verify_geometric_mixture(a, args.x_max_geometric, args.tol.unwrap_or(1e-8))?,
        ));
        rows.push(identity_row(
            "ztp-mixture",
            verify_ztp_mixture(a, args.x_max_ztp, args.tol.unwrap_or_else(|| ztp_default_tol(a)))?,
        ));
        rows.push(identity_row(
            "pgf-mixtures",
            verify_pgf_mixtures(a, &PGF_Z, args.tol.unwrap_or(1e-7))?,
        ));
        rows.push(not_ztmp_row(a)?);
    }
    ctx.emit("verify", &[], &rows)?;
    judge(&rows)
}

/// Non-convergence is a numerical error (exit 2); a converged miss is a failed
/// identity (exit 1).
fn judge(rows: &[VerifyRow]) -> CliResult {
    let unconverged: Vec<String> = rows
        .iter()
        .filter(|r| !r.converged)
        .map(|r| format!("{} at alpha {}", r.check, r.alpha))
        .collect();
    if !unconverged.is_empty() {
        return Err(CliError::Input(format!("no convergence: {}", unconverged.join(", "))));
    }
    let failed: Vec<String> = rows
        .iter()
        .filter(|r| !r.passed)
        .map(|r| format!("{} at alpha {}", r.check, r.alpha))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::Failed(format!("failed: {}", failed.join(", "))))
    }
}
