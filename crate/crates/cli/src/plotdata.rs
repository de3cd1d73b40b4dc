use std::path::PathBuf;

use clap::{Args, ValueEnum};
use serde::Serialize;
use zipfmix::corpus::read_table;
use zipfmix::distributions::{zipf_fit_mle, ZipfDist};
use zipfmix::inference::{lambda_sequence_from_table_with, Weighting};
use zipfmix::mixtures::{MixingLambda, MixingS};

use crate::error::{CliError, CliResult};
use crate::output::{value_name, Context};

pub const PMF_ALPHAS: [f64; 4] = [1.5, 2.0, 3.5, 5.0];
pub const MIXING_LAMBDA_ALPHAS: [f64; 5] = [1.1, 1.5, 2.0, 3.5, 5.0];

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Figure {
    /// Zipf pmf at x = 1..=x-max.
    Pmf,
    /// Mixing density over s, and the same density over p = 1 - e^-s.
    MixingS,
    /// Mixing density over lambda.
    MixingLambda,
    /// Weighted empirical CDF of a table's rates against the fitted mixing CDF.
    CdfOverlay,
}

#[derive(Args)]
pub struct PlotArgs {
    #[arg(value_enum)]
    figure: Figure,
    /// Exponents to plot. For cdf-overlay, overrides the fitted value.
    #[arg(long = "alpha", num_args = 1..)]
    alphas: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    x_max: u64,
    /// Grid size for the continuous densities.
    #[arg(long, default_value_t = 200)]
    points: usize,
    /// Frequency table for cdf-overlay.
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long, default_value = "per-word")]
    weighting: Weighting,
}

#[derive(Debug, Serialize)]
struct CurvePoint {
    series: String,
    x: f64,
    y: f64,
}

#[derive(Debug, Serialize)]
struct OverlayPoint {
    lambda: f64,
    empirical: f64,
    theoretical: f64,
}

fn log_grid(lo: f64, hi: f64, points: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    let m = points.max(2) - 1;
    (0..=m).map(|k| (a + (b - a) * k as f64 / m as f64).exp()).collect()
}

fn alphas_or(args: &PlotArgs, default: &[f64]) -> Vec<f64> {
    if args.alphas.is_empty() {
        default.to_vec()
    } else {
        args.alphas.clone()
    }
}

fn pmf(args: &PlotArgs) -> CliResult<Vec<CurvePoint>> {
    let mut rows = Vec::new();
    for a in alphas_or(args, &PMF_ALPHAS) {
        let d = ZipfDist::new(a)?;
        for x in 1..=args.x_max {
            rows.push(CurvePoint {
                series: format!("alpha={a}"),
                x: x as f64,
                y: d.pmf(x)?,
            });
        }
    }
    Ok(rows)
}

fn mixing_s(args: &PlotArgs) -> CliResult<Vec<CurvePoint>> {
    let grid = log_grid(1e-3, 20.0, args.points);
    let mut rows = Vec::new();
    for a in alphas_or(args, &PMF_ALPHAS) {
        let m = MixingS::new(a)?;
        for &s in &grid {
            rows.push(CurvePoint {
                series: format!("s alpha={a}"),
                x: s,
                y: m.pdf(s)?,
            });
        }
        for &s in &grid {
            let p = -(-s).exp_m1();
            rows.push(CurvePoint {
                series: format!("p alpha={a}"),
                x: p,
                y: m.pdf_in_p(p)?,
            });
        }
    }
    Ok(rows)
}

fn mixing_lambda(args: &PlotArgs) -> CliResult<Vec<CurvePoint>> {
    let grid = log_grid(1e-3, 50.0, args.points);
    let mut rows = Vec::new();
    for a in alphas_or(args, &MIXING_LAMBDA_ALPHAS) {
        let m = MixingLambda::new(a)?;
        for &l in &grid {
            rows.push(CurvePoint {
                series: format!("alpha={a}"),
                x: l,
                y: m.pdf(l)?,
            });
        }
    }
    Ok(rows)
}

fn cdf_overlay(args: &PlotArgs) -> CliResult<(f64, Vec<OverlayPoint>)> {
    let path = args
        .input
        .as_ref()
        .ok_or_else(|| CliError::Input("cdf-overlay needs --input".into()))?;
    let table = read_table(path)?;
    let alpha = match args.alphas.first() {
        Some(&a) => a,
        None => zipf_fit_mle(&table)?.alpha_hat,
    };
    let mixing = MixingLambda::new(alpha)?;
    let seq = lambda_sequence_from_table_with(&table, args.weighting)?;
    let total = seq.total_weight() as f64;
    let mut cum = 0u64;
    let mut rows = Vec::with_capacity(seq.len());
    for e in seq.entries() {
        cum += e.weight;
        rows.push(OverlayPoint {
            lambda: e.lambda,
            empirical: cum as f64 / total,
            theoretical: mixing.try_cdf(e.lambda)?,
        });
    }
    Ok((alpha, rows))
}

pub fn run(ctx: &Context, args: &PlotArgs) -> CliResult {
    let name = value_name(&args.figure);
    match args.figure {
        Figure::Pmf => ctx.emit("plotdata", &[("figure", name)], &pmf(args)?),
        Figure::MixingS => ctx.emit("plotdata", &[("figure", name)], &mixing_s(args)?),
        Figure::MixingLambda => ctx.emit("plotdata", &[("figure", name)], &mixing_lambda(args)?),
        Figure::CdfOverlay => {
            let (alpha, rows) = cdf_overlay(args)?;
            ctx.emit(
                "plotdata",
                &[
                    ("figure", name),
                    ("alpha", alpha.to_string()),
                    ("weighting", args.weighting.to_string()),
                ],
                &rows,
            )
        }
    }
}
