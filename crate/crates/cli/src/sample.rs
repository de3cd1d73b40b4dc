use std::io::Write;

use clap::{Args, ValueEnum};
use zipfmix::distributions::{zipf_pss_sample, RandomStream, ZipfDist, ZtpDist};
use zipfmix::mixtures::{sample_zipf_via_geometric, sample_zipf_via_ztp, MixingLambda, MixingS};

use crate::error::{CliError, CliResult};
use crate::output::{value_name, Context, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Distribution {
    /// Zipf(alpha), drawn directly.
    Zipf,
    /// Zipf(alpha) through S ~ f(s), X ~ Geometric(s).
    GeometricPath,
    /// Zipf(alpha) through lambda ~ f(lambda), X ~ ZTP(lambda).
    ZtpPath,
    /// Zero-truncated Poisson(lambda).
    Ztp,
    /// Poisson(lambda)-stopped sum of Zipf(alpha).
    Pss,
    /// Mixing density over s.
    MixingS,
    /// Mixing density over lambda.
    MixingLambda,
}

#[derive(Args)]
pub struct SampleArgs {
    #[arg(value_enum)]
    distribution: Distribution,
    #[arg(long)]
    alpha: Option<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    #[arg(long, default_value_t = 1000)]
    n: usize,
}

enum Draws {
    Counts(Vec<u64>),
    Reals(Vec<f64>),
}

fn required(v: Option<f64>, name: &str, dist: Distribution) -> CliResult<f64> {
    v.ok_or_else(|| CliError::Input(format!("--{name} is required for {}", value_name(&dist))))
}

pub fn run(ctx: &Context, args: &SampleArgs) -> CliResult {
    let mut rng = RandomStream::new(ctx.seed);
    let d = args.distribution;
    let n = args.n;
    let draws = match d {
        Distribution::Zipf => Draws::Counts(ZipfDist::new(required(args.alpha, "alpha", d)?)?.sample_n(&mut rng, n)),
        Distribution::GeometricPath => Draws::Counts(sample_zipf_via_geometric(
            required(args.alpha, "alpha", d)?,
            &mut rng,
            n,
        )?),
        Distribution::ZtpPath => Draws::Counts(sample_zipf_via_ztp(required(args.alpha, "alpha", d)?, &mut rng, n)?),
        Distribution::Ztp => Draws::Counts(ZtpDist::new(required(args.lambda, "lambda", d)?)?.sample_n(&mut rng, n)),
        Distribution::Pss => Draws::Counts(zipf_pss_sample(
            required(args.alpha, "alpha", d)?,
            required(args.lambda, "lambda", d)?,
            &mut rng,
            n,
        )?),
        Distribution::MixingS => Draws::Reals(MixingS::new(required(args.alpha, "alpha", d)?)?.sample_n(&mut rng, n)),
        Distribution::MixingLambda => {
            Draws::Reals(MixingLambda::new(required(args.alpha, "alpha", d)?)?.sample_n(&mut rng, n))
        }
    };

    let name = value_name(&d);
    match ctx.format {
        // Plain values keep the file directly loadable; the header goes to stderr.
        Format::Csv => {
            eprintln!("{}", ctx.header_line("sample", &[("distribution", name)]));
            let mut out = ctx.writer()?;
            match &draws {
                Draws::Counts(v) => v.iter().try_for_each(|x| writeln!(out, "{x}"))?,
                Draws::Reals(v) => v.iter().try_for_each(|x| writeln!(out, "{x}"))?,
            }
            out.flush()?;
            Ok(())
        }
        Format::Json => match &draws {
            Draws::Counts(v) => ctx.emit("sample", &[("distribution", name)], v),
            Draws::Reals(v) => ctx.emit("sample", &[("distribution", name)], v),
        },
    }
}
