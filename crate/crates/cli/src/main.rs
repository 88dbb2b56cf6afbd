use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Args, Parser, Subcommand, ValueEnum};

use padic_hypergeo::charsums::{self, CharSumCtx};
use padic_hypergeo::gfunction::evaluate_ngn;
use padic_hypergeo::hyperseries::{trunc_hyp, TruncSeriesSpec};
use padic_hypergeo::qseries::{Form, Newforms};
use padic_hypergeo::rat::parse_list;
use padic_hypergeo::verify::{self, Summary, VerifyConfig};
use padic_hypergeo::{GammaTable, GnParams, PadicNum, Rat, TeichTable};

#[derive(Parser)]
#[command(
    name = "phg",
    version,
    about = "p-adic hypergeometric functions and identity checks"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Prime {
    #[arg(long)]
    p: u64,
    #[arg(long, default_value_t = 3)]
    prec: u32,
}

#[derive(Subcommand)]
enum Cmd {
    /// Morita gamma value at a rational argument
    Gamma {
        #[command(flatten)]
        at: Prime,
        #[arg(long, allow_hyphen_values = true)]
        arg: Rat,
    },
    /// Teichmuller lift of x, optionally raised to a power
    Teich {
        #[command(flatten)]
        at: Prime,
        #[arg(long, allow_hyphen_values = true)]
        x: i64,
        #[arg(long = "pow", default_value_t = 1, allow_hyphen_values = true)]
        power: i64,
    },
    /// nGn[a; b | s]_p
    Ngn {
        #[command(flatten)]
        at: Prime,
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        /// defaults to all ones
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, default_value_t = 1, allow_hyphen_values = true)]
        s: i64,
    },
    /// Jacobi sum J(w^-j1, w^-j2), from gamma values or by direct summation
    Jacobi {
        #[command(flatten)]
        at: Prime,
        #[arg(long, allow_hyphen_values = true)]
        j1: i64,
        #[arg(long, allow_hyphen_values = true)]
        j2: i64,
        #[arg(long, value_enum, default_value_t = Via::Gamma)]
        via: Via,
    },
    /// Truncated rFs series mod p^prec
    Fseries {
        #[command(flatten)]
        at: Prime,
        #[arg(long, allow_hyphen_values = true)]
        upper: String,
        /// defaults to all ones, one fewer than upper
        #[arg(long, allow_hyphen_values = true)]
        lower: Option<String>,
        #[arg(long, default_value = "1", allow_hyphen_values = true)]
        z: Rat,
        /// last index, an integer or `p-1`
        #[arg(long, default_value = "p-1")]
        trunc: String,
    },
    /// q-expansion of f1, f2 or g, one `n<TAB>coef` line per exponent
    Eta {
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long, default_value_t = 100)]
        nmax: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// A single coefficient of f1, f2 or g
    Coef {
        #[arg(long, value_enum)]
        form: FormArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        cache: Option<PathBuf>,
    },
    /// Check identities over a range of primes
    Verify(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Via {
    Gamma,
    Sum,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormArg {
    F1,
    F2,
    G,
}

impl From<FormArg> for Form {
    fn from(f: FormArg) -> Form {
        match f {
            FormArg::F1 => Form::F1,
            FormArg::F2 => Form::F2,
            FormArg::G => Form::G,
        }
    }
}

#[derive(Args)]
struct VerifyArgs {
    /// registry id or `all`
    id: String,
    #[arg(long, default_value_t = 3)]
    p_min: u64,
    #[arg(long, default_value_t = 47, conflicts_with = "deep")]
    p_max: u64,
    #[arg(long, default_value_t = 3, conflicts_with = "deep")]
    prec: u32,
    #[arg(long)]
    jobs: Option<usize>,
    /// primes up to 97 at precision 4
    #[arg(long)]
    deep: bool,
    /// write JSONL here instead of stdout
    #[arg(long)]
    json: Option<PathBuf>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long, requires = "d2")]
    d1: Option<u64>,
    #[arg(long, requires = "d1")]
    d2: Option<u64>,
}

/// Failures that are the caller's fault exit with 2.
struct Usage(anyhow::Error);

fn usage<E: Into<anyhow::Error>>(e: E) -> Usage {
    Usage(e.into())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(code) => code,
        Err(Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn print(v: impl std::fmt::Display) -> Result<ExitCode, Usage> {
    println!("{v}");
    Ok(ExitCode::SUCCESS)
}

fn run(cmd: Cmd) -> Result<ExitCode, Usage> {
    match cmd {
        Cmd::Gamma { at, arg } => {
            let t = GammaTable::build(at.p, at.prec, [arg]).map_err(usage)?;
            print(t.gamma_p(arg).map_err(usage)?)
        }
        Cmd::Teich { at, x, power } => {
            let t = TeichTable::build(at.p, at.prec).map_err(usage)?;
            let u = t.teich_pow(x, power).map_err(usage)?;
            print(PadicNum::new(at.p, 0, u, at.prec).map_err(usage)?)
        }
        Cmd::Ngn { at, a, b, s } => {
            let a = parse_list(&a).map_err(usage)?;
            let params = match b {
                Some(b) => GnParams::new(a, parse_list(&b).map_err(usage)?).map_err(usage)?,
                None => GnParams::with_unit_lower(a),
            };
            print(evaluate_ngn(&params, s, at.p, at.prec).map_err(usage)?)
        }
        Cmd::Jacobi { at, j1, j2, via } => {
            let session = padic_hypergeo::Session::new(at.p, at.prec, charsums::gamma_args(at.p))
                .map_err(usage)?;
            let v = match via {
                Via::Gamma => charsums::jacobi_via_gamma(&session, j1, j2),
                Via::Sum => CharSumCtx::new(&session.teich).jacobi_sum(-j1, -j2),
            };
            print(v.map_err(usage)?)
        }
        Cmd::Fseries {
            at,
            upper,
            lower,
            z,
            trunc,
        } => {
            let upper = parse_list(&upper).map_err(usage)?;
            let mut spec = TruncSeriesSpec::balanced(upper, at.p, at.prec);
            if let Some(l) = lower {
                spec.lower = parse_list(&l).map_err(usage)?;
            }
            spec.z = z;
            spec.m = match trunc.as_str() {
                "p-1" => at.p as usize - 1,
                n => n
                    .parse()
                    .with_context(|| format!("bad --trunc {n:?}"))
                    .map_err(usage)?,
            };
            print(trunc_hyp(&spec).map_err(usage)?)
        }
        Cmd::Eta { form, nmax, cache } => {
            let forms = newforms(nmax, cache)?;
            let series = forms.series(form.into());
            let mut out = BufWriter::new(io::stdout().lock());
            for (n, c) in series.coeffs().iter().take(nmax + 1).enumerate() {
                writeln!(out, "{n}\t{c}").map_err(usage)?;
            }
            out.flush().map_err(usage)?;
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Coef { form, n, cache } => {
            let forms = newforms(n.max(1), cache)?;
            let series = forms.series(form.into());
            print(series.coeff(n).map_err(usage)?)
        }
        Cmd::Verify(args) => run_verify(args),
    }
}

fn newforms(nmax: usize, cache: Option<PathBuf>) -> Result<Newforms, Usage> {
    match cache {
        Some(dir) => Newforms::load_or_compute(nmax, &dir).map_err(usage),
        None => Newforms::compute(nmax).map_err(usage),
    }
}

fn run_verify(args: VerifyArgs) -> Result<ExitCode, Usage> {
    let ids = verify::select(&args.id).map_err(usage)?;
    let mut cfg = if args.deep {
        VerifyConfig::deep()
    } else {
        VerifyConfig::new(args.p_min, args.p_max, args.prec)
    };
    cfg.p_min = args.p_min;
    cfg.jobs = args.jobs;
    cfg.cache_dir = args.cache;
    if let (Some(d1), Some(d2)) = (args.d1, args.d2) {
        cfg.d_pairs = vec![(d1, d2)];
    }
    if cfg.p_min > cfg.p_max {
        return Err(usage(anyhow::anyhow!(
            "--p-min {} exceeds --p-max {}",
            cfg.p_min,
            cfg.p_max
        )));
    }

    let reports = verify::run_selected(&ids, &cfg).map_err(usage)?;
    let jsonl = verify::to_jsonl(&reports);
    match &args.json {
        Some(path) => {
            let mut f = File::create(path)
                .with_context(|| format!("cannot create {}", path.display()))
                .map_err(usage)?;
            f.write_all(jsonl.as_bytes()).map_err(usage)?;
        }
        None => {
            let mut out = io::stdout().lock();
            out.write_all(jsonl.as_bytes()).map_err(usage)?;
            out.flush().map_err(usage)?;
        }
    }
    let summary = Summary::from_reports(&reports);
    eprintln!("{summary}");
    Ok(if summary.all_passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}
