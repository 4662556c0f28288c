use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use curvecalc::commands::{self, CheckArgs, GinMode, Theorem};
use curvecalc::oracle::Tolerances;
use curvecalc::report::Report;
use curvecalc::selftest;
use curvecalc::workspace::{OracleModel, OracleScenario, Workspace};
use curvecalc::{Error, Result};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Json,
    Table,
}

/// Exact invariants of punctured holomorphic curves, theorem checkers and a spectral oracle.
#[derive(Parser, Debug)]
#[command(name = "curvecalc", version)]
struct Cli {
    #[arg(long, global = true, value_enum, default_value = "json")]
    format: Format,
    /// Eigenvalue pairing tolerance (oracle only).
    #[arg(long, global = true)]
    tolerance: Option<f64>,
    /// Workspace file or directory containing workspace.json.
    #[arg(long, global = true)]
    workspace: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Iterated orbit invariants or curve invariants.
    Invariants {
        #[arg(long)]
        orbit: Option<String>,
        #[arg(long, default_value_t = 1)]
        cover: i64,
        #[arg(long)]
        curve: Option<String>,
    },
    /// Generalized intersection number of two curves or of a curve and an orbit cylinder.
    Gin {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: Option<String>,
        #[arg(long, conflicts_with = "b")]
        orbit: Option<String>,
        #[arg(long, default_value_t = 1)]
        cover: i64,
        /// cylindrical, witness, rin, rshift, generalized or all.
        #[arg(long, default_value = "all")]
        mode: String,
    },
    /// Adjunction defect and its identities.
    Adjunction {
        #[arg(long)]
        curve: String,
    },
    /// Evaluate a theorem: gin-zero, no-isect, sgin-zero, embedded-projection, same-direction.
    Check(CheckCli),
    /// Concatenation defect of two buildings.
    Concat {
        #[arg(long)]
        u: String,
        #[arg(long)]
        v: String,
    },
    /// Which open book alternative a curve realizes.
    Openbook {
        #[arg(long)]
        book: String,
        #[arg(long)]
        curve: String,
    },
    /// Numerical asymptotic operator checks.
    Oracle(OracleCli),
    /// Run the property and fixture suite.
    Selftest {
        #[arg(long, default_value_t = selftest::Config::default().seed)]
        seed: u64,
        #[arg(long, default_value_t = 1.0)]
        scale: f64,
        /// Run a single criterion (1 to 11).
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=11))]
        criterion: Option<u32>,
    },
}

#[derive(Args, Debug)]
struct CheckCli {
    theorem: String,
    #[arg(long)]
    a: String,
    #[arg(long)]
    b: Option<String>,
    #[arg(long, default_value_t = 0)]
    z: usize,
    #[arg(long, default_value_t = 0)]
    w: usize,
    #[arg(long)]
    flagged: bool,
}

#[derive(Args, Debug)]
struct OracleCli {
    /// Workspace scenario name, or one of elliptic, even_hyperbolic, odd_hyperbolic.
    #[arg(long)]
    scenario: String,
    /// Rotation surrogate as a float or a fraction `p/q`.
    #[arg(long)]
    theta: Option<String>,
    #[arg(long)]
    d: Option<i64>,
    #[arg(long, default_value_t = 1.0)]
    a: f64,
    #[arg(long)]
    cover: Option<usize>,
    #[arg(long)]
    modes: Option<usize>,
    #[arg(long)]
    window: Option<f64>,
}

fn parse_theta(s: &str) -> Result<f64> {
    let bad = || Error::InconsistentInput(format!("cannot read theta `{s}`"));
    match s.split_once('/') {
        Some((p, q)) => {
            let (p, q): (f64, f64) = (p.trim().parse().map_err(|_| bad())?, q.trim().parse().map_err(|_| bad())?);
            if q == 0.0 {
                return Err(bad());
            }
            Ok(p / q)
        }
        None => s.trim().parse().map_err(|_| bad()),
    }
}

fn load(path: Option<&PathBuf>) -> Result<Workspace> {
    Workspace::parse_file(&Workspace::locate(path.map(PathBuf::as_path))?)
}

fn scenario(o: &OracleCli, workspace: Option<&PathBuf>) -> Result<OracleScenario> {
    let need_d = || {
        o.d.ok_or_else(|| Error::InconsistentInput(format!("scenario `{}` needs --d", o.scenario)))
    };
    let model = match o.scenario.as_str() {
        "elliptic" => {
            let theta = o
                .theta
                .as_deref()
                .ok_or_else(|| Error::InconsistentInput("scenario `elliptic` needs --theta".into()))?;
            Some(OracleModel::Elliptic { theta: parse_theta(theta)? })
        }
        "even_hyperbolic" => Some(OracleModel::EvenHyperbolic { d: need_d()?, a: o.a }),
        "odd_hyperbolic" => Some(OracleModel::OddHyperbolic { d: need_d()?, a: o.a }),
        _ => None,
    };
    let mut s = match model {
        Some(model) => OracleScenario {
            name: o.scenario.clone(),
            model,
            cover: 1,
            modes: 32,
            window: 40.0,
        },
        None => load(workspace)?.scenario(&o.scenario)?.clone(),
    };
    s.cover = o.cover.unwrap_or(s.cover);
    s.modes = o.modes.unwrap_or(s.modes);
    s.window = o.window.unwrap_or(s.window);
    Ok(s)
}

fn run(cli: &Cli, argv: Vec<String>) -> Result<Report> {
    if cli.tolerance.is_some() && !matches!(cli.command, Command::Oracle(_)) {
        return Err(Error::InconsistentInput("--tolerance applies to the oracle command only".into()));
    }
    let ws = || load(cli.workspace.as_ref());
    match &cli.command {
        Command::Invariants { orbit, cover, curve } => {
            commands::invariants(&ws()?, orbit.as_deref(), *cover, curve.as_deref(), argv)
        }
        Command::Gin { a, b, orbit, cover, mode } => {
            let ws = ws()?;
            match (b, orbit) {
                (Some(b), None) => commands::gin(&ws, a, b, mode.parse::<GinMode>()?, argv),
                (None, Some(o)) => commands::gin_cylinder(&ws, a, o, *cover, argv),
                _ => Err(Error::InconsistentInput("gin needs --b or --orbit".into())),
            }
        }
        Command::Adjunction { curve } => commands::adjunction(&ws()?, curve, argv),
        Command::Check(c) => {
            let args = CheckArgs {
                theorem: c.theorem.parse::<Theorem>()?,
                a: &c.a,
                b: c.b.as_deref(),
                z: c.z,
                w: c.w,
                flagged: c.flagged,
            };
            commands::check(&ws()?, &args, argv)
        }
        Command::Concat { u, v } => commands::concat(&ws()?, u, v, argv),
        Command::Openbook { book, curve } => commands::openbook(&ws()?, book, curve, argv),
        Command::Oracle(o) => {
            let mut tol = Tolerances::default();
            if let Some(t) = cli.tolerance {
                if !(t.is_finite() && t > 0.0) {
                    return Err(Error::InconsistentInput(format!("tolerance {t} must be positive")));
                }
                tol.pairing = t;
            }
            commands::oracle(&scenario(o, cli.workspace.as_ref())?, &tol, argv)
        }
        Command::Selftest { seed, scale, criterion } => {
            if !(scale.is_finite() && *scale > 0.0) {
                return Err(Error::InconsistentInput(format!("scale {scale} must be positive")));
            }
            let config = selftest::Config { seed: *seed, scale: *scale };
            Ok(commands::run_selftest(&config, *criterion, argv))
        }
    }
}

fn main() -> ExitCode {
    let argv: Vec<String> = std::env::args().skip(1).collect();
    let cli = Cli::parse();
    let report = run(&cli, argv.clone()).unwrap_or_else(|e| Report::failed(argv, &e));
    let text = match cli.format {
        Format::Json => report.to_json() + "\n",
        Format::Table => report.to_table(),
    };
    // A closed pipe on stdout is not an error of the computation.
    let _ = std::io::stdout().write_all(text.as_bytes());
    ExitCode::from(report.exit_code() as u8)
}
