use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufWriter};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use rigidmod::counting::DEFAULT_BOUND;
use rigidmod::curves::parse_rational;
use rigidmod::report::{emit, run_pipeline, Command, Input, RunConfig, Stage};
use rigidmod::{Error, RingElement};

/// Rigid SL2 triples over real cyclotomic rings, their curve families, and
/// mod-l congruences between fibres.
#[derive(Parser, Debug)]
#[command(name = "rigidmod", version)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Debug)]
struct Common {
    /// Family: legendre, j1728, ttv-odd:<r> or ttv-even:<r>
    #[arg(long)]
    family: Option<String>,
    /// Traces of the normal form, e.g. `x=[0]@12 z=[-1]@12` (optionally `n=12`)
    #[arg(long, num_args = 1..=3)]
    traces: Vec<String>,
    /// Fibre parameter; repeatable, e.g. `--x0 2 --x0 -1 --x0 1/2`
    #[arg(long = "x0", allow_hyphen_values = true)]
    x0: Vec<String>,
    #[arg(long, default_value_t = 100)]
    pmax: u64,
    /// Decimal digits of numeric embeddings
    #[arg(long, default_value_t = 30)]
    precision: u32,
    /// Largest field size used for point counts
    #[arg(long, default_value_t = DEFAULT_BOUND)]
    bound: u64,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Exit with status 3 when a congruence is refuted or inconclusive
    #[arg(long)]
    strict: bool,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Classify a triple and match it to a family
    Triple {
        #[command(flatten)]
        common: Common,
    },
    /// Reduction plan for a level
    Plan {
        #[arg(long)]
        n: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Family data and specialized fibres
    Curve {
        #[command(flatten)]
        common: Common,
    },
    /// Point counts and L-polynomials of fibres
    Count {
        /// Single prime; all good primes up to --pmax when omitted
        #[arg(long)]
        p: Option<u64>,
        #[command(flatten)]
        common: Common,
    },
    /// Test a mod-l congruence between a fibre and a target
    Congruence {
        /// Target family or `eisenstein`
        #[arg(long)]
        target: String,
        #[arg(long)]
        ell: u64,
        #[command(flatten)]
        common: Common,
    },
    /// Run every stage
    Analyze {
        /// Lift and compare at every reduction step
        #[arg(long)]
        deep: bool,
        #[command(flatten)]
        common: Common,
    },
}

fn parse_traces(items: &[String]) -> Result<Input, Error> {
    let mut x = None;
    let mut z = None;
    let mut n = None;
    for item in items {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::Config(format!("expected key=value in --traces, got `{item}`")))?;
        match k.trim() {
            "x" => x = Some(v.trim().to_string()),
            "z" => z = Some(v.trim().to_string()),
            "n" => n = Some(v.trim().parse::<u64>().map_err(|e| Error::Config(format!("n: {e}")))?),
            other => return Err(Error::Config(format!("unknown --traces key `{other}`"))),
        }
    }
    let elem = |s: Option<String>, name: &str| -> Result<RingElement, Error> {
        let s = s.ok_or_else(|| Error::Config(format!("--traces needs {name}=...")))?;
        let s = match (s.contains('@'), n) {
            (false, Some(n)) => format!("{s}@{n}"),
            _ => s,
        };
        let e: RingElement = s.parse()?;
        match n {
            Some(n) if e.n() != n => Err(Error::Config(format!("{name} lives in O_{} but n = {n}", e.n()))),
            _ => Ok(e),
        }
    };
    Ok(Input::Traces {
        x: elem(x, "x")?,
        z: elem(z, "z")?,
    })
}

fn build(cli: Cli) -> Result<(RunConfig, Option<PathBuf>, bool), Error> {
    let (mut level, mut p, mut target, mut ell, mut deep) = (None, None, None, None, false);
    let (command, mut common) = match cli.cmd {
        Cmd::Triple { common } => (Command::Triple, common),
        Cmd::Plan { n, common } => {
            level = n;
            (Command::Plan, common)
        }
        Cmd::Curve { common } => (Command::Curve, common),
        Cmd::Count { p: q, common } => {
            p = q;
            (Command::Count, common)
        }
        Cmd::Congruence { target: t, ell: l, common } => {
            target = Some(t);
            ell = Some(l);
            (Command::Congruence, common)
        }
        Cmd::Analyze { deep: d, common } => {
            deep = d;
            (Command::Analyze, common)
        }
    };
    let (mut cfg, out, strict) = config(command, &mut common)?;
    if let Some(n) = level {
        if n == 0 {
            return Err(Error::Config("n must be positive".into()));
        }
        cfg.inputs.push(Input::Level(n));
    }
    cfg.p = p;
    cfg.ell = ell;
    cfg.target = target.map(|t| t.parse()).transpose()?;
    cfg.deep = deep;
    Ok((cfg, out, strict))
}

fn config(command: Command, c: &mut Common) -> Result<(RunConfig, Option<PathBuf>, bool), Error> {
    let mut cfg = RunConfig::new(command);
    if let Some(f) = &c.family {
        cfg.inputs.push(Input::Family(f.parse()?));
    }
    if !c.traces.is_empty() {
        cfg.inputs.push(parse_traces(&c.traces)?);
    }
    cfg.x0 = c.x0.iter().map(|s| parse_rational(s)).collect::<Result<_, _>>()?;
    cfg.pmax = c.pmax;
    cfg.precision = c.precision;
    cfg.bound = c.bound;
    Ok((cfg, c.out.take(), c.strict))
}

fn run<I: IntoIterator<Item = OsString>>(args: I) -> u8 {
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 1 } else { 0 };
        }
    };
    let (cfg, out, strict) = match build(cli) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return 1;
        }
    };
    let report = match run_pipeline(&cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return if e.is_usage() { 1 } else { 2 };
        }
    };
    for (name, stage) in &report.stages {
        match stage {
            Stage::Error(m) => eprintln!("{name}: error: {m}"),
            Stage::Unsupported(m) => eprintln!("{name}: {m}"),
            Stage::Ok => {}
        }
    }
    let written = match out {
        Some(path) => File::create(&path)
            .map_err(Error::from)
            .and_then(|f| emit(&report, &mut BufWriter::new(f))),
        None => emit(&report, &mut io::stdout().lock()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return 2;
    }
    report.exit_code(strict) as u8
}

fn main() -> ExitCode {
    ExitCode::from(run(std::env::args_os()))
}
