use std::ffi::OsString;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use crate::report::Report;
use crate::suites::{self, Ctx, Options, DEFAULT_SAMPLES};
use crate::{Failure, EXIT_FAIL, EXIT_PASS, EXIT_USAGE};

#[derive(Parser, Debug)]
#[command(
    name = "grpforge",
    version,
    about = "Finite groups with prescribed automorphism behavior"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    #[command(flatten)]
    pub global: Global,
}

#[derive(clap::Args, Debug)]
pub struct Global {
    #[arg(long, global = true)]
    pub p: Option<u32>,
    #[arg(long, global = true)]
    pub q: Option<u32>,
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true)]
    pub c: Option<usize>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Random instances per property check (default 200; genrel: power words per case, default 5).
    #[arg(long, global = true)]
    pub samples: Option<usize>,
    /// Cap on enumerated group orders and on groups searched for automorphisms.
    #[arg(long, global = true)]
    pub bound: Option<usize>,
    #[arg(long, global = true, default_value_t = 900, value_name = "SECS")]
    pub timeout: u64,
    /// Also write the report as JSON.
    #[arg(long, global = true, value_name = "PATH")]
    pub json: Option<PathBuf>,
    /// Directory for cached automorphism-group results.
    #[arg(long, global = true, value_name = "DIR")]
    pub cache: Option<PathBuf>,
    /// Allow constructions of `H` beyond the default coordinate budget.
    #[arg(long, global = true)]
    pub big: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Dimensions of the free Lie algebra on n letters, degrees 1..=c.
    Witt { n: usize, c: usize },
    /// Build a group and run its structural checks.
    Construct { kind: Construction, spec: Option<String> },
    /// Run a verification suite.
    Verify { suite: Suite, spec: Option<String> },
    /// |Aut|, |Inn| and |Out| by backtrack search.
    Aut { spec: String },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Construction {
    Pettet,
    Cornulier,
    Holomorph,
    Cayley,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Suite {
    LemmaAut,
    P3,
    Genrel,
    Multilinear,
    Lie,
    Outhol,
    PettetFull,
    CornulierStruct,
}

impl Global {
    fn options(&self) -> Options {
        Options {
            p: self.p,
            q: self.q,
            n: self.n,
            c: self.c,
            seed: self.seed,
            samples: self.samples,
            bound: self.bound,
            timeout: Duration::from_secs(self.timeout),
            big: self.big,
            cache: self.cache.clone(),
        }
    }
}

fn no_spec(spec: &Option<String>, what: &str) -> Result<(), Failure> {
    match spec {
        Some(s) => Err(Failure::Usage(format!("{what} takes no group spec (got {s:?})"))),
        None => Ok(()),
    }
}

/// Runs a parsed command into `report`.
pub fn execute(cli: &Cli, report: &mut Report) -> Result<(), Failure> {
    let ctx = Ctx::new(cli.global.options());
    report.seed = Some(cli.global.seed);
    match &cli.command {
        Command::Witt { n, c } => suites::witt(&ctx, *n, *c, report),
        Command::Aut { spec } => suites::aut(&ctx, spec, report),
        Command::Construct { kind, spec } => {
            let spec = spec.as_deref();
            match kind {
                Construction::Pettet => suites::construct_pettet(&ctx, spec, report),
                Construction::Cornulier => {
                    report.samples = Some(cli.global.samples.unwrap_or(DEFAULT_SAMPLES));
                    suites::construct_cornulier(&ctx, spec, report)
                }
                Construction::Holomorph => {
                    no_spec(&spec.map(str::to_string), "holomorph")?;
                    suites::construct_holomorph(&ctx, report)
                }
                Construction::Cayley => suites::construct_cayley(&ctx, spec, report),
            }
        }
        Command::Verify { suite, spec } => {
            if !matches!(suite, Suite::LemmaAut | Suite::PettetFull | Suite::CornulierStruct) {
                no_spec(spec, "this suite")?;
            }
            let spec = spec.as_deref();
            match suite {
                Suite::LemmaAut => suites::verify_lemma_aut(&ctx, spec, report),
                Suite::P3 => suites::verify_p3(&ctx, report),
                Suite::Genrel => suites::verify_genrel(&ctx, report),
                Suite::Multilinear => suites::verify_multilinear(&ctx, report),
                Suite::Lie => suites::verify_lie(&ctx, report),
                Suite::Outhol => suites::verify_outhol(&ctx, report),
                Suite::PettetFull => suites::verify_pettet_full(&ctx, spec, report),
                Suite::CornulierStruct => {
                    report.samples = Some(cli.global.samples.unwrap_or(DEFAULT_SAMPLES));
                    suites::verify_cornulier_struct(&ctx, spec, report)
                }
            }
        }
    }
}

/// Entry point; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args: Vec<OsString> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    let echo = args.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let mut report = Report::new(echo);
    let start = Instant::now();
    let outcome = execute(&cli, &mut report);
    report.timing("total", start.elapsed());
    if let Err(e) = outcome {
        eprintln!("grpforge: {e}");
        return e.exit_code();
    }
    print!("{}", report.render());
    if let Some(path) = &cli.global.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            eprintln!("grpforge: cannot write {}: {e}", path.display());
            return EXIT_FAIL;
        }
    }
    if report.passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
