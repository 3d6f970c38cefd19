use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use braces::cli::{
    cmd_construct, cmd_enumerate, cmd_report, cmd_verify, parse_suite, ConstructArgs,
    ConstructTarget, EnumerateArgs, ReportArgs, RunOptions, RunReport, Theorem1Args, VerifyArgs,
    EXIT_ERROR,
};
use braces::constructions::{ConstructionSpec, RingSpec};

#[derive(Parser)]
#[command(
    name = "brace",
    version,
    about = "Checks, enumerates and reports on finite left braces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone, Copy)]
struct Common {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Samples drawn by checks whose case space is too large to sweep.
    #[arg(long, default_value_t = 100_000)]
    sample_budget: u64,
    /// Add wall-clock time to the report (makes it non-reproducible).
    #[arg(long)]
    timing: bool,
}

impl From<Common> for RunOptions {
    fn from(c: Common) -> Self {
        RunOptions {
            seed: c.seed,
            sample_budget: c.sample_budget,
            timing: c.timing,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Run every check on one brace file.
    Verify {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated stages (ppn, prop1, ..., rel2) or all/theorem/rel.
        #[arg(long)]
        suite: Option<String>,
        /// Generators and exponent for the theorem check: P=(..) Q=(..)... m=1|2
        #[arg(long, num_args = 3.., value_name = "KEY=VALUE")]
        theorem1: Option<Vec<String>>,
        /// Also write the report here.
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Enumerate all braces on an additive group, up to isomorphism.
    Enumerate {
        /// Cyclic factor orders, e.g. 4,4.
        #[arg(long, value_delimiter = ',', required = true)]
        moduli: Vec<u64>,
        #[arg(long)]
        out_dir: Option<PathBuf>,
        #[arg(long, default_value_t = 16)]
        max_order: usize,
        /// Ignore the order and automorphism-count guards.
        #[arg(long)]
        force: bool,
        /// Cross-check counts against regular subgroups of the holomorph.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Summarise a directory of brace files.
    Report {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        report: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Write brace files for a named family or the built-in corpus.
    Construct {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long, value_delimiter = ',')]
        moduli: Option<Vec<u64>>,
        #[arg(long)]
        p: Option<u64>,
        /// Ring structure constants (JSON) for --family ring.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        out_dir: PathBuf,
        #[arg(long)]
        mul_table: bool,
        #[command(flatten)]
        common: Common,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Trivial,
    DiagonalM1,
    DiagonalM2,
    Ring,
    Builtin,
}

fn usage_error(msg: String) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_ERROR as u8)
}

fn emit(report: RunReport, path: Option<PathBuf>) -> ExitCode {
    let json = report.to_json();
    print!("{json}");
    if let Some(e) = &report.error {
        eprintln!("error: {e}");
    }
    if let Some(p) = path {
        if let Err(e) = fs::write(&p, &json) {
            return usage_error(format!("cannot write {}: {e}", p.display()));
        }
    }
    ExitCode::from(report.exit_code as u8)
}

fn spec_for(
    family: Family,
    moduli: Option<Vec<u64>>,
    p: Option<u64>,
    input: Option<PathBuf>,
) -> Result<ConstructTarget, String> {
    let need_p = || p.ok_or_else(|| "--p is required for this family".to_string());
    Ok(match family {
        Family::Builtin => ConstructTarget::Builtin,
        Family::Trivial => ConstructTarget::Spec(ConstructionSpec::Trivial {
            moduli: moduli.ok_or("--moduli is required for trivial")?,
        }),
        Family::DiagonalM1 => ConstructTarget::Spec(ConstructionSpec::DiagonalM1 { p: need_p()? }),
        Family::DiagonalM2 => ConstructTarget::Spec(ConstructionSpec::DiagonalM2 { p: need_p()? }),
        Family::Ring => {
            let path = input.ok_or("--input is required for ring")?;
            let text = fs::read_to_string(&path)
                .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
            let ring: RingSpec =
                serde_json::from_str(&text).map_err(|e| format!("bad ring file: {e}"))?;
            ConstructTarget::Spec(ConstructionSpec::Ring(ring))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Verify {
            input,
            suite,
            theorem1,
            report,
            common,
        } => {
            let suite = match suite.as_deref().map(parse_suite).transpose() {
                Ok(s) => s.unwrap_or_default(),
                Err(e) => return usage_error(e),
            };
            let theorem1 = match theorem1.as_deref().map(Theorem1Args::parse).transpose() {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let args = VerifyArgs {
                path: input,
                suite,
                theorem1,
                run: common.into(),
            };
            emit(cmd_verify(&args), report)
        }
        Command::Enumerate {
            moduli,
            out_dir,
            max_order,
            force,
            oracle,
            report,
            common,
        } => {
            let args = EnumerateArgs {
                moduli,
                out_dir,
                max_order,
                force,
                oracle,
                run: common.into(),
            };
            emit(cmd_enumerate(&args), report)
        }
        Command::Report {
            input,
            report,
            common,
        } => emit(
            cmd_report(&ReportArgs {
                dir: input,
                run: common.into(),
            }),
            report,
        ),
        Command::Construct {
            family,
            moduli,
            p,
            input,
            out_dir,
            mul_table,
            common,
        } => {
            let target = match spec_for(family, moduli, p, input) {
                Ok(t) => t,
                Err(e) => return usage_error(e),
            };
            let args = ConstructArgs {
                target,
                out_dir,
                mul_table,
                run: common.into(),
            };
            emit(cmd_construct(&args), None)
        }
    }
}
