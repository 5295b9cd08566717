use anyhow::Context;
use clap::{Args, Parser, Subcommand};
use narayana_repdigits::cli::{cmd_all, cmd_bounds, cmd_reduce, cmd_search, RunConfig, StepSelect};
use narayana_repdigits::report::{self, OutputFormat};
use narayana_repdigits::Error;
use std::path::PathBuf;
use std::process::ExitCode;

/// Solver pipeline for Narayana numbers that are products of three repdigits:
/// absolute bounds from linear forms in logarithms, certified
/// continued-fraction reduction, and exhaustive verification.
#[derive(Parser)]
#[command(name = "narayana-repdigits", version, about)]
struct CliArgs {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct CommonArgs {
    /// Bases to process, comma-separated (each in [2, 36])
    #[arg(long = "g", value_delimiter = ',', default_value = "2,3,4,5,6,7,8,9,10")]
    g: Vec<u32>,
    /// Working precision for certified arithmetic
    #[arg(long, default_value_t = 1200)]
    precision_bits: u32,
    /// Override the search bound on the sequence index k
    #[arg(long)]
    k_max: Option<u64>,
    /// Override the bound on the shortest repdigit length
    #[arg(long = "l-max")]
    l_max: Option<u32>,
    /// Override the bound on the middle repdigit length
    #[arg(long)]
    m_max: Option<u32>,
    /// Override the bound on the longest repdigit length
    #[arg(long)]
    n_max: Option<u32>,
    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Markdown)]
    format: OutputFormat,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Use the exact height of the leading Binet coefficient instead of the
    /// published loose constant
    #[arg(long)]
    strict_heights: bool,
    /// Worker threads (default: available parallelism)
    #[arg(long)]
    threads: Option<usize>,
}

impl CommonArgs {
    fn to_config(&self) -> RunConfig {
        RunConfig {
            bases: self.g.clone(),
            precision_bits: self.precision_bits,
            k_max: self.k_max,
            ell_max: self.l_max,
            m_max: self.m_max,
            n_max: self.n_max,
            format: self.format,
            out: self.out.clone(),
            strict_heights: self.strict_heights,
            threads: self.threads,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Derive the absolute bounds on n and k for each base
    Bounds(CommonArgs),
    /// Run the continued-fraction reduction sweeps
    Reduce {
        #[command(flatten)]
        common: CommonArgs,
        /// Which sweep to report: 1, 2, 3, or all
        #[arg(long, default_value = "all")]
        step: String,
    },
    /// Search the reduced box and compare against the golden solution list
    Search(CommonArgs),
    /// Full pipeline: bounds, reduction, search, golden verification
    All(CommonArgs),
}

fn emit(cfg: &RunConfig, content: &str) -> anyhow::Result<()> {
    match &cfg.out {
        Some(path) => std::fs::write(path, content)
            .with_context(|| format!("writing report to {}", path.display()))?,
        None => print!("{content}"),
    }
    Ok(())
}

fn run() -> anyhow::Result<bool> {
    let args = CliArgs::parse();
    match args.command {
        Command::Bounds(common) => {
            let cfg = common.to_config();
            let out = cmd_bounds(&cfg)?;
            let content = match cfg.format {
                OutputFormat::Json => report::to_json(&out),
                OutputFormat::Csv => report::bounds_csv(&out.reports),
                OutputFormat::Markdown => report::bounds_markdown(&out.reports),
            };
            emit(&cfg, &content)?;
            Ok(true)
        }
        Command::Reduce { common, step } => {
            let cfg = common.to_config();
            let select: StepSelect = step.parse()?;
            let out = cmd_reduce(&cfg, select)?;
            let content = match cfg.format {
                OutputFormat::Json => report::to_json(&out),
                OutputFormat::Csv => report::reduce_csv(&out.steps),
                OutputFormat::Markdown => report::reduce_markdown(&out.steps),
            };
            emit(&cfg, &content)?;
            Ok(true)
        }
        Command::Search(common) => {
            let cfg = common.to_config();
            let out = cmd_search(&cfg)?;
            let content = match cfg.format {
                OutputFormat::Json => report::to_json(&out),
                OutputFormat::Csv => report::search_csv(&out.solutions),
                OutputFormat::Markdown => {
                    report::search_markdown(&out.solutions, Some(&out.golden))
                }
            };
            emit(&cfg, &content)?;
            Ok(out.golden.clean() || out.golden.clean_modulo_known_discrepancy())
        }
        Command::All(common) => {
            let cfg = common.to_config();
            let out = cmd_all(&cfg)?;
            let content = match cfg.format {
                OutputFormat::Json => report::to_json(&out),
                OutputFormat::Csv => {
                    let mut s = report::bounds_csv(&out.bounds);
                    s.push('\n');
                    s.push_str(&report::reduce_csv(&out.steps));
                    s.push('\n');
                    s.push_str(&report::search_csv(&out.solutions));
                    s
                }
                OutputFormat::Markdown => {
                    let mut s = String::from("## Absolute bounds\n\n");
                    s.push_str(&report::bounds_markdown(&out.bounds));
                    s.push_str("\n## Reduction\n\n");
                    s.push_str(&report::reduce_markdown(&out.steps));
                    s.push_str("\n## Search\n\n");
                    s.push_str(&report::search_markdown(&out.solutions, Some(&out.golden)));
                    s
                }
            };
            emit(&cfg, &content)?;
            Ok(out.success)
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => {
            eprintln!("verification failed: output does not match the golden data");
            ExitCode::from(1)
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::InvalidInput(_)) => 2,
                Some(Error::PrecisionExhausted(_)) => 3,
                Some(Error::NoWitness { .. }) => 1,
                None => 1,
            };
            ExitCode::from(code)
        }
    }
}
