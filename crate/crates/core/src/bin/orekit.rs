use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use orekit::family5::Family5Params;
use orekit::report::Format;
use orekit::subext::NamedParams;
use orekit::suite::{load_config, run_suite, SuiteConfig};

/// Run a verification suite and print its report.
#[derive(Parser, Debug)]
#[command(name = "orekit", version)]
struct Cli {
    /// lattice, family5, examples, laurent or special
    suite: String,
    /// TOML suite config
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "json")]
    format: FormatArg,
    #[arg(long)]
    seed: Option<u64>,
    /// Coefficient ring spec, e.g. zmod:12
    #[arg(long)]
    ring: Option<String>,
    /// Comma-separated checks to run
    #[arg(long = "suite", value_delimiter = ',')]
    checks: Vec<String>,
    #[arg(long = "degree-bound")]
    degree_bound: Option<u64>,
    #[arg(long)]
    d1: Option<u64>,
    #[arg(long)]
    d2: Option<u64>,
    #[arg(long)]
    budget: Option<usize>,
    /// Named example for the examples suite
    #[arg(long)]
    example: Option<String>,
    /// Maximal word length
    #[arg(long = "length", short = 'L')]
    length: Option<usize>,
    #[arg(long)]
    p: Option<u64>,
    #[arg(long)]
    r: Option<u64>,
    #[arg(long)]
    e: Option<u64>,
    #[arg(long)]
    c: Option<u64>,
    #[arg(long)]
    d: Option<u64>,
}

#[derive(clap::ValueEnum, Clone, Copy, Debug)]
enum FormatArg {
    Json,
    Text,
}

fn config(cli: &Cli) -> orekit::Result<SuiteConfig> {
    let text = match &cli.config {
        Some(p) => Some(std::fs::read_to_string(p).map_err(|e| orekit::OreError::Parse {
            input: p.display().to_string(),
            reason: e.to_string(),
        })?),
        None => None,
    };
    let mut cfg = load_config(text.as_deref(), &cli.suite)?;
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if cli.ring.is_some() {
        cfg.ring = cli.ring.clone();
    }
    if !cli.checks.is_empty() {
        cfg.checks = cli.checks.clone();
    }
    if let Some(v) = cli.degree_bound {
        cfg.bounds.d = v;
    }
    if let Some(v) = cli.d1 {
        cfg.bounds.d1 = v;
    }
    if let Some(v) = cli.d2 {
        cfg.bounds.d2 = v;
    }
    if let Some(v) = cli.budget {
        cfg.budget = v;
    }
    if let Some(v) = cli.length {
        cfg.length = v;
    }
    if let Some(name) = &cli.example {
        cfg.example = Some(NamedParams::default_for(name)?);
    }
    if [cli.p, cli.r, cli.e, cli.c, cli.d].iter().any(Option::is_some) {
        let base = cfg.family5.unwrap_or(Family5Params { p: 2, r: 2, e: 2, c: 1, d: 1 });
        cfg.family5 = Some(Family5Params::new(
            cli.p.unwrap_or(base.p),
            cli.r.unwrap_or(base.r),
            cli.e.unwrap_or(base.e),
            cli.c.unwrap_or(base.c),
            cli.d.unwrap_or(base.d),
        )?);
    }
    Ok(cfg)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match config(&cli).and_then(|c| run_suite(&c)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("orekit: {e}");
            return ExitCode::from(2);
        }
    };
    let format = match cli.format {
        FormatArg::Json => Format::Json,
        FormatArg::Text => Format::Text,
    };
    let text = report.emit(format);
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("orekit: cannot write {}: {e}", p.display());
                return ExitCode::from(2);
            }
        }
        None => println!("{text}"),
    }
    if report.warnings() > 0 {
        eprintln!("orekit: {} check(s) bounded-inconclusive or skipped", report.warnings());
    }
    ExitCode::from(report.exit_code() as u8)
}
