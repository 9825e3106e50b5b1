use std::collections::BTreeSet;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use groupnorm::harness::{run, Check, OutputFormat, RunConfig, DEFAULT_MAX_ORDER, DEFAULT_TRIALS};
use groupnorm::scalar::Field;

/// Sweep finite groups with all their involutions and orientations and check
/// normality and classification claims.
#[derive(Parser, Debug)]
#[command(name = "groupnorm", version)]
struct Cli {
    /// Largest catalog group order (at most 32).
    #[arg(long, default_value_t = DEFAULT_MAX_ORDER)]
    max_order: usize,

    /// Restrict to these group labels (comma separated, e.g. D4,Q8).
    #[arg(long, value_delimiter = ',')]
    groups: Option<Vec<String>>,

    /// Coefficient field: `rational` or `fp:P` for an odd prime P.
    #[arg(long, default_value = "rational")]
    field: Field,

    /// Checks to run (comma separated): normality, theorem3, theorem4, lemmas, st4.
    #[arg(long, value_delimiter = ',')]
    checks: Option<Vec<Check>>,

    /// Random trials per triple for the randomized oracles.
    #[arg(long, default_value_t = DEFAULT_TRIALS)]
    trials: usize,

    #[arg(long, default_value_t = 0)]
    seed: u64,

    /// `text` or `structured` (JSON).
    #[arg(long, default_value = "text")]
    format: OutputFormat,

    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,

    /// Add a group from a Cayley-table JSON file (repeatable).
    #[arg(long = "import-table")]
    import_table: Vec<PathBuf>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let config = RunConfig {
        max_order: cli.max_order,
        groups: cli.groups,
        field: cli.field,
        checks: match cli.checks {
            Some(c) => c.into_iter().collect(),
            None => Check::ALL.into_iter().collect::<BTreeSet<_>>(),
        },
        trials: cli.trials,
        seed: cli.seed,
        format: cli.format,
        out: cli.out,
        imports: cli.import_table,
    };
    let report = match run(&config) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let rendered = report.render(config.format);
    match &config.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered) {
                eprintln!("error: writing {}: {e}", path.display());
                return ExitCode::from(2);
            }
        }
        None => print!("{rendered}"),
    }
    if report.summary.inconsistent > 0 {
        eprintln!("{} inconsistent triple(s)", report.summary.inconsistent);
    }
    ExitCode::from(report.exit_code() as u8)
}
