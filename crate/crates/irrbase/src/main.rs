use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use irrbase::report::CorpusSummary;
use irrbase::{
    parse_corpus, parse_generators, run_corpus, run_stats, run_verify, write_csv, CliError, Family, GroupSpec,
    RunOptions, VerifyGrid, DEFAULT_CORPUS,
};
use irrbase_core::projective::LinearKind;

#[derive(Parser)]
#[command(name = "irrbase", version, about = "Irredundant bases and related statistics of permutation groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute b, B, H, I, RC and the greedy base of one group, with the bound suite.
    Stats(StatsArgs),
    /// Check the linear-group formulas and witness chains over a parameter grid.
    Verify(VerifyArgs),
    /// Run `stats` over every entry of a corpus file and print a CSV summary.
    Corpus(CorpusArgs),
}

#[derive(Args)]
struct BudgetArgs {
    /// Search node cap per statistic (overrides IRRBASE_NODE_CAP).
    #[arg(long)]
    node_cap: Option<u64>,
    /// Longest tuple considered for relational complexity (default: degree).
    #[arg(long)]
    rc_max_len: Option<usize>,
    /// Record wall-clock time in the report (makes output run-dependent).
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct StatsArgs {
    /// pgl, pgammal, psl, sym, alt, cyclic, dihedral, pair-sum or pair-leq.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    d: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    q: Option<u64>,
    #[arg(long)]
    degree: Option<usize>,
    /// Linear group under a pair action: pgl, pgammal or psl.
    #[arg(long)]
    linear: Option<String>,
    /// Include the graph automorphism in a pair action.
    #[arg(long)]
    duality: bool,
    /// JSON array of 0-based image arrays.
    #[arg(long, conflicts_with = "family")]
    gens_file: Option<PathBuf>,
    /// A full group specification in JSON.
    #[arg(long, conflicts_with_all = ["family", "gens_file"])]
    spec_file: Option<PathBuf>,
    /// Also write the CSV header and row to this file.
    #[arg(long)]
    csv: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest dimension in the grid (all d from 2).
    #[arg(long, default_value_t = 4, conflicts_with = "d")]
    d_max: usize,
    /// A single dimension.
    #[arg(long)]
    d: Option<usize>,
    /// A single subspace dimension (default: every m <= d/2).
    #[arg(long)]
    m: Option<usize>,
    /// Field orders, comma separated.
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    q: Vec<u64>,
    /// Largest |PGL_d(q)| for which stabilizer chains are recomputed.
    #[arg(long)]
    order_limit: Option<u64>,
}

#[derive(Args)]
struct CorpusArgs {
    /// JSON list of group specifications (default: the shipped corpus).
    file: Option<PathBuf>,
    /// Write the full JSON summary to this file.
    #[arg(long)]
    report: Option<PathBuf>,
    #[command(flatten)]
    budget: BudgetArgs,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn write(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    fs::write(path, bytes).map_err(|source| CliError::Io { path: path.display().to_string(), source })
}

fn to_json<T: serde::Serialize>(value: &T) -> Result<String, CliError> {
    serde_json::to_string_pretty(value).map_err(|e| CliError::Output(e.to_string()))
}

fn print(text: &str) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    writeln!(out, "{text}").map_err(|e| CliError::Output(e.to_string()))
}

fn options(args: &BudgetArgs) -> Result<RunOptions, CliError> {
    let mut opts = RunOptions::from_env()?;
    if let Some(cap) = args.node_cap {
        if cap == 0 {
            return Err(CliError::Invalid("--node-cap must be positive".into()));
        }
        opts.node_cap = cap;
    }
    opts.rc_max_len = args.rc_max_len;
    opts.timing = args.timing;
    Ok(opts)
}

fn stats_spec(args: &StatsArgs) -> Result<GroupSpec, CliError> {
    if let Some(path) = &args.spec_file {
        return serde_json::from_str(&read(path)?).map_err(|e| CliError::Invalid(format!("spec file: {e}")));
    }
    if let Some(path) = &args.gens_file {
        let gens = parse_generators(&read(path)?)?;
        let degree = args.degree.or_else(|| gens.first().map(Vec::len));
        return Ok(GroupSpec { degree, generators: Some(gens), ..Default::default() });
    }
    let Some(name) = &args.family else {
        return Err(CliError::Invalid("one of --family, --gens-file or --spec-file is required".into()));
    };
    let family = Family::parse(name).ok_or_else(|| CliError::Invalid(format!("unknown family {name:?}")))?;
    let linear = match &args.linear {
        None => None,
        Some(s) => Some(
            serde_json::from_value::<LinearKind>(serde_json::Value::String(s.clone()))
                .map_err(|_| CliError::Invalid(format!("unknown linear group {s:?}")))?,
        ),
    };
    Ok(GroupSpec {
        family: Some(family),
        d: args.d,
        m: args.m,
        q: args.q,
        degree: args.degree,
        linear,
        duality: args.duality.then_some(true),
        ..Default::default()
    })
}

fn cmd_stats(args: StatsArgs) -> Result<(), CliError> {
    let opts = options(&args.budget)?;
    let spec = stats_spec(&args)?;
    let report = run_stats(&spec, &opts)?;
    print(&to_json(&report)?)?;
    if let Some(path) = &args.csv {
        let mut buf = Vec::new();
        write_csv(&mut buf, std::slice::from_ref(&report))?;
        write(path, &buf)?;
    }
    if let irrbase::report::BudgetOutcome::Exhausted { message } = &report.budget {
        return Err(CliError::Budget(message.clone()));
    }
    if report.all_bounds_pass() == Some(false) {
        return Err(CliError::Verification(format!("{}: a bound check failed", report.name)));
    }
    Ok(())
}

fn cmd_verify(args: VerifyArgs) -> Result<(), CliError> {
    let mut grid = VerifyGrid::new(args.d_max, args.q);
    if let Some(d) = args.d {
        grid.d = vec![d];
    }
    grid.m = args.m;
    if let Some(limit) = args.order_limit {
        grid.order_limit = limit;
    }
    let report = run_verify(&grid)?;
    print(&to_json(&report)?)?;
    for c in &report.cells {
        eprintln!(
            "({},{},{}) I in [{}, {}], witness {}, {}",
            c.d,
            c.m,
            c.q,
            c.lower,
            c.upper,
            if c.pass { "ok" } else { "FAILED" },
            match &c.witness.chain_mode {
                irrbase_core::lab::ChainMode::Ran { strict, .. } => format!("chain mode strict = {strict}"),
                irrbase_core::lab::ChainMode::Skipped { reason } => format!("chain mode {reason}"),
            }
        );
    }
    if !report.pass {
        return Err(CliError::Verification(format!("failed cells: {}", report.failed_cells.join(", "))));
    }
    Ok(())
}

fn cmd_corpus(args: CorpusArgs) -> Result<(), CliError> {
    let opts = options(&args.budget)?;
    let text = match &args.file {
        Some(p) => read(p)?,
        None => DEFAULT_CORPUS.to_string(),
    };
    let specs = parse_corpus(&text)?;
    let summary: CorpusSummary = run_corpus(&specs, &opts)?;
    write_csv(io::stdout().lock(), &summary.reports)?;
    if let Some(path) = &args.report {
        write(path, to_json(&summary)?.as_bytes())?;
    }
    if !summary.budget_exhausted.is_empty() {
        return Err(CliError::Budget(summary.budget_exhausted.join(", ")));
    }
    if !summary.bound_failures.is_empty() {
        return Err(CliError::Verification(summary.bound_failures.join(", ")));
    }
    Ok(())
}

fn main() -> ExitCode {
    // clap's own exit code for usage errors is 2, which is reserved for budget exhaustion.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let result = match cli.command {
        Command::Stats(a) => cmd_stats(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Corpus(a) => cmd_corpus(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("irrbase: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
