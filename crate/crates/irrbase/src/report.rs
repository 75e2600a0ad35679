//! Per-group reports and the CSV summary.

use std::io::Write;
use std::time::Instant;

use irrbase_core::lab::{bound_suite, verify_witness, witness_sequence, BoundReport, FamilyShape, WitnessVerification};
use irrbase_core::projective::LinearKind;
use irrbase_core::stats::{compute_stats, SearchBudget, StatsConfig, StatsError, StatsReport, DEFAULT_NODE_CAP};
use serde::{Deserialize, Serialize};

use crate::error::CliError;
use crate::spec::GroupSpec;

pub const SCHEMA: &str = "irrbase-report/1";
pub const CORPUS_SCHEMA: &str = "irrbase-corpus/1";
pub const NODE_CAP_VAR: &str = "IRRBASE_NODE_CAP";
pub const CSV_HEADER: [&str; 11] =
    ["name", "n", "order", "b", "B", "H", "I", "RC", "greedy", "5log2n", "all_bounds_pass"];

#[derive(Debug, Clone)]
pub struct RunOptions {
    pub node_cap: u64,
    pub rc_max_len: Option<usize>,
    pub timing: bool,
    pub witness_order_limit: u64,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            node_cap: DEFAULT_NODE_CAP,
            rc_max_len: None,
            timing: false,
            witness_order_limit: irrbase_core::lab::CHAIN_MODE_ORDER_LIMIT,
        }
    }
}

impl RunOptions {
    /// Defaults with the node cap taken from `IRRBASE_NODE_CAP` when set.
    pub fn from_env() -> Result<Self, CliError> {
        let mut opts = RunOptions::default();
        if let Ok(v) = std::env::var(NODE_CAP_VAR) {
            opts.node_cap =
                v.trim().parse().ok().filter(|&c| c > 0).ok_or_else(|| {
                    CliError::Invalid(format!("{NODE_CAP_VAR} must be a positive integer, got {v:?}"))
                })?;
        }
        Ok(opts)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum BudgetOutcome {
    Ok,
    Exhausted { message: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Companion {
    pub spec: GroupSpec,
    pub n: usize,
    #[serde(rename = "I")]
    pub i: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub name: String,
    pub spec: GroupSpec,
    pub node_cap: u64,
    pub budget: BudgetOutcome,
    pub soluble: bool,
    pub large_base: bool,
    pub stats: Option<StatsReport>,
    pub companion: Option<Companion>,
    pub bounds: Option<BoundReport>,
    pub witness: Option<WitnessVerification>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<u64>,
}

impl Report {
    pub fn budget_exhausted(&self) -> bool {
        matches!(self.budget, BudgetOutcome::Exhausted { .. })
    }

    /// Every bound check and witness check passed; `None` if nothing was checked.
    pub fn all_bounds_pass(&self) -> Option<bool> {
        let bounds = self.bounds.as_ref()?.all_pass();
        Some(bounds && self.witness.as_ref().is_none_or(|w| w.pass()))
    }

    pub fn csv_row(&self) -> Vec<String> {
        let show = |v: Option<usize>| v.map_or(String::new(), |x| x.to_string());
        let s = self.stats.as_ref();
        let n = s.map(|s| s.n);
        vec![
            self.name.clone(),
            show(n),
            s.map_or(String::new(), |s| s.order.to_string()),
            show(s.and_then(|s| s.b.as_ref().map(|w| w.value))),
            show(s.and_then(|s| s.big_b.as_ref().map(|w| w.value))),
            show(s.and_then(|s| s.h.as_ref().map(|w| w.value))),
            show(s.and_then(|s| s.i.as_ref().map(|w| w.value))),
            show(s.and_then(|s| s.rc.as_ref().map(|r| r.value))),
            show(s.and_then(|s| s.greedy.as_ref().map(|g| g.base.len()))),
            n.map_or(String::new(), |n| format!("{:.4}", 5.0 * (n as f64).log2())),
            self.all_bounds_pass().map_or(String::new(), |p| p.to_string()),
        ]
    }
}

fn config(opts: &RunOptions) -> StatsConfig {
    StatsConfig {
        budget: SearchBudget::with_node_cap(opts.node_cap),
        rc_max_len: opts.rc_max_len,
        ..Default::default()
    }
}

/// Builds the group, computes every statistic and runs the bound suite.
/// Budget exhaustion yields a report with `budget` set and no statistics.
pub fn run_stats(spec: &GroupSpec, opts: &RunOptions) -> Result<Report, CliError> {
    let start = Instant::now();
    let built = spec.build()?;
    let mut report = Report {
        schema: SCHEMA.to_string(),
        name: built.name.clone(),
        spec: spec.clone(),
        node_cap: opts.node_cap,
        budget: BudgetOutcome::Ok,
        soluble: built.context.soluble.unwrap_or(false),
        large_base: built.context.large_base,
        stats: None,
        companion: None,
        bounds: None,
        witness: None,
        timing_ms: None,
    };
    let exhausted = |mut report: Report, e: StatsError| {
        report.budget = BudgetOutcome::Exhausted { message: e.to_string() };
        report
    };
    let stats = match compute_stats(&built.group, &config(opts)) {
        Ok(s) => s,
        Err(e) if e.is_budget() => return Ok(exhausted(report, e)),
        Err(e) => return Err(CliError::Invalid(format!("{}: {e}", built.name))),
    };
    let mut context = built.context.clone();
    if let Some(cspec) = &built.companion {
        let cbuilt = cspec.build()?;
        let cfg = StatsConfig {
            select: irrbase_core::stats::StatsSelection {
                b: false,
                big_b: false,
                h: false,
                i: true,
                rc: false,
                greedy: false,
            },
            ..config(opts)
        };
        let cstats = match compute_stats(&cbuilt.group, &cfg) {
            Ok(s) => s,
            Err(e) if e.is_budget() => return Ok(exhausted(report, e)),
            Err(e) => return Err(CliError::Invalid(format!("{}: {e}", cbuilt.name))),
        };
        let ci = cstats.i.expect("I was requested").value;
        match context.family.map(|f| f.shape) {
            Some(FamilyShape::Pairs { .. }) => context.companion_i = Some(ci),
            _ => context.linear_i = Some(ci),
        }
        report.companion = Some(Companion { spec: cspec.clone(), n: cstats.n, i: ci });
    }
    let bounds = bound_suite(&stats, &context).map_err(|e| CliError::Invalid(format!("{}: {e}", built.name)))?;
    if let (Some(table), Some(fam)) = (&built.table, context.family) {
        if fam.shape == (FamilyShape::Subspaces { kind: LinearKind::Pgl }) {
            let chain =
                witness_sequence(fam.d, fam.m, table.shared_field()).map_err(|e| CliError::Invalid(e.to_string()))?;
            let v = verify_witness(&chain, Some(table), opts.witness_order_limit)
                .map_err(|e| CliError::Invalid(e.to_string()))?;
            report.witness = Some(v);
        }
    }
    report.stats = Some(stats);
    report.bounds = Some(bounds);
    if opts.timing {
        report.timing_ms = Some(start.elapsed().as_millis() as u64);
    }
    Ok(report)
}

pub fn write_csv<W: Write>(out: W, reports: &[Report]) -> Result<(), CliError> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER).map_err(|e| CliError::Output(e.to_string()))?;
    for r in reports {
        w.write_record(r.csv_row()).map_err(|e| CliError::Output(e.to_string()))?;
    }
    w.flush().map_err(|e| CliError::Output(e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusSummary {
    pub schema: String,
    pub groups: usize,
    pub budget_exhausted: Vec<String>,
    pub bound_failures: Vec<String>,
    pub reports: Vec<Report>,
}

/// Parses a corpus file: a JSON list of group specifications.
pub fn parse_corpus(text: &str) -> Result<Vec<GroupSpec>, CliError> {
    let raw: Vec<serde_json::Value> =
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("corpus: {e}")))?;
    raw.into_iter()
        .enumerate()
        .map(|(i, v)| serde_json::from_value(v).map_err(|e| CliError::Invalid(format!("corpus entry {i}: {e}"))))
        .collect()
}

/// Runs every entry in order; an invalid entry aborts with its index.
pub fn run_corpus(specs: &[GroupSpec], opts: &RunOptions) -> Result<CorpusSummary, CliError> {
    let mut reports = Vec::with_capacity(specs.len());
    for (i, spec) in specs.iter().enumerate() {
        let r = run_stats(spec, opts).map_err(|e| match e {
            CliError::Invalid(msg) => CliError::Invalid(format!("corpus entry {i}: {msg}")),
            other => other,
        })?;
        reports.push(r);
    }
    Ok(CorpusSummary {
        schema: CORPUS_SCHEMA.to_string(),
        groups: reports.len(),
        budget_exhausted: reports.iter().filter(|r| r.budget_exhausted()).map(|r| r.name.clone()).collect(),
        bound_failures: reports.iter().filter(|r| r.all_bounds_pass() == Some(false)).map(|r| r.name.clone()).collect(),
        reports,
    })
}

/// The corpus shipped with the binary.
pub const DEFAULT_CORPUS: &str = include_str!("../corpus/default.json");
