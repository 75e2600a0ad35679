//! Formula-level checks over a grid of `(d, m, q)`: bounds, witness chains,
//! matrix algebra dimensions and subspace counts.

use std::sync::Arc;

use irrbase_core::field::{prime_power, FieldSpec};
use irrbase_core::lab::{
    algebra_checks, thm31_bounds, verify_witness, witness_minimal_base_check, witness_sequence, BoundCheck, ChainMode,
    LabError, MinimalBaseCheck, WitnessVerification, CHAIN_MODE_ORDER_LIMIT,
};
use irrbase_core::matrix::MAX_DIM;
use irrbase_core::projective::{build_action, gaussian_binomial, LinearKind, DEFAULT_ENUMERATION_CAP};
use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::error::CliError;

pub const VERIFY_SCHEMA: &str = "irrbase-verify/1";

#[derive(Debug, Clone)]
pub struct VerifyGrid {
    pub d: Vec<usize>,
    /// `None` means every `m` with `1 <= m <= d/2`.
    pub m: Option<usize>,
    pub q: Vec<u64>,
    pub order_limit: u64,
}

impl VerifyGrid {
    pub fn new(d_max: usize, q: Vec<u64>) -> Self {
        VerifyGrid { d: (2..=d_max).collect(), m: None, q, order_limit: CHAIN_MODE_ORDER_LIMIT }
    }

    fn cells(&self) -> Result<Vec<(usize, usize, u64)>, CliError> {
        if self.d.is_empty() || self.q.is_empty() {
            return Err(CliError::Invalid("empty parameter grid".into()));
        }
        for &d in &self.d {
            if !(2..=MAX_DIM).contains(&d) {
                return Err(CliError::Invalid(format!("d = {d} outside 2..={MAX_DIM}")));
            }
        }
        for &q in &self.q {
            if prime_power(q).is_none() || q > 81 {
                return Err(CliError::Invalid(format!("q = {q} is not a prime power at most 81")));
            }
        }
        let mut out = Vec::new();
        for &d in &self.d {
            let ms: Vec<usize> = match self.m {
                Some(m) if m == 0 || m >= d => {
                    return Err(CliError::Invalid(format!("m = {m} needs 1 <= m <= d - 1 (d = {d})")))
                }
                Some(m) => vec![m],
                None => (1..=d / 2).collect(),
            };
            for m in ms {
                for &q in &self.q {
                    out.push((d, m, q));
                }
            }
        }
        Ok(out)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum MinimalBaseOutcome {
    Checked(MinimalBaseCheck),
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cell {
    pub d: usize,
    pub m: usize,
    pub q: u64,
    pub lower: usize,
    pub upper: usize,
    pub witness: WitnessVerification,
    pub algebra_dims: Vec<usize>,
    pub checks: Vec<BoundCheck>,
    /// Reported only; does not count towards `pass`.
    pub minimal_base: MinimalBaseOutcome,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub schema: String,
    pub cells: Vec<Cell>,
    pub failed_cells: Vec<String>,
    pub minimal_base_failures: Vec<String>,
    pub pass: bool,
}

fn lab(e: LabError) -> CliError {
    CliError::Invalid(e.to_string())
}

fn count_checks(d: usize, m: usize, q: u64) -> Result<Vec<BoundCheck>, CliError> {
    let n = gaussian_binomial(d as u32, m as u32, q).map_err(|e| CliError::Invalid(e.to_string()))?;
    let f = prime_power(q).expect("validated").1 as u64;
    let qpow = BigUint::from(q).pow((m * (d - m)) as u32);
    let mut checks =
        vec![BoundCheck::exact("subspace-count", "log n > m(d - m) log q, as n > q^(m(d-m))", &n, &qpow, n > qpow)];
    if q == 2 && d.is_multiple_of(2) && 2 * m == d && m >= 2 {
        let (l, r) = (n.pow(4), BigUint::from(2u32).pow((d * d + 2) as u32));
        let pass = l > r;
        checks.push(BoundCheck::exact("subspace-count-half", "n^4 > 2^(d^2 + 2)", l, r, pass));
    }
    if 2 * m <= d {
        let rhs = if m == 1 { BigUint::from(2 * f) } else { BigUint::from(16 * f * f * f) };
        let stmt = if m == 1 { "q^(m(d-m)) >= 2f" } else { "q^(m(d-m)) >= 16 f^3" };
        let pass = qpow >= rhs;
        checks.push(BoundCheck::exact("field-degree", stmt, &qpow, rhs, pass));
    }
    Ok(checks)
}

fn cell(d: usize, m: usize, q: u64, order_limit: u64) -> Result<Cell, CliError> {
    let field = Arc::new(FieldSpec::from_order(q).map_err(|e| CliError::Invalid(e.to_string()))?);
    let (lower, upper) = thm31_bounds(d, m, q).map_err(lab)?;
    let chain = witness_sequence(d, m, field.clone()).map_err(lab)?;
    // Tables are only needed (and only affordable) when chain mode will run.
    let order = irrbase_core::gl_order(d as u32, q, true).map_err(|e| CliError::Invalid(e.to_string()))?;
    let table = if order <= BigUint::from(order_limit) {
        Some(
            build_action(LinearKind::Pgl, d, m, field, DEFAULT_ENUMERATION_CAP)
                .map_err(|e| CliError::Invalid(e.to_string()))?,
        )
    } else {
        None
    };
    let mut witness = verify_witness(&chain, table.as_ref(), order_limit).map_err(lab)?;
    if table.is_none() {
        witness.chain_mode = ChainMode::Skipped { reason: "skipped: budget".into() };
    }
    let (algebra_dims, mut checks) = algebra_checks(&chain).map_err(lab)?;
    checks.push(BoundCheck::exact(
        "bounds-ordered",
        "lower <= upper, equal when m = 1 and q = 3",
        lower,
        upper,
        lower <= upper && (m != 1 || q != 3 || lower == upper),
    ));
    checks.extend(count_checks(d, m, q)?);
    let minimal_base = match &table {
        Some(t) => match witness_minimal_base_check(&chain, t, order_limit) {
            Ok(c) => MinimalBaseOutcome::Checked(c),
            Err(LabError::Budget) => MinimalBaseOutcome::Skipped { reason: "skipped: budget".into() },
            Err(e) => return Err(lab(e)),
        },
        None => MinimalBaseOutcome::Skipped { reason: "skipped: budget".into() },
    };
    let pass = witness.pass() && checks.iter().all(|c| c.pass);
    Ok(Cell { d, m, q, lower, upper, witness, algebra_dims, checks, minimal_base, pass })
}

pub fn run_verify(grid: &VerifyGrid) -> Result<VerifyReport, CliError> {
    let cells =
        grid.cells()?.into_iter().map(|(d, m, q)| cell(d, m, q, grid.order_limit)).collect::<Result<Vec<_>, _>>()?;
    let tag = |c: &Cell| format!("({},{},{})", c.d, c.m, c.q);
    let failed_cells: Vec<String> = cells.iter().filter(|c| !c.pass).map(tag).collect();
    let minimal_base_failures = cells
        .iter()
        .filter(|c| matches!(&c.minimal_base, MinimalBaseOutcome::Checked(mb) if !mb.pass))
        .map(tag)
        .collect();
    Ok(VerifyReport {
        schema: VERIFY_SCHEMA.to_string(),
        pass: failed_cells.is_empty(),
        cells,
        failed_cells,
        minimal_base_failures,
    })
}
