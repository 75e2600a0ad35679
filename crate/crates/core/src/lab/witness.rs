//! The explicit long irredundant chain of `m`-subspaces, with one transvection
//! per step proving that the stabilizer shrinks.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::chain::StabilizerChain;
use crate::field::{gl_order, FieldSpec, Fq};
use crate::matrix::FqMatrix;
use crate::projective::{ActionTable, Subspace};

use super::{BoundCheck, LabError};

/// Steps with `k` in `1..=guaranteed` strictly shrink the stabilizer.
pub fn guaranteed_length(d: usize, m: usize, q: u32) -> usize {
    if q == 2 {
        m * d - m * m + 1
    } else {
        (m + 1) * d - m * m
    }
}

/// The matrix `I + c E_{x,y}` (1-based indices).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transvection {
    pub x: usize,
    pub y: usize,
    pub coefficient: u8,
}

impl Transvection {
    pub fn matrix(&self, d: usize, field: &FieldSpec) -> FqMatrix {
        FqMatrix::elementary(d, self.x - 1, self.y - 1, Fq(self.coefficient), field)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessStep {
    pub k: usize,
    /// The `m` spanning vectors, as coordinate index lists over `F_q`.
    #[serde(serialize_with = "ser_vectors")]
    pub vectors: Vec<Vec<Fq>>,
    #[serde(skip)]
    pub omega: Subspace,
    pub certificate: Option<Transvection>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub t: Option<usize>,
}

fn ser_vectors<S: serde::Serializer>(v: &[Vec<Fq>], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for row in v {
        let ints: Vec<usize> = row.iter().map(|x| x.index()).collect();
        seq.serialize_element(&ints)?;
    }
    seq.end()
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessChain {
    pub d: usize,
    pub m: usize,
    pub q: u32,
    #[serde(skip)]
    pub field: Arc<FieldSpec>,
    pub claimed_length: usize,
    pub steps: Vec<WitnessStep>,
}

impl WitnessChain {
    pub fn subspaces(&self) -> Vec<Subspace> {
        self.steps.iter().map(|s| s.omega.clone()).collect()
    }

    /// `(first, last)` step indices (1-based, inclusive) of the sub-chain
    /// claimed to be a minimal base, and the size claimed for it.
    pub fn minimal_base_range(&self) -> (usize, usize, usize) {
        let (d, m) = (self.d, self.m);
        if self.q == 2 {
            (2, m * d - m * m + 1, m * d - m * m)
        } else {
            (m + 1, m * d - m * m + d, (m + 1) * d - m * m - m)
        }
    }
}

/// Builds all `md - m^2 + d` steps.
pub fn witness_sequence(d: usize, m: usize, field: Arc<FieldSpec>) -> Result<WitnessChain, LabError> {
    if d < 2 || m == 0 || m >= d {
        return Err(LabError::BadParameters(format!("need d >= 2 and 1 <= m <= d - 1, got d = {d}, m = {m}")));
    }
    if d > crate::matrix::MAX_DIM {
        return Err(LabError::BadParameters(format!("d = {d} exceeds {}", crate::matrix::MAX_DIM)));
    }
    let q = field.q();
    let mid = m * d - m * m + 1;
    let total = mid + d - 1;
    let unit = |i: usize| {
        let mut v = vec![Fq::ZERO; d];
        v[i - 1] = Fq::ONE;
        v
    };
    // The diagonal certificate scales e_t by 1 + c, which must be neither 0 nor 1.
    let diagonal = if field.p() == 2 { field.generator() } else { Fq::ONE };
    let mut steps = Vec::with_capacity(total);
    for k in 1..=total {
        let (mut r, mut s, mut t) = (None, None, None);
        let (vectors, certificate): (Vec<Vec<Fq>>, Option<Transvection>) = if k <= m + 1 {
            let skip = m + 2 - k;
            let vs = (1..=m + 1).filter(|&i| i != skip).map(unit).collect();
            let cert = (k >= 2).then_some(Transvection { x: m + 1, y: skip, coefficient: 1 });
            (vs, cert)
        } else if k <= mid {
            let rk = (k - 2) / m + m + 1;
            let sk = m - (k - 2) % m;
            r = Some(rk);
            s = Some(sk);
            let vs = (1..=m).chain(core::iter::once(rk)).filter(|&i| i != sk).map(unit).collect();
            (vs, Some(Transvection { x: rk, y: sk, coefficient: 1 }))
        } else {
            let tk = k + m * m - m * d;
            t = Some(tk);
            let mut lead = unit(1);
            lead[tk - 1] = Fq::ONE;
            let rest: Vec<Vec<Fq>> = if tk <= m + 1 {
                (2..=m + 1).filter(|&i| i != tk).map(unit).collect()
            } else {
                (2..=m).map(unit).collect()
            };
            let vs = core::iter::once(lead).chain(rest).collect();
            let cert = (q > 2).then_some(Transvection { x: tk, y: tk, coefficient: diagonal.0 });
            (vs, cert)
        };
        let omega = Subspace::span(&vectors, d, &field);
        debug_assert_eq!(omega.dim(), m);
        steps.push(WitnessStep { k, vectors, omega, certificate, r, s, t });
    }
    Ok(WitnessChain { d, m, q, claimed_length: guaranteed_length(d, m, q), field, steps })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ChainMode {
    Ran { stabilizer_orders: Vec<String>, strict: bool },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessVerification {
    pub d: usize,
    pub m: usize,
    pub q: u32,
    pub claimed_length: usize,
    pub steps_built: usize,
    pub certificates_checked: usize,
    /// Steps whose certificate failed to fix an earlier subspace or to move its own.
    pub certificate_failures: Vec<usize>,
    pub chain_mode: ChainMode,
    pub checks: Vec<BoundCheck>,
}

impl WitnessVerification {
    pub fn pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Default ceiling on `|PGL_d(q)|` for the stabilizer-chain mode.
pub const CHAIN_MODE_ORDER_LIMIT: u64 = 1_000_000;

/// Checks every certificate directly and, when `action` is given and the
/// group is small enough, recomputes the stabilizer tower along the chain.
pub fn verify_witness(
    chain: &WitnessChain,
    action: Option<&ActionTable>,
    order_limit: u64,
) -> Result<WitnessVerification, LabError> {
    let field = &chain.field;
    let (d, m) = (chain.d, chain.m);
    let guaranteed = chain.claimed_length;
    let omegas = chain.subspaces();
    let mut failures = Vec::new();
    let mut checked = 0;
    for step in chain.steps.iter().take(guaranteed).skip(1) {
        let k = step.k;
        let Some(cert) = step.certificate else {
            failures.push(k);
            continue;
        };
        checked += 1;
        let g = cert.matrix(d, field);
        let ok = g.is_invertible(field)
            && omegas[..k - 1].iter().all(|w| image(w, &g, field) == *w)
            && image(&omegas[k - 1], &g, field) != omegas[k - 1];
        if !ok {
            failures.push(k);
        }
    }
    let mut checks = vec![
        BoundCheck::exact(
            "witness-length",
            "guaranteed chain length is md - m^2 + 1 (q = 2) or (m+1)d - m^2 (q > 2)",
            guaranteed,
            guaranteed_length(d, m, chain.q),
            guaranteed == guaranteed_length(d, m, chain.q) && chain.steps.len() >= guaranteed,
        ),
        BoundCheck::exact(
            "witness-certificates",
            "each certificate fixes all earlier subspaces and moves the current one",
            guaranteed.saturating_sub(1) - failures.len(),
            guaranteed.saturating_sub(1),
            failures.is_empty() && checked == guaranteed.saturating_sub(1),
        ),
    ];

    let chain_mode = match action {
        None => ChainMode::Skipped { reason: String::from("skipped: no action table") },
        Some(table) => {
            check_params(chain, table)?;
            let order =
                gl_order(d as u32, chain.q as u64, true).map_err(|e| LabError::BadParameters(format!("{e}")))?;
            if order > BigUint::from(order_limit) {
                ChainMode::Skipped { reason: String::from("skipped: budget") }
            } else {
                let points: Vec<u32> = omegas[..guaranteed]
                    .iter()
                    .map(|w| table.index_of(w).expect("witness subspace is a point") as u32)
                    .collect();
                let sc = StabilizerChain::build(table.degree(), table.generators(), &points, None);
                let orders: Vec<BigUint> = (0..=guaranteed).map(|i| sc.stabilizer_order(i)).collect();
                let strict = orders.windows(2).all(|w| w[1] < w[0]);
                let stabilizer_orders = orders.iter().map(|o| format!("{o}")).collect();
                checks.push(BoundCheck::exact(
                    "witness-strict-descent",
                    "pointwise stabilizers strictly decrease along the guaranteed chain",
                    guaranteed,
                    guaranteed,
                    strict,
                ));
                ChainMode::Ran { stabilizer_orders, strict }
            }
        }
    };
    Ok(WitnessVerification {
        d,
        m,
        q: chain.q,
        claimed_length: guaranteed,
        steps_built: chain.steps.len(),
        certificates_checked: checked,
        certificate_failures: failures,
        chain_mode,
        checks,
    })
}

fn image(w: &Subspace, g: &FqMatrix, field: &FieldSpec) -> Subspace {
    Subspace::from_matrix(&w.basis().mul(g, field).expect("dimensions agree"), field)
}

fn check_params(chain: &WitnessChain, table: &ActionTable) -> Result<(), LabError> {
    if table.d() != chain.d || table.m() != chain.m || table.field().q() != chain.q || table.subspaces().is_none() {
        return Err(LabError::MismatchedAction);
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinimalBaseCheck {
    pub first: usize,
    pub last: usize,
    pub points: Vec<u32>,
    pub claimed_size: usize,
    pub is_base: bool,
    /// Stabilizer order after deleting each point in turn.
    pub removal_orders: Vec<String>,
    pub minimal: bool,
    pub pass: bool,
}

/// Tests whether the designated sub-chain is a base from which no single
/// point can be dropped, and whether its size matches the claimed value.
pub fn witness_minimal_base_check(
    chain: &WitnessChain,
    table: &ActionTable,
    order_limit: u64,
) -> Result<MinimalBaseCheck, LabError> {
    check_params(chain, table)?;
    let order = gl_order(chain.d as u32, chain.q as u64, true).map_err(|e| LabError::BadParameters(format!("{e}")))?;
    if order > BigUint::from(order_limit) {
        return Err(LabError::Budget);
    }
    let (first, last, claimed_size) = chain.minimal_base_range();
    let points: Vec<u32> = chain.steps[first - 1..last]
        .iter()
        .map(|s| table.index_of(&s.omega).expect("witness subspace is a point") as u32)
        .collect();
    let stab =
        |pts: &[u32]| StabilizerChain::build(table.degree(), table.generators(), pts, None).stabilizer_order(pts.len());
    let is_base = stab(&points).is_one();
    let removal: Vec<BigUint> = (0..points.len())
        .map(|i| {
            let rest: Vec<u32> = points.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &p)| p).collect();
            stab(&rest)
        })
        .collect();
    let minimal = removal.iter().all(|o| !o.is_one());
    let pass = is_base && minimal && points.len() == claimed_size;
    Ok(MinimalBaseCheck {
        first,
        last,
        points,
        claimed_size,
        is_base,
        removal_orders: removal.iter().map(|o| format!("{o}")).collect(),
        minimal,
        pass,
    })
}
