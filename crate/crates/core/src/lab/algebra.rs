//! Dimensions of `M_k`, the matrices mapping each of the first `k` subspaces
//! into itself.

use alloc::vec::Vec;

use crate::field::{FieldSpec, Fq};
use crate::matrix::FqMatrix;
use crate::projective::Subspace;

use super::witness::WitnessChain;
use super::{BoundCheck, LabError};

/// Linear conditions on the `d^2` entries of `g` (variable `s*d + c` is
/// `g[s][c]`) expressing `omega * g <= omega`.
///
/// For each basis row `u` and each non-pivot column `c`, the `c`-th entry of
/// `u g` must equal what the pivot entries of `u g` predict.
fn constraints(omega: &Subspace, field: &FieldSpec) -> Vec<Vec<Fq>> {
    let basis = omega.basis();
    let d = basis.cols();
    let pivots = basis.pivots();
    let mut rows = Vec::new();
    for u in basis.row_vectors() {
        for c in (0..d).filter(|c| !pivots.contains(c)) {
            let mut row = alloc::vec![Fq::ZERO; d * d];
            for (s, &us) in u.iter().enumerate() {
                if us.is_zero() {
                    continue;
                }
                row[s * d + c] = field.add(row[s * d + c], us);
                for (j, &pj) in pivots.iter().enumerate() {
                    let coeff = field.mul(us, basis.get(j, c));
                    row[s * d + pj] = field.sub(row[s * d + pj], coeff);
                }
            }
            rows.push(row);
        }
    }
    rows
}

/// `dim M_k` for `k = 0..=len`; `M_0` is the full matrix algebra.
pub fn intersection_algebra_dims(subspaces: &[Subspace], field: &FieldSpec) -> Result<Vec<usize>, LabError> {
    let Some(first) = subspaces.first() else {
        return Err(LabError::BadParameters("no subspaces given".into()));
    };
    let d = first.ambient_dim();
    if subspaces.iter().any(|s| s.ambient_dim() != d) {
        return Err(LabError::DimensionMismatch);
    }
    let mut dims = alloc::vec![d * d];
    let mut system: Vec<Vec<Fq>> = Vec::new();
    for omega in subspaces {
        system.extend(constraints(omega, field));
        let mut m = FqMatrix::from_rows(&system);
        let rank = if system.is_empty() { 0 } else { m.rref_in_place(field) };
        // Keep only the independent rows so later systems stay small.
        system = m.row_vectors().take(rank).map(<[Fq]>::to_vec).collect();
        dims.push(d * d - rank);
    }
    Ok(dims)
}

/// Dimension of the span of all vectors of the first `k` subspaces, `k = 0..=len`.
fn join_dims(subspaces: &[Subspace], field: &FieldSpec) -> Vec<usize> {
    let d = subspaces.first().map_or(0, |s| s.ambient_dim());
    let mut rows: Vec<Vec<Fq>> = Vec::new();
    let mut out = alloc::vec![0];
    for s in subspaces {
        rows.extend(s.basis().row_vectors().map(<[Fq]>::to_vec));
        out.push(FqMatrix::from_rows(&rows).rank(field).min(d));
    }
    out
}

/// The dimension facts about `M_k` along a witness chain: the first two
/// drops exactly, every later drop at least `max(1, b_k (d - m))`, and the
/// terminal algebra equal to the scalars.
pub fn algebra_checks(chain: &WitnessChain) -> Result<(Vec<usize>, Vec<BoundCheck>), LabError> {
    let field = &*chain.field;
    let (d, m) = (chain.d, chain.m);
    let omegas = chain.subspaces();
    let dims = intersection_algebra_dims(&omegas, field)?;
    let a = join_dims(&omegas, field);
    let b = |k: usize| a[k + 1] - a[k];
    let delta = |k: usize| dims[k] as i64 - dims[k + 1] as i64;
    let mut checks = alloc::vec![
        BoundCheck::exact("algebra-full", "dim M_0 = d^2", dims[0], d * d, dims[0] == d * d),
        BoundCheck::exact(
            "algebra-first",
            "dim M_1 = d^2 - m(d - m)",
            dims[1],
            d * d - m * (d - m),
            dims[1] == d * d - m * (d - m),
        ),
    ];
    if omegas.len() >= 2 {
        let b1 = b(1);
        checks.push(BoundCheck::exact(
            "algebra-second-drop",
            "dim M_1 - dim M_2 = b_1 (d - b_1)",
            delta(1),
            (b1 * (d - b1)) as i64,
            delta(1) == (b1 * (d - b1)) as i64,
        ));
    }
    let mut worst: Option<(usize, i64, i64)> = None;
    for k in 2..omegas.len() {
        let need = core::cmp::max(1, b(k) * (d - m)) as i64;
        if delta(k) < need && worst.is_none() {
            worst = Some((k, delta(k), need));
        }
    }
    let (lhs, rhs) = worst.map_or((0, 0), |(_, l, r)| (l, r));
    checks.push(BoundCheck::exact(
        "algebra-later-drops",
        "dim M_k - dim M_(k+1) >= max(1, b_k (d - m)) for k >= 2",
        lhs,
        rhs,
        worst.is_none(),
    ));
    let last = *dims.last().unwrap();
    checks.push(BoundCheck::exact(
        "algebra-terminal",
        "the chain ends at the scalar matrices",
        last,
        1usize,
        last == 1,
    ));
    Ok((dims, checks))
}
