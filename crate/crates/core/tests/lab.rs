mod common;

use std::sync::Arc;

use irrbase_core::chain::is_soluble;
use irrbase_core::lab::{
    algebra_checks, bound_suite, cyclic_chain_length, intersection_algebra_dims, thm31_bounds, verify_witness,
    witness_minimal_base_check, witness_sequence, BoundContext, ChainMode, FamilyContext, FamilyShape,
    CHAIN_MODE_ORDER_LIMIT,
};
use irrbase_core::projective::DEFAULT_ENUMERATION_CAP;
use irrbase_core::stats::{compute_stats, StatsConfig};
use irrbase_core::{build_action, FieldSpec, Fq, FqMatrix, LinearKind, Subspace};
use proptest::prelude::*;

fn field(q: u64) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::from_order(q).unwrap())
}

fn unit(d: usize, i: usize) -> Vec<Fq> {
    let mut v = vec![Fq::ZERO; d];
    v[i] = Fq::ONE;
    v
}

fn line(d: usize, idx: &[usize], f: &FieldSpec) -> Subspace {
    let mut v = vec![Fq::ZERO; d];
    for &i in idx {
        v[i] = Fq::ONE;
    }
    Subspace::span(&[v], d, f)
}

#[test]
fn lines_in_three_space_over_f3() {
    let f = field(3);
    let chain = witness_sequence(3, 1, f.clone()).unwrap();
    let expected: Vec<Subspace> = [&[0][..], &[1], &[2], &[0, 1], &[0, 2]].iter().map(|idx| line(3, idx, &f)).collect();
    assert_eq!(chain.subspaces(), expected);
    assert_eq!(chain.claimed_length, 5);
}

#[test]
fn algebra_dimensions_for_coordinate_lines() {
    let f = field(3);
    let e1 = Subspace::span(&[unit(3, 0)], 3, &f);
    let e2 = Subspace::span(&[unit(3, 1)], 3, &f);
    assert_eq!(intersection_algebra_dims(std::slice::from_ref(&e1), &f).unwrap(), vec![9, 7]);
    assert_eq!(intersection_algebra_dims(&[e1, e2], &f).unwrap(), vec![9, 7, 5]);
}

#[test]
fn literal_diagonal_certificate_is_singular_in_characteristic_two() {
    let f = field(4);
    let g = FqMatrix::elementary(3, 2, 2, Fq::ONE, &f);
    assert!(!g.is_invertible(&f));
    let chain = witness_sequence(3, 1, f.clone()).unwrap();
    let cert = chain.steps.last().unwrap().certificate.unwrap();
    assert!(cert.matrix(3, &f).is_invertible(&f));
}

#[test]
fn minimal_base_sub_chain_over_f3() {
    let f = field(3);
    let chain = witness_sequence(3, 1, f.clone()).unwrap();
    let table = build_action(LinearKind::Pgl, 3, 1, f, DEFAULT_ENUMERATION_CAP).unwrap();
    let check = witness_minimal_base_check(&chain, &table, CHAIN_MODE_ORDER_LIMIT).unwrap();
    assert_eq!(check.points.len(), 4);
    assert!(check.pass, "{check:?}");
}

#[test]
fn witness_chains_verify() {
    for q in [2u64, 3, 4, 5, 7, 8, 9] {
        for d in 2..=5 {
            for m in 1..d {
                let f = field(q);
                let chain = witness_sequence(d, m, f.clone()).unwrap();
                assert_eq!(chain.steps.len(), m * d - m * m + d);
                let table = (d <= 3 && q <= 5).then(|| build_action(LinearKind::Pgl, d, m, f, 100_000).unwrap());
                let v = verify_witness(&chain, table.as_ref(), CHAIN_MODE_ORDER_LIMIT).unwrap();
                assert!(v.pass(), "d={d} m={m} q={q}: {v:?}");
                if let ChainMode::Ran { strict, .. } = &v.chain_mode {
                    assert!(strict);
                }
            }
        }
    }
}

#[test]
fn algebra_descends_along_witness_chains() {
    for q in [2u64, 3, 4, 5] {
        for d in 2..=5 {
            for m in 1..d {
                let chain = witness_sequence(d, m, field(q)).unwrap();
                let (dims, checks) = algebra_checks(&chain).unwrap();
                assert!(dims.windows(2).all(|w| w[1] <= w[0]));
                for c in &checks {
                    assert!(c.pass, "d={d} m={m} q={q}: {c:?}");
                }
            }
        }
    }
}

#[test]
fn bound_suite_holds_on_small_linear_groups() {
    for (kind, d, m, q) in [
        (LinearKind::Pgl, 2, 1, 3),
        (LinearKind::Pgl, 2, 1, 4),
        (LinearKind::Pgl, 2, 1, 5),
        (LinearKind::Pgl, 3, 1, 2),
        (LinearKind::Pgl, 3, 1, 3),
        (LinearKind::Pgl, 4, 2, 2),
        (LinearKind::Psl, 2, 1, 5),
        (LinearKind::Pgammal, 2, 1, 4),
    ] {
        let g = common::linear(kind, d, m, q);
        let stats = compute_stats(&g, &StatsConfig::default()).unwrap();
        let linear_i = (kind == LinearKind::Pgammal).then(|| {
            let h = common::linear(LinearKind::Pgl, d, m, q);
            compute_stats(&h, &StatsConfig::default()).unwrap().i.unwrap().value
        });
        let ctx = BoundContext {
            soluble: Some(is_soluble(&g)),
            family: Some(FamilyContext { shape: FamilyShape::Subspaces { kind }, d, m, q }),
            linear_i,
            ..Default::default()
        };
        let report = bound_suite(&stats, &ctx).unwrap();
        let failures: Vec<_> = report.failures().collect();
        assert!(failures.is_empty(), "{kind:?} {d} {m} {q}: {failures:?}");
        if kind == LinearKind::Pgl {
            let (lo, hi) = thm31_bounds(d, m, q).unwrap();
            let i = stats.i.unwrap().value;
            assert!(lo <= i && i <= hi);
        }
    }
}

proptest! {
    #[test]
    fn chain_length_is_additive(a in 1u64..500, b in 1u64..500) {
        prop_assert_eq!(
            cyclic_chain_length(a * b).unwrap(),
            cyclic_chain_length(a).unwrap() + cyclic_chain_length(b).unwrap()
        );
    }
}
