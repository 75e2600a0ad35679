//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs without the libtest harness so the lines always reach the console.
//! The process fails only if the set of failing criteria differs from
//! `KNOWN_RED`.

#[path = "../../core/tests/common/mod.rs"]
mod common;

use std::collections::BTreeSet;
use std::sync::Arc;
use std::time::{Duration, Instant};

use common::oracle::Elements;
use irrbase::{parse_corpus, run_corpus, RunOptions, DEFAULT_CORPUS};
use irrbase_core::field::FieldSpec;
use irrbase_core::lab::{
    algebra_checks, thm31_bounds, verify_witness, witness_minimal_base_check, witness_sequence, CHAIN_MODE_ORDER_LIMIT,
};
use irrbase_core::perm::{Perm, PermGroup};
use irrbase_core::projective::{
    build_action, build_pair_action, enumerate_subspaces, gaussian_binomial, LinearKind, PairKind,
    DEFAULT_ENUMERATION_CAP,
};
use irrbase_core::stabilizer_chain;
use irrbase_core::stats::{
    height, max_irredundant_base, max_minimal_base, min_base, relational_complexity, SearchBudget, StatsReport,
};
use num_bigint::BigUint;
use proptest::strategy::{Strategy, ValueTree};
use proptest::test_runner::TestRunner;

/// Criteria expected to fail; see the notes printed with each.
const KNOWN_RED: &[usize] = &[10];

type Outcome = Result<String, String>;

fn field(q: u64) -> Arc<FieldSpec> {
    Arc::new(FieldSpec::from_order(q).unwrap())
}

fn big(x: impl Into<BigUint>) -> BigUint {
    x.into()
}

fn pow(base: u64, e: usize) -> BigUint {
    BigUint::from(base).pow(e as u32)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn irredundant(g: &PermGroup) -> usize {
    max_irredundant_base(g, &SearchBudget::default()).unwrap().value
}

fn corpus_stats() -> Vec<(String, StatsReport)> {
    let specs = parse_corpus(DEFAULT_CORPUS).unwrap();
    let summary = run_corpus(&specs, &RunOptions::default()).unwrap();
    summary.reports.into_iter().map(|r| (r.name, r.stats.expect("default corpus fits the budget"))).collect()
}

fn c1_gaussian_binomial() -> Outcome {
    let start = Instant::now();
    ensure(gaussian_binomial(4, 2, 2).unwrap() == big(35u32), || "n(4,2,2) != 35".into())?;
    let mut cells = 0;
    for q in [2u64, 3, 4] {
        let f = field(q);
        for d in 2..=5 {
            for m in 1..d {
                let len = enumerate_subspaces(d, m, &f, DEFAULT_ENUMERATION_CAP).unwrap().len();
                let expect = gaussian_binomial(d as u32, m as u32, q).unwrap();
                ensure(big(len) == expect, || format!("({d},{m},{q}): enumerated {len}, formula {expect}"))?;
                cells += 1;
            }
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(1), || format!("took {t:?}"))?;
    Ok(format!("n(4,2,2) = 35; {cells} enumerations match in {t:.0?}"))
}

fn c2_two_sided_bound() -> Outcome {
    let mut parts = Vec::new();
    for (d, m, q) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (3, 1, 3), (2, 1, 4), (4, 1, 2), (4, 2, 2)] {
        let g = common::linear(LinearKind::Pgl, d, m, q);
        let i = irredundant(&g);
        let (lo, hi) = thm31_bounds(d, m, q).unwrap();
        ensure(lo <= i && i <= hi, || format!("({d},{m},{q}): I = {i} outside [{lo}, {hi}]"))?;
        if stabilizer_chain(&g, &[]).unwrap().order() <= big(2000u32) {
            let oracle = Elements::of(&g, 2000).max_irredundant();
            ensure(oracle == i, || format!("({d},{m},{q}): search {i}, unpruned {oracle}"))?;
        }
        if m == 1 && q == 3 {
            ensure(i == 2 * d - 1, || format!("({d},1,3): I = {i}, expected {}", 2 * d - 1))?;
        }
        parts.push(format!("({d},{m},{q})={i}"));
    }
    Ok(parts.join(" "))
}

fn grid() -> Vec<(usize, usize, u64)> {
    let mut out = Vec::new();
    for d in 2..=6 {
        for m in 1..=d / 2 {
            for q in [2u64, 3, 4, 5] {
                out.push((d, m, q));
            }
        }
    }
    out
}

fn c3_witness_certificates() -> Outcome {
    let start = Instant::now();
    let mut certs = 0;
    for (d, m, q) in grid() {
        let chain = witness_sequence(d, m, field(q)).unwrap();
        let expect = if q == 2 { m * d - m * m + 1 } else { (m + 1) * d - m * m };
        ensure(chain.claimed_length == expect, || format!("({d},{m},{q}): length {}", chain.claimed_length))?;
        let v = verify_witness(&chain, None, CHAIN_MODE_ORDER_LIMIT).unwrap();
        ensure(v.pass(), || format!("({d},{m},{q}): certificate failures at {:?}", v.certificate_failures))?;
        certs += v.certificates_checked;
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(10), || format!("took {t:?}"))?;
    Ok(format!("{} cells, {certs} certificates in {t:.0?}", grid().len()))
}

fn c4_algebra_dimensions() -> Outcome {
    let mut steps = 0;
    for (d, m, q) in grid() {
        let chain = witness_sequence(d, m, field(q)).unwrap();
        let (dims, checks) = algebra_checks(&chain).unwrap();
        if let Some(c) = checks.iter().find(|c| !c.pass) {
            return Err(format!("({d},{m},{q}): {} ({} vs {}), dims {dims:?}", c.name, c.lhs, c.rhs));
        }
        steps += dims.len() - 1;
    }
    Ok(format!("{} chains, {steps} steps, all end at the scalars", grid().len()))
}

fn c5_statistic_chain(stats: &[(String, StatsReport)]) -> Outcome {
    for (name, s) in stats {
        let v = |w: &Option<irrbase_core::stats::Witnessed>| w.as_ref().unwrap().value;
        let (b, bb, h, i) = (v(&s.b), v(&s.big_b), v(&s.h), v(&s.i));
        let rc = s.rc.as_ref().unwrap().value;
        ensure(b <= bb && bb <= h && h <= i, || format!("{name}: b,B,H,I = {b},{bb},{h},{i}"))?;
        ensure(pow(2, i) <= pow(s.n as u64, b), || format!("{name}: I = {i} > b log n"))?;
        ensure(rc <= h + 1, || format!("{name}: RC = {rc} > H + 1 = {}", h + 1))?;
    }
    Ok(format!("{} corpus groups", stats.len()))
}

fn c6_main_theorem(stats: &[(String, StatsReport)]) -> Outcome {
    let mut count = 0;
    for (name, s) in stats.iter().filter(|(_, s)| s.primitive) {
        let i = s.i.as_ref().unwrap().value;
        ensure(pow(2, i) < pow(s.n as u64, 5), || format!("{name}: 2^{i} >= {}^5", s.n))?;
        count += 1;
    }
    Ok(format!("{count} primitive groups satisfy 2^I < n^5"))
}

fn c7_pair_actions() -> Outcome {
    let start = Instant::now();
    let h = common::linear(LinearKind::Pgl, 3, 1, 2);
    let ih = Elements::of(&h, 2000).max_irredundant();
    ensure(ih == irredundant(&h), || "I(H) disagrees with the unpruned search".into())?;
    let mut parts = vec![format!("I(H) = {ih}")];
    for (pair, n) in [(PairKind::Contained, 21), (PairKind::DirectSum, 28)] {
        for duality in [false, true] {
            let t = build_pair_action(pair, LinearKind::Pgl, 3, 1, field(2), duality, DEFAULT_ENUMERATION_CAP).unwrap();
            ensure(t.degree() == n, || format!("{pair:?}: {} points, expected {n}", t.degree()))?;
            let g = t.group();
            let ig = Elements::of(&g, 2000).max_irredundant();
            ensure(ig == irredundant(&g), || format!("{pair:?}: search and unpruned disagree"))?;
            ensure(ig <= 2 * ih + 1, || format!("{pair:?} duality={duality}: I = {ig} > {}", 2 * ih + 1))?;
            parts.push(format!("{pair:?}{}: n={n} I={ig}", if duality { "+duality" } else { "" }));
        }
    }
    let t = start.elapsed();
    ensure(t < Duration::from_secs(60), || format!("took {t:?}"))?;
    Ok(parts.join(", "))
}

fn c8_greedy(stats: &[(String, StatsReport)]) -> Outcome {
    let mut worst = 0.0f64;
    for (name, s) in stats {
        let g = s.greedy.as_ref().unwrap();
        let (b, i, len) = (s.b.as_ref().unwrap().value, s.i.as_ref().unwrap().value, g.base.len());
        ensure(b <= len && len <= i, || format!("{name}: greedy {len} outside [{b}, {i}]"))?;
        if s.primitive {
            ensure(pow(2, len) < pow(s.n as u64, 5), || format!("{name}: greedy {len} >= 5 log n"))?;
        }
        let work = g.chain_builds + g.orbit_computations;
        let n2 = (s.n * s.n) as u64;
        ensure(work <= n2.max(1), || format!("{name}: {work} chain builds and orbit passes > n^2 = {n2}"))?;
        worst = worst.max(work as f64 / n2 as f64);
    }
    Ok(format!("greedy within [b, I]; work/n^2 at most {worst:.3}"))
}

fn c9_oracle_equivalence() -> Outcome {
    let mut groups: Vec<(String, PermGroup)> = common::small_groups();
    let mut runner = TestRunner::deterministic();
    let perm = |n: usize| proptest::strategy::Just((0..n as u32).collect::<Vec<u32>>()).prop_shuffle();
    while groups.len() < common::small_groups().len() + 24 {
        let n = 3 + groups.len() % 6;
        let gens: Vec<Perm> = (0..1 + groups.len() % 3)
            .map(|_| Perm::from_images(perm(n).new_tree(&mut runner).unwrap().current()).unwrap())
            .collect();
        let g = PermGroup::new(n, gens).unwrap();
        if stabilizer_chain(&g, &[]).unwrap().order() <= big(2000u32) {
            groups.push((format!("random #{}", groups.len()), g));
        }
    }
    let budget = SearchBudget::default();
    for (name, g) in &groups {
        let all = Elements::of(g, 2000);
        let pairs = [
            ("b", min_base(g, &budget).unwrap().value, all.min_base()),
            ("I", max_irredundant_base(g, &budget).unwrap().value, all.max_irredundant()),
            ("B", max_minimal_base(g, &budget).unwrap().value, all.max_minimal_base()),
            ("H", height(g, &budget).unwrap().value, all.height()),
            ("RC", relational_complexity(g, 5, &budget).unwrap().value, all.relational_complexity(g, 5)),
        ];
        for (stat, fast, slow) in pairs {
            ensure(fast == slow, || format!("{name}: {stat} search {fast}, unpruned {slow}"))?;
        }
    }
    Ok(format!("{} groups agree on b, I, B, H and RC", groups.len()))
}

fn c10_remark() -> Outcome {
    let mut notes = Vec::new();
    let mut ok = true;
    for (q, size) in [(2u64, 2usize), (3, 4)] {
        let f = field(q);
        let chain = witness_sequence(3, 1, f.clone()).unwrap();
        let table = build_action(LinearKind::Pgl, 3, 1, f, DEFAULT_ENUMERATION_CAP).unwrap();
        let c = witness_minimal_base_check(&chain, &table, CHAIN_MODE_ORDER_LIMIT).unwrap();
        let pass = c.pass && c.points.len() == size;
        ok &= pass;
        notes.push(format!(
            "(3,1,{q}) steps {}..{}: size {} (claimed {size}), base {}, minimal {}",
            c.first,
            c.last,
            c.points.len(),
            c.is_base,
            c.minimal
        ));
    }
    let text = notes.join("; ");
    if ok {
        Ok(text)
    } else {
        // Two points cannot be a base of PGL_3(2) on 7 points, whose minimum base size is 3.
        Err(text)
    }
}

fn main() {
    let stats = corpus_stats();
    let results: Vec<(usize, &str, Outcome)> = vec![
        (1, "Gaussian binomial", c1_gaussian_binomial()),
        (2, "two-sided linear bound", c2_two_sided_bound()),
        (3, "witness certificates", c3_witness_certificates()),
        (4, "matrix algebra dimensions", c4_algebra_dimensions()),
        (5, "statistic chain", c5_statistic_chain(&stats)),
        (6, "five-log bound on primitive groups", c6_main_theorem(&stats)),
        (7, "pair actions", c7_pair_actions()),
        (8, "greedy base", c8_greedy(&stats)),
        (9, "oracle equivalence", c9_oracle_equivalence()),
        (10, "minimal base sub-chain", c10_remark()),
    ];
    let mut failed = BTreeSet::new();
    for (k, title, outcome) in &results {
        match outcome {
            Ok(msg) => println!("PASS criterion {k:>2} ({title}): {msg}"),
            Err(msg) => {
                failed.insert(*k);
                let tag = if KNOWN_RED.contains(k) { " [known]" } else { "" };
                println!("FAIL criterion {k:>2} ({title}){tag}: {msg}");
            }
        }
    }
    let expected: BTreeSet<usize> = KNOWN_RED.iter().copied().collect();
    println!("acceptance: {} PASS, {} FAIL", results.len() - failed.len(), failed.len());
    if failed != expected {
        println!("acceptance: failing set {failed:?} differs from the known set {expected:?}");
        std::process::exit(1);
    }
}
