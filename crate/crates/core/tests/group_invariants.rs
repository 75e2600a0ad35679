mod common;

use common::oracle::Elements;
use irrbase_core::chain::{contains, is_soluble, pointwise_stabilizer, stabilizer_chain};
use irrbase_core::perm::{orbit, Perm, PermGroup};
use irrbase_core::projective::LinearKind;
use irrbase_core::stats::{compute_stats, max_irredundant_base, SearchBudget, StatsConfig};
use num_bigint::BigUint;
use proptest::prelude::*;

fn corpus() -> Vec<(String, PermGroup)> {
    let mut groups = common::small_groups();
    groups.push(("PGL(3,3)".into(), common::linear(LinearKind::Pgl, 3, 1, 3)));
    groups
}

fn order(g: &PermGroup) -> BigUint {
    stabilizer_chain(g, &[]).unwrap().order()
}

fn irredundant(g: &PermGroup) -> usize {
    max_irredundant_base(g, &SearchBudget::default()).unwrap().value
}

fn word(g: &PermGroup, letters: &[usize]) -> Perm {
    let gens = g.generators();
    if gens.is_empty() {
        return Perm::identity(g.degree());
    }
    letters.iter().fold(Perm::identity(g.degree()), |acc, &i| acc.then(&gens[i % gens.len()]))
}

#[test]
fn chain_order_matches_enumeration() {
    for (name, g) in common::small_groups() {
        let chain = stabilizer_chain(&g, &[]).unwrap();
        let product: usize = chain.transversal_sizes().iter().product();
        let all = Elements::of(&g, 10_000);
        assert_eq!(product, all.order(), "{name}");
        assert_eq!(chain.order(), BigUint::from(all.order()), "{name}");
        for h in &all.elems {
            assert!(contains(&chain, h).unwrap());
        }
    }
}

#[test]
fn orbit_stabilizer() {
    for (name, g) in corpus() {
        for p in 0..g.degree() {
            let len = orbit(&g, p).unwrap().len();
            let stab = order(&pointwise_stabilizer(&g, &[p as u32]).unwrap());
            assert_eq!(BigUint::from(len) * stab, order(&g), "{name} at {p}");
        }
    }
}

#[test]
fn statistic_chain_holds_on_the_corpus() {
    for (name, g) in corpus() {
        let s = compute_stats(&g, &StatsConfig::default()).unwrap();
        let (b, big_b, h, i) = (s.b.unwrap().value, s.big_b.unwrap().value, s.h.unwrap().value, s.i.unwrap().value);
        let rc = s.rc.unwrap().value;
        assert!(b <= big_b && big_b <= h && h <= i, "{name}");
        assert!(BigUint::from(2u32).pow(i as u32) <= BigUint::from(g.degree()).pow(b as u32), "{name}");
        assert!(rc <= h + 1, "{name}");
        let two = BigUint::from(2u32);
        if g.is_transitive() && g.degree() >= 5 {
            assert!(two.pow(i as u32 + 1) <= order(&g), "{name}");
        }
        if g.is_transitive() && b >= 1 {
            assert!(two.pow(i as u32 - 1) <= BigUint::from(g.degree()).pow(b as u32 - 1), "{name}");
        }
        if !is_soluble(&g) {
            assert!(two.pow(i as u32 + 1) < order(&g), "{name}");
        }
    }
}

#[test]
fn projective_lines_over_f3_have_odd_irredundant_length() {
    for d in 2..=3 {
        assert_eq!(irredundant(&common::linear(LinearKind::Pgl, d, 1, 3)), 2 * d - 1);
    }
}

#[test]
fn subgroups_and_index_two_extensions() {
    let pairs = [
        (PermGroup::alternating(4), PermGroup::symmetric(4)),
        (PermGroup::alternating(5), PermGroup::symmetric(5)),
        (common::linear(LinearKind::Psl, 2, 1, 3), common::linear(LinearKind::Pgl, 2, 1, 3)),
        (common::linear(LinearKind::Psl, 2, 1, 5), common::linear(LinearKind::Pgl, 2, 1, 5)),
        (common::linear(LinearKind::Pgl, 2, 1, 4), common::linear(LinearKind::Pgammal, 2, 1, 4)),
    ];
    for (h, g) in pairs {
        let gc = stabilizer_chain(&g, &[]).unwrap();
        assert!(h.generators().iter().all(|x| contains(&gc, x).unwrap()));
        assert_eq!(order(&h) * 2u32, order(&g));
        let (ih, ig) = (irredundant(&h), irredundant(&g));
        assert!(ih <= ig && ig <= ih + 1, "I(H) = {ih}, I(G) = {ig}");
    }
}

fn stab_order(g: &PermGroup, pts: &[u32]) -> BigUint {
    stabilizer_chain(g, pts).unwrap().stabilizer_order(pts.len())
}

fn group_strategy() -> impl Strategy<Value = (String, PermGroup)> {
    prop::sample::select(corpus())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn products_stay_in_the_group((_, g) in group_strategy(), a in prop::collection::vec(0usize..8, 0..12), b in prop::collection::vec(0usize..8, 0..12)) {
        let chain = stabilizer_chain(&g, &[]).unwrap();
        let (x, y) = (word(&g, &a), word(&g, &b));
        prop_assert!(contains(&chain, &x).unwrap() && contains(&chain, &y).unwrap());
        prop_assert!(contains(&chain, &x.then(&y)).unwrap());
    }

    #[test]
    fn permuted_prefix_keeps_the_order((_, g) in group_strategy(), pts in prop::collection::vec(0u32..64, 0..6), seed in any::<u64>()) {
        let n = g.degree() as u32;
        let mut prefix: Vec<u32> = pts.iter().map(|p| p % n).collect();
        let base = order(&g);
        prop_assert_eq!(stabilizer_chain(&g, &prefix).unwrap().order(), base.clone());
        let len = prefix.len().max(1);
        prefix.rotate_left(seed as usize % len);
        prefix.reverse();
        prop_assert_eq!(stabilizer_chain(&g, &prefix).unwrap().order(), base);
    }

    /// Dropping points that leave the stabilizer unchanged, then extending,
    /// gives an irredundant base.
    #[test]
    fn sequences_reduce_and_extend((_, g) in group_strategy(), pts in prop::collection::vec(0u32..64, 0..8)) {
        let n = g.degree() as u32;
        let seq: Vec<u32> = pts.iter().map(|p| p % n).collect();
        let mut kept: Vec<u32> = Vec::new();
        for &p in &seq {
            let mut next = kept.clone();
            next.push(p);
            if stab_order(&g, &next) < stab_order(&g, &kept) {
                kept = next;
            }
        }
        prop_assert_eq!(stab_order(&g, &kept), stab_order(&g, &seq));
        loop {
            let here = stab_order(&g, &kept);
            if here == BigUint::from(1u32) {
                break;
            }
            let p = (0..n).find(|&p| {
                let mut next = kept.clone();
                next.push(p);
                stab_order(&g, &next) < here
            });
            kept.push(p.expect("a nontrivial stabilizer moves some point"));
        }
        for k in 0..kept.len() {
            prop_assert!(stab_order(&g, &kept[..k + 1]) < stab_order(&g, &kept[..k]));
        }
        prop_assert!(kept.len() <= irredundant(&g));
    }
}
