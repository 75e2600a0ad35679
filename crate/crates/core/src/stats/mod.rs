//! Exact base statistics: `b`, `B`, `H`, `I`, relational complexity and the
//! greedy base.
//!
//! Searches walk the lattice of pointwise stabilizers and only ever extend a
//! configuration by one representative from each orbit of its stabilizer.

mod budget;
mod lattice;

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use hashbrown::{HashMap, HashSet};
use serde::{Deserialize, Serialize};

use crate::chain::StabilizerChain;
use crate::perm::{orbit_reps, PermGroup};

use budget::Meter;
pub use budget::{Interrupt, SearchBudget, Statistic, StatsError, DEFAULT_NODE_CAP};
use lattice::Lattice;

/// A statistic together with a point sequence (or set) attaining it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witnessed {
    pub value: usize,
    pub witness: Vec<u32>,
}

/// Two tuples that agree on every proper subtuple up to the group action but
/// lie in different orbits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RcCertificate {
    pub lambda: Vec<u32>,
    pub sigma: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationalComplexity {
    pub value: usize,
    pub max_len: usize,
    /// A pair of length `value` showing that `value - 1` does not suffice.
    pub certificate: Option<RcCertificate>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyBase {
    pub base: Vec<u32>,
    pub chain_builds: u64,
    pub orbit_computations: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsSelection {
    pub b: bool,
    pub big_b: bool,
    pub h: bool,
    pub i: bool,
    pub rc: bool,
    pub greedy: bool,
}

impl StatsSelection {
    pub const ALL: StatsSelection = StatsSelection { b: true, big_b: true, h: true, i: true, rc: true, greedy: true };
}

impl Default for StatsSelection {
    fn default() -> Self {
        Self::ALL
    }
}

#[derive(Debug, Clone, Default)]
pub struct StatsConfig {
    pub budget: SearchBudget,
    pub select: StatsSelection,
    /// Longest tuple considered for relational complexity; defaults to the degree.
    pub rc_max_len: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsReport {
    pub n: usize,
    pub order: u128,
    pub transitive: bool,
    pub primitive: bool,
    pub b: Option<Witnessed>,
    #[serde(rename = "B")]
    pub big_b: Option<Witnessed>,
    #[serde(rename = "H")]
    pub h: Option<Witnessed>,
    #[serde(rename = "I")]
    pub i: Option<Witnessed>,
    #[serde(rename = "RC")]
    pub rc: Option<RelationalComplexity>,
    /// Set when relational complexity was requested but not computed.
    pub rc_skipped: Option<String>,
    pub greedy: Option<GreedyBase>,
    /// Distinct pointwise stabilizers materialized during the searches.
    pub lattice_nodes: usize,
}

/// Every statistic selected in `config`, sharing one stabilizer cache.
pub fn compute_stats(group: &PermGroup, config: &StatsConfig) -> Result<StatsReport, StatsError> {
    let mut engine = Engine::new(group)?;
    let sel = config.select;
    let b = if sel.b { Some(engine.min_base(&config.budget)?) } else { None };
    let i = if sel.i { Some(engine.max_irredundant(&config.budget)?) } else { None };
    let (mut big_b, mut h, mut rc, mut rc_skipped) = (None, None, None, None);
    if sel.big_b || sel.h || sel.rc {
        let max_len = if sel.rc { Some(config.rc_max_len.unwrap_or(group.degree().max(2))) } else { None };
        let out = match engine.independent_sets(&config.budget, max_len) {
            // RC alone may be dropped; B and H must still finish.
            Err(e) if e.is_budget() && sel.rc => {
                rc_skipped = Some(String::from("skipped: too large"));
                engine.independent_sets(&config.budget, None)?
            }
            other => other?,
        };
        big_b = sel.big_b.then_some(out.big_b);
        h = sel.h.then_some(out.h);
        rc = out.rc;
    }
    let greedy = sel.greedy.then(|| greedy_base(group));
    Ok(StatsReport {
        n: group.degree(),
        order: engine.lattice.node(Lattice::ROOT).order,
        transitive: group.is_transitive(),
        primitive: group.is_primitive(),
        b,
        big_b,
        h,
        i,
        rc,
        rc_skipped,
        greedy,
        lattice_nodes: engine.lattice.len(),
    })
}

/// Minimum base size `b(G)` and a base of that size.
pub fn min_base(group: &PermGroup, budget: &SearchBudget) -> Result<Witnessed, StatsError> {
    Engine::new(group)?.min_base(budget)
}

/// Maximum length `I(G)` of an irredundant base, with one such base.
pub fn max_irredundant_base(group: &PermGroup, budget: &SearchBudget) -> Result<Witnessed, StatsError> {
    Engine::new(group)?.max_irredundant(budget)
}

/// Maximum size `B(G)` of a minimal base, with one such base (as a sorted set).
pub fn max_minimal_base(group: &PermGroup, budget: &SearchBudget) -> Result<Witnessed, StatsError> {
    Ok(Engine::new(group)?.independent_sets(budget, None)?.big_b)
}

/// Height `H(G)`: the largest independent set, returned sorted.
pub fn height(group: &PermGroup, budget: &SearchBudget) -> Result<Witnessed, StatsError> {
    Ok(Engine::new(group)?.independent_sets(budget, None)?.h)
}

/// Relational complexity over tuples of length at most `max_len`.
///
/// For `k >= 2` a shortest pair of tuples witnessing failure at `k` can be
/// taken with distinct entries and equal in all but the last coordinate, so
/// it has the shape `(P, x), (P, y)` with `P` an independent set. The search
/// therefore scans independent sets `P` for points `x, y` that lie in one
/// orbit of every `G_(P - p)` but in different orbits of `G_(P)`.
pub fn relational_complexity(
    group: &PermGroup,
    max_len: usize,
    budget: &SearchBudget,
) -> Result<RelationalComplexity, StatsError> {
    if max_len < 2 {
        return Err(StatsError::MaxLenTooSmall(max_len));
    }
    let out = Engine::new(group)?.independent_sets(budget, Some(max_len))?;
    Ok(out.rc.expect("requested"))
}

/// Repeatedly fixes the smallest point of a largest orbit of the current
/// stabilizer. Uses at most `n` chain builds and `n + 1` orbit computations.
pub fn greedy_base(group: &PermGroup) -> GreedyBase {
    let n = group.degree();
    let mut gens = group.generators().to_vec();
    let mut out = GreedyBase { base: Vec::new(), chain_builds: 0, orbit_computations: 0 };
    loop {
        let reps = orbit_reps(n, &gens);
        out.orbit_computations += 1;
        let mut sizes = vec![0usize; n];
        for &r in &reps {
            sizes[r as usize] += 1;
        }
        let best = (0..n).filter(|&x| sizes[x] > 1).max_by(|&a, &b| sizes[a].cmp(&sizes[b]).then(b.cmp(&a)));
        let Some(p) = best else {
            return out;
        };
        let chain = StabilizerChain::build(n, &gens, &[p as u32], None);
        out.chain_builds += 1;
        out.base.push(p as u32);
        gens = chain.stabilizer_generators(1).to_vec();
    }
}

struct Independent {
    h: Witnessed,
    big_b: Witnessed,
    rc: Option<RelationalComplexity>,
}

struct Engine {
    lattice: Lattice,
}

impl Engine {
    fn new(group: &PermGroup) -> Result<Self, StatsError> {
        Ok(Engine { lattice: Lattice::new(group)? })
    }

    fn min_base(&mut self, budget: &SearchBudget) -> Result<Witnessed, StatsError> {
        let mut meter = Meter::new(budget, Statistic::MinBase);
        // Largest depth known to fail from each node.
        let mut dead: HashMap<u32, usize> = HashMap::new();
        let mut depth = 0;
        loop {
            let mut path = Vec::new();
            if self.b_search(Lattice::ROOT, depth, &mut path, &mut dead, &mut meter)? {
                return Ok(Witnessed { value: depth, witness: path });
            }
            depth += 1;
        }
    }

    fn b_search(
        &mut self,
        id: u32,
        left: usize,
        path: &mut Vec<u32>,
        dead: &mut HashMap<u32, usize>,
        meter: &mut Meter<'_>,
    ) -> Result<bool, StatsError> {
        meter.tick()?;
        let node = self.lattice.node(id);
        if node.is_trivial() {
            return Ok(true);
        }
        if left == 0 || dead.get(&id).is_some_and(|&d| d >= left) {
            return Ok(false);
        }
        // Each further point divides the order by at most the largest orbit.
        let widest = *node.orbit_len.iter().max().unwrap() as u128;
        if widest.checked_pow(left as u32).is_some_and(|reach| reach < node.order) {
            dead.insert(id, left);
            return Ok(false);
        }
        let reps: Vec<u32> = node.moved_reps().collect();
        for p in reps {
            let child = self.lattice.child(id, p);
            path.push(p);
            if self.b_search(child, left - 1, path, dead, meter)? {
                return Ok(true);
            }
            path.pop();
        }
        dead.insert(id, left);
        Ok(false)
    }

    fn max_irredundant(&mut self, budget: &SearchBudget) -> Result<Witnessed, StatsError> {
        let mut meter = Meter::new(budget, Statistic::Irredundant);
        let mut memo: HashMap<u32, (usize, u32)> = HashMap::new();
        let value = self.i_search(Lattice::ROOT, &mut memo, &mut meter)?;
        let mut witness = Vec::new();
        let mut id = Lattice::ROOT;
        while let Some(&(_, p)) = memo.get(&id) {
            if p == lattice::NONE {
                break;
            }
            witness.push(p);
            id = self.lattice.child(id, p);
        }
        Ok(Witnessed { value, witness })
    }

    fn i_search(
        &mut self,
        id: u32,
        memo: &mut HashMap<u32, (usize, u32)>,
        meter: &mut Meter<'_>,
    ) -> Result<usize, StatsError> {
        if let Some(&(v, _)) = memo.get(&id) {
            return Ok(v);
        }
        meter.tick()?;
        let reps: Vec<u32> = self.lattice.node(id).moved_reps().collect();
        let mut best = (0, lattice::NONE);
        for p in reps {
            let child = self.lattice.child(id, p);
            let v = 1 + self.i_search(child, memo, meter)?;
            if v > best.0 {
                best = (v, p);
            }
        }
        memo.insert(id, best);
        Ok(best.0)
    }

    /// Walks every independent set up to conjugacy, collecting `H`, `B` and
    /// (when `rc_max_len` is set) relational complexity.
    fn independent_sets(
        &mut self,
        budget: &SearchBudget,
        rc_max_len: Option<usize>,
    ) -> Result<Independent, StatsError> {
        if let Some(l) = rc_max_len {
            if l < 2 {
                return Err(StatsError::MaxLenTooSmall(l));
            }
        }
        let statistic = if rc_max_len.is_some() { Statistic::Relational } else { Statistic::Height };
        let mut meter = Meter::new(budget, statistic);
        let n = self.lattice.degree();
        let mut walk = Walk {
            visited: HashSet::new(),
            h: Witnessed { value: 0, witness: Vec::new() },
            big_b: None,
            rc: None,
            rc_max_len,
        };
        let mut set = Vec::new();
        self.indep_search(Lattice::ROOT, &mut set, FixedBitSet::with_capacity(n), &mut walk, &mut meter)?;

        let root = self.lattice.node(Lattice::ROOT);
        let rc = rc_max_len.map(|max_len| {
            if root.is_trivial() {
                return RelationalComplexity { value: 1, max_len, certificate: None };
            }
            match walk.rc.take() {
                Some(c) if c.lambda.len() >= 2 => {
                    RelationalComplexity { value: c.lambda.len(), max_len, certificate: Some(c) }
                }
                _ => {
                    // (a, a) and (a, b) with a, b in one orbit.
                    let a = root.moved_reps().next().unwrap();
                    let b = (0..n as u32).find(|&x| x != a && root.orbit_of[x as usize] == a).unwrap();
                    let certificate = RcCertificate { lambda: vec![a, a], sigma: vec![a, b] };
                    RelationalComplexity { value: 2, max_len, certificate: Some(certificate) }
                }
            }
        });
        let big_b = walk.big_b.unwrap_or(Witnessed { value: 0, witness: Vec::new() });
        Ok(Independent { h: walk.h, big_b, rc })
    }

    fn indep_search(
        &mut self,
        id: u32,
        set: &mut Vec<u32>,
        bits: FixedBitSet,
        walk: &mut Walk,
        meter: &mut Meter<'_>,
    ) -> Result<(), StatsError> {
        meter.tick()?;
        if set.len() > walk.h.value {
            walk.h = Witnessed { value: set.len(), witness: sorted(set) };
        }
        let node = self.lattice.node(id);
        if node.is_trivial() && walk.big_b.as_ref().is_none_or(|b| set.len() > b.value) {
            walk.big_b = Some(Witnessed { value: set.len(), witness: sorted(set) });
        }
        if let Some(max_len) = walk.rc_max_len {
            let best = walk.rc.as_ref().map_or(0, |c| c.lambda.len());
            if !set.is_empty() && set.len() < max_len && set.len() + 1 > best {
                if let Some((x, y)) = self.critical_pair(id, set) {
                    let p = sorted(set);
                    let mut lambda = p.clone();
                    lambda.push(x);
                    let mut sigma = p;
                    sigma.push(y);
                    walk.rc = Some(RcCertificate { lambda, sigma });
                }
            }
        }
        let reps: Vec<u32> = self.lattice.node(id).moved_reps().collect();
        for p in reps {
            let mut next = bits.clone();
            next.grow(self.lattice.degree());
            next.insert(p as usize);
            if !walk.visited.insert(next.clone()) {
                continue;
            }
            if !self.extends_independent(set, p) {
                continue;
            }
            let child = self.lattice.child(id, p);
            set.push(p);
            self.indep_search(child, set, next, walk, meter)?;
            set.pop();
        }
        Ok(())
    }

    /// Whether `set ∪ {p}` is independent, given that `set` is and `p` is moved by `G_(set)`.
    fn extends_independent(&mut self, set: &[u32], p: u32) -> bool {
        (0..set.len()).all(|skip| {
            let others = set.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x);
            let id = self.lattice.of_set(others.chain(core::iter::once(p)));
            !self.lattice.node(id).fixed.contains(set[skip] as usize)
        })
    }

    /// Points `x != y` outside `set`, in one orbit of each `G_(set - p)` but
    /// in different orbits of `G_(set)`; smallest such pair.
    fn critical_pair(&mut self, id: u32, set: &[u32]) -> Option<(u32, u32)> {
        let n = self.lattice.degree();
        let drops: Vec<u32> = (0..set.len())
            .map(|skip| {
                let others = set.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x);
                self.lattice.of_set(others)
            })
            .collect();
        let mut in_set = FixedBitSet::with_capacity(n);
        for &p in set {
            in_set.insert(p as usize);
        }
        let here = self.lattice.node(id);
        // Signature of a point: its orbit in each G_(set - p).
        let mut first: HashMap<Vec<u32>, (u32, u32)> = HashMap::new();
        for x in 0..n as u32 {
            if in_set.contains(x as usize) {
                continue;
            }
            let key: Vec<u32> = drops.iter().map(|&d| self.lattice.node(d).orbit_of[x as usize]).collect();
            let own = here.orbit_of[x as usize];
            match first.get(&key) {
                Some(&(y, orbit)) if orbit != own => return Some((y, x)),
                Some(_) => {}
                None => {
                    first.insert(key, (x, own));
                }
            }
        }
        None
    }
}

struct Walk {
    visited: HashSet<FixedBitSet>,
    h: Witnessed,
    big_b: Option<Witnessed>,
    rc: Option<RcCertificate>,
    rc_max_len: Option<usize>,
}

fn sorted(set: &[u32]) -> Vec<u32> {
    let mut v = set.to_vec();
    v.sort_unstable();
    v
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::FieldSpec;
    use crate::perm::Perm;
    use crate::projective::{build_action, LinearKind, DEFAULT_ENUMERATION_CAP};
    use alloc::sync::Arc;

    fn pgl(d: usize, m: usize, q: u64) -> PermGroup {
        let field = Arc::new(FieldSpec::from_order(q).unwrap());
        build_action(LinearKind::Pgl, d, m, field, DEFAULT_ENUMERATION_CAP).unwrap().group()
    }

    fn all(g: &PermGroup) -> StatsReport {
        compute_stats(g, &StatsConfig::default()).unwrap()
    }

    fn values(r: &StatsReport) -> [usize; 5] {
        [
            r.b.as_ref().unwrap().value,
            r.big_b.as_ref().unwrap().value,
            r.h.as_ref().unwrap().value,
            r.i.as_ref().unwrap().value,
            r.rc.as_ref().unwrap().value,
        ]
    }

    #[test]
    fn symmetric_four() {
        let r = all(&PermGroup::symmetric(4));
        assert_eq!(values(&r), [3, 3, 3, 3, 2]);
        assert_eq!(r.greedy.unwrap().base.len(), 3);
        assert_eq!(r.order, 24);
    }

    #[test]
    fn symmetric_three_height() {
        assert_eq!(height(&PermGroup::symmetric(3), &SearchBudget::default()).unwrap().value, 2);
    }

    #[test]
    fn projective_examples() {
        let r = all(&pgl(2, 1, 3));
        assert_eq!(values(&r), [3, 3, 3, 3, 2]);
        let r = all(&pgl(3, 1, 2));
        assert_eq!(r.b.as_ref().unwrap().value, 3);
        let [b, bb, h, i, rc] = values(&r);
        assert!(b <= bb && bb <= h && h <= i && rc <= h + 1);
        let i = max_irredundant_base(&pgl(3, 1, 3), &SearchBudget::default()).unwrap();
        assert_eq!(i.value, 5);
    }

    #[test]
    fn double_transposition() {
        let g = PermGroup::new(4, alloc::vec![Perm::from_images(alloc::vec![1, 0, 3, 2]).unwrap()]).unwrap();
        assert_eq!(max_minimal_base(&g, &SearchBudget::default()).unwrap().value, 1);
    }

    #[test]
    fn trivial_group() {
        let r = all(&PermGroup::trivial(3));
        assert_eq!(values(&r), [0, 0, 0, 0, 1]);
        assert!(r.greedy.unwrap().base.is_empty());
    }

    #[test]
    fn witnesses_are_bases() {
        let g = pgl(3, 1, 2);
        let r = all(&g);
        for w in [&r.b, &r.big_b, &r.i] {
            let w = w.as_ref().unwrap();
            let chain = crate::chain::stabilizer_chain(&g, &w.witness).unwrap();
            assert!(chain.stabilizer_order(w.witness.len()) == num_bigint::BigUint::from(1u32));
        }
    }

    #[test]
    fn budget_is_enforced() {
        let err = min_base(&pgl(3, 1, 3), &SearchBudget::with_node_cap(2)).unwrap_err();
        assert!(err.is_budget());
        let stop: Interrupt = Arc::new(|| true);
        let budget = SearchBudget { node_cap: u64::MAX, interrupt: Some(stop) };
        assert_eq!(
            height(&pgl(3, 1, 3), &budget).unwrap_err(),
            StatsError::Interrupted { statistic: Statistic::Height }
        );
        assert_eq!(
            relational_complexity(&PermGroup::symmetric(3), 1, &SearchBudget::default()).unwrap_err(),
            StatsError::MaxLenTooSmall(1)
        );
    }
}
