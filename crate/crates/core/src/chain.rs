//! Deterministic Schreier–Sims stabilizer chains.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::One;

use crate::perm::{Perm, PermError, PermGroup};

const NONE: u32 = u32::MAX;

/// One level of a chain: a base point, the strong generators fixing all
/// earlier base points, and a transversal for the base point's orbit.
#[derive(Debug, Clone)]
pub struct Level {
    point: u32,
    gens: Vec<Perm>,
    orbit: Vec<u32>,
    pos: Vec<u32>,
    reps: Vec<Perm>,
    inv_reps: Vec<Perm>,
    // Per orbit point: how many generators have been applied during orbit extension.
    applied: Vec<usize>,
    // Per orbit point: how many Schreier generators (by generator index) are known to sift.
    verified: Vec<usize>,
}

impl Level {
    fn new(point: u32, degree: usize) -> Self {
        let mut pos = vec![NONE; degree];
        pos[point as usize] = 0;
        Level {
            point,
            gens: Vec::new(),
            orbit: vec![point],
            pos,
            reps: vec![Perm::identity(degree)],
            inv_reps: vec![Perm::identity(degree)],
            applied: vec![0],
            verified: vec![0],
        }
    }

    pub fn point(&self) -> u32 {
        self.point
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn orbit(&self) -> &[u32] {
        &self.orbit
    }

    /// Transversal element mapping the base point to `x`, if `x` is in the orbit.
    pub fn transversal(&self, x: u32) -> Option<&Perm> {
        match self.pos[x as usize] {
            NONE => None,
            i => Some(&self.reps[i as usize]),
        }
    }

    fn push_gen(&mut self, g: Perm) {
        self.gens.push(g);
        self.extend_orbit();
    }

    fn extend_orbit(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let x = self.orbit[i];
            for j in self.applied[i]..self.gens.len() {
                let y = self.gens[j].apply(x);
                if self.pos[y as usize] == NONE {
                    let rep = self.reps[i].then(&self.gens[j]);
                    self.pos[y as usize] = self.orbit.len() as u32;
                    self.orbit.push(y);
                    self.inv_reps.push(rep.inverse());
                    self.reps.push(rep);
                    self.applied.push(0);
                    self.verified.push(0);
                }
            }
            self.applied[i] = self.gens.len();
            i += 1;
        }
    }
}

/// A base with strong generating set, supporting order and membership.
#[derive(Debug, Clone)]
pub struct StabilizerChain {
    degree: usize,
    levels: Vec<Level>,
}

impl StabilizerChain {
    /// Builds a chain whose base starts with `prefix` (kept verbatim, redundant
    /// points included). When `known_order` is given, construction stops as soon
    /// as the transversal sizes multiply to it.
    pub(crate) fn build(degree: usize, gens: &[Perm], prefix: &[u32], known_order: Option<u128>) -> Self {
        let mut strong: Vec<Perm> = Vec::new();
        for g in gens {
            if !g.is_identity() && !strong.contains(g) {
                strong.push(g.clone());
            }
        }
        let mut base: Vec<u32> = prefix.to_vec();
        for g in &strong {
            if base.iter().all(|&b| g.fixes(b)) {
                base.push(g.first_moved().unwrap());
            }
        }
        let mut chain = StabilizerChain { degree, levels: base.iter().map(|&b| Level::new(b, degree)).collect() };
        for g in &strong {
            for i in 0..chain.levels.len() {
                chain.levels[i].gens.push(g.clone());
                if !g.fixes(chain.levels[i].point) {
                    break;
                }
            }
        }
        for level in &mut chain.levels {
            level.extend_orbit();
        }
        if chain.reached(known_order) {
            return chain;
        }

        let mut i = chain.levels.len() as isize - 1;
        while i >= 0 {
            let lvl = i as usize;
            match chain.find_unsifted(lvl) {
                Some((residue, drop)) => {
                    if drop == chain.levels.len() {
                        let point = residue.first_moved().unwrap();
                        chain.levels.push(Level::new(point, degree));
                    }
                    for l in lvl + 1..=drop {
                        chain.levels[l].push_gen(residue.clone());
                    }
                    if chain.reached(known_order) {
                        break;
                    }
                    i = drop as isize;
                }
                None => i -= 1,
            }
        }
        chain
    }

    fn reached(&self, known_order: Option<u128>) -> bool {
        known_order.is_some_and(|target| self.order_u128() == Some(target))
    }

    /// First Schreier generator at `lvl` that does not sift through the levels below.
    fn find_unsifted(&mut self, lvl: usize) -> Option<(Perm, usize)> {
        let mut idx = 0;
        while idx < self.levels[lvl].orbit.len() {
            while self.levels[lvl].verified[idx] < self.levels[lvl].gens.len() {
                let level = &self.levels[lvl];
                let j = level.verified[idx];
                let s = &level.gens[j];
                let target = s.apply(level.orbit[idx]);
                let back = &level.inv_reps[level.pos[target as usize] as usize];
                let h = level.reps[idx].then(s).then(back);
                if !h.is_identity() {
                    let (residue, drop) = self.sift(h, lvl + 1);
                    if drop < self.levels.len() || !residue.is_identity() {
                        return Some((residue, drop));
                    }
                }
                self.levels[lvl].verified[idx] += 1;
            }
            idx += 1;
        }
        None
    }

    /// Sifts `h` from level `from`; returns the residue and the level where it stopped.
    fn sift(&self, mut h: Perm, from: usize) -> (Perm, usize) {
        for l in from..self.levels.len() {
            let level = &self.levels[l];
            let beta = h.apply(level.point);
            match level.pos[beta as usize] {
                NONE => return (h, l),
                i => h = h.then(&level.inv_reps[i as usize]),
            }
        }
        (h, self.levels.len())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn levels(&self) -> &[Level] {
        &self.levels
    }

    pub fn base(&self) -> Vec<u32> {
        self.levels.iter().map(|l| l.point).collect()
    }

    pub fn transversal_sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.orbit.len()).collect()
    }

    pub fn order(&self) -> BigUint {
        self.levels.iter().fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    pub fn order_u128(&self) -> Option<u128> {
        self.levels.iter().try_fold(1u128, |acc, l| acc.checked_mul(l.orbit.len() as u128))
    }

    /// Order of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_order(&self, k: usize) -> BigUint {
        self.levels.iter().skip(k).fold(BigUint::one(), |acc, l| acc * BigUint::from(l.orbit.len()))
    }

    /// Strong generators of the pointwise stabilizer of the first `k` base points.
    pub fn stabilizer_generators(&self, k: usize) -> &[Perm] {
        self.levels.get(k).map_or(&[], |l| &l.gens)
    }

    pub fn contains(&self, g: &Perm) -> Result<bool, PermError> {
        if g.degree() != self.degree {
            return Err(PermError::DegreeMismatch { expected: self.degree, found: g.degree() });
        }
        let (residue, drop) = self.sift(g.clone(), 0);
        Ok(drop == self.levels.len() && residue.is_identity())
    }

    pub fn is_trivial(&self) -> bool {
        self.levels.iter().all(|l| l.orbit.len() == 1)
    }
}

pub fn stabilizer_chain(group: &PermGroup, base_prefix: &[u32]) -> Result<StabilizerChain, PermError> {
    for &b in base_prefix {
        group.check_point(b as usize)?;
    }
    Ok(StabilizerChain::build(group.degree(), group.generators(), base_prefix, None))
}

pub fn group_order(chain: &StabilizerChain) -> BigUint {
    chain.order()
}

pub fn contains(chain: &StabilizerChain, g: &Perm) -> Result<bool, PermError> {
    chain.contains(g)
}

pub fn pointwise_stabilizer(group: &PermGroup, points: &[u32]) -> Result<PermGroup, PermError> {
    let chain = stabilizer_chain(group, points)?;
    PermGroup::new(group.degree(), chain.stabilizer_generators(points.len()).to_vec())
}

/// Normal closure of the subgroup generated by `seeds` under conjugation by `group`.
fn normal_closure(group: &PermGroup, seeds: Vec<Perm>) -> Vec<Perm> {
    let n = group.degree();
    let mut gens: Vec<Perm> = seeds.into_iter().filter(|g| !g.is_identity()).collect();
    let mut chain = StabilizerChain::build(n, &gens, &[], None);
    let inverses: Vec<Perm> = group.generators().iter().map(Perm::inverse).collect();
    let mut i = 0;
    while i < gens.len() {
        for (g, g_inv) in group.generators().iter().zip(&inverses) {
            let conj = g_inv.then(&gens[i]).then(g);
            if !chain.contains(&conj).unwrap() {
                gens.push(conj);
                chain = StabilizerChain::build(n, &gens, &[], None);
            }
        }
        i += 1;
    }
    gens
}

/// The commutator subgroup `[G, G]`.
pub fn derived_subgroup(group: &PermGroup) -> PermGroup {
    let gens = group.generators();
    let mut commutators = Vec::new();
    for (i, a) in gens.iter().enumerate() {
        for b in &gens[i + 1..] {
            let c = a.inverse().then(&b.inverse()).then(a).then(b);
            if !c.is_identity() {
                commutators.push(c);
            }
        }
    }
    PermGroup::new(group.degree(), normal_closure(group, commutators)).unwrap()
}

/// True if the derived series reaches the trivial group.
pub fn is_soluble(group: &PermGroup) -> bool {
    let mut current = group.clone();
    let mut order = stabilizer_chain(&current, &[]).unwrap().order();
    loop {
        if order.is_one() {
            return true;
        }
        let next = derived_subgroup(&current);
        let next_order = stabilizer_chain(&next, &[]).unwrap().order();
        if next_order == order {
            return false;
        }
        current = next;
        order = next_order;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn symmetric_four() {
        let s4 = PermGroup::symmetric(4);
        let chain = stabilizer_chain(&s4, &[]).unwrap();
        assert_eq!(group_order(&chain), BigUint::from(24u32));
        assert_eq!(chain.base().len(), 3);
        let four_cycle = Perm::from_cycles(4, &[&[0, 1, 2, 3]]).unwrap();
        assert!(contains(&chain, &four_cycle).unwrap());
    }

    #[test]
    fn alternating_excludes_transpositions() {
        let a4 = PermGroup::new(
            4,
            vec![Perm::from_cycles(4, &[&[0, 1, 2]]).unwrap(), Perm::from_cycles(4, &[&[1, 2, 3]]).unwrap()],
        )
        .unwrap();
        let chain = stabilizer_chain(&a4, &[]).unwrap();
        assert_eq!(chain.order(), BigUint::from(12u32));
        let t = Perm::from_cycles(4, &[&[0, 1]]).unwrap();
        assert!(!contains(&chain, &t).unwrap());
        assert!(contains(&chain, &Perm::identity(3)).is_err());
    }

    #[test]
    fn trivial_group_any_prefix() {
        let g = PermGroup::trivial(5);
        let chain = stabilizer_chain(&g, &[3, 1]).unwrap();
        assert!(chain.order().is_one());
        assert!(chain.transversal_sizes().iter().all(|&s| s == 1));
        assert_eq!(chain.base(), vec![3, 1]);
    }

    #[test]
    fn redundant_prefix_points_are_kept() {
        let s4 = PermGroup::symmetric(4);
        let chain = stabilizer_chain(&s4, &[0, 1, 2, 3, 0]).unwrap();
        assert_eq!(chain.transversal_sizes(), vec![4, 3, 2, 1, 1]);
        assert!(stabilizer_chain(&s4, &[7]).is_err());
    }

    #[test]
    fn pointwise_stabilizers() {
        let s4 = PermGroup::symmetric(4);
        assert!(pointwise_stabilizer(&s4, &[0, 1, 2]).unwrap().is_trivial());
        let s3 = pointwise_stabilizer(&s4, &[0]).unwrap();
        assert_eq!(stabilizer_chain(&s3, &[]).unwrap().order(), BigUint::from(6u32));
        assert!(s3.generators().iter().all(|g| g.fixes(0)));
    }

    #[test]
    fn known_order_short_circuit_agrees() {
        let s5 = PermGroup::symmetric(5);
        let full = StabilizerChain::build(5, s5.generators(), &[2], None);
        let quick = StabilizerChain::build(5, s5.generators(), &[2], Some(120));
        assert_eq!(full.order(), quick.order());
        assert_eq!(quick.transversal_sizes()[0], 5);
    }

    #[test]
    fn solubility() {
        assert!(is_soluble(&PermGroup::symmetric(4)));
        assert!(!is_soluble(&PermGroup::symmetric(5)));
        assert!(!is_soluble(&PermGroup::alternating(5)));
        assert!(is_soluble(&PermGroup::dihedral(7)));
        let d = derived_subgroup(&PermGroup::symmetric(4));
        assert_eq!(stabilizer_chain(&d, &[]).unwrap().order(), BigUint::from(12u32));
    }
}
