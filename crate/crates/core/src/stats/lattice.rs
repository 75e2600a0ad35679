//! Cache of pointwise stabilizers, shared by every search.
//!
//! `G_(D)` depends only on the closure `Fix(G_(D))`, so nodes are keyed by
//! their fixed-point sets and many different point sets share one node.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use hashbrown::HashMap;

use crate::chain::StabilizerChain;
use crate::perm::{Dsu, Perm, PermGroup};

use super::budget::StatsError;

pub(crate) const NONE: u32 = u32::MAX;

pub(crate) struct Node {
    pub(crate) gens: Vec<Perm>,
    pub(crate) order: u128,
    pub(crate) fixed: FixedBitSet,
    /// Smallest point of each point's orbit.
    pub(crate) orbit_of: Vec<u32>,
    pub(crate) orbit_len: Vec<u32>,
    children: Vec<u32>,
}

impl Node {
    fn new(n: usize, gens: Vec<Perm>, order: u128) -> Self {
        let mut dsu = Dsu::new(n);
        for g in &gens {
            for x in 0..n as u32 {
                dsu.union(x, g.apply(x));
            }
        }
        let orbit_of: Vec<u32> = (0..n as u32).map(|x| dsu.find(x)).collect();
        let mut counts = vec![0u32; n];
        for &r in &orbit_of {
            counts[r as usize] += 1;
        }
        let orbit_len = orbit_of.iter().map(|&r| counts[r as usize]).collect();
        let mut fixed = FixedBitSet::with_capacity(n);
        for x in 0..n {
            if counts[x] == 1 && orbit_of[x] == x as u32 {
                fixed.insert(x);
            }
        }
        Node { gens, order, fixed, orbit_of, orbit_len, children: vec![NONE; n] }
    }

    pub(crate) fn is_trivial(&self) -> bool {
        self.order == 1
    }

    /// Smallest point of every non-trivial orbit, ascending.
    pub(crate) fn moved_reps(&self) -> impl Iterator<Item = u32> + '_ {
        self.orbit_of
            .iter()
            .enumerate()
            .filter(|&(x, &r)| r == x as u32 && self.orbit_len[x] > 1)
            .map(|(x, _)| x as u32)
    }
}

pub(crate) struct Lattice {
    n: usize,
    nodes: Vec<Node>,
    by_fix: HashMap<FixedBitSet, u32>,
}

impl Lattice {
    pub(crate) const ROOT: u32 = 0;

    pub(crate) fn new(group: &PermGroup) -> Result<Self, StatsError> {
        let n = group.degree();
        let gens: Vec<Perm> = group.generators().iter().filter(|g| !g.is_identity()).cloned().collect();
        let chain = StabilizerChain::build(n, &gens, &[], None);
        let order = chain.order_u128().ok_or(StatsError::OrderTooLarge)?;
        let root = Node::new(n, gens, order);
        let mut by_fix = HashMap::new();
        by_fix.insert(root.fixed.clone(), 0);
        Ok(Lattice { n, nodes: vec![root], by_fix })
    }

    pub(crate) fn degree(&self) -> usize {
        self.n
    }

    pub(crate) fn node(&self, id: u32) -> &Node {
        &self.nodes[id as usize]
    }

    pub(crate) fn len(&self) -> usize {
        self.nodes.len()
    }

    /// Node of `G_(D ∪ {p})` where `id` is the node of `G_(D)`.
    pub(crate) fn child(&mut self, id: u32, p: u32) -> u32 {
        let node = &self.nodes[id as usize];
        if node.fixed.contains(p as usize) {
            return id;
        }
        let known = node.children[p as usize];
        if known != NONE {
            return known;
        }
        let chain = StabilizerChain::build(self.n, &node.gens, &[p], Some(node.order));
        let order = node.order / node.orbit_len[p as usize] as u128;
        let mut gens: Vec<Perm> = Vec::new();
        if order > 1 {
            for g in chain.stabilizer_generators(1) {
                if !gens.contains(g) {
                    gens.push(g.clone());
                }
            }
        }
        let fresh = Node::new(self.n, gens, order);
        let child = match self.by_fix.get(&fresh.fixed) {
            Some(&existing) => existing,
            None => {
                let new_id = self.nodes.len() as u32;
                self.by_fix.insert(fresh.fixed.clone(), new_id);
                self.nodes.push(fresh);
                new_id
            }
        };
        self.nodes[id as usize].children[p as usize] = child;
        child
    }

    /// Node of the pointwise stabilizer of `points`.
    pub(crate) fn of_set(&mut self, points: impl IntoIterator<Item = u32>) -> u32 {
        points.into_iter().fold(Self::ROOT, |id, p| self.child(id, p))
    }
}
