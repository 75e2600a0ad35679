//! Brute-force ground truth computed from the full element list. No orbit
//! pruning, no stabilizer chains: every quantity is read off the definition.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use irrbase_core::perm::{Perm, PermGroup};

pub struct Elements {
    pub n: usize,
    pub elems: Vec<Perm>,
}

impl Elements {
    /// Closure of the generators; panics past `limit` elements.
    pub fn of(group: &PermGroup, limit: usize) -> Self {
        let n = group.degree();
        let id = Perm::identity(n);
        let mut seen: HashSet<Perm> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in group.generators() {
                let h = g.then(s);
                if seen.insert(h.clone()) {
                    assert!(seen.len() <= limit, "group larger than {limit}");
                    queue.push_back(h);
                }
            }
        }
        let mut elems: Vec<Perm> = seen.into_iter().collect();
        elems.sort();
        Elements { n, elems }
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn stabilizer(&self, points: &[u32]) -> Vec<&Perm> {
        self.elems.iter().filter(|g| points.iter().all(|&p| g.apply(p) == p)).collect()
    }

    fn stab_size(&self, points: &[u32]) -> usize {
        self.stabilizer(points).len()
    }

    fn subsets(&self) -> impl Iterator<Item = Vec<u32>> + '_ {
        (0u32..1 << self.n).map(move |mask| (0..self.n as u32).filter(|&i| mask >> i & 1 == 1).collect())
    }

    pub fn min_base(&self) -> usize {
        self.subsets().filter(|s| self.stab_size(s) == 1).map(|s| s.len()).min().unwrap()
    }

    /// Longest sequence in which every point shrinks the stabilizer.
    pub fn max_irredundant(&self) -> usize {
        fn go(stab: Vec<&Perm>, n: usize) -> usize {
            let mut best = 0;
            for p in 0..n as u32 {
                let next: Vec<&Perm> = stab.iter().copied().filter(|g| g.apply(p) == p).collect();
                if next.len() < stab.len() {
                    best = best.max(1 + go(next, n));
                }
            }
            best
        }
        go(self.elems.iter().collect(), self.n)
    }

    pub fn max_minimal_base(&self) -> usize {
        self.subsets()
            .filter(|s| self.stab_size(s) == 1 && (0..s.len()).all(|i| self.stab_size(&without(s, i)) > 1))
            .map(|s| s.len())
            .max()
            .unwrap()
    }

    pub fn height(&self) -> usize {
        self.subsets()
            .filter(|s| {
                let here = self.stab_size(s);
                (0..s.len()).all(|i| self.stab_size(&without(s, i)) > here)
            })
            .map(|s| s.len())
            .max()
            .unwrap()
    }

    /// Relational complexity from the definition, over all tuples (repeats
    /// allowed) of length at most `max_len`.
    pub fn relational_complexity(&self, group: &PermGroup, max_len: usize) -> usize {
        let orbit_ids: Vec<Vec<u32>> = (0..=max_len).map(|l| tuple_orbits(group, self.n, l)).collect();
        let fails = |k: usize, l: usize| -> bool {
            let subsets = index_subsets(l, k);
            let mut buckets: HashMap<Vec<u32>, u32> = HashMap::new();
            let count = self.n.pow(l as u32);
            for t in 0..count {
                let tuple = decode(t, self.n, l);
                let sig: Vec<u32> =
                    subsets.iter().map(|idx| orbit_ids[k][encode(idx.iter().map(|&i| tuple[i]), self.n)]).collect();
                let own = orbit_ids[l][t];
                if *buckets.entry(sig).or_insert(own) != own {
                    return true;
                }
            }
            false
        };
        (1..=max_len).find(|&k| (k..=max_len).all(|l| !fails(k, l))).unwrap()
    }
}

fn without(s: &[u32], i: usize) -> Vec<u32> {
    s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &x)| x).collect()
}

fn decode(mut t: usize, n: usize, l: usize) -> Vec<u32> {
    let mut out = vec![0; l];
    for slot in out.iter_mut() {
        *slot = (t % n) as u32;
        t /= n;
    }
    out
}

fn encode(points: impl Iterator<Item = u32>, n: usize) -> usize {
    let mut t = 0;
    let mut scale = 1;
    for p in points {
        t += p as usize * scale;
        scale *= n;
    }
    t
}

fn index_subsets(l: usize, k: usize) -> Vec<Vec<usize>> {
    (0u32..1 << l)
        .filter(|m| m.count_ones() as usize == k)
        .map(|m| (0..l).filter(|&i| m >> i & 1 == 1).collect())
        .collect()
}

/// Orbit label of every `l`-tuple under the diagonal action.
fn tuple_orbits(group: &PermGroup, n: usize, l: usize) -> Vec<u32> {
    let count = n.pow(l as u32);
    let mut parent: Vec<u32> = (0..count as u32).collect();
    fn find(parent: &mut [u32], mut x: u32) -> u32 {
        while parent[x as usize] != x {
            parent[x as usize] = parent[parent[x as usize] as usize];
            x = parent[x as usize];
        }
        x
    }
    for g in group.generators() {
        for t in 0..count {
            let image = encode(decode(t, n, l).into_iter().map(|p| g.apply(p)), n);
            let (a, b) = (find(&mut parent, t as u32), find(&mut parent, image as u32));
            if a != b {
                parent[a.max(b) as usize] = a.min(b);
            }
        }
    }
    (0..count as u32).map(|t| find(&mut parent, t)).collect()
}
