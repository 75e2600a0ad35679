//! Permutations of `{0, ..., n-1}` acting on the right: `x^(gh) = (x^g)^h`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PermError {
    NotABijection,
    DegreeMismatch { expected: usize, found: usize },
    PointOutOfRange { point: usize, degree: usize },
}

impl fmt::Display for PermError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PermError::NotABijection => write!(f, "image array is not a bijection"),
            PermError::DegreeMismatch { expected, found } => {
                write!(f, "expected degree {expected}, found {found}")
            }
            PermError::PointOutOfRange { point, degree } => {
                write!(f, "point {point} is out of range for degree {degree}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<u32>", into = "Vec<u32>")]
pub struct Perm(Vec<u32>);

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.0).finish()
    }
}

impl TryFrom<Vec<u32>> for Perm {
    type Error = PermError;

    fn try_from(images: Vec<u32>) -> Result<Self, PermError> {
        Perm::from_images(images)
    }
}

impl From<Perm> for Vec<u32> {
    fn from(p: Perm) -> Self {
        p.0
    }
}

impl Perm {
    pub fn identity(n: usize) -> Self {
        Perm((0..n as u32).collect())
    }

    pub fn from_images(images: Vec<u32>) -> Result<Self, PermError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return Err(PermError::NotABijection);
            }
            seen[x] = true;
        }
        Ok(Perm(images))
    }

    /// Permutation with the given disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[&[u32]]) -> Result<Self, PermError> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        for cycle in cycles {
            for (i, &a) in cycle.iter().enumerate() {
                let b = cycle[(i + 1) % cycle.len()];
                if a as usize >= n || b as usize >= n {
                    return Err(PermError::PointOutOfRange { point: a.max(b) as usize, degree: n });
                }
                images[a as usize] = b;
            }
        }
        Perm::from_images(images)
    }

    pub(crate) fn from_images_unchecked(images: Vec<u32>) -> Self {
        debug_assert!(Perm::from_images(images.clone()).is_ok());
        Perm(images)
    }

    #[inline]
    pub fn degree(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        Perm(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u32; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        Perm(inv)
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|&(i, &x)| i as u32 != x).map(|(i, _)| i as u32)
    }

    pub fn fixes(&self, x: u32) -> bool {
        self.apply(x) == x
    }

    /// Sorted cycle lengths, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lens = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.0[x] as usize;
                len += 1;
            }
            lens.push(len);
        }
        lens.sort_unstable();
        lens
    }

    pub fn is_even(&self) -> bool {
        let transpositions: usize = self.cycle_type().iter().map(|l| l - 1).sum();
        transpositions.is_multiple_of(2)
    }
}

/// A permutation group given by generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Perm>,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Perm>) -> Result<Self, PermError> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(PermError::DegreeMismatch { expected: degree, found: g.degree() });
        }
        Ok(PermGroup { degree, generators })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new() }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.generators.iter().all(Perm::is_identity)
    }

    pub fn check_point(&self, point: usize) -> Result<(), PermError> {
        if point >= self.degree {
            return Err(PermError::PointOutOfRange { point, degree: self.degree });
        }
        Ok(())
    }

    /// Natural action of `S_n` (transposition and `n`-cycle).
    pub fn symmetric(n: usize) -> Self {
        let mut gens = Vec::new();
        if n >= 2 {
            gens.push(Perm::from_cycles(n, &[&[0, 1]]).unwrap());
        }
        if n >= 3 {
            gens.push(Perm((1..n as u32).chain([0]).collect()));
        }
        PermGroup { degree: n, generators: gens }
    }

    /// Natural action of `A_n` (the 3-cycles `(0 1 i)`).
    pub fn alternating(n: usize) -> Self {
        let gens = (2..n as u32).map(|i| Perm::from_cycles(n, &[&[0, 1, i]]).unwrap()).collect();
        PermGroup { degree: n, generators: gens }
    }

    pub fn cyclic(n: usize) -> Self {
        let gens = if n >= 2 { vec![Perm((1..n as u32).chain([0]).collect())] } else { Vec::new() };
        PermGroup { degree: n, generators: gens }
    }

    /// Dihedral group of order `2n` on the vertices of an `n`-gon.
    pub fn dihedral(n: usize) -> Self {
        let mut g = Self::cyclic(n);
        if n >= 3 {
            g.generators.push(Perm((0..n as u32).map(|i| (n as u32 - i) % n as u32).collect()));
        }
        g
    }

    /// Orbit representatives: for each point, the smallest point of its orbit.
    pub fn orbit_reps(&self) -> Vec<u32> {
        orbit_reps(self.degree, &self.generators)
    }

    pub fn is_transitive(&self) -> bool {
        self.degree <= 1 || self.orbit_reps().iter().all(|&r| r == 0)
    }

    /// Transitive with no block system other than the trivial ones.
    pub fn is_primitive(&self) -> bool {
        if !self.is_transitive() {
            return false;
        }
        (1..self.degree as u32).all(|x| minimal_block(self.degree, &self.generators, 0, x) == self.degree)
    }
}

/// Union–find over points.
pub(crate) struct Dsu {
    parent: Vec<u32>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu { parent: (0..n as u32).collect() }
    }

    pub(crate) fn find(&mut self, x: u32) -> u32 {
        let mut root = x;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = x;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    /// Returns false if already joined. The smaller root wins.
    pub(crate) fn union(&mut self, a: u32, b: u32) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi as usize] = lo;
        true
    }
}

pub(crate) fn orbit_reps(n: usize, gens: &[Perm]) -> Vec<u32> {
    let mut dsu = Dsu::new(n);
    for g in gens {
        for x in 0..n as u32 {
            dsu.union(x, g.apply(x));
        }
    }
    (0..n as u32).map(|x| dsu.find(x)).collect()
}

/// Size of the smallest block containing `a` and `b`.
fn minimal_block(n: usize, gens: &[Perm], a: u32, b: u32) -> usize {
    let mut dsu = Dsu::new(n);
    let mut queue = vec![(a, b)];
    dsu.union(a, b);
    while let Some((x, y)) = queue.pop() {
        for g in gens {
            let (gx, gy) = (g.apply(x), g.apply(y));
            if dsu.union(gx, gy) {
                queue.push((gx, gy));
            }
        }
    }
    let root = dsu.find(a);
    (0..n as u32).filter(|&x| dsu.find(x) == root).count()
}

/// An orbit with a Schreier vector for recovering transversal elements.
#[derive(Debug, Clone)]
pub struct Orbit {
    seed: u32,
    points: Vec<u32>,
    // For each point in the orbit: (predecessor, generator index); None for the seed and non-orbit points.
    schreier: Vec<Option<(u32, u32)>>,
    in_orbit: Vec<bool>,
}

impl Orbit {
    pub fn seed(&self) -> u32 {
        self.seed
    }

    pub fn points(&self) -> &[u32] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn contains(&self, x: u32) -> bool {
        self.in_orbit.get(x as usize).copied().unwrap_or(false)
    }

    /// A group element mapping the seed to `x`.
    pub fn element_to(&self, group: &PermGroup, x: u32) -> Option<Perm> {
        if !self.contains(x) {
            return None;
        }
        let mut word = Vec::new();
        let mut cur = x;
        while let Some((prev, gen)) = self.schreier[cur as usize] {
            word.push(gen);
            cur = prev;
        }
        let mut g = Perm::identity(group.degree());
        for &gen in word.iter().rev() {
            g = g.then(&group.generators()[gen as usize]);
        }
        Some(g)
    }
}

pub fn orbit(group: &PermGroup, point: usize) -> Result<Orbit, PermError> {
    group.check_point(point)?;
    let n = group.degree();
    let seed = point as u32;
    let mut in_orbit = vec![false; n];
    let mut schreier = vec![None; n];
    let mut points = vec![seed];
    in_orbit[point] = true;
    let mut i = 0;
    while i < points.len() {
        let x = points[i];
        for (gi, g) in group.generators().iter().enumerate() {
            let y = g.apply(x);
            if !in_orbit[y as usize] {
                in_orbit[y as usize] = true;
                schreier[y as usize] = Some((x, gi as u32));
                points.push(y);
            }
        }
        i += 1;
    }
    Ok(Orbit { seed, points, schreier, in_orbit })
}
