//! Subspaces of `F_q^d` and the permutation actions of `PGL_d(q)` and
//! `PΓL_d(q)` on them and on complementary or nested pairs of them.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::field::{FieldSpec, Fq};
use crate::matrix::{gl_generators, sl_generators, FqMatrix, MatrixError, MAX_DIM};
use crate::perm::{Perm, PermGroup};

/// Default bound on the number of points an action may have.
pub const DEFAULT_ENUMERATION_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ActionError {
    BadSubspaceDimension { d: usize, m: usize },
    BadPairParameters { d: usize, m: usize },
    CapExceeded { count: BigUint, cap: u64 },
    Matrix(MatrixError),
    NotPrimePower(u64),
}

impl fmt::Display for ActionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ActionError::BadSubspaceDimension { d, m } => {
                write!(f, "subspace dimension m = {m} must satisfy 1 <= m <= d - 1 (d = {d})")
            }
            ActionError::BadPairParameters { d, m } => {
                write!(f, "pair actions need d >= 3 and 1 <= m < d/2 (d = {d}, m = {m})")
            }
            ActionError::CapExceeded { count, cap } => {
                write!(f, "{count} points exceed the enumeration cap {cap}")
            }
            ActionError::Matrix(e) => write!(f, "{e}"),
            ActionError::NotPrimePower(q) => write!(f, "{q} is not a prime power"),
        }
    }
}

impl From<MatrixError> for ActionError {
    fn from(e: MatrixError) -> Self {
        ActionError::Matrix(e)
    }
}

/// Number of `m`-dimensional subspaces of `F_q^d`.
pub fn gaussian_binomial(d: u32, m: u32, q: u64) -> Result<BigUint, ActionError> {
    if m > d {
        return Err(ActionError::BadSubspaceDimension { d: d as usize, m: m as usize });
    }
    if crate::field::prime_power(q).is_none() {
        return Err(ActionError::NotPrimePower(q));
    }
    let qb = BigUint::from(q);
    let (mut num, mut den) = (BigUint::one(), BigUint::one());
    for i in 0..m {
        num *= qb.pow(d - i) - 1u32;
        den *= qb.pow(i + 1) - 1u32;
    }
    Ok(num / den)
}

/// An `m`-dimensional subspace of `F_q^d`, stored by its RREF basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subspace {
    basis: FqMatrix,
}

impl Subspace {
    /// Span of the given vectors (which need not be independent).
    pub fn span(vectors: &[Vec<Fq>], d: usize, field: &FieldSpec) -> Self {
        let rows: Vec<Vec<Fq>> = if vectors.is_empty() { vec![vec![Fq::ZERO; d]] } else { vectors.to_vec() };
        Self::from_matrix(&FqMatrix::from_rows(&rows), field)
    }

    pub fn from_matrix(m: &FqMatrix, field: &FieldSpec) -> Self {
        let (r, rank) = m.rref(field);
        let entries = r.entries()[..rank * r.cols()].to_vec();
        Subspace { basis: FqMatrix::from_entries(rank, r.cols(), entries) }
    }

    /// `<e_i : i in indices>` (0-based).
    pub fn coordinate(d: usize, indices: &[usize], field: &FieldSpec) -> Self {
        let vectors: Vec<Vec<Fq>> = indices
            .iter()
            .map(|&i| {
                let mut v = vec![Fq::ZERO; d];
                v[i] = Fq::ONE;
                v
            })
            .collect();
        Self::span(&vectors, d, field)
    }

    pub fn basis(&self) -> &FqMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn ambient_dim(&self) -> usize {
        self.basis.cols()
    }

    pub fn contains(&self, v: &[Fq], field: &FieldSpec) -> bool {
        self.dim() == 0 && v.iter().all(|x| x.is_zero()) || self.basis.solve_in_rowspace(v, field).is_some()
    }

    pub fn is_subspace_of(&self, other: &Subspace, field: &FieldSpec) -> bool {
        self.basis.row_vectors().all(|v| other.contains(v, field))
    }

    pub fn join(&self, other: &Subspace, field: &FieldSpec) -> Subspace {
        let rows: Vec<Vec<Fq>> =
            self.basis.row_vectors().chain(other.basis.row_vectors()).map(<[Fq]>::to_vec).collect();
        Subspace::span(&rows, self.ambient_dim(), field)
    }

    /// Annihilator under the standard dot product.
    pub fn perp(&self, field: &FieldSpec) -> Subspace {
        let d = self.ambient_dim();
        let pivots = self.basis.pivots();
        let free: Vec<usize> = (0..d).filter(|c| !pivots.contains(c)).collect();
        // Null space of basis^T: one vector per free column.
        let vectors: Vec<Vec<Fq>> = free
            .iter()
            .map(|&fc| {
                let mut v = vec![Fq::ZERO; d];
                v[fc] = Fq::ONE;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = field.neg(self.basis.get(r, fc));
                }
                v
            })
            .collect();
        if vectors.is_empty() {
            return Subspace { basis: FqMatrix::zero(0, d) };
        }
        Subspace::span(&vectors, d, field)
    }

    /// Lexicographic comparison of RREF bases, entries ordered as coefficient vectors.
    pub fn lex_cmp(&self, other: &Subspace, field: &FieldSpec) -> Ordering {
        let a = self.basis.entries().iter().map(|&x| field.lex_rank(x));
        let b = other.basis.entries().iter().map(|&x| field.lex_rank(x));
        self.dim().cmp(&other.dim()).then_with(|| a.cmp(b))
    }

    fn image_unchecked(&self, g: &FqMatrix, field: &FieldSpec) -> Subspace {
        Subspace::from_matrix(&self.basis.mul(g, field).expect("dimensions checked"), field)
    }
}

/// A linear or semilinear map applied to subspaces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Transform {
    Matrix(FqMatrix),
    Frobenius,
}

/// Image of `u` under an invertible matrix or the Frobenius map.
pub fn subspace_image(u: &Subspace, g: &Transform, field: &FieldSpec) -> Result<Subspace, ActionError> {
    match g {
        Transform::Matrix(g) => {
            let d = u.ambient_dim();
            if g.rows() != d || g.cols() != d {
                return Err(MatrixError::DimensionMismatch { expected: (d, d), found: (g.rows(), g.cols()) }.into());
            }
            if !g.is_invertible(field) {
                return Err(MatrixError::Singular.into());
            }
            Ok(u.image_unchecked(g, field))
        }
        Transform::Frobenius => Ok(Subspace::from_matrix(&u.basis.frobenius(field), field)),
    }
}

/// Every `m`-subspace of `F_q^d` in lexicographic order of RREF bases.
pub fn enumerate_subspaces(d: usize, m: usize, field: &FieldSpec, cap: u64) -> Result<Vec<Subspace>, ActionError> {
    if m == 0 || m >= d {
        return Err(ActionError::BadSubspaceDimension { d, m });
    }
    enumerate_any(d, m, field, cap)
}

fn enumerate_any(d: usize, m: usize, field: &FieldSpec, cap: u64) -> Result<Vec<Subspace>, ActionError> {
    if d > MAX_DIM {
        return Err(MatrixError::DimensionTooLarge(d).into());
    }
    let count = gaussian_binomial(d as u32, m as u32, field.q() as u64)?;
    if count > BigUint::from(cap) {
        return Err(ActionError::CapExceeded { count, cap });
    }
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    let q = field.q() as usize;
    for pivots in combinations(d, m) {
        let free: Vec<(usize, usize)> =
            (0..m).flat_map(|r| ((pivots[r] + 1)..d).filter(|c| !pivots.contains(c)).map(move |c| (r, c))).collect();
        let mut digits = vec![0usize; free.len()];
        loop {
            let mut basis = FqMatrix::zero(m, d);
            for (r, &c) in pivots.iter().enumerate() {
                basis.set(r, c, Fq::ONE);
            }
            for (&(r, c), &v) in free.iter().zip(&digits) {
                basis.set(r, c, Fq(v as u8));
            }
            out.push(Subspace { basis });
            // Odometer over the free entries.
            let mut k = 0;
            while k < digits.len() {
                digits[k] += 1;
                if digits[k] < q {
                    break;
                }
                digits[k] = 0;
                k += 1;
            }
            if k == digits.len() {
                break;
            }
        }
    }
    out.sort_by(|a, b| a.lex_cmp(b, field));
    Ok(out)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            return out;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum LinearKind {
    Pgl,
    Pgammal,
    Psl,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairKind {
    DirectSum,
    Contained,
}

/// An unordered pair `{U, W}` with `dim U = m < d - m = dim W`, stored small first.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PairPoint {
    pub small: Subspace,
    pub big: Subspace,
    pub kind: PairKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeneratorLabel {
    Matrix(FqMatrix),
    Frobenius,
    /// `U -> U^perp` on pairs (the inverse-transpose graph automorphism).
    Duality,
}

#[derive(Debug, Clone)]
pub enum Points {
    Subspaces(Vec<Subspace>),
    Pairs(Vec<PairPoint>),
}

/// A permutation action on subspaces or subspace pairs.
#[derive(Debug, Clone)]
pub struct ActionTable {
    field: Arc<FieldSpec>,
    d: usize,
    m: usize,
    points: Points,
    generators: Vec<Perm>,
    labels: Vec<GeneratorLabel>,
}

impl ActionTable {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn shared_field(&self) -> Arc<FieldSpec> {
        self.field.clone()
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn degree(&self) -> usize {
        match &self.points {
            Points::Subspaces(v) => v.len(),
            Points::Pairs(v) => v.len(),
        }
    }

    pub fn points(&self) -> &Points {
        &self.points
    }

    pub fn subspaces(&self) -> Option<&[Subspace]> {
        match &self.points {
            Points::Subspaces(v) => Some(v),
            Points::Pairs(_) => None,
        }
    }

    pub fn generators(&self) -> &[Perm] {
        &self.generators
    }

    pub fn labels(&self) -> &[GeneratorLabel] {
        &self.labels
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree(), self.generators.clone()).expect("generators share the table degree")
    }

    /// Index of a subspace point.
    pub fn index_of(&self, u: &Subspace) -> Option<usize> {
        let pts = self.subspaces()?;
        pts.binary_search_by(|p| p.lex_cmp(u, &self.field)).ok()
    }

    pub fn index_of_pair(&self, small: &Subspace, big: &Subspace) -> Option<usize> {
        let Points::Pairs(pairs) = &self.points else {
            return None;
        };
        pairs
            .binary_search_by(|p| p.small.lex_cmp(small, &self.field).then_with(|| p.big.lex_cmp(big, &self.field)))
            .ok()
    }
}

fn subspace_perm(points: &[Subspace], field: &FieldSpec, map: impl Fn(&Subspace) -> Subspace) -> Perm {
    let images = points
        .iter()
        .map(|u| {
            let v = map(u);
            points.binary_search_by(|p| p.lex_cmp(&v, field)).expect("image is a point") as u32
        })
        .collect();
    Perm::from_images_unchecked(images)
}

fn linear_generators(kind: LinearKind, d: usize, field: &FieldSpec) -> Result<Vec<GeneratorLabel>, ActionError> {
    let mats = match kind {
        LinearKind::Psl => sl_generators(d, field)?,
        LinearKind::Pgl | LinearKind::Pgammal => gl_generators(d, field)?,
    };
    let mut labels: Vec<GeneratorLabel> = mats.into_iter().map(GeneratorLabel::Matrix).collect();
    if kind == LinearKind::Pgammal && field.f() > 1 {
        labels.push(GeneratorLabel::Frobenius);
    }
    Ok(labels)
}

fn transform(label: &GeneratorLabel, u: &Subspace, field: &FieldSpec) -> Subspace {
    match label {
        GeneratorLabel::Matrix(g) => u.image_unchecked(g, field),
        GeneratorLabel::Frobenius => Subspace::from_matrix(&u.basis.frobenius(field), field),
        GeneratorLabel::Duality => u.perp(field),
    }
}

/// `PGL_d(q)`, `PΓL_d(q)` or `PSL_d(q)` acting on `m`-subspaces.
pub fn build_action(
    kind: LinearKind,
    d: usize,
    m: usize,
    field: Arc<FieldSpec>,
    cap: u64,
) -> Result<ActionTable, ActionError> {
    let points = enumerate_subspaces(d, m, &field, cap)?;
    let labels = linear_generators(kind, d, &field)?;
    let generators = labels.iter().map(|l| subspace_perm(&points, &field, |u| transform(l, u, &field))).collect();
    Ok(ActionTable { field, d, m, points: Points::Subspaces(points), generators, labels })
}

/// The same group acting on pairs `{U, W}` with `U ⊕ W = V` or `U <= W`;
/// `with_duality` adds the graph automorphism swapping the two components.
pub fn build_pair_action(
    pair: PairKind,
    kind: LinearKind,
    d: usize,
    m: usize,
    field: Arc<FieldSpec>,
    with_duality: bool,
    cap: u64,
) -> Result<ActionTable, ActionError> {
    if d < 3 || m == 0 || 2 * m >= d {
        return Err(ActionError::BadPairParameters { d, m });
    }
    let small = enumerate_subspaces(d, m, &field, cap)?;
    let big = enumerate_subspaces(d, d - m, &field, cap)?;
    let mut pairs = Vec::new();
    for u in &small {
        for w in &big {
            let ok = match pair {
                PairKind::Contained => u.is_subspace_of(w, &field),
                PairKind::DirectSum => u.join(w, &field).dim() == d,
            };
            if ok {
                pairs.push(PairPoint { small: u.clone(), big: w.clone(), kind: pair });
            }
            if pairs.len() as u64 > cap {
                return Err(ActionError::CapExceeded { count: BigUint::from(pairs.len()), cap });
            }
        }
    }
    // Partner count is constant over U by transitivity.
    let partners = |u: &Subspace| pairs.iter().filter(|p| &p.small == u).count();
    let per_u = partners(&small[0]);
    debug_assert!(small.iter().all(|u| partners(u) == per_u));
    assert_eq!(pairs.len(), small.len() * per_u);

    let mut labels = linear_generators(kind, d, &field)?;
    if with_duality {
        labels.push(GeneratorLabel::Duality);
    }
    let cmp =
        |a: &PairPoint, s: &Subspace, b: &Subspace| a.small.lex_cmp(s, &field).then_with(|| a.big.lex_cmp(b, &field));
    let generators = labels
        .iter()
        .map(|l| {
            let images = pairs
                .iter()
                .map(|p| {
                    let (s, b) = match l {
                        GeneratorLabel::Duality => (p.big.perp(&field), p.small.perp(&field)),
                        _ => (transform(l, &p.small, &field), transform(l, &p.big, &field)),
                    };
                    pairs.binary_search_by(|x| cmp(x, &s, &b)).expect("image is a pair") as u32
                })
                .collect();
            Perm::from_images_unchecked(images)
        })
        .collect();
    Ok(ActionTable { field, d, m, points: Points::Pairs(pairs), generators, labels })
}

/// Count of `m`-subspaces via enumeration with no dimension restriction; used in tests.
#[doc(hidden)]
pub fn enumerate_all_dims(d: usize, m: usize, field: &FieldSpec) -> Result<Vec<Subspace>, ActionError> {
    enumerate_any(d, m, field, DEFAULT_ENUMERATION_CAP)
}
