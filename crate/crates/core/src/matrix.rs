//! Dense matrices over `F_q`. Vectors are rows and matrices act on the right,
//! so `e_x (I + E_{x,y}) = e_x + e_y`.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::field::{FieldSpec, Fq};

/// Largest supported ambient dimension.
pub const MAX_DIM: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatrixError {
    DimensionMismatch { expected: (usize, usize), found: (usize, usize) },
    Singular,
    DimensionTooSmall(usize),
    DimensionTooLarge(usize),
}

impl fmt::Display for MatrixError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixError::DimensionMismatch { expected, found } => {
                write!(f, "expected a {}x{} matrix, found {}x{}", expected.0, expected.1, found.0, found.1)
            }
            MatrixError::Singular => write!(f, "matrix is singular"),
            MatrixError::DimensionTooSmall(d) => write!(f, "dimension {d} is below the minimum 2"),
            MatrixError::DimensionTooLarge(d) => write!(f, "dimension {d} exceeds the maximum {MAX_DIM}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fq>,
}

impl FqMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        FqMatrix { rows, cols, entries: vec![Fq::ZERO; rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m.set(i, i, Fq::ONE);
        }
        m
    }

    /// Panics if `entries.len() != rows * cols`.
    pub fn from_entries(rows: usize, cols: usize, entries: Vec<Fq>) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count must be rows * cols");
        FqMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: &[Vec<Fq>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let entries: Vec<Fq> = rows.iter().flat_map(|r| r.iter().copied()).collect();
        Self::from_entries(rows.len(), cols, entries)
    }

    /// `I + c E_{x,y}` (0-based indices).
    pub fn elementary(n: usize, x: usize, y: usize, c: Fq, field: &FieldSpec) -> Self {
        let mut m = Self::identity(n);
        let cur = m.get(x, y);
        m.set(x, y, field.add(cur, c));
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn entries(&self) -> &[Fq] {
        &self.entries
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> Fq {
        self.entries[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: Fq) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Fq] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_vectors(&self) -> impl Iterator<Item = &[Fq]> {
        self.entries.chunks(self.cols.max(1)).take(self.rows)
    }

    pub fn mul(&self, other: &FqMatrix, field: &FieldSpec) -> Result<FqMatrix, MatrixError> {
        if self.cols != other.rows {
            return Err(MatrixError::DimensionMismatch {
                expected: (self.cols, other.cols),
                found: (other.rows, other.cols),
            });
        }
        let mut out = FqMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = field.add(out.get(i, j), field.mul(a, other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    /// Row vector times matrix.
    pub fn apply_row(&self, v: &[Fq], field: &FieldSpec) -> Vec<Fq> {
        debug_assert_eq!(v.len(), self.rows);
        let mut out = vec![Fq::ZERO; self.cols];
        for (k, &a) in v.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = field.add(*slot, field.mul(a, self.get(k, j)));
            }
        }
        out
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut t = FqMatrix::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise Frobenius `x -> x^p`.
    pub fn frobenius(&self, field: &FieldSpec) -> FqMatrix {
        FqMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|&x| field.frobenius(x)).collect(),
        }
    }

    /// Reduced row-echelon form (zero rows kept, trailing) and rank.
    pub fn rref(&self, field: &FieldSpec) -> (FqMatrix, usize) {
        let mut m = self.clone();
        let rank = m.rref_in_place(field);
        (m, rank)
    }

    pub(crate) fn rref_in_place(&mut self, field: &FieldSpec) -> usize {
        let mut pivot_row = 0;
        for col in 0..self.cols {
            if pivot_row == self.rows {
                break;
            }
            let Some(found) = (pivot_row..self.rows).find(|&r| !self.get(r, col).is_zero()) else {
                continue;
            };
            self.swap_rows(found, pivot_row);
            let inv = field.inv(self.get(pivot_row, col)).unwrap();
            for j in col..self.cols {
                let v = field.mul(self.get(pivot_row, j), inv);
                self.set(pivot_row, j, v);
            }
            for r in 0..self.rows {
                if r == pivot_row {
                    continue;
                }
                let factor = self.get(r, col);
                if factor.is_zero() {
                    continue;
                }
                for j in col..self.cols {
                    let v = field.sub(self.get(r, j), field.mul(factor, self.get(pivot_row, j)));
                    self.set(r, j, v);
                }
            }
            pivot_row += 1;
        }
        pivot_row
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self, field: &FieldSpec) -> usize {
        self.rref(field).1
    }

    pub fn is_invertible(&self, field: &FieldSpec) -> bool {
        self.rows == self.cols && self.rank(field) == self.rows
    }

    /// Column index of the leading one of each nonzero row.
    pub fn pivots(&self) -> Vec<usize> {
        self.row_vectors().filter_map(|row| row.iter().position(|x| !x.is_zero())).collect()
    }

    /// True if the matrix is in reduced row-echelon form.
    pub fn is_rref(&self) -> bool {
        let mut last: Option<usize> = None;
        let mut seen_zero = false;
        for r in 0..self.rows {
            match self.row(r).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last.is_some_and(|l| c <= l) || self.get(r, c) != Fq::ONE {
                        return false;
                    }
                    if (0..self.rows).any(|o| o != r && !self.get(o, c).is_zero()) {
                        return false;
                    }
                    last = Some(c);
                }
            }
        }
        true
    }

    pub fn inverse(&self, field: &FieldSpec) -> Result<FqMatrix, MatrixError> {
        if self.rows != self.cols {
            return Err(MatrixError::DimensionMismatch {
                expected: (self.rows, self.rows),
                found: (self.rows, self.cols),
            });
        }
        let n = self.rows;
        let mut aug = FqMatrix::zero(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, Fq::ONE);
        }
        aug.rref_in_place(field);
        if (0..n).any(|i| aug.get(i, i) != Fq::ONE) {
            return Err(MatrixError::Singular);
        }
        let mut inv = FqMatrix::zero(n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    /// Solves `x R = v` for a matrix `R` in RREF with full row rank; `None` if `v` is not in the row space.
    pub fn solve_in_rowspace(&self, v: &[Fq], field: &FieldSpec) -> Option<Vec<Fq>> {
        let pivots = self.pivots();
        let coeffs: Vec<Fq> = pivots.iter().map(|&c| v[c]).collect();
        let back = self.apply_row_prefix(&coeffs, field);
        (back == v).then_some(coeffs)
    }

    fn apply_row_prefix(&self, coeffs: &[Fq], field: &FieldSpec) -> Vec<Fq> {
        let mut out = vec![Fq::ZERO; self.cols];
        for (r, &a) in coeffs.iter().enumerate() {
            for (j, slot) in out.iter_mut().enumerate() {
                *slot = field.add(*slot, field.mul(a, self.get(r, j)));
            }
        }
        out
    }
}

/// Generators of `GL_d(q)`: `diag(z, 1, ..., 1)` for a primitive element `z`,
/// the cyclic coordinate shift `e_i -> e_{i+1}` (with `e_d -> -e_1` for even `d`
/// so that it has determinant one), and the transvection `I + E_{2,1}`.
pub fn gl_generators(d: usize, field: &FieldSpec) -> Result<Vec<FqMatrix>, MatrixError> {
    if d < 2 {
        return Err(MatrixError::DimensionTooSmall(d));
    }
    if d > MAX_DIM {
        return Err(MatrixError::DimensionTooLarge(d));
    }
    let mut diag = FqMatrix::identity(d);
    diag.set(0, 0, field.generator());

    let mut shift = FqMatrix::zero(d, d);
    for i in 0..d - 1 {
        shift.set(i, i + 1, Fq::ONE);
    }
    let corner = if d.is_multiple_of(2) { field.neg(Fq::ONE) } else { Fq::ONE };
    shift.set(d - 1, 0, corner);

    let transvection = FqMatrix::elementary(d, 1, 0, Fq::ONE, field);
    let mut gens = vec![diag, shift, transvection];
    // Over F_2 the diagonal generator is the identity.
    gens.retain(|g| *g != FqMatrix::identity(d));
    Ok(gens)
}

/// Generators of `SL_d(q)`: the elementary transvections `I + a E_{i,i+1}` and
/// `I + a E_{i+1,i}` for `a` running over an `F_p`-basis `1, z, ..., z^{f-1}`.
pub fn sl_generators(d: usize, field: &FieldSpec) -> Result<Vec<FqMatrix>, MatrixError> {
    if d < 2 {
        return Err(MatrixError::DimensionTooSmall(d));
    }
    if d > MAX_DIM {
        return Err(MatrixError::DimensionTooLarge(d));
    }
    let z = field.generator();
    let scalars: Vec<Fq> = (0..field.f()).map(|i| field.pow(z, i as u64)).collect();
    let mut gens = Vec::new();
    for i in 0..d - 1 {
        for &a in &scalars {
            gens.push(FqMatrix::elementary(d, i, i + 1, a, field));
            gens.push(FqMatrix::elementary(d, i + 1, i, a, field));
        }
    }
    Ok(gens)
}
