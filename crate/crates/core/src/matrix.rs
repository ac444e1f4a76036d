//! Dense matrices over a [`Field`] with exact Gaussian elimination.
//!
//! Sizes in this crate stay small (at most a few hundred rows by a few dozen
//! or a few hundred columns), so everything is a plain row-major `Vec`.

use std::fmt;

use crate::error::LinalgError;
use crate::field::{Field, FieldElement};

/// A coordinate vector. All entries share one field.
pub type Vector = Vec<FieldElement>;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<FieldElement>,
}

/// Reduced row-echelon form together with its pivot columns.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: Matrix,
    pub pivots: Vec<usize>,
}

fn check_field(field: Field, e: &FieldElement) -> Result<(), LinalgError> {
    if e.field() != field {
        return Err(LinalgError::IncompatibleField {
            left: field,
            right: e.field(),
        });
    }
    Ok(())
}

impl Matrix {
    pub fn new(field: Field, rows: usize, cols: usize, data: Vec<FieldElement>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for e in &data {
            check_field(field, e)?;
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    pub fn zeros(field: Field, rows: usize, cols: usize) -> Self {
        Matrix {
            field,
            rows,
            cols,
            data: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Self {
        Self::from_fn(field, n, n, |i, j| if i == j { field.one() } else { field.zero() })
    }

    pub fn from_fn(field: Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> FieldElement) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let e = f(i, j);
                debug_assert_eq!(e.field(), field);
                data.push(e);
            }
        }
        Matrix {
            field,
            rows,
            cols,
            data,
        }
    }

    /// Builds a matrix from rows of integers, the usual way to write fixtures.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged integer rows");
        Self::from_fn(field, r, c, |i, j| field.from_i64(rows[i][j]))
    }

    pub fn from_rows(field: Field, rows: Vec<Vector>) -> Result<Self, LinalgError> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(LinalgError::DimensionMismatch("ragged rows".into()));
        }
        Self::new(field, r, c, rows.into_iter().flatten().collect())
    }

    /// The matrix whose columns are the given vectors of length `len`.
    pub fn from_columns(field: Field, len: usize, cols: &[Vector]) -> Result<Self, LinalgError> {
        if cols.iter().any(|c| c.len() != len) {
            return Err(LinalgError::DimensionMismatch("column length".into()));
        }
        for c in cols {
            for e in c {
                check_field(field, e)?;
            }
        }
        Ok(Self::from_fn(field, len, cols.len(), |i, j| cols[j][i].clone()))
    }

    /// Reshapes a row-major vector of length `rows * cols`.
    pub fn from_vector(field: Field, rows: usize, cols: usize, v: &[FieldElement]) -> Result<Self, LinalgError> {
        Self::new(field, rows, cols, v.to_vec())
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElement {
        &self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[FieldElement] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    /// Row-major entries.
    pub fn as_slice(&self) -> &[FieldElement] {
        &self.data
    }

    /// Row-major flattening, the coordinates used for subspaces of M_n.
    pub fn to_vector(&self) -> Vector {
        self.data.clone()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(FieldElement::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_fn(self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_field(&self, other: &Matrix) -> Result<(), LinalgError> {
        if self.field != other.field {
            return Err(LinalgError::IncompatibleField {
                left: self.field,
                right: other.field,
            });
        }
        Ok(())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut data = vec![self.field.zero(); self.rows * other.cols];
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let slot = &mut data[i * other.cols + j];
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    pub fn mul_vec(&self, v: &[FieldElement]) -> Result<Vector, LinalgError> {
        if v.len() != self.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = vec![self.field.zero(); self.rows];
        for (i, slot) in out.iter_mut().enumerate() {
            for (a, b) in self.row(i).iter().zip(v) {
                if !a.is_zero() && !b.is_zero() {
                    *slot = &*slot + &(a * b);
                }
            }
        }
        Ok(out)
    }

    fn zip_with(
        &self,
        other: &Matrix,
        f: impl Fn(&FieldElement, &FieldElement) -> FieldElement,
    ) -> Result<Matrix, LinalgError> {
        self.same_field(other)?;
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinalgError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix, LinalgError> {
        self.zip_with(other, |a, b| a - b)
    }

    pub fn scale(&self, c: &FieldElement) -> Matrix {
        Matrix {
            field: self.field,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|e| e * c).collect(),
        }
    }

    /// `self * other == other * self`, false on any size mismatch.
    pub fn commutes_with(&self, other: &Matrix) -> bool {
        match (self.mul(other), other.mul(self)) {
            (Ok(a), Ok(b)) => a == b,
            _ => false,
        }
    }

    /// Stacks matrices vertically; all must share the column count.
    pub fn vstack(field: Field, cols: usize, parts: &[Matrix]) -> Result<Matrix, LinalgError> {
        let mut data = Vec::new();
        let mut rows = 0;
        for p in parts {
            if p.field != field {
                return Err(LinalgError::IncompatibleField {
                    left: field,
                    right: p.field,
                });
            }
            if p.cols != cols {
                return Err(LinalgError::DimensionMismatch("vstack column count".into()));
            }
            rows += p.rows;
            data.extend(p.data.iter().cloned());
        }
        Ok(Matrix {
            field,
            rows,
            cols,
            data,
        })
    }

    /// Copies `block` into a zero-padded copy of `self` at `(r0, c0)`.
    pub fn with_block(&self, r0: usize, c0: usize, block: &Matrix) -> Result<Matrix, LinalgError> {
        self.same_field(block)?;
        if r0 + block.rows > self.rows || c0 + block.cols > self.cols {
            return Err(LinalgError::DimensionMismatch("block does not fit".into()));
        }
        let mut out = self.clone();
        for i in 0..block.rows {
            for j in 0..block.cols {
                out.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j).clone();
            }
        }
        Ok(out)
    }

    /// The `rows x cols` sub-block starting at `(r0, c0)`.
    pub fn block(&self, r0: usize, c0: usize, rows: usize, cols: usize) -> Matrix {
        Self::from_fn(self.field, rows, cols, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let pivots = rref_in_place(&mut m);
        Rref { matrix: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the right nullspace, one vector per free column. The basis
    /// vector for free column `f` has a 1 in position `f` and zeros in the
    /// other free positions.
    pub fn kernel_basis(&self) -> Vec<Vector> {
        let Rref { matrix, pivots } = self.rref();
        kernel_from_rref(&matrix, &pivots)
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Matrix::from_fn(self.field, n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                self.field.one()
            } else {
                self.field.zero()
            }
        });
        let pivots = rref_in_place(&mut aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        Some(aug.block(0, n, n, n))
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

fn rref_in_place(m: &mut Matrix) -> Vec<usize> {
    let (rows, cols) = (m.rows, m.cols);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // Smallest-height nonzero entry keeps rational growth down.
        let pick = (r..rows)
            .filter(|&i| !m.data[i * cols + c].is_zero())
            .min_by_key(|&i| m.data[i * cols + c].height());
        let Some(p) = pick else { continue };
        if p != r {
            for j in 0..cols {
                m.data.swap(p * cols + j, r * cols + j);
            }
        }
        let inv = m.data[r * cols + c].inv().expect("pivot is nonzero");
        for j in c..cols {
            let e = &m.data[r * cols + j] * &inv;
            m.data[r * cols + j] = e;
        }
        let pivot_row: Vec<FieldElement> = m.data[r * cols..(r + 1) * cols].to_vec();
        for i in 0..rows {
            if i == r {
                continue;
            }
            let factor = m.data[i * cols + c].clone();
            if factor.is_zero() {
                continue;
            }
            for (j, pv) in pivot_row.iter().enumerate().skip(c) {
                if pv.is_zero() {
                    continue;
                }
                let e = &m.data[i * cols + j] - &(&factor * pv);
                m.data[i * cols + j] = e;
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

fn kernel_from_rref(m: &Matrix, pivots: &[usize]) -> Vec<Vector> {
    let field = m.field;
    let free: Vec<usize> = (0..m.cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&f| {
            let mut v = vec![field.zero(); m.cols];
            v[f] = field.one();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = -m.get(r, f);
            }
            v
        })
        .collect()
}

/// Kernel of the system whose rows are `rows`, each of length `cols`.
/// An empty system yields the standard basis of the full space.
pub fn solve_homogeneous(field: Field, cols: usize, rows: &[Vector]) -> Result<Vec<Vector>, LinalgError> {
    if rows.iter().any(|r| r.len() != cols) {
        return Err(LinalgError::DimensionMismatch(format!(
            "constraint rows must have {cols} entries"
        )));
    }
    let m = Matrix::new(field, rows.len(), cols, rows.iter().flatten().cloned().collect())?;
    Ok(m.kernel_basis())
}

/// A linear subspace of `field^ambient`, stored as an RREF basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subspace {
    field: Field,
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            field,
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Self::span(field, ambient, &Matrix::identity(field, ambient).columns())
            .expect("identity columns are well formed")
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vector]) -> Result<Self, LinalgError> {
        let mut s = Self::zero(field, ambient);
        for v in vectors {
            s.insert(v)?;
        }
        Ok(s)
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Echelon basis vectors.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its echelon reduction against this subspace. Zero iff `v`
    /// lies in the subspace; entries at pivot positions are always zero.
    pub fn reduce(&self, v: &[FieldElement]) -> Vector {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if w[p].is_zero() {
                continue;
            }
            let f = w[p].clone();
            for (slot, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *slot = &*slot - &(&f * r);
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[FieldElement]) -> bool {
        self.reduce(v).iter().all(FieldElement::is_zero)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|v| self.contains(v))
    }

    /// Adds `v`; returns whether the dimension grew.
    pub fn insert(&mut self, v: &[FieldElement]) -> Result<bool, LinalgError> {
        if v.len() != self.ambient {
            return Err(LinalgError::DimensionMismatch(format!(
                "vector of length {} in ambient dimension {}",
                v.len(),
                self.ambient
            )));
        }
        for e in v {
            check_field(self.field, e)?;
        }
        let mut w = self.reduce(v);
        let Some(p) = w.iter().position(|e| !e.is_zero()) else {
            return Ok(false);
        };
        let inv = w[p].inv().expect("nonzero");
        for e in w.iter_mut() {
            *e = &*e * &inv;
        }
        // Keep the basis fully reduced.
        for row in self.rows.iter_mut() {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (slot, x) in row.iter_mut().zip(&w) {
                if !x.is_zero() {
                    *slot = &*slot - &(&f * x);
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, w);
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        let mut s = self.clone();
        for v in &other.rows {
            s.insert(v)?;
        }
        Ok(s)
    }

    /// Exact intersection via the kernel of `[U | -W]`.
    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinalgError> {
        if self.ambient != other.ambient || self.field != other.field {
            return Err(LinalgError::DimensionMismatch("subspaces of different spaces".into()));
        }
        let (du, dw) = (self.dim(), other.dim());
        let m = Matrix::from_fn(self.field, self.ambient, du + dw, |i, j| {
            if j < du {
                self.rows[j][i].clone()
            } else {
                -&other.rows[j - du][i]
            }
        });
        let mut out = Subspace::zero(self.field, self.ambient);
        for k in m.kernel_basis() {
            let mut v = vec![self.field.zero(); self.ambient];
            for (j, c) in k.iter().take(du).enumerate() {
                if c.is_zero() {
                    continue;
                }
                for (slot, u) in v.iter_mut().zip(&self.rows[j]) {
                    *slot = &*slot + &(c * u);
                }
            }
            out.insert(&v)?;
        }
        Ok(out)
    }

    /// Standard basis vectors completing this subspace to the full space,
    /// indexed by the non-pivot coordinates.
    pub fn complement_coordinates(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }
}

/// Rank of a list of vectors of a common length.
pub fn rank_of(field: Field, ambient: usize, vectors: &[Vector]) -> Result<usize, LinalgError> {
    Ok(Subspace::span(field, ambient, vectors)?.dim())
}

/// `Σ c_i M_i` for coefficients `c` and same-shape matrices `mats`.
pub fn linear_combination(field: Field, coeffs: &[FieldElement], mats: &[Matrix]) -> Result<Matrix, LinalgError> {
    let (r, c) = mats
        .first()
        .map(|m| (m.rows, m.cols))
        .ok_or_else(|| LinalgError::DimensionMismatch("empty combination".into()))?;
    let mut acc = Matrix::zeros(field, r, c);
    for (k, m) in coeffs.iter().zip(mats) {
        if k.is_zero() {
            continue;
        }
        acc = acc.add(&m.scale(k))?;
    }
    Ok(acc)
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cells: Vec<String> = self.data.iter().map(|e| e.to_string()).collect();
        let width = cells.iter().map(String::len).max().unwrap_or(1);
        for i in 0..self.rows {
            write!(f, "[")?;
            for j in 0..self.cols {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{:>width$}", cells[i * self.cols + j])?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}
