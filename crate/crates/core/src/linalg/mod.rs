//! Exact dense linear algebra over a runtime [`Field`].
//!
//! Tensor convention, used everywhere in the crate: for spaces of dimensions
//! `m` and `n`, the basis vector `e_i ⊗ e_j` of the tensor product has index
//! `i·n + j` (row-major on the factors). [`kronecker`] and [`swap_matrix`]
//! follow it.

mod rref;
mod subspace;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};

pub use rref::Echelon;
pub use subspace::{subspace_ops, SubspaceOp, SubspaceOpResult, Subspace};

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<Elem>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| self.field.format(e)).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Matrix {
    pub fn zeros(field: &Field, rows: usize, cols: usize) -> Self {
        Matrix { field: field.clone(), rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = field.one();
        }
        m
    }

    pub fn from_rows(field: &Field, rows: Vec<Vec<Elem>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows_with_cols(field, rows, cols)
    }

    /// Like [`from_rows`](Self::from_rows) but fixes the column count, so an
    /// empty row list still has a definite shape.
    pub fn from_rows_with_cols(field: &Field, rows: Vec<Vec<Elem>>, cols: usize) -> Result<Self> {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::ShapeMismatch(format!(
                    "ragged rows: expected {cols} entries, found {}",
                    row.len()
                )));
            }
            data.extend(row);
        }
        Ok(Matrix { field: field.clone(), rows: r, cols, data })
    }

    pub fn from_i64(field: &Field, rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let data = rows
            .iter()
            .flat_map(|r| {
                assert_eq!(r.len(), cols, "ragged rows");
                r.iter().map(|&v| field.from_i64(v))
            })
            .collect();
        Matrix { field: field.clone(), rows: rows.len(), cols, data }
    }

    pub fn from_fn(field: &Field, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { field: field.clone(), rows, cols, data }
    }

    /// `n × 1` matrix.
    pub fn column(field: &Field, v: Vec<Elem>) -> Self {
        Matrix { field: field.clone(), rows: v.len(), cols: 1, data: v }
    }

    /// `1 × n` matrix.
    pub fn row_vector(field: &Field, v: Vec<Elem>) -> Self {
        Matrix { field: field.clone(), rows: 1, cols: v.len(), data: v }
    }

    /// Matrix whose columns are the given vectors (each of length `rows`).
    pub fn from_columns(field: &Field, rows: usize, cols: &[Vec<Elem>]) -> Self {
        let mut m = Self::zeros(field, rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length");
            for (i, v) in c.iter().enumerate() {
                m.data[i * cols.len() + j] = v.clone();
            }
        }
        m
    }

    /// `n × n` matrix with the standard basis vectors `e_{cols[j]}` as columns.
    pub fn selection(field: &Field, n: usize, cols: &[usize]) -> Self {
        let mut m = Self::zeros(field, n, cols.len());
        for (j, &i) in cols.iter().enumerate() {
            m.set(i, j, field.one());
        }
        m
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn entries(&self) -> &[Elem] {
        &self.data
    }

    pub fn get(&self, i: usize, j: usize) -> &Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Elem] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vec(&self, i: usize) -> Vec<Elem> {
        self.row(i).to_vec()
    }

    pub fn col(&self, j: usize) -> Vec<Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<Elem>> {
        (0..self.rows).map(|i| self.row_vec(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|e| self.field.is_zero(e))
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        self.field.is_one(e)
                    } else {
                        self.field.is_zero(e)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Matrix {
        Matrix::from_fn(&self.field, self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn check_same_field(&self, other: &Matrix) -> Result<()> {
        if self.field != other.field {
            return Err(Error::SpecMismatch(format!("{} vs {}", self.field, other.field)));
        }
        Ok(())
    }

    pub fn checked_mul(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let k = &self.field;
        let mut out = Matrix::zeros(k, self.rows, other.cols);
        for i in 0..self.rows {
            for (l, a) in self.row(i).iter().enumerate() {
                if k.is_zero(a) {
                    continue;
                }
                let orow = other.row(l);
                let base = i * other.cols;
                for (j, b) in orow.iter().enumerate() {
                    if k.is_zero(b) {
                        continue;
                    }
                    let slot = &mut out.data[base + j];
                    *slot = k.add(slot, &k.mul(a, b));
                }
            }
        }
        Ok(out)
    }

    /// Product; panics on shape mismatch (internal use with known shapes).
    pub fn mul(&self, other: &Matrix) -> Matrix {
        self.checked_mul(other).expect("matrix product shapes")
    }

    pub fn mul_vec(&self, v: &[Elem]) -> Vec<Elem> {
        assert_eq!(v.len(), self.cols, "vector length");
        let k = &self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = k.zero();
                for (a, b) in self.row(i).iter().zip(v) {
                    if !k.is_zero(a) && !k.is_zero(b) {
                        acc = k.add(&acc, &k.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    fn zip_with(&self, other: &Matrix, f: impl Fn(&Elem, &Elem) -> Elem) -> Result<Matrix> {
        self.check_same_field(other)?;
        if self.shape() != other.shape() {
            return Err(Error::ShapeMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        Ok(Matrix { field: self.field.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, other: &Matrix) -> Result<Matrix> {
        let k = self.field.clone();
        self.zip_with(other, |a, b| k.add(a, b))
    }

    pub fn checked_sub(&self, other: &Matrix) -> Result<Matrix> {
        let k = self.field.clone();
        self.zip_with(other, |a, b| k.sub(a, b))
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        self.checked_add(other).expect("matrix sum shapes")
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        self.checked_sub(other).expect("matrix difference shapes")
    }

    pub fn scale(&self, c: &Elem) -> Matrix {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.mul(a, c)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Matrix {
        let k = &self.field;
        let data = self.data.iter().map(|a| k.neg(a)).collect();
        Matrix { field: k.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `[self | other]`
    pub fn hstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.rows, other.rows, "hstack row counts");
        Matrix::from_fn(&self.field, self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self.get(i, j).clone()
            } else {
                other.get(i, j - self.cols).clone()
            }
        })
    }

    /// `[self ; other]`
    pub fn vstack(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.cols, "vstack column counts");
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Matrix { field: self.field.clone(), rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Block-diagonal sum.
    pub fn block_diag(&self, other: &Matrix) -> Matrix {
        let mut m = Matrix::zeros(&self.field, self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                m.set(self.rows + i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, idx.len(), self.cols, |i, j| self.get(idx[i], j).clone())
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        Matrix::from_fn(&self.field, self.rows, idx.len(), |i, j| self.get(i, idx[j]).clone())
    }

    /// Rows `r0..r1`, columns `c0..c1`.
    pub fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Matrix {
        Matrix::from_fn(&self.field, r1 - r0, c1 - c0, |i, j| self.get(r0 + i, c0 + j).clone())
    }

    pub fn rank(&self) -> usize {
        self.echelon().rank()
    }

    /// Canonical reduced row echelon form and rank.
    pub fn rref(&self) -> (Matrix, usize) {
        self.rref_padded()
    }

    /// Right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Subspace {
        let e = self.echelon();
        let k = &self.field;
        let pivots = e.pivots().to_vec();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let r = e.matrix();
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![k.zero(); self.cols];
            v[free] = k.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = k.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_rows(k, self.cols, basis)
    }

    /// Left kernel `{w : w M = 0}` as a subspace of row vectors.
    pub fn left_kernel(&self) -> Subspace {
        self.transpose().kernel()
    }

    /// Column space.
    pub fn image(&self) -> Subspace {
        Subspace::from_matrix(&self.transpose())
    }

    pub fn row_space(&self) -> Subspace {
        Subspace::from_matrix(self)
    }

    /// Some `X` with `self · X = b` (free variables set to zero), if solvable.
    pub fn solve(&self, b: &Matrix) -> Option<Matrix> {
        assert_eq!(self.rows, b.rows, "solve: row counts differ");
        let k = &self.field;
        let aug = self.hstack(b);
        let e = aug.echelon();
        let mut x = Matrix::zeros(k, self.cols, b.cols);
        for (i, &p) in e.pivots().iter().enumerate() {
            if p >= self.cols {
                return None;
            }
            for j in 0..b.cols {
                x.set(p, j, e.matrix().get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    /// Some `X` with `X · self = b`, if solvable.
    pub fn solve_left(&self, b: &Matrix) -> Option<Matrix> {
        self.transpose().solve(&b.transpose()).map(|x| x.transpose())
    }

    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve(&Matrix::identity(&self.field, self.rows))?;
        x.mul(self).is_identity().then_some(x)
    }

    /// `L` with `L · self = I`; requires full column rank.
    pub fn left_inverse(&self) -> Option<Matrix> {
        self.solve_left(&Matrix::identity(&self.field, self.cols))
    }

    /// `R` with `self · R = I`; requires full row rank.
    pub fn right_inverse(&self) -> Option<Matrix> {
        self.solve(&Matrix::identity(&self.field, self.rows))
    }

    /// Determinant by elimination over the field.
    pub fn det(&self) -> Option<Elem> {
        if !self.is_square() {
            return None;
        }
        let k = &self.field;
        let n = self.rows;
        let mut a = self.to_rows();
        let mut det = k.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&r| !k.is_zero(&a[r][c])) else {
                return Some(k.zero());
            };
            if p != c {
                a.swap(p, c);
                det = k.neg(&det);
            }
            let piv = a[c][c].clone();
            det = k.mul(&det, &piv);
            let inv = k.inv(&piv).unwrap();
            for r in c + 1..n {
                if k.is_zero(&a[r][c]) {
                    continue;
                }
                let f = k.mul(&a[r][c], &inv);
                for j in c..n {
                    let t = k.mul(&f, &a[c][j]);
                    a[r][j] = k.sub(&a[r][j], &t);
                }
            }
        }
        Some(det)
    }

    /// `Σ_i M[i,i]`
    pub fn trace(&self) -> Elem {
        let k = &self.field;
        (0..self.rows.min(self.cols)).fold(k.zero(), |acc, i| k.add(&acc, self.get(i, i)))
    }

    pub fn pow(&self, mut e: u64) -> Matrix {
        let mut base = self.clone();
        let mut acc = Matrix::identity(&self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Entries rendered in the interchange notation.
    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|e| self.field.format(e)).collect())
            .collect()
    }
}

/// `(A⊗B)[i·rB + j, k·cB + l] = A[i,k]·B[j,l]`.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Result<Matrix> {
    a.check_same_field(b)?;
    let k = &a.field;
    let (ra, ca, rb, cb) = (a.rows, a.cols, b.rows, b.cols);
    let mut out = Matrix::zeros(k, ra * rb, ca * cb);
    for i in 0..ra {
        for kk in 0..ca {
            let x = a.get(i, kk);
            if k.is_zero(x) {
                continue;
            }
            for j in 0..rb {
                for l in 0..cb {
                    let y = b.get(j, l);
                    if k.is_zero(y) {
                        continue;
                    }
                    out.set(i * rb + j, kk * cb + l, k.mul(x, y));
                }
            }
        }
    }
    Ok(out)
}

/// Kronecker product of matrices known to share a field.
pub fn kron(a: &Matrix, b: &Matrix) -> Matrix {
    kronecker(a, b).expect("kronecker factors share a field")
}

/// `u ⊗ v` for coordinate vectors.
pub fn kron_vec(field: &Field, u: &[Elem], v: &[Elem]) -> Vec<Elem> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(field.mul(a, b));
        }
    }
    out
}

/// Swap `τ : V_m ⊗ V_n → V_n ⊗ V_m`, `e_i ⊗ e_j ↦ e_j ⊗ e_i`.
pub fn swap_matrix(field: &Field, m: usize, n: usize) -> Matrix {
    let mut t = Matrix::zeros(field, m * n, m * n);
    for i in 0..m {
        for j in 0..n {
            t.set(j * m + i, i * n + j, field.one());
        }
    }
    t
}

/// Cokernel of `f − g`: a surjection `q` (dim × target) with `q(f − g) = 0`.
///
/// Rows of `q` are the canonical basis of the left kernel of `f − g`, so the
/// result is the identity when `f = g`.
pub fn coequalizer(f: &Matrix, g: &Matrix) -> Result<(Matrix, usize)> {
    let d = f.checked_sub(g)?;
    let lk = d.left_kernel();
    let dim = lk.dim();
    Ok((lk.basis().clone(), dim))
}

/// Unique `u` with `u · q = h`, when `h` kills what `q` kills.
pub fn factor_through_coequalizer(q: &Matrix, h: &Matrix) -> Option<Matrix> {
    q.solve_left(h)
}

#[cfg(test)]
mod tests;
