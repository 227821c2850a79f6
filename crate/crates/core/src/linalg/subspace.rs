use super::Matrix;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};

/// A subspace of `k^n`, stored as the canonical RREF basis (rows).
///
/// Equal subspaces have identical representations, so `==` is set equality.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subspace {
    ambient: usize,
    basis: Matrix,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn zero(field: &Field, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: vec![] }
    }

    pub fn full(field: &Field, ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Matrix::identity(field, ambient),
            pivots: (0..ambient).collect(),
        }
    }

    /// Row space of `m`.
    pub fn from_matrix(m: &Matrix) -> Self {
        let e = m.echelon();
        Subspace { ambient: m.cols(), pivots: e.pivots().to_vec(), basis: e.matrix().clone() }
    }

    pub fn from_rows(field: &Field, ambient: usize, rows: Vec<Vec<Elem>>) -> Self {
        Self::from_matrix(&Matrix::from_rows_with_cols(field, rows, ambient).expect("row lengths"))
    }

    /// Span of the columns of `m`.
    pub fn column_span(m: &Matrix) -> Self {
        Self::from_matrix(&m.transpose())
    }

    /// Span of `{e_i : i ∈ idx}`.
    pub fn coordinate(field: &Field, ambient: usize, idx: &[usize]) -> Self {
        let rows = idx
            .iter()
            .map(|&i| {
                let mut v = vec![field.zero(); ambient];
                v[i] = field.one();
                v
            })
            .collect();
        Self::from_rows(field, ambient, rows)
    }

    pub fn field(&self) -> &Field {
        self.basis.field()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// RREF basis, one vector per row.
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }

    pub fn basis_rows(&self) -> Vec<Vec<Elem>> {
        self.basis.to_rows()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `ambient × dim` matrix whose columns are the basis vectors.
    pub fn inclusion(&self) -> Matrix {
        self.basis.transpose()
    }

    /// Coordinates of `v` in the RREF basis, or `None` if `v ∉ self`.
    pub fn coordinates(&self, v: &[Elem]) -> Option<Vec<Elem>> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let k = self.field();
        let c: Vec<Elem> = self.pivots.iter().map(|&p| v[p].clone()).collect();
        // v must equal Σ c_i b_i
        let mut w = v.to_vec();
        for (i, ci) in c.iter().enumerate() {
            if k.is_zero(ci) {
                continue;
            }
            for (j, b) in self.basis.row(i).iter().enumerate() {
                if !k.is_zero(b) {
                    w[j] = k.sub(&w[j], &k.mul(ci, b));
                }
            }
        }
        w.iter().all(|e| k.is_zero(e)).then_some(c)
    }

    /// `dim × ambient` matrix sending vectors of `self` to their coordinates
    /// (pivot-column selection; only meaningful on the subspace).
    pub fn coordinate_map(&self) -> Matrix {
        let k = self.field();
        let mut m = Matrix::zeros(k, self.dim(), self.ambient);
        for (i, &p) in self.pivots.iter().enumerate() {
            m.set(i, p, k.one());
        }
        m
    }

    /// Coordinates of the columns of `m` (all assumed to lie in `self`).
    pub fn coordinates_of_columns(&self, m: &Matrix) -> Option<Matrix> {
        let k = self.field();
        let mut out = Matrix::zeros(k, self.dim(), m.cols());
        for j in 0..m.cols() {
            let c = self.coordinates(&m.col(j))?;
            for (i, v) in c.into_iter().enumerate() {
                out.set(i, j, v);
            }
        }
        Some(out)
    }

    pub fn contains_vector(&self, v: &[Elem]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Whether every column of `m` lies in `self`.
    pub fn contains_columns(&self, m: &Matrix) -> bool {
        (0..m.cols()).all(|j| self.contains_vector(&m.col(j)))
    }

    fn check(&self, other: &Subspace) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::AmbientMismatch { left: self.ambient, right: other.ambient });
        }
        Ok(())
    }

    pub fn contains(&self, other: &Subspace) -> Result<bool> {
        self.check(other)?;
        Ok((0..other.dim()).all(|i| self.contains_vector(other.basis.row(i))))
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    /// Intersection via the kernel of `[Aᵀ | −Bᵀ]` (Zassenhaus-style).
    pub fn intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check(other)?;
        let k = self.field();
        if self.is_zero() || other.is_zero() {
            return Ok(Subspace::zero(k, self.ambient));
        }
        let m = self.basis.transpose().hstack(&other.basis.transpose().neg());
        let ker = m.kernel();
        let a = self.dim();
        let rows: Vec<Vec<Elem>> = ker
            .basis_rows()
            .into_iter()
            .map(|v| {
                let coeffs = Matrix::row_vector(k, v[..a].to_vec());
                coeffs.mul(&self.basis).row_vec(0)
            })
            .collect();
        Ok(Subspace::from_rows(k, self.ambient, rows))
    }

    /// Image under `m` (`m` has `ambient` columns).
    pub fn map(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.cols(), self.ambient, "map: column count");
        Subspace::from_matrix(&self.basis.mul(&m.transpose()))
    }

    /// `{v : m v ∈ self}` for `m` with `ambient` rows.
    pub fn preimage(&self, m: &Matrix) -> Subspace {
        assert_eq!(m.rows(), self.ambient, "preimage: row count");
        let ann = self.annihilator();
        if ann.is_zero() {
            return Subspace::full(self.field(), m.cols());
        }
        ann.basis().mul(m).kernel()
    }

    /// Unit vectors at the non-pivot columns: a complement of `self`.
    pub fn complement_basis(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Projection `q` onto `k^n / self`, in the coordinates of the non-pivot
    /// columns, and the section sending those coordinates to unit vectors.
    pub fn quotient_map(&self) -> (Matrix, Matrix) {
        let k = self.field();
        let free = self.complement_basis();
        let mut q = Matrix::zeros(k, free.len(), self.ambient);
        for (j, &c) in free.iter().enumerate() {
            q.set(j, c, k.one());
            for (i, &p) in self.pivots.iter().enumerate() {
                q.set(j, p, k.neg(self.basis.get(i, c)));
            }
        }
        (q, Matrix::selection(k, self.ambient, &free))
    }

    /// Vectors `w` with `⟨w, v⟩ = 0` for all `v ∈ self`.
    pub fn annihilator(&self) -> Subspace {
        self.basis.kernel()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubspaceOp {
    Sum,
    Intersect,
    /// Whether `A ⊇ B`.
    Contains,
    /// Whether the single basis vector of `B` lies in `A`.
    Member,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceOpResult {
    Subspace(Subspace),
    Bool(bool),
}

pub fn subspace_ops(a: &Subspace, b: &Subspace, op: SubspaceOp) -> Result<SubspaceOpResult> {
    Ok(match op {
        SubspaceOp::Sum => SubspaceOpResult::Subspace(a.sum(b)?),
        SubspaceOp::Intersect => SubspaceOpResult::Subspace(a.intersect(b)?),
        SubspaceOp::Contains => SubspaceOpResult::Bool(a.contains(b)?),
        SubspaceOp::Member => {
            a.check(b)?;
            if b.dim() > 1 {
                return Err(Error::Invalid("member expects a vector (dimension ≤ 1)".into()));
            }
            SubspaceOpResult::Bool(a.contains(b)?)
        }
    })
}
