use std::fmt;

use super::{Axiom, Coalgebra, ValidationReport};
use crate::error::{Error, Result};
use crate::field::{Elem, Field, Poly};
use crate::linalg::{kron, kron_vec, swap_matrix, Matrix, Subspace};

/// Finite-dimensional commutative unital algebra.
///
/// `mult` is `n × n²`: column `i·n + j` holds `e_i e_j`.
#[derive(Clone, PartialEq, Eq)]
pub struct ArtinAlgebra {
    field: Field,
    dim: usize,
    mult: Matrix,
    unit: Vec<Elem>,
}

impl fmt::Debug for ArtinAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ArtinAlgebra(dim {} over {})", self.dim, self.field)
    }
}

impl ArtinAlgebra {
    pub fn new(field: &Field, mult: Matrix, unit: Vec<Elem>) -> Result<Self> {
        let n = mult.rows();
        if mult.cols() != n * n || unit.len() != n {
            return Err(Error::ShapeMismatch(format!(
                "multiplication must be {n}x{} with unit of length {n}",
                n * n
            )));
        }
        Ok(ArtinAlgebra { field: field.clone(), dim: n, mult, unit })
    }

    pub fn validated(field: &Field, mult: Matrix, unit: Vec<Elem>) -> Result<Self> {
        let a = Self::new(field, mult, unit)?;
        a.validate().into_result("algebra axioms")?;
        Ok(a)
    }

    /// `k[x]/(f)` in the basis `1, x, …, x^{d−1}`.
    pub fn quotient_ring(f: &Poly) -> Result<Self> {
        let k = f.field().clone();
        let d = f.degree().ok_or_else(|| Error::Invalid("modulus must be nonzero".into()))?;
        if d == 0 {
            return Ok(Self::zero(&k));
        }
        let f = f.monic();
        let powers: Vec<Poly> = {
            let mut v = Vec::with_capacity(2 * d);
            let mut cur = Poly::one(&k);
            for _ in 0..2 * d - 1 {
                v.push(cur.rem(&f)?);
                cur = cur.shift(1);
            }
            v
        };
        let mut mult = Matrix::zeros(&k, d, d * d);
        for i in 0..d {
            for j in 0..d {
                for r in 0..d {
                    mult.set(r, i * d + j, powers[i + j].coeff(r));
                }
            }
        }
        let mut unit = vec![k.zero(); d];
        unit[0] = k.one();
        Ok(ArtinAlgebra { field: k, dim: d, mult, unit })
    }

    /// `k^n` with pointwise product.
    pub fn split(field: &Field, n: usize) -> Self {
        let mut mult = Matrix::zeros(field, n, n * n);
        for i in 0..n {
            mult.set(i, i * n + i, field.one());
        }
        ArtinAlgebra { field: field.clone(), dim: n, mult, unit: vec![field.one(); n] }
    }

    pub fn zero(field: &Field) -> Self {
        ArtinAlgebra { field: field.clone(), dim: 0, mult: Matrix::zeros(field, 0, 0), unit: vec![] }
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn mult(&self) -> &Matrix {
        &self.mult
    }

    pub fn unit(&self) -> &[Elem] {
        &self.unit
    }

    pub fn zero_elem(&self) -> Vec<Elem> {
        vec![self.field.zero(); self.dim]
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Elem> {
        let mut v = self.zero_elem();
        v[i] = self.field.one();
        v
    }

    pub fn mul(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        self.mult.mul_vec(&kron_vec(&self.field, a, b))
    }

    pub fn add(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[Elem], b: &[Elem]) -> Vec<Elem> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &Elem, a: &[Elem]) -> Vec<Elem> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn pow(&self, a: &[Elem], mut e: u64) -> Vec<Elem> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn is_zero_elem(&self, a: &[Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    /// Matrix of `x ↦ a·x`.
    pub fn left_mult(&self, a: &[Elem]) -> Matrix {
        let n = self.dim;
        let k = &self.field;
        let mut m = Matrix::zeros(k, n, n);
        for (i, ai) in a.iter().enumerate() {
            if k.is_zero(ai) {
                continue;
            }
            for j in 0..n {
                for r in 0..n {
                    let c = self.mult.get(r, i * n + j);
                    if !k.is_zero(c) {
                        let v = k.add(m.get(r, j), &k.mul(ai, c));
                        m.set(r, j, v);
                    }
                }
            }
        }
        m
    }

    /// `p(a)` in the algebra.
    pub fn eval_poly(&self, p: &Poly, a: &[Elem]) -> Vec<Elem> {
        p.eval_with(
            self.zero_elem(),
            |c| self.scale(c, &self.unit),
            |x, y| self.add(x, y),
            |x, y| self.mul(x, y),
            &a.to_vec(),
        )
    }

    /// Inverse of a unit, by solving `a·x = 1`.
    pub fn inverse(&self, a: &[Elem]) -> Option<Vec<Elem>> {
        let x = self.left_mult(a).solve(&Matrix::column(&self.field, self.unit.clone()))?;
        let x = x.col(0);
        (self.mul(a, &x) == self.unit).then_some(x)
    }

    /// The ideal `a·A` (column space of `L_a`).
    pub fn principal_ideal(&self, a: &[Elem]) -> Subspace {
        self.left_mult(a).image()
    }

    /// Whether the subspace is closed under multiplication.
    pub fn is_subalgebra(&self, s: &Subspace) -> bool {
        let rows = s.basis_rows();
        rows.iter().all(|a| rows.iter().all(|b| s.contains_vector(&self.mul(a, b))))
            && s.contains_vector(&self.unit)
    }

    /// Subalgebra on a subspace containing 1 and closed under products,
    /// in the subspace's RREF basis; returns it with the inclusion matrix.
    pub fn subalgebra(&self, s: &Subspace) -> Result<(ArtinAlgebra, Matrix)> {
        let k = &self.field;
        let basis = s.basis_rows();
        let d = basis.len();
        let mut mult = Matrix::zeros(k, d, d * d);
        for i in 0..d {
            for j in 0..d {
                let prod = self.mul(&basis[i], &basis[j]);
                let c = s
                    .coordinates(&prod)
                    .ok_or_else(|| Error::Invalid("subspace not closed under products".into()))?;
                for (r, v) in c.into_iter().enumerate() {
                    mult.set(r, i * d + j, v);
                }
            }
        }
        let unit = s
            .coordinates(&self.unit)
            .ok_or_else(|| Error::Invalid("subspace does not contain 1".into()))?;
        Ok((ArtinAlgebra { field: k.clone(), dim: d, mult, unit }, s.inclusion()))
    }

    /// Corner algebra `eA` for an idempotent `e`, with its unit `e`.
    /// Returns the algebra, the inclusion `eA → A` and the projection `x ↦ ex`
    /// expressed in the corner's basis.
    pub fn corner(&self, e: &[Elem]) -> (ArtinAlgebra, Matrix, Matrix) {
        let k = &self.field;
        let le = self.left_mult(e);
        let s = le.image();
        let basis = s.basis_rows();
        let d = basis.len();
        let mut mult = Matrix::zeros(k, d, d * d);
        for i in 0..d {
            for j in 0..d {
                let c = s.coordinates(&self.mul(&basis[i], &basis[j])).expect("ideal");
                for (r, v) in c.into_iter().enumerate() {
                    mult.set(r, i * d + j, v);
                }
            }
        }
        let unit = s.coordinates(e).expect("e ∈ eA");
        let incl = s.inclusion();
        // x ↦ ex lands in eA; read off coordinates at the pivots
        let proj = s.coordinate_map().mul(&le);
        (ArtinAlgebra { field: k.clone(), dim: d, mult, unit }, incl, proj)
    }

    /// Quotient `A/I` for an ideal `I`, in the basis of unit vectors at the
    /// non-pivot columns of `I`; returns it with the projection.
    pub fn quotient(&self, ideal: &Subspace) -> (ArtinAlgebra, Matrix) {
        let k = &self.field;
        let n = self.dim;
        let keep = ideal.complement_basis();
        let d = keep.len();
        // projection: reduce modulo the RREF basis, then read the kept coordinates
        let mut proj = Matrix::zeros(k, d, n);
        for j in 0..n {
            let mut v = vec![k.zero(); n];
            v[j] = k.one();
            let r = reduce_mod(ideal, &v);
            for (row, &c) in keep.iter().enumerate() {
                proj.set(row, j, r[c].clone());
            }
        }
        let sect = Matrix::selection(k, n, &keep);
        let mult = proj.mul(&self.mult).mul(&kron(&sect, &sect));
        let unit = proj.mul_vec(&self.unit);
        (ArtinAlgebra { field: k.clone(), dim: d, mult, unit }, proj)
    }

    pub fn validate(&self) -> ValidationReport {
        let k = &self.field;
        let n = self.dim;
        let i = Matrix::identity(k, n);
        let mut report = ValidationReport::default();
        let left = self.mult.mul(&kron(&self.mult, &i));
        let right = self.mult.mul(&kron(&i, &self.mult));
        report.check(Axiom::Associativity, &left, &right);
        report.check(Axiom::Commutativity, &self.mult.mul(&swap_matrix(k, n, n)), &self.mult);
        let u = Matrix::column(k, self.unit.clone());
        report.check(Axiom::Unit, &self.mult.mul(&kron(&u, &i)), &i);
        report.check(Axiom::Unit, &self.mult.mul(&kron(&i, &u)), &i);
        report
    }

    /// Product algebra `A × B`.
    pub fn product(&self, other: &ArtinAlgebra) -> ArtinAlgebra {
        let c = super::direct_sum(&dual_coalgebra(self), &dual_coalgebra(other)).coalgebra;
        dual_algebra(&c)
    }
}

/// `v` minus its components along the RREF basis of `s`.
pub(crate) fn reduce_mod(s: &Subspace, v: &[Elem]) -> Vec<Elem> {
    let k = s.field();
    let mut w = v.to_vec();
    for (i, &p) in s.pivots().iter().enumerate() {
        let c = w[p].clone();
        if k.is_zero(&c) {
            continue;
        }
        for (j, b) in s.basis().row(i).iter().enumerate() {
            if !k.is_zero(b) {
                w[j] = k.sub(&w[j], &k.mul(&c, b));
            }
        }
    }
    w
}

/// Algebra homomorphism given by a matrix (target × source).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMorphism {
    pub source: ArtinAlgebra,
    pub target: ArtinAlgebra,
    pub matrix: Matrix,
}

impl AlgebraMorphism {
    pub(crate) fn new_unchecked(source: &ArtinAlgebra, target: &ArtinAlgebra, matrix: Matrix) -> Self {
        AlgebraMorphism { source: source.clone(), target: target.clone(), matrix }
    }

    pub fn new(source: &ArtinAlgebra, target: &ArtinAlgebra, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::ShapeMismatch("algebra morphism matrix shape".into()));
        }
        Ok(Self::new_unchecked(source, target, matrix))
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let phi = &self.matrix;
        let lhs = phi.mul(&self.source.mult);
        let rhs = self.target.mult.mul(&kron(phi, phi));
        report.check(Axiom::PreservesProduct, &lhs, &rhs);
        let k = &self.source.field;
        let u1 = Matrix::column(k, phi.mul_vec(&self.source.unit));
        let u2 = Matrix::column(k, self.target.unit.clone());
        report.check(Axiom::PreservesUnit, &u1, &u2);
        report
    }
}

/// `C^∨`: multiplication `Δᵀ`, unit `εᵀ`.
pub fn dual_algebra(c: &Coalgebra) -> ArtinAlgebra {
    ArtinAlgebra {
        field: c.field().clone(),
        dim: c.dim(),
        mult: c.delta().transpose(),
        unit: c.epsilon().row_vec(0),
    }
}

/// `A^∨`: comultiplication `multᵀ`, counit `unitᵀ`.
pub fn dual_coalgebra(a: &ArtinAlgebra) -> Coalgebra {
    let k = &a.field;
    Coalgebra::new(k, a.mult.transpose(), Matrix::row_vector(k, a.unit.clone()))
        .expect("dual shapes")
}
