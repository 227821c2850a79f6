//! Finite-dimensional cocommutative counital coalgebras as structure tensors.
//!
//! `delta` is `n² × n`: column `j` holds `Δ(e_j)` in the basis `e_a ⊗ e_b`
//! (index `a·n + b`); `epsilon` is `1 × n`.

mod algebra;
mod constructions;

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{kron, swap_matrix, Matrix, Subspace};

pub use algebra::{dual_algebra, dual_coalgebra, AlgebraMorphism, ArtinAlgebra};
pub use constructions::{
    direct_sum, direct_sum_all, generated_subcoalgebra, pushout, quotient, sub, tensor, DirectSum,
    Pushout, Quotient, SubCoalgebra,
};

#[derive(Clone, PartialEq, Eq)]
pub struct Coalgebra {
    field: Field,
    dim: usize,
    delta: Matrix,
    epsilon: Matrix,
}

impl fmt::Debug for Coalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Coalgebra(dim {} over {})", self.dim, self.field)
    }
}

/// Which identity a check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    Coassociativity,
    Cocommutativity,
    LeftCounit,
    RightCounit,
    /// `Δ_D φ = (φ⊗φ) Δ_C`
    PreservesDelta,
    /// `ε_D φ = ε_C`
    PreservesCounit,
    Associativity,
    Commutativity,
    Unit,
    /// `φ(xy) = φ(x)φ(y)`
    PreservesProduct,
    PreservesUnit,
}

impl Axiom {
    pub fn name(&self) -> &'static str {
        match self {
            Axiom::Coassociativity => "coassociativity",
            Axiom::Cocommutativity => "cocommutativity",
            Axiom::LeftCounit => "left counit",
            Axiom::RightCounit => "right counit",
            Axiom::PreservesDelta => "compatibility with comultiplication",
            Axiom::PreservesCounit => "compatibility with counit",
            Axiom::Associativity => "associativity",
            Axiom::Commutativity => "commutativity",
            Axiom::Unit => "unit",
            Axiom::PreservesProduct => "compatibility with multiplication",
            Axiom::PreservesUnit => "compatibility with unit",
        }
    }
}

/// A failed identity and the first basis index where the two sides differ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} fails at basis vector {}", self.axiom.name(), self.witness)
    }
}

/// Empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    pub(crate) fn check(&mut self, axiom: Axiom, lhs: &Matrix, rhs: &Matrix) {
        if let Some(j) = first_differing_column(lhs, rhs) {
            self.violations.push(Violation { axiom, witness: j });
        }
    }

    /// `Ok` if valid, otherwise a `ReportedFailure` naming the first violation.
    pub fn into_result(self, what: &str) -> Result<()> {
        match self.violations.first() {
            None => Ok(()),
            Some(v) => Err(Error::ReportedFailure { check: what.to_string(), detail: v.to_string() }),
        }
    }
}

pub(crate) fn first_differing_column(a: &Matrix, b: &Matrix) -> Option<usize> {
    assert_eq!(a.shape(), b.shape(), "compared matrices differ in shape");
    (0..a.cols()).find(|&j| (0..a.rows()).any(|i| a.get(i, j) != b.get(i, j)))
}

impl Coalgebra {
    /// Checks shapes only; use [`validate`](Self::validate) for the axioms.
    pub fn new(field: &Field, delta: Matrix, epsilon: Matrix) -> Result<Self> {
        let n = delta.cols();
        if delta.rows() != n * n {
            return Err(Error::ShapeMismatch(format!(
                "delta must be {}x{n}, found {}x{}",
                n * n,
                delta.rows(),
                delta.cols()
            )));
        }
        if epsilon.shape() != (1, n) {
            return Err(Error::ShapeMismatch(format!(
                "epsilon must be 1x{n}, found {}x{}",
                epsilon.rows(),
                epsilon.cols()
            )));
        }
        if delta.field() != field || epsilon.field() != field {
            return Err(Error::SpecMismatch("structure maps over a different field".into()));
        }
        Ok(Coalgebra { field: field.clone(), dim: n, delta, epsilon })
    }

    /// Shape check plus axiom validation.
    pub fn validated(field: &Field, delta: Matrix, epsilon: Matrix) -> Result<Self> {
        let c = Self::new(field, delta, epsilon)?;
        c.validate().into_result("coalgebra axioms")?;
        Ok(c)
    }

    pub fn zero(field: &Field) -> Self {
        Coalgebra {
            field: field.clone(),
            dim: 0,
            delta: Matrix::zeros(field, 0, 0),
            epsilon: Matrix::zeros(field, 1, 0),
        }
    }

    /// The base field `k` with `Δ(1) = 1⊗1`, `ε(1) = 1`.
    pub fn trivial(field: &Field) -> Self {
        diagonal_coalgebra(field, 1)
    }

    /// `{g, t}` with `Δg = g⊗g`, `Δt = g⊗t + t⊗g`, `εg = 1`, `εt = 0`.
    pub fn dual_numbers(field: &Field) -> Self {
        let delta = Matrix::from_i64(field, &[&[1, 0], &[0, 1], &[0, 1], &[0, 0]]);
        let epsilon = Matrix::from_i64(field, &[&[1, 0]]);
        Coalgebra::new(field, delta, epsilon).unwrap()
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn epsilon(&self) -> &Matrix {
        &self.epsilon
    }

    /// `Δ(v)` as a vector of length `n²`.
    pub fn apply_delta(&self, v: &[Elem]) -> Vec<Elem> {
        self.delta.mul_vec(v)
    }

    pub fn apply_epsilon(&self, v: &[Elem]) -> Elem {
        self.epsilon.mul_vec(v).pop().unwrap_or_else(|| self.field.zero())
    }

    pub fn identity_morphism(&self) -> CoalgebraMorphism {
        CoalgebraMorphism {
            source: self.clone(),
            target: self.clone(),
            matrix: Matrix::identity(&self.field, self.dim),
        }
    }

    /// `(Δ⊗I)Δ` as an `n³ × n` matrix.
    pub fn delta2(&self) -> Matrix {
        let i = Matrix::identity(&self.field, self.dim);
        kron(&self.delta, &i).mul(&self.delta)
    }

    pub fn validate(&self) -> ValidationReport {
        let k = &self.field;
        let n = self.dim;
        let i = Matrix::identity(k, n);
        let mut report = ValidationReport::default();
        let left = kron(&self.delta, &i).mul(&self.delta);
        let right = kron(&i, &self.delta).mul(&self.delta);
        report.check(Axiom::Coassociativity, &left, &right);
        report.check(Axiom::Cocommutativity, &swap_matrix(k, n, n).mul(&self.delta), &self.delta);
        report.check(Axiom::LeftCounit, &kron(&self.epsilon, &i).mul(&self.delta), &i);
        report.check(Axiom::RightCounit, &kron(&i, &self.epsilon).mul(&self.delta), &i);
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// Group-like test: `Δc = c⊗c` and `εc = 1`.
    pub fn is_group_like(&self, c: &[Elem]) -> bool {
        let k = &self.field;
        k.is_one(&self.apply_epsilon(c))
            && self.apply_delta(c) == crate::linalg::kron_vec(k, c, c)
    }

    /// Whether `Δ(S) ⊆ S⊗S`.
    pub fn is_subcoalgebra(&self, s: &Subspace) -> bool {
        constructions::sub(self, s).is_ok()
    }

    /// Same structure after the change of basis `p` (columns = new basis).
    pub fn change_basis(&self, p: &Matrix) -> Result<(Coalgebra, CoalgebraMorphism)> {
        let pinv = p
            .inverse()
            .ok_or_else(|| Error::Invalid("change of basis matrix is singular".into()))?;
        let delta = kron(&pinv, &pinv).mul(&self.delta).mul(p);
        let epsilon = self.epsilon.mul(p);
        let c = Coalgebra::new(&self.field, delta, epsilon)?;
        let iso = CoalgebraMorphism::new(&c, self, p.clone())?;
        Ok((c, iso))
    }
}

/// `k^δ[X]` on `n` points: `Δ(e_x) = e_x⊗e_x`, `ε(e_x) = 1`.
pub fn diagonal_coalgebra(field: &Field, n: usize) -> Coalgebra {
    let mut delta = Matrix::zeros(field, n * n, n);
    for x in 0..n {
        delta.set(x * n + x, x, field.one());
    }
    let epsilon = Matrix::from_fn(field, 1, n, |_, _| field.one());
    Coalgebra { field: field.clone(), dim: n, delta, epsilon }
}

#[derive(Clone, PartialEq, Eq)]
pub struct CoalgebraMorphism {
    source: Coalgebra,
    target: Coalgebra,
    matrix: Matrix,
}

impl fmt::Debug for CoalgebraMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoalgebraMorphism({} -> {}) {:?}", self.source.dim, self.target.dim, self.matrix)
    }
}

impl CoalgebraMorphism {
    /// Checks shapes only.
    pub fn new(source: &Coalgebra, target: &Coalgebra, matrix: Matrix) -> Result<Self> {
        if matrix.shape() != (target.dim, source.dim) {
            return Err(Error::ShapeMismatch(format!(
                "morphism matrix must be {}x{}, found {}x{}",
                target.dim,
                source.dim,
                matrix.rows(),
                matrix.cols()
            )));
        }
        if source.field != target.field || matrix.field() != &source.field {
            return Err(Error::SpecMismatch("morphism between different fields".into()));
        }
        Ok(CoalgebraMorphism { source: source.clone(), target: target.clone(), matrix })
    }

    pub fn validated(source: &Coalgebra, target: &Coalgebra, matrix: Matrix) -> Result<Self> {
        let m = Self::new(source, target, matrix)?;
        m.validate().into_result("coalgebra morphism")?;
        Ok(m)
    }

    pub fn source(&self) -> &Coalgebra {
        &self.source
    }

    pub fn target(&self) -> &Coalgebra {
        &self.target
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        let phi = &self.matrix;
        let lhs = self.target.delta.mul(phi);
        let rhs = kron(phi, phi).mul(&self.source.delta);
        report.check(Axiom::PreservesDelta, &lhs, &rhs);
        report.check(Axiom::PreservesCounit, &self.target.epsilon.mul(phi), &self.source.epsilon);
        report
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_valid()
    }

    /// `other ∘ self`
    pub fn then(&self, other: &CoalgebraMorphism) -> Result<CoalgebraMorphism> {
        if self.target != other.source {
            return Err(Error::Invalid("composing morphisms with mismatched ends".into()));
        }
        Ok(CoalgebraMorphism {
            source: self.source.clone(),
            target: other.target.clone(),
            matrix: other.matrix.mul(&self.matrix),
        })
    }

    pub fn is_injective(&self) -> bool {
        self.matrix.rank() == self.source.dim
    }

    pub fn image(&self) -> Subspace {
        self.matrix.image()
    }

    /// The dual algebra map `D^∨ → C^∨` (transpose).
    pub fn dual(&self) -> AlgebraMorphism {
        AlgebraMorphism::new_unchecked(
            &dual_algebra(&self.target),
            &dual_algebra(&self.source),
            self.matrix.transpose(),
        )
    }
}

#[cfg(test)]
mod tests;
