//! Finite Galois extensions `L/k`, finite G-sets, fixed fields, and the
//! adjunction between finite G-sets and coalgebras through `X ↦ (Map_G(X, L))^∨`.

mod adjunction;

use std::collections::BTreeSet;

use crate::coalg::{AlgebraMorphism, ArtinAlgebra};
use crate::error::{Error, Result};
use crate::field::{Elem, FactorConfig, Field, Poly};
use crate::linalg::{Matrix, Subspace};
use crate::structure::{local_decomposition, radical, FieldDatum};

pub use adjunction::{
    adjunction_checks, counit, kbar_functor, kbar_map, r_gset, right_adjoint_r, roots_in_field,
    unit_map, HomMode, Kbar, RSet,
};

/// An explicit finite Galois extension with its automorphism group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaloisDatum {
    base: Field,
    l: ArtinAlgebra,
    automorphisms: Vec<Matrix>,
    /// `group_table[i][j]` is the index of `σ_i ∘ σ_j`.
    group_table: Vec<Vec<usize>>,
    identity: usize,
}

impl GaloisDatum {
    /// From a field `L` and a list of automorphism matrices closed under
    /// composition. The table is computed; [`GaloisDatum::verify`] checks the rest.
    pub fn new(l: ArtinAlgebra, automorphisms: Vec<Matrix>) -> Result<Self> {
        let n = l.dim();
        let k = l.field().clone();
        if automorphisms.iter().any(|m| m.shape() != (n, n)) {
            return Err(Error::ShapeMismatch("automorphisms must be square of size dim L".into()));
        }
        let identity = automorphisms
            .iter()
            .position(|m| m.is_identity())
            .ok_or_else(|| Error::Invalid("automorphism list lacks the identity".into()))?;
        let mut group_table = vec![vec![0; automorphisms.len()]; automorphisms.len()];
        for (i, a) in automorphisms.iter().enumerate() {
            for (j, b) in automorphisms.iter().enumerate() {
                let ab = a.mul(b);
                group_table[i][j] = automorphisms
                    .iter()
                    .position(|m| *m == ab)
                    .ok_or_else(|| Error::Invalid(format!("σ_{i}∘σ_{j} is not in the list")))?;
            }
        }
        Ok(GaloisDatum { base: k, l, automorphisms, group_table, identity })
    }

    /// `𝔽_{q^n}/𝔽_q` with `L = 𝔽_q[t]/(f)` for the first monic irreducible `f`
    /// of degree `n` in index order, and `G = ⟨Frobenius⟩`.
    pub fn finite(base: &Field, n: usize, cfg: &FactorConfig) -> Result<Self> {
        let q = base
            .order()
            .ok_or_else(|| Error::NotSupported("Frobenius data needs a finite base".into()))?;
        if n == 0 {
            return Err(Error::Invalid("extension degree must be positive".into()));
        }
        let f = first_irreducible(base, n, cfg)?;
        let l = ArtinAlgebra::quotient_ring(&f)?;
        // Frobenius a ↦ a^q is k-linear; build its matrix from the basis images
        let frob_cols: Vec<Vec<Elem>> = (0..n).map(|j| pow_u128(&l, &l.basis_vector(j), q)).collect();
        let frob = Matrix::from_columns(base, n, &frob_cols);
        let mut autos = vec![Matrix::identity(base, n)];
        for _ in 1..n {
            autos.push(frob.mul(autos.last().unwrap()));
        }
        Self::new(l, autos)
    }

    pub fn base(&self) -> &Field {
        &self.base
    }

    pub fn field(&self) -> &ArtinAlgebra {
        &self.l
    }

    pub fn order(&self) -> usize {
        self.automorphisms.len()
    }

    pub fn automorphisms(&self) -> &[Matrix] {
        &self.automorphisms
    }

    pub fn automorphism(&self, g: usize) -> &Matrix {
        &self.automorphisms[g]
    }

    pub fn group_table(&self) -> &[Vec<usize>] {
        &self.group_table
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn compose(&self, g: usize, h: usize) -> usize {
        self.group_table[g][h]
    }

    pub fn inverse(&self, g: usize) -> usize {
        (0..self.order()).find(|&h| self.compose(g, h) == self.identity).expect("group")
    }

    /// `L` is a field, every `σ` is an invertible algebra map, `|G| = [L:k]`
    /// and `L^G = k`.
    pub fn verify(&self, cfg: &FactorConfig) -> Result<Vec<String>> {
        let mut problems = Vec::new();
        let n = self.l.dim();
        if !self.l.validate().is_valid() {
            problems.push("L is not a commutative algebra".into());
        }
        if !radical(&self.l).is_zero() || local_decomposition(&self.l, cfg)?.components.len() != 1 {
            problems.push("L is not a field".into());
        }
        for (i, s) in self.automorphisms.iter().enumerate() {
            let m = AlgebraMorphism::new(&self.l, &self.l, s.clone())?;
            if !m.validate().is_valid() || s.inverse().is_none() {
                problems.push(format!("σ_{i} is not an automorphism"));
            }
        }
        if self.order() != n {
            problems.push(format!("|G| = {} but [L:k] = {n}", self.order()));
        }
        let all: Vec<usize> = (0..self.order()).collect();
        if self.fixed_space(&all).dim() != 1 {
            problems.push("L^G is larger than k".into());
        }
        Ok(problems)
    }

    /// Whether `h` is a subgroup (nonempty, closed under composition).
    pub fn check_subgroup(&self, h: &[usize]) -> Result<()> {
        if h.is_empty() || h.iter().any(|&g| g >= self.order()) {
            return Err(Error::NotASubgroup(format!("{h:?}")));
        }
        let set: BTreeSet<usize> = h.iter().copied().collect();
        for &a in &set {
            for &b in &set {
                if !set.contains(&self.compose(a, b)) {
                    return Err(Error::NotASubgroup(format!("{h:?} not closed: {a}∘{b}")));
                }
            }
        }
        Ok(())
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier: Vec<usize> = vec![self.identity];
        while let Some(a) = frontier.pop() {
            for &g in gens {
                let b = self.compose(a, g);
                if set.insert(b) {
                    frontier.push(b);
                }
            }
        }
        set.into_iter().collect()
    }

    /// Every subgroup, sorted by (order, elements).
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let mut found: BTreeSet<Vec<usize>> = BTreeSet::from([vec![self.identity]]);
        let mut frontier = vec![vec![self.identity]];
        while let Some(h) = frontier.pop() {
            for g in 0..self.order() {
                if h.contains(&g) {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(g);
                let bigger = self.closure(&gens);
                if found.insert(bigger.clone()) {
                    frontier.push(bigger);
                }
            }
        }
        let mut out: Vec<Vec<usize>> = found.into_iter().collect();
        out.sort_by_key(|h| (h.len(), h.clone()));
        out
    }

    /// `L^H` as a subspace of `L`.
    pub fn fixed_space(&self, h: &[usize]) -> Subspace {
        let n = self.l.dim();
        let id = Matrix::identity(&self.base, n);
        let mut stacked = Matrix::zeros(&self.base, 0, n);
        for &g in h {
            stacked = stacked.vstack(&self.automorphisms[g].sub(&id));
        }
        stacked.kernel()
    }
}

fn pow_u128(a: &ArtinAlgebra, x: &[Elem], mut e: u128) -> Vec<Elem> {
    let mut acc = a.unit().to_vec();
    let mut base = x.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = a.mul(&acc, &base);
        }
        base = a.mul(&base, &base);
        e >>= 1;
    }
    acc
}

fn first_irreducible(k: &Field, n: usize, cfg: &FactorConfig) -> Result<Poly> {
    let q = k.order().expect("finite") as u64;
    let total = q.checked_pow(n as u32).ok_or_else(|| Error::NotSupported("extension too large".into()))?;
    for idx in 0..total {
        let mut rem = idx;
        let mut coeffs: Vec<Elem> = (0..n)
            .map(|_| {
                let e = k.element_by_index(rem % q);
                rem /= q;
                e
            })
            .collect();
        coeffs.push(k.one());
        let f = Poly::new(k, coeffs);
        if f.is_irreducible(cfg)? {
            return Ok(f);
        }
    }
    Err(Error::Internal(format!("no irreducible polynomial of degree {n}")))
}

/// A finite G-set: `action[g][x] = g·x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGSet {
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

impl FiniteGSet {
    pub fn trivial(d: &GaloisDatum, n: usize) -> Self {
        FiniteGSet { size: n, action: vec![(0..n).collect(); d.order()] }
    }

    /// Left cosets `gH`, numbered in order of their smallest element.
    pub fn coset_space(d: &GaloisDatum, h: &[usize]) -> Result<Self> {
        d.check_subgroup(h)?;
        let cosets = left_cosets(d, h);
        let index_of = |g: usize| cosets.iter().position(|c| c.contains(&g)).expect("partition");
        let action = (0..d.order())
            .map(|g| cosets.iter().map(|c| index_of(d.compose(g, c[0]))).collect())
            .collect();
        Ok(FiniteGSet { size: cosets.len(), action })
    }

    pub fn regular(d: &GaloisDatum) -> Self {
        Self::coset_space(d, &[d.identity()]).expect("trivial subgroup")
    }

    /// `X ⊔ Y`, the points of `Y` shifted by `|X|`.
    pub fn disjoint_union(&self, other: &FiniteGSet) -> Self {
        let action = self
            .action
            .iter()
            .zip(&other.action)
            .map(|(a, b)| a.iter().copied().chain(b.iter().map(|y| y + self.size)).collect())
            .collect();
        FiniteGSet { size: self.size + other.size, action }
    }

    /// Permutations, identity acts trivially, and `(gh)·x = g·(h·x)`.
    pub fn validate(&self, d: &GaloisDatum) -> Result<()> {
        if self.action.len() != d.order() {
            return Err(Error::InvalidAction(format!(
                "{} permutations for a group of order {}",
                self.action.len(),
                d.order()
            )));
        }
        for (g, perm) in self.action.iter().enumerate() {
            let mut seen = vec![false; self.size];
            if perm.len() != self.size {
                return Err(Error::InvalidAction(format!("permutation {g} has the wrong length")));
            }
            for &x in perm {
                if x >= self.size || seen[x] {
                    return Err(Error::InvalidAction(format!("entry {g} is not a permutation")));
                }
                seen[x] = true;
            }
        }
        if self.action[d.identity()].iter().enumerate().any(|(i, &x)| i != x) {
            return Err(Error::InvalidAction("identity acts nontrivially".into()));
        }
        for g in 0..d.order() {
            for h in 0..d.order() {
                let gh = d.compose(g, h);
                for x in 0..self.size {
                    if self.action[gh][x] != self.action[g][self.action[h][x]] {
                        return Err(Error::InvalidAction(format!("(σ_{g}σ_{h})·{x} ≠ σ_{g}·(σ_{h}·{x})")));
                    }
                }
            }
        }
        Ok(())
    }
}

fn left_cosets(d: &GaloisDatum, h: &[usize]) -> Vec<Vec<usize>> {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    for g in 0..d.order() {
        if cosets.iter().any(|c| c.contains(&g)) {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&x| d.compose(g, x)).collect();
        c.sort();
        cosets.push(c);
    }
    cosets
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    /// Points in increasing order; `points[0]` is the representative.
    pub points: Vec<usize>,
    /// Stabilizer of the representative, sorted.
    pub stabilizer: Vec<usize>,
    /// `coset_reps[i]` is the smallest `g` with `g·points[0] = points[i]`.
    pub coset_reps: Vec<usize>,
}

impl Orbit {
    pub fn rep(&self) -> usize {
        self.points[0]
    }

    /// Index within the orbit and the element moving the representative there.
    pub fn locate(&self, x: usize) -> Option<(usize, usize)> {
        self.points.iter().position(|&p| p == x).map(|i| (i, self.coset_reps[i]))
    }
}

/// Orbits in order of their smallest point.
pub fn orbits_and_stabilizers(d: &GaloisDatum, x: &FiniteGSet) -> Result<Vec<Orbit>> {
    x.validate(d)?;
    let mut seen = vec![false; x.size];
    let mut out = Vec::new();
    for start in 0..x.size {
        if seen[start] {
            continue;
        }
        let mut points: Vec<usize> = (0..d.order()).map(|g| x.action[g][start]).collect();
        points.sort();
        points.dedup();
        for &p in &points {
            seen[p] = true;
        }
        let stabilizer: Vec<usize> = (0..d.order()).filter(|&g| x.action[g][start] == start).collect();
        let coset_reps = points
            .iter()
            .map(|&p| (0..d.order()).find(|&g| x.action[g][start] == p).expect("orbit"))
            .collect();
        out.push(Orbit { points, stabilizer, coset_reps });
    }
    Ok(out)
}

/// `L^H` with its field structure and inclusion into `L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedField {
    pub subgroup: Vec<usize>,
    pub space: Subspace,
    /// Field structure on `L^H` in the RREF basis of `space`.
    pub datum: FieldDatum,
    /// `L^H → L`.
    pub embedding: Matrix,
}

impl FixedField {
    pub fn algebra(&self) -> &ArtinAlgebra {
        &self.datum.as_algebra
    }

    pub fn degree(&self) -> usize {
        self.space.dim()
    }

    /// Coordinates (in `L^H`) of the columns of an `L`-valued matrix.
    pub fn coordinates(&self, m: &Matrix) -> Option<Matrix> {
        self.space.coordinates_of_columns(m)
    }
}

/// `L^H = ∩_{h ∈ H} ker(σ_h − 1)`, checked to be a subfield.
pub fn fixed_field(d: &GaloisDatum, h: &[usize], cfg: &FactorConfig) -> Result<FixedField> {
    d.check_subgroup(h)?;
    let space = d.fixed_space(h);
    if !d.field().is_subalgebra(&space) {
        return Err(Error::Internal("fixed space is not a subalgebra".into()));
    }
    let (alg, embedding) = d.field().subalgebra(&space)?;
    let datum = field_datum(&alg, cfg)?;
    let mut subgroup = h.to_vec();
    subgroup.sort();
    Ok(FixedField { subgroup, space, datum, embedding })
}

/// Field structure of an algebra that is a field (error otherwise); the
/// algebra itself is kept as `as_algebra`.
pub fn field_datum(a: &ArtinAlgebra, cfg: &FactorConfig) -> Result<FieldDatum> {
    let dec = local_decomposition(a, cfg)?;
    if dec.components.len() != 1 || !dec.components[0].radical.is_zero() {
        return Err(Error::Invalid("algebra is not a field".into()));
    }
    let c = &dec.components[0];
    // radical zero: the residue map is the identity
    let prim = c.embedding.mul_vec(&c.residue_lift);
    Ok(FieldDatum { as_algebra: a.clone(), primitive_element: prim, minimal_poly: c.residue.minimal_poly.clone() })
}

/// Every equivariant map `X → Y`, in lexicographic order.
pub fn equivariant_maps(d: &GaloisDatum, x: &FiniteGSet, y: &FiniteGSet) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let total = (y.size as u64).checked_pow(x.size as u32).unwrap_or(u64::MAX);
    if y.size == 0 {
        if x.size == 0 {
            out.push(vec![]);
        }
        return out;
    }
    for idx in 0..total {
        let mut rem = idx;
        let mut f = vec![0; x.size];
        for slot in f.iter_mut().rev() {
            *slot = (rem % y.size as u64) as usize;
            rem /= y.size as u64;
        }
        if is_equivariant(d, x, y, &f) {
            out.push(f);
        }
    }
    out
}

pub fn is_equivariant(d: &GaloisDatum, x: &FiniteGSet, y: &FiniteGSet, f: &[usize]) -> bool {
    f.len() == x.size
        && (0..d.order()).all(|g| (0..x.size).all(|p| f[x.action[g][p]] == y.action[g][f[p]]))
}

#[cfg(test)]
mod tests;
