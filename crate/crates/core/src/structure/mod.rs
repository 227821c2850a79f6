//! Structure theory of finite-dimensional commutative algebras and, by
//! duality, of cocommutative coalgebras: radicals, local decomposition,
//! residue fields, Wedderburn splitting, étale parts and group-likes.

mod etale;
mod wedderburn;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coalg::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::field::{minimal_polynomial, Elem, FactorConfig, Field, Poly};
use crate::linalg::{Matrix, Subspace};

pub use etale::{
    etale_part, gp_adjunction_checks, gp_unit_checks, group_likes, irreducible_components,
    naturality_suite, EtaleData, GroupLikeSet, IrreducibleComponents,
};
pub use wedderburn::{hensel_lift, wedderburn_splitting, wedderburn_splitting_from, WedderburnSplitting};

/// Nilradical of a commutative algebra.
///
/// Over ℚ this is the kernel of the trace form `(a, b) ↦ tr(L_{ab})`. Over a
/// finite field with `q` elements it is the kernel of `a ↦ a^{q^s}` with
/// `q^s ≥ dim A`, a linear map whose kernel is exactly the nilpotents. The
/// trace form alone is not enough in positive characteristic: it vanishes
/// identically on `𝔽_2[x]/(x²)`.
pub fn radical(a: &ArtinAlgebra) -> Subspace {
    let k = a.field();
    let n = a.dim();
    if n == 0 {
        return Subspace::zero(k, 0);
    }
    if !k.is_finite() {
        return trace_form(a).kernel();
    }
    let p = k.characteristic();
    let d = k.prime_degree();
    // smallest s with q^s ≥ n, then t = d·s p-th powers
    let mut s = 1u32;
    while (p as u128).pow(d as u32 * s) < n as u128 {
        s += 1;
    }
    let t = d * s as usize;
    let cols: Vec<Vec<Elem>> = (0..n)
        .map(|i| {
            let mut x = a.basis_vector(i);
            for _ in 0..t {
                x = a.pow(&x, p);
            }
            x
        })
        .collect();
    Matrix::from_columns(k, n, &cols).kernel()
}

/// Gram matrix of the trace form in the standard basis.
pub fn trace_form(a: &ArtinAlgebra) -> Matrix {
    let n = a.dim();
    let basis: Vec<Vec<Elem>> = (0..n).map(|i| a.basis_vector(i)).collect();
    Matrix::from_fn(a.field(), n, n, |i, j| a.left_mult(&a.mul(&basis[i], &basis[j])).trace())
}

/// A finite field extension of the base, presented as an algebra with a
/// primitive element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldDatum {
    pub as_algebra: ArtinAlgebra,
    pub primitive_element: Vec<Elem>,
    pub minimal_poly: Poly,
}

impl FieldDatum {
    pub fn degree(&self) -> usize {
        self.as_algebra.dim()
    }

    /// The base field itself as a one-dimensional algebra.
    pub fn base(field: &Field) -> Self {
        FieldDatum {
            as_algebra: ArtinAlgebra::split(field, 1),
            primitive_element: vec![field.one()],
            minimal_poly: Poly::from_i64s(field, &[-1, 1]),
        }
    }

    /// `k[t]/(p)` for an irreducible `p`, primitive element the class of `t`.
    pub fn from_irreducible(p: &Poly) -> Result<Self> {
        let k = p.field();
        let alg = ArtinAlgebra::quotient_ring(p)?;
        let prim = if p.deg() == 1 {
            vec![k.neg(&p.monic().coeff(0))]
        } else {
            alg.basis_vector(1)
        };
        Ok(FieldDatum { as_algebra: alg, primitive_element: prim, minimal_poly: p.monic() })
    }

    /// Radical zero, minimal polynomial of the primitive element irreducible
    /// of full degree (which forces the algebra to be a field).
    pub fn verify(&self, cfg: &FactorConfig) -> Result<bool> {
        let a = &self.as_algebra;
        if !a.validate().is_valid() || !radical(a).is_zero() {
            return Ok(false);
        }
        let m = minimal_polynomial(&a.left_mult(&self.primitive_element))?;
        Ok(m == self.minimal_poly && m.deg() == a.dim() && m.is_irreducible(cfg)?)
    }
}

/// One local factor `A_i = e_i A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalComponent {
    /// `e_i` in the coordinates of the ambient algebra.
    pub idempotent: Vec<Elem>,
    /// `e_i A` with unit `e_i`, in the RREF basis of `e_i A`.
    pub algebra: ArtinAlgebra,
    /// `A_i → A` (not unital).
    pub embedding: Matrix,
    /// `A → A_i`, `x ↦ e_i x`.
    pub projection: Matrix,
    /// Maximal ideal `m_i` in the coordinates of `A_i`.
    pub radical: Subspace,
    /// Smallest `r` with `m_i^r = 0`.
    pub nilpotency: usize,
    pub residue: FieldDatum,
    /// `A_i → A_i/m_i`.
    pub residue_map: Matrix,
    /// Element of `A_i` mapping onto the residue primitive element.
    pub residue_lift: Vec<Elem>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalDecomposition {
    pub algebra: ArtinAlgebra,
    pub components: Vec<LocalComponent>,
}

impl LocalDecomposition {
    pub fn idempotents(&self) -> Vec<Vec<Elem>> {
        self.components.iter().map(|c| c.idempotent.clone()).collect()
    }

    /// Every residue field equals the base field.
    pub fn is_split(&self) -> bool {
        self.components.iter().all(|c| c.residue.degree() == 1)
    }

    /// Orthogonality, completeness, locality, nilpotency and the isomorphism
    /// `A ≅ Π A_i` given by the stacked projections.
    pub fn verify(&self, cfg: &FactorConfig) -> Result<Vec<String>> {
        let a = &self.algebra;
        let k = a.field();
        let mut problems = Vec::new();
        let es = self.idempotents();
        for (i, ei) in es.iter().enumerate() {
            for (j, ej) in es.iter().enumerate() {
                let prod = a.mul(ei, ej);
                let want = if i == j { ei.clone() } else { a.zero_elem() };
                if prod != want {
                    problems.push(format!("e_{i} e_{j} wrong"));
                }
            }
        }
        let total = es.iter().fold(a.zero_elem(), |acc, e| a.add(&acc, e));
        if total != a.unit() {
            problems.push("idempotents do not sum to 1".into());
        }
        let dims: usize = self.components.iter().map(|c| c.algebra.dim()).sum();
        if dims != a.dim() {
            problems.push(format!("component dimensions sum to {dims}, not {}", a.dim()));
        }
        if a.dim() > 0 {
            let mut stacked = Matrix::zeros(k, 0, a.dim());
            for c in &self.components {
                stacked = stacked.vstack(&c.projection);
            }
            if stacked.inverse().is_none() {
                problems.push("stacked projections are not invertible".into());
            }
        }
        for (i, c) in self.components.iter().enumerate() {
            let alg = &c.algebra;
            if !alg.validate().is_valid() {
                problems.push(format!("component {i} is not an algebra"));
            }
            if c.projection.mul(&c.embedding) != Matrix::identity(k, alg.dim()) {
                problems.push(format!("component {i}: projection ∘ embedding ≠ id"));
            }
            if c.embedding.mul_vec(alg.unit()) != c.idempotent {
                problems.push(format!("component {i}: unit is not e_{i}"));
            }
            // the product of `nilpotency` radical elements vanishes
            if !ideal_power(alg, &c.radical, c.nilpotency).is_zero() {
                problems.push(format!("component {i}: m^{} ≠ 0", c.nilpotency));
            }
            if c.radical != radical(alg) {
                problems.push(format!("component {i}: stored radical differs"));
            }
            if c.residue.degree() + c.radical.dim() != alg.dim() || !c.residue.verify(cfg)? {
                problems.push(format!("component {i}: residue is not a field of the right degree"));
            }
        }
        Ok(problems)
    }
}

/// `I^r` for an ideal `I`.
pub fn ideal_power(a: &ArtinAlgebra, ideal: &Subspace, r: usize) -> Subspace {
    let k = a.field();
    if r == 0 {
        return Subspace::full(k, a.dim());
    }
    let gens = ideal.basis_rows();
    let mut cur = ideal.clone();
    for _ in 1..r {
        let rows: Vec<Vec<Elem>> = cur
            .basis_rows()
            .iter()
            .flat_map(|x| gens.iter().map(move |y| (x, y)))
            .map(|(x, y)| a.mul(x, y))
            .collect();
        cur = Subspace::from_rows(k, a.dim(), rows);
    }
    cur
}

enum Probe {
    /// Image of `lift` in `A/rad` has a reducible minimal polynomial.
    Split { lift: Vec<Elem> },
    /// `A/rad` is a field generated by the image of `lift`.
    Primitive { lift: Vec<Elem>, image: Vec<Elem>, minpoly: Poly },
}

const RANDOM_PROBES: usize = 64;
const EXHAUSTIVE_LIMIT: u128 = 100_000;

/// Looks for an element of `A` whose image in `B = A/rad` either splits `B`
/// or generates it as a field. Candidates: basis vectors, then seeded random
/// combinations, then (finite fields only) every element of `B`.
fn probe(a: &ArtinAlgebra, b: &ArtinAlgebra, pi: &Matrix, cfg: &FactorConfig) -> Result<Probe> {
    let k = a.field();
    let n = a.dim();
    let test = |lift: Vec<Elem>| -> Result<Option<Probe>> {
        let image = pi.mul_vec(&lift);
        let m = minimal_polynomial(&b.left_mult(&image))?;
        let f = m.factor(cfg)?;
        if f.factors.len() >= 2 {
            return Ok(Some(Probe::Split { lift }));
        }
        if m.deg() == b.dim() {
            return Ok(Some(Probe::Primitive { lift, image, minpoly: m }));
        }
        Ok(None)
    };
    for i in 0..n {
        if let Some(p) = test(a.basis_vector(i))? {
            return Ok(p);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    for _ in 0..RANDOM_PROBES {
        let v: Vec<Elem> = (0..n)
            .map(|_| if k.is_finite() { k.random(&mut rng) } else { k.from_i64(rng.gen_range(-3..=3)) })
            .collect();
        if let Some(p) = test(v)? {
            return Ok(p);
        }
    }
    if let Some(order) = k.order() {
        if order.checked_pow(b.dim() as u32).is_some_and(|total| total <= EXHAUSTIVE_LIMIT) {
            let section = Matrix::selection(k, n, &section_columns(a, pi));
            let total = order.pow(b.dim() as u32) as u64;
            for idx in 0..total {
                let mut rem = idx;
                let v: Vec<Elem> = (0..b.dim())
                    .map(|_| {
                        let e = k.element_by_index(rem % order as u64);
                        rem /= order as u64;
                        e
                    })
                    .collect();
                if let Some(p) = test(section.mul_vec(&v))? {
                    return Ok(p);
                }
            }
        }
    }
    Err(Error::Internal("no splitting or primitive element found".into()))
}

/// Columns of `A` that `pi` maps onto the standard basis of the quotient.
fn section_columns(a: &ArtinAlgebra, pi: &Matrix) -> Vec<usize> {
    let k = a.field();
    (0..pi.rows())
        .map(|r| {
            (0..a.dim())
                .find(|&c| {
                    (0..pi.rows()).all(|rr| {
                        let v = pi.get(rr, c);
                        if rr == r { k.is_one(v) } else { k.is_zero(v) }
                    })
                })
                .expect("quotient projection contains a unit column per kept coordinate")
        })
        .collect()
}

/// Primitive idempotents of `a` (in its coordinates), unsorted.
fn primitive_idempotents(a: &ArtinAlgebra, cfg: &FactorConfig) -> Result<Vec<Vec<Elem>>> {
    if a.dim() == 0 {
        return Ok(vec![]);
    }
    let rad = radical(a);
    let (b, pi) = a.quotient(&rad);
    let lift = match probe(a, &b, &pi, cfg)? {
        Probe::Primitive { .. } => return Ok(vec![a.unit().to_vec()]),
        Probe::Split { lift } => lift,
    };
    let mut out = Vec::new();
    for e in crt_idempotents(a, &lift, cfg)? {
        let (corner, incl, _) = a.corner(&e);
        for f in primitive_idempotents(&corner, cfg)? {
            out.push(incl.mul_vec(&f));
        }
    }
    Ok(out)
}

/// Idempotents of `k[x] ⊆ A` attached to the coprime prime-power factors of
/// the minimal polynomial of `x`.
fn crt_idempotents(a: &ArtinAlgebra, x: &[Elem], cfg: &FactorConfig) -> Result<Vec<Vec<Elem>>> {
    let m = minimal_polynomial(&a.left_mult(x))?;
    let f = m.factor(cfg)?;
    let blocks: Vec<Poly> = f.factors.iter().map(|(g, e)| g.pow(*e as u64)).collect();
    let mut out = Vec::new();
    for g in &blocks {
        let h = m.exact_div(g);
        let (d, s, _) = h.ext_gcd(g);
        if !d.is_one() {
            return Err(Error::Internal("CRT blocks are not coprime".into()));
        }
        let poly = s.mul(&h).rem(&m)?;
        out.push(a.eval_poly(&poly, x));
    }
    Ok(out)
}

/// Decomposition of `A` into local factors, sorted by `(dim, idempotent)`.
pub fn local_decomposition(a: &ArtinAlgebra, cfg: &FactorConfig) -> Result<LocalDecomposition> {
    let mut idems = primitive_idempotents(a, cfg)?;
    let mut keyed: Vec<(usize, Vec<Elem>)> = idems
        .drain(..)
        .map(|e| (a.left_mult(&e).rank(), e))
        .collect();
    keyed.sort();
    let components = keyed
        .into_iter()
        .map(|(_, e)| local_component(a, e, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(LocalDecomposition { algebra: a.clone(), components })
}

fn local_component(a: &ArtinAlgebra, e: Vec<Elem>, cfg: &FactorConfig) -> Result<LocalComponent> {
    let (alg, embedding, projection) = a.corner(&e);
    let rad = radical(&alg);
    let (b, pi) = alg.quotient(&rad);
    let (lift, image, minpoly) = match probe(&alg, &b, &pi, cfg)? {
        Probe::Primitive { lift, image, minpoly } => (lift, image, minpoly),
        Probe::Split { .. } => return Err(Error::Internal("component is not local".into())),
    };
    let mut nilpotency = 1;
    while !ideal_power(&alg, &rad, nilpotency).is_zero() {
        nilpotency += 1;
    }
    Ok(LocalComponent {
        idempotent: e,
        algebra: alg,
        embedding,
        projection,
        radical: rad,
        nilpotency,
        residue: FieldDatum { as_algebra: b, primitive_element: image, minimal_poly: minpoly },
        residue_map: pi,
        residue_lift: lift,
    })
}

#[cfg(test)]
mod tests;
