use super::{FieldDatum, LocalComponent};
use crate::coalg::{AlgebraMorphism, ArtinAlgebra};
use crate::error::{Error, Result};
use crate::field::{Elem, Poly};
use crate::linalg::{Matrix, Subspace};

/// Coefficient field `K ⊆ A` of a local algebra with `A = K ⊕ m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WedderburnSplitting {
    /// `K` as `k[t]/(p)`, primitive element the class of `t`.
    pub field: FieldDatum,
    /// The root of `p` in `A` generating `K`.
    pub root: Vec<Elem>,
    /// `K → A`, columns `1, x, …, x^{d−1}`.
    pub embedding: Matrix,
    /// `A → K`: projection along `m` followed by `K`-coordinates.
    pub retract: Matrix,
    pub newton_steps: usize,
}

/// Newton iteration `x ← x − p(x)/p′(x)` from `start` until `p(x) = 0`.
///
/// Converges when `p(start)` is nilpotent and `p′(start)` is a unit; the
/// number of steps is at most `⌈log₂ r⌉ + 1` for nilpotency index `r`.
pub fn hensel_lift(a: &ArtinAlgebra, p: &Poly, start: &[Elem]) -> Result<(Vec<Elem>, usize)> {
    let dp = p.derivative();
    let mut x = start.to_vec();
    let mut steps = 0;
    let max_steps = 2 + usize::BITS as usize - a.dim().leading_zeros() as usize;
    loop {
        let px = a.eval_poly(p, &x);
        if a.is_zero_elem(&px) {
            return Ok((x, steps));
        }
        if steps >= max_steps {
            return Err(Error::Internal("Newton iteration did not converge".into()));
        }
        let inv = a.inverse(&a.eval_poly(&dp, &x)).ok_or(Error::NonSeparableResidue)?;
        x = a.sub(&x, &a.mul(&px, &inv));
        steps += 1;
    }
}

/// Splitting of a local component from its stored residue data.
pub fn wedderburn_splitting(c: &LocalComponent) -> Result<WedderburnSplitting> {
    wedderburn_splitting_from(&c.algebra, &c.radical, &c.residue.minimal_poly, &c.residue_lift)
}

/// Splitting of the local algebra `a` with maximal ideal `radical`, lifting a
/// root of the separable `p` from `start`.
pub fn wedderburn_splitting_from(
    a: &ArtinAlgebra,
    radical: &Subspace,
    p: &Poly,
    start: &[Elem],
) -> Result<WedderburnSplitting> {
    let k = a.field();
    let n = a.dim();
    if !p.gcd(&p.derivative()).is_one() {
        return Err(Error::NonSeparableResidue);
    }
    let (root, newton_steps) = hensel_lift(a, p, start)?;
    let d = p.deg();
    let mut powers = Vec::with_capacity(d);
    let mut cur = a.unit().to_vec();
    for _ in 0..d {
        powers.push(cur.clone());
        cur = a.mul(&cur, &root);
    }
    let embedding = Matrix::from_columns(k, n, &powers);
    // A = K ⊕ m: invert [E | M] and keep the first d rows
    let full = embedding.hstack(&radical.inclusion());
    let inv = full
        .inverse()
        .ok_or_else(|| Error::Internal("K and m do not span the algebra".into()))?;
    let retract = inv.block(0, d, 0, n);
    let field = FieldDatum::from_irreducible(p)?;
    let rho = AlgebraMorphism::new(a, &field.as_algebra, retract.clone())?;
    let iota = AlgebraMorphism::new(&field.as_algebra, a, embedding.clone())?;
    if !rho.validate().is_valid() || !iota.validate().is_valid() {
        return Err(Error::Internal("Wedderburn maps are not algebra maps".into()));
    }
    Ok(WedderburnSplitting { field, root, embedding, retract, newton_steps })
}
