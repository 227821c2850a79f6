//! Univariate factorization over finite fields (squarefree, distinct-degree,
//! Berlekamp / Cantor-Zassenhaus splitting); ℚ is delegated to `zassenhaus`.

use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{Elem, Field, Poly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorConfig {
    /// Largest squarefree degree handed to Zassenhaus over ℚ.
    pub degree_cap: usize,
    /// Seed for randomized equal-degree splitting.
    pub seed: u64,
    /// Splitting is exhaustive (deterministic Berlekamp) when `q` is at most this.
    pub exhaustive_limit: u64,
}

impl Default for FactorConfig {
    fn default() -> Self {
        FactorConfig { degree_cap: 16, seed: 0x5eed, exhaustive_limit: 256 }
    }
}

/// `f = unit · Π factor^multiplicity`, factors monic irreducible and sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    pub factors: Vec<(Poly, usize)>,
}

impl Factorization {
    /// Multiplies everything back together.
    pub fn expand(&self, field: &Field) -> Poly {
        let mut acc = Poly::constant(field, self.unit.clone());
        for (f, m) in &self.factors {
            acc = acc.mul(&f.pow(*m as u64));
        }
        acc
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl Poly {
    /// Complete factorization into monic irreducibles.
    pub fn factor(&self, config: &FactorConfig) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::Invalid("cannot factor the zero polynomial".into()));
        }
        let k = self.field().clone();
        let unit = self.lead();
        let f = self.monic();
        let mut factors = if k.is_finite() {
            factor_finite(&f, config)
        } else {
            super::zassenhaus::factor_rational(&f, config)?
        };
        factors.sort_by_key(|a| a.0.sort_key());
        // merge repeats (possible when squarefree parts share nothing, but be safe)
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (g, m) in factors {
            match merged.last_mut() {
                Some((h, n)) if *h == g => *n += m,
                _ => merged.push((g, m)),
            }
        }
        Ok(Factorization { unit, factors: merged })
    }

    pub fn is_irreducible(&self, config: &FactorConfig) -> Result<bool> {
        if self.deg() == 0 {
            return Ok(false);
        }
        Ok(self.factor(config)?.is_irreducible())
    }

    /// Roots in the coefficient field, ascending, without multiplicity.
    pub fn roots(&self, config: &FactorConfig) -> Result<Vec<Elem>> {
        let k = self.field();
        let mut out: Vec<Elem> = self
            .factor(config)?
            .factors
            .iter()
            .filter(|(g, _)| g.deg() == 1)
            .map(|(g, _)| k.neg(&g.coeff(0)))
            .collect();
        out.sort();
        Ok(out)
    }
}

/// Squarefree decomposition of a monic polynomial over a finite field.
pub(crate) fn squarefree_finite(f: &Poly) -> Vec<(Poly, usize)> {
    let k = f.field();
    let p = k.characteristic() as usize;
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    let mut c = f.gcd(&fp);
    let mut w = f.exact_div(&c);
    let mut i = 1;
    while !w.is_one() {
        let y = w.gcd(&c);
        let fac = w.exact_div(&y);
        if !fac.is_one() {
            out.push((fac.monic(), i));
        }
        w = y;
        c = c.exact_div(&w);
        i += 1;
    }
    if !c.is_one() {
        let root = c.pth_root().monic();
        for (g, m) in squarefree_finite(&root) {
            out.push((g, m * p));
        }
    }
    out
}

/// Distinct-degree factorization of a monic squarefree polynomial.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let k = f.field();
    let x = Poly::x(k);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest).unwrap();
    let mut d = 1;
    while rest.deg() >= 2 * d {
        h = h.frobenius_mod(&rest);
        let g = h.sub(&x).gcd(&rest);
        if !g.is_one() {
            rest = rest.exact_div(&g);
            h = h.rem(&rest).unwrap();
            out.push((g, d));
        }
        d += 1;
    }
    if rest.deg() > 0 {
        let dd = rest.deg();
        out.push((rest, dd));
    }
    out
}

/// Berlekamp subalgebra basis: polynomials `v` with `v^q ≡ v (mod f)`.
fn berlekamp_basis(f: &Poly) -> Vec<Poly> {
    let k = f.field();
    let n = f.deg();
    let xq = Poly::x(k).frobenius_mod(f);
    // column j of Q - I holds x^{qj} mod f minus e_j
    let mut m = Matrix::zeros(k, n, n);
    let mut pw = Poly::one(k);
    for j in 0..n {
        for i in 0..n {
            m.set(i, j, pw.coeff(i));
        }
        let d = k.sub(m.get(j, j), &k.one());
        m.set(j, j, d);
        pw = pw.mulmod(&xq, f);
    }
    m.kernel()
        .basis_rows()
        .into_iter()
        .map(|row| Poly::new(k, row))
        .collect()
}

/// Splits a monic squarefree `f` whose irreducible factors all have degree `d`.
fn equal_degree(f: &Poly, d: usize, config: &FactorConfig, rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let k = f.field();
    if f.deg() == d {
        return vec![f.clone()];
    }
    let q = k.order().unwrap_or(u128::MAX);
    if q <= config.exhaustive_limit as u128 {
        let elems = k.elements(q).unwrap();
        let mut parts = vec![f.clone()];
        for v in berlekamp_basis(f) {
            if v.deg() == 0 {
                continue;
            }
            let mut next = Vec::new();
            for u in parts {
                if u.deg() == d {
                    next.push(u);
                    continue;
                }
                let mut rem = u.clone();
                for c in &elems {
                    let g = rem.gcd(&v.sub(&Poly::constant(k, c.clone())));
                    if !g.is_one() && g.deg() < rem.deg() {
                        rem = rem.exact_div(&g);
                        next.push(g);
                    } else if g.deg() == rem.deg() {
                        break;
                    }
                    if rem.is_one() {
                        break;
                    }
                }
                if !rem.is_one() {
                    next.push(rem);
                }
            }
            parts = next;
            if parts.iter().all(|u| u.deg() == d) {
                break;
            }
        }
        return parts;
    }
    // Cantor-Zassenhaus with a seeded RNG
    let p = k.characteristic();
    let qd = num_traits::pow(BigUint::from(q), d);
    loop {
        let n = f.deg();
        let a = Poly::new(k, (0..n).map(|_| k.random(rng)).collect());
        if a.deg() == 0 {
            continue;
        }
        let b = if p == 2 {
            // trace of a over F_2 along F_{q^d}
            let steps = k.prime_degree() * d;
            let mut t = a.rem(f).unwrap();
            let mut acc = t.clone();
            for _ in 1..steps {
                t = t.mulmod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            let e = (&qd - 1u32) / 2u32;
            a.powmod_big(&e, f).sub(&Poly::one(k))
        };
        let g = b.gcd(f);
        if !g.is_one() && g.deg() < f.deg() {
            let h = f.exact_div(&g);
            let mut out = equal_degree(&g, d, config, rng);
            out.extend(equal_degree(&h, d, config, rng));
            return out;
        }
    }
}

pub(crate) fn factor_finite(f: &Poly, config: &FactorConfig) -> Vec<(Poly, usize)> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut out = Vec::new();
    for (g, m) in squarefree_finite(f) {
        for (h, d) in distinct_degree(&g) {
            for irr in equal_degree(&h, d, config, &mut rng) {
                out.push((irr.monic(), m));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn f2() -> Field {
        Field::prime(2).unwrap()
    }

    #[test]
    fn small_examples() {
        let k = f2();
        let cfg = FactorConfig::default();
        let fac = Poly::from_i64s(&k, &[0, 1, 1]).factor(&cfg).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_i64s(&k, &[0, 1]), 1), (Poly::from_i64s(&k, &[1, 1]), 1)]
        );
        let fac = Poly::from_i64s(&k, &[1, 0, 1, 0, 1]).factor(&cfg).unwrap();
        assert_eq!(fac.factors, vec![(Poly::from_i64s(&k, &[1, 1, 1]), 2)]);
    }

    #[test]
    fn quartic_square_against_monic_quadratics() {
        // the only monic quadratic whose square is x^4+x^2+1 over F_2
        let k = f2();
        let target = Poly::from_i64s(&k, &[1, 0, 1, 0, 1]);
        let hits: Vec<_> = (0..4)
            .map(|i| Poly::from_i64s(&k, &[i & 1, (i >> 1) & 1, 1]))
            .filter(|q| q.mul(q) == target)
            .collect();
        assert_eq!(hits, vec![Poly::from_i64s(&k, &[1, 1, 1])]);
    }

    fn random_poly(k: &Field, rng: &mut ChaCha8Rng, max_deg: usize) -> Poly {
        loop {
            let d = rng.gen_range(1..=max_deg);
            let p = Poly::new(k, (0..=d).map(|_| k.random(rng)).collect());
            if !p.is_zero() {
                return p;
            }
        }
    }

    #[test]
    fn random_round_trip_and_irreducibility() {
        let cfg = FactorConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let fields = [
            f2(),
            Field::prime(3).unwrap(),
            Field::prime(1_000_003).unwrap(),
            Field::extension(2, vec![1, 1, 1]).unwrap(),
            Field::extension(3, vec![1, 0, 1]).unwrap(),
        ];
        for k in &fields {
            for _ in 0..120 {
                let f = random_poly(k, &mut rng, 8);
                let fac = f.factor(&cfg).unwrap();
                assert_eq!(fac.expand(k), f, "over {k}");
                for (g, _) in &fac.factors {
                    assert!(g.is_monic());
                    assert_eq!(g.factor(&cfg).unwrap().factors, vec![(g.clone(), 1)]);
                }
            }
        }
    }

    #[test]
    fn repeated_roots_in_char_p() {
        let k = Field::prime(3).unwrap();
        // (x+1)^3 (x^2+1)^2 = (x^3+1)(x^2+1)^2
        let a = Poly::from_i64s(&k, &[1, 1]).pow(3);
        let b = Poly::from_i64s(&k, &[1, 0, 1]).pow(2);
        let fac = a.mul(&b).factor(&FactorConfig::default()).unwrap();
        assert_eq!(
            fac.factors,
            vec![(Poly::from_i64s(&k, &[1, 1]), 3), (Poly::from_i64s(&k, &[1, 0, 1]), 2)]
        );
    }

    #[test]
    fn randomized_and_exhaustive_splitting_agree() {
        let k = Field::prime(7).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let exhaustive = FactorConfig::default();
        let randomized = FactorConfig { exhaustive_limit: 0, ..FactorConfig::default() };
        for _ in 0..60 {
            let f = random_poly(&k, &mut rng, 8);
            assert_eq!(f.factor(&exhaustive).unwrap(), f.factor(&randomized).unwrap());
        }
    }
}
