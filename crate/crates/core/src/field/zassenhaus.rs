//! Factorization over ℚ: primitive part, Yun squarefree decomposition,
//! small rational roots, then Zassenhaus (good prime, multifactor quadratic
//! Hensel lifting, subset recombination with exact trial division).

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::{primes, Elem, FactorConfig, Field, Poly};
use crate::error::{Error, Result};

type ZPoly = Vec<BigInt>;

fn trim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn zadd(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) + b.get(i).unwrap_or(&zero)).collect())
}

fn zsub(a: &[BigInt], b: &[BigInt]) -> ZPoly {
    let n = a.len().max(b.len());
    let zero = BigInt::zero();
    trim((0..n).map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero)).collect())
}

fn zmod(a: &[BigInt], m: &BigInt) -> ZPoly {
    trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

/// Symmetric residues in `(-m/2, m/2]`.
fn zsym(a: &[BigInt], m: &BigInt) -> ZPoly {
    let half = m / 2;
    trim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Division by a monic polynomial modulo `m`.
fn zdivrem_monic(a: &[BigInt], b: &[BigInt], m: &BigInt) -> (ZPoly, ZPoly) {
    let mut r = zmod(a, m);
    let bn = b.len();
    if r.len() < bn {
        return (vec![], r);
    }
    let mut q = vec![BigInt::zero(); r.len() - bn + 1];
    for shift in (0..q.len()).rev() {
        let c = r[shift + bn - 1].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (i, bv) in b.iter().enumerate() {
            r[shift + i] = (&r[shift + i] - &c * bv).mod_floor(m);
        }
        q[shift] = c;
    }
    r.truncate(bn - 1);
    (trim(q), trim(r))
}

fn content(a: &[BigInt]) -> BigInt {
    a.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
}

/// Exact division in ℤ[x]; `None` if `b` does not divide `a`.
fn zexact_div(a: &[BigInt], b: &[BigInt]) -> Option<ZPoly> {
    let mut r = a.to_vec();
    let bn = b.len();
    if r.len() < bn {
        return if r.is_empty() { Some(vec![]) } else { None };
    }
    let lead = b.last().unwrap();
    let mut q = vec![BigInt::zero(); r.len() - bn + 1];
    for shift in (0..q.len()).rev() {
        let top = &r[shift + bn - 1];
        if top.is_zero() {
            continue;
        }
        let (c, rem) = top.div_rem(lead);
        if !rem.is_zero() {
            return None;
        }
        for (i, bv) in b.iter().enumerate() {
            r[shift + i] = &r[shift + i] - &c * bv;
        }
        q[shift] = c;
    }
    if r.iter().any(|c| !c.is_zero()) {
        return None;
    }
    Some(trim(q))
}

fn to_field(k: &Field, a: &[BigInt]) -> Poly {
    let p = BigInt::from(k.characteristic());
    Poly::new(k, a.iter().map(|c| Elem::Mod(c.mod_floor(&p).to_u64().unwrap())).collect())
}

fn from_field(a: &Poly) -> ZPoly {
    a.coeffs()
        .iter()
        .map(|c| match c {
            Elem::Mod(v) => BigInt::from(*v),
            _ => unreachable!("prime field expected"),
        })
        .collect()
}

/// Primitive integer polynomial with positive leading coefficient, same roots.
fn primitive_part(f: &Poly) -> ZPoly {
    let rats: Vec<BigRational> = f
        .coeffs()
        .iter()
        .map(|c| f.field().as_rational(c).unwrap().clone())
        .collect();
    let den = rats.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
    let ints: ZPoly = rats.iter().map(|r| (r * &den).to_integer()).collect();
    let mut c = content(&ints);
    if ints.last().unwrap().is_negative() {
        c = -c;
    }
    ints.iter().map(|v| v / &c).collect()
}

fn to_monic_rational(k: &Field, a: &[BigInt]) -> Poly {
    let lead = a.last().unwrap().clone();
    Poly::new(
        k,
        a.iter().map(|c| Elem::Rat(BigRational::new(c.clone(), lead.clone()))).collect(),
    )
}

/// Squarefree decomposition over ℚ (Yun) of a monic polynomial.
fn squarefree_rational(f: &Poly) -> Vec<(Poly, usize)> {
    let mut out = Vec::new();
    if f.deg() == 0 {
        return out;
    }
    let fp = f.derivative();
    let a0 = f.gcd(&fp);
    let mut b = f.exact_div(&a0);
    let c = fp.exact_div(&a0);
    let mut d = c.sub(&b.derivative());
    let mut i = 1;
    while b.deg() > 0 {
        let a = b.gcd(&d);
        b = b.exact_div(&a);
        let c = d.exact_div(&a);
        d = c.sub(&b.derivative());
        if a.deg() > 0 {
            out.push((a.monic(), i));
        }
        i += 1;
    }
    out
}

const SMALL_ROOT_BOUND: u64 = 1_000_000;

/// Peels off rational roots `±r/s` by trial when the end coefficients are small.
fn extract_rational_roots(g: ZPoly) -> (Vec<ZPoly>, ZPoly) {
    let mut linear = Vec::new();
    let mut g = g;
    loop {
        if g.len() <= 2 {
            return (linear, g);
        }
        if g[0].is_zero() {
            linear.push(vec![BigInt::zero(), BigInt::one()]);
            g.remove(0);
            continue;
        }
        let (a0, lc) = (g[0].abs().to_u64(), g.last().unwrap().abs().to_u64());
        let (Some(a0), Some(lc)) = (a0, lc) else {
            return (linear, g);
        };
        if a0 > SMALL_ROOT_BOUND || lc > SMALL_ROOT_BOUND {
            return (linear, g);
        }
        let mut found = None;
        'search: for r in primes::divisors(a0) {
            for s in primes::divisors(lc) {
                if r.gcd(&s) != 1 {
                    continue;
                }
                for sign in [1i64, -1] {
                    // candidate factor s·x - sign·r
                    let cand = vec![BigInt::from(-(sign) * r as i64), BigInt::from(s)];
                    if let Some(q) = zexact_div(&g, &cand) {
                        found = Some((cand, q));
                        break 'search;
                    }
                }
            }
        }
        match found {
            Some((cand, q)) => {
                linear.push(cand);
                g = q;
            }
            None => return (linear, g),
        }
    }
}

/// One quadratic Hensel step (lifting from modulus `m` to `m²`).
///
/// Input: `f ≡ g·h`, `s·g + t·h ≡ 1 (mod m)`, `h` monic.
fn hensel_step(
    m: &BigInt,
    f: &[BigInt],
    g: &[BigInt],
    h: &[BigInt],
    s: &[BigInt],
    t: &[BigInt],
) -> (ZPoly, ZPoly, ZPoly, ZPoly) {
    let m2 = m * m;
    let e = zmod(&zsub(f, &zmul(g, h)), &m2);
    let (q, r) = zdivrem_monic(&zmul(s, &e), h, &m2);
    let g2 = zmod(&zadd(&zadd(g, &zmul(t, &e)), &zmul(&q, g)), &m2);
    let h2 = zmod(&zadd(h, &r), &m2);
    let one = vec![BigInt::one()];
    let b = zmod(&zsub(&zadd(&zmul(s, &g2), &zmul(t, &h2)), &one), &m2);
    let (c, d) = zdivrem_monic(&zmul(s, &b), &h2, &m2);
    let s2 = zmod(&zsub(s, &d), &m2);
    let t2 = zmod(&zsub(&zsub(t, &zmul(t, &b)), &zmul(&c, &g2)), &m2);
    (g2, h2, s2, t2)
}

/// Lifts `f ≡ lc(f) · Π u_i (mod p)` to modulus `p^(2^k) = target`;
/// returns the lifted monic factors in input order.
fn multifactor_lift(
    kp: &Field,
    f: &[BigInt],
    factors: &[Poly],
    steps: u32,
) -> Vec<ZPoly> {
    let p = BigInt::from(kp.characteristic());
    let target = num_traits::pow(p.clone(), 1usize << steps);
    if factors.len() == 1 {
        // f itself, made monic modulo the target
        let lead = f.last().unwrap().mod_floor(&target);
        let inv = lead.modinv(&target).expect("lead is a unit");
        return vec![zmod(&f.iter().map(|c| c * &inv).collect::<ZPoly>(), &target)];
    }
    let half = factors.len() / 2;
    let (left, right) = factors.split_at(half);
    let lc_mod = to_field(kp, &[f.last().unwrap().clone()]).coeff(0);
    let mut g_p = Poly::constant(kp, lc_mod);
    for u in left {
        g_p = g_p.mul(u);
    }
    let mut h_p = Poly::one(kp);
    for u in right {
        h_p = h_p.mul(u);
    }
    let (one, s_p, t_p) = g_p.ext_gcd(&h_p);
    debug_assert!(one.is_one());
    let (mut g, mut h, mut s, mut t) =
        (from_field(&g_p), from_field(&h_p), from_field(&s_p), from_field(&t_p));
    let mut m = p.clone();
    for _ in 0..steps {
        (g, h, s, t) = hensel_step(&m, f, &g, &h, &s, &t);
        m = &m * &m;
    }
    let mut out = multifactor_lift(kp, &g, left, steps);
    out.extend(multifactor_lift(kp, &h, right, steps));
    out
}

fn norm2_ceil(a: &[BigInt]) -> BigInt {
    let sq: BigInt = a.iter().map(|c| c * c).sum();
    sq.sqrt() + 1
}

/// Factors a primitive squarefree integer polynomial of degree ≥ 2.
fn zassenhaus(f: &ZPoly) -> Vec<ZPoly> {
    let n = f.len() - 1;
    let lc = f.last().unwrap().clone();
    // pick among the first few good primes the one with fewest modular factors
    let mut best: Option<(Field, Vec<Poly>)> = None;
    let mut tried = 0;
    let mut cand = 3u64;
    while tried < 5 {
        cand += 2;
        if !primes::is_prime(cand) || (&lc % cand).is_zero() {
            continue;
        }
        let kp = Field::prime(cand).unwrap();
        let fp = to_field(&kp, f);
        if fp.deg() != n || !fp.gcd(&fp.derivative()).is_one() {
            continue;
        }
        tried += 1;
        let facs: Vec<Poly> = super::factor::factor_finite(&fp.monic(), &FactorConfig::default())
            .into_iter()
            .map(|(g, _)| g)
            .collect();
        if best.as_ref().is_none_or(|(_, b)| facs.len() < b.len()) {
            best = Some((kp, facs));
        }
        if best.as_ref().unwrap().1.len() == 1 {
            break;
        }
    }
    let (kp, mut modular) = best.expect("a good prime exists");
    if modular.len() == 1 {
        return vec![f.clone()];
    }
    modular.sort_by_key(|a| a.sort_key());
    // coefficients of lc·(monic factor) are bounded by |lc|·2^n·‖f‖₂
    let bound = lc.abs() * num_traits::pow(BigInt::from(2), n) * norm2_ceil(f);
    let p = BigInt::from(kp.characteristic());
    let mut steps = 0u32;
    let mut modulus = p.clone();
    while modulus <= &bound * 2 {
        modulus = &modulus * &modulus;
        steps += 1;
    }
    let lifted = multifactor_lift(&kp, f, &modular, steps);

    let mut remaining: Vec<usize> = (0..lifted.len()).collect();
    let mut current = f.clone();
    let mut out = Vec::new();
    let mut size = 1;
    while 2 * size <= remaining.len() {
        let mut found = None;
        for subset in subsets(&remaining, size) {
            let lcc = current.last().unwrap().clone();
            let mut g = vec![lcc.clone()];
            for &i in &subset {
                g = zmod(&zmul(&g, &lifted[i]), &modulus);
            }
            let g = zsym(&g, &modulus);
            let gpp = {
                let c = content(&g);
                g.iter().map(|v| v / &c).collect::<ZPoly>()
            };
            if let Some(q) = zexact_div(&current, &gpp) {
                found = Some((subset, gpp, q));
                break;
            }
        }
        match found {
            Some((subset, g, q)) => {
                remaining.retain(|i| !subset.contains(i));
                out.push(g);
                current = q;
            }
            None => size += 1,
        }
    }
    out.push(current);
    out
}

fn subsets(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    if size == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &first) in items.iter().enumerate() {
        for mut rest in subsets(&items[i + 1..], size - 1) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Factors a monic rational polynomial into monic irreducibles.
pub(crate) fn factor_rational(f: &Poly, config: &FactorConfig) -> Result<Vec<(Poly, usize)>> {
    let k = f.field().clone();
    let mut out = Vec::new();
    for (part, mult) in squarefree_rational(f) {
        let z = primitive_part(&part);
        let (linear, rest) = extract_rational_roots(z);
        for l in linear {
            out.push((to_monic_rational(&k, &l), mult));
        }
        let deg = rest.len().saturating_sub(1);
        if deg == 0 {
            continue;
        }
        if deg == 1 {
            out.push((to_monic_rational(&k, &rest), mult));
            continue;
        }
        if deg > config.degree_cap {
            return Err(Error::DegreeCapExceeded { degree: deg, cap: config.degree_cap });
        }
        for g in zassenhaus(&rest) {
            let g = if g.last().unwrap().sign() == Sign::Minus {
                g.iter().map(|c| -c).collect()
            } else {
                g
            };
            out.push((to_monic_rational(&k, &g), mult));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn q() -> Field {
        Field::rationals()
    }

    #[test]
    fn x2_minus_2_is_irreducible() {
        let f = Poly::from_i64s(&q(), &[-2, 0, 1]);
        let fac = f.factor(&FactorConfig::default()).unwrap();
        assert_eq!(fac.factors, vec![(f.clone(), 1)]);
    }

    #[test]
    fn swinnerton_dyer_like_products() {
        // (x^2-2)(x^2-3)(x^2+x+1)(3x-1)^2
        let k = q();
        let parts = [
            Poly::from_i64s(&k, &[-2, 0, 1]),
            Poly::from_i64s(&k, &[-3, 0, 1]),
            Poly::from_i64s(&k, &[1, 1, 1]),
        ];
        let lin = Poly::from_i64s(&k, &[-1, 3]);
        let mut f = lin.mul(&lin);
        for p in &parts {
            f = f.mul(p);
        }
        let fac = f.factor(&FactorConfig::default()).unwrap();
        assert_eq!(fac.expand(&k), f);
        assert_eq!(fac.factors.len(), 4);
        assert!(fac.factors.contains(&(lin.monic(), 2)));
    }

    #[test]
    fn x4_plus_1_splits_mod_every_prime() {
        // irreducible over ℚ though reducible modulo every prime: forces recombination
        let f = Poly::from_i64s(&q(), &[1, 0, 0, 0, 1]);
        assert!(f.factor(&FactorConfig::default()).unwrap().is_irreducible());
        let g = Poly::from_i64s(&q(), &[1, 0, 0, 0, 1]).mul(&Poly::from_i64s(&q(), &[-7, 0, 0, 0, 1]));
        let fac = g.factor(&FactorConfig::default()).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert_eq!(fac.expand(&q()), g);
    }

    #[test]
    fn degree_cap() {
        let f = Poly::from_i64s(&q(), &[3, 0, 0, 0, 0, 1]);
        let cfg = FactorConfig { degree_cap: 4, ..FactorConfig::default() };
        assert_eq!(f.factor(&cfg), Err(Error::DegreeCapExceeded { degree: 5, cap: 4 }));
    }

    #[test]
    fn random_products_round_trip() {
        let k = q();
        let cfg = FactorConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..150 {
            let parts = rng.gen_range(1..=3);
            let mut f = Poly::constant(&k, k.from_i64(rng.gen_range(1..5)));
            for _ in 0..parts {
                let d = rng.gen_range(1..=3);
                let mut c: Vec<i64> = (0..d).map(|_| rng.gen_range(-5..=5)).collect();
                c.push(rng.gen_range(1..=3));
                f = f.mul(&Poly::from_i64s(&k, &c));
            }
            let fac = f.factor(&cfg).unwrap();
            assert_eq!(fac.expand(&k), f);
            for (g, _) in &fac.factors {
                assert!(g.factor(&cfg).unwrap().is_irreducible(), "{g} from {f}");
            }
        }
    }

    #[test]
    fn subset_enumeration() {
        assert_eq!(subsets(&[4, 5, 6], 2), vec![vec![4, 5], vec![4, 6], vec![5, 6]]);
        assert_eq!(subsets(&[1, 2], 1).len(), 2);
        assert_eq!(subsets(&[1, 2, 3, 4], 4).len(), 1);
    }
}
