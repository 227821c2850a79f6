//! Exact arithmetic over ℚ, 𝔽_p and 𝔽_q = 𝔽_p[x]/(f).
//!
//! A [`Field`] is a cheap handle (an `Arc` around its [`FieldSpec`]) that
//! performs all arithmetic; values are plain [`Elem`]s that do not carry their
//! field. Containers such as matrices and polynomials store the handle once.
//! [`FieldElement`] pairs the two for callers that want checked mixed-field
//! arithmetic.

mod factor;
mod minpoly;
mod poly;
pub mod primes;
mod zassenhaus;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use factor::{FactorConfig, Factorization};
pub use minpoly::{eval_matrix, minimal_polynomial};
pub use poly::Poly;

/// Largest prime accepted as a characteristic.
pub const MAX_PRIME: u64 = 1 << 31;

/// Which field we compute over.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FieldSpec {
    #[serde(rename = "Q")]
    Rationals,
    #[serde(rename = "Fp")]
    Prime { p: u64 },
    /// `modulus` is monic, coefficients ascending.
    #[serde(rename = "Fq")]
    Extension { p: u64, modulus: Vec<u64> },
}

/// A field element in canonical form.
///
/// Rationals are reduced with positive denominator, residues lie in `[0, p)`,
/// and extension elements are coefficient vectors of length `deg(modulus)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Elem {
    Rat(BigRational),
    Mod(u64),
    Ext(Vec<u64>),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Field {
    spec: Arc<FieldSpec>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &*self.spec {
            FieldSpec::Rationals => write!(f, "Q"),
            FieldSpec::Prime { p } => write!(f, "F_{p}"),
            FieldSpec::Extension { p, modulus } => {
                write!(f, "F_{p}[x]/({})", format_poly_u64(modulus))
            }
        }
    }
}

fn format_poly_u64(coeffs: &[u64]) -> String {
    let mut terms = Vec::new();
    for (i, &c) in coeffs.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => "x".to_string(),
            _ => format!("x^{i}"),
        };
        terms.push(match (c, i) {
            (_, 0) => c.to_string(),
            (1, _) => mono,
            _ => format!("{c}*{mono}"),
        });
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join("+")
    }
}

impl Field {
    pub fn rationals() -> Self {
        Field { spec: Arc::new(FieldSpec::Rationals) }
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(FieldSpec::Prime { p })
    }

    /// `𝔽_p[x]/(modulus)`; the modulus must be monic irreducible.
    pub fn extension(p: u64, modulus: Vec<u64>) -> Result<Self> {
        Self::new(FieldSpec::Extension { p, modulus })
    }

    pub fn new(spec: FieldSpec) -> Result<Self> {
        match &spec {
            FieldSpec::Rationals => {}
            FieldSpec::Prime { p } => check_prime(*p)?,
            FieldSpec::Extension { p, modulus } => {
                check_prime(*p)?;
                if modulus.len() < 2 {
                    return Err(Error::InvalidField("modulus must have degree ≥ 1".into()));
                }
                if modulus.iter().any(|&c| c >= *p) {
                    return Err(Error::InvalidField("modulus coefficients must be reduced mod p".into()));
                }
                if *modulus.last().unwrap() != 1 {
                    return Err(Error::InvalidField("modulus must be monic".into()));
                }
                let base = Field::prime(*p)?;
                let f = Poly::new(&base, modulus.iter().map(|&c| Elem::Mod(c)).collect());
                let fac = f.factor(&FactorConfig::default())?;
                if fac.factors.len() != 1 || fac.factors[0].1 != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus {} is not irreducible over F_{p}",
                        format_poly_u64(modulus)
                    )));
                }
            }
        }
        Ok(Field { spec: Arc::new(spec) })
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    /// 0 for ℚ.
    pub fn characteristic(&self) -> u64 {
        match &*self.spec {
            FieldSpec::Rationals => 0,
            FieldSpec::Prime { p } | FieldSpec::Extension { p, .. } => *p,
        }
    }

    /// Degree over the prime field (1 for ℚ and 𝔽_p).
    pub fn prime_degree(&self) -> usize {
        match &*self.spec {
            FieldSpec::Extension { modulus, .. } => modulus.len() - 1,
            _ => 1,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(*self.spec, FieldSpec::Rationals)
    }

    /// Number of elements, if finite and representable.
    pub fn order(&self) -> Option<u128> {
        match &*self.spec {
            FieldSpec::Rationals => None,
            FieldSpec::Prime { p } => Some(*p as u128),
            FieldSpec::Extension { p, modulus } => {
                (*p as u128).checked_pow((modulus.len() - 1) as u32)
            }
        }
    }

    /// Number of elements as a big integer (finite fields only).
    pub fn order_big(&self) -> Option<BigUint> {
        match &*self.spec {
            FieldSpec::Rationals => None,
            FieldSpec::Prime { p } => Some(BigUint::from(*p)),
            FieldSpec::Extension { p, modulus } => {
                Some(num_traits::pow(BigUint::from(*p), modulus.len() - 1))
            }
        }
    }

    pub fn zero(&self) -> Elem {
        match &*self.spec {
            FieldSpec::Rationals => Elem::Rat(BigRational::zero()),
            FieldSpec::Prime { .. } => Elem::Mod(0),
            FieldSpec::Extension { modulus, .. } => Elem::Ext(vec![0; modulus.len() - 1]),
        }
    }

    pub fn one(&self) -> Elem {
        self.from_i64(1)
    }

    pub fn from_i64(&self, v: i64) -> Elem {
        match &*self.spec {
            FieldSpec::Rationals => Elem::Rat(BigRational::from_integer(BigInt::from(v))),
            FieldSpec::Prime { p } => Elem::Mod(v.rem_euclid(*p as i64) as u64),
            FieldSpec::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                c[0] = v.rem_euclid(*p as i64) as u64;
                Elem::Ext(c)
            }
        }
    }

    /// Image of a rational number; fails in positive characteristic when the
    /// denominator vanishes.
    pub fn from_rational(&self, r: &BigRational) -> Result<Elem> {
        match &*self.spec {
            FieldSpec::Rationals => Ok(Elem::Rat(r.clone())),
            _ => {
                let p = BigInt::from(self.characteristic());
                let n = (r.numer() % &p + &p) % &p;
                let d = (r.denom() % &p + &p) % &p;
                let n = self.from_i64(n.to_i64().unwrap());
                let d = self.from_i64(d.to_i64().unwrap());
                self.div(&n, &d)
            }
        }
    }

    /// Extension element with the given coefficient vector (ascending).
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Elem {
        match &*self.spec {
            FieldSpec::Extension { p, modulus } => {
                let d = modulus.len() - 1;
                let mut c = vec![0u64; d.max(coeffs.len())];
                for (i, &v) in coeffs.iter().enumerate() {
                    c[i] = v % p;
                }
                Elem::Ext(reduce_ext(c, modulus, *p))
            }
            FieldSpec::Prime { p } => Elem::Mod(coeffs.first().copied().unwrap_or(0) % p),
            FieldSpec::Rationals => self.from_i64(coeffs.first().copied().unwrap_or(0) as i64),
        }
    }

    /// The class of `x` in `𝔽_p[x]/(f)`; the prime-field generator 1 otherwise.
    pub fn generator(&self) -> Elem {
        match &*self.spec {
            FieldSpec::Extension { .. } => self.from_coeffs(&[0, 1]),
            _ => self.one(),
        }
    }

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_zero(),
            Elem::Mod(v) => *v == 0,
            Elem::Ext(c) => c.iter().all(|&v| v == 0),
        }
    }

    pub fn is_one(&self, a: &Elem) -> bool {
        match a {
            Elem::Rat(r) => r.is_one(),
            Elem::Mod(v) => *v == 1,
            Elem::Ext(c) => c[0] == 1 && c[1..].iter().all(|&v| v == 0),
        }
    }

    /// Whether `a` is a valid canonical element of this field.
    pub fn contains(&self, a: &Elem) -> bool {
        match (&*self.spec, a) {
            (FieldSpec::Rationals, Elem::Rat(_)) => true,
            (FieldSpec::Prime { p }, Elem::Mod(v)) => v < p,
            (FieldSpec::Extension { p, modulus }, Elem::Ext(c)) => {
                c.len() == modulus.len() - 1 && c.iter().all(|v| v < p)
            }
            _ => false,
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x + y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                let p = self.characteristic();
                let s = x + y;
                Elem::Mod(if s >= p { s - p } else { s })
            }
            (Elem::Ext(x), Elem::Ext(y)) => {
                let p = self.characteristic();
                Elem::Ext(x.iter().zip(y).map(|(u, v)| (u + v) % p).collect())
            }
            _ => panic!("mixed field elements"),
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Rat(x) => Elem::Rat(-x),
            Elem::Mod(x) => {
                let p = self.characteristic();
                Elem::Mod(if *x == 0 { 0 } else { p - x })
            }
            Elem::Ext(x) => {
                let p = self.characteristic();
                Elem::Ext(x.iter().map(|&v| if v == 0 { 0 } else { p - v }).collect())
            }
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => Elem::Rat(x - y),
            (Elem::Mod(x), Elem::Mod(y)) => {
                let p = self.characteristic();
                Elem::Mod(if x >= y { x - y } else { p + x - y })
            }
            _ => self.add(a, &self.neg(b)),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Rat(x), Elem::Rat(y)) => {
                if x.is_zero() || y.is_zero() {
                    Elem::Rat(BigRational::zero())
                } else {
                    Elem::Rat(x * y)
                }
            }
            (Elem::Mod(x), Elem::Mod(y)) => Elem::Mod(x * y % self.characteristic()),
            (Elem::Ext(x), Elem::Ext(y)) => {
                let FieldSpec::Extension { p, modulus } = &*self.spec else {
                    unreachable!()
                };
                Elem::Ext(mul_ext(x, y, modulus, *p))
            }
            _ => panic!("mixed field elements"),
        }
    }

    /// `a + b * c`
    pub fn mul_add(&self, a: &Elem, b: &Elem, c: &Elem) -> Elem {
        if self.is_zero(b) || self.is_zero(c) {
            return a.clone();
        }
        self.add(a, &self.mul(b, c))
    }

    pub fn inv(&self, a: &Elem) -> Result<Elem> {
        if self.is_zero(a) {
            return Err(Error::DivisionByZero);
        }
        Ok(match a {
            Elem::Rat(x) => Elem::Rat(x.recip()),
            Elem::Mod(x) => Elem::Mod(primes::inv_mod(*x, self.characteristic()).unwrap()),
            Elem::Ext(x) => {
                let FieldSpec::Extension { p, modulus } = &*self.spec else {
                    unreachable!()
                };
                Elem::Ext(inv_ext(x, modulus, *p))
            }
        })
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Result<Elem> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &Elem, mut e: u64) -> Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    pub fn pow_big(&self, a: &Elem, e: &BigUint) -> Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    /// Inverse of the Frobenius `a ↦ a^p` (finite fields), identity on ℚ.
    pub fn pth_root(&self, a: &Elem) -> Elem {
        match &*self.spec {
            FieldSpec::Rationals | FieldSpec::Prime { .. } => a.clone(),
            FieldSpec::Extension { p, modulus } => {
                // a^(p^(d-1)) inverts a ↦ a^p on F_{p^d}
                let mut r = a.clone();
                for _ in 0..modulus.len() - 2 {
                    r = self.pow(&r, *p);
                }
                r
            }
        }
    }

    /// Canonical total order used for deterministic tie-breaking.
    pub fn cmp_elems(&self, a: &Elem, b: &Elem) -> Ordering {
        a.cmp(b)
    }

    /// A random element: uniform over finite fields, a small fraction over ℚ.
    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> Elem {
        match &*self.spec {
            FieldSpec::Rationals => {
                let n: i64 = rng.gen_range(-4..=4);
                let d: i64 = if rng.gen_bool(0.75) { 1 } else { rng.gen_range(1..=3) };
                Elem::Rat(BigRational::new(n.into(), d.into()))
            }
            FieldSpec::Prime { p } => Elem::Mod(rng.gen_range(0..*p)),
            FieldSpec::Extension { p, modulus } => {
                Elem::Ext((0..modulus.len() - 1).map(|_| rng.gen_range(0..*p)).collect())
            }
        }
    }

    /// All elements in canonical order, for fields with at most `limit` elements.
    pub fn elements(&self, limit: u128) -> Option<Vec<Elem>> {
        let q = self.order()?;
        if q > limit {
            return None;
        }
        Some((0..q as u64).map(|i| self.element_by_index(i)).collect())
    }

    /// Bijection `0..q → F_q` (base-p digits as coefficients).
    pub fn element_by_index(&self, mut i: u64) -> Elem {
        match &*self.spec {
            FieldSpec::Rationals => self.from_i64(i as i64),
            FieldSpec::Prime { p } => Elem::Mod(i % p),
            FieldSpec::Extension { p, modulus } => {
                let mut c = vec![0; modulus.len() - 1];
                for slot in c.iter_mut() {
                    *slot = i % p;
                    i /= p;
                }
                Elem::Ext(c)
            }
        }
    }

    pub fn format(&self, a: &Elem) -> String {
        match a {
            Elem::Rat(r) => {
                if r.denom().is_one() {
                    r.numer().to_string()
                } else {
                    format!("{}/{}", r.numer(), r.denom())
                }
            }
            Elem::Mod(v) => v.to_string(),
            Elem::Ext(c) => format_poly_u64(c),
        }
    }

    /// Parses the interchange notation: `"3/4"`, `"-2"`, `"x^2+2*x+1"`.
    pub fn parse(&self, s: &str) -> Result<Elem> {
        let s = s.trim();
        let bad = || Error::Parse(format!("cannot parse {s:?} as an element of {self}"));
        match &*self.spec {
            FieldSpec::Rationals => {
                let (n, d) = match s.split_once('/') {
                    Some((n, d)) => (n.trim(), d.trim()),
                    None => (s, "1"),
                };
                let n: BigInt = n.parse().map_err(|_| bad())?;
                let d: BigInt = d.parse().map_err(|_| bad())?;
                if d.is_zero() {
                    return Err(bad());
                }
                Ok(Elem::Rat(BigRational::new(n, d)))
            }
            FieldSpec::Prime { p } => {
                let v: i128 = s.parse().map_err(|_| bad())?;
                Ok(Elem::Mod(v.rem_euclid(*p as i128) as u64))
            }
            FieldSpec::Extension { p, .. } => {
                let coeffs = parse_poly_in_x(s, *p).ok_or_else(bad)?;
                Ok(self.from_coeffs(&coeffs))
            }
        }
    }

    /// Rational value of an element of ℚ.
    pub fn as_rational<'a>(&self, a: &'a Elem) -> Option<&'a BigRational> {
        match a {
            Elem::Rat(r) => Some(r),
            _ => None,
        }
    }
}

fn check_prime(p: u64) -> Result<()> {
    if p >= MAX_PRIME {
        return Err(Error::InvalidField(format!("p = {p} must be below 2^31")));
    }
    if !primes::is_prime(p) {
        return Err(Error::InvalidField(format!("{p} is not prime")));
    }
    Ok(())
}

fn parse_poly_in_x(s: &str, p: u64) -> Option<Vec<u64>> {
    let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if s.is_empty() {
        return None;
    }
    let mut coeffs: Vec<u64> = Vec::new();
    let mut terms = Vec::new();
    let mut start = 0;
    let bytes = s.as_bytes();
    for i in 1..bytes.len() {
        if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'^' {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    for term in terms {
        let (neg, body) = match term.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, term.strip_prefix('+').unwrap_or(term)),
        };
        if body.is_empty() {
            return None;
        }
        let (coef, exp): (u64, usize) = if let Some(pos) = body.find('x') {
            let c = body[..pos].trim_end_matches('*');
            let c = if c.is_empty() { 1 } else { c.parse::<u64>().ok()? % p };
            let rest = &body[pos + 1..];
            let e = if rest.is_empty() {
                1
            } else {
                rest.strip_prefix('^')?.parse().ok()?
            };
            (c, e)
        } else {
            (body.parse::<u64>().ok()? % p, 0)
        };
        if coeffs.len() <= exp {
            coeffs.resize(exp + 1, 0);
        }
        let c = if neg { (p - coef) % p } else { coef };
        coeffs[exp] = (coeffs[exp] + c) % p;
    }
    Some(coeffs)
}

fn reduce_ext(mut c: Vec<u64>, modulus: &[u64], p: u64) -> Vec<u64> {
    let d = modulus.len() - 1;
    while c.len() > d {
        let top = c.pop().unwrap();
        if top != 0 {
            let shift = c.len() - d;
            for (i, &m) in modulus[..d].iter().enumerate() {
                let sub = top * m % p;
                c[shift + i] = (c[shift + i] + p - sub) % p;
            }
        }
    }
    c.resize(d, 0);
    c
}

fn mul_ext(x: &[u64], y: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    let d = x.len();
    let mut prod = vec![0u64; 2 * d - 1];
    for (i, &a) in x.iter().enumerate() {
        if a == 0 {
            continue;
        }
        for (j, &b) in y.iter().enumerate() {
            prod[i + j] = (prod[i + j] + a * b) % p;
        }
    }
    reduce_ext(prod, modulus, p)
}

fn trim_u64(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

/// Polynomial division over 𝔽_p on raw coefficient vectors.
fn divrem_u64(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    let mut r = a.to_vec();
    trim_u64(&mut r);
    let mut b = b.to_vec();
    trim_u64(&mut b);
    if r.len() < b.len() {
        return (vec![], r);
    }
    let inv_lead = primes::inv_mod(*b.last().unwrap(), p).unwrap();
    let mut q = vec![0u64; r.len() - b.len() + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let c = r.last().unwrap() * inv_lead % p;
        q[shift] = c;
        for (i, &bv) in b.iter().enumerate() {
            r[shift + i] = (r[shift + i] + p - c * bv % p) % p;
        }
        trim_u64(&mut r);
    }
    (q, r)
}

fn inv_ext(x: &[u64], modulus: &[u64], p: u64) -> Vec<u64> {
    // extended Euclid: track s with s*x ≡ r (mod modulus)
    let mut r0 = modulus.to_vec();
    let mut r1 = x.to_vec();
    trim_u64(&mut r1);
    let mut s0: Vec<u64> = vec![];
    let mut s1: Vec<u64> = vec![1];
    while !r1.is_empty() {
        let (q, r) = divrem_u64(&r0, &r1, p);
        // s2 = s0 - q*s1
        let mut qs = vec![0u64; q.len() + s1.len()];
        for (i, &a) in q.iter().enumerate() {
            for (j, &b) in s1.iter().enumerate() {
                qs[i + j] = (qs[i + j] + a * b) % p;
            }
        }
        let mut s2 = vec![0u64; qs.len().max(s0.len())];
        for (i, slot) in s2.iter_mut().enumerate() {
            let a = s0.get(i).copied().unwrap_or(0);
            let b = qs.get(i).copied().unwrap_or(0);
            *slot = (a + p - b) % p;
        }
        trim_u64(&mut s2);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    // r0 is a nonzero constant
    let c = primes::inv_mod(r0[0], p).unwrap();
    let s: Vec<u64> = s0.iter().map(|v| v * c % p).collect();
    let (_, rem) = divrem_u64(&s, modulus, p);
    let mut out = rem;
    out.resize(modulus.len() - 1, 0);
    out
}

/// Which arithmetic operation [`field_arith`] performs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Inv,
    Eq,
}

/// A field element bundled with its field, for checked arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldElement {
    pub field: Field,
    pub value: Elem,
}

/// Result of [`field_arith`]: a value, or a boolean for `Eq`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithResult {
    Value(FieldElement),
    Bool(bool),
}

impl FieldElement {
    pub fn new(field: &Field, value: Elem) -> Result<Self> {
        if !field.contains(&value) {
            return Err(Error::SpecMismatch(format!("{value:?} is not an element of {field}")));
        }
        Ok(FieldElement { field: field.clone(), value })
    }

    pub fn parse(field: &Field, s: &str) -> Result<Self> {
        Ok(FieldElement { field: field.clone(), value: field.parse(s)? })
    }

    fn wrap(&self, value: Elem) -> Self {
        FieldElement { field: self.field.clone(), value }
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.field.format(&self.value))
    }
}

/// Checked binary arithmetic; `Inv` ignores `b` except for the field check.
pub fn field_arith(a: &FieldElement, b: &FieldElement, op: ArithOp) -> Result<ArithResult> {
    if a.field != b.field {
        return Err(Error::SpecMismatch(format!("{} vs {}", a.field, b.field)));
    }
    let k = &a.field;
    Ok(match op {
        ArithOp::Add => ArithResult::Value(a.wrap(k.add(&a.value, &b.value))),
        ArithOp::Sub => ArithResult::Value(a.wrap(k.sub(&a.value, &b.value))),
        ArithOp::Mul => ArithResult::Value(a.wrap(k.mul(&a.value, &b.value))),
        ArithOp::Div => ArithResult::Value(a.wrap(k.div(&a.value, &b.value)?)),
        ArithOp::Inv => ArithResult::Value(a.wrap(k.inv(&a.value)?)),
        ArithOp::Eq => ArithResult::Bool(a.value == b.value),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn val(r: ArithResult) -> Elem {
        match r {
            ArithResult::Value(v) => v.value,
            ArithResult::Bool(_) => panic!("expected a value"),
        }
    }

    #[test]
    fn rational_sum() {
        let q = Field::rationals();
        let a = FieldElement::parse(&q, "1/2").unwrap();
        let b = FieldElement::parse(&q, "1/3").unwrap();
        assert_eq!(val(field_arith(&a, &b, ArithOp::Add).unwrap()), q.parse("5/6").unwrap());
        assert_eq!(q.format(&q.parse("4/-6").unwrap()), "-2/3");
    }

    #[test]
    fn inverse_in_f4() {
        let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
        let x = f4.generator();
        let inv = f4.inv(&x).unwrap();
        assert_eq!(inv, f4.parse("x+1").unwrap());
        // exhaustive: x̄·(x̄+1) = 1 and no other element works
        let all = f4.elements(16).unwrap();
        let hits: Vec<_> = all.iter().filter(|e| f4.is_one(&f4.mul(&x, e))).collect();
        assert_eq!(hits, vec![&inv]);
    }

    #[test]
    fn f5_inverses() {
        let f5 = Field::prime(5).unwrap();
        for a in 1..5 {
            let a = f5.from_i64(a);
            assert!(f5.is_one(&f5.mul(&a, &f5.inv(&a).unwrap())));
        }
        assert_eq!(f5.inv(&f5.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn spec_mismatch_is_reported() {
        let a = FieldElement::new(&Field::prime(5).unwrap(), Elem::Mod(1)).unwrap();
        let b = FieldElement::new(&Field::prime(7).unwrap(), Elem::Mod(1)).unwrap();
        assert!(matches!(field_arith(&a, &b, ArithOp::Add), Err(Error::SpecMismatch(_))));
    }

    #[test]
    fn invalid_specs_rejected() {
        assert!(Field::prime(15).is_err());
        assert!(Field::prime(1).is_err());
        assert!(Field::extension(2, vec![1, 0, 1]).is_err()); // x²+1 = (x+1)²
        assert!(Field::extension(2, vec![1, 1, 0]).is_err()); // not monic
        assert!(Field::extension(3, vec![1, 0, 1]).is_ok()); // x²+1 over F_3
    }

    #[test]
    fn parse_format_round_trip() {
        let f9 = Field::extension(3, vec![1, 0, 1]).unwrap();
        for e in f9.elements(9).unwrap() {
            assert_eq!(f9.parse(&f9.format(&e)).unwrap(), e);
        }
        assert_eq!(f9.parse("-x").unwrap(), f9.parse("2*x").unwrap());
        assert_eq!(f9.parse("x^2").unwrap(), f9.parse("2").unwrap());
    }

    #[test]
    fn frobenius_root_inverts_pth_power() {
        let f8 = Field::extension(2, vec![1, 1, 0, 1]).unwrap();
        for e in f8.elements(8).unwrap() {
            assert_eq!(f8.pow(&f8.pth_root(&e), 2), e);
        }
    }

    #[test]
    fn field_axioms_random() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let fields = [
            Field::rationals(),
            Field::prime(7).unwrap(),
            Field::extension(3, vec![2, 2, 1]).unwrap(), // x²+2x+2, irreducible mod 3
        ];
        for k in fields {
            for _ in 0..200 {
                let (a, b, c) = (k.random(&mut rng), k.random(&mut rng), k.random(&mut rng));
                assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
                assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
                if !k.is_zero(&a) {
                    assert!(k.is_one(&k.mul(&a, &k.inv(&a).unwrap())));
                }
            }
        }
    }
}
