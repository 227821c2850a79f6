use std::fmt;

use num_bigint::BigUint;

use super::{Elem, Field, FieldSpec};
use crate::error::{Error, Result};

/// Dense univariate polynomial, coefficients ascending, no trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: Field,
    coeffs: Vec<Elem>,
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // over an extension field the coefficients already use `x`
        let var = if matches!(self.field.spec(), FieldSpec::Extension { .. }) { "t" } else { "x" };
        f.write_str(&self.format_with(var))
    }
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn from_i64s(field: &Field, coeffs: &[i64]) -> Self {
        Self::new(field, coeffs.iter().map(|&c| field.from_i64(c)).collect())
    }

    pub fn zero(field: &Field) -> Self {
        Poly { field: field.clone(), coeffs: vec![] }
    }

    pub fn one(field: &Field) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: &Field, c: Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial `x`.
    pub fn x(field: &Field) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn monomial(field: &Field, c: Elem, deg: usize) -> Self {
        let mut coeffs = vec![field.zero(); deg + 1];
        coeffs[deg] = c;
        Self::new(field, coeffs)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    /// Coefficient of `x^i` (zero past the degree).
    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.field.is_one(&self.coeffs[0])
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree, with the zero polynomial reported as 0.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lead(&self) -> Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| self.field.is_one(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.add(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(k, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let k = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| k.sub(&self.coeff(i), &other.coeff(i))).collect();
        Poly::new(k, coeffs)
    }

    pub fn neg(&self) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|c| self.field.neg(c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let k = &self.field;
        if self.is_zero() || other.is_zero() {
            return Poly::zero(k);
        }
        let mut out = vec![k.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if k.is_zero(a) {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = k.mul_add(&out[i + j], a, b);
            }
        }
        Poly::new(k, out)
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        Poly::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(a, c)).collect())
    }

    /// Multiply by `x^n`.
    pub fn shift(&self, n: usize) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![self.field.zero(); n];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { field: self.field.clone(), coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(&self.field);
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

    /// Scaled to leading coefficient 1 (zero stays zero).
    pub fn monic(&self) -> Poly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lead()).expect("nonzero lead");
        self.scale(&inv)
    }

    pub fn divrem(&self, d: &Poly) -> Result<(Poly, Poly)> {
        let k = &self.field;
        if d.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let dn = d.coeffs.len();
        if self.coeffs.len() < dn {
            return Ok((Poly::zero(k), self.clone()));
        }
        let inv_lead = k.inv(&d.lead())?;
        let mut r = self.coeffs.clone();
        let mut q = vec![k.zero(); r.len() - dn + 1];
        for shift in (0..q.len()).rev() {
            let top = &r[shift + dn - 1];
            if k.is_zero(top) {
                continue;
            }
            let c = k.mul(top, &inv_lead);
            for (i, b) in d.coeffs.iter().enumerate() {
                let t = k.mul(&c, b);
                r[shift + i] = k.sub(&r[shift + i], &t);
            }
            q[shift] = c;
        }
        r.truncate(dn - 1);
        Ok((Poly::new(k, q), Poly::new(k, r)))
    }

    pub fn rem(&self, d: &Poly) -> Result<Poly> {
        Ok(self.divrem(d)?.1)
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Poly) -> Poly {
        let (q, r) = self.divrem(d).expect("nonzero divisor");
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Poly) -> bool {
        other.rem(self).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `(g, s, t)` with `g = s·self + t·other` and `g` monic.
    pub fn ext_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let k = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Poly::one(k), Poly::zero(k));
        let (mut t0, mut t1) = (Poly::zero(k), Poly::one(k));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1).expect("nonzero");
            r0 = std::mem::replace(&mut r1, r);
            let s2 = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s2);
            let t2 = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t2);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = k.inv(&r0.lead()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        self.mul(other).exact_div(&self.gcd(other)).monic()
    }

    pub fn derivative(&self) -> Poly {
        let k = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| k.mul(c, &k.from_i64(i as i64)))
            .collect();
        Poly::new(k, coeffs)
    }

    pub fn eval(&self, x: &Elem) -> Elem {
        let k = &self.field;
        let mut acc = k.zero();
        for c in self.coeffs.iter().rev() {
            acc = k.add(&k.mul(&acc, x), c);
        }
        acc
    }

    /// Horner evaluation in an arbitrary ring given by closures.
    pub fn eval_with<T: Clone>(
        &self,
        zero: T,
        embed: impl Fn(&Elem) -> T,
        add: impl Fn(&T, &T) -> T,
        mul: impl Fn(&T, &T) -> T,
        x: &T,
    ) -> T {
        let mut acc = zero;
        for c in self.coeffs.iter().rev() {
            acc = add(&mul(&acc, x), &embed(c));
        }
        acc
    }

    pub fn mulmod(&self, other: &Poly, m: &Poly) -> Poly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn powmod(&self, mut e: u64, m: &Poly) -> Poly {
        let mut base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field).rem(m).unwrap();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mulmod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mulmod(&base, m);
            }
        }
        acc
    }

    pub fn powmod_big(&self, e: &BigUint, m: &Poly) -> Poly {
        let base = self.rem(m).expect("nonzero modulus");
        let mut acc = Poly::one(&self.field).rem(m).unwrap();
        for i in (0..e.bits()).rev() {
            acc = acc.mulmod(&acc, m);
            if e.bit(i) {
                acc = acc.mulmod(&base, m);
            }
        }
        acc
    }

    /// `self^q mod m`, `q = |field|`, via repeated `p`-th powers.
    pub fn frobenius_mod(&self, m: &Poly) -> Poly {
        let p = self.field.characteristic();
        let mut r = self.rem(m).unwrap();
        for _ in 0..self.field.prime_degree() {
            r = r.powmod(p, m);
        }
        r
    }

    /// For `f = g(x^p)` in characteristic `p`: the unique `h` with `h^p = f`.
    pub(crate) fn pth_root(&self) -> Poly {
        let k = &self.field;
        let p = k.characteristic() as usize;
        let coeffs = self.coeffs.iter().step_by(p).map(|c| k.pth_root(c)).collect();
        Poly::new(k, coeffs)
    }

    /// Substitute this polynomial's variable by `g`.
    pub fn compose(&self, g: &Poly) -> Poly {
        let k = &self.field;
        let mut acc = Poly::zero(k);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(k, c.clone()));
        }
        acc
    }

    pub fn format_with(&self, var: &str) -> String {
        let k = &self.field;
        if self.is_zero() {
            return "0".into();
        }
        let composite = matches!(k.spec(), FieldSpec::Extension { .. });
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if k.is_zero(c) {
                continue;
            }
            let mut s = k.format(c);
            let negative = s.starts_with('-');
            if negative && !composite {
                s.remove(0);
            }
            let needs_parens = composite && s.contains('+');
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            let term = if i == 0 {
                if needs_parens {
                    format!("({s})")
                } else {
                    s
                }
            } else if s == "1" {
                mono
            } else if needs_parens {
                format!("({s})*{mono}")
            } else {
                format!("{s}*{mono}")
            };
            if out.is_empty() {
                if negative && !composite {
                    out.push('-');
                }
            } else {
                out.push_str(if negative && !composite { " - " } else { " + " });
            }
            out.push_str(&term);
        }
        out
    }

    /// Canonical sort key: degree, then coefficients from the top.
    pub(crate) fn sort_key(&self) -> (usize, Vec<Elem>) {
        (self.coeffs.len(), self.coeffs.iter().rev().cloned().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let q = Field::rationals();
        let a = Poly::from_i64s(&q, &[1, 2, 3, 4, 5]);
        let b = Poly::from_i64s(&q, &[-1, 0, 2]);
        let (qu, r) = a.divrem(&b).unwrap();
        assert_eq!(qu.mul(&b).add(&r), a);
        assert!(r.deg() < 2);
    }

    #[test]
    fn gcd_and_bezout() {
        let f3 = Field::prime(3).unwrap();
        let a = Poly::from_i64s(&f3, &[1, 0, 1]).mul(&Poly::from_i64s(&f3, &[1, 1]));
        let b = Poly::from_i64s(&f3, &[1, 1]).mul(&Poly::from_i64s(&f3, &[2, 1]));
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, Poly::from_i64s(&f3, &[1, 1]));
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }

    #[test]
    fn display() {
        let q = Field::rationals();
        assert_eq!(Poly::from_i64s(&q, &[-2, 0, 1]).to_string(), "x^2 - 2");
        let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
        let p = Poly::new(&f4, vec![f4.parse("x+1").unwrap(), f4.one()]);
        assert_eq!(p.to_string(), "t + (x+1)");
    }

    #[test]
    fn frobenius_is_qth_power() {
        let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
        let m = Poly::new(&f4, vec![f4.generator(), f4.one(), f4.zero(), f4.one()]);
        let t = Poly::x(&f4);
        assert_eq!(t.frobenius_mod(&m), t.powmod(4, &m));
    }
}
