use super::{Elem, Poly};
use crate::error::{Error, Result};
use crate::linalg::Matrix;

/// Minimal polynomial of a square matrix: lcm over basis vectors of the
/// monic relation found in each Krylov sequence `e_j, T e_j, T² e_j, …`.
pub fn minimal_polynomial(t: &Matrix) -> Result<Poly> {
    if !t.is_square() {
        return Err(Error::ShapeMismatch(format!("{}x{} is not square", t.rows(), t.cols())));
    }
    let k = t.field();
    let n = t.rows();
    let mut acc = Poly::one(k);
    // once acc(T) kills e_j its local minimal polynomial divides acc
    for j in 0..n {
        let mut e = vec![k.zero(); n];
        e[j] = k.one();
        if is_annihilated(t, &acc, &e) {
            continue;
        }
        let mut krylov: Vec<Vec<Elem>> = vec![e];
        let rel = loop {
            let next = t.mul_vec(krylov.last().unwrap());
            let basis = Matrix::from_columns(k, n, &krylov);
            if let Some(c) = basis.solve(&Matrix::column(k, next.clone())) {
                // T^d e = Σ c_i T^i e  ⇒  x^d − Σ c_i x^i
                let mut coeffs: Vec<Elem> = c.col(0).iter().map(|v| k.neg(v)).collect();
                coeffs.push(k.one());
                break Poly::new(k, coeffs);
            }
            krylov.push(next);
        };
        acc = acc.lcm(&rel);
    }
    Ok(acc)
}

fn is_annihilated(t: &Matrix, p: &Poly, v: &[Elem]) -> bool {
    let k = t.field();
    // Horner on the vector: p(T)v
    let mut acc = vec![k.zero(); v.len()];
    for c in p.coeffs().iter().rev() {
        acc = t.mul_vec(&acc);
        for (a, b) in acc.iter_mut().zip(v) {
            *a = k.add(a, &k.mul(c, b));
        }
    }
    acc.iter().all(|e| k.is_zero(e))
}

/// `p(T)` as a matrix.
pub fn eval_matrix(p: &Poly, t: &Matrix) -> Matrix {
    let k = t.field();
    let n = t.rows();
    let mut acc = Matrix::zeros(k, n, n);
    for c in p.coeffs().iter().rev() {
        acc = acc.mul(t).add(&Matrix::identity(k, n).scale(c));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{FactorConfig, Field};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn examples() {
        let q = Field::rationals();
        assert_eq!(minimal_polynomial(&Matrix::identity(&q, 3)).unwrap(), Poly::from_i64s(&q, &[-1, 1]));
        let f3 = Field::prime(3).unwrap();
        let j2 = Matrix::from_i64(&f3, &[&[0, 1], &[0, 0]]);
        assert_eq!(minimal_polynomial(&j2).unwrap(), Poly::from_i64s(&f3, &[0, 0, 1]));
        let f2 = Field::prime(2).unwrap();
        // companion of x^2+x+1; substituting gives C^2 + C + I = 0
        let c = Matrix::from_i64(&f2, &[&[0, 1], &[1, 1]]);
        let p = Poly::from_i64s(&f2, &[1, 1, 1]);
        assert!(eval_matrix(&p, &c).is_zero());
        assert_eq!(minimal_polynomial(&c).unwrap(), p);
    }

    #[test]
    fn random_minimality() {
        let cfg = FactorConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in [Field::rationals(), Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            for _ in 0..60 {
                let n = rand::Rng::gen_range(&mut rng, 1..6);
                // block structure makes repeated factors likely
                let mut t = Matrix::from_fn(&k, n, n, |_, _| k.random(&mut rng));
                if n > 2 {
                    t.set(1, 0, k.zero());
                    t.set(2, 0, k.zero());
                }
                let mu = minimal_polynomial(&t).unwrap();
                assert!(mu.is_monic());
                assert!(eval_matrix(&mu, &t).is_zero());
                for (f, _) in mu.factor(&cfg).unwrap().factors {
                    let smaller = mu.exact_div(&f);
                    assert!(!eval_matrix(&smaller, &t).is_zero());
                }
            }
        }
    }
}
