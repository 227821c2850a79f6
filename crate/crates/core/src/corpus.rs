//! Seeded random coalgebras and coalgebra morphisms for property tests.
//!
//! Coalgebras are assembled from diagonal coalgebras and duals of small
//! commutative algebras by direct sums, tensor products, subcoalgebras and
//! quotients, and then written in a random basis so that no structure is
//! visible in the coordinates. Each item carries a short recipe string.

use rand::Rng;

use crate::coalg::{
    diagonal_coalgebra, direct_sum, dual_algebra, dual_coalgebra, generated_subcoalgebra, quotient, tensor,
    ArtinAlgebra, Coalgebra, CoalgebraMorphism,
};
use crate::field::{Elem, Field, Poly};
use crate::linalg::{Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct Sample {
    pub recipe: String,
    pub coalgebra: Coalgebra,
}

#[derive(Clone, Debug)]
pub struct MorphismSample {
    pub recipe: String,
    pub morphism: CoalgebraMorphism,
}

pub fn random_vector<R: Rng + ?Sized>(k: &Field, n: usize, rng: &mut R) -> Vec<Elem> {
    (0..n).map(|_| k.random(rng)).collect()
}

pub fn random_invertible<R: Rng + ?Sized>(k: &Field, n: usize, rng: &mut R) -> Matrix {
    loop {
        let m = Matrix::from_fn(k, n, n, |_, _| k.random(rng));
        if m.rank() == n {
            return m;
        }
    }
}

/// `k ⊕ V` with `V·V = 0`, `dim V = m`.
pub fn square_zero_algebra(k: &Field, m: usize) -> ArtinAlgebra {
    let n = m + 1;
    let mut mult = Matrix::zeros(k, n, n * n);
    for i in 0..n {
        mult.set(i, i, k.one());
        mult.set(i, i * n, k.one());
    }
    let mut unit = vec![k.zero(); n];
    unit[0] = k.one();
    ArtinAlgebra::new(k, mult, unit).expect("square-zero shapes")
}

/// `k[x]/(f)` for a random monic `f` of degree `d`.
pub fn random_quotient_ring<R: Rng + ?Sized>(k: &Field, d: usize, rng: &mut R) -> ArtinAlgebra {
    let mut coeffs = random_vector(k, d, rng);
    coeffs.push(k.one());
    ArtinAlgebra::quotient_ring(&Poly::new(k, coeffs)).expect("monic of positive degree")
}

/// The same coalgebra in a random basis.
pub fn scramble<R: Rng + ?Sized>(c: &Coalgebra, rng: &mut R) -> Coalgebra {
    let p = random_invertible(c.field(), c.dim(), rng);
    c.change_basis(&p).expect("invertible").0
}

/// A random coalgebra of dimension at most `max_dim`.
pub fn random_coalgebra<R: Rng + ?Sized>(k: &Field, max_dim: usize, rng: &mut R) -> Sample {
    let s = build(k, max_dim.max(1), 2, rng);
    if rng.gen_bool(0.5) {
        Sample { recipe: format!("scrambled({})", s.recipe), coalgebra: scramble(&s.coalgebra, rng) }
    } else {
        s
    }
}

fn build<R: Rng + ?Sized>(k: &Field, max: usize, depth: usize, rng: &mut R) -> Sample {
    let leaf = depth == 0 || max < 2;
    let choice = if leaf { rng.gen_range(0..3) } else { rng.gen_range(0..7) };
    match choice {
        0 => {
            let n = rng.gen_range(1..=max.min(3));
            Sample { recipe: format!("diag({n})"), coalgebra: diagonal_coalgebra(k, n) }
        }
        1 => {
            let d = rng.gen_range(1..=max.min(4));
            let a = random_quotient_ring(k, d, rng);
            Sample { recipe: format!("dual(k[x]/deg {d})"), coalgebra: dual_coalgebra(&a) }
        }
        2 => {
            if max < 2 {
                return Sample { recipe: "k".into(), coalgebra: Coalgebra::trivial(k) };
            }
            let m = rng.gen_range(1..=(max - 1).min(2));
            Sample { recipe: format!("dual(sqzero({m}))"), coalgebra: dual_coalgebra(&square_zero_algebra(k, m)) }
        }
        3 => {
            let a = build(k, max - 1, depth - 1, rng);
            let rest = max - a.coalgebra.dim().max(1);
            let b = build(k, rest.max(1), depth - 1, rng);
            if a.coalgebra.dim() + b.coalgebra.dim() > max {
                return a;
            }
            Sample {
                recipe: format!("sum({}, {})", a.recipe, b.recipe),
                coalgebra: direct_sum(&a.coalgebra, &b.coalgebra).coalgebra,
            }
        }
        4 => {
            let a = build(k, max / 2, depth - 1, rng);
            let b = build(k, (max / a.coalgebra.dim().max(1)).max(1), depth - 1, rng);
            if a.coalgebra.dim() * b.coalgebra.dim() > max {
                return a;
            }
            Sample { recipe: format!("tensor({}, {})", a.recipe, b.recipe), coalgebra: tensor(&a.coalgebra, &b.coalgebra) }
        }
        5 => {
            let c = build(k, max, depth - 1, rng);
            let v = random_vector(k, c.coalgebra.dim(), rng);
            let s = Subspace::from_rows(k, c.coalgebra.dim(), vec![v]);
            let sub = generated_subcoalgebra(&c.coalgebra, &s).expect("ambient matches");
            Sample { recipe: format!("sub({})", c.recipe), coalgebra: sub.coalgebra }
        }
        _ => {
            let c = build(k, max, depth - 1, rng);
            let q = random_quotient(&c.coalgebra, rng);
            Sample { recipe: format!("quot({})", c.recipe), coalgebra: q.target().clone() }
        }
    }
}

/// `C ↠ B^∨` for the subalgebra `B ⊆ C^∨` generated by a random element:
/// the quotient by the coideal `B^⊥`.
pub fn random_quotient<R: Rng + ?Sized>(c: &Coalgebra, rng: &mut R) -> CoalgebraMorphism {
    let k = c.field();
    let a = dual_algebra(c);
    let x = random_vector(k, c.dim(), rng);
    let mut powers = Vec::with_capacity(c.dim() + 1);
    let mut p = a.unit().to_vec();
    for _ in 0..=c.dim() {
        powers.push(p.clone());
        p = a.mul(&p, &x);
    }
    let b = Subspace::from_rows(k, c.dim(), powers);
    quotient(c, &b.annihilator()).expect("annihilator of a subalgebra is a coideal").projection
}

/// A random coalgebra morphism between coalgebras of dimension at most `max_dim`.
pub fn random_morphism<R: Rng + ?Sized>(k: &Field, max_dim: usize, rng: &mut R) -> MorphismSample {
    let max_dim = max_dim.max(2);
    let (recipe, m) = match rng.gen_range(0..6) {
        0 => {
            let c = random_coalgebra(k, max_dim, rng);
            let v = random_vector(k, c.coalgebra.dim(), rng);
            let s = Subspace::from_rows(k, c.coalgebra.dim(), vec![v]);
            let sub = generated_subcoalgebra(&c.coalgebra, &s).expect("ambient matches");
            (format!("inclusion into {}", c.recipe), sub.inclusion)
        }
        1 => {
            let c = random_coalgebra(k, max_dim, rng);
            (format!("quotient of {}", c.recipe), random_quotient(&c.coalgebra, rng))
        }
        2 => {
            let c = random_coalgebra(k, max_dim - 1, rng);
            let d = random_coalgebra(k, max_dim - c.coalgebra.dim().min(max_dim - 1), rng);
            let sum = direct_sum(&c.coalgebra, &d.coalgebra);
            (format!("injection {} → sum with {}", c.recipe, d.recipe), sum.injections[0].clone())
        }
        3 => {
            let c = random_coalgebra(k, max_dim / 2, rng);
            let sum = direct_sum(&c.coalgebra, &c.coalgebra);
            let n = c.coalgebra.dim();
            let fold = Matrix::identity(k, n).hstack(&Matrix::identity(k, n));
            let m = CoalgebraMorphism::new(&sum.coalgebra, &c.coalgebra, fold).expect("fold shapes");
            (format!("fold of {}", c.recipe), m)
        }
        4 => {
            let c = random_coalgebra(k, max_dim, rng);
            let one = Coalgebra::trivial(k);
            let m = CoalgebraMorphism::new(&c.coalgebra, &one, c.coalgebra.epsilon().clone()).expect("counit shapes");
            (format!("counit of {}", c.recipe), m)
        }
        _ => {
            let x = rng.gen_range(1..=max_dim.min(4));
            let y = rng.gen_range(1..=max_dim.min(4));
            let f: Vec<usize> = (0..x).map(|_| rng.gen_range(0..y)).collect();
            let src = diagonal_coalgebra(k, x);
            let tgt = diagonal_coalgebra(k, y);
            let mat = Matrix::from_fn(k, y, x, |i, j| if f[j] == i { k.one() } else { k.zero() });
            (format!("set map {f:?}"), CoalgebraMorphism::new(&src, &tgt, mat).expect("set map shapes"))
        }
    };
    // rewrite both ends in random bases
    let p = random_invertible(k, m.source().dim(), rng);
    let q = random_invertible(k, m.target().dim(), rng);
    let (src, ps) = m.source().change_basis(&p).expect("invertible");
    let (tgt, _) = m.target().change_basis(&q).expect("invertible");
    let qinv = q.inverse().expect("invertible");
    let mat = qinv.mul(m.matrix()).mul(ps.matrix());
    let morphism = CoalgebraMorphism::new(&src, &tgt, mat).expect("conjugated shapes");
    MorphismSample { recipe, morphism }
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;

    #[test]
    fn samples_are_valid_and_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [Field::rationals(), Field::prime(2).unwrap(), Field::prime(3).unwrap()] {
            for _ in 0..60 {
                let s = random_coalgebra(&k, 6, &mut rng);
                assert!(s.coalgebra.dim() <= 6, "{}", s.recipe);
                assert!(s.coalgebra.is_valid(), "{}", s.recipe);
                let m = random_morphism(&k, 6, &mut rng);
                assert!(m.morphism.is_valid(), "{}", m.recipe);
            }
        }
    }

    #[test]
    fn square_zero_algebra_is_local() {
        let k = Field::prime(2).unwrap();
        let a = square_zero_algebra(&k, 2);
        assert!(a.validate().is_valid());
        assert_eq!(crate::structure::radical(&a).dim(), 2);
    }
}
