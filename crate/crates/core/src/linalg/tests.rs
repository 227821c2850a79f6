use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;

fn random_matrix(k: &Field, rng: &mut ChaCha8Rng, r: usize, c: usize) -> Matrix {
    Matrix::from_fn(k, r, c, |_, _| k.random(rng))
}

/// Laplace expansion along the first row; an oracle independent of elimination.
fn cofactor_det(k: &Field, m: &[Vec<Elem>]) -> Elem {
    let n = m.len();
    if n == 0 {
        return k.one();
    }
    let mut acc = k.zero();
    for j in 0..n {
        let minor: Vec<Vec<Elem>> = m[1..]
            .iter()
            .map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, e)| e.clone()).collect())
            .collect();
        let term = k.mul(&m[0][j], &cofactor_det(k, &minor));
        acc = if j % 2 == 0 { k.add(&acc, &term) } else { k.sub(&acc, &term) };
    }
    acc
}

#[test]
fn rref_examples() {
    let q = Field::rationals();
    let (r, rank) = Matrix::zeros(&q, 2, 2).rref();
    assert_eq!((r, rank), (Matrix::zeros(&q, 2, 2), 0));
    let (r, rank) = Matrix::from_i64(&q, &[&[2, 4], &[1, 2]]).rref();
    assert_eq!(rank, 1);
    assert_eq!(r, Matrix::from_i64(&q, &[&[1, 2], &[0, 0]]));
}

#[test]
fn invertible_f3_reduces_to_identity() {
    let k = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut seen = 0;
    while seen < 30 {
        let m = random_matrix(&k, &mut rng, 5, 5);
        if k.is_zero(&cofactor_det(&k, &m.to_rows())) {
            continue;
        }
        seen += 1;
        let (r, rank) = m.rref();
        assert_eq!(rank, 5);
        assert!(r.is_identity());
        assert_eq!(m.det().unwrap(), cofactor_det(&k, &m.to_rows()));
    }
}

#[test]
fn fraction_free_matches_plain_elimination() {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..200 {
        let (r, c) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let mut m = random_matrix(&q, &mut rng, r, c);
        // force some rank deficiency
        if r > 2 && rng.gen_bool(0.5) {
            let row: Vec<Elem> = m.row(0).iter().zip(m.row(1)).map(|(a, b)| q.add(a, &q.mul(b, &q.from_i64(3)))).collect();
            for (j, v) in row.into_iter().enumerate() {
                m.set(r - 1, j, v);
            }
        }
        let a = m.echelon();
        let b = rref::reference_echelon(&m);
        assert_eq!(a.matrix(), b.matrix());
        assert_eq!(a.pivots(), b.pivots());
    }
}

#[test]
fn rref_is_idempotent_and_kernel_exact() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let fields = [
        Field::rationals(),
        Field::prime(2).unwrap(),
        Field::prime(3).unwrap(),
        Field::prime(5).unwrap(),
        Field::extension(2, vec![1, 1, 1]).unwrap(),
    ];
    for k in &fields {
        for _ in 0..200 {
            let (r, c) = (rng.gen_range(0..6), rng.gen_range(0..6));
            let m = random_matrix(k, &mut rng, r, c);
            let (e, rank) = m.rref();
            assert_eq!(e.rref(), (e.clone(), rank));
            let ker = m.kernel();
            assert_eq!(ker.dim() + rank, c);
            assert!(m.mul(&ker.inclusion()).is_zero());
        }
    }
}

#[test]
fn kernel_examples() {
    let f2 = Field::prime(2).unwrap();
    assert!(Matrix::identity(&f2, 3).kernel().is_zero());
    let ker = Matrix::from_i64(&f2, &[&[1, 1]]).kernel();
    assert_eq!(ker, Subspace::from_rows(&f2, 2, vec![vec![f2.one(), f2.one()]]));
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let a = random_matrix(&q, &mut rng, 4, 3);
    let b = random_matrix(&q, &mut rng, 3, 6);
    let m = a.mul(&b);
    if m.rank() == 3 {
        let ker = m.kernel();
        assert_eq!(ker.dim(), 3);
        assert!(m.mul(&ker.inclusion()).is_zero());
    }
}

fn enumerate_span(k: &Field, s: &Subspace) -> Vec<Vec<Elem>> {
    let elems = k.elements(64).unwrap();
    let d = s.dim();
    let mut out = Vec::new();
    let q = elems.len();
    for idx in 0..q.pow(d as u32) {
        let mut i = idx;
        let mut v = vec![k.zero(); s.ambient_dim()];
        for r in 0..d {
            let c = &elems[i % q];
            i /= q;
            for (j, b) in s.basis().row(r).iter().enumerate() {
                v[j] = k.add(&v[j], &k.mul(c, b));
            }
        }
        out.push(v);
    }
    out.sort();
    out.dedup();
    out
}

#[test]
fn modular_law_against_enumeration() {
    let k = Field::prime(2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..500 {
        let r = rng.gen_range(0..4);
        let a = Subspace::from_matrix(&random_matrix(&k, &mut rng, r, 6));
        let r = rng.gen_range(0..4);
        let b = Subspace::from_matrix(&random_matrix(&k, &mut rng, r, 6));
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        assert_eq!(a.dim() + b.dim(), s.dim() + i.dim());
        let (ea, eb) = (enumerate_span(&k, &a), enumerate_span(&k, &b));
        let common: Vec<_> = ea.iter().filter(|v| eb.contains(v)).cloned().collect();
        assert_eq!(enumerate_span(&k, &i), common);
        assert!(s.contains(&a).unwrap() && s.contains(&b).unwrap());
        assert!(a.contains(&i).unwrap() && b.contains(&i).unwrap());
    }
}

#[test]
fn subspace_examples() {
    let k = Field::rationals();
    let a = Subspace::coordinate(&k, 2, &[0]);
    let b = Subspace::coordinate(&k, 2, &[1]);
    assert!(a.intersect(&b).unwrap().is_zero());
    assert_eq!(a.sum(&Subspace::zero(&k, 2)).unwrap(), a);
    assert_eq!(
        subspace_ops(&a, &Subspace::zero(&k, 3), SubspaceOp::Sum),
        Err(Error::AmbientMismatch { left: 2, right: 3 })
    );
    // canonical form: different spanning sets give identical bases
    let s1 = Subspace::from_rows(&k, 3, vec![vec![k.from_i64(1), k.from_i64(2), k.from_i64(3)], vec![k.from_i64(0), k.from_i64(1), k.from_i64(1)]]);
    let s2 = Subspace::from_rows(&k, 3, vec![vec![k.from_i64(1), k.from_i64(3), k.from_i64(4)], vec![k.from_i64(2), k.from_i64(5), k.from_i64(7)]]);
    assert_eq!(s1, s2);
}

#[test]
fn kronecker_properties() {
    let k = Field::prime(5).unwrap();
    let i2 = Matrix::identity(&k, 2);
    let i3 = Matrix::identity(&k, 3);
    assert_eq!(kron(&i2, &i3), Matrix::identity(&k, 6));
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..50 {
        let a = random_matrix(&k, &mut rng, 3, 3);
        let b = random_matrix(&k, &mut rng, 3, 3);
        let u: Vec<Elem> = (0..3).map(|_| k.random(&mut rng)).collect();
        let v: Vec<Elem> = (0..3).map(|_| k.random(&mut rng)).collect();
        let lhs = kron(&a, &b).mul_vec(&kron_vec(&k, &u, &v));
        let rhs = kron_vec(&k, &a.mul_vec(&u), &b.mul_vec(&v));
        assert_eq!(lhs, rhs);
        let c = random_matrix(&k, &mut rng, 2, 2);
        assert_eq!(kron(&kron(&a, &b), &c), kron(&a, &kron(&b, &c)));
    }
    let u = vec![k.from_i64(1), k.from_i64(2)];
    let v = vec![k.from_i64(3), k.from_i64(4)];
    assert_eq!(swap_matrix(&k, 2, 2).mul_vec(&kron_vec(&k, &u, &v)), kron_vec(&k, &v, &u));
    let q = Field::rationals();
    assert!(matches!(kronecker(&i2, &Matrix::identity(&q, 2)), Err(Error::SpecMismatch(_))));
}

#[test]
fn coequalizer_examples_and_universality() {
    let k = Field::prime(3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let f = random_matrix(&k, &mut rng, 4, 3);
    let (q, d) = coequalizer(&f, &f).unwrap();
    assert_eq!(d, 4);
    assert!(q.is_identity());
    let g = Matrix::zeros(&k, 2, 2);
    let (_, d) = coequalizer(&Matrix::identity(&k, 2), &g).unwrap();
    assert_eq!(d, 0);
    assert!(matches!(coequalizer(&f, &g), Err(Error::ShapeMismatch(_))));
    for _ in 0..100 {
        let (w, v) = (rng.gen_range(1..7), rng.gen_range(1..7));
        let f = random_matrix(&k, &mut rng, w, v);
        let g = random_matrix(&k, &mut rng, w, v);
        let (q, d) = coequalizer(&f, &g).unwrap();
        let diff = f.sub(&g);
        assert_eq!(q.rank() + diff.rank(), w);
        assert_eq!(q.rank(), d);
        assert!(q.mul(&diff).is_zero());
        // random cone h with h(f-g) = 0 factors uniquely through q
        let coker_rows = diff.left_kernel();
        let coeffs = random_matrix(&k, &mut rng, 2, coker_rows.dim());
        let h = coeffs.mul(coker_rows.basis());
        let u = factor_through_coequalizer(&q, &h).expect("factorization");
        assert_eq!(u.mul(&q), h);
        assert_eq!(q.right_inverse().map(|s| q.mul(&s).is_identity()), Some(true));
    }
}

#[test]
fn solve_and_inverse() {
    let q = Field::rationals();
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let a = random_matrix(&q, &mut rng, 4, 4);
        if let Some(inv) = a.inverse() {
            assert!(a.mul(&inv).is_identity());
            assert!(!q.is_zero(&a.det().unwrap()));
        } else {
            assert!(q.is_zero(&a.det().unwrap()));
        }
        let b = random_matrix(&q, &mut rng, 4, 2);
        if let Some(x) = a.solve(&b) {
            assert_eq!(a.mul(&x), b);
        }
    }
}
