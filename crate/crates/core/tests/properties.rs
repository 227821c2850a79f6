use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use coalg_kernel::coalg::{direct_sum, generated_subcoalgebra, tensor};
use coalg_kernel::corpus::{random_coalgebra, random_vector};
use coalg_kernel::field::{Elem, FactorConfig, Field};
use coalg_kernel::interchange::{coalgebra_from_json, coalgebra_json, Report};
use coalg_kernel::linalg::{Matrix, Subspace};
use coalg_kernel::report::{CheckReport, Status};
use coalg_kernel::structure::{etale_part, group_likes};

fn field(i: usize) -> Field {
    match i % 4 {
        0 => Field::rationals(),
        1 => Field::prime(2).unwrap(),
        2 => Field::prime(3).unwrap(),
        _ => Field::extension(2, vec![1, 1, 1]).unwrap(),
    }
}

fn elem(k: &Field, n: i64, d: i64) -> Elem {
    match k.characteristic() {
        0 => k.parse(&format!("{n}/{}", d.unsigned_abs().max(1))).unwrap(),
        _ => k.element_by_index(n.unsigned_abs() % k.order().unwrap() as u64),
    }
}

fn matrix(k: &Field, rows: usize, cols: usize, seed: u64) -> Matrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Matrix::from_rows_with_cols(k, (0..rows).map(|_| random_vector(k, cols, &mut rng)).collect(), cols).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms(f in 0usize..4, a in -50i64..50, b in -50i64..50, c in -50i64..50, d in 1i64..9) {
        let k = field(f);
        let (x, y, z) = (elem(&k, a, d), elem(&k, b, d + 1), elem(&k, c, 1));
        prop_assert_eq!(k.sub(&k.add(&x, &y), &y), x.clone());
        prop_assert_eq!(k.mul(&x, &k.add(&y, &z)), k.add(&k.mul(&x, &y), &k.mul(&x, &z)));
        prop_assert_eq!(k.mul(&x, &y), k.mul(&y, &x));
        if !k.is_zero(&y) {
            prop_assert_eq!(k.div(&k.mul(&x, &y), &y).unwrap(), x.clone());
        }
        prop_assert_eq!(k.parse(&k.format(&x)).unwrap(), x);
    }

    #[test]
    fn rank_nullity_and_inverses(f in 0usize..4, r in 1usize..6, c in 1usize..6, seed in any::<u64>()) {
        let k = field(f);
        let m = matrix(&k, r, c, seed);
        prop_assert_eq!(m.rank() + m.kernel().dim(), c);
        prop_assert_eq!(m.rank(), m.transpose().rank());
        let n = matrix(&k, c, r, seed ^ 1);
        prop_assert_eq!(m.mul(&n).transpose(), n.transpose().mul(&m.transpose()));
        let sq = matrix(&k, r, r, seed ^ 2);
        match sq.inverse() {
            Some(inv) => prop_assert!(sq.mul(&inv).is_identity()),
            None => prop_assert!(sq.rank() < r),
        }
    }

    #[test]
    fn subspace_sum_and_intersection(f in 0usize..3, n in 1usize..6, seed in any::<u64>()) {
        let k = field(f);
        let a = Subspace::from_matrix(&matrix(&k, 2, n, seed));
        let b = Subspace::from_matrix(&matrix(&k, 2, n, seed ^ 7));
        let s = a.sum(&b).unwrap();
        let i = a.intersect(&b).unwrap();
        prop_assert_eq!(s.dim() + i.dim(), a.dim() + b.dim());
        prop_assert!(s.contains(&a).unwrap() && a.contains(&i).unwrap());
    }

    #[test]
    fn corpus_coalgebras_are_valid(f in 0usize..3, seed in any::<u64>()) {
        let k = field(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_coalgebra(&k, 4, &mut rng).coalgebra;
        prop_assert!(c.is_valid());
        let d = random_coalgebra(&k, 3, &mut rng).coalgebra;
        prop_assert!(direct_sum(&c, &d).coalgebra.is_valid());
        if c.dim() * d.dim() <= 9 {
            prop_assert!(tensor(&c, &d).is_valid());
        }
        prop_assert_eq!(coalgebra_from_json(&coalgebra_json(&c)).unwrap(), c);
    }

    #[test]
    fn etale_retraction_splits_inclusion(f in 0usize..3, seed in any::<u64>()) {
        let k = field(f);
        let cfg = FactorConfig::default();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_coalgebra(&k, 5, &mut rng).coalgebra;
        let e = etale_part(&c, &cfg).unwrap();
        prop_assert!(e.retraction.matrix().mul(e.inclusion.matrix()).is_identity());
        prop_assert!(e.inclusion.is_valid() && e.retraction.is_valid());
        let gl = group_likes(&c, &cfg).unwrap();
        for g in &gl.elements {
            prop_assert!(e.space.contains_vector(g));
        }
        if e.is_split() {
            prop_assert_eq!(gl.len(), e.space.dim());
        }
    }

    #[test]
    fn generated_subcoalgebra_contains_generators(f in 0usize..3, seed in any::<u64>()) {
        let k = field(f);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_coalgebra(&k, 5, &mut rng).coalgebra;
        let v = random_vector(&k, c.dim(), &mut rng);
        let s = generated_subcoalgebra(&c, &Subspace::from_rows(&k, c.dim(), vec![v.clone()])).unwrap();
        prop_assert!(s.space.contains_vector(&v));
        prop_assert!(c.is_subcoalgebra(&s.space));
        let again = generated_subcoalgebra(&c, &s.space).unwrap();
        prop_assert_eq!(again.space, s.space);
    }

    #[test]
    fn reports_round_trip(names in prop::collection::vec("[a-zA-Zé∘ ]{1,12}", 0..6), fails in any::<u8>(), seed in any::<u64>()) {
        let mut rep = CheckReport::new();
        for (i, n) in names.iter().enumerate() {
            match (fails >> i) & 3 {
                0 => rep.fail(n.clone(), "detail"),
                1 => rep.skip(n.clone(), "n/a"),
                _ => rep.pass(n.clone()),
            }
        }
        let any_failed = rep.count(Status::Failed) > 0;
        let r = Report::new("validate", rep, serde_json::json!({ "n": names.len() })).with_seed(seed);
        prop_assert_eq!(r.ok, !any_failed);
        let text = r.to_canonical();
        let back = Report::parse(&text).unwrap();
        prop_assert_eq!(back.to_canonical(), text);
        prop_assert_eq!(back, r);
    }
}
