use super::*;
use crate::brute::{self, RawCoalgebra};
use crate::field::Poly;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn vecs(k: &Field, rows: &[&[i64]]) -> Vec<Vec<Elem>> {
    rows.iter().map(|r| r.iter().map(|&v| k.from_i64(v)).collect()).collect()
}

#[test]
fn validation_examples() {
    let k = f2();
    assert!(Coalgebra::trivial(&k).is_valid());
    assert!(Coalgebra::dual_numbers(&k).is_valid());
    // Δt = t⊗t breaks the counit at t
    let delta = Matrix::from_i64(&k, &[&[1, 0], &[0, 0], &[0, 0], &[0, 1]]);
    let bad = Coalgebra::new(&k, delta, Matrix::from_i64(&k, &[&[1, 0]])).unwrap();
    let report = bad.validate();
    assert!(report.violations.contains(&Violation { axiom: Axiom::LeftCounit, witness: 1 }));
    assert!(report.violations.iter().all(|v| v.witness == 1));
}

#[test]
fn shape_errors() {
    let k = f2();
    let err = Coalgebra::new(&k, Matrix::zeros(&k, 3, 2), Matrix::zeros(&k, 1, 2));
    assert!(matches!(err, Err(Error::ShapeMismatch(_))));
}

#[test]
fn duality() {
    let k = f2();
    let split = dual_algebra(&diagonal_coalgebra(&k, 2));
    assert_eq!(split, ArtinAlgebra::split(&k, 2));
    let a = ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[0, 0, 1])).unwrap();
    assert_eq!(dual_coalgebra(&a), Coalgebra::dual_numbers(&k));
    let c = Coalgebra::dual_numbers(&k);
    assert_eq!(dual_coalgebra(&dual_algebra(&c)), c);
    assert!(dual_algebra(&c).validate().is_valid());
}

#[test]
fn diagonal_examples() {
    let k = f2();
    assert_eq!(diagonal_coalgebra(&k, 0), Coalgebra::zero(&k));
    assert_eq!(diagonal_coalgebra(&k, 1), Coalgebra::trivial(&k));
    let c = diagonal_coalgebra(&k, 3);
    assert!(c.is_valid());
    let raw = RawCoalgebra::from_coalgebra(&c).unwrap();
    let gl = brute::group_likes(&raw);
    assert_eq!(gl, vec![vec![0, 0, 1], vec![0, 1, 0], vec![1, 0, 0]]);
}

#[test]
fn construction_examples() {
    let k = f2();
    let t = Coalgebra::trivial(&k);
    let sum = direct_sum(&t, &t);
    assert_eq!(sum.coalgebra, diagonal_coalgebra(&k, 2));
    for m in &sum.injections {
        assert!(m.is_valid());
    }
    assert!(sum.projections[0].mul(sum.injections[0].matrix()).is_identity());
    let dn = Coalgebra::dual_numbers(&k);
    let g = Subspace::from_rows(&k, 2, vecs(&k, &[&[1, 0]]));
    let s = sub(&dn, &g).unwrap();
    assert_eq!(s.coalgebra, t);
    assert!(s.inclusion.is_valid());
    let tline = Subspace::from_rows(&k, 2, vecs(&k, &[&[0, 1]]));
    assert!(matches!(sub(&dn, &tline), Err(Error::NotASubcoalgebra { .. })));
}

#[test]
fn quotient_and_pushout() {
    let k = Field::prime(3).unwrap();
    let dn = Coalgebra::dual_numbers(&k);
    // span{t} is a coideal: Δt ∈ C⊗t + t⊗C, εt = 0
    let tline = Subspace::from_rows(&k, 2, vecs(&k, &[&[0, 1]]));
    let q = quotient(&dn, &tline).unwrap();
    assert_eq!(q.coalgebra, Coalgebra::trivial(&k));
    assert!(q.projection.is_valid());
    let gline = Subspace::from_rows(&k, 2, vecs(&k, &[&[1, 0]]));
    assert!(matches!(quotient(&dn, &gline), Err(Error::NotACoideal { .. })));
    // gluing two copies of k⊕k along one point gives three points
    let t = Coalgebra::trivial(&k);
    let two = diagonal_coalgebra(&k, 2);
    let f = CoalgebraMorphism::validated(&t, &two, Matrix::from_i64(&k, &[&[1], &[0]])).unwrap();
    let po = pushout(&f, &f).unwrap();
    assert_eq!(po.coalgebra.dim(), 3);
    assert!(po.coalgebra.is_valid());
    assert!(po.from_b.is_valid() && po.from_c.is_valid());
    assert_eq!(po.from_b.matrix().mul(f.matrix()), po.from_c.matrix().mul(f.matrix()));
}

#[test]
fn generated_examples() {
    let k = f2();
    let dn = Coalgebra::dual_numbers(&k);
    let g = Subspace::from_rows(&k, 2, vecs(&k, &[&[1, 0]]));
    assert_eq!(generated_subcoalgebra(&dn, &g).unwrap().space, g);
    let t = Subspace::from_rows(&k, 2, vecs(&k, &[&[0, 1]]));
    assert!(generated_subcoalgebra(&dn, &t).unwrap().space.is_full());
    // (F_2[x]/(x^3))^∨ generated by the top dual vector s
    let a = ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[0, 0, 0, 1])).unwrap();
    let c = dual_coalgebra(&a);
    let s = Subspace::from_rows(&k, 3, vecs(&k, &[&[0, 0, 1]]));
    let gen = generated_subcoalgebra(&c, &s).unwrap();
    assert!(gen.space.is_full());
    let raw = RawCoalgebra::from_coalgebra(&c).unwrap();
    let oracle = brute::minimal_subcoalgebra_containing(&raw, &[vec![0, 0, 1]]);
    assert_eq!(oracle.len(), 3);
    assert_eq!(brute::all_subspaces(2, 3).len(), 16);
}

#[test]
fn tensor_group_likes_are_pairwise_products() {
    let k = f2();
    let c = tensor(&diagonal_coalgebra(&k, 2), &diagonal_coalgebra(&k, 2));
    assert!(c.is_valid());
    let raw = RawCoalgebra::from_coalgebra(&c).unwrap();
    assert_eq!(brute::group_likes(&raw).len(), 4);
    let d = tensor(&Coalgebra::dual_numbers(&k), &diagonal_coalgebra(&k, 2));
    assert!(d.is_valid());
}

#[test]
fn morphism_duals_are_algebra_maps() {
    let k = f2();
    let dn = Coalgebra::dual_numbers(&k);
    let counit = CoalgebraMorphism::validated(&dn, &Coalgebra::trivial(&k), dn.epsilon().clone()).unwrap();
    assert!(counit.dual().validate().is_valid());
    let bad = CoalgebraMorphism::new(&dn, &dn, Matrix::from_i64(&k, &[&[0, 1], &[1, 0]])).unwrap();
    assert!(!bad.is_valid());
}
