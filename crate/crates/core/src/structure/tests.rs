use super::*;
use crate::brute::{self, RawCoalgebra};
use crate::coalg::{diagonal_coalgebra, dual_coalgebra, Coalgebra, CoalgebraMorphism};
use crate::report::Status;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn ring(k: &Field, coeffs: &[i64]) -> ArtinAlgebra {
    ArtinAlgebra::quotient_ring(&Poly::from_i64s(k, coeffs)).unwrap()
}

fn ev(k: &Field, v: &[i64]) -> Vec<Elem> {
    v.iter().map(|&x| k.from_i64(x)).collect()
}

fn cfg() -> FactorConfig {
    FactorConfig::default()
}

/// `𝔽_2[x]/((x²+x+1)²)`, and `(x²+x+1)² = x⁴+x²+1`.
fn hensel_algebra() -> ArtinAlgebra {
    ring(&f2(), &[1, 0, 1, 0, 1])
}

#[test]
fn radical_examples() {
    let k = f2();
    assert!(radical(&ring(&k, &[1, 1, 1])).is_zero());
    let dn = ring(&k, &[0, 0, 1]);
    assert_eq!(radical(&dn), Subspace::from_rows(&k, 2, vec![ev(&k, &[0, 1])]));
    // the trace form does not see it in characteristic 2
    assert!(trace_form(&dn).is_zero());
    let a = hensel_algebra();
    let u = ev(&k, &[1, 1, 1, 0]);
    let xu = ev(&k, &[0, 1, 1, 1]);
    let expected = Subspace::from_rows(&k, 4, vec![u, xu]);
    assert_eq!(radical(&a), expected);
    // nilpotent elements by enumeration over all 16 elements
    let nil: Vec<Vec<Elem>> = brute::all_vectors(2, 4)
        .into_iter()
        .map(|v| v.iter().map(|&x| k.from_i64(x as i64)).collect::<Vec<_>>())
        .filter(|v| a.is_zero_elem(&a.pow(v, 4)))
        .collect();
    assert_eq!(nil.len(), 4);
    assert!(nil.iter().all(|v| expected.contains_vector(v)));
}

#[test]
fn radical_over_rationals_and_extension() {
    let q = Field::rationals();
    // ℚ[x]/(x²(x²−2)): radical spanned by x(x²−2) = x³ − 2x
    let a = ring(&q, &[0, 0, -2, 0, 1]);
    assert_eq!(radical(&a), Subspace::from_rows(&q, 4, vec![ev(&q, &[0, -2, 0, 1])]));
    let f4 = Field::extension(2, vec![1, 1, 1]).unwrap();
    let b = ring(&f4, &[0, 0, 0, 1]);
    assert_eq!(radical(&b).dim(), 2);
    // A/rad has a nondegenerate trace form
    let (quo, _) = a.quotient(&radical(&a));
    assert!(trace_form(&quo).inverse().is_some());
}

#[test]
fn local_decomposition_examples() {
    let k = f2();
    let d = local_decomposition(&ring(&k, &[0, 1, 1]), &cfg()).unwrap();
    assert_eq!(d.idempotents(), vec![ev(&k, &[0, 1]), ev(&k, &[1, 1])]);
    assert!(d.components.iter().all(|c| c.algebra.dim() == 1 && c.residue.degree() == 1));
    assert!(d.verify(&cfg()).unwrap().is_empty());

    let d = local_decomposition(&hensel_algebra(), &cfg()).unwrap();
    assert_eq!(d.components.len(), 1);
    let c = &d.components[0];
    assert_eq!((c.algebra.dim(), c.residue.degree(), c.nilpotency), (4, 2, 2));
    assert_eq!(c.residue.minimal_poly, Poly::from_i64s(&k, &[1, 1, 1]));
    assert!(d.verify(&cfg()).unwrap().is_empty());

    // x³ + x = x(x+1)²; CRT: the x-part idempotent is (x+1)² = x² + 1
    let d = local_decomposition(&ring(&k, &[0, 1, 0, 1]), &cfg()).unwrap();
    let dims: Vec<usize> = d.components.iter().map(|c| c.algebra.dim()).collect();
    assert_eq!(dims, vec![1, 2]);
    assert_eq!(d.components[0].idempotent, ev(&k, &[1, 0, 1]));
    assert!(d.verify(&cfg()).unwrap().is_empty());
}

#[test]
fn local_decomposition_over_rationals() {
    let q = Field::rationals();
    // (x−1)²(x²+1)
    let a = ring(&q, &[1, -2, 2, -2, 1]);
    let d = local_decomposition(&a, &cfg()).unwrap();
    let mut shape: Vec<(usize, usize)> =
        d.components.iter().map(|c| (c.algebra.dim(), c.residue.degree())).collect();
    shape.sort();
    assert_eq!(shape, vec![(2, 1), (2, 2)]);
    assert!(d.verify(&cfg()).unwrap().is_empty());
}

#[test]
fn split_algebra_needs_random_or_exhaustive_probes() {
    // 𝔽_4 × 𝔽_4 over 𝔽_2 in a basis where no basis vector splits
    let k = f2();
    let f4 = ring(&k, &[1, 1, 1]);
    let prod = f4.product(&f4);
    let p = Matrix::from_i64(&k, &[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 1, 1], &[0, 0, 0, 1]]);
    let c = dual_coalgebra(&prod);
    let (c2, _) = c.change_basis(&p).unwrap();
    let d = local_decomposition(&crate::coalg::dual_algebra(&c2), &cfg()).unwrap();
    assert_eq!(d.components.len(), 2);
    assert!(!d.is_split());
    assert!(d.verify(&cfg()).unwrap().is_empty());
}

#[test]
fn hensel_witness() {
    let k = f2();
    let a = hensel_algebra();
    let p = Poly::from_i64s(&k, &[1, 1, 1]);
    let xbar = ev(&k, &[0, 1, 0, 0]);
    let (root, steps) = hensel_lift(&a, &p, &xbar).unwrap();
    assert_eq!(root, ev(&k, &[1, 0, 1, 0]));
    assert_eq!(steps, 1);
    // exhaustive: the only root of p congruent to x̄ modulo m
    let m = radical(&a);
    let roots: Vec<Vec<Elem>> = brute::all_vectors(2, 4)
        .into_iter()
        .map(|v| v.iter().map(|&x| k.from_i64(x as i64)).collect::<Vec<_>>())
        .filter(|v| a.is_zero_elem(&a.eval_poly(&p, v)) && m.contains_vector(&a.sub(v, &xbar)))
        .collect();
    assert_eq!(roots, vec![root.clone()]);
    let w = wedderburn_splitting_from(&a, &m, &p, &xbar).unwrap();
    assert_eq!(w.root, root);
    assert_eq!(w.field.degree(), 2);
    assert!(w.field.verify(&cfg()).unwrap());
    assert!(w.embedding.hstack(&m.inclusion()).inverse().is_some());
}

#[test]
fn wedderburn_trivial_cases() {
    let k = Field::prime(3).unwrap();
    let a = ring(&k, &[0, 0, 1]);
    let d = local_decomposition(&a, &cfg()).unwrap();
    let w = wedderburn_splitting(&d.components[0]).unwrap();
    assert_eq!(w.field.degree(), 1);
    let x = w.retract.mul_vec(&d.components[0].projection.mul_vec(&ev(&k, &[0, 1])));
    assert_eq!(x, vec![k.zero()]);

    let f = ring(&f2(), &[1, 1, 0, 1]);
    let d = local_decomposition(&f, &cfg()).unwrap();
    let w = wedderburn_splitting(&d.components[0]).unwrap();
    assert_eq!(w.field.degree(), 3);
    assert_eq!(w.newton_steps, 0);
    assert!(w.retract.mul(&w.embedding).is_identity());
}

#[test]
fn etale_examples() {
    let k = f2();
    let diag = diagonal_coalgebra(&k, 3);
    let e = etale_part(&diag, &cfg()).unwrap();
    assert!(e.space.is_full());
    assert_eq!(e.retraction.matrix().mul(e.inclusion.matrix()), Matrix::identity(&k, 3));
    assert!(e.verify(&cfg()).unwrap().all_passed());

    let dn = Coalgebra::dual_numbers(&k);
    let e = etale_part(&dn, &cfg()).unwrap();
    assert_eq!(e.space, Subspace::from_rows(&k, 2, vec![ev(&k, &[1, 0])]));
    assert_eq!(e.retraction.matrix(), &Matrix::from_i64(&k, &[&[1, 0]]));
    let raw = RawCoalgebra::from_coalgebra(&dn).unwrap();
    assert_eq!(brute::simple_subcoalgebras(&raw), vec![vec![vec![1, 0]]]);

    let c = dual_coalgebra(&ring(&k, &[0, 1, 0, 1]));
    let e = etale_part(&c, &cfg()).unwrap();
    assert_eq!(e.etale.dim(), 2);
    assert_eq!(e.simples.len(), 2);
    assert!(e.verify(&cfg()).unwrap().all_passed());
    let raw = RawCoalgebra::from_coalgebra(&c).unwrap();
    let oracle: Vec<Vec<Elem>> =
        brute::etale_part(&raw).iter().map(|r| r.iter().map(|&x| k.from_i64(x as i64)).collect()).collect();
    assert_eq!(e.space, Subspace::from_rows(&k, 3, oracle));
}

#[test]
fn retraction_is_unique() {
    let k = f2();
    for c in [
        Coalgebra::dual_numbers(&k),
        dual_coalgebra(&ring(&k, &[0, 1, 0, 1])),
        dual_coalgebra(&ring(&k, &[0, 0, 0, 1])),
        dual_coalgebra(&ring(&k, &[1, 1, 0, 1])),
    ] {
        let e = etale_part(&c, &cfg()).unwrap();
        let raw_c = RawCoalgebra::from_coalgebra(&c).unwrap();
        let raw_e = RawCoalgebra::from_coalgebra(&e.etale).unwrap();
        let iota = to_raw(e.inclusion.matrix());
        let all = brute::retractions(&raw_c, &raw_e, &iota);
        assert_eq!(all, vec![to_raw(e.retraction.matrix())]);
    }
}

fn to_raw(m: &Matrix) -> Vec<u64> {
    m.entries()
        .iter()
        .map(|e| match e {
            Elem::Mod(v) => *v,
            _ => unreachable!(),
        })
        .collect()
}

#[test]
fn irreducible_component_examples() {
    let k = f2();
    let ic = irreducible_components(&diagonal_coalgebra(&k, 3), &cfg()).unwrap();
    assert_eq!(ic.components.len(), 3);
    assert!(ic.is_isomorphism());
    let ic = irreducible_components(&Coalgebra::dual_numbers(&k), &cfg()).unwrap();
    assert_eq!(ic.components.len(), 1);
    assert!(ic.components[0].space.is_full());
    let c = dual_coalgebra(&ring(&k, &[0, 1, 0, 1]));
    let ic = irreducible_components(&c, &cfg()).unwrap();
    let dims: Vec<usize> = ic.components.iter().map(|s| s.space.dim()).collect();
    assert_eq!(dims, vec![1, 2]);
    assert!(ic.is_isomorphism());
    let raw = RawCoalgebra::from_coalgebra(&c).unwrap();
    for comp in &ic.components {
        let sub_raw = RawCoalgebra::from_coalgebra(&comp.coalgebra).unwrap();
        assert_eq!(brute::simple_subcoalgebras(&sub_raw).len(), 1);
    }
    assert_eq!(brute::simple_subcoalgebras(&raw).len(), 2);
}

#[test]
fn group_like_examples() {
    let k = f2();
    let gl = group_likes(&diagonal_coalgebra(&k, 3), &cfg()).unwrap();
    let mut e = gl.elements.clone();
    e.sort();
    assert_eq!(e, vec![ev(&k, &[0, 0, 1]), ev(&k, &[0, 1, 0]), ev(&k, &[1, 0, 0])]);
    let f4dual = dual_coalgebra(&ring(&k, &[1, 1, 1]));
    assert!(group_likes(&f4dual, &cfg()).unwrap().is_empty());
    let raw = RawCoalgebra::from_coalgebra(&f4dual).unwrap();
    assert!(brute::group_likes(&raw).is_empty());
    let gl = group_likes(&Coalgebra::dual_numbers(&k), &cfg()).unwrap();
    assert_eq!(gl.elements, vec![ev(&k, &[1, 0])]);
}

#[test]
fn group_likes_over_rationals() {
    let q = Field::rationals();
    // ℚ[x]/((x−1)(x+2)(x²+1)): two rational points
    let a = ring(&q, &[-2, 1, -1, 1, 1]);
    let c = dual_coalgebra(&a);
    let gl = group_likes(&c, &cfg()).unwrap();
    assert_eq!(gl.len(), 2);
    // evaluation at 1 and at −2 on the basis 1, x, x², x³
    let mut e = gl.elements.clone();
    e.sort();
    assert_eq!(e, vec![ev(&q, &[1, -2, 4, -8]), ev(&q, &[1, 1, 1, 1])]);
}

#[test]
fn adjunction_examples() {
    let k = f2();
    assert!(gp_unit_checks(&k, 2, &cfg()).unwrap().all_passed());
    let rep = gp_adjunction_checks(&Coalgebra::dual_numbers(&k), &cfg()).unwrap();
    assert!(rep.all_passed());
    assert_eq!(rep.count(Status::Skipped), 0);
    let f4dual = dual_coalgebra(&ring(&k, &[1, 1, 1]));
    let rep = gp_adjunction_checks(&f4dual, &cfg()).unwrap();
    assert!(rep.all_passed());
    assert_eq!(rep.count(Status::Skipped), 1);
}

#[test]
fn naturality_examples() {
    let k = f2();
    let dn = Coalgebra::dual_numbers(&k);
    assert!(naturality_suite(&dn.identity_morphism(), &cfg()).unwrap().all_passed());
    let eps = CoalgebraMorphism::validated(&dn, &Coalgebra::trivial(&k), dn.epsilon().clone()).unwrap();
    assert!(naturality_suite(&eps, &cfg()).unwrap().all_passed());
    let c = dual_coalgebra(&ring(&k, &[0, 1, 0, 1]));
    let ic = irreducible_components(&c, &cfg()).unwrap();
    for comp in &ic.components {
        assert!(naturality_suite(&comp.inclusion, &cfg()).unwrap().all_passed());
    }
}
