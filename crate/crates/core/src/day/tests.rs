use std::sync::Arc;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use super::examples::{divided_powers, example_coalgebras as examples, poset_example, standard_categories as categories};
use super::*;
use crate::brute::{self, contains_all, is_day_subcoalgebra, is_minimal_among, sub_presheaves};
use crate::coalg::{generated_subcoalgebra, Coalgebra};
use crate::field::{Elem, Field};
use crate::linalg::{Matrix, Subspace};

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn q() -> Field {
    Field::rationals()
}

fn arc(c: LinearMonoidalCategory) -> Arc<LinearMonoidalCategory> {
    Arc::new(c)
}

/// Quotient dimension of the presentation of `F⊗G` at `u` by every relation
/// `[(α⊗β)φ, s, t] − [φ, α*s, β*t]`, moving both variables at once.
fn full_relation_span(prod: &DayProduct, u: usize) -> Subspace {
    let (f, g) = (prod.left(), prod.right());
    let c = f.category();
    let k = c.field().clone();
    let n = c.len();
    let mut rows = Vec::new();
    for x2 in 0..n {
        for x in 0..n {
            for a in 0..c.hom_dim(x2, x) {
                for y2 in 0..n {
                    for y in 0..n {
                        for b in 0..c.hom_dim(y2, y) {
                            let (src, tgt) = (c.tensor_obj(x2, y2), c.tensor_obj(x, y));
                            let ab = c.tensor_mor(x2, x, y2, y, &c.basis_vector(x2, x, a), &c.basis_vector(y2, y, b));
                            let fa = f.action_basis(x2, x, a);
                            let gb = g.action_basis(y2, y, b);
                            for p in 0..c.hom_dim(u, src) {
                                let phi = c.basis_vector(u, src, p);
                                let moved = c.compose(u, src, tgt, &ab, &phi);
                                for s in 0..f.dim(x) {
                                    for t in 0..g.dim(y) {
                                        let es = unit(&k, f.dim(x), s);
                                        let et = unit(&k, g.dim(y), t);
                                        let top = prod.t_vector(u, x, y, &moved, &es, &et);
                                        let bottom = prod.t_vector(u, x2, y2, &phi, &fa.mul_vec(&es), &gb.mul_vec(&et));
                                        rows.push(top.iter().zip(&bottom).map(|(a, b)| k.sub(a, b)).collect());
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Subspace::from_rows(&k, prod.t_dim(u), rows)
}

fn unit(k: &Field, n: usize, i: usize) -> Vec<Elem> {
    (0..n).map(|j| if i == j { k.one() } else { k.zero() }).collect()
}

#[test]
fn preset_categories_satisfy_the_axioms() {
    for k in [f2(), q(), Field::prime(3).unwrap()] {
        for c in categories(&k) {
            let rep = c.verify();
            assert!(rep.all_passed(), "{:?}: {:?}", c.objects(), rep.failures().collect::<Vec<_>>());
        }
    }
}

#[test]
fn generating_relations_span_all_relations() {
    let mut rng = StdRng::seed_from_u64(11);
    for k in [f2(), q()] {
        for c in categories(&k) {
            for _ in 0..3 {
                let f = DayPresheaf::random(&c, 3, &mut rng);
                let g = DayPresheaf::random(&c, 3, &mut rng);
                let prod = day_convolve(&f, &g).unwrap();
                for u in 0..c.len() {
                    assert_eq!(prod.relations(u), &full_relation_span(&prod, u));
                    assert_eq!(prod.presheaf.dim(u), prod.t_dim(u) - prod.relations(u).dim());
                }
                assert!(prod.presheaf.is_valid());
            }
        }
    }
}

#[test]
fn representables_convolve_to_representables() {
    for k in [f2(), q()] {
        for c in categories(&k) {
            for x in 0..c.len() {
                for y in 0..c.len() {
                    let (prod, hxy, cmp) = yoneda_comparison(&c, x, y).unwrap();
                    assert!(cmp.is_natural(&prod.presheaf, &hxy));
                    assert!(cmp.is_iso(), "h_{x} ⊗ h_{y}");
                    for u in 0..c.len() {
                        assert_eq!(prod.presheaf.dim(u), c.hom_dim(u, c.tensor_obj(x, y)));
                    }
                }
            }
        }
    }
}

#[test]
fn graded_convolution_dimensions() {
    let mut rng = StdRng::seed_from_u64(3);
    for n in 1..=4 {
        let c = arc(LinearMonoidalCategory::group_discrete(&q(), n));
        for _ in 0..4 {
            let a: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let b: Vec<usize> = (0..n).map(|_| rng.gen_range(0..3)).collect();
            let f = DayPresheaf::discrete(c.clone(), a.clone()).unwrap();
            let g = DayPresheaf::discrete(c.clone(), b.clone()).unwrap();
            let prod = day_convolve(&f, &g).unwrap();
            for z in 0..n {
                let expect: usize = (0..n).map(|x| a[x] * b[(z + n - x) % n]).sum();
                assert_eq!(prod.presheaf.dim(z), expect);
            }
        }
    }
}

#[test]
fn unit_symmetry_and_associativity_are_isomorphisms() {
    let mut rng = StdRng::seed_from_u64(5);
    for k in [f2(), q()] {
        for c in categories(&k) {
            let h1 = DayPresheaf::representable(c.clone(), c.unit());
            for _ in 0..2 {
                let f = DayPresheaf::random(&c, 2, &mut rng);
                let g = DayPresheaf::random(&c, 2, &mut rng);
                let h = DayPresheaf::random(&c, 2, &mut rng);

                let fh1 = day_convolve(&f, &h1).unwrap();
                let r = right_unitor(&fh1).unwrap();
                assert!(r.is_natural(&fh1.presheaf, &f) && r.is_iso());
                let h1f = day_convolve(&h1, &f).unwrap();
                let l = left_unitor(&h1f).unwrap();
                assert!(l.is_natural(&h1f.presheaf, &f) && l.is_iso());

                let fg = day_convolve(&f, &g).unwrap();
                let gf = day_convolve(&g, &f).unwrap();
                let s = symmetry(&fg, &gf).unwrap();
                let s2 = symmetry(&gf, &fg).unwrap();
                assert!(s.is_natural(&fg.presheaf, &gf.presheaf) && s.is_iso());
                assert_eq!(s.then(&s2), NatTrans::identity(&fg.presheaf));

                let fg_h = day_convolve(&fg.presheaf, &h).unwrap();
                let gh = day_convolve(&g, &h).unwrap();
                let f_gh = day_convolve(&f, &gh.presheaf).unwrap();
                let a = associator(&fg, &fg_h, &gh, &f_gh).unwrap();
                assert!(a.is_natural(&fg_h.presheaf, &f_gh.presheaf) && a.is_iso());
            }
        }
    }
}

#[test]
fn convolution_is_additive() {
    let mut rng = StdRng::seed_from_u64(8);
    for c in categories(&q()) {
        let f = DayPresheaf::random(&c, 2, &mut rng);
        let f2 = DayPresheaf::random(&c, 2, &mut rng);
        let g = DayPresheaf::random(&c, 2, &mut rng);
        let sum = f.direct_sum(&f2).unwrap().presheaf;
        let (a, b, s) = (day_convolve(&f, &g).unwrap(), day_convolve(&f2, &g).unwrap(), day_convolve(&sum, &g).unwrap());
        for u in 0..c.len() {
            assert_eq!(s.presheaf.dim(u), a.presheaf.dim(u) + b.presheaf.dim(u));
        }
    }
}

#[test]
fn mixed_categories_are_rejected() {
    let a = arc(LinearMonoidalCategory::group_discrete(&q(), 2));
    let b = arc(LinearMonoidalCategory::poset_max(&q(), 2));
    let f = DayPresheaf::representable(a, 0);
    let g = DayPresheaf::representable(b, 0);
    assert!(matches!(day_convolve(&f, &g), Err(crate::Error::CategoryMismatch)));
    assert!(matches!(internal_hom(&f, &g), Err(crate::Error::CategoryMismatch)));
}

#[test]
fn internal_hom_of_representables() {
    let mut rng = StdRng::seed_from_u64(13);
    for k in [f2(), q()] {
        for c in categories(&k) {
            let g = DayPresheaf::random(&c, 3, &mut rng);
            for x in 0..c.len() {
                let hx = DayPresheaf::representable(c.clone(), x);
                let hom = internal_hom(&hx, &g).unwrap();
                assert!(hom.presheaf.is_valid());
                for u in 0..c.len() {
                    assert_eq!(hom.presheaf.dim(u), g.dim(c.tensor_obj(u, x)), "[h_{x}, G]({u})");
                }
            }
        }
    }
}

#[test]
fn tensor_hom_adjunction() {
    let mut rng = StdRng::seed_from_u64(17);
    for k in [f2(), q()] {
        for c in categories(&k) {
            let f = DayPresheaf::random(&c, 2, &mut rng);
            let g = DayPresheaf::random(&c, 2, &mut rng);
            let h = DayPresheaf::random(&c, 2, &mut rng);
            let fg = day_convolve(&f, &g).unwrap();
            let hom = internal_hom(&g, &h).unwrap();
            let lhs = nat_hom_basis(&fg.presheaf, &h).unwrap().len();
            let rhs = nat_hom_basis(&f, &hom.presheaf).unwrap();
            assert_eq!(lhs, rhs.len());

            // transposes are natural and land in Nat(F⊗G, H)
            let hom_g = day_convolve(&hom.presheaf, &g).unwrap();
            let ev = evaluation(&hom, &hom_g).unwrap();
            assert!(ev.is_natural(&hom_g.presheaf, &h));
            for eta in &rhs {
                let t = adjunct(eta, &fg, &hom, &hom_g).unwrap();
                assert!(t.is_natural(&fg.presheaf, &h));
            }

            // triangle: ev ∘ (coev ⊗ id) = id on F⊗G
            let hom_fg = internal_hom(&g, &fg.presheaf).unwrap();
            let co = coevaluation(&f, &fg, &hom_fg).unwrap();
            assert!(co.is_natural(&f, &hom_fg.presheaf));
            let hom_fg_g = day_convolve(&hom_fg.presheaf, &g).unwrap();
            let back = adjunct(&co, &fg, &hom_fg, &hom_fg_g).unwrap();
            assert_eq!(back, NatTrans::identity(&fg.presheaf));
        }
    }
}

#[test]
fn example_day_coalgebras_are_valid() {
    for k in [f2(), q()] {
        for (i, d) in examples(&k).iter().enumerate() {
            let rep = d.verify().unwrap();
            assert!(rep.all_passed(), "example {i}: {:?}", rep.failures().collect::<Vec<_>>());
            assert!(rep.checks.len() >= 5);
        }
    }
}

#[test]
fn broken_comultiplication_is_reported() {
    let k = q();
    let good = poset_example(&k);
    let mut comps = good.delta().components.clone();
    comps[0] = comps[0].scale(&k.from_i64(2));
    let bad = DayCoalgebra::new(good.presheaf().clone(), NatTrans { components: comps }, good.epsilon().clone()).unwrap();
    assert!(!bad.is_valid().unwrap());
}

#[test]
fn grading_violations_are_rejected() {
    let k = q();
    let z2 = arc(LinearMonoidalCategory::group_discrete(&k, 2));
    assert!(DayCoalgebra::graded(z2.clone(), &Coalgebra::dual_numbers(&k), &[1, 1]).is_err());
    let p2 = arc(LinearMonoidalCategory::poset_max(&k, 2));
    assert!(DayCoalgebra::graded(p2, &Coalgebra::dual_numbers(&k), &[0, 1]).is_err());
}

#[test]
fn closures_are_minimal_by_enumeration() {
    let k = f2();
    for f in examples(&k) {
        let fp = f.presheaf();
        if fp.total_dim() > 5 {
            continue;
        }
        let subs = sub_presheaves(fp);
        for start in &subs {
            let pure = pure_closure(fp, start, fp).unwrap();
            assert!(contains_all(&pure.spaces, start));
            assert!(is_pure(fp, &pure.spaces, fp).unwrap());
            let pure_above: Vec<_> = subs.iter().filter(|s| contains_all(s, start) && is_pure(fp, s, fp).unwrap()).cloned().collect();
            assert!(is_minimal_among(&pure.spaces, &pure_above), "pure closure of {start:?}");

            let inv = invariant_closure(&f, start).unwrap();
            assert!(contains_all(&inv.spaces, start));
            assert!(is_invariant(&f, &inv.spaces).unwrap());
            let inv_above: Vec<_> = subs.iter().filter(|s| contains_all(s, start) && is_invariant(&f, s).unwrap()).cloned().collect();
            assert!(is_minimal_among(&inv.spaces, &inv_above), "invariant closure of {start:?}");

            let gen = generated_day_subcoalgebra(&f, start).unwrap();
            assert!(gen.coalgebra.verify().unwrap().all_passed());
            assert!(gen.inclusion.is_injective());
            assert!(f.presheaf().is_sub_presheaf(&gen.spaces));
            let subco: Vec<_> = subs.iter().filter(|s| contains_all(s, start) && is_day_subcoalgebra(&f, s)).cloned().collect();
            assert!(subco.iter().any(|s| s == &gen.spaces));
            assert!(is_minimal_among(&gen.spaces, &subco), "generated by {start:?}");
        }
    }
}

#[test]
fn closure_traces_replay() {
    let k = f2();
    for f in examples(&k) {
        let fp = f.presheaf();
        for x in 0..fp.category().len() {
            for v in brute::all_vectors(2, fp.dim(x)).into_iter().skip(1) {
                let v: Vec<Elem> = v.iter().map(|&a| k.from_i64(a as i64)).collect();
                let gen = generated_day_subcoalgebra(&f, &fp.point(x, &v)).unwrap();
                // replaying the logged legs from the start reaches the result
                let mut cur = fp.restriction_closure(&fp.point(x, &v));
                for step in &gen.trace {
                    let mut grown = cur.clone();
                    for (obj, leg) in &step.legs {
                        let leg: Vec<Elem> = leg.iter().map(|s| k.parse(s).unwrap()).collect();
                        grown[*obj] = grown[*obj].sum(&Subspace::from_rows(&k, fp.dim(*obj), vec![leg])).unwrap();
                    }
                    cur = fp.restriction_closure(&grown);
                    assert_eq!(cur.iter().map(Subspace::dim).collect::<Vec<_>>(), step.dims_after);
                }
                assert_eq!(cur, gen.spaces);
            }
        }
    }
}

#[test]
fn graded_generation_matches_ordinary_generation() {
    let k = q();
    let c = divided_powers(&k, 5);
    let degrees = [0, 1, 2, 0, 1];
    let z3 = arc(LinearMonoidalCategory::group_discrete(&k, 3));
    let day = DayCoalgebra::graded(z3, &c, &degrees).unwrap();
    for i in 0..5 {
        let z = degrees[i];
        let pos = degrees[..i].iter().filter(|&&d| d == z).count();
        let v = unit(&k, day.presheaf().dim(z), pos);
        let gen = generated_day_subcoalgebra(&day, &day.presheaf().point(z, &v)).unwrap();
        let plain = generated_subcoalgebra(&c, &Subspace::from_rows(&k, 5, vec![unit(&k, 5, i)])).unwrap();
        assert_eq!(gen.coalgebra.presheaf().total_dim(), plain.space.dim(), "x_{i}");
        assert_eq!(plain.space.dim(), i + 1);
    }
}

#[test]
fn separation_by_generated_subcoalgebras() {
    for k in [f2(), q()] {
        for d in examples(&k) {
            let sum = d.direct_sum(&d).unwrap();
            let n = d.category().len();
            let inj = |second: bool| NatTrans {
                components: (0..n)
                    .map(|x| {
                        let dim = d.presheaf().dim(x);
                        let z = Matrix::zeros(&k, dim, dim);
                        let i = Matrix::identity(&k, dim);
                        if second {
                            z.vstack(&i)
                        } else {
                            i.vstack(&z)
                        }
                    })
                    .collect(),
            };
            let (i1, i2) = (inj(false), inj(true));
            assert!(d.morphism_report(&sum, &i1).unwrap().all_passed());
            let sep = separate_by_generator(&d, &sum, &i1, &i2).unwrap();
            assert!(sep.sub.coalgebra.is_valid().unwrap());
            assert_ne!(sep.sub.inclusion.then(&i1), sep.sub.inclusion.then(&i2));
            assert!(sep.sub.spaces[sep.object].contains_vector(&sep.witness));
            assert!(matches!(separate_by_generator(&d, &sum, &i1, &i1), Err(crate::Error::MapsEqual)));

            let zero = NatTrans::zero(d.presheaf(), sum.presheaf());
            assert!(matches!(separate_by_generator(&d, &sum, &i1, &zero), Err(crate::Error::Invalid(_))));
        }
    }
}

#[test]
fn identity_and_counit_collapse_separate_at_the_odd_degree() {
    let k = q();
    let z2 = arc(LinearMonoidalCategory::group_discrete(&k, 2));
    let d = DayCoalgebra::graded(z2, &Coalgebra::dual_numbers(&k), &[0, 1]).unwrap();
    let id = NatTrans::identity(d.presheaf());
    let collapse = NatTrans { components: vec![Matrix::identity(&k, 1), Matrix::zeros(&k, 1, 1)] };
    assert!(d.morphism_report(&d, &collapse).unwrap().all_passed());
    let sep = separate_by_generator(&d, &d, &id, &collapse).unwrap();
    assert_eq!(sep.object, 1);
    assert_eq!(sep.sub.spaces.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 1]);
}

#[test]
fn grouplike_line_is_already_a_subcoalgebra() {
    let k = f2();
    let z2 = arc(LinearMonoidalCategory::group_discrete(&k, 2));
    let d = DayCoalgebra::graded(z2, &Coalgebra::dual_numbers(&k), &[0, 1]).unwrap();
    let gen = generated_day_subcoalgebra(&d, &d.presheaf().point(0, &[k.one()])).unwrap();
    assert!(gen.trace.is_empty());
    assert_eq!(gen.spaces.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 0]);
    let zero = generated_day_subcoalgebra(&d, &d.presheaf().zero_spaces()).unwrap();
    assert_eq!(zero.coalgebra.presheaf().total_dim(), 0);
}

#[test]
fn pure_closure_grows_past_a_line_with_a_kernel() {
    // M(0) = k, M(1) = k², restriction (1 0) of rank 1; the line M(0) is not
    // pure against M itself
    let k = f2();
    let c = arc(LinearMonoidalCategory::poset_max(&k, 2));
    let rho = Matrix::from_i64(&k, &[&[1, 0]]);
    let m = DayPresheaf::from_fn(c, vec![1, 2], |x, y, _| match (x, y) {
        (0, 1) => rho.clone(),
        _ => Matrix::identity(&k, if x == 0 { 1 } else { 2 }),
    })
    .unwrap();
    let start = m.point(0, &[k.one()]);
    assert!(!is_pure(&m, &start, &m).unwrap());
    let res = pure_closure(&m, &start, &m).unwrap();
    assert_eq!(res.spaces.iter().map(Subspace::dim).collect::<Vec<_>>(), vec![1, 1]);
    assert!(is_pure(&m, &res.spaces, &m).unwrap());
    let pure_above: Vec<_> = sub_presheaves(&m).into_iter().filter(|s| contains_all(s, &start) && is_pure(&m, s, &m).unwrap()).collect();
    assert!(is_minimal_among(&res.spaces, &pure_above));

    assert_eq!(pure_closure(&m, &m.zero_spaces(), &m).unwrap().spaces, m.zero_spaces());
    assert_eq!(pure_closure(&m, &m.full_spaces(), &m).unwrap().spaces, m.full_spaces());
}
