use super::*;
use crate::coalg::{direct_sum, Coalgebra};
use crate::structure::etale_part;

fn cfg() -> FactorConfig {
    FactorConfig::default()
}

fn gf(p: u64, n: usize) -> GaloisDatum {
    GaloisDatum::finite(&Field::prime(p).unwrap(), n, &cfg()).unwrap()
}

fn f4dual() -> Coalgebra {
    let k = Field::prime(2).unwrap();
    crate::coalg::dual_coalgebra(&ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[1, 1, 1])).unwrap())
}

#[test]
fn finite_galois_data_verify() {
    for (p, n) in [(2, 2), (2, 3), (3, 2), (2, 4)] {
        let d = gf(p, n);
        assert_eq!(d.order(), n);
        assert!(d.verify(&cfg()).unwrap().is_empty(), "{p}^{n}");
    }
}

#[test]
fn gaussian_rationals_user_supplied() {
    let q = Field::rationals();
    let l = ArtinAlgebra::quotient_ring(&Poly::from_i64s(&q, &[1, 0, 1])).unwrap();
    let conj = Matrix::from_i64(&q, &[&[1, 0], &[0, -1]]);
    let d = GaloisDatum::new(l, vec![Matrix::identity(&q, 2), conj]).unwrap();
    assert!(d.verify(&cfg()).unwrap().is_empty());
    let c = crate::coalg::dual_coalgebra(d.field());
    let r = right_adjoint_r(&d, &c, &[d.identity()], HomMode::Embeddings, &cfg()).unwrap();
    assert_eq!(r.len(), 2);
    let r = right_adjoint_r(&d, &c, &[0, 1], HomMode::All, &cfg()).unwrap();
    assert!(r.is_empty());
}

#[test]
fn not_closed_automorphisms_rejected() {
    let k = Field::prime(2).unwrap();
    let d = gf(2, 3);
    let autos = vec![Matrix::identity(&k, 3), d.automorphism(1).clone()];
    assert!(matches!(GaloisDatum::new(d.field().clone(), autos), Err(Error::Invalid(_))));
}

#[test]
fn orbit_examples() {
    let d = gf(2, 2);
    let x = FiniteGSet::trivial(&d, 3);
    let orbits = orbits_and_stabilizers(&d, &x).unwrap();
    assert_eq!(orbits.len(), 3);
    assert!(orbits.iter().all(|o| o.stabilizer.len() == 2));
    let orbits = orbits_and_stabilizers(&d, &FiniteGSet::regular(&d)).unwrap();
    assert_eq!(orbits.len(), 1);
    assert_eq!(orbits[0].stabilizer, vec![d.identity()]);

    let d4 = gf(2, 4);
    let sub2 = d4.closure(&[2]);
    let x = FiniteGSet::regular(&d4).disjoint_union(&FiniteGSet::coset_space(&d4, &sub2).unwrap());
    let orbits = orbits_and_stabilizers(&d4, &x).unwrap();
    let shape: Vec<(usize, usize)> = orbits.iter().map(|o| (o.points.len(), o.stabilizer.len())).collect();
    assert_eq!(shape, vec![(4, 1), (2, 2)]);
    for o in &orbits {
        assert_eq!(o.points.len() * o.stabilizer.len(), d4.order());
        assert!(d4.check_subgroup(&o.stabilizer).is_ok());
    }
}

#[test]
fn invalid_actions() {
    let d = gf(2, 2);
    let bad = FiniteGSet { size: 2, action: vec![vec![1, 0], vec![1, 0]] };
    assert!(matches!(bad.validate(&d), Err(Error::InvalidAction(_))));
    let bad = FiniteGSet { size: 2, action: vec![vec![0, 0], vec![1, 0]] };
    assert!(matches!(orbits_and_stabilizers(&d, &bad), Err(Error::InvalidAction(_))));
}

#[test]
fn subgroups_of_cyclic_groups() {
    assert_eq!(gf(2, 4).subgroups().len(), 3);
    assert_eq!(gf(2, 3).subgroups().len(), 2);
    let d = gf(2, 4);
    assert!(matches!(d.check_subgroup(&[0, 1]), Err(Error::NotASubgroup(_))));
}

#[test]
fn fixed_field_examples() {
    let d = gf(2, 2);
    assert_eq!(fixed_field(&d, &[0, 1], &cfg()).unwrap().degree(), 1);
    assert_eq!(fixed_field(&d, &[d.identity()], &cfg()).unwrap().degree(), 2);
    let d4 = gf(2, 4);
    let h = d4.closure(&[2]);
    assert_eq!(h.len(), 2);
    let ff = fixed_field(&d4, &h, &cfg()).unwrap();
    assert_eq!(ff.degree(), 2);
    let k = Field::prime(2).unwrap();
    assert_eq!(ff.datum.minimal_poly, Poly::from_i64s(&k, &[1, 1, 1]));
    assert!(matches!(fixed_field(&d4, &[1], &cfg()), Err(Error::NotASubgroup(_))));
}

#[test]
fn galois_correspondence() {
    for d in [gf(2, 2), gf(2, 3), gf(3, 2), gf(2, 4)] {
        let subs = d.subgroups();
        let fields: Vec<FixedField> = subs.iter().map(|h| fixed_field(&d, h, &cfg()).unwrap()).collect();
        for (h, f) in subs.iter().zip(&fields) {
            assert_eq!(f.degree() * h.len(), d.order());
            assert!(f.datum.verify(&cfg()).unwrap());
        }
        for (i, h1) in subs.iter().enumerate() {
            for (j, h2) in subs.iter().enumerate() {
                if h2.iter().all(|g| h1.contains(g)) {
                    assert!(fields[j].space.contains(&fields[i].space).unwrap());
                }
            }
        }
    }
}

#[test]
fn roots_in_fields() {
    let k = Field::prime(2).unwrap();
    let p = Poly::from_i64s(&k, &[1, 1, 1]);
    assert_eq!(roots_in_field(gf(2, 2).field(), &p, &cfg()).unwrap().len(), 2);
    assert!(roots_in_field(gf(2, 3).field(), &p, &cfg()).unwrap().is_empty());
    assert_eq!(roots_in_field(gf(2, 4).field(), &p, &cfg()).unwrap().len(), 2);
}

#[test]
fn kbar_examples() {
    let d = gf(2, 2);
    let k = d.base().clone();
    let one = kbar_functor(&d, &FiniteGSet::trivial(&d, 1), &cfg()).unwrap();
    assert_eq!(one.coalgebra, Coalgebra::trivial(&k));
    let reg = kbar_functor(&d, &FiniteGSet::regular(&d), &cfg()).unwrap();
    assert_eq!(reg.dim(), 2);
    let et = etale_part(&reg.coalgebra, &cfg()).unwrap();
    assert_eq!(et.simples.len(), 1);
    assert!(et.space.is_full());
    let x = FiniteGSet::trivial(&d, 2).disjoint_union(&FiniteGSet::regular(&d));
    let kx = kbar_functor(&d, &x, &cfg()).unwrap();
    assert_eq!(kx.dim(), 4);
    assert!(kx.coalgebra.is_valid());
    assert!(etale_part(&kx.coalgebra, &cfg()).unwrap().space.is_full());
}

#[test]
fn kbar_is_functorial() {
    let d = gf(2, 4);
    let h2 = d.closure(&[2]);
    let x = FiniteGSet::regular(&d);
    let y = FiniteGSet::coset_space(&d, &h2).unwrap();
    let z = FiniteGSet::trivial(&d, 1);
    let (kx, ky, kz) = (
        kbar_functor(&d, &x, &cfg()).unwrap(),
        kbar_functor(&d, &y, &cfg()).unwrap(),
        kbar_functor(&d, &z, &cfg()).unwrap(),
    );
    for f in equivariant_maps(&d, &x, &y) {
        let mf = kbar_map(&d, &kx, &ky, &f).unwrap();
        assert!(mf.is_valid());
        let g = vec![0; y.size];
        let mg = kbar_map(&d, &ky, &kz, &g).unwrap();
        let gf_: Vec<usize> = f.iter().map(|&i| g[i]).collect();
        let mgf = kbar_map(&d, &kx, &kz, &gf_).unwrap();
        assert_eq!(mg.matrix().mul(mf.matrix()), *mgf.matrix());
    }
    let id: Vec<usize> = (0..x.size).collect();
    assert!(kbar_map(&d, &kx, &kx, &id).unwrap().matrix().is_identity());
}

#[test]
fn right_adjoint_examples() {
    let d = gf(2, 2);
    let k = d.base().clone();
    let all: Vec<usize> = (0..d.order()).collect();
    let e = [d.identity()];
    assert_eq!(right_adjoint_r(&d, &Coalgebra::trivial(&k), &all, HomMode::Embeddings, &cfg()).unwrap().len(), 1);
    assert_eq!(right_adjoint_r(&d, &f4dual(), &e, HomMode::Embeddings, &cfg()).unwrap().len(), 2);
    assert!(right_adjoint_r(&d, &f4dual(), &all, HomMode::All, &cfg()).unwrap().is_empty());
    let r = r_gset(&d, &f4dual(), &cfg()).unwrap();
    assert_eq!(r.gset, FiniteGSet::regular(&d));
    // k ⊕ k has two maps into L, neither of them surjective
    let kk = direct_sum(&Coalgebra::trivial(&k), &Coalgebra::trivial(&k)).coalgebra;
    assert_eq!(right_adjoint_r(&d, &kk, &e, HomMode::All, &cfg()).unwrap().len(), 2);
    assert!(right_adjoint_r(&d, &kk, &e, HomMode::Embeddings, &cfg()).unwrap().is_empty());
}

#[test]
fn adjunction_examples() {
    let d = gf(2, 2);
    let k = d.base().clone();
    let reg = FiniteGSet::regular(&d);
    let sum = direct_sum(&Coalgebra::trivial(&k), &f4dual()).coalgebra;
    let rep = adjunction_checks(&d, &reg, &sum, &cfg()).unwrap();
    assert!(rep.all_passed(), "{rep:?}");
    assert_eq!(rep.count(crate::report::Status::Skipped), 0);
    let dn = Coalgebra::dual_numbers(&k);
    let rep = adjunction_checks(&d, &reg, &dn, &cfg()).unwrap();
    assert!(rep.all_passed(), "{rep:?}");
    let r = r_gset(&d, &dn, &cfg()).unwrap();
    let kr = kbar_functor(&d, &r.gset, &cfg()).unwrap();
    let eps = counit(&d, &dn, &r, &kr).unwrap();
    assert_eq!(eps.image().dim(), 1);
    // 𝔽_8 residue does not embed in 𝔽_4: only the rational part is reached
    let f8dual = crate::coalg::dual_coalgebra(gf(2, 3).field());
    let rep = adjunction_checks(&d, &reg, &f8dual, &cfg()).unwrap();
    assert!(rep.all_passed());
    assert_eq!(rep.count(crate::report::Status::Skipped), 1);
}

#[test]
fn faithful_on_small_gsets() {
    let d = gf(2, 2);
    let xs = [FiniteGSet::regular(&d), FiniteGSet::trivial(&d, 2), FiniteGSet::trivial(&d, 1).disjoint_union(&FiniteGSet::regular(&d))];
    for x in &xs {
        for y in &xs {
            let kx = kbar_functor(&d, x, &cfg()).unwrap();
            let ky = kbar_functor(&d, y, &cfg()).unwrap();
            let maps: Vec<Matrix> = equivariant_maps(&d, x, y)
                .iter()
                .map(|f| kbar_map(&d, &kx, &ky, f).unwrap().matrix().clone())
                .collect();
            for i in 0..maps.len() {
                for j in 0..i {
                    assert_ne!(maps[i], maps[j]);
                }
            }
        }
    }
}
