use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::coalg::{dual_coalgebra, ArtinAlgebra};
use crate::field::Poly;
use crate::report::Status;

fn f2() -> Field {
    Field::prime(2).unwrap()
}

fn cfg() -> FactorConfig {
    FactorConfig::default()
}

fn f4_dual() -> Coalgebra {
    let k = f2();
    dual_coalgebra(&ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[1, 1, 1])).unwrap())
}

fn one_le_two() -> Arc<IndexCategory> {
    Arc::new(IndexCategory::chain(2))
}

/// `m: 0 ≤ 1` in the two-object chain.
fn arrow(idx: &IndexCategory) -> usize {
    (0..idx.morphism_count()).find(|&m| idx.ends(m) == (0, 1)).unwrap()
}

#[test]
fn index_categories() {
    let p = IndexCategory::poset(3, &[(0, 1), (1, 2)]).unwrap();
    assert_eq!(p.morphism_count(), 6);
    assert!(IndexCategory::poset(2, &[(0, 1), (1, 0)]).is_err());
    let c = IndexCategory::cyclic(3).unwrap();
    assert_eq!(c.compose(2, 2), Some(1));
    assert_eq!(c.identity(0), 0);
    let spec = IndexSpec::Table {
        objects: vec!["a".into()],
        morphisms: vec![TableMorphism { name: "id".into(), source: 0, target: 0 }, TableMorphism { name: "e".into(), source: 0, target: 0 }],
        // e∘e = e: the idempotent monoid
        compose: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 1)],
    };
    let t = IndexCategory::from_spec(&spec).unwrap();
    assert_eq!(t.identity(0), 0);
    let bad = IndexSpec::Table {
        objects: vec!["a".into()],
        morphisms: vec![TableMorphism { name: "id".into(), source: 0, target: 0 }, TableMorphism { name: "e".into(), source: 0, target: 0 }],
        compose: vec![(0, 0, 0), (0, 1, 1), (1, 0, 1)],
    };
    assert!(IndexCategory::from_spec(&bad).is_err());
}

#[test]
fn constant_diagonal_presheaf_is_its_own_etale_part() {
    let k = f2();
    let idx = one_le_two();
    let f = CoalgebraPresheaf::constant(idx, &diagonal_coalgebra(&k, 3));
    let et = etale_subpresheaf(&f, &cfg()).unwrap();
    assert!(et.report.all_passed());
    for x in 0..2 {
        assert_eq!(et.presheaf.section(x), f.section(x));
        assert!(et.inclusion[x].matrix().is_identity());
    }
}

#[test]
fn counit_restriction_of_dual_numbers() {
    let k = f2();
    let idx = one_le_two();
    let m = arrow(&idx);
    let dual = Coalgebra::dual_numbers(&k);
    let triv = Coalgebra::trivial(&k);
    let restr = (0..idx.morphism_count())
        .map(|x| match idx.ends(x) {
            (0, 1) => dual.epsilon().clone(),
            (0, 0) => Matrix::identity(&k, 1),
            _ => Matrix::identity(&k, 2),
        })
        .collect();
    let f = CoalgebraPresheaf::validated(idx.clone(), vec![triv, dual], restr).unwrap();
    let et = etale_subpresheaf(&f, &cfg()).unwrap();
    assert!(et.report.all_passed());
    assert_eq!(et.presheaf.section(1).dim(), 1);
    assert_eq!(et.presheaf.section(0).dim(), 1);
    // Ét(F(1)) = span{g}
    assert_eq!(et.inclusion[1].matrix().col(0), vec![k.one(), k.zero()]);
    assert!(et.presheaf.restriction(m).matrix().is_identity());

    let rep = presheaf_gp_adjunction(&f, &cfg()).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    assert_eq!(rep.count(Status::Skipped), 0);
}

#[test]
fn swapped_components_split_naturally() {
    let k = f2();
    let idx = Arc::new(IndexCategory::cyclic(2).unwrap());
    let swap = Matrix::from_i64(&k, &[&[0, 1], &[1, 0]]);
    let f = CoalgebraPresheaf::validated(idx, vec![diagonal_coalgebra(&k, 2)], vec![Matrix::identity(&k, 2), swap]).unwrap();
    let et = etale_subpresheaf(&f, &cfg()).unwrap();
    assert!(et.report.all_passed());
    assert!(presheaf_gp_adjunction(&f, &cfg()).unwrap().all_passed());
}

#[test]
fn non_split_section_skips_the_iso() {
    let k = f2();
    let idx = one_le_two();
    let c = f4_dual();
    let restr = (0..idx.morphism_count())
        .map(|m| match idx.ends(m) {
            (0, 1) => c.epsilon().clone(),
            (0, 0) => Matrix::identity(&k, 1),
            _ => Matrix::identity(&k, 2),
        })
        .collect();
    let f = CoalgebraPresheaf::validated(idx, vec![Coalgebra::trivial(&k), c], restr).unwrap();
    let rep = presheaf_gp_adjunction(&f, &cfg()).unwrap();
    assert!(rep.all_passed());
    assert!(rep.count(Status::Skipped) > 0);
    let (gp, _) = group_like_presheaf(&f, &cfg()).unwrap();
    assert_eq!(gp.sizes, vec![1, 0]);
}

#[test]
fn constant_presheaves_at_dual_numbers_and_k() {
    let k = f2();
    for c in [Coalgebra::trivial(&k), Coalgebra::dual_numbers(&k)] {
        let f = CoalgebraPresheaf::constant(one_le_two(), &c);
        let rep = presheaf_gp_adjunction(&f, &cfg()).unwrap();
        assert!(rep.all_passed());
        let et = etale_subpresheaf(&f, &cfg()).unwrap();
        assert!(et.presheaf.sections().iter().all(|s| s.dim() == 1));
    }
}

#[test]
fn non_functorial_data_is_reported() {
    let k = f2();
    let idx = Arc::new(IndexCategory::cyclic(2).unwrap());
    let swap = Matrix::from_i64(&k, &[&[0, 1], &[1, 0]]);
    // identity slot holding the swap
    let f = CoalgebraPresheaf::new(idx, vec![diagonal_coalgebra(&k, 2)], vec![swap.clone(), swap]).unwrap();
    assert!(!f.is_valid());
    assert!(CoalgebraPresheaf::validated(f.index().clone(), f.sections().to_vec(), vec![Matrix::identity(&k, 2), Matrix::identity(&k, 3)]).is_err());
}

fn random_piece(rng: &mut ChaCha8Rng) -> Coalgebra {
    let k = f2();
    match rng.gen_range(0..5) {
        0 => Coalgebra::trivial(&k),
        1 => Coalgebra::dual_numbers(&k),
        2 => f4_dual(),
        3 => diagonal_coalgebra(&k, 2),
        _ => Coalgebra::zero(&k),
    }
}

#[test]
fn random_presheaves_pass_every_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let indices = [
        IndexCategory::chain(1),
        IndexCategory::chain(2),
        IndexCategory::chain(3),
        IndexCategory::discrete(2),
        IndexCategory::poset(3, &[(0, 1), (0, 2)]).unwrap(),
        IndexCategory::poset(3, &[(0, 2), (1, 2)]).unwrap(),
        IndexCategory::cyclic(2).unwrap(),
        IndexCategory::cyclic(3).unwrap(),
    ];
    for i in 0..40 {
        let idx = Arc::new(indices[i % indices.len()].clone());
        let f = CoalgebraPresheaf::random(idx, random_piece, &mut rng).unwrap();
        let v = f.verify();
        assert!(v.all_passed(), "{:?}", v.failures().collect::<Vec<_>>());
        let et = etale_subpresheaf(&f, &cfg()).unwrap();
        assert!(et.report.all_passed());
        let again = etale_subpresheaf(&et.presheaf, &cfg()).unwrap();
        for x in 0..f.index().len() {
            assert_eq!(again.presheaf.section(x), et.presheaf.section(x));
        }
        for m in 0..f.index().morphism_count() {
            assert_eq!(again.presheaf.restriction(m).matrix(), et.presheaf.restriction(m).matrix());
        }
        let rep = presheaf_gp_adjunction(&f, &cfg()).unwrap();
        assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    }
}

#[test]
fn unit_of_set_presheaves() {
    let k = f2();
    let idx = Arc::new(IndexCategory::chain(2));
    let m = arrow(&idx);
    let mut maps = vec![vec![]; idx.morphism_count()];
    for (x, slot) in maps.iter_mut().enumerate() {
        *slot = match idx.ends(x) {
            (0, 0) => vec![0, 1],
            (1, 1) => vec![0, 1, 2],
            _ => vec![0, 0, 1],
        };
    }
    let x = SetPresheaf { index: idx.clone(), sizes: vec![2, 3], maps };
    let rep = set_presheaf_unit(&k, &x, &cfg()).unwrap();
    assert!(rep.all_passed(), "{:?}", rep.failures().collect::<Vec<_>>());
    let kx = CoalgebraPresheaf::diagonal(&k, &x);
    assert!(kx.is_valid());
    assert_eq!(kx.restriction(m).matrix().rank(), 2);
}
