use std::sync::Arc;

use serde_json::json;

use super::*;
use crate::coalg::{diagonal_coalgebra, dual_coalgebra, tensor};
use crate::field::{FactorConfig, FieldSpec, Poly};
use crate::presheaf::IndexCategory;

fn cfg() -> FactorConfig {
    FactorConfig::default()
}

fn load(doc: Value) -> Result<Workspace> {
    let mut ws = Workspace::new(cfg());
    ws.add_document(&doc.to_string(), "test.json", "it")?;
    ws.resolve()?;
    Ok(ws)
}

fn fields() -> Vec<Field> {
    vec![
        Field::rationals(),
        Field::prime(5).unwrap(),
        Field::extension(2, vec![1, 1, 1]).unwrap(),
    ]
}

#[test]
fn matrices_round_trip() {
    for k in fields() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        let m = Matrix::from_fn(&k, 3, 2, |_, _| k.random(&mut rng));
        assert_eq!(matrix_from_json(&k, &matrix_json(&m)).unwrap(), m);
    }
    let k = Field::rationals();
    let j: MatrixJson = serde_json::from_value(json!({"rows":1,"cols":2,"entries":[[3,"-3/4"]]})).unwrap();
    let m = matrix_from_json(&k, &j).unwrap();
    assert_eq!(k.format(m.get(0, 1)), "-3/4");
    let bad: MatrixJson = serde_json::from_value(json!({"rows":2,"cols":2,"entries":[[1,0]]})).unwrap();
    assert!(matches!(matrix_from_json(&k, &bad), Err(Error::ShapeMismatch(_))));
}

use rand::SeedableRng;

#[test]
fn coalgebras_round_trip() {
    for k in fields() {
        let c = tensor(&Coalgebra::dual_numbers(&k), &diagonal_coalgebra(&k, 2));
        let j = coalgebra_json(&c);
        assert_eq!(coalgebra_from_json(&j).unwrap(), c);
        let text = document(&EntityJson::Coalgebra(j)).to_string();
        let ws = {
            let mut ws = Workspace::new(cfg());
            ws.add_document(&text, "c.json", "c").unwrap();
            ws.resolve().unwrap();
            ws
        };
        match ws.get("c").unwrap() {
            Entity::Coalgebra(d) => assert_eq!(*d, c),
            other => panic!("got {}", other.kind()),
        }
    }
}

#[test]
fn dual_numbers_in_the_documented_form() {
    let ws = load(json!({
        "version": 1, "kind": "coalgebra", "field": {"kind": "Fp", "p": 2}, "dim": 2,
        "delta": [[1,0,0,0], [0,1,1,0]], "epsilon": [1, 0]
    }))
    .unwrap();
    let Entity::Coalgebra(c) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(*c, Coalgebra::dual_numbers(c.field()));
    assert!(ws.validate_all().unwrap().all_passed());
}

#[test]
fn parse_errors_carry_positions() {
    let mut ws = Workspace::new(cfg());
    let e = ws.add_document("{\n  \"version\": 1,\n  oops", "garbage.json", "g").unwrap_err();
    assert_eq!(e.exit_code(), 2);
    let msg = e.to_string();
    assert!(msg.contains("garbage.json") && msg.contains("line 3"), "{msg}");

    let e = ws.add_document(r#"{"kind":"gset","size":1,"action":[[0]]}"#, "nov.json", "x").unwrap_err();
    assert!(e.to_string().contains("version"));
    let e = ws.add_document(r#"{"version":2,"kind":"gset","size":1,"action":[[0]]}"#, "v2.json", "x").unwrap_err();
    assert!(e.to_string().contains("unsupported version"));

    let e = ws
        .add_document(r#"{"version":1,"kind":"coalgebra","field":{"kind":"Q"},"dim":1,"delta":[["x"]],"epsilon":[1]}"#, "c.json", "c")
        .unwrap();
    assert_eq!(e, vec!["c".to_string()]);
    let err = ws.resolve().unwrap_err();
    assert_eq!(err.exit_code(), 2);
    assert!(err.to_string().contains("c.json"));

    let mut ws = Workspace::new(cfg());
    let e = ws
        .add_document(r#"{"version":1,"kind":"coalgebra","field":{"kind":"Q"},"dim":"two","delta":[],"epsilon":[]}"#, "d.json", "d")
        .unwrap_err();
    assert!(e.to_string().contains("dim"), "{e}");
}

#[test]
fn references_resolve_by_name() {
    let k = Field::prime(3).unwrap();
    let c = coalgebra_json(&Coalgebra::dual_numbers(&k));
    let t = coalgebra_json(&Coalgebra::trivial(&k));
    let ws = load(json!({
        "version": 1, "kind": "workspace",
        "entities": {
            "D": document(&EntityJson::Coalgebra(c)),
            "eps": {"kind": "morphism", "source": "D", "target": {"kind": "coalgebra", "field": t.field, "dim": 1, "delta": [[1]], "epsilon": [1]},
                    "matrix": {"rows": 1, "cols": 2, "entries": [[1, 0]]}}
        }
    }))
    .unwrap();
    let Entity::Morphism(m) = ws.get("eps").unwrap() else { panic!() };
    assert!(m.is_valid());
    assert!(ws.validate_all().unwrap().all_passed());

    let e = load(json!({"version": 1, "kind": "workspace", "entities": {
        "m": {"kind": "morphism", "source": "nope", "target": "nope", "matrix": {"rows":0,"cols":0,"entries":[]}}
    }}))
    .unwrap_err();
    assert_eq!(e.exit_code(), 3);
    let e = load(json!({"version": 1, "kind": "workspace", "entities": {
        "a": {"kind": "category", "field": {"kind":"Q"}, "form": "product", "left": "b", "right": "b"},
        "b": {"kind": "category", "field": {"kind":"Q"}, "form": "product", "left": "a", "right": "a"}
    }}))
    .unwrap_err();
    assert!(e.to_string().contains("cycle"));
}

#[test]
fn invalid_coalgebras_load_but_fail_validation() {
    // Δe_1 = e_0⊗e_1 only: not cocommutative
    let ws = load(json!({
        "version": 1, "kind": "coalgebra", "field": {"kind": "Q"}, "dim": 2,
        "delta": [[1,0,0,0], [0,1,0,0]], "epsilon": [1, 0]
    }))
    .unwrap();
    let rep = ws.validate_all().unwrap();
    assert!(!rep.all_passed());
    assert!(rep.failures().any(|c| c.name == "it/cocommutativity"));
}

#[test]
fn categories_round_trip() {
    let k = Field::prime(2).unwrap();
    let a = ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[0, 0, 1])).unwrap();
    let cats = [
        LinearMonoidalCategory::group_discrete(&k, 3),
        LinearMonoidalCategory::poset_max(&k, 2),
        LinearMonoidalCategory::one_object(&a).unwrap(),
        LinearMonoidalCategory::product(&LinearMonoidalCategory::group_discrete(&k, 2), &LinearMonoidalCategory::poset_max(&k, 2))
            .unwrap(),
    ];
    for c in cats {
        let j = category_json(&c);
        let ws = load(document(&EntityJson::Category(j.clone()))).unwrap();
        let Entity::Category(d) = ws.get("it").unwrap() else { panic!() };
        assert_eq!(category_json(d), j);
        assert!(d.verify().all_passed());
    }
    let ws = load(json!({"version":1,"kind":"category","field":{"kind":"Fp","p":2},"form":"one_object",
        "algebra":{"field":{"kind":"Fp","p":2},"quotient":[0,0,1]}}))
    .unwrap();
    let Entity::Category(c) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(c.hom_dim(0, 0), 2);
}

#[test]
fn day_coalgebras_round_trip_through_representatives() {
    let k = Field::prime(2).unwrap();
    let cat = Arc::new(LinearMonoidalCategory::group_discrete(&k, 2));
    let f = DayCoalgebra::graded(cat.clone(), &Coalgebra::dual_numbers(&k), &[0, 1]).unwrap();
    let j = day_coalgebra_json(&f, Ref::Inline(Box::new(category_json(&cat))));
    let ws = load(document(&EntityJson::DayCoalgebra(j))).unwrap();
    let Entity::DayCoalgebra(g) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(g.delta(), f.delta());
    assert_eq!(g.epsilon(), f.epsilon());
    assert!(ws.validate_all().unwrap().all_passed());

    let ws = load(json!({"version":1,"kind":"workspace","entities":{
        "Z2": {"kind":"category","field":{"kind":"Fp","p":2},"form":"group_discrete","n":2},
        "D": document(&EntityJson::Coalgebra(coalgebra_json(&Coalgebra::dual_numbers(&k)))),
        "F": {"kind":"day_coalgebra","form":"graded","category":"Z2","coalgebra":"D","degrees":[0,1]},
        "U": {"kind":"day_coalgebra","form":"at_unit","category":"Z2","coalgebra":"D"}
    }}))
    .unwrap();
    assert!(ws.validate_all().unwrap().all_passed());
    let (Entity::DayCoalgebra(a), Entity::Category(z)) = (ws.get("F").unwrap(), ws.get("Z2").unwrap()) else { panic!() };
    assert!(Arc::ptr_eq(a.category(), z));
}

#[test]
fn presheaves_round_trip() {
    let k = Field::prime(2).unwrap();
    let idx = Arc::new(IndexCategory::chain(2));
    let restr = (0..idx.morphism_count())
        .map(|m| match idx.ends(m) {
            (0, 1) => Coalgebra::dual_numbers(&k).epsilon().clone(),
            (0, 0) => Matrix::identity(&k, 1),
            _ => Matrix::identity(&k, 2),
        })
        .collect();
    let f = CoalgebraPresheaf::validated(idx.clone(), vec![Coalgebra::trivial(&k), Coalgebra::dual_numbers(&k)], restr).unwrap();
    let ws = load(document(&EntityJson::CoalgebraPresheaf(coalgebra_presheaf_json(&f)))).unwrap();
    let Entity::CoalgebraPresheaf(g) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(g.sections(), f.sections());
    for m in 0..idx.morphism_count() {
        assert_eq!(g.restriction(m).matrix(), f.restriction(m).matrix());
    }

    let x = SetPresheaf { index: idx.clone(), sizes: vec![1, 2], maps: vec![vec![0], vec![0, 0], vec![0, 1]] };
    let ws = load(document(&EntityJson::SetPresheaf(set_presheaf_json(&x, Some(&k))))).unwrap();
    let Entity::SetPresheaf(y, kk) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(y.maps, x.maps);
    assert_eq!(*kk, k);
}

#[test]
fn galois_data_round_trip() {
    let base = Field::prime(2).unwrap();
    let ws = load(json!({"version":1,"kind":"galois","base":{"kind":"Fp","p":2},"degree":3})).unwrap();
    let Entity::Galois(d) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(d.order(), 3);
    let j = galois_json(d);
    let ws2 = load(document(&EntityJson::Galois(j.clone()))).unwrap();
    let Entity::Galois(d2) = ws2.get("it").unwrap() else { panic!() };
    assert_eq!(d2, d);
    assert!(ws2.validate_all().unwrap().all_passed());

    let mut wrong = j;
    wrong.group_table = Some(vec![vec![0, 0, 0]; 3]);
    assert!(load(document(&EntityJson::Galois(wrong))).is_err());
    let _ = dual_coalgebra(d.field());
    assert_eq!(d.base(), &base);
}

#[test]
fn reports_round_trip_canonically() {
    let mut checks = CheckReport::new();
    checks.pass("a");
    checks.fail("b", "witness 3");
    checks.skip("c", "not split");
    let r = Report::new("validate", checks, json!({"z": 1, "a": [1, 2], "m": {"y": "x", "b": null}})).with_seed(7);
    assert!(!r.ok);
    let text = r.to_canonical();
    let back = Report::parse(&text).unwrap();
    assert_eq!(back, r);
    assert_eq!(back.to_canonical(), text);
    assert!(text.find("\"a\"").unwrap() < text.find("\"z\"").unwrap());
    assert!(Report::parse(&text.replace("coalg-report/1", "other/1")).is_err());
}

#[test]
fn field_entities() {
    let ws = load(json!({"version":1,"kind":"field","field":{"kind":"Fq","p":3,"modulus":[1,0,1]}})).unwrap();
    let Entity::Field(k) = ws.get("it").unwrap() else { panic!() };
    assert_eq!(k.order(), Some(9));
    assert!(load(json!({"version":1,"kind":"field","field":{"kind":"Fp","p":4}})).is_err());
    let _ = FieldSpec::Rationals;
}
