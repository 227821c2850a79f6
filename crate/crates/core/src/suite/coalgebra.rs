use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Value};

use super::Tally;
use crate::brute::{self, RawCoalgebra};
use crate::coalg::{direct_sum, generated_subcoalgebra, ArtinAlgebra, Coalgebra, CoalgebraMorphism};
use crate::corpus::{self, random_vector};
use crate::field::{Elem, FactorConfig, Field, Poly};
use crate::linalg::Subspace;
use crate::report::CheckReport;
use crate::structure::{
    etale_part, gp_adjunction_checks, hensel_lift, irreducible_components, naturality_suite, radical,
    wedderburn_splitting_from,
};

fn prime(p: u64) -> Field {
    Field::prime(p).expect("prime")
}

fn lift(k: &Field, v: &[u64]) -> Vec<Elem> {
    v.iter().map(|&a| k.from_i64(a as i64)).collect()
}

fn lower(v: &[Elem]) -> Vec<u64> {
    v.iter()
        .map(|e| match e {
            Elem::Mod(a) => *a,
            _ => unreachable!("prime field element"),
        })
        .collect()
}

fn first_violation(v: &crate::coalg::ValidationReport) -> String {
    v.violations.first().map(ToString::to_string).unwrap_or_default()
}

fn bump(map: &mut BTreeMap<String, usize>, key: String) {
    *map.entry(key).or_default() += 1;
}

pub(super) fn axioms(rng: &mut impl Rng) -> (CheckReport, Value) {
    let fields = [Field::rationals(), prime(2), prime(3), prime(5)];
    let mut t = Tally::default();
    let mut per_field = BTreeMap::new();
    let mut dims = BTreeMap::new();
    let mut morphisms = 0;
    for i in 0..1000 {
        let k = &fields[i % fields.len()];
        let s = corpus::random_coalgebra(k, 6, rng);
        let c = &s.coalgebra;
        let ctx = || format!("{} over {k}", s.recipe);
        bump(&mut per_field, k.to_string());
        bump(&mut dims, c.dim().to_string());
        t.record("dim ≤ 6", c.dim() <= 6, ctx);
        let v = c.validate();
        t.record("coalgebra axioms", v.is_valid(), || format!("{}: {}", ctx(), first_violation(&v)));

        let mut check = |name: &str, m: crate::Result<CoalgebraMorphism>| {
            if let Some(m) = t.ok(name, m, ctx) {
                let v = m.validate();
                t.record(name, v.is_valid(), || format!("{}: {}", ctx(), first_violation(&v)));
                morphisms += 1;
            }
        };
        check("identity morphism", Ok(c.identity_morphism()));
        check("counit morphism", CoalgebraMorphism::new(c, &Coalgebra::trivial(k), c.epsilon().clone()));
        let gen = Subspace::from_rows(k, c.dim(), vec![random_vector(k, c.dim(), rng)]);
        check("subcoalgebra inclusion", generated_subcoalgebra(c, &gen).map(|s| s.inclusion));
        check("quotient projection", Ok(corpus::random_quotient(c, rng)));
        if i % 4 == 0 {
            let other = corpus::random_coalgebra(k, 3, rng).coalgebra;
            let sum = direct_sum(c, &other);
            for inj in sum.injections {
                check("direct sum injection", Ok(inj));
            }
        }
    }
    for i in 0..400 {
        let k = &fields[i % fields.len()];
        let m = corpus::random_morphism(k, 6, rng);
        let v = m.morphism.validate();
        t.record("random morphism", v.is_valid(), || format!("{} over {k}: {}", m.recipe, first_violation(&v)));
        t.record("random morphism endpoints", m.morphism.source().is_valid() && m.morphism.target().is_valid(), || {
            m.recipe.clone()
        });
        morphisms += 1;
    }
    let data = json!({ "coalgebras": 1000, "by_field": per_field, "by_dim": dims, "morphisms": morphisms });
    (t.finish(), data)
}

pub(super) fn generated(rng: &mut impl Rng) -> (CheckReport, Value) {
    let k = prime(2);
    let mut t = Tally::default();
    let mut instances = 0;
    let mut generating_sets = 0;
    let mut draws = 0;
    let mut dims = BTreeMap::new();
    while instances < 250 && draws < 5000 {
        draws += 1;
        let s = corpus::random_coalgebra(&k, 4, rng);
        let c = &s.coalgebra;
        if c.dim() > 4 {
            continue;
        }
        instances += 1;
        bump(&mut dims, c.dim().to_string());
        let raw = RawCoalgebra::from_coalgebra(c).expect("prime field");
        // every single vector, plus a random pair
        let mut sets: Vec<Vec<Vec<u64>>> = brute::all_vectors(2, c.dim()).into_iter().map(|v| vec![v]).collect();
        sets.push((0..2).map(|_| (0..c.dim()).map(|_| rng.gen_range(0..2)).collect()).collect());
        for set in sets {
            generating_sets += 1;
            let rows: Vec<Vec<Elem>> = set.iter().map(|v| lift(&k, v)).collect();
            let gens = Subspace::from_rows(&k, c.dim(), rows);
            let Some(sub) = t.ok("generated = minimal by enumeration", generated_subcoalgebra(c, &gens), || s.recipe.clone())
            else {
                continue;
            };
            let oracle = brute::minimal_subcoalgebra_containing(&raw, &set);
            let oracle = Subspace::from_rows(&k, c.dim(), oracle.iter().map(|v| lift(&k, v)).collect());
            t.record("generated = minimal by enumeration", sub.space == oracle, || {
                format!("{} from {set:?}: dim {} vs {}", s.recipe, sub.space.dim(), oracle.dim())
            });
            t.record("generated subcoalgebra is valid", sub.coalgebra.is_valid() && sub.inclusion.is_valid(), || {
                s.recipe.clone()
            });
        }
    }
    t.at_least("instances over F2 with dim ≤ 4", instances, 200);
    let data = json!({ "instances": instances, "draws": draws, "generating_sets": generating_sets, "by_dim": dims });
    (t.finish(), data)
}

pub(super) fn etale(rng: &mut impl Rng, cfg: &FactorConfig) -> (CheckReport, Value) {
    let fields = [prime(2), prime(3), Field::rationals(), prime(5)];
    let mut t = Tally::default();
    let mut split = 0;
    let mut etale_dims = BTreeMap::new();
    let mut oracle_checked = 0;
    for i in 0..300 {
        let k = &fields[i % fields.len()];
        let s = corpus::random_coalgebra(k, 6, rng);
        let c = &s.coalgebra;
        let ctx = || format!("{} over {k}", s.recipe);
        let Some(e) = t.ok("étale part computed", etale_part(c, cfg), ctx) else {
            continue;
        };
        t.record("étale part computed", true, String::new);
        bump(&mut etale_dims, format!("{} in {}", e.etale.dim(), c.dim()));
        if e.is_split() {
            split += 1;
        }
        let ri = e.retraction.matrix().mul(e.inclusion.matrix());
        t.record("r∘ι = id", ri.is_identity() || e.etale.dim() == 0, ctx);
        if let Some(rep) = t.ok("étale verification", e.verify(cfg), ctx) {
            t.absorb("étale", &rep, ctx);
        }
        if let Some(comps) = t.ok("components", irreducible_components(c, cfg), ctx) {
            t.record("⊕ components ≅ C", comps.is_isomorphism() && comps.iso.is_valid(), ctx);
            t.record("one component per simple", comps.components.len() == e.simples.len(), ctx);
        }
        if let Some(raw) = RawCoalgebra::from_coalgebra(c).filter(|r| r.p == 2 && r.n <= 4) {
            oracle_checked += 1;
            let oracle = brute::etale_part(&raw);
            let oracle = Subspace::from_rows(k, c.dim(), oracle.iter().map(|v| lift(k, v)).collect());
            t.record("Ét = sum of simples by enumeration", e.space == oracle, ctx);
            if e.etale.dim() * c.dim() <= 12 {
                let raw_e = RawCoalgebra::from_coalgebra(&e.etale).expect("prime field");
                let all = brute::retractions(&raw, &raw_e, &lower(e.inclusion.matrix().entries()));
                t.record("retraction is the unique one", all == vec![lower(e.retraction.matrix().entries())], || {
                    format!("{}: {} retractions", ctx(), all.len())
                });
            }
        }
    }
    let mut morphisms = 0;
    for i in 0..240 {
        let k = &fields[i % fields.len()];
        let m = corpus::random_morphism(k, 5, rng);
        let ctx = || format!("{} over {k}", m.recipe);
        if let Some(rep) = t.ok("naturality computed", naturality_suite(&m.morphism, cfg), ctx) {
            t.record("naturality computed", true, String::new);
            t.absorb("naturality", &rep, ctx);
            morphisms += 1;
        }
    }
    t.at_least("naturality morphisms", morphisms, 200);
    let data = json!({
        "coalgebras": 300,
        "split": split,
        "etale_dims": etale_dims,
        "enumeration_checked": oracle_checked,
        "morphisms": morphisms,
    });
    (t.finish(), data)
}

pub(super) fn group_likes(rng: &mut impl Rng, cfg: &FactorConfig) -> (CheckReport, Value) {
    // p^dim ≤ 10⁴
    let cases = [(2, 6), (3, 6), (5, 5), (7, 4)];
    let mut t = Tally::default();
    let mut split = 0;
    let mut counts = BTreeMap::new();
    let mut enumerated = 0;
    for i in 0..320 {
        let (p, max) = cases[i % cases.len()];
        let k = prime(p);
        let s = corpus::random_coalgebra(&k, max, rng);
        let c = &s.coalgebra;
        let ctx = || format!("{} over {k}", s.recipe);
        let Some(gl) = t.ok("group-likes = enumeration", crate::structure::group_likes(c, cfg), ctx) else {
            continue;
        };
        let raw = RawCoalgebra::from_coalgebra(c).expect("prime field");
        let mut ours: Vec<Vec<u64>> = gl.elements.iter().map(|g| lower(g)).collect();
        ours.sort();
        let mut oracle = brute::group_likes(&raw);
        oracle.sort();
        enumerated += 1;
        bump(&mut counts, gl.len().to_string());
        t.record("group-likes = enumeration", ours == oracle, || {
            format!("{}: {} found, {} by enumeration", ctx(), ours.len(), oracle.len())
        });
        gp_checks(&mut t, c, cfg, &mut split, &ctx);
    }
    let q = Field::rationals();
    for _ in 0..80 {
        let s = corpus::random_coalgebra(&q, 5, rng);
        gp_checks(&mut t, &s.coalgebra, cfg, &mut split, &|| format!("{} over Q", s.recipe));
    }
    let data = json!({ "enumerated": enumerated, "rational": 80, "split": split, "group_like_counts": counts });
    (t.finish(), data)
}

fn gp_checks(t: &mut Tally, c: &Coalgebra, cfg: &FactorConfig, split: &mut usize, ctx: &dyn Fn() -> String) {
    if let Some(rep) = t.ok("adjunction computed", gp_adjunction_checks(c, cfg), ctx) {
        t.record("adjunction computed", true, String::new);
        if rep.checks.iter().any(|ch| ch.name == "k^δ[C^gp] ≅ Ét(C)" && ch.status == crate::report::Status::Passed) {
            *split += 1;
        }
        t.absorb("adjunction", &rep, ctx);
    }
}

pub(super) fn hensel(cfg: &FactorConfig) -> (CheckReport, Value) {
    let k = prime(2);
    let mut t = Tally::default();
    // (x² + x + 1)² = x⁴ + x² + 1 over 𝔽_2
    let a = ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[1, 0, 1, 0, 1])).expect("monic");
    let p = Poly::from_i64s(&k, &[1, 1, 1]);
    let xbar = lift(&k, &[0, 1, 0, 0]);
    let expected = lift(&k, &[1, 0, 1, 0]);
    let m = radical(&a);
    t.record("radical has dimension 2", m.dim() == 2, || format!("dim {}", m.dim()));
    let mut data = json!({});
    if let Some((root, steps)) = t.ok("lifted root is x̄² + 1", hensel_lift(&a, &p, &xbar), String::new) {
        t.record("lifted root is x̄² + 1", root == expected, || format!("{:?}", root.iter().map(|e| k.format(e)).collect::<Vec<_>>()));
        let all = brute::all_vectors(2, 4);
        let roots: Vec<Vec<u64>> =
            all.iter().filter(|v| a.is_zero_elem(&a.eval_poly(&p, &lift(&k, v)))).cloned().collect();
        let congruent: Vec<Vec<u64>> =
            roots.iter().filter(|v| m.contains_vector(&a.sub(&lift(&k, v), &xbar))).cloned().collect();
        t.record("unique root over x̄ among all 16 elements", congruent == vec![lower(&root)], || format!("{congruent:?}"));
        if let Some(w) = t.ok("Wedderburn splitting", wedderburn_splitting_from(&a, &m, &p, &xbar), String::new) {
            t.record("Wedderburn splitting", w.root == root, || "root differs from the lift".into());
            t.record("K ≅ 𝔽_4", w.field.degree() == 2 && w.field.verify(cfg).unwrap_or(false), || {
                format!("degree {}", w.field.degree())
            });
            t.record("A = K ⊕ m", w.embedding.hstack(&m.inclusion()).inverse().is_some(), || "not complementary".into());
        }
        data = json!({
            "algebra": "F2[x]/(x^4+x^2+1)",
            "start": "x",
            "root": root.iter().map(|e| k.format(e)).collect::<Vec<_>>(),
            "newton_steps": steps,
            "roots_in_A": roots.len(),
            "roots_over_start": congruent.len(),
        });
    }
    (t.finish(), data)
}

