use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use super::{Loaded, Output};
use crate::coalg::{generated_subcoalgebra, Coalgebra};
use crate::day::{
    day_convolve, evaluation, generated_day_subcoalgebra, internal_hom, is_invariant, is_pure, symmetry, DayPresheaf, LinearMonoidalCategory,
};
use crate::error::{Error, Result};
use crate::field::{Elem, FactorConfig, Field};
use crate::galois::{adjunction_checks, kbar_functor, FiniteGSet, GaloisDatum};
use crate::interchange::{
    category_json, coalgebra_json, day_presheaf_json, matrix_json, set_presheaf_json, vector_json, Entity, Ref, Report,
};
use crate::linalg::{Matrix, Subspace};
use crate::presheaf::{etale_subpresheaf, group_like_presheaf, presheaf_gp_adjunction, set_presheaf_unit};
use crate::report::{CheckReport, Status};
use crate::structure::{etale_part, gp_adjunction_checks, group_likes, irreducible_components, naturality_suite};
use crate::suite::{self, Outcome};

fn to_value<T: serde::Serialize>(t: &T) -> Value {
    serde_json::to_value(t).expect("interchange types serialize")
}

fn vectors(k: &Field, vs: &[Vec<Elem>]) -> Value {
    Value::Array(vs.iter().map(|v| to_value(&vector_json(k, v))).collect())
}

fn matrix(m: &Matrix) -> Value {
    to_value(&matrix_json(m))
}

fn output(command: &str, checks: CheckReport, data: Value, lines: Vec<String>) -> Result<Output> {
    Ok(Output { report: Report::new(command, checks, data), lines })
}

fn describe(e: &Entity) -> String {
    match e {
        Entity::Field(k) => format!("field {k}"),
        Entity::Algebra(a) => format!("algebra, dim {}", a.dim()),
        Entity::Coalgebra(c) => format!("coalgebra, dim {}", c.dim()),
        Entity::Morphism(m) => format!("morphism, dim {} → {}", m.source().dim(), m.target().dim()),
        Entity::Galois(d) => format!("Galois datum, group of order {}", d.order()),
        Entity::GSet(x) => format!("G-set, size {}", x.size),
        Entity::Category(c) => format!("category, {} objects", c.len()),
        Entity::DayPresheaf(f) => format!("Day presheaf, dims {:?}", f.dims()),
        Entity::DayCoalgebra(f) => format!("Day coalgebra, dims {:?}", f.presheaf().dims()),
        Entity::CoalgebraPresheaf(f) => {
            let dims: Vec<usize> = f.sections().iter().map(Coalgebra::dim).collect();
            format!("coalgebra presheaf, dims {dims:?}")
        }
        Entity::SetPresheaf(x, _) => format!("set presheaf, sizes {:?}", x.sizes),
    }
}

pub(super) fn validate(loaded: &Loaded, validation: CheckReport) -> Output {
    let mut lines = Vec::new();
    let mut entities = Vec::new();
    for name in loaded.ws.names() {
        let e = loaded.ws.get(name).expect("resolved");
        let prefix = format!("{name}/");
        let first = validation.failures().find(|c| c.name.starts_with(&prefix));
        match first {
            None => lines.push(format!("{name}: valid {}", describe(e))),
            Some(c) => lines.push(format!(
                "{name}: invalid {}: {} fails{}",
                describe(e),
                &c.name[prefix.len()..],
                c.detail.as_deref().map(|d| format!(" ({d})")).unwrap_or_default()
            )),
        }
        entities.push(json!({ "name": name, "kind": e.kind(), "valid": first.is_none() }));
    }
    let report = Report::new("validate", validation, json!({ "entities": entities }));
    Output { report, lines }
}

fn coalgebra<'a>(loaded: &'a Loaded, input: &str) -> Result<(String, &'a Coalgebra)> {
    match loaded.select(input, &["coalgebra"])? {
        (n, Entity::Coalgebra(c)) => Ok((n, c)),
        _ => unreachable!("kind checked"),
    }
}

pub(super) fn etale(loaded: &Loaded, input: &str, cfg: &FactorConfig) -> Result<Output> {
    let (name, e) = loaded.select(input, &["coalgebra", "coalgebra_presheaf"])?;
    if let Entity::CoalgebraPresheaf(f) = e {
        let et = etale_subpresheaf(f, cfg)?;
        let dims: Vec<usize> = et.presheaf.sections().iter().map(Coalgebra::dim).collect();
        let sections: Vec<Value> = et
            .presheaf
            .sections()
            .iter()
            .zip(&et.inclusion)
            .zip(&et.splitting)
            .map(|((c, i), r)| json!({ "etale": to_value(&coalgebra_json(c)), "inclusion": matrix(i.matrix()), "retraction": matrix(r.matrix()) }))
            .collect();
        let lines = vec![format!("{name}: Ét has section dims {dims:?}")];
        return output("etale", et.report, json!({ "entity": name, "sections": sections }), lines);
    }
    let (name, c) = coalgebra(loaded, input)?;
    let e = etale_part(c, cfg)?;
    let checks = e.verify(cfg)?;
    let k = c.field();
    let simples: Vec<Value> = e
        .simples
        .iter()
        .zip(&e.decomposition.components)
        .map(|(s, ci)| {
            json!({
                "dim": s.space.dim(),
                "residue_degree": ci.residue.degree(),
                "minimal_poly": ci.residue.minimal_poly.to_string(),
                "basis": vectors(k, &s.space.basis_rows()),
            })
        })
        .collect();
    let split = if e.is_split() { "split" } else { "not split" };
    let lines = vec![format!(
        "{name}: Ét has dim {} of {}, {} simple summands, {split}",
        e.space.dim(),
        c.dim(),
        e.simples.len()
    )];
    let data = json!({
        "entity": name,
        "dim": c.dim(),
        "etale_dim": e.space.dim(),
        "split": e.is_split(),
        "simples": simples,
        "etale": to_value(&coalgebra_json(&e.etale)),
        "inclusion": matrix(e.inclusion.matrix()),
        "retraction": matrix(e.retraction.matrix()),
    });
    output("etale", checks, data, lines)
}

pub(super) fn decompose(loaded: &Loaded, input: &str, cfg: &FactorConfig) -> Result<Output> {
    let (name, c) = coalgebra(loaded, input)?;
    let k = c.field();
    let ic = irreducible_components(c, cfg)?;
    let e = etale_part(c, cfg)?;
    let mut checks = CheckReport::new();
    checks.record("⊕ components → C is an isomorphism", ic.is_isomorphism(), || "not invertible".into());
    for (i, s) in ic.components.iter().enumerate() {
        checks.record(format!("component {i} is a coalgebra"), s.coalgebra.is_valid(), || "axioms fail".into());
    }
    let components: Vec<Value> = ic
        .components
        .iter()
        .zip(&e.decomposition.components)
        .zip(&e.simples)
        .map(|((s, ci), simple)| {
            json!({
                "dim": s.space.dim(),
                "basis": vectors(k, &s.space.basis_rows()),
                "residue_degree": ci.residue.degree(),
                "minimal_poly": ci.residue.minimal_poly.to_string(),
                "nilpotency": ci.nilpotency,
                "simple_dim": simple.space.dim(),
            })
        })
        .collect();
    let dims: Vec<usize> = ic.components.iter().map(|s| s.space.dim()).collect();
    let degrees: Vec<usize> = e.decomposition.components.iter().map(|ci| ci.residue.degree()).collect();
    let lines = vec![format!(
        "{name}: {} irreducible components, dims {dims:?}, residue degrees {degrees:?}",
        ic.components.len()
    )];
    output("decompose", checks, json!({ "entity": name, "components": components }), lines)
}

pub(super) fn grouplikes(loaded: &Loaded, input: &str, cfg: &FactorConfig) -> Result<Output> {
    let (name, e) = loaded.select(input, &["coalgebra", "coalgebra_presheaf"])?;
    if let Entity::CoalgebraPresheaf(f) = e {
        let (gp, elements) = group_like_presheaf(f, cfg)?;
        let checks = gp.verify();
        let k = f.field().cloned().unwrap_or_else(Field::rationals);
        let lines = vec![format!("{name}: group-likes per section {:?}", gp.sizes)];
        let data = json!({
            "entity": name,
            "presheaf": to_value(&set_presheaf_json(&gp, None)),
            "elements": elements.iter().map(|es| vectors(&k, es)).collect::<Vec<_>>(),
        });
        return output("grouplikes", checks, data, lines);
    }
    let (name, c) = coalgebra(loaded, input)?;
    let gl = group_likes(c, cfg)?;
    let mut checks = CheckReport::new();
    for (i, g) in gl.elements.iter().enumerate() {
        checks.record(format!("element {i} is group-like"), c.is_group_like(g), || "Δg ≠ g⊗g or εg ≠ 1".into());
    }
    checks.record("counit k^δ[C^gp] → C is a morphism", gl.counit().is_valid(), || "not a morphism".into());
    let n = gl.len();
    let lines = vec![format!("{n} group-like element{}", if n == 1 { "" } else { "s" })];
    let data = json!({ "entity": name, "count": n, "elements": vectors(c.field(), &gl.elements) });
    output("grouplikes", checks, data, lines)
}

pub(super) fn retract(loaded: &Loaded, input: &str, cfg: &FactorConfig) -> Result<Output> {
    let (name, e) = loaded.select(input, &["coalgebra", "morphism"])?;
    if let Entity::Morphism(phi) = e {
        let checks = naturality_suite(phi, cfg)?;
        let lines = vec![format!(
            "{name}: naturality of Ét and the retraction along a morphism of dims {} → {}",
            phi.source().dim(),
            phi.target().dim()
        )];
        return output("retract", checks, json!({ "entity": name }), lines);
    }
    let (name, c) = coalgebra(loaded, input)?;
    let e = etale_part(c, cfg)?;
    let mut checks = CheckReport::new();
    checks.record("retraction is a morphism", e.retraction.is_valid(), || "r fails".into());
    let ri = e.retraction.matrix().mul(e.inclusion.matrix());
    checks.record("r∘ι = id", ri.is_identity(), || format!("{:?}", ri.to_strings()));
    let lines = vec![format!("{name}: retraction C → Ét(C), dim {} → {}", c.dim(), e.space.dim())];
    let data = json!({
        "entity": name,
        "etale": to_value(&coalgebra_json(&e.etale)),
        "inclusion": matrix(e.inclusion.matrix()),
        "retraction": matrix(e.retraction.matrix()),
    });
    output("retract", checks, data, lines)
}

fn parse_coords(k: &Field, s: &str, dim: usize, what: &str) -> Result<Vec<Elem>> {
    let v = s
        .split(',')
        .enumerate()
        .map(|(i, x)| k.parse(x).map_err(|e| Error::Parse(format!("{what}, coordinate {}: {e}", i + 1))))
        .collect::<Result<Vec<_>>>()?;
    if v.len() != dim {
        return Err(Error::ShapeMismatch(format!("{what} has {} coordinates, expected {dim}", v.len())));
    }
    Ok(v)
}

pub(super) fn subgen(loaded: &Loaded, input: &str, raw: &[String]) -> Result<Output> {
    let (name, c) = coalgebra(loaded, input)?;
    let k = c.field();
    let vs = raw
        .iter()
        .enumerate()
        .map(|(i, s)| parse_coords(k, s, c.dim(), &format!("--vector {}", i + 1)))
        .collect::<Result<Vec<_>>>()?;
    let s = generated_subcoalgebra(c, &Subspace::from_rows(k, c.dim(), vs.clone()))?;
    let mut checks = CheckReport::new();
    checks.record("subspace is a subcoalgebra", c.is_subcoalgebra(&s.space), || "Δ(S) ⊄ S⊗S".into());
    checks.record("contains the generators", vs.iter().all(|v| s.space.contains_vector(v)), || "generator missing".into());
    checks.record("inclusion is a morphism", s.inclusion.is_valid(), || "ι fails".into());
    let lines = vec![format!("{name}: generated subcoalgebra of dim {} in dim {}", s.space.dim(), c.dim())];
    let data = json!({
        "entity": name,
        "dim": s.space.dim(),
        "basis": vectors(k, &s.space.basis_rows()),
        "coalgebra": to_value(&coalgebra_json(&s.coalgebra)),
    });
    output("subgen", checks, data, lines)
}

pub(super) fn adjunction_gp(loaded: &Loaded, input: &str, cfg: &FactorConfig) -> Result<Output> {
    let (name, e) = loaded.select(input, &["coalgebra", "coalgebra_presheaf", "set_presheaf"])?;
    let checks = match e {
        Entity::Coalgebra(c) => gp_adjunction_checks(c, cfg)?,
        Entity::CoalgebraPresheaf(f) => presheaf_gp_adjunction(f, cfg)?,
        Entity::SetPresheaf(x, k) => set_presheaf_unit(k, x, cfg)?,
        _ => unreachable!("kind checked"),
    };
    let lines = vec![format!("{name}: k^δ ⊣ gp checks on a {}", e.kind().replace('_', " "))];
    output("adjunction-gp", checks, json!({ "entity": name }), lines)
}

fn galois_pair<'a>(loaded: &'a Loaded, g: &str, x: &str) -> Result<(&'a GaloisDatum, &'a FiniteGSet)> {
    let Entity::Galois(d) = loaded.select(g, &["galois"])?.1 else { unreachable!("kind checked") };
    let Entity::GSet(x) = loaded.select(x, &["gset"])?.1 else { unreachable!("kind checked") };
    x.validate(d)?;
    Ok((d, x))
}

pub(super) fn galois_functor(loaded: &Loaded, g: &str, x: &str, cfg: &FactorConfig) -> Result<Output> {
    let (d, x) = galois_pair(loaded, g, x)?;
    let kb = kbar_functor(d, x, cfg)?;
    let mut checks = CheckReport::new();
    checks.record("k̄^∨[X] is a coalgebra", kb.coalgebra.is_valid(), || "axioms fail".into());
    let orbits: Vec<Value> = kb
        .orbits
        .iter()
        .zip(&kb.fields)
        .zip(&kb.offsets)
        .map(|((o, f), off)| {
            json!({ "points": o.points, "stabilizer": o.stabilizer, "fixed_field_degree": f.degree(), "offset": off })
        })
        .collect();
    let lines = vec![format!(
        "k̄^∨[X] has dim {} over {}, {} orbits",
        kb.coalgebra.dim(),
        d.base(),
        kb.orbits.len()
    )];
    let data = json!({ "orbits": orbits, "coalgebra": to_value(&coalgebra_json(&kb.coalgebra)) });
    output("galois-functor", checks, data, lines)
}

pub(super) fn galois_adjunction(
    loaded: &Loaded,
    g: &str,
    x: &str,
    c: Option<&str>,
    cfg: &FactorConfig,
) -> Result<Output> {
    let (d, x) = galois_pair(loaded, g, x)?;
    let trivial;
    let c = match c {
        Some(c) => coalgebra(loaded, c)?.1,
        None => {
            trivial = Coalgebra::trivial(d.base());
            &trivial
        }
    };
    if c.field() != d.base() {
        return Err(Error::SpecMismatch(format!("coalgebra over {}, Galois datum over {}", c.field(), d.base())));
    }
    let checks = adjunction_checks(d, x, c, cfg)?;
    let lines = vec![format!(
        "Galois adjunction on |X| = {} and a coalgebra of dim {} over {}",
        x.size,
        c.dim(),
        d.base()
    )];
    output("galois-adjunction", checks, json!({ "gset_size": x.size, "coalgebra_dim": c.dim() }), lines)
}

/// The category as a reference: by name when it is a workspace entity.
fn category_ref(loaded: &Loaded, c: &Arc<LinearMonoidalCategory>) -> Ref<crate::interchange::CategoryJson> {
    let named = loaded.ws.names().iter().find(|n| matches!(loaded.ws.get(n), Ok(Entity::Category(d)) if d == c));
    match named {
        Some(n) => Ref::Name(n.clone()),
        None => Ref::Inline(Box::new(category_json(c))),
    }
}

fn presheaf<'a>(loaded: &'a Loaded, input: &str) -> Result<&'a DayPresheaf> {
    match loaded.select(input, &["day_presheaf", "day_coalgebra"])?.1 {
        Entity::DayPresheaf(f) => Ok(f),
        Entity::DayCoalgebra(f) => Ok(f.presheaf()),
        _ => unreachable!("kind checked"),
    }
}

/// `[CAT] F G`: the presheaves, checked against the category when given.
fn day_pair<'a>(loaded: &'a Loaded, inputs: &[String]) -> Result<(&'a DayPresheaf, &'a DayPresheaf)> {
    let (cat, rest) = match inputs {
        [c, rest @ ..] if rest.len() == 2 => (Some(c), rest),
        _ => (None, inputs),
    };
    let f = presheaf(loaded, &rest[0])?;
    let g = presheaf(loaded, &rest[1])?;
    f.same_category(g)?;
    if let Some(c) = cat {
        let Entity::Category(c) = loaded.select(c, &["category"])?.1 else { unreachable!("kind checked") };
        if f.category() != c {
            return Err(Error::CategoryMismatch);
        }
    }
    Ok((f, g))
}

pub(super) fn convolve(loaded: &Loaded, inputs: &[String]) -> Result<Output> {
    let (f, g) = day_pair(loaded, inputs)?;
    let c = f.category();
    let fg = day_convolve(f, g)?;
    let gf = day_convolve(g, f)?;
    let mut checks = CheckReport::new();
    let bad = fg.presheaf.functoriality_failure();
    checks.record("F ⊗ G is a presheaf", bad.is_none(), || bad.unwrap_or_default());
    for u in 0..c.len() {
        let q = fg.quotient(u);
        checks.record(format!("quotient onto (F ⊗ G)({}) is surjective", c.objects()[u]), q.rank() == fg.presheaf.dim(u), || {
            format!("rank {} < dim {}", q.rank(), fg.presheaf.dim(u))
        });
    }
    let s = symmetry(&fg, &gf)?;
    checks.record("symmetry F ⊗ G ≅ G ⊗ F", s.is_natural(&fg.presheaf, &gf.presheaf) && s.is_iso(), || {
        "not a natural isomorphism".into()
    });
    let lines = vec![format!("F ⊗ G has dims {:?} on {:?}", fg.presheaf.dims(), c.objects())];
    let data = json!({
        "dims": fg.presheaf.dims(),
        "presheaf": to_value(&day_presheaf_json(&fg.presheaf, category_ref(loaded, c))),
    });
    output("day-convolve", checks, data, lines)
}

pub(super) fn hom(loaded: &Loaded, inputs: &[String]) -> Result<Output> {
    let (g, h) = day_pair(loaded, inputs)?;
    let c = g.category();
    let hom = internal_hom(g, h)?;
    let prod = day_convolve(&hom.presheaf, g)?;
    let ev = evaluation(&hom, &prod)?;
    let mut checks = CheckReport::new();
    let bad = hom.presheaf.functoriality_failure();
    checks.record("[G, H] is a presheaf", bad.is_none(), || bad.unwrap_or_default());
    checks.record("evaluation [G, H] ⊗ G → H is natural", ev.is_natural(&prod.presheaf, h), || {
        format!("{:?}", ev.naturality_failure(&prod.presheaf, h))
    });
    let lines = vec![format!("[G, H] has dims {:?} on {:?}", hom.presheaf.dims(), c.objects())];
    let data = json!({
        "dims": hom.presheaf.dims(),
        "presheaf": to_value(&day_presheaf_json(&hom.presheaf, category_ref(loaded, c))),
    });
    output("day-hom", checks, data, lines)
}

pub(super) fn day_subcoalgebra(loaded: &Loaded, input: &str, at: &[String]) -> Result<Output> {
    let (name, e) = loaded.select(input, &["day_coalgebra"])?;
    let Entity::DayCoalgebra(d) = e else { unreachable!("kind checked") };
    let fp = d.presheaf();
    let c = fp.category();
    let k = fp.field();
    let mut gens = fp.zero_spaces();
    for (i, spec) in at.iter().enumerate() {
        let what = format!("--at {}", i + 1);
        let (obj, coords) = spec
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("{what}: expected OBJECT:COORDS, got {spec:?}")))?;
        let x = match c.objects().iter().position(|o| o == obj) {
            Some(x) => x,
            None => obj
                .parse::<usize>()
                .ok()
                .filter(|&x| x < c.len())
                .ok_or_else(|| Error::Invalid(format!("{what}: no object {obj:?} in {:?}", c.objects())))?,
        };
        let v = parse_coords(k, coords, fp.dim(x), &what)?;
        gens[x] = gens[x].sum(&Subspace::from_rows(k, fp.dim(x), vec![v]))?;
    }
    let m0 = fp.restriction_closure(&gens);
    let sub = generated_day_subcoalgebra(d, &m0)?;
    let mut checks = CheckReport::new();
    checks.merge("subcoalgebra", sub.coalgebra.verify()?);
    let contains = sub.spaces.iter().zip(&m0).all(|(s, m)| s.contains(m).unwrap_or(false));
    checks.record("contains the generators", contains, || "a generator is missing".into());
    let morphism = sub.coalgebra.morphism_report(d, &sub.inclusion)?;
    checks.merge("inclusion", morphism);
    let closed = is_pure(fp, &sub.spaces, fp)? && is_invariant(d, &sub.spaces)?;
    checks.record("pure and invariant", closed, || "closure conditions fail".into());
    let dims: Vec<usize> = sub.spaces.iter().map(Subspace::dim).collect();
    let lines = vec![format!(
        "{name}: generated Day subcoalgebra has dims {dims:?} of {:?}, {} closure steps",
        fp.dims(),
        sub.trace.len()
    )];
    let spaces: BTreeMap<&str, Value> =
        c.objects().iter().zip(&sub.spaces).map(|(o, s)| (o.as_str(), vectors(k, &s.basis_rows()))).collect();
    let trace: Vec<Value> = sub
        .trace
        .iter()
        .map(|s| json!({ "kind": s.kind, "object": c.objects()[s.object], "dims_after": s.dims_after }))
        .collect();
    let data = json!({ "entity": name, "dims": dims, "spaces": spaces, "trace": trace });
    output("day-subgen", checks, data, lines)
}

/// Runs the requested suites; 9 reuses the outcomes of 1 to 8.
pub(super) fn suite(ids: &[u8], seed: u64, cfg: &FactorConfig) -> Result<super::Output> {
    let mut wanted: Vec<u8> = if ids.is_empty() { (1..=9).collect() } else { ids.to_vec() };
    wanted.sort_unstable();
    wanted.dedup();
    if let Some(bad) = wanted.iter().find(|&&i| !(1..=9).contains(&i)) {
        return Err(Error::Invalid(format!("no suite {bad}; suites are numbered 1 to 9")));
    }
    let needs_all = wanted.contains(&9);
    let mut done: Vec<Outcome> = Vec::new();
    for id in 1..=8u8 {
        if needs_all || wanted.contains(&id) {
            done.push(suite::run(id, seed, cfg)?);
        }
    }
    if needs_all {
        done.push(suite::determinism(&done, seed, cfg)?);
    }
    let mut checks = CheckReport::new();
    let mut data = serde_json::Map::new();
    let mut lines = Vec::new();
    for o in done.into_iter().filter(|o| wanted.contains(&o.id)) {
        lines.push(o.summary());
        data.insert(o.id.to_string(), json!({ "title": o.title(), "results": o.data }));
        checks.merge(&format!("suite {}", o.id), o.checks);
    }
    let failed = checks.count(Status::Failed);
    lines.push(format!("{} suites, {failed} failed checks", wanted.len()));
    let report = Report::new("suite", checks, json!({ "suites": data })).with_seed(seed);
    Ok(super::Output { report, lines })
}
