use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use serde_json::{json, Value};

use super::Tally;
use crate::brute::{contains_all, is_day_subcoalgebra, is_minimal_among, sub_presheaves};
use crate::coalg::diagonal_coalgebra;
use crate::corpus::random_vector;
use crate::day::examples::{example_coalgebras, random_day_coalgebra, standard_categories};
use crate::day::{
    adjunct, associator, coevaluation, day_convolve, generated_day_subcoalgebra, internal_hom, invariant_closure,
    is_invariant, is_pure, left_unitor, nat_hom_basis, pure_closure, right_unitor, separate_by_generator, symmetry,
    yoneda_comparison, DayCoalgebra, DayPresheaf, LinearMonoidalCategory, NatTrans,
};
use crate::field::Field;
use crate::linalg::{kron, Matrix, Subspace};
use crate::report::CheckReport;

fn fields() -> [Field; 2] {
    [Field::prime(2).expect("prime"), Field::rationals()]
}

fn describe(c: &LinearMonoidalCategory) -> String {
    format!("{:?} over {}", c.objects(), c.field())
}

pub(super) fn convolution(rng: &mut impl Rng) -> (CheckReport, Value) {
    let mut t = Tally::default();
    let mut categories = 0;
    let mut pairs = 0;
    for k in fields() {
        for c in standard_categories(&k) {
            categories += 1;
            let rep = c.verify();
            t.absorb("category", &rep, || describe(&c));
            for x in 0..c.len() {
                for y in 0..c.len() {
                    let ctx = || format!("{}: h_{x} ⊗ h_{y}", describe(&c));
                    if let Some((prod, hxy, cmp)) = t.ok("h_X ⊗ h_Y ≅ h_{X⊗Y}", yoneda_comparison(&c, x, y), ctx) {
                        pairs += 1;
                        let dims = (0..c.len()).all(|u| prod.presheaf.dim(u) == c.hom_dim(u, c.tensor_obj(x, y)));
                        t.record("h_X ⊗ h_Y ≅ h_{X⊗Y}", cmp.is_natural(&prod.presheaf, &hxy) && cmp.is_iso() && dims, ctx);
                    }
                }
            }
        }
    }

    // (F ⊗ G)(z) = ⊕_{x+y=z} F(x) ⊗ G(y) on ℤ/n
    let mut graded = 0;
    for k in fields() {
        for n in 1..=4 {
            let c = Arc::new(LinearMonoidalCategory::group_discrete(&k, n));
            for _ in 0..5 {
                let a: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
                let b: Vec<usize> = (0..n).map(|_| rng.gen_range(0..4)).collect();
                let ctx = || format!("Z/{n} over {k}, dims {a:?} and {b:?}");
                let f = DayPresheaf::discrete(c.clone(), a.clone()).expect("discrete");
                let g = DayPresheaf::discrete(c.clone(), b.clone()).expect("discrete");
                if let Some(prod) = t.ok("graded dimensions", day_convolve(&f, &g), ctx) {
                    graded += 1;
                    let got: Vec<usize> = (0..n).map(|z| prod.presheaf.dim(z)).collect();
                    let expect: Vec<usize> = (0..n).map(|z| (0..n).map(|x| a[x] * b[(z + n - x) % n]).sum()).collect();
                    t.record("graded dimensions", got == expect, || format!("{}: {got:?} vs {expect:?}", ctx()));
                }
            }
        }
    }

    // Nat(F ⊗ G, H) ≅ Nat(F, [G, H])
    let cats: Vec<_> = fields().iter().flat_map(standard_categories).collect();
    let mut triples = 0;
    for i in 0..50 {
        let c = &cats[i % cats.len()];
        let f = DayPresheaf::random(c, 2, rng);
        let g = DayPresheaf::random(c, 2, rng);
        let h = DayPresheaf::random(c, 2, rng);
        let ctx = || format!("{}: dims {:?}, {:?}, {:?}", describe(c), f.dims(), g.dims(), h.dims());
        let computed = (|| -> crate::Result<(usize, usize, bool)> {
            let fg = day_convolve(&f, &g)?;
            let hom = internal_hom(&g, &h)?;
            let lhs = nat_hom_basis(&fg.presheaf, &h)?.len();
            let rhs = nat_hom_basis(&f, &hom.presheaf)?.len();
            let hom_fg = internal_hom(&g, &fg.presheaf)?;
            let co = coevaluation(&f, &fg, &hom_fg)?;
            let hom_fg_g = day_convolve(&hom_fg.presheaf, &g)?;
            let back = adjunct(&co, &fg, &hom_fg, &hom_fg_g)?;
            Ok((lhs, rhs, back == NatTrans::identity(&fg.presheaf)))
        })();
        if let Some((lhs, rhs, triangle)) = t.ok("dim Nat(F⊗G, H) = dim Nat(F, [G,H])", computed, ctx) {
            triples += 1;
            t.record("dim Nat(F⊗G, H) = dim Nat(F, [G,H])", lhs == rhs, || format!("{}: {lhs} vs {rhs}", ctx()));
            t.record("triangle ev∘(coev⊗id) = id", triangle, ctx);
        }
    }
    t.at_least("adjunction triples", triples, 50);

    // unitors, symmetry, associator
    let mut coherence = 0;
    for c in &cats {
        let h1 = DayPresheaf::representable(c.clone(), c.unit());
        for _ in 0..2 {
            let f = DayPresheaf::random(c, 2, rng);
            let g = DayPresheaf::random(c, 2, rng);
            let h = DayPresheaf::random(c, 2, rng);
            let ctx = || format!("{}: dims {:?}, {:?}, {:?}", describe(c), f.dims(), g.dims(), h.dims());
            let computed = (|| -> crate::Result<[bool; 5]> {
                let fh1 = day_convolve(&f, &h1)?;
                let r = right_unitor(&fh1)?;
                let h1f = day_convolve(&h1, &f)?;
                let l = left_unitor(&h1f)?;
                let fg = day_convolve(&f, &g)?;
                let gf = day_convolve(&g, &f)?;
                let s = symmetry(&fg, &gf)?;
                let s2 = symmetry(&gf, &fg)?;
                let fg_h = day_convolve(&fg.presheaf, &h)?;
                let gh = day_convolve(&g, &h)?;
                let f_gh = day_convolve(&f, &gh.presheaf)?;
                let a = associator(&fg, &fg_h, &gh, &f_gh)?;
                Ok([
                    r.is_natural(&fh1.presheaf, &f) && r.is_iso(),
                    l.is_natural(&h1f.presheaf, &f) && l.is_iso(),
                    s.is_natural(&fg.presheaf, &gf.presheaf) && s.is_iso(),
                    s.then(&s2) == NatTrans::identity(&fg.presheaf),
                    a.is_natural(&fg_h.presheaf, &f_gh.presheaf) && a.is_iso(),
                ])
            })();
            if let Some(ok) = t.ok("coherence isomorphisms computed", computed, ctx) {
                coherence += 1;
                let names = ["right unitor iso", "left unitor iso", "symmetry iso", "symmetry is involutive", "associator iso"];
                for (name, ok) in names.iter().zip(ok) {
                    t.record(name, ok, ctx);
                }
            }
        }
    }
    let data = json!({
        "categories": categories,
        "representable_pairs": pairs,
        "graded_products": graded,
        "adjunction_triples": triples,
        "coherence_instances": coherence,
    });
    (t.finish(), data)
}

fn instances(rng: &mut impl Rng) -> Vec<(String, DayCoalgebra)> {
    let mut out = Vec::new();
    for k in fields() {
        for (i, d) in example_coalgebras(&k).into_iter().enumerate() {
            out.push((format!("example {i} over {k}"), d));
        }
        for _ in 0..15 {
            let (recipe, d) = random_day_coalgebra(&k, 4, rng);
            out.push((format!("{recipe} over {k}"), d));
        }
    }
    out
}

pub(super) fn closures(rng: &mut impl Rng) -> (CheckReport, Value) {
    let mut t = Tally::default();
    let pool = instances(rng);
    let mut starts = 0;
    let mut exhaustive = 0;
    let mut exhaustive_starts = 0;
    let mut total_dims = BTreeMap::new();
    for (name, f) in &pool {
        let fp = f.presheaf();
        *total_dims.entry(fp.total_dim().to_string()).or_insert(0usize) += 1;
        match f.verify() {
            Ok(rep) => t.absorb("instance", &rep, || name.clone()),
            Err(e) => t.record("instance", false, || format!("{name}: {e}")),
        }
        let k = fp.field().clone();
        // the zero family, every object's random point, and everything
        let mut gens = vec![fp.zero_spaces(), fp.full_spaces()];
        for x in 0..fp.category().len() {
            if fp.dim(x) > 0 {
                for _ in 0..2 {
                    gens.push(fp.restriction_closure(&fp.point(x, &random_vector(&k, fp.dim(x), rng))));
                }
            }
        }
        for start in &gens {
            starts += 1;
            check_closures(&mut t, f, start, name);
        }

        if k.characteristic() == 2 && fp.total_dim() <= 4 {
            exhaustive += 1;
            let subs = sub_presheaves(fp);
            for start in &subs {
                exhaustive_starts += 1;
                minimality(&mut t, f, start, &subs, name);
            }
        }
    }
    t.at_least("instances checked exhaustively", exhaustive, 5);

    let mut pairs = 0;
    let mut kinds = BTreeMap::new();
    for i in 0..50 {
        let k = &fields()[i % 2];
        let (kind, ok) = separation_pair(&mut t, k, i, rng);
        *kinds.entry(kind).or_insert(0usize) += 1;
        if ok {
            pairs += 1;
        }
    }
    t.at_least("separated pairs", pairs, 50);
    let data = json!({
        "instances": pool.len(),
        "total_dims": total_dims,
        "starting_families": starts,
        "exhaustive_instances": exhaustive,
        "exhaustive_starts": exhaustive_starts,
        "separation_pairs": kinds,
    });
    (t.finish(), data)
}

fn check_closures(t: &mut Tally, f: &DayCoalgebra, start: &[Subspace], name: &str) {
    let fp = f.presheaf();
    let ctx = || format!("{name}, start dims {:?}", start.iter().map(Subspace::dim).collect::<Vec<_>>());
    if let Some(pure) = t.ok("pure closure is pure", pure_closure(fp, start, fp), ctx) {
        let ok = contains_all(&pure.spaces, start) && fp.is_sub_presheaf(&pure.spaces);
        t.record("pure closure contains M0", ok, ctx);
        t.record("pure closure is pure", is_pure(fp, &pure.spaces, fp).unwrap_or(false), ctx);
    }
    if let Some(inv) = t.ok("invariant closure is invariant", invariant_closure(f, start), ctx) {
        let ok = contains_all(&inv.spaces, start) && fp.is_sub_presheaf(&inv.spaces);
        t.record("invariant closure contains M0", ok, ctx);
        t.record("invariant closure is invariant", is_invariant(f, &inv.spaces).unwrap_or(false), ctx);
    }
    if let Some(gen) = t.ok("generated subcoalgebra validates", generated_day_subcoalgebra(f, start), ctx) {
        let rep = gen.coalgebra.verify();
        let valid = rep.as_ref().map(CheckReport::all_passed).unwrap_or(false);
        t.record("generated subcoalgebra validates", valid, || {
            let first = rep.ok().and_then(|r| r.failures().next().map(|c| c.name.clone()));
            format!("{}: {first:?}", ctx())
        });
        t.record("generated subcoalgebra contains M0", contains_all(&gen.spaces, start), ctx);
        let morphism = gen.coalgebra.morphism_report(f, &gen.inclusion).map(|r| r.all_passed()).unwrap_or(false);
        t.record("inclusion is an injective morphism", morphism && gen.inclusion.is_injective(), ctx);
        t.record("generated is pure and invariant", is_day_subcoalgebra(f, &gen.spaces), ctx);
    }
}

fn minimality(t: &mut Tally, f: &DayCoalgebra, start: &[Subspace], subs: &[Vec<Subspace>], name: &str) {
    let fp = f.presheaf();
    let ctx = || format!("{name}, start dims {:?}", start.iter().map(Subspace::dim).collect::<Vec<_>>());
    let above: Vec<Vec<Subspace>> = subs.iter().filter(|s| contains_all(s, start)).cloned().collect();
    if let Ok(pure) = pure_closure(fp, start, fp) {
        let candidates: Vec<_> = above.iter().filter(|s| is_pure(fp, s, fp).unwrap_or(false)).cloned().collect();
        t.record("pure closure is minimal", is_minimal_among(&pure.spaces, &candidates), ctx);
    }
    if let Ok(inv) = invariant_closure(f, start) {
        let candidates: Vec<_> = above.iter().filter(|s| is_invariant(f, s).unwrap_or(false)).cloned().collect();
        t.record("invariant closure is minimal", is_minimal_among(&inv.spaces, &candidates), ctx);
    }
    if let Ok(gen) = generated_day_subcoalgebra(f, start) {
        let candidates: Vec<_> = above.iter().filter(|s| is_day_subcoalgebra(f, s)).cloned().collect();
        let ok = candidates.contains(&gen.spaces) && is_minimal_among(&gen.spaces, &candidates);
        t.record("generated subcoalgebra is minimal", ok, ctx);
    }
}

/// Draws a pair of distinct morphisms and separates them. Returns the kind
/// of pair and whether separation succeeded.
fn separation_pair(t: &mut Tally, k: &Field, i: usize, rng: &mut impl Rng) -> (String, bool) {
    let (kind, source, target, eta, psi) = if i.is_multiple_of(2) {
        // the two injections F → F ⊕ F
        let (recipe, d) = random_day_coalgebra(k, 3, rng);
        let sum = d.direct_sum(&d).expect("same category");
        let inj = |second: bool| NatTrans {
            components: (0..d.category().len())
                .map(|x| {
                    let n = d.presheaf().dim(x);
                    let (z, id) = (Matrix::zeros(k, n, n), Matrix::identity(k, n));
                    if second {
                        z.vstack(&id)
                    } else {
                        id.vstack(&z)
                    }
                })
                .collect(),
        };
        if d.presheaf().total_dim() == 0 {
            return ("empty".into(), false);
        }
        let (i1, i2) = (inj(false), inj(true));
        (format!("injections of {recipe}"), d, sum, i1, i2)
    } else {
        // two distinct set maps X → Y, placed at the unit object
        let cats = standard_categories(k);
        let c = cats[rng.gen_range(0..cats.len())].clone();
        let x = rng.gen_range(1..=3);
        let y = rng.gen_range(2..=3);
        let f: Vec<usize> = (0..x).map(|_| rng.gen_range(0..y)).collect();
        let mut g = f.clone();
        let j = rng.gen_range(0..x);
        g[j] = (g[j] + 1 + rng.gen_range(0..y - 1)) % y;
        let src = DayCoalgebra::at_unit(c.clone(), &diagonal_coalgebra(k, x)).expect("at unit");
        let tgt = DayCoalgebra::at_unit(c.clone(), &diagonal_coalgebra(k, y)).expect("at unit");
        let lift = |f: &[usize]| {
            let m = Matrix::from_fn(k, y, x, |r, s| if f[s] == r { k.one() } else { k.zero() });
            NatTrans { components: (0..c.len()).map(|u| kron(&m, &Matrix::identity(k, c.hom_dim(u, c.unit())))).collect() }
        };
        let (eta, psi) = (lift(&f), lift(&g));
        (format!("set maps {f:?}, {g:?} on {:?}", c.objects()), src, tgt, eta, psi)
    };
    let ctx = || format!("{kind} over {k}");
    for m in [&eta, &psi] {
        let ok = source.morphism_report(&target, m).map(|r| r.all_passed()).unwrap_or(false);
        t.record("pair consists of morphisms", ok, ctx);
    }
    let Some(sep) = t.ok("separated by a generated subcoalgebra", separate_by_generator(&source, &target, &eta, &psi), ctx)
    else {
        return (kind_label(&kind), false);
    };
    let valid = sep.sub.coalgebra.is_valid().unwrap_or(false);
    let differ = sep.sub.inclusion.then(&eta) != sep.sub.inclusion.then(&psi);
    let witnessed = sep.sub.spaces[sep.object].contains_vector(&sep.witness);
    t.record("separated by a generated subcoalgebra", valid && differ && witnessed, ctx);
    (kind_label(&kind), valid && differ && witnessed)
}

fn kind_label(kind: &str) -> String {
    if kind.starts_with("injections") { "injections" } else { "set maps" }.to_string()
}

