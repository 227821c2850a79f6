use std::collections::BTreeMap;

use rand::Rng;
use serde_json::{json, Value};

use super::Tally;
use crate::corpus;
use crate::field::{FactorConfig, Field};
use crate::galois::{adjunction_checks, equivariant_maps, kbar_functor, kbar_map, FiniteGSet, GaloisDatum};
use crate::coalg::Coalgebra;
use crate::report::{CheckReport, Status};
use crate::structure::etale_part;

/// Every G-set of size `1..=max` up to isomorphism: disjoint unions of
/// coset spaces `G/H`, listed by nondecreasing subgroup index.
pub(crate) fn small_gsets(d: &GaloisDatum, max: usize) -> Vec<(String, FiniteGSet)> {
    let subgroups = d.subgroups();
    let orbits: Vec<(usize, FiniteGSet)> = subgroups
        .iter()
        .map(|h| (d.order() / h.len(), FiniteGSet::coset_space(d, h).expect("subgroup")))
        .collect();
    let mut out = Vec::new();
    let mut stack: Vec<(usize, Vec<usize>, Option<FiniteGSet>)> = vec![(0, vec![], None)];
    while let Some((from, picked, x)) = stack.pop() {
        let size = x.as_ref().map_or(0, |x| x.size);
        if let Some(x) = &x {
            let name = picked.iter().map(|&i| format!("G/H{i}")).collect::<Vec<_>>().join(" + ");
            out.push((name, x.clone()));
        }
        for (i, (index, orbit)) in orbits.iter().enumerate().skip(from) {
            if size + index <= max {
                let next = match &x {
                    Some(x) => x.disjoint_union(orbit),
                    None => orbit.clone(),
                };
                stack.push((i, [picked.clone(), vec![i]].concat(), Some(next)));
            }
        }
    }
    out.sort_by(|a, b| a.1.size.cmp(&b.1.size).then(a.0.cmp(&b.0)));
    out
}

pub(super) fn adjunction(rng: &mut impl Rng, cfg: &FactorConfig) -> (CheckReport, Value) {
    let mut t = Tally::default();
    let (f2, f3) = (Field::prime(2).expect("prime"), Field::prime(3).expect("prime"));
    let extensions = [(f2.clone(), 2), (f2.clone(), 3), (f3.clone(), 2), (f2.clone(), 4)];
    let mut data = serde_json::Map::new();
    let mut datums = Vec::new();
    for (base, n) in &extensions {
        let name = format!("F{}^{n}/F{}", base.characteristic(), base.characteristic());
        let Some(d) = t.ok("Galois datum", GaloisDatum::finite(base, *n, cfg), || name.clone()) else {
            continue;
        };
        let problems = d.verify(cfg).unwrap_or_else(|e| vec![e.to_string()]);
        t.record("Galois datum", problems.is_empty(), || format!("{name}: {problems:?}"));

        // unit on every G-set of size ≤ 6
        let gsets = small_gsets(&d, 6);
        let trivial = Coalgebra::trivial(base);
        for (label, x) in &gsets {
            let ctx = || format!("{name}, X = {label}");
            if let Some(rep) = t.ok("unit computed", adjunction_checks(&d, x, &trivial, cfg), ctx) {
                let unit: Vec<_> = rep.checks.iter().filter(|c| !c.name.starts_with("counit")).cloned().collect();
                t.absorb("unit", &CheckReport { checks: unit }, ctx);
            }
        }

        // faithfulness on |X|, |Y| ≤ 4
        let small: Vec<_> = gsets.iter().filter(|(_, x)| x.size <= 4).collect();
        let mut pairs = 0;
        let mut maps_seen = 0;
        let kbars: Vec<_> = small.iter().map(|(_, x)| kbar_functor(&d, x, cfg)).collect();
        for (i, (lx, x)) in small.iter().enumerate() {
            for (j, (ly, y)) in small.iter().enumerate() {
                let ctx = || format!("{name}, {lx} → {ly}");
                let (Ok(kx), Ok(ky)) = (&kbars[i], &kbars[j]) else {
                    t.record("faithful", false, || format!("{}: k̄^∨ failed", ctx()));
                    continue;
                };
                pairs += 1;
                let maps = equivariant_maps(&d, x, y);
                let mut images = Vec::with_capacity(maps.len());
                for f in &maps {
                    if let Some(m) = t.ok("k̄^∨(f) is a morphism", kbar_map(&d, kx, ky, f), ctx) {
                        t.record("k̄^∨(f) is a morphism", m.is_valid(), ctx);
                        images.push(m.matrix().to_strings());
                    }
                }
                maps_seen += maps.len();
                let n = images.len();
                images.sort();
                images.dedup();
                t.record("faithful", images.len() == n && n == maps.len(), || {
                    format!("{}: {} maps, {} distinct images", ctx(), maps.len(), images.len())
                });
            }
        }
        data.insert(name, json!({ "order": d.order(), "subgroups": d.subgroups().len(), "gsets": gsets.len(), "faithful_pairs": pairs, "equivariant_maps": maps_seen }));
        datums.push((base.clone(), *n, d));
    }

    // counit image = Ét(C) on coalgebras whose residue fields embed in some L
    let mut found = 0;
    let mut draws = 0;
    let mut skipped = BTreeMap::new();
    let mut by_extension: BTreeMap<String, usize> = BTreeMap::new();
    while found < 100 && draws < 1000 {
        draws += 1;
        let base = if draws % 3 == 0 { &f3 } else { &f2 };
        let s = corpus::random_coalgebra(base, 5, rng);
        let c = &s.coalgebra;
        let ctx = || format!("{} over {base}", s.recipe);
        let Some(e) = t.ok("counit computed", etale_part(c, cfg), ctx) else {
            continue;
        };
        let degrees: Vec<usize> = e.decomposition.components.iter().map(|ci| ci.residue.degree()).collect();
        let fits = |n: usize| degrees.iter().all(|d| n.is_multiple_of(*d));
        let candidates: Vec<&(Field, usize, GaloisDatum)> =
            datums.iter().filter(|(b, n, _)| b == base && fits(*n)).collect();
        if candidates.is_empty() {
            *skipped.entry(format!("degrees {degrees:?}")).or_insert(0usize) += 1;
            continue;
        }
        let (_, n, d) = candidates[rng.gen_range(0..candidates.len())];
        let x = FiniteGSet::trivial(d, 1);
        if let Some(rep) = t.ok("counit computed", adjunction_checks(d, &x, c, cfg), ctx) {
            t.record("counit computed", true, String::new);
            let counit: Vec<_> =
                rep.checks.iter().filter(|c| c.name.starts_with("counit") || c.name.starts_with("triangle R")).cloned().collect();
            let exact = counit.iter().any(|c| c.name == "counit image = Ét(C)" && c.status == Status::Passed);
            t.absorb("counit", &CheckReport { checks: counit }, ctx);
            if exact {
                found += 1;
            }
            *by_extension.entry(format!("F{}^{n}", base.characteristic())).or_default() += 1;
        }
    }
    t.at_least("coalgebras with counit image = Ét(C)", found, 100);
    data.insert(
        "counit".into(),
        json!({ "coalgebras": found, "draws": draws, "by_extension": by_extension, "no_fitting_extension": skipped }),
    );
    (t.finish(), Value::Object(data))
}
