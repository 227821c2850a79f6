//! Presheaves of coalgebras on a finite index category, sectionwise étale
//! parts and the presheaf form of the `k^δ ⊣ (−)^gp` adjunction.
use std::sync::Arc;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::coalg::{diagonal_coalgebra, direct_sum_all, Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::field::{Elem, FactorConfig, Field};
use crate::linalg::Matrix;
use crate::report::CheckReport;
use crate::structure::{etale_part, gp_adjunction_checks, group_likes};

/// A finite category given by its composition table.
///
/// Morphism `m` goes from `ends[m].0` to `ends[m].1`; `compose[g][f]` is
/// `g∘f` when the target of `f` is the source of `g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexCategory {
    objects: Vec<String>,
    names: Vec<String>,
    ends: Vec<(usize, usize)>,
    compose: Vec<Vec<Option<usize>>>,
    identities: Vec<usize>,
    spec: IndexSpec,
}

/// How an index category was described; this is also its JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum IndexSpec {
    /// Objects `0..objects` ordered by the reflexive-transitive closure of `leq`.
    Poset { objects: usize, leq: Vec<(usize, usize)> },
    /// The cyclic group of the given order as a one-object category.
    Cyclic { order: usize },
    /// Explicit table. Identities are listed as ordinary morphisms.
    Table { objects: Vec<String>, morphisms: Vec<TableMorphism>, compose: Vec<(usize, usize, usize)> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableMorphism {
    pub name: String,
    pub source: usize,
    pub target: usize,
}

impl IndexCategory {
    pub fn from_spec(spec: &IndexSpec) -> Result<Self> {
        match spec {
            IndexSpec::Poset { objects, leq } => Self::poset(*objects, leq),
            IndexSpec::Cyclic { order } => Self::cyclic(*order),
            IndexSpec::Table { objects, morphisms, compose } => {
                let n = morphisms.len();
                let mut table = vec![vec![None; n]; n];
                for &(g, f, h) in compose {
                    if g >= n || f >= n || h >= n {
                        return Err(Error::Invalid(format!("composition ({g}, {f}) ↦ {h} names a missing morphism")));
                    }
                    table[g][f] = Some(h);
                }
                let ends = morphisms.iter().map(|m| (m.source, m.target)).collect();
                let names = morphisms.iter().map(|m| m.name.clone()).collect();
                Self::from_table(objects.clone(), names, ends, table, spec.clone())
            }
        }
    }

    fn from_table(
        objects: Vec<String>,
        names: Vec<String>,
        ends: Vec<(usize, usize)>,
        compose: Vec<Vec<Option<usize>>>,
        spec: IndexSpec,
    ) -> Result<Self> {
        let n = ends.len();
        if ends.iter().any(|&(a, b)| a >= objects.len() || b >= objects.len()) {
            return Err(Error::Invalid("morphism endpoint out of range".into()));
        }
        for g in 0..n {
            for f in 0..n {
                let composable = ends[f].1 == ends[g].0;
                match compose[g][f] {
                    Some(h) if !composable || ends[h] != (ends[f].0, ends[g].1) => {
                        return Err(Error::Invalid(format!("composite of {} and {} has the wrong ends", names[g], names[f])));
                    }
                    None if composable => {
                        return Err(Error::Invalid(format!("composite of {} after {} is missing", names[g], names[f])));
                    }
                    _ => {}
                }
            }
        }
        let identities = (0..objects.len())
            .map(|x| {
                (0..n)
                    .find(|&i| {
                        ends[i] == (x, x)
                            && (0..n).all(|f| ends[f].1 != x || compose[i][f] == Some(f))
                            && (0..n).all(|g| ends[g].0 != x || compose[g][i] == Some(g))
                    })
                    .ok_or_else(|| Error::Invalid(format!("object {} has no identity", objects[x])))
            })
            .collect::<Result<Vec<_>>>()?;
        for h in 0..n {
            for g in 0..n {
                for f in 0..n {
                    if let (Some(gf), Some(hg)) = (compose[g][f], compose[h][g]) {
                        if compose[h][gf] != compose[hg][f] {
                            return Err(Error::Invalid(format!("composition is not associative at ({}, {}, {})", names[h], names[g], names[f])));
                        }
                    }
                }
            }
        }
        Ok(IndexCategory { objects, names, ends, compose, identities, spec })
    }

    /// Objects `0..n` with `x → y` iff `x ≤ y` in the order generated by `leq`.
    pub fn poset(n: usize, leq: &[(usize, usize)]) -> Result<Self> {
        let mut le = vec![vec![false; n]; n];
        for (x, row) in le.iter_mut().enumerate() {
            row[x] = true;
        }
        for &(a, b) in leq {
            if a >= n || b >= n {
                return Err(Error::Invalid(format!("relation {a} ≤ {b} out of range")));
            }
            le[a][b] = true;
        }
        for m in 0..n {
            for a in 0..n {
                for b in 0..n {
                    if le[a][m] && le[m][b] {
                        le[a][b] = true;
                    }
                }
            }
        }
        if (0..n).any(|a| (0..n).any(|b| a != b && le[a][b] && le[b][a])) {
            return Err(Error::Invalid("order relation has a cycle".into()));
        }
        let mut ends = Vec::new();
        for a in 0..n {
            for b in 0..n {
                if le[a][b] {
                    ends.push((a, b));
                }
            }
        }
        let index = |a: usize, b: usize| ends.iter().position(|&e| e == (a, b));
        let compose = (0..ends.len())
            .map(|g| (0..ends.len()).map(|f| (ends[f].1 == ends[g].0).then(|| index(ends[f].0, ends[g].1)).flatten()).collect())
            .collect();
        let names = ends.iter().map(|(a, b)| format!("{a}≤{b}")).collect();
        Self::from_table(
            (0..n).map(|x| x.to_string()).collect(),
            names,
            ends.clone(),
            compose,
            IndexSpec::Poset { objects: n, leq: leq.to_vec() },
        )
    }

    pub fn chain(n: usize) -> Self {
        let leq: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Self::poset(n, &leq).expect("chains are posets")
    }

    pub fn discrete(n: usize) -> Self {
        Self::poset(n, &[]).expect("discrete posets")
    }

    /// `ℤ/n` as a one-object category; morphism `i` is the `i`-th power of
    /// the generator.
    pub fn cyclic(order: usize) -> Result<Self> {
        if order == 0 {
            return Err(Error::Invalid("a group has at least one element".into()));
        }
        let compose = (0..order).map(|g| (0..order).map(|f| Some((g + f) % order)).collect()).collect();
        Self::from_table(
            vec!["*".into()],
            (0..order).map(|i| format!("g^{i}")).collect(),
            vec![(0, 0); order],
            compose,
            IndexSpec::Cyclic { order },
        )
    }

    pub fn spec(&self) -> &IndexSpec {
        &self.spec
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn morphism_count(&self) -> usize {
        self.ends.len()
    }

    pub fn name(&self, m: usize) -> &str {
        &self.names[m]
    }

    /// `(source, target)` of morphism `m`.
    pub fn ends(&self, m: usize) -> (usize, usize) {
        self.ends[m]
    }

    pub fn identity(&self, x: usize) -> usize {
        self.identities[x]
    }

    pub fn compose(&self, g: usize, f: usize) -> Option<usize> {
        self.compose[g][f]
    }

    pub fn is_identity(&self, m: usize) -> bool {
        self.identities.contains(&m)
    }
}

/// A presheaf of coalgebras: `sections[x]` and, for every morphism
/// `m: a → b`, a restriction `restrictions[m]: F(b) → F(a)`.
#[derive(Clone, Debug)]
pub struct CoalgebraPresheaf {
    index: Arc<IndexCategory>,
    sections: Vec<Coalgebra>,
    restrictions: Vec<CoalgebraMorphism>,
}

impl CoalgebraPresheaf {
    /// Checks shapes only; see [`CoalgebraPresheaf::verify`].
    pub fn new(index: Arc<IndexCategory>, sections: Vec<Coalgebra>, restrictions: Vec<Matrix>) -> Result<Self> {
        if sections.len() != index.len() || restrictions.len() != index.morphism_count() {
            return Err(Error::ShapeMismatch(format!(
                "{} objects and {} morphisms need as many sections and restrictions",
                index.len(),
                index.morphism_count()
            )));
        }
        let restrictions = restrictions
            .into_iter()
            .enumerate()
            .map(|(m, r)| {
                let (a, b) = index.ends(m);
                CoalgebraMorphism::new(&sections[b], &sections[a], r)
                    .map_err(|e| Error::ShapeMismatch(format!("restriction along {}: {e}", index.name(m))))
            })
            .collect::<Result<_>>()?;
        Ok(CoalgebraPresheaf { index, sections, restrictions })
    }

    pub fn validated(index: Arc<IndexCategory>, sections: Vec<Coalgebra>, restrictions: Vec<Matrix>) -> Result<Self> {
        let p = Self::new(index, sections, restrictions)?;
        p.verify().into_result()?;
        Ok(p)
    }

    /// The same coalgebra everywhere, identity restrictions.
    pub fn constant(index: Arc<IndexCategory>, c: &Coalgebra) -> Self {
        let restrictions = (0..index.morphism_count()).map(|_| c.identity_morphism()).collect();
        CoalgebraPresheaf { sections: vec![c.clone(); index.len()], index, restrictions }
    }

    /// `k^δ[X]` for a presheaf of finite sets.
    pub fn diagonal(field: &Field, x: &SetPresheaf) -> Self {
        let sections: Vec<Coalgebra> = x.sizes.iter().map(|&n| diagonal_coalgebra(field, n)).collect();
        let restrictions = (0..x.index.morphism_count())
            .map(|m| {
                let (a, b) = x.index.ends(m);
                let mat = Matrix::from_fn(field, x.sizes[a], x.sizes[b], |i, j| {
                    if x.maps[m][j] == i {
                        field.one()
                    } else {
                        field.zero()
                    }
                });
                CoalgebraMorphism::new(&sections[b], &sections[a], mat).expect("function matrices have the right shape")
            })
            .collect();
        CoalgebraPresheaf { index: x.index.clone(), sections, restrictions }
    }

    pub fn index(&self) -> &Arc<IndexCategory> {
        &self.index
    }

    pub fn sections(&self) -> &[Coalgebra] {
        &self.sections
    }

    pub fn section(&self, x: usize) -> &Coalgebra {
        &self.sections[x]
    }

    pub fn restriction(&self, m: usize) -> &CoalgebraMorphism {
        &self.restrictions[m]
    }

    pub fn field(&self) -> Option<&Field> {
        self.sections.first().map(Coalgebra::field)
    }

    /// Sections are coalgebras, restrictions are coalgebra morphisms,
    /// identities act trivially and `F(g∘f) = F(f)∘F(g)`.
    pub fn verify(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        for (x, c) in self.sections.iter().enumerate() {
            let v = c.validate();
            rep.record(format!("section {} is a coalgebra", self.index.objects[x]), v.is_valid(), || format!("{v:?}"));
        }
        for (m, r) in self.restrictions.iter().enumerate() {
            let v = r.validate();
            rep.record(format!("restriction along {} is a morphism", self.index.name(m)), v.is_valid(), || format!("{v:?}"));
        }
        for x in 0..self.index.len() {
            let id = self.restrictions[self.index.identity(x)].matrix();
            rep.record(format!("identity at {}", self.index.objects[x]), id.is_identity(), || "F(id) ≠ id".into());
        }
        for g in 0..self.index.morphism_count() {
            for f in 0..self.index.morphism_count() {
                if let Some(gf) = self.index.compose(g, f) {
                    let lhs = self.restrictions[gf].matrix();
                    let rhs = self.restrictions[f].matrix().mul(self.restrictions[g].matrix());
                    if *lhs != rhs {
                        rep.fail(
                            format!("functoriality at {} ∘ {}", self.index.name(g), self.index.name(f)),
                            "F(g∘f) ≠ F(f)∘F(g)",
                        );
                    }
                }
            }
        }
        if rep.all_passed() {
            rep.pass("functorial");
        }
        rep
    }

    pub fn is_valid(&self) -> bool {
        self.verify().all_passed()
    }

    /// A random presheaf of coalgebras on a poset or cyclic index.
    ///
    /// On a poset, `F(x) = k·g ⊕ ⊕_{z ≤ x} D_z ⊕ ⊕_{z ≥ x} E_z`. Restriction
    /// along `x ≤ y` keeps `D_z` for `z ≤ x` and collapses the other `D_z`
    /// onto `g` through the counit, includes every `E_z`, and fixes `g`. On
    /// `ℤ/n` the section is `D^{⊕n} ⊕ E` with the generator rotating the
    /// copies of `D`.
    pub fn random<R: Rng + ?Sized>(
        index: Arc<IndexCategory>,
        mut piece: impl FnMut(&mut R) -> Coalgebra,
        rng: &mut R,
    ) -> Result<Self> {
        match index.spec().clone() {
            IndexSpec::Cyclic { order } => {
                let d = piece(rng);
                let e = piece(rng);
                let field = d.field().clone();
                let mut parts = vec![d.clone(); order];
                parts.push(e.clone());
                let sum = direct_sum_all(&field, &parts).coalgebra;
                let dd = d.dim();
                let total = sum.dim();
                let restrictions = (0..order)
                    .map(|i| {
                        Matrix::from_fn(&field, total, total, |r, c| {
                            let hit = if c < order * dd {
                                let (copy, off) = (c / dd, c % dd);
                                r == ((copy + i) % order) * dd + off
                            } else {
                                r == c
                            };
                            if hit {
                                field.one()
                            } else {
                                field.zero()
                            }
                        })
                    })
                    .collect();
                Self::new(index, vec![sum], restrictions)
            }
            IndexSpec::Poset { .. } | IndexSpec::Table { .. } => {
                let n = index.len();
                let le = |a: usize, b: usize| (0..index.morphism_count()).any(|m| index.ends(m) == (a, b));
                let ds: Vec<Coalgebra> = (0..n).map(|_| piece(rng)).collect();
                let es: Vec<Coalgebra> = (0..n).map(|_| piece(rng)).collect();
                let field = ds[0].field().clone();
                let trivial = Coalgebra::trivial(&field);
                // summand lists: (kind, z) with kind 0 = g, 1 = D_z, 2 = E_z
                let layout = |x: usize| -> Vec<(u8, usize)> {
                    let mut v = vec![(0u8, 0usize)];
                    v.extend((0..n).filter(|&z| le(z, x)).map(|z| (1, z)));
                    v.extend((0..n).filter(|&z| le(x, z)).map(|z| (2, z)));
                    v
                };
                let coal = |(kind, z): (u8, usize)| -> &Coalgebra {
                    match kind {
                        0 => &trivial,
                        1 => &ds[z],
                        _ => &es[z],
                    }
                };
                let sections: Vec<Coalgebra> =
                    (0..n).map(|x| direct_sum_all(&field, &layout(x).into_iter().map(|p| coal(p).clone()).collect::<Vec<_>>()).coalgebra).collect();
                let offsets = |x: usize| -> Vec<usize> {
                    let mut acc = 0;
                    layout(x)
                        .into_iter()
                        .map(|p| {
                            let o = acc;
                            acc += coal(p).dim();
                            o
                        })
                        .collect()
                };
                let mut restrictions = Vec::with_capacity(index.morphism_count());
                for m in 0..index.morphism_count() {
                    let (a, b) = index.ends(m);
                    let (la, lb) = (layout(a), layout(b));
                    let (oa, ob) = (offsets(a), offsets(b));
                    let mut mat = Matrix::zeros(&field, sections[a].dim(), sections[b].dim());
                    for (pi, &p) in lb.iter().enumerate() {
                        let c = coal(p);
                        let target = la.iter().position(|&q| q == p);
                        for j in 0..c.dim() {
                            match target {
                                Some(t) => mat.set(oa[t] + j, ob[pi] + j, field.one()),
                                // collapse onto g through the counit
                                None => mat.set(oa[0], ob[pi] + j, c.epsilon().get(0, j).clone()),
                            }
                        }
                    }
                    restrictions.push(mat);
                }
                Self::new(index, sections, restrictions)
            }
        }
    }
}

/// A presheaf of finite sets: `maps[m]` sends `X(b)` to `X(a)` for `m: a → b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetPresheaf {
    pub index: Arc<IndexCategory>,
    pub sizes: Vec<usize>,
    pub maps: Vec<Vec<usize>>,
}

impl SetPresheaf {
    pub fn verify(&self) -> CheckReport {
        let mut rep = CheckReport::new();
        let idx = &self.index;
        for m in 0..idx.morphism_count() {
            let (a, b) = idx.ends(m);
            let ok = self.maps[m].len() == self.sizes[b] && self.maps[m].iter().all(|&i| i < self.sizes[a]);
            rep.record(format!("map along {}", idx.name(m)), ok, || "wrong domain or codomain".into());
        }
        if !rep.all_passed() {
            return rep;
        }
        for x in 0..idx.len() {
            let id = &self.maps[idx.identity(x)];
            rep.record(format!("identity at {}", idx.objects()[x]), id.iter().enumerate().all(|(i, &j)| i == j), String::new);
        }
        for g in 0..idx.morphism_count() {
            for f in 0..idx.morphism_count() {
                if let Some(gf) = idx.compose(g, f) {
                    let ok = (0..self.sizes[idx.ends(g).1]).all(|s| self.maps[gf][s] == self.maps[f][self.maps[g][s]]);
                    if !ok {
                        rep.fail(format!("functoriality at {} ∘ {}", idx.name(g), idx.name(f)), "X(g∘f) ≠ X(f)∘X(g)");
                    }
                }
            }
        }
        rep
    }
}

/// The sectionwise étale parts with inclusion and splitting.
#[derive(Clone, Debug)]
pub struct EtaleSubpresheaf {
    pub presheaf: CoalgebraPresheaf,
    /// `ι_x: Ét(F(x)) → F(x)`.
    pub inclusion: Vec<CoalgebraMorphism>,
    /// `r_x: F(x) → Ét(F(x))`, with `r_x ∘ ι_x = id`.
    pub splitting: Vec<CoalgebraMorphism>,
    pub report: CheckReport,
}

/// `U ↦ Ét(F(U))` with restrictions induced from `F` and the sectionwise
/// retractions. Fails with `ReportedFailure` if a naturality square does
/// not commute.
pub fn etale_subpresheaf(f: &CoalgebraPresheaf, cfg: &FactorConfig) -> Result<EtaleSubpresheaf> {
    let idx = f.index().clone();
    let parts = f.sections.iter().map(|c| etale_part(c, cfg)).collect::<Result<Vec<_>>>()?;
    let mut rep = CheckReport::new();
    let mut restrictions = Vec::with_capacity(idx.morphism_count());
    for m in 0..idx.morphism_count() {
        let (a, b) = idx.ends(m);
        let name = idx.name(m).to_string();
        let image = f.restrictions[m].matrix().mul(parts[b].inclusion.matrix());
        let induced = parts[a].space.coordinates_of_columns(&image).ok_or_else(|| Error::ReportedFailure {
            check: format!("Ét is functorial along {name}"),
            detail: "the image of Ét leaves Ét".into(),
        })?;
        let lhs = parts[a].retraction.matrix().mul(f.restrictions[m].matrix());
        let rhs = induced.mul(parts[b].retraction.matrix());
        if lhs != rhs {
            return Err(Error::ReportedFailure { check: format!("splitting natural along {name}"), detail: "r∘F(m) ≠ Ét(F(m))∘r".into() });
        }
        rep.pass(format!("inclusion and splitting natural along {name}"));
        restrictions.push(induced);
    }
    for (x, p) in parts.iter().enumerate() {
        let ri = p.retraction.matrix().mul(p.inclusion.matrix());
        rep.record(format!("r∘ι = id at {}", idx.objects()[x]), ri.is_identity(), || "r∘ι ≠ id".into());
    }
    let sections: Vec<Coalgebra> = parts.iter().map(|p| p.etale.clone()).collect();
    let presheaf = CoalgebraPresheaf::new(idx, sections, restrictions)?;
    rep.merge("Ét(F)", presheaf.verify());
    Ok(EtaleSubpresheaf {
        presheaf,
        inclusion: parts.iter().map(|p| p.inclusion.clone()).collect(),
        splitting: parts.iter().map(|p| p.retraction.clone()).collect(),
        report: rep,
    })
}

/// `F^gp`: group-likes of every section, with the restriction functions.
pub fn group_like_presheaf(f: &CoalgebraPresheaf, cfg: &FactorConfig) -> Result<(SetPresheaf, Vec<Vec<Vec<Elem>>>)> {
    let idx = f.index().clone();
    let elements: Vec<Vec<Vec<Elem>>> = f.sections.iter().map(|c| Ok(group_likes(c, cfg)?.elements)).collect::<Result<_>>()?;
    let mut maps = Vec::with_capacity(idx.morphism_count());
    for m in 0..idx.morphism_count() {
        let (a, b) = idx.ends(m);
        let map = elements[b]
            .iter()
            .map(|g| {
                let img = f.restrictions[m].matrix().mul_vec(g);
                elements[a].iter().position(|h| *h == img).ok_or_else(|| Error::ReportedFailure {
                    check: format!("group-likes restrict along {}", idx.name(m)),
                    detail: "image of a group-like is not group-like".into(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        maps.push(map);
    }
    Ok((SetPresheaf { index: idx, sizes: elements.iter().map(Vec::len).collect(), maps }, elements))
}

/// Sectionwise adjunction checks, naturality of the counit
/// `k^δ[F^gp] → F` along every restriction, its factorization through
/// `Ét(F)`, and, at sections where `F` is split, the isomorphism
/// `k^δ[F^gp] ≅ Ét(F)` together with its naturality.
pub fn presheaf_gp_adjunction(f: &CoalgebraPresheaf, cfg: &FactorConfig) -> Result<CheckReport> {
    let idx = f.index().clone();
    let k = f.field().cloned().ok_or_else(|| Error::Invalid("presheaf on an empty index".into()))?;
    let mut rep = CheckReport::new();
    for (x, c) in f.sections.iter().enumerate() {
        for mut check in gp_adjunction_checks(c, cfg)?.checks {
            check.name = format!("{} at {}", check.name, idx.objects()[x]);
            rep.checks.push(check);
        }
    }
    let (gp, elements) = group_like_presheaf(f, cfg)?;
    let kgp = CoalgebraPresheaf::diagonal(&k, &gp);
    rep.merge("k^δ[F^gp]", kgp.verify());
    let counit: Vec<Matrix> = (0..idx.len()).map(|x| Matrix::from_columns(&k, f.sections[x].dim(), &elements[x])).collect();
    let et = etale_subpresheaf(f, cfg)?;
    let split: Vec<bool> = f.sections.iter().map(|c| Ok(etale_part(c, cfg)?.is_split())).collect::<Result<_>>()?;
    for m in 0..idx.morphism_count() {
        let (a, b) = idx.ends(m);
        let name = idx.name(m);
        let lhs = f.restrictions[m].matrix().mul(&counit[b]);
        let rhs = counit[a].mul(kgp.restrictions[m].matrix());
        rep.record(format!("counit natural along {name}"), lhs == rhs, || "F(m)∘ε ≠ ε∘k^δ[F^gp(m)]".into());
        if split[a] && split[b] {
            // r∘ε as a map k^δ[F^gp] → Ét(F), natural along m
            let phi_a = et.splitting[a].matrix().mul(&counit[a]);
            let phi_b = et.splitting[b].matrix().mul(&counit[b]);
            let lhs = et.presheaf.restrictions[m].matrix().mul(&phi_b);
            let rhs = phi_a.mul(kgp.restrictions[m].matrix());
            rep.record(format!("k^δ[F^gp] ≅ Ét(F) natural along {name}"), lhs == rhs, || "square does not commute".into());
        } else {
            rep.skip(format!("k^δ[F^gp] ≅ Ét(F) natural along {name}"), "a section is not split");
        }
    }
    Ok(rep)
}

/// Unit `X → (k^δ[X])^gp` of a presheaf of finite sets: a natural bijection.
pub fn set_presheaf_unit(field: &Field, x: &SetPresheaf, cfg: &FactorConfig) -> Result<CheckReport> {
    let mut rep = x.verify();
    if !rep.all_passed() {
        return Ok(rep);
    }
    let kx = CoalgebraPresheaf::diagonal(field, x);
    let (gp, elements) = group_like_presheaf(&kx, cfg)?;
    // η_U(s) = e_s; position of e_s among the group-likes
    let eta: Vec<Vec<Option<usize>>> = (0..x.index.len())
        .map(|u| {
            (0..x.sizes[u])
                .map(|s| elements[u].iter().position(|g| g.iter().enumerate().all(|(i, e)| if i == s { field.is_one(e) } else { field.is_zero(e) })))
                .collect()
        })
        .collect();
    for u in 0..x.index.len() {
        let ok = gp.sizes[u] == x.sizes[u] && eta[u].iter().all(Option::is_some);
        rep.record(format!("unit bijective at {}", x.index.objects()[u]), ok, || format!("{} group-likes for {} points", gp.sizes[u], x.sizes[u]));
    }
    if !rep.all_passed() {
        return Ok(rep);
    }
    for m in 0..x.index.morphism_count() {
        let (a, b) = x.index.ends(m);
        let ok = (0..x.sizes[b]).all(|s| eta[a][x.maps[m][s]] == Some(gp.maps[m][eta[b][s].expect("checked")]));
        rep.record(format!("unit natural along {}", x.index.name(m)), ok, String::new);
    }
    Ok(rep)
}

#[cfg(test)]
mod tests;
