use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::sync::Arc;

use super::*;
use crate::coalg::CoalgebraMorphism;
use crate::day::{CategoryData, NatTrans};
use crate::field::{FactorConfig, Poly};
use crate::presheaf::IndexCategory;

/// A built entity.
#[derive(Clone, Debug)]
pub enum Entity {
    Field(Field),
    Algebra(ArtinAlgebra),
    Coalgebra(Coalgebra),
    Morphism(CoalgebraMorphism),
    Galois(GaloisDatum),
    GSet(FiniteGSet),
    Category(Arc<LinearMonoidalCategory>),
    DayPresheaf(DayPresheaf),
    DayCoalgebra(DayCoalgebra),
    CoalgebraPresheaf(CoalgebraPresheaf),
    SetPresheaf(SetPresheaf, Field),
}

impl Entity {
    pub fn kind(&self) -> &'static str {
        match self {
            Entity::Field(_) => "field",
            Entity::Algebra(_) => "algebra",
            Entity::Coalgebra(_) => "coalgebra",
            Entity::Morphism(_) => "morphism",
            Entity::Galois(_) => "galois",
            Entity::GSet(_) => "gset",
            Entity::Category(_) => "category",
            Entity::DayPresheaf(_) => "day_presheaf",
            Entity::DayCoalgebra(_) => "day_coalgebra",
            Entity::CoalgebraPresheaf(_) => "coalgebra_presheaf",
            Entity::SetPresheaf(..) => "set_presheaf",
        }
    }

    /// The structural checks appropriate to the kind. G-sets are checked
    /// against a Galois datum when one is paired with them.
    pub fn validate(&self, cfg: &FactorConfig) -> Result<CheckReport> {
        let mut rep = CheckReport::new();
        let axioms = |rep: &mut CheckReport, v: crate::coalg::ValidationReport, names: &[&str]| {
            for name in names {
                match v.violations.iter().find(|x| x.axiom.name() == *name) {
                    Some(x) => rep.fail(*name, x.to_string()),
                    None => rep.pass(*name),
                }
            }
        };
        match self {
            Entity::Field(_) | Entity::GSet(_) => rep.pass("well-formed"),
            Entity::Algebra(a) => axioms(&mut rep, a.validate(), &["associativity", "commutativity", "unit"]),
            Entity::Coalgebra(c) => axioms(
                &mut rep,
                c.validate(),
                &["coassociativity", "cocommutativity", "left counit", "right counit"],
            ),
            Entity::Morphism(m) => axioms(
                &mut rep,
                m.validate(),
                &["compatibility with comultiplication", "compatibility with counit"],
            ),
            Entity::Galois(d) => {
                let problems = d.verify(cfg)?;
                rep.record("Galois datum", problems.is_empty(), || problems.join("; "));
            }
            Entity::Category(c) => rep = c.verify(),
            Entity::DayPresheaf(f) => {
                let bad = f.functoriality_failure();
                rep.record("functoriality", bad.is_none(), || bad.unwrap_or_default());
            }
            Entity::DayCoalgebra(f) => rep = f.verify()?,
            Entity::CoalgebraPresheaf(f) => rep = f.verify(),
            Entity::SetPresheaf(x, _) => rep = x.verify(),
        }
        Ok(rep)
    }
}

/// Named entities loaded from documents. References between entities are
/// by name and resolved on [`Workspace::resolve`]; names are unique.
#[derive(Debug)]
pub struct Workspace {
    raw: BTreeMap<String, (EntityJson, String)>,
    built: BTreeMap<String, Entity>,
    order: Vec<String>,
    cfg: FactorConfig,
}

impl Workspace {
    pub fn new(cfg: FactorConfig) -> Self {
        Workspace { raw: BTreeMap::new(), built: BTreeMap::new(), order: Vec::new(), cfg }
    }

    pub fn config(&self) -> &FactorConfig {
        &self.cfg
    }

    /// Adds the entities of one document. A single-entity document is named
    /// `default_name`. Returns the added names.
    pub fn add_document(&mut self, text: &str, origin: &str, default_name: &str) -> Result<Vec<String>> {
        let mut names = Vec::new();
        for (name, e) in parse_document(text, origin)? {
            let name = name.unwrap_or_else(|| default_name.to_string());
            if self.raw.contains_key(&name) {
                return Err(Error::Invalid(format!("{origin}: entity name {name:?} is already taken")));
            }
            self.raw.insert(name.clone(), (e, origin.to_string()));
            self.order.push(name.clone());
            names.push(name);
        }
        Ok(names)
    }

    /// Reads a file; a single entity is named after the file stem.
    pub fn add_file(&mut self, path: &Path) -> Result<Vec<String>> {
        let origin = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|e| Error::Parse(format!("{origin}: {e}")))?;
        let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or("entity");
        self.add_document(&text, &origin, stem)
    }

    pub fn add_entity(&mut self, name: &str, e: EntityJson) -> Result<()> {
        if self.raw.contains_key(name) {
            return Err(Error::Invalid(format!("entity name {name:?} is already taken")));
        }
        self.raw.insert(name.to_string(), (e, "<memory>".into()));
        self.order.push(name.to_string());
        Ok(())
    }

    /// Builds every entity, following references. Build errors carry the
    /// originating document and entity name.
    pub fn resolve(&mut self) -> Result<()> {
        for name in self.order.clone() {
            let mut stack = Vec::new();
            self.build(&name, &mut stack)?;
        }
        Ok(())
    }

    /// Names in load order.
    pub fn names(&self) -> &[String] {
        &self.order
    }

    pub fn get(&self, name: &str) -> Result<&Entity> {
        self.built.get(name).ok_or_else(|| Error::Invalid(format!("unknown or unresolved entity {name:?}")))
    }

    pub fn raw(&self, name: &str) -> Option<&EntityJson> {
        self.raw.get(name).map(|(e, _)| e)
    }

    /// Runs [`Entity::validate`] on every entity, merged under the entity names.
    pub fn validate_all(&self) -> Result<CheckReport> {
        let mut rep = CheckReport::new();
        for name in &self.order {
            rep.merge(name, self.get(name)?.validate(&self.cfg)?);
        }
        Ok(rep)
    }

    fn build(&mut self, name: &str, stack: &mut Vec<String>) -> Result<Entity> {
        if let Some(e) = self.built.get(name) {
            return Ok(e.clone());
        }
        if stack.iter().any(|s| s == name) {
            return Err(Error::Invalid(format!("reference cycle through {name:?}")));
        }
        let (json, origin) = self
            .raw
            .get(name)
            .cloned()
            .ok_or_else(|| Error::Invalid(format!("reference to unknown entity {name:?}")))?;
        stack.push(name.to_string());
        let e = self.build_entity(&json, stack).map_err(|e| in_context(e, &origin, name))?;
        stack.pop();
        self.built.insert(name.to_string(), e.clone());
        Ok(e)
    }

    fn build_entity(&mut self, e: &EntityJson, st: &mut Vec<String>) -> Result<Entity> {
        Ok(match e {
            EntityJson::Field { field } => Entity::Field(Field::new(field.clone())?),
            EntityJson::Algebra(a) => Entity::Algebra(self.algebra(a)?),
            EntityJson::Coalgebra(c) => Entity::Coalgebra(coalgebra_from_json(c)?),
            EntityJson::Morphism(m) => {
                let s = self.coalgebra(&m.source, st)?;
                let t = self.coalgebra(&m.target, st)?;
                let mat = matrix_from_json(s.field(), &m.matrix)?;
                Entity::Morphism(CoalgebraMorphism::new(&s, &t, mat)?)
            }
            EntityJson::Galois(g) => Entity::Galois(self.galois(g, st)?),
            EntityJson::Gset(x) => Entity::GSet(FiniteGSet { size: x.size, action: x.action.clone() }),
            EntityJson::Category(c) => Entity::Category(self.category_json(c, st)?),
            EntityJson::DayPresheaf(f) => Entity::DayPresheaf(self.day_presheaf_json(f, st)?),
            EntityJson::DayCoalgebra(f) => Entity::DayCoalgebra(self.day_coalgebra_json(f, st)?),
            EntityJson::CoalgebraPresheaf(f) => Entity::CoalgebraPresheaf(self.coalgebra_presheaf(f, st)?),
            EntityJson::SetPresheaf(x) => {
                let (x, k) = set_presheaf(x)?;
                Entity::SetPresheaf(x, k)
            }
        })
    }

    fn named(&mut self, name: &str, st: &mut Vec<String>, kind: &str) -> Result<Entity> {
        let e = self.build(name, st)?;
        if e.kind() != kind {
            return Err(Error::Invalid(format!("{name:?} is a {}, expected a {kind}", e.kind())));
        }
        Ok(e)
    }

    fn coalgebra(&mut self, r: &Ref<CoalgebraJson>, st: &mut Vec<String>) -> Result<Coalgebra> {
        match r {
            Ref::Inline(c) => coalgebra_from_json(c),
            Ref::Name(n) => match self.named(n, st, "coalgebra")? {
                Entity::Coalgebra(c) => Ok(c),
                _ => unreachable!(),
            },
        }
    }

    fn algebra_ref(&mut self, r: &Ref<AlgebraJson>, st: &mut Vec<String>) -> Result<ArtinAlgebra> {
        match r {
            Ref::Inline(a) => self.algebra(a),
            Ref::Name(n) => match self.named(n, st, "algebra")? {
                Entity::Algebra(a) => Ok(a),
                _ => unreachable!(),
            },
        }
    }

    fn algebra(&mut self, a: &AlgebraJson) -> Result<ArtinAlgebra> {
        let k = Field::new(a.field.clone())?;
        if let Some(q) = &a.quotient {
            if a.mult.is_some() || a.unit.is_some() {
                return Err(Error::Invalid("give either `quotient` or `mult`/`unit`, not both".into()));
            }
            return ArtinAlgebra::quotient_ring(&Poly::new(&k, vector(&k, q)?));
        }
        let (Some(mult), Some(unit)) = (&a.mult, &a.unit) else {
            return Err(Error::Invalid("algebra needs `quotient` or both `mult` and `unit`".into()));
        };
        let mult = matrix_from_json(&k, mult)?;
        if let Some(d) = a.dim {
            if mult.rows() != d {
                return Err(Error::ShapeMismatch(format!("`dim` is {d} but `mult` has {} rows", mult.rows())));
            }
        }
        ArtinAlgebra::new(&k, mult, vector(&k, unit)?)
    }

    fn galois(&mut self, g: &GaloisJson, st: &mut Vec<String>) -> Result<GaloisDatum> {
        let base = Field::new(g.base.clone())?;
        let d = match (g.degree, &g.algebra, &g.automorphisms) {
            (Some(n), None, None) => GaloisDatum::finite(&base, n, &self.cfg)?,
            (None, Some(a), Some(auts)) => {
                let l = self.algebra_ref(a, st)?;
                if l.field() != &base {
                    return Err(Error::SpecMismatch("the algebra is not over `base`".into()));
                }
                let auts = auts.iter().map(|m| matrix_from_json(&base, m)).collect::<Result<_>>()?;
                GaloisDatum::new(l, auts)?
            }
            _ => return Err(Error::Invalid("Galois datum needs `degree` or both `algebra` and `automorphisms`".into())),
        };
        if let Some(t) = &g.group_table {
            if t.as_slice() != d.group_table() {
                return Err(Error::Invalid("`group_table` disagrees with the composition of the automorphisms".into()));
            }
        }
        Ok(d)
    }

    fn category(&mut self, r: &Ref<CategoryJson>, st: &mut Vec<String>) -> Result<Arc<LinearMonoidalCategory>> {
        match r {
            Ref::Inline(c) => self.category_json(c, st),
            Ref::Name(n) => match self.named(n, st, "category")? {
                Entity::Category(c) => Ok(c),
                _ => unreachable!(),
            },
        }
    }

    fn category_json(&mut self, c: &CategoryJson, st: &mut Vec<String>) -> Result<Arc<LinearMonoidalCategory>> {
        let k = Field::new(c.field.clone())?;
        let cat = match &c.form {
            CategoryForm::GroupDiscrete { n } => {
                if *n == 0 {
                    return Err(Error::Invalid("ℤ/0 has no objects".into()));
                }
                LinearMonoidalCategory::group_discrete(&k, *n)
            }
            CategoryForm::PosetMax { m } => {
                if *m == 0 {
                    return Err(Error::Invalid("the empty chain has no unit".into()));
                }
                LinearMonoidalCategory::poset_max(&k, *m)
            }
            CategoryForm::OneObject { algebra } => LinearMonoidalCategory::one_object(&self.algebra_ref(algebra, st)?)?,
            CategoryForm::Product { left, right } => {
                let l = self.category(left, st)?;
                let r = self.category(right, st)?;
                LinearMonoidalCategory::product(&l, &r)?
            }
            CategoryForm::Explicit(e) => explicit_category(&k, e)?,
        };
        if cat.field() != &k {
            return Err(Error::SpecMismatch("category field differs from the declared one".into()));
        }
        Ok(Arc::new(cat))
    }

    fn day_presheaf(&mut self, r: &Ref<DayPresheafJson>, st: &mut Vec<String>) -> Result<DayPresheaf> {
        match r {
            Ref::Inline(f) => self.day_presheaf_json(f, st),
            Ref::Name(n) => match self.named(n, st, "day_presheaf")? {
                Entity::DayPresheaf(f) => Ok(f),
                _ => unreachable!(),
            },
        }
    }

    fn day_presheaf_json(&mut self, f: &DayPresheafJson, st: &mut Vec<String>) -> Result<DayPresheaf> {
        let cat = self.category(&f.category, st)?;
        let k = cat.field().clone();
        let actions = f
            .actions
            .iter()
            .map(|fs| fs.iter().map(|m| matrix_from_json(&k, m)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        DayPresheaf::new(cat, f.dims.clone(), actions)
    }

    fn day_coalgebra_json(&mut self, f: &DayCoalgebraJson, st: &mut Vec<String>) -> Result<DayCoalgebra> {
        match &f.form {
            DayCoalgebraForm::Explicit { presheaf, delta, epsilon } => {
                let p = self.day_presheaf(presheaf, st)?;
                let k = p.field().clone();
                let delta = delta.iter().map(|m| matrix_from_json(&k, m)).collect::<Result<_>>()?;
                let eps = epsilon.iter().map(|m| matrix_from_json(&k, m)).collect::<Result<_>>()?;
                DayCoalgebra::from_representatives(p, delta, NatTrans { components: eps })
            }
            DayCoalgebraForm::Graded { category, coalgebra, degrees } => {
                let cat = self.category(category, st)?;
                let c = self.coalgebra(coalgebra, st)?;
                same_field(cat.field(), c.field())?;
                DayCoalgebra::graded(cat, &c, degrees)
            }
            DayCoalgebraForm::AtUnit { category, coalgebra } => {
                let cat = self.category(category, st)?;
                let c = self.coalgebra(coalgebra, st)?;
                same_field(cat.field(), c.field())?;
                DayCoalgebra::at_unit(cat, &c)
            }
        }
    }

    fn coalgebra_presheaf(&mut self, f: &CoalgebraPresheafJson, st: &mut Vec<String>) -> Result<CoalgebraPresheaf> {
        let idx = Arc::new(IndexCategory::from_spec(&f.index)?);
        if f.sections.len() != idx.len() {
            return Err(Error::ShapeMismatch(format!("{} sections for {} objects", f.sections.len(), idx.len())));
        }
        let sections = f.sections.iter().map(|s| self.coalgebra(s, st)).collect::<Result<Vec<_>>>()?;
        let k = sections[0].field().clone();
        let given = by_morphism_name(&idx, f.restrictions.iter().map(|r| (r.morphism.as_str(), &r.matrix)))?;
        let mut restr = Vec::with_capacity(idx.morphism_count());
        for m in 0..idx.morphism_count() {
            let (a, _) = idx.ends(m);
            restr.push(match given.get(&m) {
                Some(mat) => matrix_from_json(&k, mat)?,
                None if idx.is_identity(m) => Matrix::identity(&k, sections[a].dim()),
                None => return Err(Error::Invalid(format!("no restriction given for morphism {:?}", idx.name(m)))),
            });
        }
        CoalgebraPresheaf::new(idx, sections, restr)
    }
}

fn same_field(a: &Field, b: &Field) -> Result<()> {
    if a == b {
        Ok(())
    } else {
        Err(Error::SpecMismatch(format!("{a} vs {b}")))
    }
}

fn by_morphism_name<'a, T>(
    idx: &IndexCategory,
    items: impl Iterator<Item = (&'a str, T)>,
) -> Result<HashMap<usize, T>> {
    let mut out = HashMap::new();
    for (name, v) in items {
        let m = (0..idx.morphism_count())
            .find(|&m| idx.name(m) == name)
            .ok_or_else(|| Error::Invalid(format!("index category has no morphism named {name:?}")))?;
        if out.insert(m, v).is_some() {
            return Err(Error::Invalid(format!("morphism {name:?} listed twice")));
        }
    }
    Ok(out)
}

fn set_presheaf(x: &SetPresheafJson) -> Result<(SetPresheaf, Field)> {
    let k = Field::new(x.field.clone().unwrap_or(crate::field::FieldSpec::Rationals))?;
    let idx = Arc::new(IndexCategory::from_spec(&x.index)?);
    if x.sizes.len() != idx.len() {
        return Err(Error::ShapeMismatch(format!("{} sizes for {} objects", x.sizes.len(), idx.len())));
    }
    let given = by_morphism_name(&idx, x.maps.iter().map(|m| (m.morphism.as_str(), &m.map)))?;
    let mut maps = Vec::with_capacity(idx.morphism_count());
    for m in 0..idx.morphism_count() {
        let (a, _) = idx.ends(m);
        maps.push(match given.get(&m) {
            Some(v) => (*v).clone(),
            None if idx.is_identity(m) => (0..x.sizes[a]).collect(),
            None => return Err(Error::Invalid(format!("no map given for morphism {:?}", idx.name(m)))),
        });
    }
    Ok((SetPresheaf { index: idx, sizes: x.sizes.clone(), maps }, k))
}

fn explicit_category(k: &Field, e: &ExplicitCategory) -> Result<LinearMonoidalCategory> {
    let n = e.objects.len();
    let h = &e.hom;
    if h.len() != n || h.iter().any(|r| r.len() != n) || e.tensor.len() != n || e.tensor.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("`hom` and `tensor` must be n×n over the objects".into()));
    }
    if e.tensor.iter().flatten().any(|&t| t >= n) || e.unit >= n {
        return Err(Error::Invalid("tensor table or unit names a missing object".into()));
    }
    let mut compose = HashMap::new();
    for c in &e.compose {
        if c.x >= n || c.y >= n || c.z >= n {
            return Err(Error::Invalid(format!("compose entry ({}, {}, {}) names a missing object", c.x, c.y, c.z)));
        }
        let m = matrix_from_json(k, &c.matrix)?;
        if m.shape() != (h[c.x][c.z], h[c.y][c.z] * h[c.x][c.y]) {
            return Err(Error::ShapeMismatch(format!("compose entry ({}, {}, {})", c.x, c.y, c.z)));
        }
        compose.insert((c.x, c.y, c.z), m);
    }
    let t = &e.tensor;
    let mut tensor_mor = HashMap::new();
    for c in &e.tensor_mor {
        if [c.x, c.x2, c.y, c.y2].iter().any(|&o| o >= n) {
            return Err(Error::Invalid("tensor_mor entry names a missing object".into()));
        }
        let m = matrix_from_json(k, &c.matrix)?;
        if m.shape() != (h[t[c.x][c.y]][t[c.x2][c.y2]], h[c.x][c.x2] * h[c.y][c.y2]) {
            return Err(Error::ShapeMismatch(format!("tensor_mor entry ({}, {}, {}, {})", c.x, c.x2, c.y, c.y2)));
        }
        tensor_mor.insert((c.x, c.x2, c.y, c.y2), m);
    }
    let identities = e.identities.iter().map(|v| vector(k, v)).collect::<Result<Vec<_>>>()?;
    if identities.len() != n {
        return Err(Error::ShapeMismatch("one identity per object".into()));
    }
    if e.symmetry.len() != n || e.symmetry.iter().any(|r| r.len() != n) {
        return Err(Error::ShapeMismatch("`symmetry` must be n×n".into()));
    }
    let symmetry = e
        .symmetry
        .iter()
        .map(|r| r.iter().map(|v| vector(k, v)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let compose_fn = |x: usize, y: usize, z: usize, g: usize, f: usize| match compose.get(&(x, y, z)) {
        Some(m) => m.col(g * h[x][y] + f),
        None => vec![k.zero(); h[x][z]],
    };
    let identity_fn = |x: usize| identities[x].clone();
    let tensor_fn = |x: usize, x2: usize, y: usize, y2: usize, f: usize, g: usize| match tensor_mor.get(&(x, x2, y, y2)) {
        Some(m) => m.col(f * h[y][y2] + g),
        None => vec![k.zero(); h[t[x][y]][t[x2][y2]]],
    };
    let symmetry_fn = |x: usize, y: usize| symmetry[x][y].clone();
    LinearMonoidalCategory::validated(
        k,
        CategoryData {
            objects: e.objects.clone(),
            hom: h.clone(),
            compose: &compose_fn,
            identity: &identity_fn,
            tensor: t.clone(),
            unit: e.unit,
            tensor_mor: &tensor_fn,
            symmetry: &symmetry_fn,
        },
    )
}

/// Adds the document and entity name to the messages of parse and
/// validation errors without changing their exit class.
fn in_context(e: Error, origin: &str, name: &str) -> Error {
    let at = |s: String| format!("{origin}: entity {name:?}: {s}");
    match e {
        Error::Parse(s) if s.starts_with(origin) => Error::Parse(s),
        Error::Parse(s) => Error::Parse(at(s)),
        Error::Invalid(s) => Error::Invalid(at(s)),
        Error::ShapeMismatch(s) => Error::ShapeMismatch(at(s)),
        Error::InvalidField(s) => Error::InvalidField(at(s)),
        Error::SpecMismatch(s) => Error::SpecMismatch(at(s)),
        other => other,
    }
}
