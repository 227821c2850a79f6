//! The JSON interchange format: entity schemas, a workspace of named
//! entities with reference resolution, and the versioned report envelope.
//! `docs/interchange.md` describes the format for consumers outside Rust.

mod schema;
mod workspace;

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::coalg::{ArtinAlgebra, Coalgebra};
use crate::day::{CategoryPreset, DayCoalgebra, DayPresheaf, LinearMonoidalCategory};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::galois::{FiniteGSet, GaloisDatum};
use crate::linalg::Matrix;
use crate::presheaf::{CoalgebraPresheaf, SetPresheaf};
use crate::report::{CheckReport, Check};

pub use schema::{
    AlgebraJson, CategoryForm, CategoryJson, CoalgebraJson, CoalgebraPresheafJson, ComposeEntry, DayCoalgebraForm,
    DayCoalgebraJson, DayPresheafJson, EntityJson, ExplicitCategory, GSetJson, GaloisJson, MatrixJson, MorphismJson,
    Ref, RestrictionJson, Scalar, SetMapJson, SetPresheafJson, TensorEntry,
};
pub use workspace::{Entity, Workspace};

/// Schema version written into every document and report.
pub const VERSION: u32 = 1;
pub const REPORT_SCHEMA: &str = "coalg-report/1";

pub fn scalar(k: &Field, s: &Scalar) -> Result<Elem> {
    match s {
        Scalar::Int(i) => Ok(k.from_i64(*i)),
        Scalar::Text(t) => k.parse(t),
    }
}

pub fn scalar_json(k: &Field, e: &Elem) -> Scalar {
    Scalar::Text(k.format(e))
}

pub fn vector(k: &Field, v: &[Scalar]) -> Result<Vec<Elem>> {
    v.iter().map(|s| scalar(k, s)).collect()
}

pub fn vector_json(k: &Field, v: &[Elem]) -> Vec<Scalar> {
    v.iter().map(|e| scalar_json(k, e)).collect()
}

pub fn matrix_from_json(k: &Field, m: &MatrixJson) -> Result<Matrix> {
    if m.entries.len() != m.rows || m.entries.iter().any(|r| r.len() != m.cols) {
        return Err(Error::ShapeMismatch(format!("matrix declared {}×{} but entries disagree", m.rows, m.cols)));
    }
    let rows = m.entries.iter().map(|r| vector(k, r)).collect::<Result<Vec<_>>>()?;
    Matrix::from_rows_with_cols(k, rows, m.cols)
}

pub fn matrix_json(m: &Matrix) -> MatrixJson {
    let k = m.field();
    MatrixJson {
        rows: m.rows(),
        cols: m.cols(),
        entries: (0..m.rows()).map(|i| vector_json(k, m.row(i))).collect(),
    }
}

pub fn coalgebra_json(c: &Coalgebra) -> CoalgebraJson {
    let k = c.field();
    CoalgebraJson {
        field: k.spec().clone(),
        dim: c.dim(),
        delta: (0..c.dim()).map(|i| vector_json(k, &c.delta().col(i))).collect(),
        epsilon: vector_json(k, c.epsilon().row(0)),
    }
}

pub fn coalgebra_from_json(c: &CoalgebraJson) -> Result<Coalgebra> {
    let k = Field::new(c.field.clone())?;
    let n = c.dim;
    if c.delta.len() != n || c.delta.iter().any(|col| col.len() != n * n) || c.epsilon.len() != n {
        return Err(Error::ShapeMismatch(format!("coalgebra of dim {n} needs {n} columns of {} entries and {n} counit values", n * n)));
    }
    let cols = c.delta.iter().map(|col| vector(&k, col)).collect::<Result<Vec<_>>>()?;
    let delta = Matrix::from_columns(&k, n * n, &cols);
    let eps = Matrix::from_rows_with_cols(&k, vec![vector(&k, &c.epsilon)?], n)?;
    Coalgebra::new(&k, delta, eps)
}

pub fn algebra_json(a: &ArtinAlgebra) -> AlgebraJson {
    let k = a.field();
    AlgebraJson {
        field: k.spec().clone(),
        quotient: None,
        dim: Some(a.dim()),
        mult: Some(matrix_json(a.mult())),
        unit: Some(vector_json(k, a.unit())),
    }
}

pub fn gset_json(x: &FiniteGSet) -> GSetJson {
    GSetJson { size: x.size, action: x.action.clone() }
}

pub fn galois_json(d: &GaloisDatum) -> GaloisJson {
    GaloisJson {
        base: d.base().spec().clone(),
        degree: None,
        algebra: Some(Ref::Inline(Box::new(algebra_json(d.field())))),
        automorphisms: Some(d.automorphisms().iter().map(matrix_json).collect()),
        group_table: Some(d.group_table().to_vec()),
    }
}

/// The built-in families that carry all their data in the preset are
/// written compactly; everything else is spelled out.
pub fn category_json(c: &LinearMonoidalCategory) -> CategoryJson {
    let k = c.field();
    let field = k.spec().clone();
    match c.preset() {
        Some(CategoryPreset::GroupDiscrete { n }) => return CategoryJson { field, form: CategoryForm::GroupDiscrete { n: *n } },
        Some(CategoryPreset::PosetMax { m }) => return CategoryJson { field, form: CategoryForm::PosetMax { m: *m } },
        _ => {}
    }
    let n = c.len();
    let hom = c.hom_table().to_vec();
    let tensor = c.tensor_table().to_vec();
    let mut compose = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let m = c.compose_matrix(x, y, z);
                if m.rows() > 0 && m.cols() > 0 {
                    compose.push(ComposeEntry { x, y, z, matrix: matrix_json(m) });
                }
            }
        }
    }
    let mut tensor_mor = Vec::new();
    for x in 0..n {
        for x2 in 0..n {
            for y in 0..n {
                for y2 in 0..n {
                    let m = c.tensor_matrix(x, x2, y, y2);
                    if m.rows() > 0 && m.cols() > 0 {
                        tensor_mor.push(TensorEntry { x, x2, y, y2, matrix: matrix_json(m) });
                    }
                }
            }
        }
    }
    CategoryJson {
        field,
        form: CategoryForm::Explicit(ExplicitCategory {
            objects: c.objects().to_vec(),
            hom,
            identities: (0..n).map(|x| vector_json(k, c.identity(x))).collect(),
            compose,
            tensor,
            unit: c.unit(),
            tensor_mor,
            symmetry: (0..n).map(|x| (0..n).map(|y| vector_json(k, c.symmetry(x, y))).collect()).collect(),
        }),
    }
}

pub fn day_presheaf_json(f: &DayPresheaf, category: Ref<CategoryJson>) -> DayPresheafJson {
    DayPresheafJson {
        category,
        dims: f.dims().to_vec(),
        actions: f.actions().iter().map(|fs| fs.iter().map(matrix_json).collect()).collect(),
    }
}

/// Explicit form; `Δ` is written through the canonical section of the
/// presentation of `F⊗F`.
pub fn day_coalgebra_json(f: &DayCoalgebra, category: Ref<CategoryJson>) -> DayCoalgebraJson {
    let n = f.category().len();
    let sq = f.square();
    DayCoalgebraJson {
        form: DayCoalgebraForm::Explicit {
            presheaf: Ref::Inline(Box::new(day_presheaf_json(f.presheaf(), category))),
            delta: (0..n).map(|u| matrix_json(&sq.section(u).mul(&f.delta().components[u]))).collect(),
            epsilon: f.epsilon().components.iter().map(matrix_json).collect(),
        },
    }
}

/// Sections inline; identity restrictions omitted.
pub fn coalgebra_presheaf_json(f: &CoalgebraPresheaf) -> CoalgebraPresheafJson {
    let idx = f.index();
    CoalgebraPresheafJson {
        index: idx.spec().clone(),
        sections: f.sections().iter().map(|c| Ref::Inline(Box::new(coalgebra_json(c)))).collect(),
        restrictions: (0..idx.morphism_count())
            .filter(|&m| !idx.is_identity(m))
            .map(|m| RestrictionJson { morphism: idx.name(m).to_string(), matrix: matrix_json(f.restriction(m).matrix()) })
            .collect(),
    }
}

pub fn set_presheaf_json(x: &SetPresheaf, field: Option<&Field>) -> SetPresheafJson {
    let idx = &x.index;
    SetPresheafJson {
        index: idx.spec().clone(),
        field: field.map(|k| k.spec().clone()),
        sizes: x.sizes.clone(),
        maps: (0..idx.morphism_count())
            .filter(|&m| !idx.is_identity(m))
            .map(|m| SetMapJson { morphism: idx.name(m).to_string(), map: x.maps[m].clone() })
            .collect(),
    }
}

fn parse_error(origin: &str, e: impl std::fmt::Display) -> Error {
    Error::Parse(format!("{origin}: {e}"))
}

fn entity_from_value(origin: &str, path: &str, v: Value) -> Result<EntityJson> {
    let Value::Object(mut obj) = v else {
        return Err(parse_error(origin, format_args!("at {path}: expected an entity object")));
    };
    let kind = match obj.remove("kind") {
        Some(Value::String(s)) => s,
        _ => return Err(parse_error(origin, format_args!("at {path}: missing string field `kind`"))),
    };
    // deserialize the payload type directly so that error paths survive
    fn typed<T: serde::de::DeserializeOwned>(origin: &str, path: &str, obj: Map<String, Value>) -> Result<T> {
        serde_path_to_error::deserialize(Value::Object(obj)).map_err(|e| {
            let inner = e.path().to_string();
            let at = match (path.is_empty(), inner == ".") {
                (_, true) if path.is_empty() => "top level".to_string(),
                (_, true) => path.to_string(),
                (true, false) => inner,
                (false, false) => format!("{path}.{inner}"),
            };
            parse_error(origin, format_args!("at {at}: {}", e.inner()))
        })
    }
    Ok(match kind.as_str() {
        "field" => {
            #[derive(Deserialize)]
            #[serde(deny_unknown_fields)]
            struct F {
                field: crate::field::FieldSpec,
            }
            EntityJson::Field { field: typed::<F>(origin, path, obj)?.field }
        }
        "algebra" => EntityJson::Algebra(typed(origin, path, obj)?),
        "coalgebra" => EntityJson::Coalgebra(typed(origin, path, obj)?),
        "morphism" => EntityJson::Morphism(typed(origin, path, obj)?),
        "galois" => EntityJson::Galois(typed(origin, path, obj)?),
        "gset" => EntityJson::Gset(typed(origin, path, obj)?),
        "category" => EntityJson::Category(typed(origin, path, obj)?),
        "day_presheaf" => EntityJson::DayPresheaf(typed(origin, path, obj)?),
        "day_coalgebra" => EntityJson::DayCoalgebra(typed(origin, path, obj)?),
        "coalgebra_presheaf" => EntityJson::CoalgebraPresheaf(typed(origin, path, obj)?),
        "set_presheaf" => EntityJson::SetPresheaf(typed(origin, path, obj)?),
        other => return Err(parse_error(origin, format_args!("at {path}: unknown entity kind {other:?}"))),
    })
}

/// Parses a document. A single entity comes back with name `None`; a
/// workspace document yields its named entities in name order.
pub fn parse_document(text: &str, origin: &str) -> Result<Vec<(Option<String>, EntityJson)>> {
    let v: Value = serde_json::from_str(text).map_err(|e| parse_error(origin, e))?;
    let Value::Object(mut obj) = v else {
        return Err(parse_error(origin, "top level must be a JSON object"));
    };
    match obj.remove("version") {
        Some(Value::Number(n)) if n.as_u64() == Some(VERSION as u64) => {}
        Some(other) => return Err(parse_error(origin, format_args!("unsupported version {other}, expected {VERSION}"))),
        None => return Err(parse_error(origin, "missing mandatory field `version`")),
    }
    if obj.get("kind").and_then(Value::as_str) == Some("workspace") {
        let Some(Value::Object(ents)) = obj.remove("entities") else {
            return Err(parse_error(origin, "workspace needs an `entities` object"));
        };
        return ents
            .into_iter()
            .map(|(name, v)| Ok((Some(name.clone()), entity_from_value(origin, &format!("entities.{name}"), v)?)))
            .collect();
    }
    Ok(vec![(None, entity_from_value(origin, "", Value::Object(obj))?)])
}

/// A single-entity document with the version field.
pub fn document(e: &EntityJson) -> Value {
    let mut v = serde_json::to_value(e).expect("entity serializes");
    if let Value::Object(m) = &mut v {
        m.insert("version".into(), Value::from(VERSION));
    }
    v
}

pub fn workspace_document(entities: &BTreeMap<String, EntityJson>) -> Value {
    let mut m = Map::new();
    m.insert("version".into(), Value::from(VERSION));
    m.insert("kind".into(), Value::from("workspace"));
    m.insert("entities".into(), serde_json::to_value(entities).expect("entities serialize"));
    Value::Object(m)
}

/// Envelope of every command result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Report {
    pub schema: String,
    pub version: u32,
    pub command: String,
    pub ok: bool,
    pub checks: Vec<Check>,
    pub data: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Report {
    /// `ok` is true iff no check failed.
    pub fn new(command: impl Into<String>, checks: CheckReport, data: Value) -> Self {
        Report {
            schema: REPORT_SCHEMA.into(),
            version: VERSION,
            command: command.into(),
            ok: checks.all_passed(),
            checks: checks.checks,
            data,
            seed: None,
        }
    }

    pub fn with_seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    /// Canonical form: pretty-printed with object keys sorted.
    pub fn to_canonical(&self) -> String {
        // Value maps are ordered, so a detour through Value sorts every key
        let v = serde_json::to_value(self).expect("report serializes");
        serde_json::to_string_pretty(&v).expect("value prints")
    }

    pub fn parse(text: &str) -> Result<Self> {
        let r: Report = serde_json::from_str(text).map_err(|e| parse_error("report", e))?;
        if r.schema != REPORT_SCHEMA || r.version != VERSION {
            return Err(Error::Parse(format!("unsupported report schema {} version {}", r.schema, r.version)));
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests;
