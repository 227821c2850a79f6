use serde::de::{DeserializeOwned, Error as _};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::field::FieldSpec;
use crate::presheaf::IndexSpec;

/// A field element: an integer, or a string such as `"3/4"` or `"x+1"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Scalar {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<Scalar>>,
}

/// Either the name of another entity in the workspace or the entity inline.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Ref<T> {
    Name(String),
    Inline(Box<T>),
}

impl<T: Serialize> Serialize for Ref<T> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Ref::Name(n) => s.serialize_str(n),
            Ref::Inline(t) => t.serialize(s),
        }
    }
}

impl<'de, T: DeserializeOwned> Deserialize<'de> for Ref<T> {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        // untagged enums swallow the inner error; keep it
        let v = serde_json::Value::deserialize(d)?;
        match v {
            serde_json::Value::String(s) => Ok(Ref::Name(s)),
            serde_json::Value::Object(mut m) => {
                m.remove("kind");
                serde_json::from_value(serde_json::Value::Object(m)).map(|t| Ref::Inline(Box::new(t))).map_err(D::Error::custom)
            }
            other => serde_json::from_value(other).map(|t| Ref::Inline(Box::new(t))).map_err(D::Error::custom),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum EntityJson {
    Field { field: FieldSpec },
    Algebra(AlgebraJson),
    Coalgebra(CoalgebraJson),
    Morphism(MorphismJson),
    Galois(GaloisJson),
    Gset(GSetJson),
    Category(CategoryJson),
    DayPresheaf(DayPresheafJson),
    DayCoalgebra(DayCoalgebraJson),
    CoalgebraPresheaf(CoalgebraPresheafJson),
    SetPresheaf(SetPresheafJson),
}

impl EntityJson {
    pub fn kind(&self) -> &'static str {
        match self {
            EntityJson::Field { .. } => "field",
            EntityJson::Algebra(_) => "algebra",
            EntityJson::Coalgebra(_) => "coalgebra",
            EntityJson::Morphism(_) => "morphism",
            EntityJson::Galois(_) => "galois",
            EntityJson::Gset(_) => "gset",
            EntityJson::Category(_) => "category",
            EntityJson::DayPresheaf(_) => "day_presheaf",
            EntityJson::DayCoalgebra(_) => "day_coalgebra",
            EntityJson::CoalgebraPresheaf(_) => "coalgebra_presheaf",
            EntityJson::SetPresheaf(_) => "set_presheaf",
        }
    }
}

/// Commutative algebra: structure constants, or `quotient` = coefficients
/// (ascending) of a polynomial `f`, meaning `k[x]/(f)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub field: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub quotient: Option<Vec<Scalar>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dim: Option<usize>,
    /// `dim × dim²`, column `i·dim + j` holds `e_i e_j`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mult: Option<MatrixJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub unit: Option<Vec<Scalar>>,
}

/// `delta[i]` lists the `dim²` coordinates of `Δ(e_i)`, entry `j·dim + l`
/// being the coefficient of `e_j ⊗ e_l`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoalgebraJson {
    pub field: FieldSpec,
    pub dim: usize,
    pub delta: Vec<Vec<Scalar>>,
    pub epsilon: Vec<Scalar>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismJson {
    pub source: Ref<CoalgebraJson>,
    pub target: Ref<CoalgebraJson>,
    pub matrix: MatrixJson,
}

/// Either `{base, degree}` for `𝔽_{q^n}/𝔽_q` with its Frobenius powers, or
/// an explicit field with automorphisms. `group_table`, when given, must
/// agree with the computed one.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GaloisJson {
    pub base: FieldSpec,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub algebra: Option<Ref<AlgebraJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub automorphisms: Option<Vec<MatrixJson>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub group_table: Option<Vec<Vec<usize>>>,
}

/// `action[g][x] = g·x`, one permutation per group element in the order of
/// the Galois datum.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GSetJson {
    pub size: usize,
    pub action: Vec<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CategoryJson {
    pub field: FieldSpec,
    #[serde(flatten)]
    pub form: CategoryForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum CategoryForm {
    GroupDiscrete { n: usize },
    PosetMax { m: usize },
    OneObject { algebra: Ref<AlgebraJson> },
    Product { left: Ref<CategoryJson>, right: Ref<CategoryJson> },
    Explicit(ExplicitCategory),
}

/// Every field of a linear monoidal category. `compose` has one entry per
/// triple `(x,y,z)` with nonzero hom spaces; column `g·dim C(x,y) + f` of
/// its matrix is `g∘f`. `tensor_mor` likewise holds `f⊗g` in column
/// `f·dim C(y,y') + g`. Omitted entries are zero maps.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitCategory {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<usize>>,
    pub identities: Vec<Vec<Scalar>>,
    pub compose: Vec<ComposeEntry>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
    pub tensor_mor: Vec<TensorEntry>,
    /// `symmetry[x][y]`: `x⊗y → y⊗x`.
    pub symmetry: Vec<Vec<Vec<Scalar>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComposeEntry {
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TensorEntry {
    pub x: usize,
    pub x2: usize,
    pub y: usize,
    pub y2: usize,
    pub matrix: MatrixJson,
}

/// `actions[x·n + y][f]` is `F(f): F(y) → F(x)` for basis morphism `f: x → y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DayPresheafJson {
    pub category: Ref<CategoryJson>,
    pub dims: Vec<usize>,
    pub actions: Vec<Vec<MatrixJson>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DayCoalgebraJson {
    #[serde(flatten)]
    pub form: DayCoalgebraForm,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "form", rename_all = "snake_case")]
pub enum DayCoalgebraForm {
    /// `delta[x]` has one column per basis vector of `F(x)`, written in the
    /// presentation `⊕_{(a,b)} C(x, a⊗b) ⊗ F(a) ⊗ F(b)` of `(F⊗F)(x)`,
    /// blocks in the order `a·n + b`. `epsilon[x]: F(x) → C(x, 1)`.
    Explicit { presheaf: Ref<DayPresheafJson>, delta: Vec<MatrixJson>, epsilon: Vec<MatrixJson> },
    /// A coalgebra graded by a group-discrete category.
    Graded { category: Ref<CategoryJson>, coalgebra: Ref<CoalgebraJson>, degrees: Vec<usize> },
    /// A coalgebra placed at the unit object.
    AtUnit { category: Ref<CategoryJson>, coalgebra: Ref<CoalgebraJson> },
}

/// Restrictions are keyed by morphism name; identities may be omitted.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoalgebraPresheafJson {
    pub index: IndexSpec,
    pub sections: Vec<Ref<CoalgebraJson>>,
    pub restrictions: Vec<RestrictionJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RestrictionJson {
    pub morphism: String,
    pub matrix: MatrixJson,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetPresheafJson {
    pub index: IndexSpec,
    /// Field for the linearization `k^δ[X]`; ℚ when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub field: Option<FieldSpec>,
    pub sizes: Vec<usize>,
    pub maps: Vec<SetMapJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SetMapJson {
    pub morphism: String,
    pub map: Vec<usize>,
}
