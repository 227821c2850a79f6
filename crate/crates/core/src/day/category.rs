use serde::{Deserialize, Serialize};

use crate::coalg::ArtinAlgebra;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::Matrix;
use crate::report::CheckReport;

/// A finite k-linear strict symmetric monoidal category.
///
/// Morphisms are vectors in the chosen hom bases. `compose[(x,y,z)]` has a
/// column for every pair of basis morphisms `g: y→z`, `f: x→y` (index
/// `g·dim C(x,y) + f`) holding `g∘f`. `tensor_mor[(x,x',y,y')]` holds `f⊗g`
/// in the column `f·dim C(y,y') + g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearMonoidalCategory {
    field: Field,
    objects: Vec<String>,
    hom: Vec<Vec<usize>>,
    compose: Vec<Matrix>,
    identities: Vec<Vec<Elem>>,
    tensor: Vec<Vec<usize>>,
    unit: usize,
    tensor_mor: Vec<Matrix>,
    symmetry: Vec<Vec<Vec<Elem>>>,
    preset: Option<CategoryPreset>,
}

/// The built-in families, recorded so that they serialize compactly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CategoryPreset {
    /// ℤ/n as a discrete category, tensor = addition.
    GroupDiscrete { n: usize },
    /// The chain `0 ≤ 1 ≤ … ≤ m−1`, tensor = max.
    PosetMax { m: usize },
    /// One object whose endomorphisms are a commutative algebra, tensor = product.
    OneObject,
    /// Componentwise product of two categories.
    Product,
}

/// Raw data for [`LinearMonoidalCategory::from_fns`].
pub struct CategoryData<'a> {
    pub objects: Vec<String>,
    pub hom: Vec<Vec<usize>>,
    /// `(x, y, z, g, f) ↦ g∘f` for basis morphisms.
    pub compose: &'a dyn Fn(usize, usize, usize, usize, usize) -> Vec<Elem>,
    pub identity: &'a dyn Fn(usize) -> Vec<Elem>,
    pub tensor: Vec<Vec<usize>>,
    pub unit: usize,
    /// `(x, x', y, y', f, g) ↦ f⊗g` for basis morphisms.
    pub tensor_mor: &'a dyn Fn(usize, usize, usize, usize, usize, usize) -> Vec<Elem>,
    pub symmetry: &'a dyn Fn(usize, usize) -> Vec<Elem>,
}

impl LinearMonoidalCategory {
    pub fn from_fns(field: &Field, data: CategoryData<'_>) -> Result<Self> {
        let n = data.objects.len();
        if n == 0 || data.unit >= n {
            return Err(Error::Invalid("category needs objects and a unit".into()));
        }
        let square = |t: &Vec<Vec<usize>>| t.len() == n && t.iter().all(|r| r.len() == n);
        if !square(&data.hom) || !square(&data.tensor) || data.tensor.iter().flatten().any(|&t| t >= n) {
            return Err(Error::ShapeMismatch("hom and tensor tables must be n×n over the objects".into()));
        }
        let h = &data.hom;
        let check = |v: Vec<Elem>, len: usize, what: &str| -> Result<Vec<Elem>> {
            if v.len() != len {
                return Err(Error::ShapeMismatch(format!("{what}: expected {len} coordinates, got {}", v.len())));
            }
            Ok(v)
        };
        let mut compose = Vec::with_capacity(n * n * n);
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    let mut cols = Vec::new();
                    for g in 0..h[y][z] {
                        for f in 0..h[x][y] {
                            cols.push(check((data.compose)(x, y, z, g, f), h[x][z], "composite")?);
                        }
                    }
                    compose.push(Matrix::from_columns(field, h[x][z], &cols));
                }
            }
        }
        let identities = (0..n).map(|x| check((data.identity)(x), h[x][x], "identity")).collect::<Result<_>>()?;
        let t = &data.tensor;
        let mut tensor_mor = Vec::with_capacity(n.pow(4));
        for x in 0..n {
            for x2 in 0..n {
                for y in 0..n {
                    for y2 in 0..n {
                        let len = h[t[x][y]][t[x2][y2]];
                        let mut cols = Vec::new();
                        for f in 0..h[x][x2] {
                            for g in 0..h[y][y2] {
                                cols.push(check((data.tensor_mor)(x, x2, y, y2, f, g), len, "tensor of morphisms")?);
                            }
                        }
                        tensor_mor.push(Matrix::from_columns(field, len, &cols));
                    }
                }
            }
        }
        let symmetry = (0..n)
            .map(|x| (0..n).map(|y| check((data.symmetry)(x, y), h[t[x][y]][t[y][x]], "symmetry")).collect())
            .collect::<Result<_>>()?;
        Ok(LinearMonoidalCategory {
            field: field.clone(),
            objects: data.objects,
            hom: data.hom,
            compose,
            identities,
            tensor: data.tensor,
            unit: data.unit,
            tensor_mor,
            symmetry,
            preset: None,
        })
    }

    /// Like [`from_fns`](Self::from_fns), then rejects data failing [`verify`](Self::verify).
    pub fn validated(field: &Field, data: CategoryData<'_>) -> Result<Self> {
        let c = Self::from_fns(field, data)?;
        let rep = c.verify();
        if let Some(f) = rep.failures().next() {
            return Err(Error::Invalid(format!("category axiom {}: {}", f.name, f.detail.clone().unwrap_or_default())));
        }
        Ok(c)
    }

    /// ℤ/n viewed as a discrete monoidal category: one object per group
    /// element, only scalar endomorphisms, tensor = addition.
    pub fn group_discrete(field: &Field, n: usize) -> Self {
        let one = |_: usize| vec![field.one()];
        let mut c = Self::from_fns(
            field,
            CategoryData {
                objects: (0..n).map(|g| g.to_string()).collect(),
                hom: (0..n).map(|x| (0..n).map(|y| usize::from(x == y)).collect()).collect(),
                compose: &|_, _, _, _, _| vec![field.one()],
                identity: &one,
                tensor: (0..n).map(|x| (0..n).map(|y| (x + y) % n).collect()).collect(),
                unit: 0,
                tensor_mor: &|_, _, _, _, _, _| vec![field.one()],
                symmetry: &|_, _| vec![field.one()],
            },
        )
        .expect("group-discrete data is well formed");
        c.preset = Some(CategoryPreset::GroupDiscrete { n });
        c
    }

    /// The chain `0 ≤ 1 ≤ … ≤ m−1` with tensor = max and unit 0.
    pub fn poset_max(field: &Field, m: usize) -> Self {
        let mut c = Self::from_fns(
            field,
            CategoryData {
                objects: (0..m).map(|i| i.to_string()).collect(),
                hom: (0..m).map(|x| (0..m).map(|y| usize::from(x <= y)).collect()).collect(),
                compose: &|_, _, _, _, _| vec![field.one()],
                identity: &|_| vec![field.one()],
                tensor: (0..m).map(|x| (0..m).map(|y| x.max(y)).collect()).collect(),
                unit: 0,
                tensor_mor: &|_, _, _, _, _, _| vec![field.one()],
                symmetry: &|_, _| vec![field.one()],
            },
        )
        .expect("poset data is well formed");
        c.preset = Some(CategoryPreset::PosetMax { m });
        c
    }

    /// One object `*` with `End(*) = A` for a commutative algebra `A`;
    /// composition and tensor are both the product of `A`.
    pub fn one_object(a: &ArtinAlgebra) -> Result<Self> {
        let k = a.field().clone();
        let d = a.dim();
        let unit = a.unit().to_vec();
        let mult = |g: usize, f: usize| a.mul(&a.basis_vector(g), &a.basis_vector(f));
        let mut c = Self::validated(
            &k,
            CategoryData {
                objects: vec!["*".into()],
                hom: vec![vec![d]],
                compose: &|_, _, _, g, f| mult(g, f),
                identity: &|_| unit.clone(),
                tensor: vec![vec![0]],
                unit: 0,
                tensor_mor: &|_, _, _, _, f, g| mult(f, g),
                symmetry: &|_, _| unit.clone(),
            },
        )?;
        c.preset = Some(CategoryPreset::OneObject);
        Ok(c)
    }

    /// Product category: objects are pairs `(a, b)` with index `a·|B| + b`,
    /// homs are tensor products of homs.
    pub fn product(c1: &Self, c2: &Self) -> Result<Self> {
        if c1.field != c2.field {
            return Err(Error::CategoryMismatch);
        }
        let (n1, n2) = (c1.len(), c2.len());
        let split = |x: usize| (x / n2, x % n2);
        let n = n1 * n2;
        let hom: Vec<Vec<usize>> =
            (0..n).map(|x| (0..n).map(|y| c1.hom_dim(split(x).0, split(y).0) * c2.hom_dim(split(x).1, split(y).1)).collect()).collect();
        let k = c1.field.clone();
        let kron = |u: Vec<Elem>, v: Vec<Elem>| crate::linalg::kron_vec(&k, &u, &v);
        let objects = (0..n).map(|x| format!("({},{})", c1.objects[split(x).0], c2.objects[split(x).1])).collect();
        let tensor = (0..n)
            .map(|x| (0..n).map(|y| c1.tensor_obj(split(x).0, split(y).0) * n2 + c2.tensor_obj(split(x).1, split(y).1)).collect())
            .collect();
        let mut c = Self::from_fns(
            &k,
            CategoryData {
                objects,
                hom: hom.clone(),
                compose: &|x, y, z, g, f| {
                    let ((x1, x2), (y1, y2), (z1, z2)) = (split(x), split(y), split(z));
                    let (g1, g2) = (g / c2.hom_dim(y2, z2), g % c2.hom_dim(y2, z2));
                    let (f1, f2) = (f / c2.hom_dim(x2, y2), f % c2.hom_dim(x2, y2));
                    kron(c1.compose_basis(x1, y1, z1, g1, f1), c2.compose_basis(x2, y2, z2, g2, f2))
                },
                identity: &|x| kron(c1.identity(split(x).0).to_vec(), c2.identity(split(x).1).to_vec()),
                tensor,
                unit: c1.unit * n2 + c2.unit,
                tensor_mor: &|x, x2, y, y2, f, g| {
                    let ((xa, xb), (x2a, x2b), (ya, yb), (y2a, y2b)) = (split(x), split(x2), split(y), split(y2));
                    let (f1, f2) = (f / c2.hom_dim(xb, x2b), f % c2.hom_dim(xb, x2b));
                    let (g1, g2) = (g / c2.hom_dim(yb, y2b), g % c2.hom_dim(yb, y2b));
                    kron(
                        c1.tensor_basis(xa, x2a, ya, y2a, f1, g1),
                        c2.tensor_basis(xb, x2b, yb, y2b, f2, g2),
                    )
                },
                symmetry: &|x, y| {
                    let ((xa, xb), (ya, yb)) = (split(x), split(y));
                    kron(c1.symmetry(xa, ya).to_vec(), c2.symmetry(xb, yb).to_vec())
                },
            },
        )?;
        c.preset = Some(CategoryPreset::Product);
        Ok(c)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn len(&self) -> usize {
        self.objects.len()
    }

    pub fn is_empty(&self) -> bool {
        self.objects.is_empty()
    }

    pub fn objects(&self) -> &[String] {
        &self.objects
    }

    pub fn preset(&self) -> Option<&CategoryPreset> {
        self.preset.as_ref()
    }

    pub fn hom_dim(&self, x: usize, y: usize) -> usize {
        self.hom[x][y]
    }

    pub fn hom_table(&self) -> &[Vec<usize>] {
        &self.hom
    }

    pub fn unit(&self) -> usize {
        self.unit
    }

    pub fn tensor_obj(&self, x: usize, y: usize) -> usize {
        self.tensor[x][y]
    }

    pub fn tensor_table(&self) -> &[Vec<usize>] {
        &self.tensor
    }

    pub fn identity(&self, x: usize) -> &[Elem] {
        &self.identities[x]
    }

    pub fn symmetry(&self, x: usize, y: usize) -> &[Elem] {
        &self.symmetry[x][y]
    }

    /// Matrix of `(g, f) ↦ g∘f`, with `hom(x,z)` rows.
    pub fn compose_matrix(&self, x: usize, y: usize, z: usize) -> &Matrix {
        let n = self.len();
        &self.compose[(x * n + y) * n + z]
    }

    /// Matrix of `(f, g) ↦ f⊗g` for `f: x→x'`, `g: y→y'`.
    pub fn tensor_matrix(&self, x: usize, x2: usize, y: usize, y2: usize) -> &Matrix {
        let n = self.len();
        &self.tensor_mor[((x * n + x2) * n + y) * n + y2]
    }

    pub fn compose_basis(&self, x: usize, y: usize, z: usize, g: usize, f: usize) -> Vec<Elem> {
        self.compose_matrix(x, y, z).col(g * self.hom[x][y] + f)
    }

    pub fn tensor_basis(&self, x: usize, x2: usize, y: usize, y2: usize, f: usize, g: usize) -> Vec<Elem> {
        self.tensor_matrix(x, x2, y, y2).col(f * self.hom[y][y2] + g)
    }

    /// `g∘f` for `f ∈ C(x,y)`, `g ∈ C(y,z)` given as coordinate vectors.
    pub fn compose(&self, x: usize, y: usize, z: usize, g: &[Elem], f: &[Elem]) -> Vec<Elem> {
        let v = crate::linalg::kron_vec(&self.field, g, f);
        self.compose_matrix(x, y, z).mul_vec(&v)
    }

    /// `f⊗g : x⊗y → x'⊗y'`.
    pub fn tensor_mor(&self, x: usize, x2: usize, y: usize, y2: usize, f: &[Elem], g: &[Elem]) -> Vec<Elem> {
        let v = crate::linalg::kron_vec(&self.field, f, g);
        self.tensor_matrix(x, x2, y, y2).mul_vec(&v)
    }

    /// Precomposition `φ ↦ φ∘f` as a matrix `C(y,z) → C(x,z)`, for `f: x→y`.
    pub fn precompose(&self, x: usize, y: usize, z: usize, f: &[Elem]) -> Matrix {
        let k = &self.field;
        let cols: Vec<Vec<Elem>> = (0..self.hom[y][z]).map(|g| self.compose(x, y, z, &unit_vec(k, self.hom[y][z], g), f)).collect();
        Matrix::from_columns(k, self.hom[x][z], &cols)
    }

    /// Postcomposition `φ ↦ g∘φ` as a matrix `C(x,y) → C(x,z)`, for `g: y→z`.
    pub fn postcompose(&self, x: usize, y: usize, z: usize, g: &[Elem]) -> Matrix {
        let k = &self.field;
        let cols: Vec<Vec<Elem>> = (0..self.hom[x][y]).map(|f| self.compose(x, y, z, g, &unit_vec(k, self.hom[x][y], f))).collect();
        Matrix::from_columns(k, self.hom[x][z], &cols)
    }

    /// All basis morphisms as `(source, target, index)`.
    pub fn basis_morphisms(&self) -> Vec<(usize, usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                for f in 0..self.hom[x][y] {
                    out.push((x, y, f));
                }
            }
        }
        out
    }

    pub fn basis_vector(&self, x: usize, y: usize, f: usize) -> Vec<Elem> {
        unit_vec(&self.field, self.hom[x][y], f)
    }

    /// Category, strict monoidal and symmetry axioms, each checked on all
    /// basis morphisms.
    pub fn verify(&self) -> CheckReport {
        let n = self.len();
        let t = &self.tensor;
        let mut rep = CheckReport::new();
        let e = |x: usize, y: usize, f: usize| self.basis_vector(x, y, f);

        let mut bad = None;
        'assoc: for w in 0..n {
            for x in 0..n {
                for y in 0..n {
                    for z in 0..n {
                        for f in 0..self.hom[w][x] {
                            for g in 0..self.hom[x][y] {
                                for h in 0..self.hom[y][z] {
                                    let gf = self.compose(w, x, y, &e(x, y, g), &e(w, x, f));
                                    let hg = self.compose(x, y, z, &e(y, z, h), &e(x, y, g));
                                    if self.compose(w, y, z, &e(y, z, h), &gf) != self.compose(w, x, z, &hg, &e(w, x, f)) {
                                        bad = Some(format!("objects {w},{x},{y},{z}"));
                                        break 'assoc;
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep.record("composition associative", bad.is_none(), || bad.clone().unwrap_or_default());

        let mut bad = None;
        for (x, y, f) in self.basis_morphisms() {
            let fv = e(x, y, f);
            if self.compose(x, y, y, &self.identities[y], &fv) != fv || self.compose(x, x, y, &fv, &self.identities[x]) != fv {
                bad = Some(format!("morphism {f} from {x} to {y}"));
                break;
            }
        }
        rep.record("identities", bad.is_none(), || bad.clone().unwrap_or_default());

        let mut bad = None;
        for x in 0..n {
            if t[self.unit][x] != x || t[x][self.unit] != x {
                bad = Some(format!("unit on object {x}"));
            }
            for y in 0..n {
                for z in 0..n {
                    if t[t[x][y]][z] != t[x][t[y][z]] {
                        bad = Some(format!("associativity on {x},{y},{z}"));
                    }
                }
            }
        }
        rep.record("tensor of objects strict", bad.is_none(), || bad.clone().unwrap_or_default());

        let mut bad = None;
        'func: for x in 0..n {
            for y in 0..n {
                if self.tensor_mor(x, x, y, y, &self.identities[x], &self.identities[y]) != self.identities[t[x][y]] {
                    bad = Some(format!("id⊗id on {x},{y}"));
                    break 'func;
                }
                for x1 in 0..n {
                    for x2 in 0..n {
                        for y1 in 0..n {
                            for y2 in 0..n {
                                for (f, f2) in pairs(self.hom[x][x1], self.hom[x1][x2]) {
                                    for (g, g2) in pairs(self.hom[y][y1], self.hom[y1][y2]) {
                                        let a = self.tensor_mor(x, x1, y, y1, &e(x, x1, f), &e(y, y1, g));
                                        let b = self.tensor_mor(x1, x2, y1, y2, &e(x1, x2, f2), &e(y1, y2, g2));
                                        let lhs = self.compose(t[x][y], t[x1][y1], t[x2][y2], &b, &a);
                                        let ff = self.compose(x, x1, x2, &e(x1, x2, f2), &e(x, x1, f));
                                        let gg = self.compose(y, y1, y2, &e(y1, y2, g2), &e(y, y1, g));
                                        if lhs != self.tensor_mor(x, x2, y, y2, &ff, &gg) {
                                            bad = Some(format!("interchange on {x}→{x1}→{x2}, {y}→{y1}→{y2}"));
                                            break 'func;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep.record("tensor functorial (interchange law)", bad.is_none(), || bad.clone().unwrap_or_default());

        let mut bad = None;
        let u = self.unit;
        'strict: for x in 0..n {
            for x2 in 0..n {
                for f in 0..self.hom[x][x2] {
                    let fv = e(x, x2, f);
                    if self.tensor_mor(u, u, x, x2, &self.identities[u], &fv) != fv
                        || self.tensor_mor(x, x2, u, u, &fv, &self.identities[u]) != fv
                    {
                        bad = Some(format!("unit law on morphism {f} from {x} to {x2}"));
                        break 'strict;
                    }
                    for y in 0..n {
                        for y2 in 0..n {
                            for z in 0..n {
                                for z2 in 0..n {
                                    for (g, h) in pairs(self.hom[y][y2], self.hom[z][z2]) {
                                        let (gv, hv) = (e(y, y2, g), e(z, z2, h));
                                        let fg = self.tensor_mor(x, x2, y, y2, &fv, &gv);
                                        let left = self.tensor_mor(t[x][y], t[x2][y2], z, z2, &fg, &hv);
                                        let gh = self.tensor_mor(y, y2, z, z2, &gv, &hv);
                                        let right = self.tensor_mor(x, x2, t[y][z], t[y2][z2], &fv, &gh);
                                        if left != right {
                                            bad = Some(format!("associativity on morphisms over {x},{y},{z}"));
                                            break 'strict;
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        rep.record("tensor of morphisms strict", bad.is_none(), || bad.clone().unwrap_or_default());

        let mut bad = None;
        'sym: for x in 0..n {
            for y in 0..n {
                let s = &self.symmetry[x][y];
                let back = self.compose(t[x][y], t[y][x], t[x][y], &self.symmetry[y][x], s);
                if back != self.identities[t[x][y]] {
                    bad = Some(format!("σ∘σ ≠ id on {x},{y}"));
                    break 'sym;
                }
                for z in 0..n {
                    // σ_{x, y⊗z} = (id_y ⊗ σ_{x,z}) ∘ (σ_{x,y} ⊗ id_z)
                    let a = self.tensor_mor(t[x][y], t[y][x], z, z, s, &self.identities[z]);
                    let b = self.tensor_mor(y, y, t[x][z], t[z][x], &self.identities[y], &self.symmetry[x][z]);
                    let hex = self.compose(t[t[x][y]][z], t[t[y][x]][z], t[y][t[z][x]], &b, &a);
                    if hex != self.symmetry[x][t[y][z]] {
                        bad = Some(format!("hexagon on {x},{y},{z}"));
                        break 'sym;
                    }
                }
                for x2 in 0..n {
                    for y2 in 0..n {
                        for (f, g) in pairs(self.hom[x][x2], self.hom[y][y2]) {
                            let (fv, gv) = (e(x, x2, f), e(y, y2, g));
                            let lhs = self.compose(t[x][y], t[x2][y2], t[y2][x2], &self.symmetry[x2][y2], &self.tensor_mor(x, x2, y, y2, &fv, &gv));
                            let rhs = self.compose(t[x][y], t[y][x], t[y2][x2], &self.tensor_mor(y, y2, x, x2, &gv, &fv), s);
                            if lhs != rhs {
                                bad = Some(format!("naturality of σ on {x}→{x2}, {y}→{y2}"));
                                break 'sym;
                            }
                        }
                    }
                }
            }
        }
        rep.record("symmetry", bad.is_none(), || bad.clone().unwrap_or_default());
        rep
    }
}

fn pairs(a: usize, b: usize) -> impl Iterator<Item = (usize, usize)> {
    (0..a).flat_map(move |i| (0..b).map(move |j| (i, j)))
}

pub(crate) fn unit_vec(k: &Field, n: usize, i: usize) -> Vec<Elem> {
    let mut v = vec![k.zero(); n];
    v[i] = k.one();
    v
}
