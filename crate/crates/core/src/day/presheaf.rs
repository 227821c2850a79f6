use std::sync::Arc;

use rand::Rng;

use super::category::LinearMonoidalCategory;
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{Matrix, Subspace};

/// A presheaf of finite-dimensional vector spaces on a [`LinearMonoidalCategory`].
///
/// `actions[x·n + y][f]` is the matrix of `F(f): F(y) → F(x)` for the basis
/// morphism `f ∈ C(x, y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DayPresheaf {
    category: Arc<LinearMonoidalCategory>,
    dims: Vec<usize>,
    actions: Vec<Vec<Matrix>>,
}

/// A family of per-object matrices `η_x: F(x) → G(x)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NatTrans {
    pub components: Vec<Matrix>,
}

impl NatTrans {
    pub fn identity(f: &DayPresheaf) -> Self {
        let k = f.field();
        NatTrans { components: f.dims.iter().map(|&d| Matrix::identity(k, d)).collect() }
    }

    pub fn zero(f: &DayPresheaf, g: &DayPresheaf) -> Self {
        let k = f.field();
        NatTrans { components: f.dims.iter().zip(&g.dims).map(|(&a, &b)| Matrix::zeros(k, b, a)).collect() }
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &NatTrans) -> NatTrans {
        NatTrans { components: self.components.iter().zip(&other.components).map(|(a, b)| b.mul(a)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(Matrix::is_zero)
    }

    pub fn is_injective(&self) -> bool {
        self.components.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_iso(&self) -> bool {
        self.components.iter().all(|m| m.is_square() && m.rank() == m.cols())
    }

    /// Objectwise kernels.
    pub fn kernel(&self) -> Vec<Subspace> {
        self.components.iter().map(Matrix::kernel).collect()
    }

    /// Objectwise images.
    pub fn image(&self) -> Vec<Subspace> {
        self.components.iter().map(Matrix::image).collect()
    }

    /// `η_x F(f) = G(f) η_y` for every basis morphism `f: x → y`.
    pub fn is_natural(&self, f: &DayPresheaf, g: &DayPresheaf) -> bool {
        self.naturality_failure(f, g).is_none()
    }

    /// The first basis morphism whose square does not commute.
    pub fn naturality_failure(&self, f: &DayPresheaf, g: &DayPresheaf) -> Option<(usize, usize, usize)> {
        if self.components.len() != f.category.len() {
            return Some((0, 0, 0));
        }
        for (i, c) in self.components.iter().enumerate() {
            if c.shape() != (g.dims[i], f.dims[i]) {
                return Some((i, i, usize::MAX));
            }
        }
        f.category.basis_morphisms().into_iter().find(|&(x, y, a)| {
            self.components[x].mul(&f.actions[f.index(x, y)][a]) != g.actions[g.index(x, y)][a].mul(&self.components[y])
        })
    }
}

impl DayPresheaf {
    pub fn new(category: Arc<LinearMonoidalCategory>, dims: Vec<usize>, actions: Vec<Vec<Matrix>>) -> Result<Self> {
        let n = category.len();
        if dims.len() != n || actions.len() != n * n {
            return Err(Error::ShapeMismatch(format!("presheaf needs {n} spaces and {} action lists", n * n)));
        }
        for x in 0..n {
            for y in 0..n {
                let list = &actions[x * n + y];
                if list.len() != category.hom_dim(x, y) {
                    return Err(Error::ShapeMismatch(format!("expected {} actions for morphisms {x}→{y}", category.hom_dim(x, y))));
                }
                if let Some(m) = list.iter().find(|m| m.shape() != (dims[x], dims[y])) {
                    return Err(Error::ShapeMismatch(format!(
                        "action of a morphism {x}→{y} has shape {:?}, expected {:?}",
                        m.shape(),
                        (dims[x], dims[y])
                    )));
                }
            }
        }
        Ok(DayPresheaf { category, dims, actions })
    }

    pub fn validated(category: Arc<LinearMonoidalCategory>, dims: Vec<usize>, actions: Vec<Vec<Matrix>>) -> Result<Self> {
        let f = Self::new(category, dims, actions)?;
        if let Some(msg) = f.functoriality_failure() {
            return Err(Error::Invalid(format!("presheaf is not functorial: {msg}")));
        }
        Ok(f)
    }

    /// Presheaf with the given spaces built from a function on basis morphisms.
    pub fn from_fn(
        category: Arc<LinearMonoidalCategory>,
        dims: Vec<usize>,
        mut action: impl FnMut(usize, usize, usize) -> Matrix,
    ) -> Result<Self> {
        let n = category.len();
        let mut actions = Vec::with_capacity(n * n);
        for x in 0..n {
            for y in 0..n {
                actions.push((0..category.hom_dim(x, y)).map(|f| action(x, y, f)).collect());
            }
        }
        Self::new(category, dims, actions)
    }

    pub fn zero(category: Arc<LinearMonoidalCategory>) -> Self {
        let n = category.len();
        let k = category.field().clone();
        Self::from_fn(category, vec![0; n], |_, _, _| Matrix::zeros(&k, 0, 0)).expect("zero presheaf")
    }

    /// `h_X = C(−, X)`, acting by precomposition.
    pub fn representable(category: Arc<LinearMonoidalCategory>, x: usize) -> Self {
        let n = category.len();
        let dims = (0..n).map(|u| category.hom_dim(u, x)).collect();
        let c = category.clone();
        Self::from_fn(category, dims, |u, v, f| c.precompose(u, v, x, &c.basis_vector(u, v, f))).expect("representable")
    }

    /// On a category whose only morphisms are scalars (e.g. group-discrete),
    /// the presheaf with the given dimensions and identity actions.
    pub fn discrete(category: Arc<LinearMonoidalCategory>, dims: Vec<usize>) -> Result<Self> {
        let k = category.field().clone();
        let c = category.clone();
        let d = dims.clone();
        Self::validated(category, dims, {
            let mut acts = Vec::new();
            for x in 0..c.len() {
                for y in 0..c.len() {
                    let list: Vec<Matrix> = (0..c.hom_dim(x, y))
                        .map(|f| {
                            let scalar = c.basis_vector(x, y, f)[0].clone();
                            if x == y {
                                Matrix::identity(&k, d[x]).scale(&scalar)
                            } else {
                                Matrix::zeros(&k, d[x], d[y])
                            }
                        })
                        .collect();
                    acts.push(list);
                }
            }
            acts
        })
    }

    pub fn category(&self) -> &Arc<LinearMonoidalCategory> {
        &self.category
    }

    pub fn field(&self) -> &Field {
        self.category.field()
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, x: usize) -> usize {
        self.dims[x]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    fn index(&self, x: usize, y: usize) -> usize {
        x * self.category.len() + y
    }

    /// Matrix of `F(f)` on the basis morphism `f ∈ C(x, y)`.
    pub fn action_basis(&self, x: usize, y: usize, f: usize) -> &Matrix {
        &self.actions[self.index(x, y)][f]
    }

    pub fn actions(&self) -> &[Vec<Matrix>] {
        &self.actions
    }

    /// `F(f): F(y) → F(x)` for an arbitrary `f ∈ C(x, y)`.
    pub fn action(&self, x: usize, y: usize, f: &[Elem]) -> Matrix {
        let k = self.field();
        let mut m = Matrix::zeros(k, self.dims[x], self.dims[y]);
        for (a, c) in f.iter().enumerate() {
            if !k.is_zero(c) {
                m = m.add(&self.actions[self.index(x, y)][a].scale(c));
            }
        }
        m
    }

    pub fn same_category(&self, other: &DayPresheaf) -> Result<()> {
        if Arc::ptr_eq(&self.category, &other.category) || self.category == other.category {
            Ok(())
        } else {
            Err(Error::CategoryMismatch)
        }
    }

    /// `F(id) = id` and `F(g∘f) = F(f)F(g)` on basis morphisms.
    pub fn functoriality_failure(&self) -> Option<String> {
        let c = &self.category;
        let n = c.len();
        for x in 0..n {
            if !self.action(x, x, c.identity(x)).is_identity() {
                return Some(format!("F(id) ≠ id on object {x}"));
            }
        }
        for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    for f in 0..c.hom_dim(x, y) {
                        for g in 0..c.hom_dim(y, z) {
                            let gf = c.compose(x, y, z, &c.basis_vector(y, z, g), &c.basis_vector(x, y, f));
                            let lhs = self.action(x, z, &gf);
                            let rhs = self.actions[self.index(x, y)][f].mul(&self.actions[self.index(y, z)][g]);
                            if lhs != rhs {
                                return Some(format!("F(g∘f) ≠ F(f)F(g) for {x}→{y}→{z}"));
                            }
                        }
                    }
                }
            }
        }
        None
    }

    pub fn is_valid(&self) -> bool {
        self.functoriality_failure().is_none()
    }

    /// Direct sum with its injections and projections.
    pub fn direct_sum(&self, other: &DayPresheaf) -> Result<DirectSumPresheaf> {
        self.same_category(other)?;
        let k = self.field().clone();
        let dims: Vec<usize> = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let sum = Self::from_fn(self.category.clone(), dims.clone(), |x, y, f| {
            self.action_basis(x, y, f).block_diag(other.action_basis(x, y, f))
        })?;
        let n = self.category.len();
        let inj = |left: bool| NatTrans {
            components: (0..n)
                .map(|x| {
                    let (a, b) = (self.dims[x], other.dims[x]);
                    let cols: Vec<usize> = if left { (0..a).collect() } else { (a..a + b).collect() };
                    Matrix::selection(&k, a + b, &cols)
                })
                .collect(),
        };
        let (i1, i2) = (inj(true), inj(false));
        let p1 = NatTrans { components: i1.components.iter().map(Matrix::transpose).collect() };
        let p2 = NatTrans { components: i2.components.iter().map(Matrix::transpose).collect() };
        Ok(DirectSumPresheaf { presheaf: sum, injections: [i1, i2], projections: [p1, p2] })
    }

    /// Smallest sub-presheaf containing the given subspaces: close under all
    /// restriction maps until nothing changes.
    pub fn restriction_closure(&self, gens: &[Subspace]) -> Vec<Subspace> {
        let c = &self.category;
        let mut cur: Vec<Subspace> = gens.to_vec();
        loop {
            let mut next = cur.clone();
            for (x, y, f) in c.basis_morphisms() {
                if x != y || !c.basis_vector(x, y, f).eq(c.identity(x)) {
                    let img = cur[y].map(self.action_basis(x, y, f));
                    next[x] = next[x].sum(&img).expect("ambient matches");
                }
            }
            if next == cur {
                return cur;
            }
            cur = next;
        }
    }

    pub fn is_sub_presheaf(&self, spaces: &[Subspace]) -> bool {
        self.category
            .basis_morphisms()
            .into_iter()
            .all(|(x, y, f)| spaces[x].contains(&spaces[y].map(self.action_basis(x, y, f))).unwrap_or(false))
    }

    /// The sub-presheaf on the given spaces (which must be closed under
    /// restrictions), with bases the RREF rows, and its inclusion.
    pub fn restrict(&self, spaces: &[Subspace]) -> Result<(DayPresheaf, NatTrans)> {
        if !self.is_sub_presheaf(spaces) {
            return Err(Error::Invalid("subspaces are not closed under restriction".into()));
        }
        let incl: Vec<Matrix> = spaces.iter().map(Subspace::inclusion).collect();
        let dims = spaces.iter().map(Subspace::dim).collect();
        let sub = Self::from_fn(self.category.clone(), dims, |x, y, f| {
            spaces[x].coordinates_of_columns(&self.action_basis(x, y, f).mul(&incl[y])).expect("closed under restriction")
        })?;
        Ok((sub, NatTrans { components: incl }))
    }

    /// `F / S` for a sub-presheaf `S`, with the projection.
    pub fn quotient(&self, spaces: &[Subspace]) -> Result<(DayPresheaf, NatTrans)> {
        if !self.is_sub_presheaf(spaces) {
            return Err(Error::Invalid("subspaces are not closed under restriction".into()));
        }
        let maps: Vec<(Matrix, Matrix)> = spaces.iter().map(Subspace::quotient_map).collect();
        let dims = maps.iter().map(|(q, _)| q.rows()).collect();
        let quo = Self::from_fn(self.category.clone(), dims, |x, y, f| maps[x].0.mul(self.action_basis(x, y, f)).mul(&maps[y].1))?;
        Ok((quo, NatTrans { components: maps.into_iter().map(|(q, _)| q).collect() }))
    }

    pub fn zero_spaces(&self) -> Vec<Subspace> {
        self.dims.iter().map(|&d| Subspace::zero(self.field(), d)).collect()
    }

    pub fn full_spaces(&self) -> Vec<Subspace> {
        self.dims.iter().map(|&d| Subspace::full(self.field(), d)).collect()
    }

    /// A single vector at one object, as a family of subspaces.
    pub fn point(&self, x: usize, v: &[Elem]) -> Vec<Subspace> {
        let mut s = self.zero_spaces();
        s[x] = Subspace::from_rows(self.field(), self.dims[x], vec![v.to_vec()]);
        s
    }

    /// A random presheaf with every space of dimension at most `max_dim`:
    /// a sum of representables, or a sub-presheaf or quotient of one
    /// generated by a random vector.
    pub fn random<R: Rng + ?Sized>(category: &Arc<LinearMonoidalCategory>, max_dim: usize, rng: &mut R) -> Self {
        let k = category.field().clone();
        let n = category.len();
        for _ in 0..64 {
            let parts = rng.gen_range(1..=3);
            let mut p = Self::zero(category.clone());
            for _ in 0..parts {
                let x = rng.gen_range(0..n);
                p = p.direct_sum(&Self::representable(category.clone(), x)).expect("same category").presheaf;
            }
            let out = match rng.gen_range(0..3) {
                0 => p,
                mode => {
                    let x = rng.gen_range(0..n);
                    if p.dims[x] == 0 {
                        p
                    } else {
                        let v: Vec<Elem> = (0..p.dims[x]).map(|_| k.random(rng)).collect();
                        let s = p.restriction_closure(&p.point(x, &v));
                        if mode == 1 {
                            p.restrict(&s).expect("closed").0
                        } else {
                            p.quotient(&s).expect("closed").0
                        }
                    }
                }
            };
            if out.dims.iter().all(|&d| d <= max_dim) && out.total_dim() > 0 {
                return out;
            }
        }
        Self::zero(category.clone())
    }
}

/// `F ⊕ G` with its structure maps.
#[derive(Clone, Debug)]
pub struct DirectSumPresheaf {
    pub presheaf: DayPresheaf,
    pub injections: [NatTrans; 2],
    pub projections: [NatTrans; 2],
}

/// A basis of the space of natural transformations `F → G`, as the kernel
/// of the naturality constraints on the objectwise matrix entries.
pub fn nat_hom_basis(f: &DayPresheaf, g: &DayPresheaf) -> Result<Vec<NatTrans>> {
    f.same_category(g)?;
    let k = f.field().clone();
    let c = f.category();
    let n = c.len();
    let mut offsets = vec![0; n + 1];
    for x in 0..n {
        offsets[x + 1] = offsets[x] + g.dims[x] * f.dims[x];
    }
    let unknowns = offsets[n];
    let mut rows = Vec::new();
    for (x, y, a) in c.basis_morphisms() {
        let fa = f.action_basis(x, y, a);
        let ga = g.action_basis(x, y, a);
        // (η_x F(a) − G(a) η_y)[i][j]
        for i in 0..g.dims[x] {
            for j in 0..f.dims[y] {
                let mut row = vec![k.zero(); unknowns];
                for l in 0..f.dims[x] {
                    let idx = offsets[x] + i * f.dims[x] + l;
                    row[idx] = k.add(&row[idx], fa.get(l, j));
                }
                for l in 0..g.dims[y] {
                    let idx = offsets[y] + l * f.dims[y] + j;
                    row[idx] = k.sub(&row[idx], ga.get(i, l));
                }
                rows.push(row);
            }
        }
    }
    let system = Matrix::from_rows_with_cols(&k, rows, unknowns)?;
    let ker = system.kernel();
    Ok(ker
        .basis_rows()
        .into_iter()
        .map(|v| NatTrans {
            components: (0..n)
                .map(|x| Matrix::from_fn(&k, g.dims[x], f.dims[x], |i, j| v[offsets[x] + i * f.dims[x] + j].clone()))
                .collect(),
        })
        .collect())
}
