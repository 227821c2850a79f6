use std::sync::Arc;

use super::category::{unit_vec, LinearMonoidalCategory};
use super::presheaf::{DayPresheaf, NatTrans};
use crate::error::{Error, Result};
use crate::field::{Elem, Field};
use crate::linalg::{kron, kron_vec, Matrix, Subspace};

/// `F ⊗^Day G` together with the data of its presentation.
///
/// At each object `u` the presentation space `T(u)` is the direct sum over
/// pairs `(x, y)` of `C(u, x⊗y) ⊗ F(x) ⊗ G(y)`, blocks in the order
/// `x·n + y`, entries `φ ⊗ s ⊗ t` in the row-major order. The value of the
/// convolution is `T(u)` modulo the coequalizer relations, with `quotient`
/// the projection and `section` a splitting of it by unit vectors.
#[derive(Clone, Debug)]
pub struct DayProduct {
    pub presheaf: DayPresheaf,
    left: DayPresheaf,
    right: DayPresheaf,
    offsets: Vec<Vec<usize>>,
    relations: Vec<Subspace>,
    quotient: Vec<Matrix>,
    section: Vec<Matrix>,
}

/// Which variable a generating relation moves.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

/// One generating relation `(α⊗id)∘φ ⊗ s ⊗ t − φ ⊗ α*s ⊗ t` (left side) or
/// `(id⊗β)∘φ ⊗ s ⊗ t − φ ⊗ s ⊗ β*t` (right side), for basis `α: x'→x` or
/// `β: y'→y`, `φ ∈ C(u, ·)`, `s ∈ F(x)`, `t ∈ G(y)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    pub side: Side,
    /// Source of the moving morphism.
    pub from: usize,
    /// Target of the moving morphism.
    pub to: usize,
    /// The object in the other variable.
    pub other: usize,
    pub morphism: usize,
    pub phi: usize,
    pub s: usize,
    pub t: usize,
}

impl Relation {
    /// The pair `(x, y)` of the block carrying `s ⊗ t`.
    pub fn top_block(&self) -> (usize, usize) {
        match self.side {
            Side::Left => (self.to, self.other),
            Side::Right => (self.other, self.to),
        }
    }
}

impl DayProduct {
    pub fn left(&self) -> &DayPresheaf {
        &self.left
    }

    pub fn right(&self) -> &DayPresheaf {
        &self.right
    }

    fn category(&self) -> &Arc<LinearMonoidalCategory> {
        self.left.category()
    }

    fn field(&self) -> &Field {
        self.left.field()
    }

    pub fn t_dim(&self, u: usize) -> usize {
        *self.offsets[u].last().expect("offsets")
    }

    pub fn block_offset(&self, u: usize, x: usize, y: usize) -> usize {
        self.offsets[u][x * self.category().len() + y]
    }

    pub fn block_len(&self, u: usize, x: usize, y: usize) -> usize {
        let c = self.category();
        c.hom_dim(u, c.tensor_obj(x, y)) * self.left.dim(x) * self.right.dim(y)
    }

    /// `φ ⊗ s ⊗ t` placed in the block `(x, y)` of `T(u)`.
    pub fn t_vector(&self, u: usize, x: usize, y: usize, phi: &[Elem], s: &[Elem], t: &[Elem]) -> Vec<Elem> {
        let k = self.field();
        let mut v = vec![k.zero(); self.t_dim(u)];
        let off = self.block_offset(u, x, y);
        for (i, e) in kron_vec(k, &kron_vec(k, phi, s), t).into_iter().enumerate() {
            v[off + i] = e;
        }
        v
    }

    /// Projection `T(u) → (F⊗G)(u)`.
    pub fn quotient(&self, u: usize) -> &Matrix {
        &self.quotient[u]
    }

    /// Splitting `(F⊗G)(u) → T(u)` of the projection.
    pub fn section(&self, u: usize) -> &Matrix {
        &self.section[u]
    }

    /// Span of the relations in `T(u)`.
    pub fn relations(&self, u: usize) -> &Subspace {
        &self.relations[u]
    }

    /// Class of `φ ⊗ s ⊗ t` in `(F⊗G)(u)`.
    pub fn element(&self, u: usize, x: usize, y: usize, phi: &[Elem], s: &[Elem], t: &[Elem]) -> Vec<Elem> {
        self.quotient[u].mul_vec(&self.t_vector(u, x, y, phi, s, t))
    }

    /// Insertion `C(u, x⊗y) ⊗ F(x) ⊗ G(y) → (F⊗G)(u)`.
    pub fn insertion(&self, u: usize, x: usize, y: usize) -> Matrix {
        let off = self.block_offset(u, x, y);
        let q = &self.quotient[u];
        q.block(0, q.rows(), off, off + self.block_len(u, x, y))
    }

    /// Restriction of `T` along `f: u → v`, i.e. `φ ↦ φ∘f` blockwise.
    pub fn t_restriction(&self, u: usize, v: usize, f: &[Elem]) -> Matrix {
        let c = self.category();
        let k = self.field();
        let n = c.len();
        let mut m = Matrix::zeros(k, self.t_dim(u), self.t_dim(v));
        for x in 0..n {
            for y in 0..n {
                let inner = self.left.dim(x) * self.right.dim(y);
                if inner == 0 {
                    continue;
                }
                let xy = c.tensor_obj(x, y);
                let pre = c.precompose(u, v, xy, f);
                let b = kron(&pre, &Matrix::identity(k, inner));
                let (r0, c0) = (self.block_offset(u, x, y), self.block_offset(v, x, y));
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
            }
        }
        m
    }

    /// The generating relations at `u` with their (nonzero) vectors in `T(u)`.
    pub fn relation_generators(&self, u: usize) -> Vec<(Relation, Vec<Elem>)> {
        let c = self.category().clone();
        let k = self.field().clone();
        let n = c.len();
        let mut out = Vec::new();
        for side in [Side::Left, Side::Right] {
            let moving = if side == Side::Left { &self.left } else { &self.right };
            for from in 0..n {
                for to in 0..n {
                    for a in 0..c.hom_dim(from, to) {
                        let av = c.basis_vector(from, to, a);
                        let act = moving.action_basis(from, to, a);
                        for other in 0..n {
                            let (src, tgt) = match side {
                                Side::Left => ((from, other), (to, other)),
                                Side::Right => ((other, from), (other, to)),
                            };
                            let (xs, ys) = src;
                            let (xt, yt) = tgt;
                            let (s_obj, t_obj) = (xt, yt);
                            if self.left.dim(s_obj) == 0 || self.right.dim(t_obj) == 0 {
                                continue;
                            }
                            let src_obj = c.tensor_obj(xs, ys);
                            let tgt_obj = c.tensor_obj(xt, yt);
                            let hom_src = c.hom_dim(u, src_obj);
                            if hom_src == 0 {
                                continue;
                            }
                            let mor = match side {
                                Side::Left => c.tensor_mor(from, to, other, other, &av, c.identity(other)),
                                Side::Right => c.tensor_mor(other, other, from, to, c.identity(other), &av),
                            };
                            let post = c.postcompose(u, src_obj, tgt_obj, &mor);
                            for phi in 0..hom_src {
                                let phi_v = unit_vec(&k, hom_src, phi);
                                let moved_phi = post.col(phi);
                                for s in 0..self.left.dim(s_obj) {
                                    for t in 0..self.right.dim(t_obj) {
                                        let (sv, tv) = (unit_vec(&k, self.left.dim(s_obj), s), unit_vec(&k, self.right.dim(t_obj), t));
                                        let top = self.t_vector(u, xt, yt, &moved_phi, &sv, &tv);
                                        let bottom = match side {
                                            Side::Left => self.t_vector(u, xs, ys, &phi_v, &act.col(s), &tv),
                                            Side::Right => self.t_vector(u, xs, ys, &phi_v, &sv, &act.col(t)),
                                        };
                                        let rel: Vec<Elem> = top.iter().zip(&bottom).map(|(p, q)| k.sub(p, q)).collect();
                                        if rel.iter().any(|e| !k.is_zero(e)) {
                                            let label = Relation { side, from, to, other, morphism: a, phi, s, t };
                                            out.push((label, rel));
                                        }
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    /// Descends a linear map out of `T(u)` to `(F⊗G)(u)`; fails if the map
    /// does not kill the relations.
    pub fn descend(&self, u: usize, t_map: &Matrix) -> Result<Matrix> {
        let down = t_map.mul(&self.section[u]);
        if down.mul(&self.quotient[u]) != *t_map {
            return Err(Error::ReportedFailure {
                check: "coequalizer".into(),
                detail: format!("map out of the presentation does not respect the relations at object {u}"),
            });
        }
        Ok(down)
    }

    /// Builds the `T(u)`-level matrix of a map from its values on the basis
    /// elements `φ ⊗ e_s ⊗ e_t`, then descends it.
    pub fn map_from_basis(
        &self,
        u: usize,
        target_dim: usize,
        mut value: impl FnMut(usize, usize, &[Elem], usize, usize) -> Vec<Elem>,
    ) -> Result<Matrix> {
        let c = self.category().clone();
        let k = self.field().clone();
        let n = c.len();
        let mut cols = Vec::with_capacity(self.t_dim(u));
        for x in 0..n {
            for y in 0..n {
                let h = c.hom_dim(u, c.tensor_obj(x, y));
                for phi in 0..h {
                    let phi_v = unit_vec(&k, h, phi);
                    for s in 0..self.left.dim(x) {
                        for t in 0..self.right.dim(y) {
                            cols.push(value(x, y, &phi_v, s, t));
                        }
                    }
                }
            }
        }
        self.descend(u, &Matrix::from_columns(&k, target_dim, &cols))
    }
}

/// Day convolution by the explicit coequalizer.
///
/// Relations are generated by pairs `(α, id)` and `(id, β)` with `α`, `β`
/// basis morphisms: by the interchange law `α⊗β = (α⊗id)∘(id⊗β)`, so these
/// span the relations for all pairs. Representatives are taken in the
/// earliest blocks: the quotient coordinates are the non-pivot columns of
/// the relation span in reversed column order.
pub fn day_convolve(f: &DayPresheaf, g: &DayPresheaf) -> Result<DayProduct> {
    f.same_category(g)?;
    let c = f.category().clone();
    let k = f.field().clone();
    let n = c.len();
    let mut offsets = Vec::with_capacity(n);
    for u in 0..n {
        let mut off = Vec::with_capacity(n * n + 1);
        let mut acc = 0;
        for x in 0..n {
            for y in 0..n {
                off.push(acc);
                acc += c.hom_dim(u, c.tensor_obj(x, y)) * f.dim(x) * g.dim(y);
            }
        }
        off.push(acc);
        offsets.push(off);
    }
    let mut prod = DayProduct {
        presheaf: DayPresheaf::zero(c.clone()),
        left: f.clone(),
        right: g.clone(),
        offsets,
        relations: Vec::new(),
        quotient: Vec::new(),
        section: Vec::new(),
    };
    for u in 0..n {
        let t = prod.t_dim(u);
        let rows: Vec<Vec<Elem>> = prod.relation_generators(u).into_iter().map(|(_, mut v)| {
            v.reverse();
            v
        })
        .collect();
        let rev = Subspace::from_matrix(&Matrix::from_rows_with_cols(&k, rows, t)?);
        let (q_rev, s_rev) = rev.quotient_map();
        let flip = Matrix::from_fn(&k, t, t, |i, j| if i + j + 1 == t { k.one() } else { k.zero() });
        prod.quotient.push(q_rev.mul(&flip));
        prod.section.push(flip.mul(&s_rev));
        prod.relations.push(rev.map(&flip));
    }
    let dims: Vec<usize> = prod.quotient.iter().map(Matrix::rows).collect();
    let presheaf = DayPresheaf::from_fn(c.clone(), dims, |u, v, a| {
        let tr = prod.t_restriction(u, v, &c.basis_vector(u, v, a));
        prod.quotient[u].mul(&tr).mul(&prod.section[v])
    })?;
    prod.presheaf = presheaf;
    Ok(prod)
}

/// `η ⊗ θ : F⊗G → F'⊗G'` for natural transformations `η: F → F'`, `θ: G → G'`.
pub fn tensor_maps(src: &DayProduct, tgt: &DayProduct, eta: &NatTrans, theta: &NatTrans) -> Result<NatTrans> {
    src.presheaf.same_category(&tgt.presheaf)?;
    let c = src.category().clone();
    let k = src.field().clone();
    let n = c.len();
    let mut comps = Vec::with_capacity(n);
    for u in 0..n {
        let mut m = Matrix::zeros(&k, tgt.t_dim(u), src.t_dim(u));
        for x in 0..n {
            for y in 0..n {
                let h = c.hom_dim(u, c.tensor_obj(x, y));
                if h == 0 || src.block_len(u, x, y) == 0 || tgt.block_len(u, x, y) == 0 {
                    continue;
                }
                let b = kron(&Matrix::identity(&k, h), &kron(&eta.components[x], &theta.components[y]));
                let (r0, c0) = (tgt.block_offset(u, x, y), src.block_offset(u, x, y));
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(r0 + i, c0 + j, b.get(i, j).clone());
                    }
                }
            }
        }
        comps.push(src.descend(u, &tgt.quotient[u].mul(&m))?);
    }
    Ok(NatTrans { components: comps })
}

/// The comparison `h_x ⊗ h_y → h_{x⊗y}`, `φ ⊗ a ⊗ b ↦ (a⊗b)∘φ`.
pub fn yoneda_comparison(category: &Arc<LinearMonoidalCategory>, x: usize, y: usize) -> Result<(DayProduct, DayPresheaf, NatTrans)> {
    let c = category.clone();
    let hx = DayPresheaf::representable(c.clone(), x);
    let hy = DayPresheaf::representable(c.clone(), y);
    let hxy = DayPresheaf::representable(c.clone(), c.tensor_obj(x, y));
    let prod = day_convolve(&hx, &hy)?;
    let k = c.field().clone();
    let xy = c.tensor_obj(x, y);
    let comps = (0..c.len())
        .map(|u| {
            prod.map_from_basis(u, c.hom_dim(u, xy), |x2, y2, phi, a, b| {
                let ab = c.tensor_mor(x2, x, y2, y, &unit_vec(&k, c.hom_dim(x2, x), a), &unit_vec(&k, c.hom_dim(y2, y), b));
                c.compose(u, c.tensor_obj(x2, y2), xy, &ab, phi)
            })
        })
        .collect::<Result<_>>()?;
    Ok((prod, hxy, NatTrans { components: comps }))
}

/// `F ⊗ h_1 → F`, `φ ⊗ s ⊗ a ↦ F((id⊗a)∘φ)(s)`.
pub fn right_unitor(prod: &DayProduct) -> Result<NatTrans> {
    let f = prod.left().clone();
    let c = f.category().clone();
    let k = f.field().clone();
    let one = c.unit();
    let comps = (0..c.len())
        .map(|u| {
            prod.map_from_basis(u, f.dim(u), |x, y, phi, s, a| {
                let ida = c.tensor_mor(x, x, y, one, c.identity(x), &unit_vec(&k, c.hom_dim(y, one), a));
                let g = c.compose(u, c.tensor_obj(x, y), x, &ida, phi);
                f.action(u, x, &g).col(s)
            })
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans { components: comps })
}

/// `h_1 ⊗ F → F`, `φ ⊗ a ⊗ s ↦ F((a⊗id)∘φ)(s)`.
pub fn left_unitor(prod: &DayProduct) -> Result<NatTrans> {
    let f = prod.right().clone();
    let c = f.category().clone();
    let k = f.field().clone();
    let one = c.unit();
    let comps = (0..c.len())
        .map(|u| {
            prod.map_from_basis(u, f.dim(u), |y, x, phi, a, s| {
                let aid = c.tensor_mor(y, one, x, x, &unit_vec(&k, c.hom_dim(y, one), a), c.identity(x));
                let g = c.compose(u, c.tensor_obj(y, x), x, &aid, phi);
                f.action(u, x, &g).col(s)
            })
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans { components: comps })
}

/// `F ⊗ G → G ⊗ F`, `φ ⊗ s ⊗ t ↦ (σ∘φ) ⊗ t ⊗ s`.
pub fn symmetry(fg: &DayProduct, gf: &DayProduct) -> Result<NatTrans> {
    if fg.left() != gf.right() || fg.right() != gf.left() {
        return Err(Error::Invalid("symmetry needs F⊗G and G⊗F".into()));
    }
    let c = fg.category().clone();
    let k = c.field().clone();
    let comps = (0..c.len())
        .map(|u| {
            let q = gf.quotient(u).clone();
            let gd = gf.presheaf.dim(u);
            let m = fg.map_from_basis(u, gd, |x, y, phi, s, t| {
                let sphi = c.compose(u, c.tensor_obj(x, y), c.tensor_obj(y, x), c.symmetry(x, y), phi);
                let v = gf.t_vector(u, y, x, &sphi, &unit_vec(&k, gf.left().dim(y), t), &unit_vec(&k, gf.right().dim(x), s));
                q.mul_vec(&v)
            })?;
            Ok(m)
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans { components: comps })
}

/// The associativity comparison `(F⊗G)⊗H → F⊗(G⊗H)` given the four products
/// `fg = F⊗G`, `fg_h = (F⊗G)⊗H`, `gh = G⊗H`, `f_gh = F⊗(G⊗H)`.
pub fn associator(fg: &DayProduct, fg_h: &DayProduct, gh: &DayProduct, f_gh: &DayProduct) -> Result<NatTrans> {
    if fg_h.left() != &fg.presheaf || f_gh.right() != &gh.presheaf || fg.left() != f_gh.left() || fg.right() != gh.left() || fg_h.right() != gh.right() {
        return Err(Error::Invalid("associator: products do not match".into()));
    }
    let c = fg.category().clone();
    let k = c.field().clone();
    let n = c.len();
    let comps = (0..n)
        .map(|u| {
            let target = f_gh.presheaf.dim(u);
            fg_h.map_from_basis(u, target, |w, z, phi, wi, v| {
                let mut out = vec![k.zero(); f_gh.t_dim(u)];
                let rep = fg.section(w).col(wi);
                for x in 0..n {
                    for y in 0..n {
                        let h = c.hom_dim(w, c.tensor_obj(x, y));
                        let (fx, gy) = (fg.left().dim(x), fg.right().dim(y));
                        let off = fg.block_offset(w, x, y);
                        for psi in 0..h {
                            for s in 0..fx {
                                for t in 0..gy {
                                    let coeff = &rep[off + (psi * fx + s) * gy + t];
                                    if k.is_zero(coeff) {
                                        continue;
                                    }
                                    let xy = c.tensor_obj(x, y);
                                    let psi_v = unit_vec(&k, h, psi);
                                    let psi_id = c.tensor_mor(w, xy, z, z, &psi_v, c.identity(z));
                                    let chi = c.compose(u, c.tensor_obj(w, z), c.tensor_obj(xy, z), &psi_id, phi);
                                    let yz = c.tensor_obj(y, z);
                                    let inner = gh.element(
                                        yz,
                                        y,
                                        z,
                                        c.identity(yz),
                                        &unit_vec(&k, gy, t),
                                        &unit_vec(&k, gh.right().dim(z), v),
                                    );
                                    let piece = f_gh.t_vector(u, x, yz, &chi, &unit_vec(&k, fx, s), &inner);
                                    for (o, p) in out.iter_mut().zip(piece) {
                                        *o = k.add(o, &k.mul(coeff, &p));
                                    }
                                }
                            }
                        }
                    }
                }
                f_gh.quotient(u).mul_vec(&out)
            })
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans { components: comps })
}
