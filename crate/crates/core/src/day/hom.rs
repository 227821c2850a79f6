use super::category::unit_vec;
use super::convolution::{tensor_maps, DayProduct};
use super::presheaf::{DayPresheaf, NatTrans};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{kron, Matrix, Subspace};

/// The internal hom `[G, H]`.
///
/// `[G, H](u)` is the end `∫_x Hom(G(x), H(u⊗x))`, computed as the kernel
/// of the two canonical maps into the product over basis morphisms
/// `α: x → x'` (`θ_x ∘ G(α)` against `H(id_u⊗α) ∘ θ_{x'}`). A family `θ` is
/// stored blockwise, each block a row-major `dim H(u⊗x) × dim G(x)` matrix.
#[derive(Clone, Debug)]
pub struct InternalHom {
    pub presheaf: DayPresheaf,
    source: DayPresheaf,
    target: DayPresheaf,
    offsets: Vec<Vec<usize>>,
    spaces: Vec<Subspace>,
}

impl InternalHom {
    pub fn source(&self) -> &DayPresheaf {
        &self.source
    }

    pub fn target(&self) -> &DayPresheaf {
        &self.target
    }

    /// The end at `u` inside the space of all families.
    pub fn space(&self, u: usize) -> &Subspace {
        &self.spaces[u]
    }

    /// Component `θ_x: G(x) → H(u⊗x)` of the `i`-th basis family at `u`.
    pub fn component(&self, u: usize, i: usize, x: usize) -> Matrix {
        let c = self.presheaf.category();
        let k = c.field();
        let (rows, cols) = (self.target.dim(c.tensor_obj(u, x)), self.source.dim(x));
        let off = self.offsets[u][x];
        let v = self.spaces[u].basis().row(i);
        Matrix::from_fn(k, rows, cols, |a, b| v[off + a * cols + b].clone())
    }
}

pub fn internal_hom(g: &DayPresheaf, h: &DayPresheaf) -> Result<InternalHom> {
    g.same_category(h)?;
    let c = g.category().clone();
    let k = c.field().clone();
    let n = c.len();
    let mut offsets = Vec::with_capacity(n);
    let mut spaces = Vec::with_capacity(n);
    for u in 0..n {
        let mut off = Vec::with_capacity(n + 1);
        let mut acc = 0;
        for x in 0..n {
            off.push(acc);
            acc += h.dim(c.tensor_obj(u, x)) * g.dim(x);
        }
        off.push(acc);
        let mut rows = Vec::new();
        for (x, x2, a) in c.basis_morphisms() {
            let ga = g.action_basis(x, x2, a);
            let idu_a = c.tensor_mor(u, u, x, x2, c.identity(u), &c.basis_vector(x, x2, a));
            let (ux, ux2) = (c.tensor_obj(u, x), c.tensor_obj(u, x2));
            let ha = h.action(ux, ux2, &idu_a);
            let (gx, gx2) = (g.dim(x), g.dim(x2));
            for i in 0..h.dim(ux) {
                for j in 0..gx2 {
                    let mut row = vec![k.zero(); acc];
                    for l in 0..gx {
                        let idx = off[x] + i * gx + l;
                        row[idx] = k.add(&row[idx], ga.get(l, j));
                    }
                    for l in 0..h.dim(ux2) {
                        let idx = off[x2] + l * gx2 + j;
                        row[idx] = k.sub(&row[idx], ha.get(i, l));
                    }
                    rows.push(row);
                }
            }
        }
        spaces.push(Matrix::from_rows_with_cols(&k, rows, acc)?.kernel());
        offsets.push(off);
    }
    let dims = spaces.iter().map(Subspace::dim).collect();
    let presheaf = DayPresheaf::from_fn(c.clone(), dims, |u, v, f| {
        // θ ↦ (H(f⊗id_x) θ_x)_x
        let mut big = Matrix::zeros(&k, offsets[u][n], offsets[v][n]);
        for x in 0..n {
            let fx = c.tensor_mor(u, v, x, x, &c.basis_vector(u, v, f), c.identity(x));
            let a = h.action(c.tensor_obj(u, x), c.tensor_obj(v, x), &fx);
            let b = kron(&a, &Matrix::identity(&k, g.dim(x)));
            for i in 0..b.rows() {
                for j in 0..b.cols() {
                    big.set(offsets[u][x] + i, offsets[v][x] + j, b.get(i, j).clone());
                }
            }
        }
        let moved = big.mul(&spaces[v].inclusion());
        spaces[u].coordinates_of_columns(&moved).expect("restriction preserves the end")
    })?;
    Ok(InternalHom { presheaf, source: g.clone(), target: h.clone(), offsets, spaces })
}

/// Evaluation `[G, H] ⊗ G → H`: `φ ⊗ θ ⊗ t ↦ H(φ)(θ_y(t))` for `φ: u → x⊗y`.
pub fn evaluation(hom: &InternalHom, prod: &DayProduct) -> Result<NatTrans> {
    if prod.left() != &hom.presheaf || prod.right() != hom.source() {
        return Err(Error::Invalid("evaluation needs the product [G,H] ⊗ G".into()));
    }
    let h = hom.target();
    let c = h.category().clone();
    let comps = (0..c.len())
        .map(|u| {
            prod.map_from_basis(u, h.dim(u), |x, y, phi, i, t| {
                let theta = hom.component(x, i, y);
                h.action(u, c.tensor_obj(x, y), phi).mul_vec(&theta.col(t))
            })
        })
        .collect::<Result<_>>()?;
    Ok(NatTrans { components: comps })
}

/// Coevaluation `F → [G, F⊗G]`: `s ↦ (t ↦ [id ⊗ s ⊗ t])`.
pub fn coevaluation(f: &DayPresheaf, fg: &DayProduct, hom: &InternalHom) -> Result<NatTrans> {
    if fg.left() != f || fg.right() != hom.source() || hom.target() != &fg.presheaf {
        return Err(Error::Invalid("coevaluation needs [G, F⊗G]".into()));
    }
    let c = f.category().clone();
    let k = c.field().clone();
    let g = hom.source();
    let n = c.len();
    let mut comps = Vec::with_capacity(n);
    for u in 0..n {
        let mut cols = Vec::with_capacity(f.dim(u));
        for s in 0..f.dim(u) {
            let mut fam: Vec<Elem> = vec![k.zero(); hom.offsets[u][n]];
            for x in 0..n {
                let ux = c.tensor_obj(u, x);
                let gx = g.dim(x);
                for t in 0..gx {
                    let val = fg.element(ux, u, x, c.identity(ux), &unit_vec(&k, f.dim(u), s), &unit_vec(&k, gx, t));
                    for (a, e) in val.into_iter().enumerate() {
                        fam[hom.offsets[u][x] + a * gx + t] = e;
                    }
                }
            }
            let coords = hom.spaces[u].coordinates(&fam).ok_or_else(|| Error::ReportedFailure {
                check: "coevaluation".into(),
                detail: format!("family at object {u} is not in the end"),
            })?;
            cols.push(coords);
        }
        comps.push(Matrix::from_columns(&k, hom.presheaf.dim(u), &cols));
    }
    Ok(NatTrans { components: comps })
}

/// The adjunct `ev ∘ (η ⊗ id_G): F ⊗ G → H` of `η: F → [G, H]`.
pub fn adjunct(eta: &NatTrans, fg: &DayProduct, hom: &InternalHom, hom_g: &DayProduct) -> Result<NatTrans> {
    let id = NatTrans::identity(hom.source());
    let t = tensor_maps(fg, hom_g, eta, &id)?;
    Ok(t.then(&evaluation(hom, hom_g)?))
}
