use std::sync::Arc;

use super::category::{unit_vec, CategoryPreset, LinearMonoidalCategory};
use super::convolution::{associator, day_convolve, left_unitor, right_unitor, symmetry, tensor_maps, DayProduct};
use super::presheaf::{DayPresheaf, NatTrans};
use crate::coalg::Coalgebra;
use crate::error::{Error, Result};
use crate::linalg::{kron, kron_vec, Matrix};
use crate::report::CheckReport;

/// A comonoid in presheaves under Day convolution: `Δ: F → F⊗F` and
/// `ε: F → h_1`, with `Δ` given in the coordinates of [`day_convolve`]`(F, F)`.
#[derive(Clone, Debug)]
pub struct DayCoalgebra {
    presheaf: DayPresheaf,
    square: DayProduct,
    unit: DayPresheaf,
    delta: NatTrans,
    epsilon: NatTrans,
}

impl DayCoalgebra {
    pub fn new(presheaf: DayPresheaf, delta: NatTrans, epsilon: NatTrans) -> Result<Self> {
        let square = day_convolve(&presheaf, &presheaf)?;
        let c = presheaf.category().clone();
        let unit = DayPresheaf::representable(c.clone(), c.unit());
        let n = c.len();
        if delta.components.len() != n || epsilon.components.len() != n {
            return Err(Error::ShapeMismatch(format!("Δ and ε need {n} components")));
        }
        for x in 0..n {
            if delta.components[x].shape() != (square.presheaf.dim(x), presheaf.dim(x)) {
                return Err(Error::ShapeMismatch(format!("Δ at object {x}")));
            }
            if epsilon.components[x].shape() != (unit.dim(x), presheaf.dim(x)) {
                return Err(Error::ShapeMismatch(format!("ε at object {x}")));
            }
        }
        Ok(DayCoalgebra { presheaf, square, unit, delta, epsilon })
    }

    /// Builds `Δ` from representatives in the presentation of `F⊗F`:
    /// `delta[x]` has a column in `T(x)` for every basis vector of `F(x)`.
    pub fn from_representatives(presheaf: DayPresheaf, delta: Vec<Matrix>, epsilon: NatTrans) -> Result<Self> {
        let square = day_convolve(&presheaf, &presheaf)?;
        let n = presheaf.category().len();
        if delta.len() != n {
            return Err(Error::ShapeMismatch(format!("Δ needs {n} components")));
        }
        let mut comps = Vec::with_capacity(n);
        for (x, d) in delta.iter().enumerate() {
            if d.shape() != (square.t_dim(x), presheaf.dim(x)) {
                return Err(Error::ShapeMismatch(format!(
                    "Δ representative at object {x} has shape {:?}, expected {:?}",
                    d.shape(),
                    (square.t_dim(x), presheaf.dim(x))
                )));
            }
            comps.push(square.quotient(x).mul(d));
        }
        Self::new(presheaf, NatTrans { components: comps }, epsilon)
    }

    /// An ordinary coalgebra placed at the unit: `F(u) = C ⊗ C(u, 1)`.
    pub fn at_unit(category: Arc<LinearMonoidalCategory>, c: &Coalgebra) -> Result<Self> {
        let cat = category.clone();
        let k = cat.field().clone();
        let one = cat.unit();
        let d = c.dim();
        let dims: Vec<usize> = (0..cat.len()).map(|u| d * cat.hom_dim(u, one)).collect();
        let presheaf = DayPresheaf::from_fn(category, dims.clone(), |u, v, f| {
            kron(&Matrix::identity(&k, d), &cat.precompose(u, v, one, &cat.basis_vector(u, v, f)))
        })?;
        let square = day_convolve(&presheaf, &presheaf)?;
        let mut delta = Vec::with_capacity(cat.len());
        let mut eps = Vec::with_capacity(cat.len());
        for u in 0..cat.len() {
            let hu = cat.hom_dim(u, one);
            let mut cols = Vec::with_capacity(dims[u]);
            let mut ecols = Vec::with_capacity(dims[u]);
            for i in 0..d {
                let di = c.delta().col(i);
                for a in 0..hu {
                    // c_i ⊗ a ↦ Σ Δ_{jl}^i [a ⊗ (c_j ⊗ id_1) ⊗ (c_l ⊗ id_1)]
                    let mut v = vec![k.zero(); square.t_dim(u)];
                    for j in 0..d {
                        for l in 0..d {
                            let coeff = &di[j * d + l];
                            if k.is_zero(coeff) {
                                continue;
                            }
                            let s = kron_vec(&k, &unit_vec(&k, d, j), cat.identity(one));
                            let t = kron_vec(&k, &unit_vec(&k, d, l), cat.identity(one));
                            let piece = square.t_vector(u, one, one, &unit_vec(&k, hu, a), &s, &t);
                            for (o, p) in v.iter_mut().zip(piece) {
                                *o = k.add(o, &k.mul(coeff, &p));
                            }
                        }
                    }
                    cols.push(v);
                    let e = c.epsilon().get(0, i).clone();
                    ecols.push(unit_vec(&k, hu, a).into_iter().map(|x| k.mul(&x, &e)).collect());
                }
            }
            delta.push(square.quotient(u).mul(&Matrix::from_columns(&k, square.t_dim(u), &cols)));
            eps.push(Matrix::from_columns(&k, hu, &ecols));
        }
        Self::new(presheaf, NatTrans { components: delta }, NatTrans { components: eps })
    }

    /// A `ℤ/n`-graded coalgebra as a Day coalgebra on the group-discrete
    /// category: basis vector `i` sits at object `degrees[i]`.
    pub fn graded(category: Arc<LinearMonoidalCategory>, c: &Coalgebra, degrees: &[usize]) -> Result<Self> {
        let n = match category.preset() {
            Some(CategoryPreset::GroupDiscrete { n }) => *n,
            _ => return Err(Error::NotSupported("graded coalgebras need a group-discrete category".into())),
        };
        let d = c.dim();
        if degrees.len() != d || degrees.iter().any(|&g| g >= n) {
            return Err(Error::ShapeMismatch("one degree in 0..n per basis vector".into()));
        }
        let k = category.field().clone();
        let members: Vec<Vec<usize>> = (0..n).map(|g| (0..d).filter(|&i| degrees[i] == g).collect()).collect();
        let pos = |i: usize| members[degrees[i]].iter().position(|&j| j == i).expect("member");
        let presheaf = DayPresheaf::discrete(category.clone(), members.iter().map(Vec::len).collect())?;
        let square = day_convolve(&presheaf, &presheaf)?;
        let mut delta = Vec::with_capacity(n);
        let mut eps = Vec::with_capacity(n);
        for z in 0..n {
            let mut cols = Vec::new();
            let mut ecols = Vec::new();
            for &i in &members[z] {
                let di = c.delta().col(i);
                let mut v = vec![k.zero(); square.t_dim(z)];
                for j in 0..d {
                    for l in 0..d {
                        let coeff = &di[j * d + l];
                        if k.is_zero(coeff) {
                            continue;
                        }
                        let (x, y) = (degrees[j], degrees[l]);
                        if (x + y) % n != z {
                            return Err(Error::Invalid(format!("Δ of basis vector {i} does not respect the grading")));
                        }
                        let piece = square.t_vector(
                            z,
                            x,
                            y,
                            &[k.one()],
                            &unit_vec(&k, members[x].len(), pos(j)),
                            &unit_vec(&k, members[y].len(), pos(l)),
                        );
                        for (o, p) in v.iter_mut().zip(piece) {
                            *o = k.add(o, &k.mul(coeff, &p));
                        }
                    }
                }
                cols.push(v);
                let e = c.epsilon().get(0, i).clone();
                if z != 0 && !k.is_zero(&e) {
                    return Err(Error::Invalid(format!("ε is nonzero on basis vector {i} of degree {z}")));
                }
                ecols.push(if z == 0 { vec![e] } else { vec![] });
            }
            delta.push(square.quotient(z).mul(&Matrix::from_columns(&k, square.t_dim(z), &cols)));
            eps.push(Matrix::from_columns(&k, usize::from(z == 0), &ecols));
        }
        Self::new(presheaf, NatTrans { components: delta }, NatTrans { components: eps })
    }

    pub fn presheaf(&self) -> &DayPresheaf {
        &self.presheaf
    }

    pub fn square(&self) -> &DayProduct {
        &self.square
    }

    pub fn delta(&self) -> &NatTrans {
        &self.delta
    }

    pub fn epsilon(&self) -> &NatTrans {
        &self.epsilon
    }

    pub fn unit_presheaf(&self) -> &DayPresheaf {
        &self.unit
    }

    pub fn category(&self) -> &Arc<LinearMonoidalCategory> {
        self.presheaf.category()
    }

    /// Naturality of `Δ` and `ε`, coassociativity through the associator,
    /// cocommutativity through the symmetry, and both counit laws through the
    /// unitors.
    pub fn verify(&self) -> Result<CheckReport> {
        let f = &self.presheaf;
        let mut rep = CheckReport::new();
        rep.record("presheaf functorial", f.is_valid(), || f.functoriality_failure().unwrap_or_default());
        let nat = self.delta.naturality_failure(f, &self.square.presheaf);
        rep.record("Δ natural", nat.is_none(), || format!("{nat:?}"));
        let nat = self.epsilon.naturality_failure(f, &self.unit);
        rep.record("ε natural", nat.is_none(), || format!("{nat:?}"));
        if !rep.all_passed() {
            for name in ["coassociative", "cocommutative", "left counit", "right counit"] {
                rep.skip(name, "structure maps are not natural");
            }
            return Ok(rep);
        }

        let id = NatTrans::identity(f);
        let ff = &self.square;
        let ff_f = day_convolve(&ff.presheaf, f)?;
        let f_ff = day_convolve(f, &ff.presheaf)?;
        let assoc = associator(ff, &ff_f, ff, &f_ff)?;
        let left = self.delta.then(&tensor_maps(ff, &ff_f, &self.delta, &id)?).then(&assoc);
        let right = self.delta.then(&tensor_maps(ff, &f_ff, &id, &self.delta)?);
        rep.record("coassociative", left == right, || first_difference(&left, &right));

        let sigma = symmetry(ff, ff)?;
        let swapped = self.delta.then(&sigma);
        rep.record("cocommutative", swapped == self.delta, || first_difference(&swapped, &self.delta));

        let h1f = day_convolve(&self.unit, f)?;
        let fh1 = day_convolve(f, &self.unit)?;
        let l = self.delta.then(&tensor_maps(ff, &h1f, &self.epsilon, &id)?).then(&left_unitor(&h1f)?);
        rep.record("left counit", l == id, || first_difference(&l, &id));
        let r = self.delta.then(&tensor_maps(ff, &fh1, &id, &self.epsilon)?).then(&right_unitor(&fh1)?);
        rep.record("right counit", r == id, || first_difference(&r, &id));
        Ok(rep)
    }

    pub fn is_valid(&self) -> Result<bool> {
        Ok(self.verify()?.all_passed())
    }

    /// `F ⊕ G` with `Δ` and `ε` acting summandwise.
    pub fn direct_sum(&self, other: &DayCoalgebra) -> Result<DayCoalgebra> {
        let sum = self.presheaf.direct_sum(&other.presheaf)?;
        let ss = day_convolve(&sum.presheaf, &sum.presheaf)?;
        let [i1, i2] = &sum.injections;
        let d1 = self.delta.then(&tensor_maps(&self.square, &ss, i1, i1)?);
        let d2 = other.delta.then(&tensor_maps(&other.square, &ss, i2, i2)?);
        let n = self.category().len();
        let delta = NatTrans { components: (0..n).map(|x| d1.components[x].hstack(&d2.components[x])).collect() };
        let epsilon = NatTrans {
            components: (0..n).map(|x| self.epsilon.components[x].hstack(&other.epsilon.components[x])).collect(),
        };
        Ok(DayCoalgebra { presheaf: sum.presheaf, square: ss, unit: self.unit.clone(), delta, epsilon })
    }

    /// Checks that `η: self → target` is a morphism of Day coalgebras.
    pub fn morphism_report(&self, target: &DayCoalgebra, eta: &NatTrans) -> Result<CheckReport> {
        let mut rep = CheckReport::new();
        let nat = eta.naturality_failure(&self.presheaf, &target.presheaf);
        rep.record("natural", nat.is_none(), || format!("{nat:?}"));
        if nat.is_some() {
            return Ok(rep);
        }
        let lhs = eta.then(&target.delta);
        let rhs = self.delta.then(&tensor_maps(&self.square, &target.square, eta, eta)?);
        rep.record("preserves Δ", lhs == rhs, || first_difference(&lhs, &rhs));
        let e = eta.then(&target.epsilon);
        rep.record("preserves ε", e == self.epsilon, || first_difference(&e, &self.epsilon));
        Ok(rep)
    }
}

pub(crate) fn first_difference(a: &NatTrans, b: &NatTrans) -> String {
    match a.components.iter().zip(&b.components).position(|(x, y)| x != y) {
        Some(i) => format!("components differ at object {i}"),
        None => "component counts differ".into(),
    }
}
