use std::collections::BTreeMap;

use serde::Serialize;

use super::coalgebra::DayCoalgebra;
use super::convolution::{day_convolve, tensor_maps, DayProduct, Relation};
use super::presheaf::{DayPresheaf, NatTrans};
use crate::error::{Error, Result};
use crate::field::Elem;
use crate::linalg::{kron, Matrix, Subspace};

/// One enlargement made by a closure procedure: the vectors adjoined at
/// each object (before closing under restrictions) and the dimensions after.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClosureStep {
    pub kind: StepKind,
    pub object: usize,
    pub legs: Vec<(usize, Vec<String>)>,
    pub dims_after: Vec<usize>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    Pure,
    Invariant,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub spaces: Vec<Subspace>,
    pub steps: Vec<ClosureStep>,
}

/// The objectwise kernel of `M' ⊗ N → M ⊗ N` for the sub-presheaf `M'` on `spaces`.
pub fn purity_defect(m: &DayPresheaf, spaces: &[Subspace], n: &DayPresheaf) -> Result<Vec<Subspace>> {
    let mn = day_convolve(m, n)?;
    let (sub, inc) = m.restrict(spaces)?;
    let sn = day_convolve(&sub, n)?;
    Ok(tensor_maps(&sn, &mn, &inc, &NatTrans::identity(n))?.kernel())
}

pub fn is_pure(m: &DayPresheaf, spaces: &[Subspace], n: &DayPresheaf) -> Result<bool> {
    Ok(purity_defect(m, spaces, n)?.iter().all(Subspace::is_zero))
}

/// The objectwise image of `M' ⊗ M' → F ⊗ F`.
fn square_image(f: &DayCoalgebra, spaces: &[Subspace]) -> Result<Vec<Subspace>> {
    let (sub, inc) = f.presheaf().restrict(spaces)?;
    let ss = day_convolve(&sub, &sub)?;
    Ok(tensor_maps(&ss, f.square(), &inc, &inc)?.image())
}

/// Whether `Δ(M') ⊆ Im(M'⊗M' → F⊗F)`.
pub fn is_invariant(f: &DayCoalgebra, spaces: &[Subspace]) -> Result<bool> {
    let img = square_image(f, spaces)?;
    Ok(spaces.iter().enumerate().all(|(x, s)| img[x].contains_columns(&f.delta().components[x].mul(&s.inclusion()))))
}

/// The `T`-level matrix of `η ⊗ θ` at `u`.
fn t_level(src: &DayProduct, tgt: &DayProduct, eta: &NatTrans, theta: &NatTrans, u: usize) -> Matrix {
    let c = src.presheaf.category().clone();
    let k = c.field().clone();
    let n = c.len();
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
    m
}

/// Enlarges the sub-presheaf `M0 ⊆ M` until `M' ⊗ N → M ⊗ N` is injective.
///
/// Each round takes one kernel vector, pushes a representative of it into
/// the presentation of `M ⊗ N`, and writes it as a combination of generating
/// relations, preferring relations whose `M`-leg already lies in the current
/// stage. The remaining `M`-legs are adjoined and the result is closed under
/// restrictions. Every round adds at least one vector, so at most `dim M`
/// rounds occur.
pub fn pure_closure(m: &DayPresheaf, m0: &[Subspace], n: &DayPresheaf) -> Result<Closure> {
    m.same_category(n)?;
    let k = m.field().clone();
    let mn = day_convolve(m, n)?;
    let idn = NatTrans::identity(n);
    let mut cur = m.restriction_closure(m0);
    let mut steps = Vec::new();
    loop {
        let (sub, inc) = m.restrict(&cur)?;
        let sn = day_convolve(&sub, n)?;
        let map = tensor_maps(&sn, &mn, &inc, &idn)?;
        let found = map.components.iter().enumerate().find_map(|(x, c)| {
            let ker = c.kernel();
            (!ker.is_zero()).then(|| (x, ker.basis().row_vec(0)))
        });
        let Some((x, kappa)) = found else {
            return Ok(Closure { spaces: cur, steps });
        };
        let rep = sn.section(x).mul_vec(&kappa);
        let w = t_level(&sn, &mn, &inc, &idn, x).mul_vec(&rep);

        // columns: generators with M-leg in the current stage, then the rest
        let mut groups: BTreeMap<Relation, Vec<(usize, Vec<Elem>)>> = BTreeMap::new();
        for (rel, v) in mn.relation_generators(x) {
            let key = Relation { s: 0, ..rel };
            groups.entry(key).or_default().push((rel.s, v));
        }
        let t = mn.t_dim(x);
        let mut free_cols = Vec::new();
        let mut costly_cols = Vec::new();
        let mut costly_meta = Vec::new();
        for (gi, (key, gens)) in groups.iter().enumerate() {
            let leg_obj = key.top_block().0;
            let combine = |coeffs: &[Elem]| -> Vec<Elem> {
                let mut out = vec![k.zero(); t];
                for (s, v) in gens {
                    if k.is_zero(&coeffs[*s]) {
                        continue;
                    }
                    for (o, e) in out.iter_mut().zip(v) {
                        *o = k.add(o, &k.mul(&coeffs[*s], e));
                    }
                }
                out
            };
            for row in cur[leg_obj].basis_rows() {
                free_cols.push(combine(&row));
            }
            for c in cur[leg_obj].complement_basis() {
                let mut unit = vec![k.zero(); m.dim(leg_obj)];
                unit[c] = k.one();
                costly_cols.push(combine(&unit));
                costly_meta.push((gi, leg_obj, unit));
            }
        }
        let nfree = free_cols.len();
        free_cols.extend(costly_cols);
        let gmat = Matrix::from_columns(&k, t, &free_cols);
        let coeffs = gmat.solve(&Matrix::column(&k, w)).ok_or_else(|| Error::Internal("kernel vector is not a relation".into()))?;
        // one leg per relation key
        let mut legs: BTreeMap<(usize, usize), Vec<Elem>> = BTreeMap::new();
        let mut gens_add = m.zero_spaces();
        for (i, (gi, obj, unit)) in costly_meta.iter().enumerate() {
            let c = coeffs.get(nfree + i, 0);
            if k.is_zero(c) {
                continue;
            }
            let entry = legs.entry((*gi, *obj)).or_insert_with(|| vec![k.zero(); m.dim(*obj)]);
            for (e, u) in entry.iter_mut().zip(unit) {
                *e = k.add(e, &k.mul(c, u));
            }
        }
        let mut logged = Vec::new();
        for ((_, obj), v) in legs {
            logged.push((obj, v.iter().map(|e| k.format(e)).collect()));
            gens_add[obj] = gens_add[obj].sum(&Subspace::from_rows(&k, m.dim(obj), vec![v])).expect("ambient");
        }
        let grown: Vec<Subspace> = cur.iter().zip(&gens_add).map(|(a, b)| a.sum(b).expect("ambient")).collect();
        cur = m.restriction_closure(&grown);
        steps.push(ClosureStep { kind: StepKind::Pure, object: x, legs: logged, dims_after: cur.iter().map(Subspace::dim).collect() });
    }
}

/// Enlarges `M0 ⊆ F` until `Δ(M') ⊆ Im(M' ⊗ M' → F ⊗ F)`.
///
/// Each round takes the first basis vector `b` whose comultiplication is
/// not yet reached, reduces a representative of `Δb` modulo the relations
/// and the presentation of the current `M' ⊗ M'`, and adjoins the left and
/// right tensor legs of what remains (column and row spaces blockwise).
pub fn invariant_closure(f: &DayCoalgebra, m0: &[Subspace]) -> Result<Closure> {
    let fp = f.presheaf();
    let k = fp.field().clone();
    let c = fp.category().clone();
    let n = c.len();
    let ff = f.square();
    let mut cur = fp.restriction_closure(m0);
    let mut steps = Vec::new();
    loop {
        let (sub, inc) = fp.restrict(&cur)?;
        let ss = day_convolve(&sub, &sub)?;
        let img = tensor_maps(&ss, ff, &inc, &inc)?.image();
        let mut found = None;
        'search: for x in 0..n {
            for b in cur[x].basis_rows() {
                let d = f.delta().components[x].mul_vec(&b);
                if !img[x].contains_vector(&d) {
                    found = Some((x, d));
                    break 'search;
                }
            }
        }
        let Some((x, d)) = found else {
            return Ok(Closure { spaces: cur, steps });
        };
        let rep = ff.section(x).mul_vec(&d);
        // reduce modulo relations + the T-level image of T_{M'⊗M'}
        let tl = t_level(&ss, ff, &inc, &inc, x);
        let span = ff.relations(x).sum(&Subspace::column_span(&tl)).expect("ambient");
        let t = ff.t_dim(x);
        let flip = Matrix::from_fn(&k, t, t, |i, j| if i + j + 1 == t { k.one() } else { k.zero() });
        let (q, s) = span.map(&flip).quotient_map();
        let residue = flip.mul(&s).mul(&q).mul(&flip).mul_vec(&rep);

        let mut add = fp.zero_spaces();
        for xx in 0..n {
            for yy in 0..n {
                let h = c.hom_dim(x, c.tensor_obj(xx, yy));
                let (fx, fy) = (fp.dim(xx), fp.dim(yy));
                let off = ff.block_offset(x, xx, yy);
                for phi in 0..h {
                    let coeffs = Matrix::from_fn(&k, fx, fy, |i, j| residue[off + (phi * fx + i) * fy + j].clone());
                    if coeffs.is_zero() {
                        continue;
                    }
                    add[xx] = add[xx].sum(&coeffs.image()).expect("ambient");
                    add[yy] = add[yy].sum(&coeffs.transpose().image()).expect("ambient");
                }
            }
        }
        let logged = add
            .iter()
            .enumerate()
            .flat_map(|(obj, s)| s.basis_rows().into_iter().map(move |v| (obj, v)))
            .map(|(obj, v)| (obj, v.iter().map(|e| k.format(e)).collect()))
            .collect();
        let grown: Vec<Subspace> = cur.iter().zip(&add).map(|(a, b)| a.sum(b).expect("ambient")).collect();
        cur = fp.restriction_closure(&grown);
        steps.push(ClosureStep { kind: StepKind::Invariant, object: x, legs: logged, dims_after: cur.iter().map(Subspace::dim).collect() });
    }
}

/// A Day subcoalgebra of `F` with its inclusion.
#[derive(Clone, Debug)]
pub struct DaySubcoalgebra {
    pub spaces: Vec<Subspace>,
    pub coalgebra: DayCoalgebra,
    pub inclusion: NatTrans,
    pub trace: Vec<ClosureStep>,
}

/// The sub-presheaf on `spaces` as a Day subcoalgebra, provided
/// `M'⊗M' → F⊗F` is injective and `Δ(M')` lands in its image.
pub fn subcoalgebra_on(f: &DayCoalgebra, spaces: &[Subspace]) -> Result<(DayCoalgebra, NatTrans)> {
    let (sub, inc) = f.presheaf().restrict(spaces)?;
    let ss = day_convolve(&sub, &sub)?;
    let map = tensor_maps(&ss, f.square(), &inc, &inc)?;
    if !map.is_injective() {
        return Err(Error::NotASubcoalgebra { witness: vec!["M'⊗M' → F⊗F is not injective".into()] });
    }
    let n = f.category().len();
    let mut delta = Vec::with_capacity(n);
    for x in 0..n {
        let target = f.delta().components[x].mul(&inc.components[x]);
        let d = map.components[x]
            .solve(&target)
            .ok_or_else(|| Error::NotASubcoalgebra { witness: vec![format!("Δ leaves the subspace at object {x}")] })?;
        delta.push(d);
    }
    let eps = inc.then(f.epsilon());
    let sub_coalg = DayCoalgebra::new(sub, NatTrans { components: delta }, eps)?;
    Ok((sub_coalg, inc))
}

/// The Day subcoalgebra generated by `M0`: alternate purity (against the
/// ambient `F` and against the current stage) with invariance until
/// nothing changes. Purity against `F` makes `M'⊗F → F⊗F` injective and
/// purity against the stage makes `M'⊗M' → M'⊗F` injective, so together
/// `M'⊗M' → F⊗F` is injective and `Δ` restricts.
pub fn generated_day_subcoalgebra(f: &DayCoalgebra, m0: &[Subspace]) -> Result<DaySubcoalgebra> {
    let fp = f.presheaf();
    let mut cur = fp.restriction_closure(m0);
    let mut trace = Vec::new();
    loop {
        let before = cur.clone();
        let a = pure_closure(fp, &cur, fp)?;
        trace.extend(a.steps);
        let (stage, _) = fp.restrict(&a.spaces)?;
        let b = pure_closure(fp, &a.spaces, &stage)?;
        trace.extend(b.steps);
        let c = invariant_closure(f, &b.spaces)?;
        trace.extend(c.steps);
        cur = c.spaces;
        if cur == before {
            break;
        }
    }
    let (coalgebra, inclusion) = subcoalgebra_on(f, &cur)?;
    Ok(DaySubcoalgebra { spaces: cur, coalgebra, inclusion, trace })
}

/// Result of [`separate_by_generator`].
#[derive(Clone, Debug)]
pub struct Separation {
    pub object: usize,
    pub witness: Vec<Elem>,
    pub sub: DaySubcoalgebra,
}

/// For distinct morphisms `η, ψ: F1 → F2`, a small subcoalgebra of `F1` on
/// which they still differ: the one generated by a basis vector where they
/// disagree.
pub fn separate_by_generator(source: &DayCoalgebra, target: &DayCoalgebra, eta: &NatTrans, psi: &NatTrans) -> Result<Separation> {
    source.presheaf().same_category(target.presheaf())?;
    for (name, m) in [("η", eta), ("ψ", psi)] {
        let rep = source.morphism_report(target, m)?;
        let failed = rep.failures().next().map(|f| f.name.clone());
        if let Some(f) = failed {
            return Err(Error::Invalid(format!("{name} is not a coalgebra morphism: {f}")));
        }
    }
    let k = source.presheaf().field().clone();
    let mut found = None;
    'scan: for (x, (a, b)) in eta.components.iter().zip(&psi.components).enumerate() {
        for j in 0..a.cols() {
            if a.col(j) != b.col(j) {
                found = Some((x, j));
                break 'scan;
            }
        }
    }
    let (x, j) = found.ok_or(Error::MapsEqual)?;
    let mut witness = vec![k.zero(); source.presheaf().dim(x)];
    witness[j] = k.one();
    let sub = generated_day_subcoalgebra(source, &source.presheaf().point(x, &witness))?;
    let (re, rp) = (sub.inclusion.then(eta), sub.inclusion.then(psi));
    if re == rp {
        return Err(Error::ReportedFailure { check: "separation".into(), detail: "restrictions agree".into() });
    }
    Ok(Separation { object: x, witness, sub })
}
