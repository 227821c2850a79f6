use super::{local_decomposition, wedderburn_splitting, LocalDecomposition};
use crate::coalg::{
    diagonal_coalgebra, direct_sum_all, dual_algebra, sub, Coalgebra, CoalgebraMorphism, SubCoalgebra,
};
use crate::error::{Error, Result};
use crate::field::{Elem, FactorConfig};
use crate::linalg::{Matrix, Subspace};
use crate::report::CheckReport;

/// The étale part `Ét(C)`, its simple summands and the natural splitting.
#[derive(Clone, Debug)]
pub struct EtaleData {
    pub coalgebra: Coalgebra,
    /// Local decomposition of `C^∨`; simple `i` is dual to residue field `i`.
    pub decomposition: LocalDecomposition,
    pub simples: Vec<SubCoalgebra>,
    /// `Ét(C) ⊆ C`, the annihilator of the radical of `C^∨`.
    pub space: Subspace,
    pub etale: Coalgebra,
    pub inclusion: CoalgebraMorphism,
    pub retraction: CoalgebraMorphism,
}

fn span_of_images(k: &crate::field::Field, n: usize, maps: &[&Matrix]) -> Subspace {
    let rows: Vec<Vec<Elem>> = maps.iter().flat_map(|m| m.transpose().to_rows()).collect();
    Subspace::from_rows(k, n, rows)
}

/// Ét(C) with inclusion and retraction, computed on the dual algebra.
///
/// Simple subcoalgebras are the annihilators of the maximal ideals of `C^∨`,
/// Ét(C) is the annihilator of its radical, and the retraction is the
/// transpose of the Wedderburn section `C^∨/rad → C^∨`.
pub fn etale_part(c: &Coalgebra, cfg: &FactorConfig) -> Result<EtaleData> {
    let k = c.field();
    let n = c.dim();
    let a = dual_algebra(c);
    let dec = local_decomposition(&a, cfg)?;
    let comps = &dec.components;
    let rad_globals: Vec<Matrix> =
        comps.iter().map(|ci| ci.embedding.mul(&ci.radical.inclusion())).collect();

    let mut simples = Vec::with_capacity(comps.len());
    for i in 0..comps.len() {
        let mut gens: Vec<&Matrix> = vec![&rad_globals[i]];
        gens.extend(comps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, cj)| &cj.embedding));
        let maximal = span_of_images(k, n, &gens);
        simples.push(sub(c, &maximal.annihilator()).map_err(internal)?);
    }

    let radical = span_of_images(k, n, &rad_globals.iter().collect::<Vec<_>>());
    let space = radical.annihilator();
    let et = sub(c, &space).map_err(internal)?;
    let iota = et.inclusion.matrix().clone();

    // Wedderburn section W ⊆ A, complementary to the radical
    let mut w_cols: Vec<Vec<Elem>> = Vec::new();
    for ci in comps {
        let split = wedderburn_splitting(ci)?;
        let global = ci.embedding.mul(&split.embedding);
        w_cols.extend((0..global.cols()).map(|j| global.col(j)));
    }
    let w = Matrix::from_columns(k, n, &w_cols);
    let e = space.dim();
    let r = if e == 0 {
        Matrix::zeros(k, 0, n)
    } else {
        let square = iota.transpose().mul(&w);
        let inv = square
            .inverse()
            .ok_or_else(|| Error::Internal("Wedderburn section is not complementary".into()))?;
        w.mul(&inv).transpose()
    };
    let retraction = CoalgebraMorphism::new(c, &et.coalgebra, r)?;
    Ok(EtaleData {
        coalgebra: c.clone(),
        decomposition: dec,
        simples,
        space,
        etale: et.coalgebra,
        inclusion: et.inclusion,
        retraction,
    })
}

fn internal(e: Error) -> Error {
    Error::Internal(format!("dual decomposition produced a non-subcoalgebra: {e}"))
}

impl EtaleData {
    /// `r∘ι = id`, both maps valid, and `Ét(Ét(C)) = Ét(C)`.
    pub fn verify(&self, cfg: &FactorConfig) -> Result<CheckReport> {
        let mut rep = CheckReport::new();
        let k = self.coalgebra.field();
        rep.record("inclusion is a morphism", self.inclusion.is_valid(), || "ι fails".into());
        rep.record("retraction is a morphism", self.retraction.is_valid(), || "r fails".into());
        let ri = self.retraction.matrix().mul(self.inclusion.matrix());
        rep.record("r∘ι = id", ri == Matrix::identity(k, self.etale.dim()), || format!("{:?}", ri.to_strings()));
        let simples_dim: usize = self.simples.iter().map(|s| s.space.dim()).sum();
        rep.record("Ét is the direct sum of the simples", simples_dim == self.space.dim(), || {
            format!("Σ dim simples = {simples_dim}, dim Ét = {}", self.space.dim())
        });
        let again = etale_part(&self.etale, cfg)?;
        rep.record("Ét idempotent", again.space.is_full(), || "Ét(Ét(C)) ≠ Ét(C)".into());
        Ok(rep)
    }

    /// Every residue field of `C^∨` is the base field.
    pub fn is_split(&self) -> bool {
        self.decomposition.is_split()
    }
}

/// `C` as the direct sum of its irreducible components.
#[derive(Clone, Debug)]
pub struct IrreducibleComponents {
    pub components: Vec<SubCoalgebra>,
    /// `⊕ components → C`, an isomorphism.
    pub iso: CoalgebraMorphism,
}

/// Components are the annihilators of the complementary ideals `(1 − e_i)A`
/// of the dual algebra, each dual to one local factor.
pub fn irreducible_components(c: &Coalgebra, cfg: &FactorConfig) -> Result<IrreducibleComponents> {
    let k = c.field();
    let n = c.dim();
    let dec = local_decomposition(&dual_algebra(c), cfg)?;
    let comps = &dec.components;
    let mut components = Vec::with_capacity(comps.len());
    for i in 0..comps.len() {
        let others: Vec<&Matrix> =
            comps.iter().enumerate().filter(|(j, _)| *j != i).map(|(_, cj)| &cj.embedding).collect();
        let s = span_of_images(k, n, &others).annihilator();
        components.push(sub(c, &s).map_err(internal)?);
    }
    let parts: Vec<Coalgebra> = components.iter().map(|s| s.coalgebra.clone()).collect();
    let sum = direct_sum_all(k, &parts).coalgebra;
    let mut m = Matrix::zeros(k, n, 0);
    for s in &components {
        m = m.hstack(s.inclusion.matrix());
    }
    let iso = CoalgebraMorphism::new(&sum, c, m)?;
    Ok(IrreducibleComponents { components, iso })
}

impl IrreducibleComponents {
    pub fn is_isomorphism(&self) -> bool {
        self.iso.is_valid() && self.iso.matrix().inverse().is_some()
    }
}

/// Group-like elements `Δc = c⊗c`, `εc = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupLikeSet {
    pub coalgebra: Coalgebra,
    pub elements: Vec<Vec<Elem>>,
}

impl GroupLikeSet {
    /// Counit of `k^δ ⊣ (−)^gp`: `k^δ[C^gp] → C`, `e_g ↦ g`.
    pub fn counit(&self) -> CoalgebraMorphism {
        let k = self.coalgebra.field();
        let src = diagonal_coalgebra(k, self.elements.len());
        let m = Matrix::from_columns(k, self.coalgebra.dim(), &self.elements);
        CoalgebraMorphism::new(&src, &self.coalgebra, m).expect("counit shape")
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

/// One group-like per local factor of `C^∨` with residue field `k`: the
/// character `A ↠ A_i ↠ A_i/m_i = k`, read as a vector of `C`.
pub fn group_likes(c: &Coalgebra, cfg: &FactorConfig) -> Result<GroupLikeSet> {
    let k = c.field();
    let dec = local_decomposition(&dual_algebra(c), cfg)?;
    let mut elements = Vec::new();
    for ci in dec.components.iter().filter(|ci| ci.residue.degree() == 1) {
        let chi = ci.residue_map.mul(&ci.projection);
        let u = ci.residue_map.mul_vec(ci.algebra.unit())[0].clone();
        let g: Vec<Elem> = chi.row(0).iter().map(|x| k.div(x, &u)).collect::<Result<_>>()?;
        if !c.is_group_like(&g) {
            return Err(Error::Internal("residue character is not group-like".into()));
        }
        elements.push(g);
    }
    Ok(GroupLikeSet { coalgebra: c.clone(), elements })
}

/// Unit of the adjunction on a set of size `n`: `x ↦ e_x` must be a bijection
/// onto the group-likes of `k^δ[X]`.
pub fn gp_unit_checks(field: &crate::field::Field, n: usize, cfg: &FactorConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let d = diagonal_coalgebra(field, n);
    let mut gl = group_likes(&d, cfg)?.elements;
    gl.sort();
    let mut basis: Vec<Vec<Elem>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
        .collect();
    basis.sort();
    rep.record("unit X → (k^δ[X])^gp bijective", gl == basis, || {
        format!("{} group-likes for |X| = {n}", gl.len())
    });
    Ok(rep)
}

/// Counit factorization through Ét, the iso `k^δ[C^gp] ≅ Ét(C)` in the split
/// case, and both triangle identities.
pub fn gp_adjunction_checks(c: &Coalgebra, cfg: &FactorConfig) -> Result<CheckReport> {
    let k = c.field();
    let mut rep = CheckReport::new();
    let gl = group_likes(c, cfg)?;
    let et = etale_part(c, cfg)?;
    let counit = gl.counit();
    rep.record("counit is a morphism", counit.is_valid(), || "k^δ[C^gp] → C fails".into());
    rep.record("counit factors through Ét", et.space.contains_columns(counit.matrix()), || {
        "a group-like lies outside Ét(C)".into()
    });
    let expected = et.decomposition.components.iter().filter(|c| c.residue.degree() == 1).count();
    rep.record("one group-like per rational point", gl.len() == expected, || {
        format!("{} group-likes, {expected} residue fields equal to k", gl.len())
    });
    if et.is_split() {
        let through = et.retraction.matrix().mul(counit.matrix());
        let iso = through.inverse().is_some() && gl.len() == et.etale.dim();
        rep.record("k^δ[C^gp] ≅ Ét(C)", iso, || "r∘counit is not invertible".into());
        let back = et.inclusion.matrix().mul(&through);
        rep.record("retraction retracts the counit", back == *counit.matrix(), || {
            "ι∘r∘counit ≠ counit".into()
        });
        let m = CoalgebraMorphism::new(counit.source(), &et.etale, through)?;
        rep.record("k^δ[C^gp] → Ét(C) is a morphism", m.is_valid(), || "not a morphism".into());
    } else {
        rep.skip("k^δ[C^gp] ≅ Ét(C)", "not split");
    }
    // ε_{k^δ X} ∘ k^δ(η_X) = id with X = C^gp
    let x = gl.len();
    let kx = diagonal_coalgebra(k, x);
    let gl_kx = group_likes(&kx, cfg)?;
    let eta: Vec<usize> = (0..x)
        .map(|i| gl_kx.elements.iter().position(|g| k.is_one(&g[i]) && g.iter().filter(|e| !k.is_zero(e)).count() == 1))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::Internal("unit misses a point".into()))?;
    let k_eta = Matrix::selection(k, x, &eta);
    let tri1 = gl_kx.counit().matrix().mul(&k_eta);
    rep.record("triangle ε∘k^δ(η) = id", tri1.is_identity() || x == 0, || "first triangle".into());
    // (ε_C)^gp ∘ η_{C^gp} = id: g ↦ e_g ↦ counit(e_g) = g
    let tri2 = (0..x).all(|i| counit.matrix().col(i) == gl.elements[i]);
    rep.record("triangle ε^gp∘η = id", tri2, || "second triangle".into());
    Ok(rep)
}

/// Naturality of Ét, of irreducible components and of the retraction
/// along a coalgebra morphism `φ: C → D`.
pub fn naturality_suite(phi: &CoalgebraMorphism, cfg: &FactorConfig) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let (c, d) = (phi.source(), phi.target());
    let f = phi.matrix();
    let et_c = etale_part(c, cfg)?;
    let et_d = etale_part(d, cfg)?;
    let image = f.mul(et_c.inclusion.matrix());
    let ok = et_d.space.contains_columns(&image);
    rep.record("φ(Ét C) ⊆ Ét D", ok, || witness(&image, &et_d.space));
    if !ok {
        return Ok(rep);
    }
    let comps_c = irreducible_components(c, cfg)?;
    let comps_d = irreducible_components(d, cfg)?;
    for (i, comp) in comps_c.components.iter().enumerate() {
        // the simple inside component i, pushed forward
        let simple = et_c
            .simples
            .iter()
            .find(|s| comp.space.contains(&s.space).unwrap_or(false))
            .ok_or_else(|| Error::Internal("component without simple".into()))?;
        let simple_img = f.mul(simple.inclusion.matrix());
        let target = comps_d.components.iter().find(|t| t.space.contains_columns(&simple_img));
        let comp_img = f.mul(comp.inclusion.matrix());
        let ok = target.is_some_and(|t| t.space.contains_columns(&comp_img));
        rep.record(format!("component {i} preserved"), ok, || "image leaves the target component".into());
    }
    let restricted = et_d
        .space
        .coordinates_of_columns(&image)
        .ok_or_else(|| Error::Internal("coordinates of Ét image".into()))?;
    let lhs = et_d.retraction.matrix().mul(f);
    let rhs = restricted.mul(et_c.retraction.matrix());
    rep.record("r_D∘φ = φ|Ét∘r_C", lhs == rhs, || {
        let col = (0..lhs.cols()).find(|&j| lhs.col(j) != rhs.col(j)).unwrap_or(0);
        format!("differs on basis vector {col}")
    });
    Ok(rep)
}

fn witness(m: &Matrix, s: &Subspace) -> String {
    let k = m.field();
    (0..m.cols())
        .map(|j| m.col(j))
        .find(|v| !s.contains_vector(v))
        .map(|v| v.iter().map(|e| k.format(e)).collect::<Vec<_>>().join(" "))
        .unwrap_or_default()
}
