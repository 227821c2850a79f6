use super::{fixed_field, orbits_and_stabilizers, FiniteGSet, FixedField, GaloisDatum, Orbit};
use crate::coalg::{direct_sum_all, dual_algebra, dual_coalgebra, tensor, ArtinAlgebra, Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::field::{Elem, FactorConfig, Poly};
use crate::linalg::{kron_vec, Matrix, Subspace};
use crate::report::CheckReport;
use crate::structure::{etale_part, local_decomposition};

/// `k̄^∨[X]_G = (Map_G(X, L))^∨`, one summand `(L^{H})^∨` per orbit with `H`
/// the stabilizer of the orbit representative.
#[derive(Clone, Debug)]
pub struct Kbar {
    pub gset: FiniteGSet,
    pub orbits: Vec<Orbit>,
    pub fields: Vec<FixedField>,
    /// Start of each orbit's block of coordinates.
    pub offsets: Vec<usize>,
    pub coalgebra: Coalgebra,
}

pub fn kbar_functor(d: &GaloisDatum, x: &FiniteGSet, cfg: &FactorConfig) -> Result<Kbar> {
    let orbits = orbits_and_stabilizers(d, x)?;
    let fields = orbits
        .iter()
        .map(|o| fixed_field(d, &o.stabilizer, cfg))
        .collect::<Result<Vec<_>>>()?;
    let mut offsets = Vec::with_capacity(fields.len());
    let mut total = 0;
    for f in &fields {
        offsets.push(total);
        total += f.degree();
    }
    let parts: Vec<Coalgebra> = fields.iter().map(|f| dual_coalgebra(f.algebra())).collect();
    let coalgebra = direct_sum_all(d.base(), &parts).coalgebra;
    Ok(Kbar { gset: x.clone(), orbits, fields, offsets, coalgebra })
}

impl Kbar {
    pub fn dim(&self) -> usize {
        self.coalgebra.dim()
    }

    /// The orbit containing `x`, the position of `x` in it, and `g` with `g·rep = x`.
    fn locate(&self, x: usize) -> (usize, usize) {
        self.orbits
            .iter()
            .enumerate()
            .find_map(|(o, orb)| orb.locate(x).map(|(_, g)| (o, g)))
            .expect("point lies in an orbit")
    }

    /// `Map_G(X, L) → L`, `F ↦ F(x)`: `σ_g ∘ incl ∘ proj_O` for `x = g·rep`.
    pub fn evaluation(&self, d: &GaloisDatum, x: usize) -> Matrix {
        let (o, g) = self.locate(x);
        let f = &self.fields[o];
        let mut proj = Matrix::zeros(d.base(), f.degree(), self.dim());
        for i in 0..f.degree() {
            proj.set(i, self.offsets[o] + i, d.base().one());
        }
        d.automorphism(g).mul(&f.embedding).mul(&proj)
    }
}

/// Coalgebra map `k̄^∨[X] → k̄^∨[Y]` induced by an equivariant `f: X → Y`:
/// the transpose of `Map_G(Y, L) → Map_G(X, L)`, `F ↦ F∘f`.
pub fn kbar_map(d: &GaloisDatum, kx: &Kbar, ky: &Kbar, f: &[usize]) -> Result<CoalgebraMorphism> {
    if !super::is_equivariant(d, &kx.gset, &ky.gset, f) {
        return Err(Error::InvalidAction("map is not equivariant".into()));
    }
    let k = d.base();
    let mut alg = Matrix::zeros(k, kx.dim(), ky.dim());
    for (o, orb) in kx.orbits.iter().enumerate() {
        // F∘f at rep(o) equals evaluation of F at f(rep)
        let ev = ky.evaluation(d, f[orb.rep()]);
        let block = kx.fields[o]
            .coordinates(&ev)
            .ok_or_else(|| Error::Internal("evaluation leaves the fixed field".into()))?;
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                alg.set(kx.offsets[o] + i, j, block.get(i, j).clone());
            }
        }
    }
    CoalgebraMorphism::new(&kx.coalgebra, &ky.coalgebra, alg.transpose())
}

/// Which algebra maps `C^∨ → L^H` count as points of `R(C)(G/H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum HomMode {
    /// Surjections, i.e. embeddings `(L^H)^∨ → C`.
    Embeddings,
    /// All algebra maps.
    All,
}

/// Roots in the field `F` of an irreducible separable `p` over the base.
///
/// Each root `r` corresponds to a factor of `F ⊗ k[t]/(p)` isomorphic to `F`
/// via `ℓ ↦ e·(ℓ⊗1)`; the root is the preimage of `e·(1⊗t)`.
pub fn roots_in_field(f: &ArtinAlgebra, p: &Poly, cfg: &FactorConfig) -> Result<Vec<Vec<Elem>>> {
    let k = f.field();
    let p = p.monic();
    if p.deg() == 1 {
        let c = k.neg(&p.coeff(0));
        return Ok(vec![f.scale(&c, f.unit())]);
    }
    let kp = ArtinAlgebra::quotient_ring(&p)?;
    let t = dual_algebra(&tensor(&dual_coalgebra(f), &dual_coalgebra(&kp)));
    let dec = local_decomposition(&t, cfg)?;
    let n = f.dim();
    let mut roots = Vec::new();
    for c in dec.components.iter().filter(|c| c.algebra.dim() == n) {
        let e = &c.idempotent;
        let cols: Vec<Vec<Elem>> =
            (0..n).map(|i| t.mul(e, &kron_vec(k, &f.basis_vector(i), kp.unit()))).collect();
        let phi = Matrix::from_columns(k, t.dim(), &cols);
        let target = t.mul(e, &kron_vec(k, f.unit(), &kp.basis_vector(1)));
        let x = phi
            .solve(&Matrix::column(k, target))
            .ok_or_else(|| Error::Internal("factor is not a copy of F".into()))?
            .col(0);
        if !f.is_zero_elem(&f.eval_poly(&p, &x)) {
            return Err(Error::Internal("recovered element is not a root".into()));
        }
        roots.push(x);
    }
    roots.sort();
    Ok(roots)
}

/// Algebra maps `C^∨ → L^H` (in `L^H` coordinates), sorted by entries.
pub fn right_adjoint_r(
    d: &GaloisDatum,
    c: &Coalgebra,
    h: &[usize],
    mode: HomMode,
    cfg: &FactorConfig,
) -> Result<Vec<Matrix>> {
    let fixed = fixed_field(d, h, cfg)?;
    algebra_maps(c, fixed.algebra(), mode, cfg)
}

/// Algebra maps from `C^∨` into a field `F`: one per component `i` and root
/// of the residue minimal polynomial `p_i` in `F`.
fn algebra_maps(c: &Coalgebra, f: &ArtinAlgebra, mode: HomMode, cfg: &FactorConfig) -> Result<Vec<Matrix>> {
    let k = c.field();
    let a = dual_algebra(c);
    let dec = local_decomposition(&a, cfg)?;
    let mut out = Vec::new();
    for comp in &dec.components {
        let res = &comp.residue;
        let b = &res.as_algebra;
        let dd = b.dim();
        // residue basis in terms of powers of the primitive element
        let mut powers = Vec::with_capacity(dd);
        let mut cur = b.unit().to_vec();
        for _ in 0..dd {
            powers.push(cur.clone());
            cur = b.mul(&cur, &res.primitive_element);
        }
        let pmat = Matrix::from_columns(k, dd, &powers);
        let pinv = pmat.inverse().ok_or_else(|| Error::Internal("primitive element does not generate".into()))?;
        let to_res = comp.residue_map.mul(&comp.projection);
        for r in roots_in_field(f, &res.minimal_poly, cfg)? {
            let mut rp = Vec::with_capacity(dd);
            let mut cur = f.unit().to_vec();
            for _ in 0..dd {
                rp.push(cur.clone());
                cur = f.mul(&cur, &r);
            }
            let psi = Matrix::from_columns(k, f.dim(), &rp).mul(&pinv);
            let m = psi.mul(&to_res);
            if mode == HomMode::Embeddings && m.rank() != f.dim() {
                continue;
            }
            out.push(m);
        }
    }
    out.sort_by(|x, y| x.entries().cmp(y.entries()));
    Ok(out)
}

/// `R(C)` as a G-set: all algebra maps `C^∨ → L` with `g·φ = σ_g∘φ`. Its
/// `H`-fixed points are the maps into `L^H`, and the points with stabilizer
/// exactly `H` are the surjections onto `L^H`.
#[derive(Clone, Debug)]
pub struct RSet {
    pub maps: Vec<Matrix>,
    pub gset: FiniteGSet,
}

pub fn r_gset(d: &GaloisDatum, c: &Coalgebra, cfg: &FactorConfig) -> Result<RSet> {
    let maps = algebra_maps(c, d.field(), HomMode::All, cfg)?;
    let action = (0..d.order())
        .map(|g| {
            maps.iter()
                .map(|m| {
                    let moved = d.automorphism(g).mul(m);
                    maps.iter().position(|x| *x == moved).ok_or_else(|| Error::Internal("R(C) not G-stable".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let gset = FiniteGSet { size: maps.len(), action };
    gset.validate(d)?;
    Ok(RSet { maps, gset })
}

/// Unit `X → R(k̄^∨[X])`, `x ↦ ev_x`, as indices into `r.maps`.
pub fn unit_map(d: &GaloisDatum, kx: &Kbar, r: &RSet) -> Result<Vec<usize>> {
    (0..kx.gset.size)
        .map(|x| {
            let ev = kx.evaluation(d, x);
            r.maps.iter().position(|m| *m == ev).ok_or_else(|| Error::Internal(format!("ev_{x} not found")))
        })
        .collect()
}

/// Counit `k̄^∨[R(C)] → C`, dual to `C^∨ → Map_G(R(C), L)`, `a ↦ (φ ↦ φ(a))`.
pub fn counit(d: &GaloisDatum, c: &Coalgebra, r: &RSet, kr: &Kbar) -> Result<CoalgebraMorphism> {
    let k = d.base();
    let mut alg = Matrix::zeros(k, kr.dim(), c.dim());
    for (o, orb) in kr.orbits.iter().enumerate() {
        let block = kr.fields[o]
            .coordinates(&r.maps[orb.rep()])
            .ok_or_else(|| Error::Internal("representative leaves its fixed field".into()))?;
        for i in 0..block.rows() {
            for j in 0..block.cols() {
                alg.set(kr.offsets[o] + i, j, block.get(i, j).clone());
            }
        }
    }
    CoalgebraMorphism::new(&kr.coalgebra, c, alg.transpose())
}

/// Unit bijectivity and equivariance for `X`, counit validity and image for
/// `C`, and both triangle identities.
pub fn adjunction_checks(
    d: &GaloisDatum,
    x: &FiniteGSet,
    c: &Coalgebra,
    cfg: &FactorConfig,
) -> Result<CheckReport> {
    let mut rep = CheckReport::new();
    let kx = kbar_functor(d, x, cfg)?;
    rep.record("k̄^∨[X] is a coalgebra", kx.coalgebra.is_valid(), || "axioms fail".into());
    let r_kx = r_gset(d, &kx.coalgebra, cfg)?;
    let eta = unit_map(d, &kx, &r_kx)?;
    let mut sorted = eta.clone();
    sorted.sort();
    sorted.dedup();
    rep.record("unit bijective", sorted.len() == x.size && r_kx.maps.len() == x.size, || {
        format!("|X| = {}, |R(k̄^∨[X])| = {}", x.size, r_kx.maps.len())
    });
    let equivariant = (0..d.order())
        .all(|g| (0..x.size).all(|p| eta[x.action[g][p]] == r_kx.gset.action[g][eta[p]]));
    rep.record("unit equivariant", equivariant, || "η(g·x) ≠ g·η(x)".into());

    // first triangle: ε_{k̄X} ∘ k̄(η) = id
    let k_rkx = kbar_functor(d, &r_kx.gset, cfg)?;
    let k_eta = kbar_map(d, &kx, &k_rkx, &eta)?;
    let eps_kx = counit(d, &kx.coalgebra, &r_kx, &k_rkx)?;
    let tri = eps_kx.matrix().mul(k_eta.matrix());
    rep.record("triangle ε∘k̄(η) = id", tri.is_identity() || kx.dim() == 0, || "first triangle".into());

    let r = r_gset(d, c, cfg)?;
    let kr = kbar_functor(d, &r.gset, cfg)?;
    let eps = counit(d, c, &r, &kr)?;
    rep.record("counit is a morphism", eps.is_valid(), || "k̄^∨[R(C)] → C fails".into());
    let image = eps.image();
    let et = etale_part(c, cfg)?;
    // simples whose residue field embeds in L
    let mut reachable = Subspace::zero(c.field(), c.dim());
    let mut all_embed = true;
    for (s, comp) in et.simples.iter().zip(&et.decomposition.components) {
        if roots_in_field(d.field(), &comp.residue.minimal_poly, cfg)?.is_empty() {
            all_embed = false;
        } else {
            reachable = reachable.sum(&s.space)?;
        }
    }
    rep.record("counit image = Ét of the L-split part", image == reachable, || {
        format!("image dim {}, expected {}", image.dim(), reachable.dim())
    });
    if all_embed {
        rep.record("counit image = Ét(C)", image == et.space, || {
            format!("image dim {}, Ét dim {}", image.dim(), et.space.dim())
        });
    } else {
        rep.skip("counit image = Ét(C)", "a residue field of C^∨ does not embed in L");
    }

    // second triangle: R(ε) ∘ η_{R(C)} = id, i.e. ev_φ ∘ ε^∨ = φ
    let eta_r = unit_map(d, &kr, &r_gset(d, &kr.coalgebra, cfg)?)?;
    let ok = eta_r.len() == r.maps.len()
        && (0..r.maps.len()).all(|i| kr.evaluation(d, i).mul(&eps.matrix().transpose()) == r.maps[i]);
    rep.record("triangle R(ε)∘η = id", ok, || "second triangle".into());
    Ok(rep)
}
