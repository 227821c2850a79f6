use super::algebra::reduce_mod;
use super::{Coalgebra, CoalgebraMorphism};
use crate::error::{Error, Result};
use crate::linalg::{coequalizer, kron, Matrix, Subspace};

#[derive(Clone, Debug)]
pub struct DirectSum {
    pub coalgebra: Coalgebra,
    /// One inclusion per summand.
    pub injections: Vec<CoalgebraMorphism>,
    /// Linear projections onto the summands. These are not coalgebra maps:
    /// the direct sum is a coproduct.
    pub projections: Vec<Matrix>,
}

pub fn direct_sum(c: &Coalgebra, d: &Coalgebra) -> DirectSum {
    direct_sum_all(c.field(), &[c.clone(), d.clone()])
}

/// `C_1 ⊕ … ⊕ C_r`, summands in order.
pub fn direct_sum_all(field: &crate::field::Field, parts: &[Coalgebra]) -> DirectSum {
    let k = field;
    let n: usize = parts.iter().map(|c| c.dim()).sum();
    let mut delta = Matrix::zeros(k, n * n, n);
    let mut epsilon = Matrix::zeros(k, 1, n);
    let mut offset = 0;
    for c in parts {
        let m = c.dim();
        for j in 0..m {
            for a in 0..m {
                for b in 0..m {
                    let v = c.delta().get(a * m + b, j);
                    if !k.is_zero(v) {
                        delta.set((offset + a) * n + offset + b, offset + j, v.clone());
                    }
                }
            }
            epsilon.set(0, offset + j, c.epsilon().get(0, j).clone());
        }
        offset += m;
    }
    let sum = Coalgebra::new(k, delta, epsilon).expect("direct sum shapes");
    let mut injections = Vec::new();
    let mut projections = Vec::new();
    let mut offset = 0;
    for c in parts {
        let idx: Vec<usize> = (offset..offset + c.dim()).collect();
        let inj = Matrix::selection(k, n, &idx);
        projections.push(inj.transpose());
        injections.push(CoalgebraMorphism::new(c, &sum, inj).unwrap());
        offset += c.dim();
    }
    DirectSum { coalgebra: sum, injections, projections }
}

/// `C ⊗ D` in the basis `e_i ⊗ f_j` (index `i·m + j`).
pub fn tensor(c: &Coalgebra, d: &Coalgebra) -> Coalgebra {
    let k = c.field();
    let (n, m) = (c.dim(), d.dim());
    let nm = n * m;
    let mut delta = Matrix::zeros(k, nm * nm, nm);
    for i in 0..n {
        for j in 0..m {
            let col = i * m + j;
            for a in 0..n {
                for b in 0..n {
                    let x = c.delta().get(a * n + b, i);
                    if k.is_zero(x) {
                        continue;
                    }
                    for s in 0..m {
                        for t in 0..m {
                            let y = d.delta().get(s * m + t, j);
                            if k.is_zero(y) {
                                continue;
                            }
                            // (e_a ⊗ f_s) ⊗ (e_b ⊗ f_t)
                            let row = (a * m + s) * nm + (b * m + t);
                            let v = k.add(delta.get(row, col), &k.mul(x, y));
                            delta.set(row, col, v);
                        }
                    }
                }
            }
        }
    }
    let epsilon = kron(c.epsilon(), d.epsilon());
    Coalgebra::new(k, delta, epsilon).expect("tensor shapes")
}

#[derive(Clone, Debug)]
pub struct SubCoalgebra {
    pub space: Subspace,
    pub coalgebra: Coalgebra,
    pub inclusion: CoalgebraMorphism,
}

fn witness_strings(c: &Coalgebra, v: &[crate::field::Elem]) -> Vec<String> {
    v.iter().map(|e| c.field().format(e)).collect()
}

/// Subcoalgebra on `S` (RREF basis of `S` becomes the new basis).
pub fn sub(c: &Coalgebra, s: &Subspace) -> Result<SubCoalgebra> {
    let k = c.field();
    let n = c.dim();
    if s.ambient_dim() != n {
        return Err(Error::AmbientMismatch { left: n, right: s.ambient_dim() });
    }
    let d = s.dim();
    let incl = s.inclusion();
    let image = c.delta().mul(&incl);
    // the rows p_i·n + p_j of ι⊗ι form an identity block: read coordinates there
    let piv = s.pivots();
    let mut delta = Matrix::zeros(k, d * d, d);
    for col in 0..d {
        for i in 0..d {
            for j in 0..d {
                delta.set(i * d + j, col, image.get(piv[i] * n + piv[j], col).clone());
            }
        }
    }
    let rebuilt = kron(&incl, &incl).mul(&delta);
    if let Some(col) = super::first_differing_column(&rebuilt, &image) {
        return Err(Error::NotASubcoalgebra { witness: witness_strings(c, &incl.col(col)) });
    }
    let epsilon = c.epsilon().mul(&incl);
    let coalgebra = Coalgebra::new(k, delta, epsilon)?;
    let inclusion = CoalgebraMorphism::new(&coalgebra, c, incl)?;
    Ok(SubCoalgebra { space: s.clone(), coalgebra, inclusion })
}

#[derive(Clone, Debug)]
pub struct Quotient {
    pub coalgebra: Coalgebra,
    pub projection: CoalgebraMorphism,
    /// Right inverse of the projection (unit vectors at the kept coordinates).
    pub section: Matrix,
}

/// Projection `C → C/S` whose basis is the classes of the unit vectors at the
/// non-pivot columns of `S`.
fn quotient_projection(s: &Subspace) -> (Matrix, Matrix) {
    let k = s.field();
    let n = s.ambient_dim();
    let keep = s.complement_basis();
    let mut q = Matrix::zeros(k, keep.len(), n);
    for j in 0..n {
        let mut v = vec![k.zero(); n];
        v[j] = k.one();
        let r = reduce_mod(s, &v);
        for (row, &c) in keep.iter().enumerate() {
            q.set(row, j, r[c].clone());
        }
    }
    (q, Matrix::selection(k, n, &keep))
}

/// Induced coalgebra on the target of a surjection `q` whose kernel is a
/// coideal; `section` is any right inverse. Returns the offending kernel
/// column of `witness_basis` when the kernel is not a coideal.
fn induced_on_quotient(
    c: &Coalgebra,
    q: &Matrix,
    section: &Matrix,
    witness_basis: &Matrix,
) -> std::result::Result<Coalgebra, Vec<String>> {
    let k = c.field();
    let delta = kron(q, q).mul(c.delta()).mul(section);
    let epsilon = c.epsilon().mul(section);
    let lhs = delta.mul(q);
    let rhs = kron(q, q).mul(c.delta());
    let eps_ok = epsilon.mul(q) == *c.epsilon();
    if lhs != rhs || !eps_ok {
        // find a kernel vector that witnesses the failure
        let bad = kron(q, q).mul(c.delta()).mul(witness_basis);
        let bad_eps = c.epsilon().mul(witness_basis);
        let col = (0..witness_basis.cols())
            .find(|&j| !bad.col(j).iter().all(|e| k.is_zero(e)) || !k.is_zero(bad_eps.get(0, j)))
            .unwrap_or(0);
        let w = if witness_basis.cols() > 0 { witness_basis.col(col) } else { vec![] };
        return Err(w.iter().map(|e| k.format(e)).collect());
    }
    Ok(Coalgebra::new(k, delta, epsilon).expect("quotient shapes"))
}

/// `C/S` for a coideal `S` (`Δ(S) ⊆ S⊗C + C⊗S`, `ε(S) = 0`).
pub fn quotient(c: &Coalgebra, s: &Subspace) -> Result<Quotient> {
    if s.ambient_dim() != c.dim() {
        return Err(Error::AmbientMismatch { left: c.dim(), right: s.ambient_dim() });
    }
    let (q, section) = quotient_projection(s);
    let coalgebra = induced_on_quotient(c, &q, &section, &s.inclusion())
        .map_err(|witness| Error::NotACoideal { witness })?;
    let projection = CoalgebraMorphism::new(c, &coalgebra, q)?;
    Ok(Quotient { coalgebra, projection, section })
}

#[derive(Clone, Debug)]
pub struct Pushout {
    pub coalgebra: Coalgebra,
    pub from_b: CoalgebraMorphism,
    pub from_c: CoalgebraMorphism,
}

/// Pushout of `f: A → B` and `g: A → C`: the coequalizer of `i_B f` and
/// `i_C g` in `B ⊕ C` with the induced structure.
pub fn pushout(f: &CoalgebraMorphism, g: &CoalgebraMorphism) -> Result<Pushout> {
    if f.source() != g.source() {
        return Err(Error::Invalid("pushout legs must share their source".into()));
    }
    let (b, c) = (f.target(), g.target());
    let sum = direct_sum(b, c);
    let ib = sum.injections[0].matrix().mul(f.matrix());
    let ic = sum.injections[1].matrix().mul(g.matrix());
    let (q, _) = coequalizer(&ib, &ic)?;
    let section = q.right_inverse().ok_or_else(|| Error::Internal("coequalizer not surjective".into()))?;
    let diff_image = ib.sub(&ic).image();
    let coalgebra = induced_on_quotient(&sum.coalgebra, &q, &section, &diff_image.inclusion())
        .map_err(|_| Error::Internal("pushout relations do not form a coideal".into()))?;
    let from_b = CoalgebraMorphism::new(b, &coalgebra, q.mul(sum.injections[0].matrix()))?;
    let from_c = CoalgebraMorphism::new(c, &coalgebra, q.mul(sum.injections[1].matrix()))?;
    Ok(Pushout { coalgebra, from_b, from_c })
}

/// Smallest subcoalgebra containing `S`: the span of all middle tensor legs
/// of `(Δ⊗I)Δ(v)` for `v` in a basis of `S`.
pub fn generated_subcoalgebra(c: &Coalgebra, s: &Subspace) -> Result<SubCoalgebra> {
    let k = c.field();
    let n = c.dim();
    if s.ambient_dim() != n {
        return Err(Error::AmbientMismatch { left: n, right: s.ambient_dim() });
    }
    let d2 = c.delta2();
    let mut legs = Vec::new();
    for v in s.basis_rows() {
        let w = d2.mul_vec(&v);
        for a in 0..n {
            for cc in 0..n {
                let leg: Vec<_> = (0..n).map(|b| w[(a * n + b) * n + cc].clone()).collect();
                if leg.iter().any(|e| !k.is_zero(e)) {
                    legs.push(leg);
                }
            }
        }
    }
    let span = Subspace::from_rows(k, n, legs);
    sub(c, &span).map_err(|e| Error::Internal(format!("generated span is not a subcoalgebra: {e}")))
}
