//! Exhaustive reference computations over small prime fields.
//!
//! Everything here uses its own `u64` modular arithmetic and plain
//! enumeration, independent of the elimination code in [`crate::linalg`], so
//! it can serve as an oracle for the structural algorithms.

use crate::coalg::Coalgebra;
use crate::field::{Elem, FieldSpec};

/// A coalgebra over `𝔽_p` with raw residues.
#[derive(Clone, Debug)]
pub struct RawCoalgebra {
    pub p: u64,
    pub n: usize,
    /// `delta[j]` is `Δ(e_j)` as a length-`n²` vector.
    pub delta: Vec<Vec<u64>>,
    pub eps: Vec<u64>,
}

fn residue(e: &Elem) -> u64 {
    match e {
        Elem::Mod(v) => *v,
        _ => panic!("prime-field element expected"),
    }
}

impl RawCoalgebra {
    /// `None` unless the coalgebra lives over a prime field.
    pub fn from_coalgebra(c: &Coalgebra) -> Option<Self> {
        let FieldSpec::Prime { p } = c.field().spec() else {
            return None;
        };
        let n = c.dim();
        let delta = (0..n).map(|j| c.delta().col(j).iter().map(residue).collect()).collect();
        let eps = c.epsilon().row(0).iter().map(residue).collect();
        Some(RawCoalgebra { p: *p, n, delta, eps })
    }

    /// `Δ(v)`
    pub fn apply_delta(&self, v: &[u64]) -> Vec<u64> {
        let mut out = vec![0u64; self.n * self.n];
        for (j, &c) in v.iter().enumerate() {
            if c == 0 {
                continue;
            }
            for (o, d) in out.iter_mut().zip(&self.delta[j]) {
                *o = (*o + c * d) % self.p;
            }
        }
        out
    }

    pub fn apply_eps(&self, v: &[u64]) -> u64 {
        v.iter().zip(&self.eps).fold(0, |acc, (a, b)| (acc + a * b) % self.p)
    }
}

pub fn tensor_vec(p: u64, u: &[u64], v: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(u.len() * v.len());
    for a in u {
        for b in v {
            out.push(a * b % p);
        }
    }
    out
}

/// All vectors of `𝔽_p^n` in lexicographic order (first coordinate slowest).
pub fn all_vectors(p: u64, n: usize) -> Vec<Vec<u64>> {
    let total = (p as usize).pow(n as u32);
    (0..total)
        .map(|mut i| {
            let mut v = vec![0u64; n];
            for slot in v.iter_mut().rev() {
                *slot = (i % p as usize) as u64;
                i /= p as usize;
            }
            v
        })
        .collect()
}

fn inv(a: u64, p: u64) -> u64 {
    // Fermat
    let mut acc = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

/// Reduced row echelon basis of the span of `rows`.
pub fn rref_rows(p: u64, rows: &[Vec<u64>], n: usize) -> Vec<Vec<u64>> {
    let mut a: Vec<Vec<u64>> = rows.to_vec();
    let mut r = 0;
    for c in 0..n {
        let Some(piv) = (r..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let iv = inv(a[r][c], p);
        for x in a[r].iter_mut() {
            *x = *x * iv % p;
        }
        let pr = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let f = row[c];
                for (x, y) in row.iter_mut().zip(&pr) {
                    *x = (*x + p * p - f * y) % p;
                }
            }
        }
        r += 1;
    }
    a.truncate(r);
    a
}

pub fn in_span(p: u64, basis: &[Vec<u64>], v: &[u64]) -> bool {
    let n = v.len();
    let mut rows = basis.to_vec();
    let before = rref_rows(p, &rows, n).len();
    rows.push(v.to_vec());
    rref_rows(p, &rows, n).len() == before
}

/// Every subspace of `𝔽_p^n`, each as its RREF basis.
pub fn all_subspaces(p: u64, n: usize) -> Vec<Vec<Vec<u64>>> {
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let pivots: Vec<usize> = (0..n).filter(|i| mask & (1 << i) != 0).collect();
        // free slots: (row r, column c) with c > pivot r and c not a pivot
        let mut slots = Vec::new();
        for (r, &pc) in pivots.iter().enumerate() {
            for c in pc + 1..n {
                if !pivots.contains(&c) {
                    slots.push((r, c));
                }
            }
        }
        for fill in all_vectors(p, slots.len()) {
            let mut rows = vec![vec![0u64; n]; pivots.len()];
            for (r, &pc) in pivots.iter().enumerate() {
                rows[r][pc] = 1;
            }
            for (&(r, c), &v) in slots.iter().zip(&fill) {
                rows[r][c] = v;
            }
            out.push(rows);
        }
    }
    out
}

/// Whether `Δ(S) ⊆ S⊗S`.
pub fn is_subcoalgebra(c: &RawCoalgebra, basis: &[Vec<u64>]) -> bool {
    let mut tensor_basis = Vec::new();
    for u in basis {
        for v in basis {
            tensor_basis.push(tensor_vec(c.p, u, v));
        }
    }
    basis.iter().all(|b| in_span(c.p, &tensor_basis, &c.apply_delta(b)))
}

pub fn subcoalgebras(c: &RawCoalgebra) -> Vec<Vec<Vec<u64>>> {
    all_subspaces(c.p, c.n).into_iter().filter(|s| is_subcoalgebra(c, s)).collect()
}

fn spans_all(p: u64, big: &[Vec<u64>], small: &[Vec<u64>]) -> bool {
    small.iter().all(|v| in_span(p, big, v))
}

/// Intersection of all subcoalgebras containing `s` (RREF basis), found as
/// the unique smallest one; panics if the minimum were not unique.
pub fn minimal_subcoalgebra_containing(c: &RawCoalgebra, s: &[Vec<u64>]) -> Vec<Vec<u64>> {
    let containing: Vec<_> = subcoalgebras(c)
        .into_iter()
        .filter(|d| spans_all(c.p, d, s))
        .collect();
    let min_dim = containing.iter().map(|d| d.len()).min().expect("C itself contains S");
    let minimal: Vec<_> = containing.iter().filter(|d| d.len() == min_dim).collect();
    assert_eq!(minimal.len(), 1, "intersection of subcoalgebras must be a subcoalgebra");
    let m = minimal[0].clone();
    assert!(containing.iter().all(|d| spans_all(c.p, d, &m)));
    m
}

/// Nonzero subcoalgebras without proper nonzero subcoalgebras.
pub fn simple_subcoalgebras(c: &RawCoalgebra) -> Vec<Vec<Vec<u64>>> {
    let all = subcoalgebras(c);
    all.iter()
        .filter(|s| !s.is_empty())
        .filter(|s| {
            !all.iter().any(|t| !t.is_empty() && t.len() < s.len() && spans_all(c.p, s, t))
        })
        .cloned()
        .collect()
}

/// Sum of all simple subcoalgebras (RREF basis).
pub fn etale_part(c: &RawCoalgebra) -> Vec<Vec<u64>> {
    let rows: Vec<Vec<u64>> = simple_subcoalgebras(c).into_iter().flatten().collect();
    rref_rows(c.p, &rows, c.n)
}

/// All `c` with `Δc = c⊗c` and `εc = 1`.
pub fn group_likes(c: &RawCoalgebra) -> Vec<Vec<u64>> {
    all_vectors(c.p, c.n)
        .into_iter()
        .filter(|v| c.apply_eps(v) == 1 && c.apply_delta(v) == tensor_vec(c.p, v, v))
        .collect()
}

/// Matrix (rows × cols, row-major) applied to a vector.
fn apply(p: u64, m: &[u64], rows: usize, cols: usize, v: &[u64]) -> Vec<u64> {
    (0..rows)
        .map(|i| (0..cols).fold(0, |acc, j| (acc + m[i * cols + j] * v[j]) % p))
        .collect()
}

/// Whether the matrix `m` (`d.n × c.n`) is a coalgebra morphism `c → d`.
pub fn is_morphism(c: &RawCoalgebra, d: &RawCoalgebra, m: &[u64]) -> bool {
    let p = c.p;
    (0..c.n).all(|j| {
        let mut e = vec![0u64; c.n];
        e[j] = 1;
        let img = apply(p, m, d.n, c.n, &e);
        if d.apply_eps(&img) != c.eps[j] {
            return false;
        }
        let lhs = d.apply_delta(&img);
        // (φ⊗φ)Δ(e_j)
        let mut rhs = vec![0u64; d.n * d.n];
        for a in 0..c.n {
            for b in 0..c.n {
                let coef = c.delta[j][a * c.n + b];
                if coef == 0 {
                    continue;
                }
                let mut ea = vec![0u64; c.n];
                ea[a] = 1;
                let mut eb = vec![0u64; c.n];
                eb[b] = 1;
                let t = tensor_vec(p, &apply(p, m, d.n, c.n, &ea), &apply(p, m, d.n, c.n, &eb));
                for (r, x) in rhs.iter_mut().zip(t) {
                    *r = (*r + coef * x) % p;
                }
            }
        }
        lhs == rhs
    })
}

/// Every coalgebra morphism `s: c → e` with `s ∘ ι = id`, where `iota` is the
/// `c.n × e.n` inclusion matrix (row-major). Enumerates all `p^(e.n·c.n)` matrices.
pub fn retractions(c: &RawCoalgebra, e: &RawCoalgebra, iota: &[u64]) -> Vec<Vec<u64>> {
    let p = c.p;
    let mut out = Vec::new();
    for m in all_vectors(p, e.n * c.n) {
        // s ∘ ι = id
        let ok = (0..e.n).all(|j| {
            let col: Vec<u64> = (0..c.n).map(|i| iota[i * e.n + j]).collect();
            let img = apply(p, &m, e.n, c.n, &col);
            img.iter().enumerate().all(|(i, &v)| v == u64::from(i == j))
        });
        if ok && is_morphism(c, e, &m) {
            out.push(m);
        }
    }
    out
}

/// Every sub-presheaf of a presheaf over `𝔽_p`, by enumerating one subspace
/// per object and keeping the families stable under restriction.
pub fn sub_presheaves(f: &crate::day::DayPresheaf) -> Vec<Vec<crate::linalg::Subspace>> {
    use crate::linalg::Subspace;
    let k = f.field().clone();
    let p = k.characteristic();
    let mut out: Vec<Vec<Subspace>> = vec![vec![]];
    for x in 0..f.category().len() {
        let d = f.dim(x);
        let choices: Vec<Subspace> = all_subspaces(p, d)
            .into_iter()
            .map(|rows| Subspace::from_rows(&k, d, rows.iter().map(|r| r.iter().map(|&a| k.from_i64(a as i64)).collect()).collect()))
            .collect();
        out = out.into_iter().flat_map(|pre| choices.iter().map(move |s| [pre.clone(), vec![s.clone()]].concat())).collect();
    }
    out.retain(|s| f.is_sub_presheaf(s));
    out
}

/// Objectwise containment of two families of subspaces.
pub fn contains_all(big: &[crate::linalg::Subspace], small: &[crate::linalg::Subspace]) -> bool {
    big.iter().zip(small).all(|(a, b)| a.contains(b).unwrap_or(false))
}

/// No candidate other than `found` itself lies inside `found`.
pub fn is_minimal_among(found: &[crate::linalg::Subspace], candidates: &[Vec<crate::linalg::Subspace>]) -> bool {
    !candidates.iter().any(|s| s.as_slice() != found && contains_all(found, s))
}

/// Pure in `F`, pure in itself, and invariant under `Δ`.
pub fn is_day_subcoalgebra(f: &crate::day::DayCoalgebra, s: &[crate::linalg::Subspace]) -> bool {
    use crate::day::{is_invariant, is_pure};
    let fp = f.presheaf();
    is_pure(fp, s, fp).unwrap_or(false)
        && fp.restrict(s).map(|(stage, _)| is_pure(fp, s, &stage).unwrap_or(false)).unwrap_or(false)
        && is_invariant(f, s).unwrap_or(false)
}
