//! Row reduction. ℚ uses fraction-free Gauss-Jordan on integer rows, 𝔽_p a
//! machine-word path, other fields plain elimination.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::Matrix;
use crate::field::{Elem, FieldSpec};

/// A matrix in canonical reduced row echelon form, zero rows dropped.
#[derive(Clone, Debug)]
pub struct Echelon {
    matrix: Matrix,
    pivots: Vec<usize>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Nonzero rows only (`rank × cols`).
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    /// Full RREF with zero rows restored to the original row count.
    pub(crate) fn into_padded(self, rows: usize) -> Matrix {
        let k = self.matrix.field().clone();
        let cols = self.matrix.cols();
        let pad = Matrix::zeros(&k, rows - self.rank(), cols);
        self.matrix.vstack(&pad)
    }
}

impl Matrix {
    /// Canonical RREF without zero rows, plus pivot columns.
    pub fn echelon(&self) -> Echelon {
        match self.field().spec() {
            FieldSpec::Rationals => echelon_rational(self),
            FieldSpec::Prime { p } => echelon_prime(self, *p),
            FieldSpec::Extension { .. } => echelon_generic(self),
        }
    }

    /// RREF keeping the original shape (zero rows at the bottom).
    pub fn rref_padded(&self) -> (Matrix, usize) {
        let e = self.echelon();
        let r = e.rank();
        (e.into_padded(self.rows()), r)
    }
}

fn echelon_generic(m: &Matrix) -> Echelon {
    let k = m.field().clone();
    let (rows, cols) = m.shape();
    let mut a = m.to_rows();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !k.is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let inv = k.inv(&a[r][c]).unwrap();
        for j in c..cols {
            a[r][j] = k.mul(&a[r][j], &inv);
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || k.is_zero(&row[c]) {
                continue;
            }
            let f = row[c].clone();
            for j in c..cols {
                if !k.is_zero(&pivot_row[j]) {
                    row[j] = k.sub(&row[j], &k.mul(&f, &pivot_row[j]));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    Echelon { matrix: Matrix::from_rows_with_cols(&k, a, cols).unwrap(), pivots }
}

fn echelon_prime(m: &Matrix, p: u64) -> Echelon {
    let k = m.field().clone();
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<u64>> = (0..rows)
        .map(|i| {
            m.row(i)
                .iter()
                .map(|e| match e {
                    Elem::Mod(v) => *v,
                    _ => unreachable!("prime field entry"),
                })
                .collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = crate::field::primes::inv_mod(a[r][c], p).unwrap();
        for v in a[r][c..].iter_mut() {
            *v = *v * inv % p;
        }
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r || row[c] == 0 {
                continue;
            }
            let f = p - row[c];
            for j in c..cols {
                if pivot_row[j] != 0 {
                    row[j] = (row[j] + f * pivot_row[j]) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let data = a.into_iter().map(|row| row.into_iter().map(Elem::Mod).collect()).collect();
    Echelon { matrix: Matrix::from_rows_with_cols(&k, data, cols).unwrap(), pivots }
}

/// Fraction-free Gauss-Jordan: rows are cleared of denominators, every update
/// `a_ij ← (piv·a_ij − a_ic·a_rj) / prev` divides exactly, and each pivot row
/// is divided by its pivot at the end.
fn echelon_rational(m: &Matrix) -> Echelon {
    let k = m.field().clone();
    let (rows, cols) = m.shape();
    let mut a: Vec<Vec<BigInt>> = (0..rows)
        .map(|i| {
            let row: Vec<&BigRational> = m
                .row(i)
                .iter()
                .map(|e| match e {
                    Elem::Rat(r) => r,
                    _ => unreachable!("rational entry"),
                })
                .collect();
            let den = row.iter().fold(BigInt::one(), |l, r| l.lcm(r.denom()));
            row.iter().map(|r| (*r * &den).to_integer()).collect()
        })
        .collect();
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        // smallest nonzero pivot keeps entries short
        let Some(piv_row) = (r..rows)
            .filter(|&i| !a[i][c].is_zero())
            .min_by(|&x, &y| a[x][c].abs().cmp(&a[y][c].abs()).then(x.cmp(&y)))
        else {
            continue;
        };
        a.swap(r, piv_row);
        let piv = a[r][c].clone();
        let pivot_row = a[r].clone();
        for (i, row) in a.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c].clone();
            for j in 0..cols {
                let v = &piv * &row[j] - &f * &pivot_row[j];
                row[j] = if prev.is_one() { v } else { v / &prev };
            }
        }
        prev = piv;
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    let data: Vec<Vec<Elem>> = a
        .into_iter()
        .zip(&pivots)
        .map(|(row, &pc)| {
            let d = row[pc].clone();
            row.into_iter()
                .map(|v| Elem::Rat(BigRational::new(v, d.clone())))
                .collect()
        })
        .collect();
    Echelon { matrix: Matrix::from_rows_with_cols(&k, data, cols).unwrap(), pivots }
}

/// Plain-elimination RREF, kept for cross-checking the specialised paths.
#[allow(dead_code)]
pub(crate) fn reference_echelon(m: &Matrix) -> Echelon {
    echelon_generic(m)
}
