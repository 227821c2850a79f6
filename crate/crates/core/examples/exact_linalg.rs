//! Row reduction, kernels, inverses and subspace operations, all exact.

use coalg_kernel::field::Field;
use coalg_kernel::linalg::{Matrix, Subspace};

fn main() -> coalg_kernel::Result<()> {
    let q = Field::rationals();
    let rows = [["1", "2", "3"], ["2", "4", "7"], ["1/2", "1", "3/2"]];
    let rows = rows.iter().map(|r| r.iter().map(|s| q.parse(s)).collect()).collect::<coalg_kernel::Result<Vec<_>>>()?;
    let m = Matrix::from_rows(&q, rows)?;
    let (r, rank) = m.rref();
    println!("rank {rank}, rref {:?}", r.to_strings());
    println!("kernel basis {:?}", m.kernel().basis().to_strings());

    let f5 = Field::prime(5)?;
    let a = Matrix::from_fn(&f5, 3, 3, |i, j| f5.element_by_index(((i + 2 * j + i * j) % 5) as u64));
    match a.inverse() {
        Some(inv) => println!("over {f5}: inverse {:?}, check {}", inv.to_strings(), a.mul(&inv).is_identity()),
        None => println!("over {f5}: singular, det {:?}", a.det().map(|d| f5.format(&d))),
    }

    let u = Subspace::coordinate(&q, 4, &[0, 1]);
    let w = Subspace::from_rows(&q, 4, vec![vec![q.one(), q.zero(), q.one(), q.zero()], vec![q.zero(), q.zero(), q.zero(), q.one()]]);
    println!("dim U + W = {}, dim U ∩ W = {}", u.sum(&w)?.dim(), u.intersect(&w)?.dim());
    println!("annihilator of U has dim {}", u.annihilator().dim());
    Ok(())
}
