//! Pure and invariant closures, and the Day subcoalgebra generated by a
//! point, for a coalgebra on the poset {0 ≤ 1}.

use coalg_kernel::day::examples::poset_example;
use coalg_kernel::day::{generated_day_subcoalgebra, invariant_closure, pure_closure};
use coalg_kernel::field::Field;
use coalg_kernel::linalg::Subspace;

fn dims(s: &[Subspace]) -> Vec<usize> {
    s.iter().map(Subspace::dim).collect()
}

fn main() -> coalg_kernel::Result<()> {
    let k = Field::prime(2)?;
    let f = poset_example(&k);
    let fp = f.presheaf();
    println!("F has dims {:?}, valid: {}", fp.dims(), f.is_valid()?);
    for x in 0..fp.category().len() {
        for i in 0..fp.dim(x) {
            let v: Vec<_> = (0..fp.dim(x)).map(|j| if i == j { k.one() } else { k.zero() }).collect();
            let m0 = fp.restriction_closure(&fp.point(x, &v));
            let pure = pure_closure(fp, &m0, fp)?;
            let inv = invariant_closure(&f, &m0)?;
            let gen = generated_day_subcoalgebra(&f, &m0)?;
            println!(
                "e_{i} at {x}: M0 {:?}, pure {:?}, invariant {:?}, generated {:?} in {} steps",
                dims(&m0),
                dims(&pure.spaces),
                dims(&inv.spaces),
                dims(&gen.spaces),
                gen.trace.len()
            );
        }
    }
    Ok(())
}
