//! Every vector of a coalgebra lies in a finite-dimensional subcoalgebra;
//! here the smallest one is computed for a few vectors of the divided-power
//! coalgebra, dual to k[x]/(x⁵).

use coalg_kernel::coalg::generated_subcoalgebra;
use coalg_kernel::day::examples::divided_powers;
use coalg_kernel::field::Field;
use coalg_kernel::linalg::Subspace;

fn main() -> coalg_kernel::Result<()> {
    let k = Field::rationals();
    let c = divided_powers(&k, 5);
    // Δ(x⁽ⁿ⁾) = Σ x⁽ⁱ⁾ ⊗ x⁽ⁿ⁻ⁱ⁾, so x⁽ⁿ⁾ generates span{x⁽⁰⁾, …, x⁽ⁿ⁾}
    for n in 0..c.dim() {
        let v: Vec<_> = (0..c.dim()).map(|i| if i == n { k.one() } else { k.zero() }).collect();
        let s = generated_subcoalgebra(&c, &Subspace::from_rows(&k, c.dim(), vec![v]))?;
        println!("x^({n}) generates a subcoalgebra of dim {}", s.space.dim());
    }
    let v = vec![k.zero(), k.one(), k.zero(), k.parse("2/3")?, k.zero()];
    let s = generated_subcoalgebra(&c, &Subspace::from_rows(&k, c.dim(), vec![v]))?;
    println!("x^(1) + 2/3·x^(3) generates dim {}: basis {:?}", s.space.dim(), s.space.basis().to_strings());
    Ok(())
}
