//! Building coalgebras and checking their axioms.

use coalg_kernel::coalg::{diagonal_coalgebra, direct_sum, dual_coalgebra, tensor, ArtinAlgebra, Coalgebra};
use coalg_kernel::field::{Field, Poly};
use coalg_kernel::linalg::Matrix;

fn main() -> coalg_kernel::Result<()> {
    let k = Field::prime(3)?;
    let d = Coalgebra::dual_numbers(&k);
    let s = diagonal_coalgebra(&k, 2);
    let f9 = dual_coalgebra(&ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[1, 0, 1]))?);
    for (name, c) in [("dual numbers", d.clone()), ("k^δ[2]", s.clone()), ("𝔽_9^∨", f9), ("D ⊗ k^δ[2]", tensor(&d, &s))] {
        println!("{name}: dim {}, valid {}", c.dim(), c.is_valid());
    }
    let sum = direct_sum(&d, &s);
    println!("D ⊕ k^δ[2]: dim {}, injections are morphisms: {}", sum.coalgebra.dim(), sum.injections.iter().all(|i| i.is_valid()));

    // Δe₁ = e₀⊗e₁ only: neither cocommutative nor counital on the right
    let delta = Matrix::from_fn(&k, 4, 2, |r, c| if (c, r) == (0, 0) || (c, r) == (1, 1) { k.one() } else { k.zero() });
    let eps = Matrix::from_fn(&k, 1, 2, |_, c| if c == 0 { k.one() } else { k.zero() });
    let bad = Coalgebra::new(&k, delta, eps)?;
    for v in bad.validate().violations {
        println!("violation: {v}");
    }
    Ok(())
}
