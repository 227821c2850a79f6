//! A coefficient field inside a local algebra by Newton iteration.
//!
//! In A = 𝔽_2[x]/((x²+x+1)²) the class x̄ is a root of x²+x+1 modulo the
//! radical; lifting it gives an exact root generating K ≅ 𝔽_4 with A = K ⊕ m.

use coalg_kernel::coalg::ArtinAlgebra;
use coalg_kernel::field::{Field, Poly};
use coalg_kernel::structure::{hensel_lift, radical, wedderburn_splitting_from};

fn main() -> coalg_kernel::Result<()> {
    let k = Field::prime(2)?;
    let p = Poly::from_i64s(&k, &[1, 1, 1]);
    let a = ArtinAlgebra::quotient_ring(&p.mul(&p))?;
    let m = radical(&a);
    let xbar = a.basis_vector(1);
    let (root, steps) = hensel_lift(&a, &p, &xbar)?;
    let show = |v: &[_]| Poly::new(&k, v.to_vec()).to_string();
    println!("radical of dim {}; root {} after {steps} Newton steps", m.dim(), show(&root));
    let w = wedderburn_splitting_from(&a, &m, &p, &xbar)?;
    println!("K = span{{1, {}}}, minimal polynomial {}", show(&w.root), w.field.minimal_poly);
    println!("A = K ⊕ m: {}", w.embedding.hstack(&m.inclusion()).inverse().is_some());
    Ok(())
}
