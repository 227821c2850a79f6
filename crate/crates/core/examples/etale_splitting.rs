//! The étale part Ét(C), its simple summands and the natural retraction
//! C → Ét(C), for C dual to ℚ[x]/(x²(x²−2)).

use coalg_kernel::coalg::{dual_coalgebra, ArtinAlgebra};
use coalg_kernel::field::{FactorConfig, Field, Poly};
use coalg_kernel::structure::{etale_part, irreducible_components};

fn main() -> coalg_kernel::Result<()> {
    let k = Field::rationals();
    let cfg = FactorConfig::default();
    let a = ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[0, 0, -2, 0, 1]))?;
    let c = dual_coalgebra(&a);
    let e = etale_part(&c, &cfg)?;
    println!("dim C = {}, dim Ét(C) = {}, split: {}", c.dim(), e.space.dim(), e.is_split());
    for (s, comp) in e.simples.iter().zip(&e.decomposition.components) {
        println!(
            "  simple of dim {}: residue field ℚ[x]/({}) of a local factor with nilpotency index {}",
            s.space.dim(),
            comp.residue.minimal_poly,
            comp.nilpotency
        );
    }
    println!("r∘ι = id: {}", e.retraction.matrix().mul(e.inclusion.matrix()).is_identity());
    println!("retraction {:?}", e.retraction.matrix().to_strings());
    for (name, check) in e.verify(&cfg)?.checks.iter().map(|c| (&c.name, c.status)) {
        println!("  {name}: {check:?}");
    }
    let ic = irreducible_components(&c, &cfg)?;
    let dims: Vec<usize> = ic.components.iter().map(|s| s.space.dim()).collect();
    println!("irreducible components {dims:?}, sum is an isomorphism: {}", ic.is_isomorphism());
    Ok(())
}
