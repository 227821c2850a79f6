//! Group-like elements and the adjunction between k^δ and (−)^gp.

use coalg_kernel::coalg::{dual_coalgebra, ArtinAlgebra};
use coalg_kernel::field::{FactorConfig, Field, Poly};
use coalg_kernel::structure::{etale_part, gp_adjunction_checks, group_likes};

fn main() -> coalg_kernel::Result<()> {
    let k = Field::prime(2)?;
    let cfg = FactorConfig::default();
    // x(x+1)²(x²+x+1): two rational points, one of them fat, and one 𝔽_4-point
    let p = Poly::from_i64s(&k, &[0, 1]).mul(&Poly::from_i64s(&k, &[1, 1]).pow(2)).mul(&Poly::from_i64s(&k, &[1, 1, 1]));
    let c = dual_coalgebra(&ArtinAlgebra::quotient_ring(&p)?);
    let gl = group_likes(&c, &cfg)?;
    println!("C dual to 𝔽_2[x]/({p}): dim {}, {} group-likes", c.dim(), gl.len());
    for g in &gl.elements {
        println!("  {:?}", g.iter().map(|e| k.format(e)).collect::<Vec<_>>());
    }
    println!("Ét(C) has dim {}, so C is not split", etale_part(&c, &cfg)?.space.dim());
    for check in gp_adjunction_checks(&c, &cfg)?.checks {
        println!("  {:?} {}", check.status, check.name);
    }
    Ok(())
}
