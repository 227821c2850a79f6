//! Finite G-sets and coalgebras over 𝔽_2 through the extension 𝔽_8/𝔽_2.

use coalg_kernel::coalg::{direct_sum, dual_coalgebra, ArtinAlgebra, Coalgebra};
use coalg_kernel::field::{FactorConfig, Field, Poly};
use coalg_kernel::galois::{adjunction_checks, kbar_functor, FiniteGSet, GaloisDatum};

fn main() -> coalg_kernel::Result<()> {
    let k = Field::prime(2)?;
    let cfg = FactorConfig::default();
    let d = GaloisDatum::finite(&k, 3, &cfg)?;
    println!("Gal(𝔽_8/𝔽_2) has order {} and {} subgroups", d.order(), d.subgroups().len());

    // the regular orbit G/1 plus a fixed point
    let x = FiniteGSet::regular(&d).disjoint_union(&FiniteGSet::trivial(&d, 1));
    let kx = kbar_functor(&d, &x, &cfg)?;
    for (o, f) in kx.orbits.iter().zip(&kx.fields) {
        println!("orbit {:?}, stabilizer {:?}, fixed field of degree {}", o.points, o.stabilizer, f.degree());
    }
    println!("k̄^∨[X] has dim {}", kx.coalgebra.dim());

    // C = 𝔽_8^∨ ⊕ dual numbers: the residue fields 𝔽_8 and 𝔽_2 both embed in 𝔽_8
    let f8 = dual_coalgebra(&ArtinAlgebra::quotient_ring(&Poly::from_i64s(&k, &[1, 1, 0, 1]))?);
    let c = direct_sum(&f8, &Coalgebra::dual_numbers(&k)).coalgebra;
    for check in adjunction_checks(&d, &x, &c, &cfg)?.checks {
        println!("  {:?} {}", check.status, check.name);
    }
    Ok(())
}
