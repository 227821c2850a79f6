//! Day convolution of presheaves on small linear monoidal categories.

use std::sync::Arc;

use coalg_kernel::day::{day_convolve, internal_hom, nat_hom_basis, yoneda_comparison, DayPresheaf, LinearMonoidalCategory};
use coalg_kernel::field::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> coalg_kernel::Result<()> {
    let k = Field::prime(2)?;

    // graded vector spaces on ℤ/3: (F ⊗ G)_z = ⊕_{x+y=z} F_x ⊗ G_y
    let z3 = Arc::new(LinearMonoidalCategory::group_discrete(&k, 3));
    let f = DayPresheaf::discrete(z3.clone(), vec![1, 2, 0])?;
    let g = DayPresheaf::discrete(z3.clone(), vec![0, 1, 1])?;
    println!("ℤ/3: dims {:?} ⊗ {:?} = {:?}", f.dims(), g.dims(), day_convolve(&f, &g)?.presheaf.dims());

    // representables multiply as the objects do
    let p = Arc::new(LinearMonoidalCategory::poset_max(&k, 2));
    for x in 0..p.len() {
        for y in 0..p.len() {
            let (prod, hxy, cmp) = yoneda_comparison(&p, x, y)?;
            println!("poset: h_{x} ⊗ h_{y} ≅ h_{}: {}", p.tensor_obj(x, y), cmp.is_iso() && cmp.is_natural(&prod.presheaf, &hxy));
        }
    }

    // Nat(F ⊗ G, H) ≅ Nat(F, [G, H])
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let (f, g, h) = (DayPresheaf::random(&p, 2, &mut rng), DayPresheaf::random(&p, 2, &mut rng), DayPresheaf::random(&p, 2, &mut rng));
    let lhs = nat_hom_basis(&day_convolve(&f, &g)?.presheaf, &h)?.len();
    let rhs = nat_hom_basis(&f, &internal_hom(&g, &h)?.presheaf)?.len();
    println!("dim Nat(F⊗G, H) = {lhs}, dim Nat(F, [G,H]) = {rhs}");
    Ok(())
}
