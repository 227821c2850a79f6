//! The étale subpresheaf and group-likes of a presheaf of coalgebras on
//! {0 ≤ 1}: dual numbers over 1 restricting to a point over 0.

use std::sync::Arc;

use coalg_kernel::coalg::Coalgebra;
use coalg_kernel::field::{FactorConfig, Field};
use coalg_kernel::linalg::Matrix;
use coalg_kernel::presheaf::{etale_subpresheaf, group_like_presheaf, presheaf_gp_adjunction, CoalgebraPresheaf, IndexCategory};

fn main() -> coalg_kernel::Result<()> {
    let k = Field::rationals();
    let cfg = FactorConfig::default();
    let idx = Arc::new(IndexCategory::poset(2, &[(0, 1)])?);
    let d = Coalgebra::dual_numbers(&k);
    let restrictions = (0..idx.morphism_count())
        .map(|m| match idx.ends(m) {
            (0, 1) => d.epsilon().clone(),
            (0, 0) => Matrix::identity(&k, 1),
            _ => Matrix::identity(&k, 2),
        })
        .collect();
    let f = CoalgebraPresheaf::validated(idx.clone(), vec![Coalgebra::trivial(&k), d], restrictions)?;

    let et = etale_subpresheaf(&f, &cfg)?;
    let dims: Vec<usize> = et.presheaf.sections().iter().map(Coalgebra::dim).collect();
    println!("Ét(F) has section dims {dims:?}, all checks pass: {}", et.report.all_passed());
    let (gp, _) = group_like_presheaf(&f, &cfg)?;
    println!("F^gp has sizes {:?}, maps {:?}", gp.sizes, gp.maps);
    let rep = presheaf_gp_adjunction(&f, &cfg)?;
    println!("adjunction: {} checks, all pass: {}", rep.checks.len(), rep.all_passed());
    Ok(())
}
