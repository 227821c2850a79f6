//! Presheaves on a small symmetric monoidal linear category, their Day
//! convolution, internal homs, and coalgebras for the convolution product.
mod category;
mod closure;
mod coalgebra;
mod convolution;
pub mod examples;
mod hom;
mod presheaf;

pub use category::{CategoryData, CategoryPreset, LinearMonoidalCategory};
pub use closure::{
    generated_day_subcoalgebra, invariant_closure, is_invariant, is_pure, pure_closure, purity_defect, separate_by_generator,
    subcoalgebra_on, Closure, ClosureStep, DaySubcoalgebra, Separation, StepKind,
};
pub use coalgebra::DayCoalgebra;
pub use convolution::{
    associator, day_convolve, left_unitor, right_unitor, symmetry, tensor_maps, yoneda_comparison, DayProduct, Relation, Side,
};
pub use hom::{adjunct, coevaluation, evaluation, internal_hom, InternalHom};
pub use presheaf::{nat_hom_basis, DayPresheaf, DirectSumPresheaf, NatTrans};

#[cfg(test)]
mod tests;
