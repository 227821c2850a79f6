//! Exact computations with finite-dimensional cocommutative coalgebras.
pub mod brute;
pub mod cli;
pub mod coalg;
pub mod corpus;
pub mod day;
pub mod error;
pub mod field;
pub mod galois;
pub mod interchange;
pub mod linalg;
pub mod presheaf;
pub mod report;
pub mod structure;
pub mod suite;
pub use error::{Error, Result};
