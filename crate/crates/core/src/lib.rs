//! Twisted Gabidulin codes over finite-field towers F_q ⊂ F_{q^m}: MRD and
//! Hamming-metric classification, forbidden twist sets, explicit MRD
//! constructions and rank-metric covering radii.

pub mod budget;
pub mod cli;
pub mod codes;
pub mod covering;
pub mod error;
pub mod gcoeff;
pub mod io;
pub mod linpoly;
pub mod moore;
pub mod mrdcheck;
pub mod report;
pub mod subspace;
pub mod tower;

pub use budget::Budget;
pub use codes::{CodeSpec, Twist};
pub use error::{Error, Result};
pub use linpoly::LinearizedPoly;
pub use moore::MatrixFqm;
pub use tower::{Element, FieldTower, TowerParams};
