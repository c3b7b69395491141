//! Exact computational topology for Helmholtz-type conditions on triangulated
//! 3-dimensional domains and on link diagrams.

pub mod builders;
pub mod chain;
pub mod complex;
pub mod cut;
pub mod domain;
pub mod error;
pub mod group;
pub mod homology;
pub mod io;
pub mod link;
pub mod matrix;
pub mod product;
pub mod surface;

pub use complex::{Chain, Simplex, SimplicialComplex};
pub use error::{Error, Result};
pub use homology::{HomologyGroup, SimplicialHomology};
pub use io::{LatticePath, MarkedComplex};
pub use matrix::{smith_normal_form, IntegerMatrix, SmithDecomposition};
