//! Albert polynomials, dynamical degrees and an intersection-theoretic
//! cross-check for endomorphisms of formally modelled abelian varieties.

pub mod albert;
pub mod dynamics;
pub mod error;
pub mod io;
pub mod model;
pub mod numeric;
pub mod oracle;
pub mod poly;
pub mod verify;

pub use error::{Error, Result};
