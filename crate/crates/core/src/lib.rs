//! Hall-Littlewood polynomials of types B and C, computed both from alcove
//! walks and from fillings of a widened Young diagram.

pub mod alcove;
pub mod chains;
pub mod characters;
pub mod error;
pub mod fillings;
pub mod formula;
pub mod poly;
pub mod weight;
pub mod weyl;

pub use error::{Error, Result};
