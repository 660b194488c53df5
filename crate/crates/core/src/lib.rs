//! Exact construction and certification of torsionfree crystallographic
//! groups with indecomposable holonomy representations.

pub mod certificate;
pub mod cohomology;
pub mod crys;
pub mod cyclotomic;
pub mod endo;
pub mod error;
pub mod groups;
pub mod linalg;
pub mod reps;

pub use error::{Error, Result};
