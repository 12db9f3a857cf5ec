pub mod enumerate;
pub mod error;
pub mod lattice;
pub mod motvol;
pub mod multiplicity;
pub mod rational;
pub mod ringkit;
pub mod tropcurve;
pub mod verify;
pub mod zeta;

pub use error::{Error, Result};
