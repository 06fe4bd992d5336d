//! Simulation of nuclear-spin polarization transfer from a driven NV centre
//! to a sparse ¹³C bath.

pub mod analysis;
pub mod error;
pub mod evolution;
pub mod experiment;
pub mod hamiltonians;
pub mod lattice_bath;
pub mod operators;
pub mod protocols;

pub use error::{Error, Result};
