//! Classification of semiquasihomogeneous hypersurface singularities with a
//! fixed quasihomogeneous principal part.
//!
//! The pipeline: build the unfolding of negative weight of the principal part
//! ([`unfolding`]), compute its Kodaira–Spencer matrix ([`kodaira_spencer`]),
//! stratify the parameter space by the Hilbert function of the Tjurina algebra
//! ([`stratification`]) and act on parameters by symmetries of the principal
//! part ([`symmetry`]). Everything is exact; [`standard_basis`] supplies the
//! local-ring quotients.

pub mod algebra;
pub mod error;

pub mod standard_basis;
pub mod unfolding;
pub mod kodaira_spencer;
pub mod stratification;
pub mod symmetry;

pub use error::{Result, SqhError};
