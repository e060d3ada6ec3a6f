//! Configuration equivalence toolkit: group views, partition algebra,
//! configuration enumeration, an exact amenability feasibility solver, a
//! paradoxical decomposition verifier, and catalog search utilities.

pub mod amenability;
pub mod catalog;
pub mod configuration;
pub mod decomposition;
pub mod error;
pub mod group;
pub mod kgroup;
pub mod laurent;
pub mod partition;
pub mod schema;

pub use error::{Error, Result};
