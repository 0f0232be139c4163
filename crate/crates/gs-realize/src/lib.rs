//! Realization of Lyapunov graphs as Gutierrez-Sotomayor flows on singular
//! closed 2-manifolds, with isolating blocks whose boundaries are described
//! by branched 1-manifolds.

pub mod branched;
mod canon;
pub mod error;
pub mod gs_model;
pub mod cli_io;
pub mod realize_global;
pub mod realize_local;

pub use error::{GsError, Result};
