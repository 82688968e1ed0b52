//! Continuous-time quantum walks U(t) = exp(itA) on structured graph
//! families: spectral decompositions (numerical and closed-form for joins,
//! cones and strongly regular graphs), mixing matrices, and numerical
//! certificates for stay-at-home behaviour, local uniform mixing,
//! periodicity and perfect state transfer.

pub mod error;
pub mod families;
pub mod graph;
pub mod spectral;
pub mod walk;

pub use error::{Error, Result};
pub use graph::Graph;
pub use spectral::{SpectralDecomposition, SrgParams};
pub use walk::TimeGrid;
