//! Exact computations with Lie triple systems, relative Rota-Baxter
//! operators of weight λ, their cohomology and infinitesimal deformations.
//!
//! All arithmetic is over the rationals. Basis indices are 0-based in the
//! API and 1-based in reports and files.

pub mod cochain;
pub mod cohomology;
pub mod deform;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod lts;
pub mod random;
pub mod rbo;
pub mod rep;
pub mod report;
pub mod scalar;

pub use error::{Error, Result};
pub use linalg::{LinearMap, Matrix, SubspaceBasis, Vector};
pub use lts::LieTripleSystem;
pub use rbo::RelativeRbo;
pub use rep::{Action, Representation};
pub use report::{Report, Violation};
pub use scalar::Scalar;
