//! Core entropy of rational critical portraits.
//!
//! Given a degree-`d` critical portrait with rational angles, the crate builds
//! the linear map on pairs of postcritical angles, takes the Perron root `ρ` of
//! its matrix and reports the core entropy `log ρ`. Two independent checks sit
//! next to the main path: a graph-model construction of the same matrix and an
//! exact characteristic-polynomial root isolation for small dimensions.
//!
//! ```
//! use core_entropy::{format::parse_portrait, pairspace::core_entropy};
//!
//! let p = parse_portrait("degree 3\nset 0 1/3\nset 7/15 4/5\n").unwrap();
//! let e = core_entropy(&p, 1e-12, 1_000_000).unwrap();
//! assert!((e.rho - 1.3953).abs() < 1e-4);
//! ```

pub mod angles;
pub mod cli;
pub mod format;
pub mod graphmodel;
pub mod pairspace;
pub mod portrait;
pub mod spectral;
pub mod sweep;

pub use angles::{Angle, Degree};
pub use pairspace::{core_entropy, CoreEntropy, TransitionMatrix};
pub use portrait::CriticalPortrait;
pub use spectral::{spectral_radius, SparseMatrix, SpectralResult};
