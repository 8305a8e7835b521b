//! Exact intersection theory and rank computations for the compactified
//! configuration spaces `T_{d,n}` of `n` points in affine `d`-space modulo
//! translation and scaling, and for Fulton–MacPherson spaces `X[n]`.
//!
//! * [`setcore`]: nested families of subsets and their stable trees.
//! * [`chowring`]: the Chow ring of `T_{d,n}` by generators and relations,
//!   exact normal forms, integration and pairing tables.
//! * [`genfunc`]: Poincaré polynomials and their generating functions.
//! * [`motive`]: Chow-rank polynomials in the Lefschetz twist.

pub mod chowring;
pub mod config;
pub mod error;
pub mod genfunc;
pub mod motive;
pub mod setcore;
pub mod util;

pub use chowring::{CycleClass, Monomial, RingPresentation};
pub use config::Caps;
pub use error::{Error, Result};
pub use genfunc::{QPoly, TruncSeries};
pub use motive::{CellularSpace, LefschetzPoly};
pub use setcore::{GroundSet, NestedFamily, Subset};

/// Engine version reported by front ends.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Exact number types used throughout the public API.
pub mod num {
    pub use num_bigint::{BigInt, BigUint};
    pub use num_rational::BigRational;
}
