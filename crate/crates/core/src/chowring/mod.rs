//! The Chow ring of `T_{d,n}` as an explicit quotient of a polynomial ring
//! in the boundary classes `δ_S`.
//!
//! Grading is by codimension: each `δ_S` has degree one and the top degree
//! is `D = d(n-1) - 1`. Curve classes therefore live in degree `D - 1`.
//! Every graded piece is computed by exact sparse elimination over the
//! rationals; nothing here uses floating point.

mod echelon;
pub mod identities;
mod monomial;
mod pairing;
mod ring;

pub use echelon::{SparseEchelon, SparseVec};
pub use monomial::{CycleClass, Monomial};
pub use pairing::{
    conjecture_check, curve_class, curve_indices, divisor_indices, eta_class, expected_pairing,
    is_degenerate_curve, nef_report, pair, pairing_table, ConjectureReport, NefEntry, NefReport,
    PairingMismatch, PairingTable,
};
pub use ring::{GradedBasis, NormalForm, RingPresentation};
