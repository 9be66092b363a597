//! Exact computations for the crossed products of `C(Z_p)` by p-adic
//! multiplication `x -> rx`.
//!
//! The crate covers the number theory (unit groups, the threshold `N_r`,
//! Teichmüller lifts, the finite quotient `Z_p^×/G_r`), the case
//! classification of a multiplier with its supernatural order, symbolic
//! K-theory descriptors, and finite truncations of the shift/multiplication
//! representations on which the defining relations are checked exactly.

pub mod arith;
pub mod classify;
pub mod error;
pub mod function;
pub mod ktheory;
pub mod operator;
pub mod padic;
pub mod reps;
pub mod scalar;
pub mod units;
pub mod verify;

pub use classify::{classify, Case, Classification, HSubgroup, SupernaturalNumber};
pub use error::{Error, Result};
pub use function::{alpha_endo, beta_endo, LocallyConstantFn};
pub use ktheory::{KAtom, KGroupDescriptor, KGroups};
pub use operator::{BasisIndex, TruncatedOp, Word};
pub use padic::{MultiplierSpec, PadicApprox, Prime};
pub use scalar::ExactScalar;
