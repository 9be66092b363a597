//! Finite truncations of the operator representations and the
//! decompositions behind them.

pub mod covariance;
pub mod digits;
pub mod orbit;
pub mod pi0;

pub use covariance::{check_covariance, covariance_interior};
pub use digits::{build_digit_rep, build_hs_rep, intertwiner, kappa, DigitSystem, Expansion};
pub use orbit::{build_cyclic_rep, build_orbit_rep, check_matrix_units, orbit_decompose, OrbitDecomposition};
pub use pi0::{in_ideal, laurent, laurent_product, pi0_symbol, presented_product};
