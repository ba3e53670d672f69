//! Quasi-exactly-solvable spectra, exact j = 1/2 solutions and distributional solutions
//! of the radial Brioschi–Halphen operator, with independent oracles for every identity
//! and a structured report of where printed formulas disagree with their construction.

pub mod error;
pub mod algebraization;
pub mod cli;
pub mod discrepancy;
pub mod distributional;
pub mod exact_j_half;
pub mod exactmath;
pub mod qes;
pub mod weierstrass;

pub use error::{Error, Result};
