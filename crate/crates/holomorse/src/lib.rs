//! Exact equivariant localization from fixed-point data.
//!
//! Local contributions at torus fixed points are character fractions
//! `N / ∏(1 - λ^u)`. Their chamber expansions give holomorphic Morse
//! polynomials, their sums give Lefschetz numbers, and their expansions in an
//! angle variable give NUT charges and the equivariant signature.

pub mod algebra;
pub mod charfrac;
pub mod cli;
pub mod error;
pub mod exec;
pub mod localization;
pub mod oscillator;
pub mod theta;

pub use algebra::{Exponent, GradedCoeff, GradedLaurentPoly, Rat, Scalar};
pub use charfrac::{chamber_expand, Chamber, ChamberSeries, CharFraction};
pub use error::{Error, Result};
pub use exec::Execution;
