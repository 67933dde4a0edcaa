//! zetalab: a numerical laboratory for the statistics of Dirichlet L-values
//! sampled at the ordinates of zeta zeros.
//!
//! The pipeline: enumerate characters ([`characters`]), locate zeros of ζ and
//! of Dirichlet L-functions on the critical line ([`zeros`]), evaluate
//! L-functions rigorously off a Hurwitz-zeta backbone ([`leval`]), approximate
//! log-magnitudes by short Dirichlet polynomials over primes with certified
//! remainders ([`dirpoly`]), compare against the random Euler-product model
//! and its Bessel-function characteristic function ([`randmodel`]), and test
//! distributional claims — central limit behaviour, joint independence,
//! Fourier-side identities — with band-limited indicator machinery
//! ([`distlab`]). [`cli`] wires these into reproducible runs.
//!
//! The `examples/` directory is the front door: each example exercises one
//! capability end to end and writes the same artifacts the CLI does.

pub mod characters;
pub mod cli;
pub mod dirpoly;
pub mod distlab;
pub mod error;
pub mod leval;
pub mod numeric;
pub mod primes;
pub mod randmodel;
pub mod special;
pub mod zeros;

pub use error::{Error, Result};
