//! Exact Ringel-Hall algebra engine for tame quivers and domestic weighted
//! projective lines.
//!
//! Hall numbers are counted by brute force over small finite fields, Hall
//! polynomials are recovered by interpolation with held-out verification, and
//! the generic Hall algebra of the torsion sector is assembled from those
//! polynomials. Everything is exact: rationals, integer polynomials and
//! Laurent polynomials in `v` with `T = v^2`.

pub mod cli;
pub mod combinat;
pub mod cyclichall;
pub mod error;
pub mod exactfield;
pub mod generichall;
pub mod polyarith;
pub mod quiverrep;
pub mod sweep;
pub mod wpl;

pub use error::{HallError, Result};
