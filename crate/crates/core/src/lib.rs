//! Exact spectrum and contact analytic torsion of the Rumin Laplacian on the
//! standard CR spheres `S^{2n+1}`.
//!
//! The crate is organised bottom-up:
//!
//! - [`weights`]: highest weights of `U(n+1)`, the Weyl dimension formula and a
//!   Gelfand–Tsetlin brute-force oracle.
//! - [`spectrum`]: the irreducible decomposition of the bidegree spaces, the
//!   exact eigenvalue attached to every block and per-degree spectra.
//! - [`zeta`]: Hurwitz/Riemann zeta values and derivatives with rigorous
//!   Euler–Maclaurin error bounds, plus the elementary-symmetric-polynomial
//!   identities behind the closed form of the torsion function.
//! - [`torsion`]: the torsion function `κ(s)` by direct summation, by the
//!   reduced route and in closed form, and the resulting torsion report.
//! - [`checks`]: the exact-identity verification suites.
//!
//! Everything here is `no_std` (with `alloc`); IO and formats live in the
//! companion `rumin` crate.

#![cfg_attr(not(test), no_std)]
#![forbid(unsafe_code)]

extern crate alloc;

pub mod checks;
pub mod real;
pub mod spectrum;
pub mod torsion;
pub mod weights;
pub mod zeta;

pub use spectrum::{Bidegree, Eigenvalue, IrrepBlock, SpectrumSlice};
pub use torsion::{KernelConvention, TorsionReport};
pub use weights::{HighestWeight, LabelCase, RuminLabel};
pub use zeta::{ZetaEngine, ZetaValue};

