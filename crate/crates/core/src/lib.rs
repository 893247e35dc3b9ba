//! Doubly periodic Fourier pseudospectral solver for generalized
//! Kadomtsev–Petviashvili (KP) equations
//!
//! ```text
//!     u_t + u^p u_x + u_xxx + ε ∂x⁻¹ u_yy = 0,      ε = −1 (KP I), +1 (KP II)
//! ```
//!
//! on `[-π L_x, π L_x) × [-π L_y, π L_y)`, stepped in time with the
//! fourth-order exponential time differencing scheme of Cox & Matthews
//! (ETDRK4). The crate is organised around five layers:
//!
//! * [`spectral`] — grid construction, 2-D FFTs, diagonal multipliers;
//! * [`model`] — the KP right-hand side in Fourier form, the zero-mass
//!   constraint, and exact/initial-data constructors (line soliton, lump,
//!   Zaitsev wave, localized perturbations);
//! * [`integrator`] — ETDRK4 coefficients with contour-stabilised
//!   evaluation, single steps, and the uniform-step driver;
//! * [`diagnostics`] — mass/energy tracking, norm time series, resolution
//!   and blow-up detection, peak finding and lump fitting;
//! * [`harness`] — experiment configuration, named presets, run
//!   orchestration, snapshot/time-series persistence, verification suites.
//!
//! The `kp` binary exposes the harness on the command line
//! (`kp run`, `kp verify`, `kp fit`, `kp export`).

pub mod diagnostics;
pub mod error;
pub mod harness;
pub mod integrator;
pub mod model;
pub mod spectral;
mod util;

pub use error::{KpError, Result};
