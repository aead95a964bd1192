//! Drazin and group inverses of square complex matrices, and checks of
//! generalized Cline transfer formulas for quadruples `(a, b, c, d)`.
//!
//! Two scalar backends share every algorithm: [`GaussianRational`] (exact
//! `ℚ(i)`, used for identity-level verification) and [`Complex64`] (used for
//! spectra). The crate is `no_std` and needs only `alloc`.
//!
//! ```
//! use ginv_core::{drazin, ExactMatrix, Tolerance};
//!
//! let j = ExactMatrix::shift(3);
//! let r = drazin::drazin(&j, &Tolerance::default()).unwrap();
//! assert!(r.inverse.is_zero());
//! assert_eq!(r.index, 3);
//! ```

#![no_std]

extern crate alloc;

pub mod cline;
pub mod drazin;
pub mod eigen;
pub mod error;
pub mod gen;
pub mod linalg;
pub mod matrix;
pub mod report;
pub mod scalar;
pub mod spectral;

pub use cline::{ClineQuadruple, ConditionFamily};
pub use drazin::{DrazinResult, GroupResult};
pub use error::{Error, Result};
pub use matrix::{ExactMatrix, FloatMatrix, Matrix};
pub use num_complex::Complex64;
pub use report::{Condition, HypothesisReport, Residual};
pub use scalar::{Backend, GaussianRational, Scalar, Tolerance};
