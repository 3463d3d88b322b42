//! Askey-Wilson grids, second-order difference operators with polynomial
//! eigenfunctions, and the finite tridiagonal duality machinery.
//!
//! Every computation is generic over [`Scalar`]: exact [`Rational`]
//! arithmetic turns identities into zero-residual assertions, while `f64`
//! runs compare through a relative [`Tol`].

pub mod awoperator;
pub mod cli;
pub mod duality;
pub mod error;
pub mod grid;
pub mod io;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod spectral;

pub use error::{Error, Result};
pub use poly::{interpolate, Poly};
pub use scalar::{Rational, Scalar, Tol};
