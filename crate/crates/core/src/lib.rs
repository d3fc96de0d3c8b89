//! Exact arithmetic over F_q((1/T)) for a Hurwitz-type refinement of the Goss
//! zeta function and the infinite-order linear difference equation it
//! satisfies.
//!
//! The layers build on each other:
//!
//! - [`ff`]: the finite field F_q and its character sums,
//! - [`laurent`]: truncated Laurent series in `u = 1/T`,
//! - [`padic`]: p-adic exponents and binomial coefficients mod p,
//! - [`sfun`]: `<a>^s` and `a^w` on the plane S = k_inf^* x Z_p,
//! - [`zeta`]: the Goss zeta function, special values, the Hurwitz-type series,
//! - [`diffop`]: the forward difference operator, the operator L, and the verifier,
//! - [`cli`]: the `goss` command-line front end.

pub mod cli;
pub mod diffop;
pub mod error;
pub mod ff;
pub mod laurent;
pub mod padic;
pub mod sfun;
pub mod zeta;

pub use diffop::{apply_l, rhs_neighbors, verify_main, Verdict, VerificationReport};
pub use error::{Error, Result};
pub use ff::{FieldSpec, FqElem};
pub use laurent::LaurentSeries;
pub use padic::PadicInt;
pub use sfun::SPoint;
pub use zeta::{EvalOptions, HurwitzParams, ZetaSign};
