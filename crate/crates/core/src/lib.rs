//! Exact calculators around symmetric products of complex manifolds.
//!
//! * [`perm_rep`]: eigenvalue exponents of permutation actions on `(C^n)^m`
//!   and the extension conditions for quotient singularities.
//! * [`curvature`]: curvature constants `C_p` of the product of balls
//!   `(B^n)^m`, by exact optimization over an ordered simplex.
//! * [`sections`]: the `S_m`-invariant sections of products of projective
//!   spaces that vanish to order two along the diagonal.
//! * [`bounds`]: effective degree bounds and criterion inequalities.
//! * [`cli`]: report assembly behind the `symhyp` binary.
//!
//! Everything is computed over exact integers and rationals.

pub mod bounds;
pub mod cli;
pub mod curvature;
pub mod error;
pub mod perm_rep;
pub mod rational;
pub mod sections;

pub use error::{Error, Result};
pub use num_bigint::BigInt;
pub use num_rational::BigRational;
