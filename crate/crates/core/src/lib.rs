//! Exact arithmetic for 2D q-Appell polynomial families.
//!
//! The crate builds the polynomial tables generated by
//! `A_q(t) e_q(tx) E_q(ty)` over exact rationals and checks the lowering,
//! recurrence and q-difference identities those tables satisfy by computing
//! residual polynomials. It is `no_std` and only needs `alloc`.
//!
//! - [`qcore`]: q-integers, q-factorials, q-binomials.
//! - [`polyring`]: sparse bivariate polynomials with partial q-derivatives.
//! - [`pseries`]: truncated power series in `t`.
//! - [`appell`]: family construction and the auxiliary alpha/beta sequences.
//! - [`verify`]: identity checks, recurrence variant search, suite runner.
#![no_std]

extern crate alloc;

pub mod appell;
pub mod error;
pub mod polyring;
pub mod pseries;
pub mod qcore;
pub mod rational;
pub mod verify;

pub use appell::{build_family, family_aq, AppellFamily, FamilyKind};
pub use error::{Error, ParseRationalError};
pub use polyring::{Monomial, Poly2};
pub use pseries::{q_exp_big, q_exp_small, Coefficient, TSeries};
pub use qcore::QContext;
pub use rational::Rational;
