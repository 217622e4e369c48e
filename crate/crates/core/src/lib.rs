//! Exact and numerical tools around Hurwitz class numbers and Cohen's
//! generating series on Γ₀(4).
//!
//! The exact side ([`arith`], [`qseries`], [`rankin`], [`gamma04`], [`cohen`])
//! works over arbitrary-precision rationals and certifies identities
//! coefficient by coefficient. The [`nonhol`] module evaluates the
//! real-analytic completion terms (Appell–Lerch sums, the `R` function, the
//! period integral of the theta series) in double precision and checks the
//! identities relating them.

pub mod arith;
pub mod cohen;
pub mod error;
pub mod gamma04;
pub mod nonhol;
pub mod qseries;
pub mod rankin;
pub mod rational;
pub mod report;

pub use error::{Error, Result};
pub use qseries::QSeries;
pub use rational::Rational;
pub use report::{ReportEnvelope, ResidualRecord, Status, VerificationReport};
