//! Exact genus-zero computations relating the Landau–Ginzburg model of the
//! quintic singularity `x1^5 + ... + x5^5` (FJRW theory) to the
//! Gromov–Witten theory of the quintic three-fold.
//!
//! The crate is organized bottom-up:
//!
//! - [`ring`]: exact rationals, the coefficient-ring trait, Bernoulli
//!   numbers and polynomials, Pochhammer symbols, complex Γ.
//! - [`series`]: truncated power series, polynomials in `z`, log series.
//! - [`singularity`]: polynomial parsing, charges, Smith normal form,
//!   diagonal symmetry group, sectors and moduli bookkeeping.
//! - [`tautological`]: Chern-character coefficients of the GRR formula.
//! - [`twist`]: the `s_d` specialization, the Δ coefficients and the
//!   modification factor.
//! - [`ifunction`]: FJRW and GW I-function periods and Picard–Fuchs checks.
//! - [`mirror`]: mirror maps, J-function slots, invariant tables.
//! - [`continuation`]: the numerical symplectic matrix `U`.
//!
//! Data-parallel loops go through [`exec::Execution`]; build without the
//! default `parallel` feature to get a purely sequential library.

pub mod continuation;
pub mod error;
pub mod exec;
pub mod golden;
pub mod ifunction;
pub mod mirror;
pub mod ring;
pub mod series;
pub mod singularity;
pub mod tautological;
pub mod twist;

pub use error::Error;
pub use exec::Execution;
pub use ring::{Complex, Rational};
pub use series::{LogSeries, PolyInZ, TruncatedSeries};
