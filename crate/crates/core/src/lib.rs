//! State-space realizations of causal, time-invariant discrete-time systems.
//!
//! The crate is organized around four pieces:
//!
//! * [`signal`] — bi-infinite sequences over a finite alphabet, together with
//!   the shift, projection, concatenation and insertion operators and their
//!   algebraic laws. Sequences are finite perturbations of a constant-default
//!   sequence, so every operator stays total and decidable.
//! * [`system`] — concrete classes of causal, time-invariant systems (Mealy
//!   machines, finite-window table systems, finite-field linear reductions)
//!   with a uniform evaluation oracle.
//! * [`nerode`] — Nerode equivalence classes, the minimal quotient
//!   realization, the controllable subset, machine equivalence with shortest
//!   counterexamples, and the quotient-map diagram check.
//! * [`linear`] — exact-rational Ho-Kalman realization from Markov parameters
//!   and McMillan-degree computation via block-Hankel rank.
//!
//! [`io`] provides the JSON interchange formats for all of the above.

pub mod error;
pub mod io;
pub mod linear;
pub mod nerode;
pub mod signal;
pub mod system;
#[cfg(feature = "testkit")]
pub mod testkit;

pub use error::{Error, Violation};
pub use linear::{HankelMatrix, LinearSystem, Rational, RationalMatrix};
pub use nerode::{
    EquivalenceOutcome, Mode, NerodeRealization, Partition, QuotientMapReport,
};
pub use signal::{Alphabet, IndexSet, Sequence, SymId};
pub use system::{FiniteWindowSystem, LinearModP, MealyMachine, StateId, System};
