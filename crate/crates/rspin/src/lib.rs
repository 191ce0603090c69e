//! Exact invariants of r-spin surfaces.
//!
//! The classifying data of a 2-dimensional r-spin TQFT is a closed graded
//! Frobenius algebra: a family of super vector space pieces C_a indexed by
//! Z/r with a degree-shifting product C_a (x) C_b -> C_{a+b-1}, a coproduct,
//! a unit in degree 1 and a counit on degree -1, subject to a list of exact
//! axioms. This crate builds such algebras over the cyclotomic field
//! Q(zeta_r), verifies the axioms exactly, computes the scalar invariant the
//! algebra assigns to every diffeomorphism class of closed r-spin surface
//! (the sphere scalar, the torus invariants beta_d indexed by divisors d | r,
//! and the higher-genus invariants alpha_n, or alpha_n^(+-) for even r), and
//! analyses the results: semisimplicity via the trace form, distinctness of
//! torus invariants, and the rational-generating-function criterion on alpha
//! sequences.
//!
//! ```
//! use rspin::catalog::make_b;
//! use rspin::invariants::profile;
//! use rspin::CycQ;
//!
//! let b = make_b(3)?;
//! assert!(b.verify().all_pass());
//!
//! let table = profile(&b, 4)?;
//! assert_eq!(table.beta[&3], CycQ::from_int(3, 4));
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```
//!
//! Modules:
//! - [`cyclotomic`]: exact arithmetic in Q(zeta_r) as `Q[X]/(Phi_r)`.
//! - [`graded`]: Z/r-graded super vector spaces, sparse exact maps,
//!   Koszul-signed braiding, supertrace.
//! - [`frobenius`]: the algebra type, axiom verification, Nakayama maps,
//!   pullback along degree reduction, direct sums, graded tensor products,
//!   and the self-describing JSON file format.
//! - [`catalog`]: the concrete families A, B, C, E_kappa, F and the
//!   distinguishing algebra D.
//! - [`invariants`]: surface invariants and character arithmetic on them.
//! - [`analysis`]: semisimplicity, the two-value bound, the recurrence
//!   membership test.
//! - [`evaluator`]: a little language of generator words, typechecked by
//!   degree interfaces and evaluated exactly.

pub mod analysis;
pub mod catalog;
pub mod cyclotomic;
pub mod evaluator;
pub mod frobenius;
pub mod graded;
pub mod invariants;
pub mod linalg;

pub use cyclotomic::{CycQ, Rat};
pub use frobenius::{AxiomReport, FrobAlgebra};
pub use graded::{GradedMap, GradedSpace, Parity, WordSpace};
pub use invariants::InvariantProfile;
