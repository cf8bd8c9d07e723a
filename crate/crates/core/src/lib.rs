//! Exact arithmetic, abc and abcd instances, and numerical evaluators for
//! subexponential abc-type bounds.
//!
//! - [`arith`]: primality, factorization, radicals, smooth numbers.
//! - [`logfun`]: big-integer logs, iterated and starred logs, growth function.
//! - [`bounds`]: the inequalities, each returning a [`BoundReport`].
//! - [`search`]: exhaustive and smooth scans, κ fitting, resumable scans.
//! - [`reduce4`]: reduction of an abcd quadruple to an abc triple.

pub mod arith;
pub mod bounds;
pub mod logfun;
pub mod reduce4;
pub mod search;

pub use arith::{ArithError, Factorization, Factorizer};
pub use bounds::{BoundError, BoundKind, BoundReport, Rational};
pub use logfun::LogError;
pub use reduce4::{CaseTag, ReduceError, ReductionResult};
pub use search::{AbcTriple, AbcdQuadruple, InstanceError, MinPair, SearchError};
