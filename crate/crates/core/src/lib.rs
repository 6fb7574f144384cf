//! Exact minimum total displacement spreading of points on a line.
//!
//! Given points and a separation `delta`, [`solve`] moves the points so
//! every pair is at least `delta` apart while minimizing the sum of the
//! distances moved. It runs in O(n log n) using per-chain pairing heaps.
//!
//! Coordinates are exact integers. The decimal front end ([`normalize_instance`])
//! scales every literal of an instance to one shared power of ten and
//! produces an [`Instance`] over `i128`; the algorithms themselves are
//! generic over any [`Scalar`].

pub mod audit;
pub mod decimal;
pub mod error;
pub mod harness;
pub mod heap;
pub mod model;
pub mod oracles;
pub mod scalar;
pub mod solver;

pub use audit::{audit, decompose_chains, AuditReport, ChainView};
pub use decimal::{format_scaled, parse_scalar, ScaledInt};
pub use error::{Error, Result};
pub use heap::PairingHeap;
pub use model::{normalize_instance, total_cost, Configuration, ProblemInstance};
pub use scalar::Scalar;
pub use solver::{replay, solve, Counters, SolveOptions, SolveResult, TraceEvent, TraceKind};

/// Instance over the default 128-bit coordinate type.
pub type Instance = ProblemInstance<i128>;
/// Configuration over the default 128-bit coordinate type.
pub type Placement = Configuration<i128>;
/// Solve result over the default 128-bit coordinate type.
pub type Solution = SolveResult<i128>;
/// 64-bit variants for callers whose inputs fit.
pub type Instance64 = ProblemInstance<i64>;
pub type Placement64 = Configuration<i64>;
