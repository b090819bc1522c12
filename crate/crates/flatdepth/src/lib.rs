//! Exact combinatorial depth for low-dimensional flats.
//!
//! Given a finite arrangement of hyperplanes in `R^d` and two flats of
//! dimension at most one (points and lines), this crate computes the crossing
//! distance between the flats: the minimum number of hyperplanes crossed by
//! any segment with one endpoint on each flat. Everything runs over arbitrary
//! precision rationals, so results are exact and reproducible.
//!
//! Two statistical depth notions reduce to crossing distance through
//! projective point-hyperplane duality and are exposed directly:
//!
//! * [`regression_depth_line3`](depth::regression_depth_line3) and
//!   [`regression_depth_line2`](depth::regression_depth_line2): the number of
//!   observations a line must pass through as it tilts to vertical.
//! * [`tukey_depth2`](depth::tukey_depth2): the smallest number of points in
//!   any closed halfplane containing a query point.
//!
//! The solver reduces each query to a covering problem on a product of at
//! most two circles ([`reduce::build_instance`]) and sweeps it with a
//! coverage segment tree ([`sweep::solve`]) in `O(n log n)`. A brute-force
//! cell enumeration ([`oracle`]) answers the same queries in polynomial time
//! and is used throughout the tests as an independent referee.
//!
//! Every result carries a witness pair of segment endpoints whose crossing
//! count can be re-verified from scratch with [`reduce`] primitives alone.

pub mod circle;
pub mod depth;
pub mod error;
pub mod generate;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod projective;
pub mod rat;
pub mod reduce;
pub mod segtree;
pub mod sweep;

pub use depth::{
    crossing_distance, regression_depth_line2, regression_depth_line3, tukey_depth2,
    AffineFlatSpec, DepthReport, PrimalHyperplane, PrimalWitness, SolverKind,
};
pub use error::Error;
pub use rat::Rat;
pub use reduce::{BuildOutcome, CoveringInstance, DepthResult, Witness};
