//! Decide CAT(0) embeddability of metric spaces with at most five points and
//! build explicit witness spaces for graph patterns.
//!
//! The crate is organised bottom-up:
//!
//! - [`metric`]: validated finite metric spaces, comparison angles, generators.
//! - [`boxtimes`]: the ⊠-form, its exact minimisation over the unit square, and
//!   the embeddability decision for at most five points.
//! - [`quad`]: planar and spatial comparison configurations for four points and
//!   the under/over-distance trichotomy.
//! - [`complex`]: piecewise-Euclidean complexes with exact intrinsic distances.
//! - [`graph`]: small simple graphs and their isomorphism catalogue.
//! - [`witness`]: witness construction and verification for graph patterns.
//! - [`qmi`]: quadratic metric inequalities.

pub mod boxtimes;
pub mod complex;
mod error;
pub mod gen;
pub mod geom;
pub mod graph;
pub mod metric;
pub mod qmi;
pub mod quad;
mod solver;
pub mod witness;

pub use boxtimes::{
    boxtimes_form, decide_cat0_embeddable, minimize_boxtimes, space_satisfies, BoxtimesCertificate,
    BoxtimesPoint, Decision, Verdict,
};
pub use complex::{ComplexSpace, Feature, Gluing, MarkedPoint, Piece};
pub use error::{Error, Result};
pub use graph::SimpleGraph;
pub use metric::{FiniteMetricSpace, QuadrupleView};
pub use qmi::QuadraticMetricInequality;
pub use quad::{classify, Classification, QuadVerdict};
pub use witness::{construct, verify, Strategy, VerificationReport, Witness, WitnessConfig};

/// Default relative tolerance used for validation and verdicts.
pub const DEFAULT_TOL: f64 = 1e-9;
