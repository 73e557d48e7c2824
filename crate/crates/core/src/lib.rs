//! Distinguished geometry of the rheonomic Berwald-Moór metric on the 1-jet
//! space J¹(ℝ, M⁴).
//!
//! Every object (fundamental metric, Cartan connection, torsion and curvature
//! d-tensors, Ricci tensors, Einstein blocks, conservation laws) is computed
//! through a generic pipeline driven by second-order forward-mode Taylor
//! arithmetic, and independently through the Berwald-Moór closed forms. The
//! [`harness`] module runs the two routes against each other.

#![forbid(unsafe_code)]
#![allow(clippy::needless_range_loop, clippy::neg_cmp_op_on_partial_ord)]

pub mod connection;
pub mod curvature;
pub mod error;
pub mod fieldtheory;
pub mod geometry;
pub mod harness;
pub mod jetcore;
pub mod linalg;
pub mod metric;

pub use error::{JetError, Result};
pub use jetcore::{
    taylor2_seed, Dual4, JetPoint, QuarticTensor, Scalar, Taylor2, TimeMetric, TimeMetricValues,
    VerificationReport,
};
