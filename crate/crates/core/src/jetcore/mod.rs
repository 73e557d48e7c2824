//! Domain types shared by every stage of the pipeline.

mod point;
mod quartic;
mod report;
mod scalar;
mod taylor;
mod time_metric;

pub use point::JetPoint;
pub(crate) use point::check_positive_cone;
pub use quartic::{Contractions, Quadruple, QuarticTensor};
pub use report::{entry_errors, CheckStatus, ErrorStats, Tolerance, VerificationReport};
pub use scalar::{Dual4, Scalar};
pub use taylor::{taylor2_seed, tri, Taylor2};
pub use time_metric::{time_metric_eval, TimeMetric, TimeMetricValues};
