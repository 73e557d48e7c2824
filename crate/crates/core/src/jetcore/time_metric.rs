use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};

/// A Riemannian metric h₁₁(t) on ℝ drawn from a closed-form family.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum TimeMetric {
    /// h₁₁ = c
    Constant { c: f64 },
    /// h₁₁ = c·e^{λt}
    Exponential { c: f64, lambda: f64 },
    /// h₁₁ = (1 + t²)^a
    Power { a: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TimeMetricValues {
    pub h11: f64,
    pub h11_inv: f64,
    pub dh11: f64,
    pub d2h11: f64,
}

impl TimeMetric {
    pub fn constant(c: f64) -> Result<Self> {
        Self::validated(TimeMetric::Constant { c })
    }

    pub fn exponential(c: f64, lambda: f64) -> Result<Self> {
        Self::validated(TimeMetric::Exponential { c, lambda })
    }

    pub fn power(a: f64) -> Result<Self> {
        Self::validated(TimeMetric::Power { a })
    }

    pub fn validated(self) -> Result<Self> {
        match self {
            TimeMetric::Constant { c } | TimeMetric::Exponential { c, .. } if !(c > 0.0) => Err(
                JetError::Construction(format!("time metric scale c = {c} must be positive")),
            ),
            TimeMetric::Exponential { lambda, .. } if !lambda.is_finite() => Err(
                JetError::Construction("exponential rate must be finite".into()),
            ),
            TimeMetric::Power { a } if !a.is_finite() => {
                Err(JetError::Construction("power exponent must be finite".into()))
            }
            TimeMetric::Constant { c } | TimeMetric::Exponential { c, .. } if !c.is_finite() => {
                Err(JetError::Construction("time metric scale must be finite".into()))
            }
            tm => Ok(tm),
        }
    }

    pub fn family_name(&self) -> &'static str {
        match self {
            TimeMetric::Constant { .. } => "constant",
            TimeMetric::Exponential { .. } => "exponential",
            TimeMetric::Power { .. } => "power",
        }
    }

    /// h₁₁, h¹¹ and the exact first and second t-derivatives of h₁₁.
    pub fn eval(&self, t: f64) -> TimeMetricValues {
        let (h, dh, d2h) = match *self {
            TimeMetric::Constant { c } => (c, 0.0, 0.0),
            TimeMetric::Exponential { c, lambda } => {
                let h = c * (lambda * t).exp();
                (h, lambda * h, lambda * lambda * h)
            }
            TimeMetric::Power { a } => {
                let u = 1.0 + t * t;
                let h = u.powf(a);
                let dh = 2.0 * a * t * u.powf(a - 1.0);
                let d2h = 2.0 * a * u.powf(a - 1.0) + 4.0 * a * (a - 1.0) * t * t * u.powf(a - 2.0);
                (h, dh, d2h)
            }
        };
        TimeMetricValues {
            h11: h,
            h11_inv: 1.0 / h,
            dh11: dh,
            d2h11: d2h,
        }
    }
}

/// Free-function form of [`TimeMetric::eval`].
pub fn time_metric_eval(tm: &TimeMetric, t: f64) -> TimeMetricValues {
    tm.eval(t)
}
