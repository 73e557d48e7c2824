use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};

/// A point (t, x, y) of J¹(ℝ, M⁴) with y in the open positive cone.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JetPoint {
    pub t: f64,
    pub x: [f64; 4],
    pub y: [f64; 4],
}

impl JetPoint {
    pub fn new(t: f64, x: [f64; 4], y: [f64; 4]) -> Result<Self> {
        check_positive_cone(&y)?;
        if !t.is_finite() || x.iter().any(|v| !v.is_finite()) {
            return Err(JetError::Domain("t and x must be finite".into()));
        }
        Ok(JetPoint { t, x, y })
    }

    /// Point at the spatial origin; x never enters the x-constant geometry.
    pub fn at(t: f64, y: [f64; 4]) -> Result<Self> {
        Self::new(t, [0.0; 4], y)
    }

    /// G₁₁₁₁ of the Berwald-Moór tensor, y¹y²y³y⁴.
    pub fn bm_g1111(&self) -> f64 {
        self.y.iter().product()
    }
}

pub(crate) fn check_positive_cone(y: &[f64; 4]) -> Result<()> {
    match y.iter().position(|v| !(v.is_finite() && *v > 0.0)) {
        Some(i) => Err(JetError::Domain(format!(
            "y[{}] = {} is not in the positive cone",
            i + 1,
            y[i]
        ))),
        None => Ok(()),
    }
}
