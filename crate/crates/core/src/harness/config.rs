//! Run configuration: a TOML document with the sections `time_metric`,
//! `tensor`, `sampling`, `constants` and `tolerances`.

use serde::{Deserialize, Serialize};

use crate::error::{JetError, Result};
use crate::jetcore::{QuarticTensor, TimeMetric};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TensorKind {
    BerwaldMoor,
    Custom,
}

/// One independent component of G, indices 1-based in any order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComponentSpec {
    pub index: [u8; 4],
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TensorSpec {
    pub kind: TensorKind,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub components: Vec<ComponentSpec>,
}

impl TensorSpec {
    pub fn build(&self) -> Result<QuarticTensor> {
        match self.kind {
            TensorKind::BerwaldMoor => Ok(QuarticTensor::berwald_moor()),
            TensorKind::Custom => QuarticTensor::from_components(
                self.components.iter().map(|c| (c.index, c.value)),
            ),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sampling {
    pub seed: u64,
    pub samples: usize,
    pub y_min: f64,
    pub y_max: f64,
    pub t_min: f64,
    pub t_max: f64,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling {
            seed: 42,
            samples: 1000,
            y_min: 0.1,
            y_max: 10.0,
            t_min: -1.0,
            t_max: 1.0,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub einstein_k: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Constants { einstein_k: 1.0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub rel: f64,
    pub abs: f64,
    pub fd: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            rel: 1e-9,
            abs: 1e-10,
            fd: 1e-5,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunConfig {
    pub time_metric: TimeMetric,
    pub tensor: TensorSpec,
    pub sampling: Sampling,
    pub constants: Constants,
    pub tolerances: Tolerances,
}

impl RunConfig {
    /// Berwald-Moór with the given time metric and all defaults.
    pub fn berwald_moor(time_metric: TimeMetric) -> Self {
        RunConfig {
            time_metric,
            tensor: TensorSpec {
                kind: TensorKind::BerwaldMoor,
                components: Vec::new(),
            },
            sampling: Sampling::default(),
            constants: Constants::default(),
            tolerances: Tolerances::default(),
        }
    }

    pub fn tensor(&self) -> Result<QuarticTensor> {
        self.tensor.build().map_err(|e| match e {
            JetError::Config { .. } => e,
            other => JetError::config("tensor.components", other.to_string()),
        })
    }

    /// Checks every invariant and returns the first violation.
    pub fn validate(&self) -> Result<()> {
        let s = &self.sampling;
        self.time_metric
            .validated()
            .map_err(|e| JetError::config("time_metric", e.to_string()))?;
        if self.tensor.kind == TensorKind::Custom && self.tensor.components.is_empty() {
            return Err(JetError::config(
                "tensor.components",
                "custom tensor needs at least one component",
            ));
        }
        if self.tensor.kind == TensorKind::BerwaldMoor && !self.tensor.components.is_empty() {
            return Err(JetError::config(
                "tensor.components",
                "components are only allowed for kind = \"custom\"",
            ));
        }
        self.tensor()?;
        if s.samples < 1 {
            return Err(JetError::config("sampling.samples", "must be at least 1"));
        }
        if !(s.y_min > 0.0) || !s.y_min.is_finite() {
            return Err(JetError::config(
                "sampling.y_min",
                format!("must be positive and finite, got {}", s.y_min),
            ));
        }
        if !(s.y_max > s.y_min) || !s.y_max.is_finite() {
            return Err(JetError::config(
                "sampling.y_max",
                format!("must be finite and exceed y_min = {}, got {}", s.y_min, s.y_max),
            ));
        }
        if !s.t_min.is_finite() {
            return Err(JetError::config("sampling.t_min", "must be finite"));
        }
        if !s.t_max.is_finite() || s.t_max < s.t_min {
            return Err(JetError::config(
                "sampling.t_max",
                format!("must be finite and at least t_min = {}, got {}", s.t_min, s.t_max),
            ));
        }
        let k = self.constants.einstein_k;
        if k == 0.0 || !k.is_finite() {
            return Err(JetError::config(
                "constants.einstein_k",
                format!("must be finite and nonzero, got {k}"),
            ));
        }
        for (name, v) in [
            ("tolerances.rel", self.tolerances.rel),
            ("tolerances.abs", self.tolerances.abs),
            ("tolerances.fd", self.tolerances.fd),
        ] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(JetError::config(name, format!("must be positive, got {v}")));
            }
        }
        Ok(())
    }

    pub fn to_toml(&self) -> String {
        toml::to_string(&RawConfig::from(self)).expect("config serializes")
    }
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    time_metric: Option<toml::Value>,
    tensor: Option<RawTensor>,
    sampling: Option<RawSampling>,
    constants: Option<RawConstants>,
    tolerances: Option<RawTolerances>,
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTensor {
    kind: TensorKind,
    #[serde(default)]
    components: Vec<ComponentSpec>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSampling {
    seed: Option<u64>,
    samples: Option<i64>,
    y_min: Option<f64>,
    y_max: Option<f64>,
    t_min: Option<f64>,
    t_max: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConstants {
    einstein_k: Option<f64>,
}

#[derive(Debug, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawTolerances {
    rel: Option<f64>,
    abs: Option<f64>,
    fd: Option<f64>,
}

impl From<&RunConfig> for RawConfig {
    fn from(c: &RunConfig) -> Self {
        let s = c.sampling;
        RawConfig {
            time_metric: Some(toml::Value::try_from(c.time_metric).expect("time metric serializes")),
            tensor: Some(RawTensor {
                kind: c.tensor.kind,
                components: c.tensor.components.clone(),
            }),
            sampling: Some(RawSampling {
                seed: Some(s.seed),
                samples: Some(s.samples as i64),
                y_min: Some(s.y_min),
                y_max: Some(s.y_max),
                t_min: Some(s.t_min),
                t_max: Some(s.t_max),
            }),
            constants: Some(RawConstants {
                einstein_k: Some(c.constants.einstein_k),
            }),
            tolerances: Some(RawTolerances {
                rel: Some(c.tolerances.rel),
                abs: Some(c.tolerances.abs),
                fd: Some(c.tolerances.fd),
            }),
        }
    }
}

const SECTIONS: [&str; 5] = ["time_metric", "tensor", "sampling", "constants", "tolerances"];

/// Names the section a parse error falls in: the nearest table header
/// before the error span, else a section named in the message.
fn section_of(text: &str, e: &toml::de::Error) -> String {
    if let Some(span) = e.span() {
        let before = text.get(..span.start.min(text.len())).unwrap_or("");
        let header = before.lines().rev().find_map(|l| {
            let l = l.trim();
            let name = l.strip_prefix('[')?.trim_start_matches('[');
            let name = name.split(']').next()?.trim();
            Some(name.split('.').next().unwrap_or(name).to_string())
        });
        if let Some(h) = header.filter(|h| SECTIONS.contains(&h.as_str())) {
            return h;
        }
    }
    let msg = e.message();
    SECTIONS
        .iter()
        .find(|k| msg.contains(*k))
        .map_or_else(|| "document".to_string(), |k| k.to_string())
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig> {
    let raw: RawConfig = toml::from_str(text)
        .map_err(|e| JetError::config(section_of(text, &e), e.message().to_string()))?;

    let tm_value = raw
        .time_metric
        .ok_or_else(|| JetError::config("time_metric", "section is required"))?;
    let time_metric: TimeMetric = tm_value
        .try_into()
        .map_err(|e: toml::de::Error| JetError::config("time_metric", e.message().to_string()))?;

    let tensor = match raw.tensor {
        Some(t) => TensorSpec {
            kind: t.kind,
            components: t.components,
        },
        None => TensorSpec {
            kind: TensorKind::BerwaldMoor,
            components: Vec::new(),
        },
    };

    let d = Sampling::default();
    let rs = raw.sampling.unwrap_or_default();
    let samples = match rs.samples {
        None => d.samples,
        Some(n) if n >= 1 => n as usize,
        Some(n) => return Err(JetError::config("sampling.samples", format!("must be at least 1, got {n}"))),
    };
    let sampling = Sampling {
        seed: rs.seed.unwrap_or(d.seed),
        samples,
        y_min: rs.y_min.unwrap_or(d.y_min),
        y_max: rs.y_max.unwrap_or(d.y_max),
        t_min: rs.t_min.unwrap_or(d.t_min),
        t_max: rs.t_max.unwrap_or(d.t_max),
    };
    let rc = raw.constants.unwrap_or_default();
    let constants = Constants {
        einstein_k: rc.einstein_k.unwrap_or(Constants::default().einstein_k),
    };
    let dt = Tolerances::default();
    let rt = raw.tolerances.unwrap_or_default();
    let tolerances = Tolerances {
        rel: rt.rel.unwrap_or(dt.rel),
        abs: rt.abs.unwrap_or(dt.abs),
        fd: rt.fd.unwrap_or(dt.fd),
    };

    let cfg = RunConfig {
        time_metric,
        tensor,
        sampling,
        constants,
        tolerances,
    };
    cfg.validate()?;
    Ok(cfg)
}
