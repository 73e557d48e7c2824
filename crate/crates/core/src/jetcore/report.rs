use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The check does not apply (e.g. a closed form that only exists for the
    /// Berwald-Moór tensor).
    Skipped,
}

/// Outcome of one named check over a batch of samples.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub samples: usize,
    #[serde(with = "nonfinite")]
    pub max_abs_err: f64,
    #[serde(with = "nonfinite")]
    pub max_rel_err: f64,
    pub pass: bool,
    pub seed: u64,
    pub status: CheckStatus,
    pub abs_tol: f64,
    pub rel_tol: f64,
}

/// Serializes non-finite errors as the strings "inf" and "nan", which JSON
/// numbers cannot represent.
mod nonfinite {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_nan() {
            s.serialize_str("nan")
        } else if v.is_infinite() {
            s.serialize_str(if *v > 0.0 { "inf" } else { "-inf" })
        } else {
            s.serialize_f64(*v)
        }
    }

    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Repr {
        Num(f64),
        Str(String),
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(v),
            Repr::Str(s) => match s.as_str() {
                "inf" => Ok(f64::INFINITY),
                "-inf" => Ok(f64::NEG_INFINITY),
                "nan" => Ok(f64::NAN),
                other => Err(serde::de::Error::custom(format!("invalid error value `{other}`"))),
            },
        }
    }
}

/// Absolute/relative acceptance thresholds. A check passes when either bound
/// holds for the worst sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerance {
    pub const fn abs(abs: f64) -> Self {
        Tolerance { abs, rel: 0.0 }
    }
    pub const fn rel(rel: f64) -> Self {
        Tolerance { abs: 0.0, rel }
    }
    pub const fn new(abs: f64, rel: f64) -> Self {
        Tolerance { abs, rel }
    }

    pub fn accepts(&self, max_abs: f64, max_rel: f64) -> bool {
        max_abs <= self.abs || max_rel <= self.rel
    }
}

/// Running max of absolute and relative errors.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ErrorStats {
    pub samples: usize,
    pub max_abs: f64,
    pub max_rel: f64,
}

impl ErrorStats {
    pub fn record(&mut self, abs: f64, rel: f64) {
        self.samples += 1;
        // NaN must never be swallowed by max()
        self.max_abs = if abs.is_nan() { f64::INFINITY } else { self.max_abs.max(abs) };
        self.max_rel = if rel.is_nan() { f64::INFINITY } else { self.max_rel.max(rel) };
    }

    /// Records the entrywise comparison of `got` against `want`.
    pub fn compare(&mut self, got: &[f64], want: &[f64]) {
        let (a, r) = entry_errors(got, want);
        self.record(a, r);
    }

    pub fn merge(&mut self, other: &ErrorStats) {
        self.samples += other.samples;
        self.max_abs = self.max_abs.max(other.max_abs);
        self.max_rel = self.max_rel.max(other.max_rel);
    }

    pub fn into_report(self, name: &str, tol: Tolerance, seed: u64) -> VerificationReport {
        let pass = self.samples > 0 && tol.accepts(self.max_abs, self.max_rel);
        VerificationReport {
            check_name: name.to_string(),
            samples: self.samples,
            max_abs_err: self.max_abs,
            max_rel_err: self.max_rel,
            pass,
            seed,
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            abs_tol: tol.abs,
            rel_tol: tol.rel,
        }
    }
}

impl VerificationReport {
    pub fn skipped(name: &str, seed: u64) -> Self {
        VerificationReport {
            check_name: name.to_string(),
            samples: 0,
            max_abs_err: 0.0,
            max_rel_err: 0.0,
            pass: true,
            seed,
            status: CheckStatus::Skipped,
            abs_tol: 0.0,
            rel_tol: 0.0,
        }
    }
}

/// Max absolute error and max entrywise relative error of `got` vs `want`.
///
/// Entries whose expected value is exactly zero are measured relative to the
/// largest expected magnitude instead.
pub fn entry_errors(got: &[f64], want: &[f64]) -> (f64, f64) {
    assert_eq!(got.len(), want.len());
    let scale = want.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    for (g, w) in got.iter().zip(want) {
        let d = (g - w).abs();
        let d = if d.is_nan() { f64::INFINITY } else { d };
        max_abs = max_abs.max(d);
        let denom = if *w != 0.0 { w.abs() } else { scale };
        let rel = if d == 0.0 {
            0.0
        } else if denom > 0.0 {
            d / denom
        } else {
            f64::INFINITY
        };
        max_rel = max_rel.max(rel);
    }
    (max_abs, max_rel)
}
