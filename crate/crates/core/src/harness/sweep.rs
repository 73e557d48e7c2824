//! Grid sweeps of scalar outputs over t and a ray or box in y.
//!
//! Grid syntax: `;`-separated axes `name=values`, where values are either a
//! comma list or `start:stop:count` (inclusive, evenly spaced). Axis names
//! are `t`, then either `s` with an optional `dir=d1,d2,d3,d4` (the ray
//! y = s·dir) or all four of `y1`..`y4` (a box).

use std::str::FromStr;

use serde::Serialize;

use super::config::RunConfig;
use crate::curvature::ricci_scalar;
use crate::error::{JetError, Result};
use crate::fieldtheory::{conservation_residuals, xi11};
use crate::jetcore::JetPoint;
use crate::metric::g_scalars;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SweepField {
    Sc,
    Xi11,
    T1,
    Ti,
    Tyi,
    G1111,
}

impl SweepField {
    pub const ALL: [SweepField; 6] = [
        SweepField::Sc,
        SweepField::Xi11,
        SweepField::T1,
        SweepField::Ti,
        SweepField::Tyi,
        SweepField::G1111,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SweepField::Sc => "Sc",
            SweepField::Xi11 => "xi11",
            SweepField::T1 => "T1",
            SweepField::Ti => "Ti",
            SweepField::Tyi => "Tyi",
            SweepField::G1111 => "G1111",
        }
    }

    pub fn columns(self) -> Vec<String> {
        match self {
            SweepField::Ti | SweepField::Tyi => {
                (1..=4).map(|i| format!("{}_{i}", self.name())).collect()
            }
            _ => vec![self.name().to_string()],
        }
    }
}

impl FromStr for SweepField {
    type Err = JetError;

    fn from_str(s: &str) -> Result<Self> {
        Self::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| {
                let known: Vec<&str> = Self::ALL.iter().map(|f| f.name()).collect();
                JetError::config("field", format!("unknown field `{s}`; expected one of {}", known.join(", ")))
            })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum YAxes {
    Ray { s: Vec<f64>, dir: [f64; 4] },
    Box([Vec<f64>; 4]),
}

#[derive(Debug, Clone, PartialEq)]
pub struct GridSpec {
    pub t: Vec<f64>,
    pub y: YAxes,
}

/// Upper bound on the number of grid points a spec may describe.
pub const MAX_GRID_POINTS: usize = 1_000_000;

fn parse_number(s: &str, axis: &str) -> Result<f64> {
    let v: f64 = s
        .trim()
        .parse()
        .map_err(|_| JetError::config(format!("grid.{axis}"), format!("`{}` is not a number", s.trim())))?;
    if !v.is_finite() {
        return Err(JetError::config(format!("grid.{axis}"), "values must be finite"));
    }
    Ok(v)
}

fn parse_values(s: &str, axis: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    match parts.as_slice() {
        [a, b, n] => {
            let (a, b) = (parse_number(a, axis)?, parse_number(b, axis)?);
            let n: usize = n.trim().parse().map_err(|_| {
                JetError::config(format!("grid.{axis}"), format!("count `{}` is not a positive integer", n.trim()))
            })?;
            if n == 0 || n > MAX_GRID_POINTS {
                return Err(JetError::config(
                    format!("grid.{axis}"),
                    format!("count must be in 1..={MAX_GRID_POINTS}"),
                ));
            }
            if n == 1 {
                return Ok(vec![a]);
            }
            let step = (b - a) / (n - 1) as f64;
            Ok((0..n).map(|i| if i + 1 == n { b } else { a + step * i as f64 }).collect())
        }
        [list] => {
            let v: Vec<f64> = list
                .split(',')
                .map(|x| parse_number(x, axis))
                .collect::<Result<_>>()?;
            Ok(v)
        }
        _ => Err(JetError::config(
            format!("grid.{axis}"),
            "expected a comma list or start:stop:count",
        )),
    }
}

/// Parses a grid spec; see the module documentation for the syntax.
pub fn parse_grid(spec: &str) -> Result<GridSpec> {
    let mut t = None;
    let mut s = None;
    let mut dir = None;
    let mut ys: [Option<Vec<f64>>; 4] = Default::default();
    for part in spec.split(';').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, values) = part
            .split_once('=')
            .ok_or_else(|| JetError::config("grid", format!("axis `{part}` lacks `=`")))?;
        let name = name.trim();
        let slot = match name {
            "t" => &mut t,
            "s" => &mut s,
            "dir" => &mut dir,
            "y1" => &mut ys[0],
            "y2" => &mut ys[1],
            "y3" => &mut ys[2],
            "y4" => &mut ys[3],
            other => return Err(JetError::config("grid", format!("unknown axis `{other}`"))),
        };
        if slot.is_some() {
            return Err(JetError::config(format!("grid.{name}"), "axis given twice"));
        }
        *slot = Some(parse_values(values, name)?);
    }
    let t = t.unwrap_or_else(|| vec![0.0]);
    let any_y = ys.iter().any(Option::is_some);
    let y = match (s, any_y) {
        (Some(_), true) => {
            return Err(JetError::config("grid", "use either the ray axis `s` or the box axes `y1`..`y4`"))
        }
        (Some(s), false) => {
            let dir = match dir {
                None => [1.0; 4],
                Some(d) => d.try_into().map_err(|_| {
                    JetError::config("grid.dir", "direction needs exactly four components")
                })?,
            };
            YAxes::Ray { s, dir }
        }
        (None, true) => {
            if dir.is_some() {
                return Err(JetError::config("grid.dir", "direction only applies to the ray axis `s`"));
            }
            let [a, b, c, d] = ys;
            match (a, b, c, d) {
                (Some(a), Some(b), Some(c), Some(d)) => YAxes::Box([a, b, c, d]),
                _ => return Err(JetError::config("grid", "a box needs all of y1, y2, y3, y4")),
            }
        }
        (None, false) => return Err(JetError::config("grid", "no y axes; give `s` or `y1`..`y4`")),
    };
    let grid = GridSpec { t, y };
    let n = grid.len_checked().ok_or_else(|| JetError::config("grid", "grid is too large"))?;
    if n > MAX_GRID_POINTS {
        return Err(JetError::config("grid", format!("{n} points exceed the limit of {MAX_GRID_POINTS}")));
    }
    Ok(grid)
}

impl GridSpec {
    fn len_checked(&self) -> Option<usize> {
        let ny = match &self.y {
            YAxes::Ray { s, .. } => s.len(),
            YAxes::Box(axes) => axes.iter().try_fold(1usize, |acc, a| acc.checked_mul(a.len()))?,
        };
        self.t.len().checked_mul(ny)
    }

    /// Grid points in lexicographic order of their indices (t slowest).
    pub fn points(&self) -> Vec<(f64, [f64; 4])> {
        let mut out = Vec::new();
        for &t in &self.t {
            match &self.y {
                YAxes::Ray { s, dir } => {
                    for &si in s {
                        out.push((t, dir.map(|d| si * d)));
                    }
                }
                YAxes::Box([a, b, c, d]) => {
                    for &y1 in a {
                        for &y2 in b {
                            for &y3 in c {
                                for &y4 in d {
                                    out.push((t, [y1, y2, y3, y4]));
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub t: f64,
    pub y: [f64; 4],
    pub values: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepTable {
    pub field: SweepField,
    pub columns: Vec<String>,
    pub rows: Vec<SweepRow>,
}

fn field_values(cfg: &RunConfig, field: SweepField, p: &JetPoint) -> Result<Vec<f64>> {
    let g = cfg.tensor()?;
    let k = cfg.constants.einstein_k;
    Ok(match field {
        SweepField::Sc => vec![ricci_scalar(&g, &cfg.time_metric, p)?.sc],
        SweepField::Xi11 => vec![xi11(&cfg.time_metric, p.t, k)?],
        SweepField::T1 => vec![conservation_residuals(&g, &cfg.time_metric, p, k)?.t1],
        SweepField::Ti => conservation_residuals(&g, &cfg.time_metric, p, k)?.ti.to_vec(),
        SweepField::Tyi => conservation_residuals(&g, &cfg.time_metric, p, k)?.tyi.to_vec(),
        SweepField::G1111 => vec![g_scalars(&g, &p.y)?.g1111],
    })
}

/// Evaluates `field` at every grid point. A point outside the positive cone
/// is an error for the whole sweep.
pub fn sweep(cfg: &RunConfig, field: SweepField, grid: &GridSpec) -> Result<SweepTable> {
    cfg.validate()?;
    let mut rows = Vec::new();
    for (t, y) in grid.points() {
        let p = JetPoint::at(t, y)?;
        rows.push(SweepRow {
            t,
            y,
            values: field_values(cfg, field, &p)?,
        });
    }
    Ok(SweepTable {
        field,
        columns: field.columns(),
        rows,
    })
}
