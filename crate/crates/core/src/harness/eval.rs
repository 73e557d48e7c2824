//! Full tensor dump at a single jet point.

use serde::Serialize;

use super::config::RunConfig;
use crate::connection::{apriori_nlc, cartan_connection, christoffel_time, CartanConnection, ChristoffelTime, NonlinearConnection};
use crate::curvature::{curvatures, ricci_scalar, torsions, CurvatureSet, RicciSet, TorsionSet};
use crate::error::{JetError, Result};
use crate::fieldtheory::{
    conservation_residuals, einstein_blocks, em_form, grav_potential, ConservationResiduals, EMForm, EinsteinBlocks,
    GravPotential,
};
use crate::jetcore::{JetPoint, TimeMetricValues};
use crate::metric::{g_scalars, metric_pair, GScalars, MetricPair};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PointEval {
    pub point: JetPoint,
    pub time_metric: TimeMetricValues,
    pub christoffel: ChristoffelTime,
    pub scalars: GScalars,
    pub metric: MetricPair,
    pub nonlinear_connection: NonlinearConnection,
    pub cartan: CartanConnection,
    pub torsions: TorsionSet,
    pub curvatures: CurvatureSet,
    pub ricci: RicciSet,
    pub grav_potential: GravPotential,
    pub einstein: EinsteinBlocks,
    pub conservation: ConservationResiduals,
    pub em: EMForm,
}

pub fn eval_point(cfg: &RunConfig, p: &JetPoint) -> Result<PointEval> {
    cfg.validate()?;
    let g = cfg.tensor()?;
    let tm = &cfg.time_metric;
    let k = cfg.constants.einstein_k;
    Ok(PointEval {
        point: *p,
        time_metric: tm.eval(p.t),
        christoffel: christoffel_time(tm, p.t),
        scalars: g_scalars(&g, &p.y)?,
        metric: metric_pair(&g, p)?,
        nonlinear_connection: apriori_nlc(tm, p),
        cartan: cartan_connection(&g, tm, p)?,
        torsions: torsions(&g, tm, p)?,
        curvatures: curvatures(&g, tm, p)?,
        ricci: ricci_scalar(&g, tm, p)?,
        grav_potential: grav_potential(&g, tm, p)?,
        einstein: einstein_blocks(&g, tm, p, k)?,
        conservation: conservation_residuals(&g, tm, p, k)?,
        em: em_form(&g, tm, p)?,
    })
}

/// Parses four comma-separated components `y1,y2,y3,y4`.
pub fn parse_y(s: &str) -> Result<[f64; 4]> {
    let v: Vec<f64> = s
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<f64>()
                .map_err(|_| JetError::config("y", format!("`{}` is not a number", x.trim())))
        })
        .collect::<Result<_>>()?;
    v.try_into()
        .map_err(|v: Vec<f64>| JetError::config("y", format!("expected 4 components, got {}", v.len())))
}
