//! The verification catalog: every identity and oracle comparison, run over
//! seeded sample points and reduced to one report per check.

use serde::Serialize;

use super::config::RunConfig;
use super::sampling::PointSampler;
use crate::connection::{bm_cartan_closed, cartan_connection, christoffel_time, A_TABLE};
use crate::curvature::{
    bm_ricci_vertical_published, bm_s_closed, bm_s_raised_published, bm_s_raised_published_jet,
    bm_scalar_curvature_published, bm_torsions_closed, curvatures, divergence_jet, raise,
    ricci_scalar, s_antisymmetry_defect, s_raised_c_contraction, s_raised_divergence, torsions,
};
use crate::error::Result;
use crate::fieldtheory::{
    conservation_from_raised, conservation_residuals, conservation_residuals_unreduced,
    conservation_rhs_published, des_check, einstein_blocks, em_form, raise_blocks,
    stress_asymmetry, ConservationResiduals,
};
use crate::geometry::ricci_contract;
use crate::jetcore::{
    entry_errors, taylor2_seed, CheckStatus, ErrorStats, JetPoint, QuarticTensor, TimeMetric, Tolerance,
    VerificationReport,
};
use crate::linalg::{det4, flatten2, flatten3, flatten4, max_abs};
use crate::metric::{bm_metric_closed, f_squared_jet, g_scalars, metric_jet, metric_pair};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SuiteResult {
    pub reports: Vec<VerificationReport>,
    pub overall_pass: bool,
    pub config_echo: RunConfig,
}

impl SuiteResult {
    pub fn failed(&self) -> impl Iterator<Item = &VerificationReport> {
        self.reports.iter().filter(|r| r.status == CheckStatus::Fail)
    }
}

struct Ctx<'a> {
    cfg: &'a RunConfig,
    g: QuarticTensor,
    tm: TimeMetric,
    k: f64,
}

impl Ctx<'_> {
    fn default_tol(&self) -> Tolerance {
        Tolerance::new(self.cfg.tolerances.abs, self.cfg.tolerances.rel)
    }
}

/// How many sample points a check uses, given the configured count.
#[derive(Clone, Copy)]
enum Budget {
    All,
    AtMost(usize),
    Fixed(usize),
}

impl Budget {
    fn resolve(self, configured: usize) -> usize {
        match self {
            Budget::All => configured,
            Budget::AtMost(n) => configured.min(n),
            Budget::Fixed(n) => n,
        }
    }
}

/// Per-sample outcome: (absolute error, relative error).
type Sample = Result<(f64, f64)>;

struct Check {
    name: &'static str,
    bm_only: bool,
    budget: Budget,
    tol: fn(&Ctx) -> Tolerance,
    run: fn(&Ctx, &JetPoint, &mut PointSampler) -> Sample,
}

fn tol_default(c: &Ctx) -> Tolerance {
    c.default_tol()
}

/// Absolute error and the same error measured against the largest expected
/// magnitude.
fn norm_errors(got: &[f64], want: &[f64]) -> (f64, f64) {
    let scale = max_abs(want);
    let d = got
        .iter()
        .zip(want)
        .fold(0.0f64, |m, (a, b)| {
            let e = (a - b).abs();
            if e.is_nan() {
                f64::INFINITY
            } else {
                m.max(e)
            }
        });
    let rel = if d == 0.0 { 0.0 } else if scale > 0.0 { d / scale } else { f64::INFINITY };
    (d, rel)
}

fn flag(ok: bool) -> (f64, f64) {
    if ok {
        (0.0, 0.0)
    } else {
        (1.0, 1.0)
    }
}

fn bm_gscalar_parts(c: &Ctx, p: &JetPoint) -> Result<crate::metric::GScalars> {
    g_scalars(&c.g, &p.y)
}

const CATALOG: &[Check] = &[
    // fundamental metric
    Check {
        name: "metric.closed_form_oracle",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-10),
        run: |c, p, _| {
            let got = metric_pair(&c.g, p)?;
            let want = bm_metric_closed(&p.y)?;
            let mut a = flatten2(&got.g_lo);
            a.extend(flatten2(&got.g_up));
            let mut b = flatten2(&want.g_lo);
            b.extend(flatten2(&want.g_up));
            Ok(entry_errors(&a, &b))
        },
    },
    Check {
        name: "metric.inverse_identity",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let m = metric_pair(&c.g, p)?;
            let r = m.identity_residual();
            Ok((r, r))
        },
    },
    Check {
        name: "metric.energy_hessian",
        bm_only: false,
        budget: Budget::All,
        tol: tol_default,
        run: |c, p, _| {
            let f2 = f_squared_jet(&c.g, &c.tm, p)?;
            let h = c.tm.eval(p.t).h11;
            let m = metric_pair(&c.g, p)?;
            let hess = f2.hessian();
            let got: Vec<f64> = hess.iter().flatten().map(|v| 0.5 * h * v).collect();
            Ok(norm_errors(&got, &flatten2(&m.g_lo)))
        },
    },
    // G-scalars
    Check {
        name: "gscalars.euler_relations",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-12),
        run: |c, p, _| {
            let s = bm_gscalar_parts(c, p)?;
            let y = p.y;
            let mut got = vec![(0..4).map(|i| s.gi111[i] * y[i]).sum::<f64>()];
            let mut want = vec![4.0 * s.g1111];
            for i in 0..4 {
                got.push((0..4).map(|j| s.gij11[i][j] * y[j]).sum());
                want.push(3.0 * s.gi111[i]);
                for j in 0..4 {
                    got.push((0..4).map(|k| s.gijk1[i][j][k] * y[k]).sum());
                    want.push(2.0 * s.gij11[i][j]);
                }
            }
            Ok(norm_errors(&got, &want))
        },
    },
    Check {
        name: "gscalars.determinant",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-12),
        run: |c, p, _| {
            let s = bm_gscalar_parts(c, p)?;
            Ok(entry_errors(&[det4(&s.gij11)], &[-3.0 * s.g1111 * s.g1111]))
        },
    },
    Check {
        name: "gscalars.script_g_and_gj",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-12),
        run: |c, p, _| {
            let s = bm_gscalar_parts(c, p)?;
            let mut got = vec![s.g_script];
            got.extend(s.gj_up);
            let mut want = vec![2.0 / 3.0 * s.g1111];
            want.extend(p.y.map(|v| v / 3.0));
            Ok(entry_errors(&got, &want))
        },
    },
    // Cartan connection
    Check {
        name: "cartan.closed_form_oracle",
        bm_only: true,
        budget: Budget::All,
        tol: tol_default,
        run: |c, p, _| {
            let got = cartan_connection(&c.g, &c.tm, p)?;
            let want = bm_cartan_closed(&c.tm, p)?;
            Ok(entry_errors(&flatten3(&got.c), &flatten3(&want.c)))
        },
    },
    Check {
        name: "cartan.a_table_at_unit_point",
        bm_only: true,
        budget: Budget::Fixed(1),
        tol: |_| Tolerance::abs(1e-14),
        run: |c, _, _| {
            let got = cartan_connection(&c.g, &c.tm, &JetPoint::at(0.0, [1.0; 4])?)?;
            let values_ok = flatten3(&A_TABLE)
                .iter()
                .all(|v| [-0.125, 0.125, -0.375].contains(v));
            let (a, _) = norm_errors(&flatten3(&got.c), &flatten3(&A_TABLE));
            Ok(if values_ok { (a, a) } else { (1.0, 1.0) })
        },
    },
    Check {
        name: "cartan.lower_symmetry",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(0.0),
        run: |c, p, _| {
            let cc = cartan_connection(&c.g, &c.tm, p)?;
            let mut d = 0.0f64;
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        d = d.max((cc.c[i][j][k] - cc.c[i][k][j]).abs());
                    }
                }
            }
            Ok((d, d))
        },
    },
    Check {
        name: "cartan.y_contraction",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let cc = cartan_connection(&c.g, &c.tm, p)?;
            let mut d = 0.0f64;
            for i in 0..4 {
                for j in 0..4 {
                    d = d.max((0..4).map(|m| cc.c[i][j][m] * p.y[m]).sum::<f64>().abs());
                }
            }
            Ok((d, d))
        },
    },
    Check {
        name: "cartan.trace",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let cc = cartan_connection(&c.g, &c.tm, p)?;
            let d = (0..4)
                .map(|j| (0..4).map(|m| cc.c[m][j][m]).sum::<f64>().abs())
                .fold(0.0, f64::max);
            Ok((d, d))
        },
    },
    Check {
        name: "cartan.temporal_component_vanishes",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let cc = cartan_connection(&c.g, &c.tm, p)?;
            let d = max_abs(&flatten2(&cc.gk));
            Ok((d, d))
        },
    },
    Check {
        name: "cartan.horizontal_is_kappa_third_c",
        bm_only: false,
        budget: Budget::All,
        tol: tol_default,
        run: |c, p, _| {
            let cc = cartan_connection(&c.g, &c.tm, p)?;
            let want: Vec<f64> = flatten3(&cc.c).iter().map(|v| cc.kappa / 3.0 * v).collect();
            Ok(norm_errors(&flatten3(&cc.l), &want))
        },
    },
    // torsion
    Check {
        name: "torsion.closed_forms",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let got = torsions(&c.g, &c.tm, p)?;
            let want = bm_torsions_closed(&c.tm, p)?;
            let pack = |t: &crate::curvature::TorsionSet| {
                let mut v = flatten3(&t.p_mixed);
                v.extend(flatten3(&t.p_vert));
                v.extend(flatten2(&t.r_time));
                v
            };
            Ok(norm_errors(&pack(&got), &pack(&want)))
        },
    },
    Check {
        name: "torsion.constant_family_vanishes",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(0.0),
        run: |c, p, _| {
            let t = torsions(&c.g, &TimeMetric::Constant { c: 1.0 }, p)?;
            let d = max_abs(&flatten3(&t.p_mixed)).max(max_abs(&flatten2(&t.r_time)));
            Ok((d, d))
        },
    },
    // curvature
    Check {
        name: "curvature.vertical_closed_form_oracle",
        bm_only: true,
        budget: Budget::AtMost(500),
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let cs = curvatures(&c.g, &c.tm, p)?;
            Ok(norm_errors(&flatten4(&cs.s), &flatten4(&bm_s_closed(&p.y)?)))
        },
    },
    Check {
        name: "curvature.vertical_antisymmetry",
        bm_only: false,
        budget: Budget::AtMost(500),
        tol: |_| Tolerance::abs(1e-12),
        run: |c, p, _| {
            let cs = curvatures(&c.g, &c.tm, p)?;
            let scale = max_abs(&flatten4(&cs.s)).max(f64::MIN_POSITIVE);
            let d = s_antisymmetry_defect(&cs.s) / scale;
            Ok((d, d))
        },
    },
    Check {
        name: "curvature.closed_form_antisymmetry",
        bm_only: true,
        budget: Budget::AtMost(500),
        tol: |_| Tolerance::abs(0.0),
        run: |_, p, _| {
            let d = s_antisymmetry_defect(&bm_s_closed(&p.y)?);
            Ok((d, d))
        },
    },
    Check {
        name: "curvature.r_and_p_proportional_to_s",
        bm_only: false,
        budget: Budget::AtMost(500),
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let cs = curvatures(&c.g, &c.tm, p)?;
            let k = christoffel_time(&c.tm, p.t).kappa;
            let s = flatten4(&cs.s);
            let mut got = flatten4(&cs.r);
            got.extend(flatten4(&cs.p));
            let mut want: Vec<f64> = s.iter().map(|v| k * k / 9.0 * v).collect();
            want.extend(s.iter().map(|v| k / 3.0 * v));
            let (a, _) = norm_errors(&got, &want);
            let scale = max_abs(&s) * (k.abs() / 3.0).max(k * k / 9.0);
            let rel = if a == 0.0 { 0.0 } else { a / scale };
            Ok((a, rel))
        },
    },
    Check {
        name: "curvature.homogeneity",
        bm_only: false,
        budget: Budget::AtMost(500),
        tol: |_| Tolerance::rel(1e-12),
        run: |c, p, _| {
            let a = curvatures(&c.g, &c.tm, p)?.s;
            let q = JetPoint::at(p.t, p.y.map(|v| 2.0 * v))?;
            let b = curvatures(&c.g, &c.tm, &q)?.s;
            let want: Vec<f64> = flatten4(&a).iter().map(|v| v / 4.0).collect();
            Ok(norm_errors(&flatten4(&b), &want))
        },
    },
    // Ricci tensors and scalar curvature
    Check {
        name: "ricci.vertical_table",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let rs = ricci_scalar(&c.g, &c.tm, p)?;
            Ok(entry_errors(&flatten2(&rs.s_ricci), &flatten2(&bm_ricci_vertical_published(&p.y))))
        },
    },
    Check {
        name: "ricci.closed_form_contraction_table",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-12),
        run: |_, p, _| {
            let got = ricci_contract(&bm_s_closed(&p.y)?);
            Ok(entry_errors(&flatten2(&got), &flatten2(&bm_ricci_vertical_published(&p.y))))
        },
    },
    Check {
        name: "ricci.r_and_p_proportional_to_s",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let rs = ricci_scalar(&c.g, &c.tm, p)?;
            let k = christoffel_time(&c.tm, p.t).kappa;
            let s = flatten2(&rs.s_ricci);
            let mut got = flatten2(&rs.r_ij);
            got.extend(flatten2(&rs.p_mixed_ricci));
            let mut want: Vec<f64> = s.iter().map(|v| k * k / 9.0 * v).collect();
            want.extend(s.iter().map(|v| k / 3.0 * v));
            let (a, _) = norm_errors(&got, &want);
            let scale = max_abs(&s) * (k.abs() / 3.0).max(k * k / 9.0);
            Ok((a, if a == 0.0 { 0.0 } else { a / scale }))
        },
    },
    Check {
        name: "ricci.raised_form",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let rs = ricci_scalar(&c.g, &c.tm, p)?;
            Ok(entry_errors(&flatten2(&rs.s_raised), &flatten2(&bm_s_raised_published(&p.y))))
        },
    },
    Check {
        name: "ricci.raised_form_from_published_table",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |_, p, _| {
            let up = bm_metric_closed(&p.y)?.g_up;
            let got = raise(&up, &bm_ricci_vertical_published(&p.y));
            Ok(entry_errors(&flatten2(&got), &flatten2(&bm_s_raised_published(&p.y))))
        },
    },
    Check {
        name: "ricci.raised_c_contraction",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let rs = ricci_scalar(&c.g, &c.tm, p)?;
            let cc = cartan_connection(&c.g, &c.tm, p)?;
            let d = max_abs(&s_raised_c_contraction(&rs.s_raised, &cc.c))
                .max(max_abs(&s_raised_c_contraction(&bm_s_raised_published(&p.y), &cc.c)));
            Ok((d, d))
        },
    },
    Check {
        name: "ricci.raised_divergence",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let div = s_raised_divergence(&c.g, &c.tm, p)?;
            let root = p.bm_g1111().sqrt();
            Ok(entry_errors(&div, &p.y.map(|v| 3.0 / (root * v))))
        },
    },
    Check {
        name: "ricci.raised_divergence_of_published_form",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |_, p, _| {
            let div = divergence_jet(&bm_s_raised_published_jet(&p.y)?);
            let root = p.bm_g1111().sqrt();
            Ok(entry_errors(&div, &p.y.map(|v| 3.0 / (root * v))))
        },
    },
    Check {
        name: "ricci.scalar_curvature",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let rs = ricci_scalar(&c.g, &c.tm, p)?;
            let v = c.tm.eval(p.t);
            let k = christoffel_time(&c.tm, p.t).kappa;
            Ok(entry_errors(&[rs.sc], &[bm_scalar_curvature_published(v.h11, k, &p.y)]))
        },
    },
    Check {
        name: "ricci.scalar_curvature_unit_point",
        bm_only: true,
        budget: Budget::Fixed(1),
        tol: |_| Tolerance::rel(1e-9),
        run: |c, _, _| {
            let rs = ricci_scalar(&c.g, &TimeMetric::Constant { c: 1.0 }, &JetPoint::at(0.0, [1.0; 4])?)?;
            Ok(entry_errors(&[rs.sc], &[-9.0]))
        },
    },
    // Einstein equations
    Check {
        name: "einstein.blocks_closed_form",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let b = einstein_blocks(&c.g, &c.tm, p, c.k)?;
            let v = c.tm.eval(p.t);
            let kap = christoffel_time(&c.tm, p.t).kappa;
            let xi = (9.0 * v.h11 + kap * kap) / (2.0 * c.k);
            let root = p.bm_g1111().sqrt();
            let g = bm_metric_closed(&p.y)?.g_lo;
            let s = ricci_contract(&bm_s_closed(&p.y)?);
            let blk = |c1: f64, c2: f64| -> Vec<f64> {
                (0..16).map(|e| c1 * s[e / 4][e % 4] + c2 * g[e / 4][e % 4]).collect()
            };
            let mut got = vec![b.xi11, b.t_11];
            got.extend(flatten2(&b.t_ij));
            got.extend(flatten2(&b.t_yy));
            got.extend(flatten2(&b.t_i_yj));
            got.extend(flatten2(&b.t_yi_j));
            let mut want = vec![xi, xi * v.h11 / root];
            want.extend(blk(kap * kap / (9.0 * c.k), xi / root));
            want.extend(blk(1.0 / c.k, xi / root / v.h11));
            want.extend(blk(kap / (3.0 * c.k), 0.0));
            want.extend(blk(kap / (3.0 * c.k), 0.0));
            Ok(norm_errors(&got, &want))
        },
    },
    Check {
        name: "einstein.zero_blocks",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-12),
        run: |c, p, _| {
            let b = einstein_blocks(&c.g, &c.tm, p, c.k)?;
            let d = b.zero_blocks.max_abs();
            Ok(if b.zero_flags.iter().all(|&f| f) { (d, d) } else { (d.max(1.0), d.max(1.0)) })
        },
    },
    Check {
        name: "einstein.symmetry",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let d = stress_asymmetry(&einstein_blocks(&c.g, &c.tm, p, c.k)?);
            Ok((d, d))
        },
    },
    Check {
        name: "einstein.raised_identities",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let b = einstein_blocks(&c.g, &c.tm, p, c.k)?;
            let up = metric_pair(&c.g, p)?.g_up;
            let d = raise_blocks(&b, &up, c.tm.eval(p.t).h11);
            let pack = |r: &crate::fieldtheory::RaisedStress| {
                let mut v = vec![r.t1_1];
                for m in [&r.t_mi, &r.t_ym_i, &r.t_m_yi, &r.t_ym_yi] {
                    v.extend(flatten2(m));
                }
                v
            };
            Ok(norm_errors(&pack(&d), &pack(&b.raised)))
        },
    },
    // conservation laws
    Check {
        name: "conservation.temporal_closed_rhs",
        bm_only: true,
        budget: Budget::AtMost(200),
        tol: |_| Tolerance::rel(1e-8),
        run: |c, p, s| {
            let (tm, k) = random_family(s);
            let lhs = conservation_residuals(&c.g, &tm, p, k)?;
            let rhs = conservation_rhs_published(&tm, p, k)?;
            let (a, _) = entry_errors(&[lhs.t1], &[rhs.t1]);
            let scale = rhs.t1.abs().max(temporal_term_scale(&tm, p, k));
            Ok((a, if a == 0.0 { 0.0 } else { a / scale }))
        },
    },
    Check {
        name: "conservation.spatial_closed_rhs",
        bm_only: true,
        budget: Budget::AtMost(200),
        tol: |_| Tolerance::rel(1e-8),
        run: |c, p, s| {
            let (tm, k) = random_family(s);
            let lhs = conservation_residuals(&c.g, &tm, p, k)?;
            let rhs = conservation_rhs_published(&tm, p, k)?;
            Ok(scaled_errors(&lhs.ti, &rhs.ti, rhs.max_abs()))
        },
    },
    Check {
        name: "conservation.vertical_closed_rhs",
        bm_only: true,
        budget: Budget::AtMost(200),
        tol: |_| Tolerance::rel(1e-8),
        run: |c, p, s| {
            let (tm, k) = random_family(s);
            let lhs = conservation_residuals(&c.g, &tm, p, k)?;
            let rhs = conservation_rhs_published(&tm, p, k)?;
            Ok(scaled_errors(&lhs.tyi, &rhs.tyi, rhs.max_abs()))
        },
    },
    Check {
        name: "conservation.published_chain",
        bm_only: true,
        budget: Budget::AtMost(200),
        tol: |_| Tolerance::rel(1e-8),
        run: |_, p, s| {
            let (tm, k) = random_family(s);
            let seeds = taylor2_seed(p.y)?;
            let g1111 = seeds[0] * seeds[1] * seeds[2] * seeds[3];
            let lhs = conservation_from_raised(&bm_s_raised_published_jet(&p.y)?, &g1111, &tm, p, k)?;
            let rhs = conservation_rhs_published(&tm, p, k)?;
            Ok(scaled_errors(&lhs.flatten(), &rhs.flatten(), rhs.max_abs()))
        },
    },
    Check {
        name: "conservation.reduced_matches_definitions",
        bm_only: true,
        budget: Budget::AtMost(200),
        tol: |_| Tolerance::rel(1e-9),
        run: |c, p, _| {
            let a = conservation_residuals(&c.g, &c.tm, p, c.k)?;
            let b = conservation_residuals_unreduced(&c.g, &c.tm, p, c.k)?;
            Ok(norm_errors(&b.flatten(), &a.flatten()))
        },
    },
    Check {
        name: "conservation.never_identically_zero",
        bm_only: false,
        budget: Budget::AtMost(200),
        tol: |_| Tolerance::abs(0.0),
        run: |c, p, _| {
            let r = conservation_residuals(&c.g, &c.tm, p, c.k)?;
            Ok(flag(r.squared_norm() > 0.0))
        },
    },
    Check {
        name: "conservation.decay_at_infinity",
        bm_only: true,
        budget: Budget::Fixed(1),
        tol: |_| Tolerance::rel(0.01),
        run: |c, _, _| {
            let e = decay_exponent(&c.g, c.k)?;
            let d = (e + 2.0).abs();
            Ok((d, d / 2.0))
        },
    },
    Check {
        name: "des.unsolvable",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(0.0),
        run: |c, p, _| {
            let d = des_check(&c.tm, &[p.t])?;
            Ok(flag(!d.solvable && d.r2.iter().all(|&v| v > 0.0)))
        },
    },
    // electromagnetism
    Check {
        name: "em.form_vanishes",
        bm_only: true,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-10),
        run: |c, p, _| {
            let d = max_abs(&flatten2(&em_form(&c.g, &c.tm, p)?.f));
            Ok((d, d))
        },
    },
    Check {
        name: "em.antisymmetry",
        bm_only: false,
        budget: Budget::All,
        tol: |_| Tolerance::abs(1e-12),
        run: |c, p, _| {
            let f = em_form(&c.g, &c.tm, p)?.f;
            let mut d = 0.0f64;
            for i in 0..4 {
                for j in 0..4 {
                    d = d.max((f[i][j] + f[j][i]).abs());
                }
            }
            Ok((d, d))
        },
    },
    // automatic differentiation
    Check {
        name: "autodiff.finite_differences",
        bm_only: false,
        budget: Budget::AtMost(100),
        tol: |_| Tolerance::rel(1e-5),
        run: |c, p, _| Ok(finite_difference_errors(c, p)),
    },
];

fn scaled_errors(got: &[f64], want: &[f64], scale: f64) -> (f64, f64) {
    let (a, r) = entry_errors(got, want);
    if want.iter().all(|&w| w == 0.0) && scale > 0.0 {
        return (a, a / scale);
    }
    if want.iter().all(|&w| w == 0.0) {
        return (a, if a == 0.0 { 0.0 } else { f64::INFINITY });
    }
    (a, r)
}

/// Magnitude of the two terms ξ'/√G and 2κξ/√G whose difference is 𝒯₁.
/// Their h-parts cancel identically, so 𝒯₁ carries a rounding error of order
/// ε times this scale whichever way it is evaluated.
fn temporal_term_scale(tm: &TimeMetric, p: &JetPoint, k: f64) -> f64 {
    let v = tm.eval(p.t);
    let ct = christoffel_time(tm, p.t);
    let xi = (9.0 * v.h11 + ct.kappa * ct.kappa) / (2.0 * k);
    let dxi = (9.0 * v.dh11 + 2.0 * ct.kappa * ct.dkappa) / (2.0 * k);
    (dxi.abs() + 2.0 * (ct.kappa * xi).abs()) / p.bm_g1111().sqrt()
}

/// A random (family, 𝒦) draw for the conservation checks.
fn random_family(s: &mut PointSampler) -> (TimeMetric, f64) {
    let pick = s.unit();
    let u = s.unit();
    let v = s.unit();
    let k = 0.5 + 1.5 * s.unit();
    let tm = if pick < 1.0 / 3.0 {
        TimeMetric::Constant { c: 0.5 + 1.5 * u }
    } else if pick < 2.0 / 3.0 {
        TimeMetric::Exponential {
            c: 0.5 + 1.5 * u,
            lambda: -1.0 + 2.0 * v,
        }
    } else {
        TimeMetric::Power { a: -1.0 + 3.0 * v }
    };
    (tm, k)
}

/// Fitted exponent of the largest conservation component along
/// y = s·(1,1,1,1), s ∈ {10, 100, 1000}, for h₁₁ = eᵗ at t = 0.
pub fn decay_exponent(g: &QuarticTensor, k: f64) -> Result<f64> {
    let tm = TimeMetric::Exponential { c: 1.0, lambda: 1.0 };
    let mags: Vec<(f64, f64)> = [10.0f64, 100.0, 1000.0]
        .iter()
        .map(|&s| {
            let r: ConservationResiduals = conservation_residuals(g, &tm, &JetPoint::at(0.0, [s; 4])?, k)?;
            Ok((s.log10(), r.max_abs().log10()))
        })
        .collect::<Result<_>>()?;
    let n = mags.len() as f64;
    let mx = mags.iter().map(|m| m.0).sum::<f64>() / n;
    let my = mags.iter().map(|m| m.1).sum::<f64>() / n;
    let sxy: f64 = mags.iter().map(|m| (m.0 - mx) * (m.1 - my)).sum();
    let sxx: f64 = mags.iter().map(|m| (m.0 - mx).powi(2)).sum();
    Ok(sxy / sxx)
}

/// Taylor gradient vs central differences of the value, and Taylor Hessian
/// vs central differences of the Taylor gradient, for g_ij and F².
fn finite_difference_errors(c: &Ctx, p: &JetPoint) -> (f64, f64) {
    let fd = c.cfg.tolerances.fd;
    let jets = |y: &[f64; 4]| {
        let mj = metric_jet(&c.g, y);
        let mut out: Vec<crate::jetcore::Taylor2> = vec![mj.g1111];
        for i in 0..4 {
            for j in i..4 {
                out.push(mj.g_lo[i][j]);
            }
        }
        if let Ok(pt) = JetPoint::at(p.t, *y) {
            if let Ok(f2) = f_squared_jet(&c.g, &c.tm, &pt) {
                out.push(f2);
            }
        }
        out
    };
    let base = jets(&p.y);
    let mut worst_abs = 0.0f64;
    let mut worst_rel = 0.0f64;
    let mut grad_fd = vec![[0.0; 4]; base.len()];
    let mut hess_fd = vec![[[0.0; 4]; 4]; base.len()];
    for k in 0..4 {
        let h = fd * p.y[k];
        let mut yp = p.y;
        let mut ym = p.y;
        yp[k] += h;
        ym[k] -= h;
        let (jp, jm) = (jets(&yp), jets(&ym));
        if jp.len() != base.len() || jm.len() != base.len() {
            return (f64::INFINITY, f64::INFINITY);
        }
        for f in 0..base.len() {
            grad_fd[f][k] = (jp[f].value - jm[f].value) / (2.0 * h);
            for l in 0..4 {
                hess_fd[f][k][l] = (jp[f].grad[l] - jm[f].grad[l]) / (2.0 * h);
            }
        }
    }
    for (f, jet) in base.iter().enumerate() {
        let (a, r) = norm_errors(&grad_fd[f], &jet.grad);
        worst_abs = worst_abs.max(a);
        worst_rel = worst_rel.max(r);
        let hess = jet.hessian();
        let got: Vec<f64> = hess_fd[f].iter().flatten().copied().collect();
        let want: Vec<f64> = hess.iter().flatten().copied().collect();
        let (a, r) = norm_errors(&got, &want);
        worst_abs = worst_abs.max(a);
        worst_rel = worst_rel.max(r);
    }
    (worst_abs, worst_rel)
}

/// Names of every check in catalog order.
pub fn check_names() -> Vec<&'static str> {
    CATALOG.iter().map(|c| c.name).collect()
}

/// Runs the whole catalog. Evaluation errors at a sample are counted as an
/// infinite error for that check rather than aborting the run.
pub fn run_verify(cfg: &RunConfig) -> Result<SuiteResult> {
    cfg.validate()?;
    let g = cfg.tensor()?;
    let bm = g.is_berwald_moor();
    let ctx = Ctx {
        cfg,
        g,
        tm: cfg.time_metric,
        k: cfg.constants.einstein_k,
    };
    let seed = cfg.sampling.seed;
    let mut reports = Vec::with_capacity(CATALOG.len());
    for (idx, check) in CATALOG.iter().enumerate() {
        if check.bm_only && !bm {
            reports.push(VerificationReport::skipped(check.name, seed));
            continue;
        }
        let n = check.budget.resolve(cfg.sampling.samples);
        let mut sampler = PointSampler::with_stream(&cfg.sampling, idx as u64);
        let mut stats = ErrorStats::default();
        for _ in 0..n {
            let p = sampler.next_point();
            match (check.run)(&ctx, &p, &mut sampler) {
                Ok((a, r)) => stats.record(a, r),
                Err(_) => stats.record(f64::INFINITY, f64::INFINITY),
            }
        }
        reports.push(stats.into_report(check.name, (check.tol)(&ctx), seed));
    }
    let overall_pass = reports.iter().all(|r| r.pass);
    Ok(SuiteResult {
        reports,
        overall_pass,
        config_echo: cfg.clone(),
    })
}
