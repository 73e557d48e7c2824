//! Gravitational potential, local Einstein blocks, conservation laws of the
//! stress-energy d-tensor, the associated ODE system and the electromagnetic
//! 2-form.

use serde::Serialize;

use crate::connection::{adapted_cobasis, adapted_frame, apriori_nlc, christoffel_time, local_geometry, NlcKind, JET_DIM};
use crate::curvature::{raise, ricci_from, curvatures_from, ricci_jet, divergence_dual, RicciSet};
use crate::error::{JetError, Result};
use crate::jetcore::{Dual4, JetPoint, QuarticTensor, Scalar, Taylor2, TimeMetric};
use crate::linalg::{delta, Mat4, Vec4};
use crate::metric::metric_pair;

/// 𝔾 = h₁₁dt⊗dt + g_ij dxⁱ⊗dxʲ + h¹¹g_ij δyⁱ⊗δyʲ in the adapted coframe.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GravPotential {
    pub tt_block: f64,
    pub xx_block: Mat4,
    pub yy_block: Mat4,
}

pub fn grav_potential(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<GravPotential> {
    let mp = metric_pair(g, p)?;
    let v = tm.eval(p.t);
    Ok(GravPotential {
        tt_block: v.h11,
        xx_block: mp.g_lo,
        yy_block: mp.g_lo.map(|r| r.map(|e| v.h11_inv * e)),
    })
}

/// 𝔾 as a 9×9 matrix in the coordinate coframe {dt, dxⁱ, dyⁱ}, obtained by
/// expanding δyⁱ through the a-priori nonlinear connection.
pub fn grav_potential_coordinate(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<[[f64; JET_DIM]; JET_DIM]> {
    let gp = grav_potential(g, tm, p)?;
    let cob = adapted_cobasis(&apriori_nlc(tm, p), p);
    // rows: coordinate components of dt, dxⁱ, δyⁱ
    let mut e = [[0.0; JET_DIM]; JET_DIM];
    e[0][0] = 1.0;
    for i in 0..4 {
        e[1 + i][1 + i] = 1.0;
        e[5 + i][5 + i] = 1.0;
        e[5 + i][0] = cob.dy_correction_t[i];
        for j in 0..4 {
            e[5 + i][1 + j] = cob.dy_correction_x[i][j];
        }
    }
    let mut w = [[0.0; JET_DIM]; JET_DIM];
    w[0][0] = gp.tt_block;
    for i in 0..4 {
        for j in 0..4 {
            w[1 + i][1 + j] = gp.xx_block[i][j];
            w[5 + i][5 + j] = gp.yy_block[i][j];
        }
    }
    let mut out = [[0.0; JET_DIM]; JET_DIM];
    for a in 0..JET_DIM {
        for b in 0..JET_DIM {
            let mut acc = 0.0;
            for r in 0..JET_DIM {
                for s in 0..JET_DIM {
                    acc += e[r][a] * w[r][s] * e[s][b];
                }
            }
            out[a][b] = acc;
        }
    }
    Ok(out)
}

/// 𝔾 evaluated on the adapted frame {δ/δt, δ/δxⁱ, ∂/∂yⁱ}.
pub fn grav_potential_adapted(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<[[f64; JET_DIM]; JET_DIM]> {
    let coord = grav_potential_coordinate(g, tm, p)?;
    let f = adapted_frame(&apriori_nlc(tm, p));
    let mut out = [[0.0; JET_DIM]; JET_DIM];
    for a in 0..JET_DIM {
        for b in 0..JET_DIM {
            let mut acc = 0.0;
            for r in 0..JET_DIM {
                for s in 0..JET_DIM {
                    acc += f[a][r] * coord[r][s] * f[b][s];
                }
            }
            out[a][b] = acc;
        }
    }
    Ok(out)
}

/// The four mixed blocks that the Einstein equations force to vanish.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ZeroBlocks {
    /// T_1i
    pub t_1i: Vec4,
    /// T_i1
    pub t_i1: Vec4,
    /// T^{(1)}_{(i)1}
    pub t_yi_1: Vec4,
    /// T^{ (1)}_{1(i)}
    pub t_1_yi: Vec4,
}

impl ZeroBlocks {
    pub fn max_abs(&self) -> f64 {
        [self.t_1i, self.t_i1, self.t_yi_1, self.t_1_yi]
            .iter()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Raised components of the stress-energy d-tensor.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RaisedStress {
    /// T¹₁ = h¹¹T₁₁
    pub t1_1: f64,
    /// `t_mi[m][i]` = Tᵐᵢ = g^{mr}T_ri
    pub t_mi: Mat4,
    /// `t_ym_i[m][i]` = T^{(m)}_{(1)i} = h₁₁g^{mr}T^{(1)}_{(r)i}
    pub t_ym_i: Mat4,
    /// `t_m_yi[m][i]` = T^{m(1)}_{(i)} = g^{mr}T^{ (1)}_{r(i)}
    pub t_m_yi: Mat4,
    /// `t_ym_yi[m][i]` = T^{(m)(1)}_{(1)(i)} = h₁₁g^{mr}T^{(1)(1)}_{(r)(i)}
    pub t_ym_yi: Mat4,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EinsteinBlocks {
    pub k: f64,
    pub xi11: f64,
    pub t_11: f64,
    pub t_ij: Mat4,
    /// T^{(1)(1)}_{(i)(j)}
    pub t_yy: Mat4,
    /// T^{ (1)}_{i(j)}
    pub t_i_yj: Mat4,
    /// T^{(1)}_{(i)j}
    pub t_yi_j: Mat4,
    pub zero_blocks: ZeroBlocks,
    /// Flags for T_1i, T_i1, T^{(1)}_{(i)1}, T^{ (1)}_{1(i)} being zero to 1e-12.
    pub zero_flags: [bool; 4],
    /// The raised components in their closed expression through S_i^{m11}.
    pub raised: RaisedStress,
    pub ricci: RicciSet,
}

/// ξ₁₁ = (9h₁₁ + κ²)/(2𝒦).
pub fn xi11(tm: &TimeMetric, t: f64, k: f64) -> Result<f64> {
    check_k(k)?;
    let h = tm.eval(t).h11;
    let kappa = christoffel_time(tm, t).kappa;
    Ok((9.0 * h + kappa * kappa) / (2.0 * k))
}

fn check_k(k: f64) -> Result<()> {
    if k == 0.0 || !k.is_finite() {
        return Err(JetError::config("constants.einstein_k", format!("must be finite and nonzero, got {k}")));
    }
    Ok(())
}

pub fn einstein_blocks(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint, k: f64) -> Result<EinsteinBlocks> {
    check_k(k)?;
    let (geo, kappa) = local_geometry(NlcKind::APriori, g, tm, p)?;
    let v = tm.eval(p.t);
    let ricci = ricci_from(&geo, &curvatures_from(&geo), v.h11);
    let xi = xi11(tm, p.t, k)?;
    let root = g.contractions(&p.y).g1111.sqrt();
    let s = ricci.s_ricci;
    let gl = geo.g;
    let a = xi / root;
    let blk = |c1: f64, c2: f64| -> Mat4 {
        std::array::from_fn(|i| std::array::from_fn(|j| c1 * s[i][j] + c2 * gl[i][j]))
    };
    let t_ij = blk(kappa * kappa / (9.0 * k), a);
    let t_yy = blk(1.0 / k, a * v.h11_inv);
    let mixed = blk(kappa / (3.0 * k), 0.0);

    // mixed blocks of 𝔾 in the adapted frame carry the −(Sc/2)𝔾 part; the
    // mixed Ricci components vanish for the Cartan connection
    let gad = grav_potential_adapted(g, tm, p)?;
    let f = -ricci.sc / (2.0 * k);
    let zero_blocks = ZeroBlocks {
        t_1i: std::array::from_fn(|i| f * gad[0][1 + i]),
        t_i1: std::array::from_fn(|i| f * gad[1 + i][0]),
        t_yi_1: std::array::from_fn(|i| f * gad[5 + i][0]),
        t_1_yi: std::array::from_fn(|i| f * gad[0][5 + i]),
    };
    let flag = |b: &Vec4| b.iter().all(|v| v.abs() <= 1e-12);
    let zero_flags = [
        flag(&zero_blocks.t_1i),
        flag(&zero_blocks.t_i1),
        flag(&zero_blocks.t_yi_1),
        flag(&zero_blocks.t_1_yi),
    ];

    let sr = ricci.s_raised;
    let with_delta = |c1: f64, c2: f64| -> Mat4 {
        std::array::from_fn(|m| std::array::from_fn(|i| c1 * sr[m][i] + c2 * delta(m, i)))
    };
    let raised = RaisedStress {
        t1_1: a,
        t_mi: with_delta(kappa * kappa / (9.0 * k), a),
        t_ym_i: with_delta(v.h11 * kappa / (3.0 * k), 0.0),
        t_m_yi: with_delta(kappa / (3.0 * k), 0.0),
        t_ym_yi: with_delta(v.h11 / k, a),
    };
    Ok(EinsteinBlocks {
        k,
        xi11: xi,
        t_11: a * v.h11,
        t_ij,
        t_yy,
        t_i_yj: mixed,
        t_yi_j: mixed,
        zero_blocks,
        zero_flags,
        raised,
        ricci,
    })
}

/// Raises the lower blocks directly with g^{mr} and h¹¹, independently of
/// the closed expressions in [`EinsteinBlocks::raised`].
pub fn raise_blocks(b: &EinsteinBlocks, g_up: &Mat4, h11: f64) -> RaisedStress {
    let hs = |m: &Mat4, s: f64| m.map(|r| r.map(|v| s * v));
    RaisedStress {
        t1_1: b.t_11 / h11,
        t_mi: raise(g_up, &b.t_ij),
        t_ym_i: hs(&raise(g_up, &b.t_yi_j), h11),
        t_m_yi: raise(g_up, &b.t_i_yj),
        t_ym_yi: hs(&raise(g_up, &b.t_yy), h11),
    }
}

/// Max |T_AB − T_BA| over all blocks.
pub fn stress_asymmetry(b: &EinsteinBlocks) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..4 {
        for j in 0..4 {
            worst = worst
                .max((b.t_ij[i][j] - b.t_ij[j][i]).abs())
                .max((b.t_yy[i][j] - b.t_yy[j][i]).abs())
                .max((b.t_i_yj[i][j] - b.t_yi_j[j][i]).abs());
        }
        let z = &b.zero_blocks;
        worst = worst.max((z.t_1i[i] - z.t_i1[i]).abs()).max((z.t_yi_1[i] - z.t_1_yi[i]).abs());
    }
    worst
}

/// The three conservation-law combinations 𝒯₁, 𝒯ᵢ, 𝒯^{(1)}_{(i)}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservationResiduals {
    #[serde(rename = "T1")]
    pub t1: f64,
    #[serde(rename = "Ti")]
    pub ti: Vec4,
    #[serde(rename = "Tyi")]
    pub tyi: Vec4,
}

impl ConservationResiduals {
    pub fn flatten(&self) -> Vec<f64> {
        let mut v = vec![self.t1];
        v.extend_from_slice(&self.ti);
        v.extend_from_slice(&self.tyi);
        v
    }

    /// [𝒯₁]² + Σ[𝒯ᵢ]² + Σ[𝒯^{(1)}_{(i)}]².
    pub fn squared_norm(&self) -> f64 {
        self.flatten().iter().map(|v| v * v).sum()
    }

    pub fn max_abs(&self) -> f64 {
        self.flatten().iter().fold(0.0f64, |m, v| m.max(v.abs()))
    }
}

/// Raised stress fields carrying exact y-gradients.
#[derive(Debug, Clone, Copy)]
struct StressJet {
    t1_1: Dual4,
    t_mi: Mat4<Dual4>,
    t_ym_i: Mat4<Dual4>,
    t_m_yi: Mat4<Dual4>,
    t_ym_yi: Mat4<Dual4>,
}

struct Scalars {
    kappa: f64,
    dkappa: f64,
    h: f64,
    dh: f64,
    k: f64,
    xi: f64,
}

impl Scalars {
    fn new(tm: &TimeMetric, t: f64, k: f64) -> Result<Self> {
        let ct = christoffel_time(tm, t);
        let v = tm.eval(t);
        Ok(Scalars {
            kappa: ct.kappa,
            dkappa: ct.dkappa,
            h: v.h11,
            dh: v.dh11,
            k,
            xi: xi11(tm, t, k)?,
        })
    }

    /// ∂ξ₁₁/∂t = (9h₁₁' + 2κκ')/(2𝒦).
    fn dxi(&self) -> f64 {
        (9.0 * self.dh + 2.0 * self.kappa * self.dkappa) / (2.0 * self.k)
    }
}

fn stress_jet(s_raised: &Mat4<Dual4>, g1111: Dual4, sc: &Scalars) -> StressJet {
    let a = g1111.sqrt().recip() * sc.xi;
    let (kappa, k, h) = (sc.kappa, sc.k, sc.h);
    let f = |c1: f64, diag: bool| -> Mat4<Dual4> {
        std::array::from_fn(|m| {
            std::array::from_fn(|i| {
                let base = s_raised[m][i] * c1;
                if diag && m == i {
                    base + a
                } else {
                    base
                }
            })
        })
    };
    StressJet {
        t1_1: a,
        t_mi: f(kappa * kappa / (9.0 * k), true),
        t_ym_i: f(h * kappa / (3.0 * k), false),
        t_m_yi: f(kappa / (3.0 * k), false),
        t_ym_yi: f(h / k, true),
    }
}

/// The reduced forms: δ/δt = ∂/∂t + κyᵖ∂/∂yᵖ, δ/δxᵐ = (κ/3)∂/∂yᵐ on y-fields,
/// with the L- and C-contraction terms dropped.
fn reduced(st: &StressJet, sc: &Scalars, g1111: Dual4, y: &[f64; 4]) -> ConservationResiduals {
    let inv_root = 1.0 / g1111.re.sqrt();
    let dt = sc.dxi() * inv_root;
    let t1 = dt + (0..4).map(|p| sc.kappa * y[p] * st.t1_1.eps[p]).sum::<f64>();
    let d_mi = divergence_dual(&st.t_mi);
    let d_ym_i = divergence_dual(&st.t_ym_i);
    let d_m_yi = divergence_dual(&st.t_m_yi);
    let d_ym_yi = divergence_dual(&st.t_ym_yi);
    ConservationResiduals {
        t1,
        ti: std::array::from_fn(|i| sc.kappa / 3.0 * d_mi[i] + d_ym_i[i]),
        tyi: std::array::from_fn(|i| sc.kappa / 3.0 * d_m_yi[i] + d_ym_yi[i]),
    }
}

/// Conservation-law left-hand sides for the generic pipeline, in the reduced
/// forms. The y-divergences differentiate the generic S_i^{m11} exactly.
pub fn conservation_residuals(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint, k: f64) -> Result<ConservationResiduals> {
    let sc = Scalars::new(tm, p.t, k)?;
    let rj = ricci_jet(g, tm, p)?;
    let st = stress_jet(&rj.s_raised, rj.g1111, &sc);
    Ok(reduced(&st, &sc, rj.g1111, &p.y))
}

/// Conservation-law left-hand sides from the full covariant-derivative
/// definitions, keeping every L, C and N term.
pub fn conservation_residuals_unreduced(
    g: &QuarticTensor,
    tm: &TimeMetric,
    p: &JetPoint,
    k: f64,
) -> Result<ConservationResiduals> {
    let sc = Scalars::new(tm, p.t, k)?;
    let rj = ricci_jet(g, tm, p)?;
    let st = stress_jet(&rj.s_raised, rj.g1111, &sc);
    let nlc = apriori_nlc(tm, p);
    let (l, c) = (&rj.l, &rj.c);

    // δ/δt T¹₁ + T¹₁κ − T¹₁κ; the other two terms act on vanishing fields
    let mut t1 = sc.dxi() / rj.g1111.re.sqrt();
    for q in 0..4 {
        t1 -= nlc.m[q] * st.t1_1.eps[q];
    }

    // Σ_m δT^m_i/δx^m + T^r_i L^m_{rm} − T^m_r L^r_{im}
    let horizontal = |t: &Mat4<Dual4>, i: usize| -> f64 {
        let mut acc = 0.0;
        for m in 0..4 {
            for q in 0..4 {
                acc -= nlc.n[q][m] * t[m][i].eps[q];
            }
            for r in 0..4 {
                acc += t[r][i].re * l[m][r][m] - t[m][r].re * l[r][i][m];
            }
        }
        acc
    };
    // Σ_m ∂T^m_i/∂y^m + T^r_i C^m_{r(m)} − T^m_r C^r_{i(m)}
    let vertical = |t: &Mat4<Dual4>, i: usize| -> f64 {
        let mut acc = 0.0;
        for m in 0..4 {
            acc += t[m][i].eps[m];
            for r in 0..4 {
                acc += t[r][i].re * c[m][r][m] - t[m][r].re * c[r][i][m];
            }
        }
        acc
    };
    Ok(ConservationResiduals {
        t1,
        ti: std::array::from_fn(|i| horizontal(&st.t_mi, i) + vertical(&st.t_ym_i, i)),
        tyi: std::array::from_fn(|i| horizontal(&st.t_m_yi, i) + vertical(&st.t_ym_yi, i)),
    })
}

/// Conservation left-hand sides driven by a given closed expression of
/// S_i^{m11} (as Taylor expansions in y) and G₁₁₁₁.
pub fn conservation_from_raised(
    s_raised: &[[Taylor2; 4]; 4],
    g1111: &Taylor2,
    tm: &TimeMetric,
    p: &JetPoint,
    k: f64,
) -> Result<ConservationResiduals> {
    let sc = Scalars::new(tm, p.t, k)?;
    let to_dual = |v: &Taylor2| Dual4 { re: v.value, eps: v.grad };
    let s = s_raised.map(|r| r.each_ref().map(to_dual));
    let gd = to_dual(g1111);
    let st = stress_jet(&s, gd, &sc);
    Ok(reduced(&st, &sc, gd, &p.y))
}

/// Closed right-hand sides as published:
/// 𝒯₁ = (h¹¹)²/(8𝒦)·h'[2h'' − 3h'²/h]/√G, 𝒯ᵢ = κξ/(18√G yⁱ), 𝒯^{(1)}_{(i)} = ξ/(6√G yⁱ).
pub fn conservation_rhs_published(tm: &TimeMetric, p: &JetPoint, k: f64) -> Result<ConservationResiduals> {
    let sc = Scalars::new(tm, p.t, k)?;
    let v = tm.eval(p.t);
    let root = p.bm_g1111().sqrt();
    let r1 = v.dh11 * (2.0 * v.d2h11 - 3.0 * v.dh11 * v.dh11 / v.h11);
    Ok(ConservationResiduals {
        t1: v.h11_inv * v.h11_inv / (8.0 * k) * r1 / root,
        ti: p.y.map(|yi| sc.kappa * sc.xi / (18.0 * root * yi)),
        tyi: p.y.map(|yi| sc.xi / (6.0 * root * yi)),
    })
}

/// Result of substituting a time metric into the system 𝒯₁ = 𝒯ᵢ = 𝒯^{(1)}_{(i)} = 0.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DesCheck {
    pub r1: Vec<f64>,
    pub r2: Vec<f64>,
    pub solvable: bool,
}

/// r1 = h'[2h'' − 3h'²/h], r2 = 9h + κ²; solvable iff both vanish at some sample.
pub fn des_check(tm: &TimeMetric, t_samples: &[f64]) -> Result<DesCheck> {
    if t_samples.is_empty() {
        return Err(JetError::Domain("des_check needs at least one t sample".into()));
    }
    let mut r1 = Vec::with_capacity(t_samples.len());
    let mut r2 = Vec::with_capacity(t_samples.len());
    for &t in t_samples {
        let v = tm.eval(t);
        let kappa = christoffel_time(tm, t).kappa;
        r1.push(v.dh11 * (2.0 * v.d2h11 - 3.0 * v.dh11 * v.dh11 / v.h11));
        r2.push(9.0 * v.h11 + kappa * kappa);
    }
    let solvable = r1.iter().zip(&r2).any(|(a, b)| *a == 0.0 && *b == 0.0);
    Ok(DesCheck { r1, r2, solvable })
}

/// `f[i][j]` = F^{(1)}_{(i)j}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EMForm {
    pub f: Mat4,
}

/// F^{(1)}_{(i)j} = (h¹¹/2)[g_jm N^m_i − g_im N^m_j + (g_ir L^r_{jm} − g_jr L^r_{im})yᵐ].
pub fn em_form(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<EMForm> {
    let (geo, _) = local_geometry(NlcKind::APriori, g, tm, p)?;
    let n = apriori_nlc(tm, p).n;
    let hinv = tm.eval(p.t).h11_inv;
    let (gl, l, y) = (&geo.g, &geo.l, &p.y);
    let f = std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = 0.0;
            for m in 0..4 {
                acc += gl[j][m] * n[m][i] - gl[i][m] * n[m][j];
                for r in 0..4 {
                    acc += (gl[i][r] * l[r][j][m] - gl[j][r] * l[r][i][m]) * y[m];
                }
            }
            0.5 * hinv * acc
        })
    });
    Ok(EMForm { f })
}
