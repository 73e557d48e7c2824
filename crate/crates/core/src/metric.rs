//! The G-scalar hierarchy, the fundamental metric g_ij and its inverse.

use serde::Serialize;

use crate::error::{JetError, Result};
use crate::jetcore::{check_positive_cone, JetPoint, QuarticTensor, Scalar, Taylor2, TimeMetric};
use crate::linalg::{delta, det4, invert4, matmul, Mat4, Rank3, Vec4};

/// G₁₁₁₁ and its y-derivatives at a point, plus the inverse of G_ij11 and the
/// two scalars that enter the inverse metric.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GScalars {
    pub g1111: f64,
    pub gi111: Vec4,
    pub gij11: Mat4,
    pub gijk1: Rank3,
    /// ∂⁴G₁₁₁₁ = 24·G_pqrs.
    pub gijkl: [[[[f64; 4]; 4]; 4]; 4],
    pub gij11_inv: Mat4,
    pub det_gij11: f64,
    /// 𝒢₁₁₁₁ with 2𝒢₁₁₁₁ = G^{pq11}G_p111G_q111.
    pub g_script: f64,
    /// Gʲ₁ = G^{jp11}G_p111.
    pub gj_up: Vec4,
}

/// Contracts G with y and inverts G_ij11.
pub fn g_scalars(g: &QuarticTensor, y: &[f64; 4]) -> Result<GScalars> {
    check_positive_cone(y)?;
    let c = g.contractions(y);
    let det = det4(&c.gij11);
    let scale = c
        .gij11
        .iter()
        .flatten()
        .fold(0.0f64, |m, v| m.max(v.abs()));
    let threshold = 1e-12 * scale.powi(4);
    if !(det.abs() >= threshold) || scale == 0.0 {
        return Err(JetError::SingularTensor { det, threshold });
    }
    let inv = invert4(&c.gij11).ok_or(JetError::SingularTensor { det, threshold })?;
    let mut gj_up = [0.0; 4];
    for (j, gj) in gj_up.iter_mut().enumerate() {
        *gj = (0..4).map(|p| inv[j][p] * c.gi111[p]).sum();
    }
    let g_script = 0.5 * (0..4).map(|p| gj_up[p] * c.gi111[p]).sum::<f64>();
    Ok(GScalars {
        g1111: c.g1111,
        gi111: c.gi111,
        gij11: c.gij11,
        gijk1: c.gijk1,
        gijkl: c.gijkl,
        gij11_inv: inv,
        det_gij11: det,
        g_script,
        gj_up,
    })
}

/// Fundamental metric d-tensor g_ij and its inverse g^jk.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MetricPair {
    pub g_lo: Mat4,
    pub g_up: Mat4,
}

impl MetricPair {
    /// max |g_lo·g_up − I|.
    pub fn identity_residual(&self) -> f64 {
        let p = matmul(&self.g_lo, &self.g_up);
        let mut r = 0.0f64;
        for (i, row) in p.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                r = r.max((v - delta(i, j)).abs());
            }
        }
        r
    }
}

/// g_ij = (1/(4√G₁₁₁₁))·[G_ij11 − G_i111G_j111/(2G₁₁₁₁)] and its inverse
/// g^jk = 4√G₁₁₁₁·[G^{jk11} + Gʲ₁Gᵏ₁/(2(G₁₁₁₁ − 𝒢₁₁₁₁))].
///
/// The fundamental metric does not depend on t; the time metric only enters
/// through F² (see [`f_squared_jet`]).
pub fn metric_pair(g: &QuarticTensor, p: &JetPoint) -> Result<MetricPair> {
    let s = g_scalars(g, &p.y)?;
    metric_pair_from(&s)
}

pub fn metric_pair_from(s: &GScalars) -> Result<MetricPair> {
    if !(s.g1111 > 0.0) {
        return Err(JetError::Domain(format!(
            "G1111 = {} is not positive",
            s.g1111
        )));
    }
    let denom = s.g1111 - s.g_script;
    if !(denom.abs() >= 1e-12 * s.g1111) {
        return Err(JetError::DegenerateDenominator { value: denom });
    }
    let root = s.g1111.sqrt();
    let mut g_lo = [[0.0; 4]; 4];
    let mut g_up = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            g_lo[i][j] =
                (s.gij11[i][j] - s.gi111[i] * s.gi111[j] / (2.0 * s.g1111)) / (4.0 * root);
            g_up[i][j] =
                4.0 * root * (s.gij11_inv[i][j] + s.gj_up[i] * s.gj_up[j] / (2.0 * denom));
        }
    }
    symmetrize(&mut g_lo);
    symmetrize(&mut g_up);
    let pair = MetricPair { g_lo, g_up };
    debug_assert!(
        {
            let direct = invert4(&g_lo);
            direct.is_some_and(|d| {
                let scale = crate::linalg::max_abs(&crate::linalg::flatten2(&d));
                d.iter()
                    .flatten()
                    .zip(g_up.iter().flatten())
                    .all(|(a, b)| (a - b).abs() <= 1e-6 * scale)
            })
        },
        "closed inverse disagrees with direct inversion"
    );
    Ok(pair)
}

fn symmetrize(m: &mut Mat4) {
    for i in 0..4 {
        for j in i + 1..4 {
            let v = 0.5 * (m[i][j] + m[j][i]);
            m[i][j] = v;
            m[j][i] = v;
        }
    }
}

/// Berwald-Moór closed forms: g_ij = (1−2δ_ij)√G₁₁₁₁/(8yⁱyʲ),
/// g^jk = 2(1−2δ_jk)yʲyᵏ/√G₁₁₁₁.
pub fn bm_metric_closed(y: &[f64; 4]) -> Result<MetricPair> {
    check_positive_cone(y)?;
    let root = y.iter().product::<f64>().sqrt();
    let mut g_lo = [[0.0; 4]; 4];
    let mut g_up = [[0.0; 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let sign = 1.0 - 2.0 * delta(i, j);
            g_lo[i][j] = sign * root / (8.0 * y[i] * y[j]);
            g_up[i][j] = 2.0 * sign * y[i] * y[j] / root;
        }
    }
    Ok(MetricPair { g_lo, g_up })
}

/// G^{jk11} for Berwald-Moór: (1−3δ_jk)yʲyᵏ/(3G₁₁₁₁).
pub fn bm_gij11_inv_closed(y: &[f64; 4]) -> Mat4 {
    let g = y.iter().product::<f64>();
    std::array::from_fn(|j| std::array::from_fn(|k| (1.0 - 3.0 * delta(j, k)) * y[j] * y[k] / (3.0 * g)))
}

/// g_ij with exact first and second y-derivatives, built from the
/// contractions of G (which are polynomial, hence exact in any scalar type).
#[derive(Debug, Clone, Copy)]
pub struct MetricJet<T = f64> {
    pub g1111: Taylor2<T>,
    pub g_lo: [[Taylor2<T>; 4]; 4],
}

pub fn metric_jet<T: Scalar>(g: &QuarticTensor, y: &[T; 4]) -> MetricJet<T> {
    let c = g.contractions(y);
    let g1111 = Taylor2::from_parts(c.g1111, c.gi111, c.gij11);
    let gi111: [Taylor2<T>; 4] =
        std::array::from_fn(|i| Taylor2::from_parts(c.gi111[i], c.gij11[i], c.gijk1[i]));
    let factor = g1111.sqrt().recip() * 0.25;
    let half_inv_g = (g1111 * 2.0).recip();
    let mut g_lo = [[Taylor2::constant(T::zero()); 4]; 4];
    for i in 0..4 {
        for j in i..4 {
            let gij11 = Taylor2::from_parts(
                c.gij11[i][j],
                c.gijk1[i][j],
                std::array::from_fn(|k| std::array::from_fn(|l| T::from_f64(c.gijkl[i][j][k][l]))),
            );
            let e = (gij11 - gi111[i] * gi111[j] * half_inv_g) * factor;
            g_lo[i][j] = e;
            g_lo[j][i] = e;
        }
    }
    MetricJet { g1111, g_lo }
}

/// F² = √G₁₁₁₁·h¹¹ as a Taylor expansion built from the seeds by plain
/// Taylor arithmetic (no use of the G contractions).
pub fn f_squared_jet(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<Taylor2> {
    let seeds = crate::jetcore::taylor2_seed(p.y)?;
    let mut g1111 = Taylor2::constant(0.0);
    for q in QuarticTensor::quadruples() {
        let v = g.get(q);
        if v == 0.0 {
            continue;
        }
        let mult = multiplicity(q) as f64;
        let idx = q.map(|i| (i - 1) as usize);
        let mono = seeds[idx[0]] * seeds[idx[1]] * seeds[idx[2]] * seeds[idx[3]];
        g1111 = g1111 + mono * (mult * v);
    }
    if !(g1111.value > 0.0) {
        return Err(JetError::Domain(format!(
            "G1111 = {} is not positive",
            g1111.value
        )));
    }
    Ok(g1111.sqrt() * tm.eval(p.t).h11_inv)
}

/// Number of distinct permutations of a sorted quadruple.
fn multiplicity(q: [u8; 4]) -> u32 {
    let mut counts = [0u32; 5];
    for i in q {
        counts[i as usize] += 1;
    }
    let fact = |n: u32| (1..=n).product::<u32>();
    24 / counts.iter().map(|&c| fact(c)).product::<u32>()
}
