//! Torsion and curvature d-tensors of the Cartan connection, their Ricci
//! contractions and the scalar curvature.

use serde::Serialize;

use crate::connection::{
    bm_cartan_closed, christoffel_time, local_geometry, NlcJet, NlcKind,
};
use crate::error::{JetError, Result};
use crate::geometry::{ricci_contract, Geometry};
use crate::jetcore::{check_positive_cone, Dual4, JetPoint, QuarticTensor, Scalar, Taylor2, TimeMetric};
use crate::linalg::{delta, zeros, zeros4, Mat4, Rank3, Rank4, Vec4};
use crate::metric::metric_jet;

/// The three torsion d-tensors that survive for the Cartan connection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TorsionSet {
    /// `p_mixed[k][i][j]` = P^{(k)(1)}_{(1)i(j)}.
    pub p_mixed: Rank3,
    /// `p_vert[k][i][j]` = P^{k(1)}_{i(j)}.
    pub p_vert: Rank3,
    /// `r_time[k][j]` = R^{(k)}_{(1)1j}.
    pub r_time: Mat4,
}

/// Torsions from their defining formulas:
/// P_mixed = ∂N/∂y − L, R_time = δM/δxʲ − δN/δt, P_vert = C.
pub fn torsions(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<TorsionSet> {
    let (geo, _) = local_geometry(NlcKind::APriori, g, tm, p)?;
    let nj = NlcJet::new(NlcKind::APriori, tm, p);
    Ok(torsions_from(&geo, &nj))
}

pub(crate) fn torsions_from(geo: &Geometry<f64>, nj: &NlcJet) -> TorsionSet {
    let mut p_mixed = [[[0.0; 4]; 4]; 4];
    for (k, pk) in p_mixed.iter_mut().enumerate() {
        for (i, pki) in pk.iter_mut().enumerate() {
            for (j, e) in pki.iter_mut().enumerate() {
                *e = nj.n[k][i].grad[j] - geo.l[k][j][i];
            }
        }
    }
    let n = nj.n_values();
    let mut r_time = [[0.0; 4]; 4];
    for (k, row) in r_time.iter_mut().enumerate() {
        for (j, e) in row.iter_mut().enumerate() {
            let mut dm_dx = 0.0;
            let mut dn_dt = nj.dn_dt[k][j];
            for q in 0..4 {
                dm_dx -= n[q][j] * nj.m[k].grad[q];
                dn_dt -= nj.m[q].value * nj.n[k][j].grad[q];
            }
            *e = dm_dx - dn_dt;
        }
    }
    TorsionSet {
        p_mixed,
        p_vert: geo.c,
        r_time,
    }
}

/// P_mixed = −(κ/3)C, P_vert = C, R_time = (1/3)(dκ/dt − κ²)·I.
pub fn bm_torsions_closed(tm: &TimeMetric, p: &JetPoint) -> Result<TorsionSet> {
    let cc = bm_cartan_closed(tm, p)?;
    let k = christoffel_time(tm, p.t);
    let r = (k.dkappa - k.kappa * k.kappa) / 3.0;
    Ok(TorsionSet {
        p_mixed: cc.c.map(|m| m.map(|row| row.map(|v| -k.kappa / 3.0 * v))),
        p_vert: cc.c,
        r_time: std::array::from_fn(|i| std::array::from_fn(|j| r * delta(i, j))),
    })
}

/// The three curvature d-tensors, all stored `[l][i][j][k]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvatureSet {
    /// R^l_{ijk}
    pub r: Rank4,
    /// P^{l (1)}_{ij(k)}
    pub p: Rank4,
    /// S^{l(1)(1)}_{i(j)(k)}
    pub s: Rank4,
}

pub fn curvatures(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<CurvatureSet> {
    let (geo, _) = local_geometry(NlcKind::APriori, g, tm, p)?;
    Ok(curvatures_from(&geo))
}

pub(crate) fn curvatures_from(geo: &Geometry<f64>) -> CurvatureSet {
    CurvatureSet {
        r: geo.r_tensor(),
        p: geo.p_tensor(&geo.p_mixed()),
        s: geo.s_tensor(),
    }
}

/// Which closed-form case an index pattern (l, i, j, k) of S falls under.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SCase {
    /// j = k; zero by antisymmetry.
    Diagonal,
    /// One of the ten j ≠ k patterns, numbered 1..=10.
    Item(u8),
}

/// Classifies (l, i, j, k). For j ≠ k, i equals j, k or neither and l equals
/// i, j, k or none of them; the ten admissible combinations are the ten items.
pub fn s_case(l: usize, i: usize, j: usize, k: usize) -> SCase {
    if j == k {
        return SCase::Diagonal;
    }
    let item = match (i == j, i == k) {
        (false, false) => {
            if l == i {
                4
            } else if l == j {
                5
            } else if l == k {
                6
            } else {
                1
            }
        }
        (true, _) => {
            if l == i {
                9
            } else if l == k {
                7
            } else {
                2
            }
        }
        (_, true) => {
            if l == i {
                10
            } else if l == j {
                8
            } else {
                3
            }
        }
    };
    SCase::Item(item)
}

/// S^{l(1)(1)}_{i(j)(k)} for Berwald-Moór assembled from the ten-case table.
pub fn bm_s_closed(y: &[f64; 4]) -> Result<Rank4> {
    check_positive_cone(y)?;
    let mut s = [[[[0.0; 4]; 4]; 4]; 4];
    for (l, sl) in s.iter_mut().enumerate() {
        for (i, sli) in sl.iter_mut().enumerate() {
            for (j, slij) in sli.iter_mut().enumerate() {
                for (k, e) in slij.iter_mut().enumerate() {
                    *e = match s_case(l, i, j, k) {
                        SCase::Diagonal => 0.0,
                        SCase::Item(1 | 4 | 9 | 10) => 0.0,
                        SCase::Item(2) => -y[l] / (16.0 * y[i] * y[i] * y[k]),
                        SCase::Item(3) => y[l] / (16.0 * y[i] * y[i] * y[j]),
                        SCase::Item(5) => 1.0 / (16.0 * y[i] * y[k]),
                        SCase::Item(6) => -1.0 / (16.0 * y[i] * y[j]),
                        SCase::Item(7) => 1.0 / (8.0 * y[i] * y[i]),
                        SCase::Item(8) => -1.0 / (8.0 * y[i] * y[i]),
                        SCase::Item(n) => unreachable!("no S case {n}"),
                    };
                }
            }
        }
    }
    Ok(s)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct RicciSet {
    /// R_ij = R^m_{ijm}
    pub r_ij: Mat4,
    /// P^{(1)}_{i(j)} = P^{(1)}_{(i)j} = P^m_{ij(m)}
    pub p_mixed_ricci: Mat4,
    /// S^{(1)(1)}_{(i)(j)} = S^m_{i(j)(m)}
    pub s_ricci: Mat4,
    /// `s_raised[m][i]` = S_i^{m11} = g^{mr}S_{(r)(i)}
    pub s_raised: Mat4,
    /// Sc = g^{pq}R_pq + h₁₁g^{pq}S_{(p)(q)}
    pub sc: f64,
}

pub fn ricci_scalar(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<RicciSet> {
    let (geo, _) = local_geometry(NlcKind::APriori, g, tm, p)?;
    Ok(ricci_from(&geo, &curvatures_from(&geo), tm.eval(p.t).h11))
}

pub(crate) fn ricci_from(geo: &Geometry<f64>, cs: &CurvatureSet, h11: f64) -> RicciSet {
    let r_ij = ricci_contract(&cs.r);
    let p_mixed_ricci = ricci_contract(&cs.p);
    let s_ricci = ricci_contract(&cs.s);
    let s_raised = raise(&geo.g_inv, &s_ricci);
    let mut sc = 0.0;
    for pp in 0..4 {
        for q in 0..4 {
            sc += geo.g_inv[pp][q] * (r_ij[pp][q] + h11 * s_ricci[pp][q]);
        }
    }
    RicciSet {
        r_ij,
        p_mixed_ricci,
        s_ricci,
        s_raised,
        sc,
    }
}

/// `out[m][i]` = Σ_r up[m][r]·lo[r][i].
pub fn raise<T: Scalar>(up: &Mat4<T>, lo: &Mat4<T>) -> Mat4<T> {
    let mut out = zeros::<T>();
    for m in 0..4 {
        for i in 0..4 {
            let mut acc = T::zero();
            for r in 0..4 {
                acc += up[m][r] * lo[r][i];
            }
            out[m][i] = acc;
        }
    }
    out
}

/// Ricci table of the vertical curvature as published:
/// S_{(i)(j)} = (7δ_ij − 1)/(8yⁱyʲ).
///
/// The contraction of [`bm_s_closed`] gives (4δ_ij − 1)/(8yⁱyʲ) instead; the
/// verification suite reports the discrepancy.
pub fn bm_ricci_vertical_published(y: &[f64; 4]) -> Mat4 {
    std::array::from_fn(|i| std::array::from_fn(|j| (7.0 * delta(i, j) - 1.0) / (8.0 * y[i] * y[j])))
}

/// Published raised form S_i^{m11} = (5 − 14δ)/(4√G₁₁₁₁)·yᵐ/yⁱ, `[m][i]`.
pub fn bm_s_raised_published(y: &[f64; 4]) -> Mat4 {
    let root = y.iter().product::<f64>().sqrt();
    std::array::from_fn(|m| {
        std::array::from_fn(|i| (5.0 - 14.0 * delta(i, m)) / (4.0 * root) * y[m] / y[i])
    })
}

/// The published raised form as Taylor expansions in y.
pub fn bm_s_raised_published_jet(y: &[f64; 4]) -> Result<[[Taylor2; 4]; 4]> {
    let s = crate::jetcore::taylor2_seed(*y)?;
    let inv_root = (s[0] * s[1] * s[2] * s[3]).sqrt().recip();
    Ok(std::array::from_fn(|m| {
        std::array::from_fn(|i| {
            inv_root * s[m] / s[i] * ((5.0 - 14.0 * delta(i, m)) / 4.0)
        })
    }))
}

/// Published scalar curvature −(9h₁₁ + κ²)/√G₁₁₁₁.
pub fn bm_scalar_curvature_published(h11: f64, kappa: f64, y: &[f64; 4]) -> f64 {
    -(9.0 * h11 + kappa * kappa) / y.iter().product::<f64>().sqrt()
}

/// Σ_{m,r} S_r^{m11}·C^r_{i(m)} with `s_raised[m][r]`, `c[r][i][m]`.
pub fn s_raised_c_contraction(s_raised: &Mat4, c: &Rank3) -> Vec4 {
    std::array::from_fn(|i| {
        let mut acc = 0.0;
        for m in 0..4 {
            for r in 0..4 {
                acc += s_raised[m][r] * c[r][i][m];
            }
        }
        acc
    })
}

/// Σ_m ∂(S raised)[m][i]/∂yᵐ for a Taylor-expanded raised tensor.
pub fn divergence_jet(t: &[[Taylor2; 4]; 4]) -> Vec4 {
    std::array::from_fn(|i| (0..4).map(|m| t[m][i].grad[m]).sum())
}

/// Σ_m ∂(field)[m][i]/∂yᵐ for a dual-valued field.
pub fn divergence_dual(t: &Mat4<Dual4>) -> Vec4 {
    std::array::from_fn(|i| (0..4).map(|m| t[m][i].eps[m]).sum())
}

/// The geometry engine evaluated over dual numbers: every output carries its
/// exact y-gradient.
pub(crate) fn dual_geometry(
    g: &QuarticTensor,
    tm: &TimeMetric,
    p: &JetPoint,
) -> Result<(Geometry<Dual4>, Dual4)> {
    crate::metric::metric_pair(g, p)?;
    let y: [Dual4; 4] = std::array::from_fn(|i| Dual4::variable(p.y[i], i));
    let jet = metric_jet(g, &y);
    let nj = NlcJet::new(NlcKind::APriori, tm, p);
    let kappa = christoffel_time(tm, p.t).kappa;
    let m = y.map(|v| v * (-kappa));
    let geo = Geometry::new(&jet, &m, &nj.n_values()).ok_or(JetError::SingularTensor {
        det: 0.0,
        threshold: 0.0,
    })?;
    Ok((geo, jet.g1111.value))
}

/// Generic S_{(i)(j)} and S_i^{m11} with exact y-gradients.
#[derive(Debug, Clone, Copy)]
pub struct RicciJet {
    pub g1111: Dual4,
    pub c: Rank3,
    pub l: Rank3,
    pub g_inv: Mat4<Dual4>,
    pub s_ricci: Mat4<Dual4>,
    pub s_raised: Mat4<Dual4>,
}

pub fn ricci_jet(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<RicciJet> {
    let (geo, g1111) = dual_geometry(g, tm, p)?;
    let s_ricci = ricci_contract(&geo.s_tensor());
    let re3 = |t: &Rank3<Dual4>| t.map(|m| m.map(|r| r.map(|v| v.re)));
    Ok(RicciJet {
        g1111,
        c: re3(&geo.c),
        l: re3(&geo.l),
        g_inv: geo.g_inv,
        s_raised: raise(&geo.g_inv, &s_ricci),
        s_ricci,
    })
}

/// Σ_m ∂S_i^{m11}/∂yᵐ of the generic raised Ricci tensor.
pub fn s_raised_divergence(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<Vec4> {
    Ok(divergence_dual(&ricci_jet(g, tm, p)?.s_raised))
}

/// Antisymmetry defect max |S^l_{i(j)(k)} + S^l_{i(k)(j)}|.
pub fn s_antisymmetry_defect(s: &Rank4) -> f64 {
    let mut worst = 0.0f64;
    for l in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    worst = worst.max((s[l][i][j][k] + s[l][i][k][j]).abs());
                }
            }
        }
    }
    worst
}

pub fn scale4(t: &Rank4, k: f64) -> Rank4 {
    let mut out = zeros4::<f64>();
    for l in 0..4 {
        for i in 0..4 {
            for j in 0..4 {
                for m in 0..4 {
                    out[l][i][j][m] = k * t[l][i][j][m];
                }
            }
        }
    }
    out
}
