//! Christoffel symbol of h₁₁, the two nonlinear connections, the adapted
//! (co)frames and the Cartan canonical connection.

use serde::Serialize;

use crate::error::{JetError, Result};
use crate::geometry::Geometry;
use crate::jetcore::{check_positive_cone, JetPoint, QuarticTensor, Taylor2, TimeMetric};
use crate::linalg::{delta, re_mat, Mat4, Rank3, Vec4};
use crate::metric::metric_jet;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChristoffelTime {
    pub kappa: f64,
    pub dkappa: f64,
}

/// κ¹₁₁ = (h¹¹/2)·dh₁₁/dt and its exact t-derivative
/// dκ/dt = h''/(2h) − (h')²/(2h²).
pub fn christoffel_time(tm: &TimeMetric, t: f64) -> ChristoffelTime {
    let v = tm.eval(t);
    ChristoffelTime {
        kappa: 0.5 * v.h11_inv * v.dh11,
        dkappa: 0.5 * v.d2h11 * v.h11_inv - 0.5 * v.dh11 * v.dh11 * v.h11_inv * v.h11_inv,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NlcKind {
    /// M = −κy, N = 0 (the connection produced by the energy functional).
    Canonical,
    /// M = −κy, N = −(κ/3)·I.
    APriori,
}

/// Coefficients (M^{(i)}_{(1)1}, N^{(i)}_{(1)j}); `n[i][j]` = N^{(i)}_{(1)j}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct NonlinearConnection {
    pub m: Vec4,
    pub n: Mat4,
}

pub fn canonical_nlc(tm: &TimeMetric, p: &JetPoint) -> NonlinearConnection {
    nlc(NlcKind::Canonical, tm, p)
}

pub fn apriori_nlc(tm: &TimeMetric, p: &JetPoint) -> NonlinearConnection {
    nlc(NlcKind::APriori, tm, p)
}

pub fn nlc(kind: NlcKind, tm: &TimeMetric, p: &JetPoint) -> NonlinearConnection {
    let jet = NlcJet::new(kind, tm, p);
    NonlinearConnection {
        m: jet.m.map(|v| v.value),
        n: std::array::from_fn(|i| std::array::from_fn(|j| jet.n[i][j].value)),
    }
}

/// A nonlinear connection with the derivatives the torsion formulas need:
/// y-derivatives through Taylor expansions, ∂/∂t in closed form.
#[derive(Debug, Clone, Copy)]
pub struct NlcJet {
    pub kind: NlcKind,
    pub m: [Taylor2; 4],
    pub n: [[Taylor2; 4]; 4],
    pub dm_dt: Vec4,
    pub dn_dt: Mat4,
}

impl NlcJet {
    pub fn new(kind: NlcKind, tm: &TimeMetric, p: &JetPoint) -> Self {
        let ChristoffelTime { kappa, dkappa } = christoffel_time(tm, p.t);
        let seeds: [Taylor2; 4] = std::array::from_fn(|i| Taylor2::variable(p.y[i], i));
        let m = seeds.map(|s| s * (-kappa));
        let dm_dt = p.y.map(|v| -dkappa * v);
        let (nc, dnc) = match kind {
            NlcKind::Canonical => (0.0, 0.0),
            NlcKind::APriori => (-kappa / 3.0, -dkappa / 3.0),
        };
        let n = std::array::from_fn(|i| {
            std::array::from_fn(|j| Taylor2::constant(if i == j { nc } else { 0.0 }))
        });
        let dn_dt = std::array::from_fn(|i| std::array::from_fn(|j| dnc * delta(i, j)));
        NlcJet {
            kind,
            m,
            n,
            dm_dt,
            dn_dt,
        }
    }

    pub fn n_values(&self) -> Mat4 {
        std::array::from_fn(|i| std::array::from_fn(|j| self.n[i][j].value))
    }
}

/// Coefficients of δyⁱ = dyⁱ + (dy_correction_t)ⁱ dt + (dy_correction_x)ⁱ_j dxʲ.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AdaptedCobasis {
    pub dy_correction_t: Vec4,
    pub dy_correction_x: Mat4,
}

pub fn adapted_cobasis(nlc: &NonlinearConnection, _p: &JetPoint) -> AdaptedCobasis {
    AdaptedCobasis {
        dy_correction_t: nlc.m,
        dy_correction_x: nlc.n,
    }
}

/// Coordinate order of the 9-dimensional jet space: t, x¹..x⁴, y¹..y⁴.
pub const JET_DIM: usize = 9;

/// Adapted frame {δ/δt, δ/δxⁱ, ∂/∂yⁱ} as rows in the coordinate basis
/// {∂/∂t, ∂/∂xⁱ, ∂/∂yⁱ}.
pub fn adapted_frame(nlc: &NonlinearConnection) -> [[f64; JET_DIM]; JET_DIM] {
    let mut f = [[0.0; JET_DIM]; JET_DIM];
    f[0][0] = 1.0;
    for p in 0..4 {
        f[0][5 + p] = -nlc.m[p];
    }
    for i in 0..4 {
        f[1 + i][1 + i] = 1.0;
        for p in 0..4 {
            f[1 + i][5 + p] = -nlc.n[p][i];
        }
        f[5 + i][5 + i] = 1.0;
    }
    f
}

/// Adapted coframe {dt, dxⁱ, δyⁱ} as rows in the coordinate cobasis.
pub fn adapted_coframe(cob: &AdaptedCobasis) -> [[f64; JET_DIM]; JET_DIM] {
    let mut f = [[0.0; JET_DIM]; JET_DIM];
    f[0][0] = 1.0;
    for i in 0..4 {
        f[1 + i][1 + i] = 1.0;
        f[5 + i][5 + i] = 1.0;
        f[5 + i][0] = cob.dy_correction_t[i];
        for j in 0..4 {
            f[5 + i][1 + j] = cob.dy_correction_x[i][j];
        }
    }
    f
}

/// ⟨frame_a, coframe_b⟩ for every pair; the identity for dual bases.
pub fn duality_pairing(nlc: &NonlinearConnection, p: &JetPoint) -> [[f64; JET_DIM]; JET_DIM] {
    let frame = adapted_frame(nlc);
    let coframe = adapted_coframe(&adapted_cobasis(nlc, p));
    std::array::from_fn(|a| {
        std::array::from_fn(|b| (0..JET_DIM).map(|c| frame[a][c] * coframe[b][c]).sum())
    })
}

/// Adapted components (κ¹₁₁, G^k_{j1}, L^i_{jk}, C^{i(1)}_{j(k)}).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CartanConnection {
    pub kappa: f64,
    /// `gk[k][j]` = G^k_{j1}.
    pub gk: Mat4,
    /// `l[i][j][k]` = L^i_{jk}.
    pub l: Rank3,
    /// `c[i][j][k]` = C^{i(1)}_{j(k)}.
    pub c: Rank3,
}

/// Generic Cartan connection for the a-priori nonlinear connection.
pub fn cartan_connection(g: &QuarticTensor, tm: &TimeMetric, p: &JetPoint) -> Result<CartanConnection> {
    cartan_connection_with(NlcKind::APriori, g, tm, p)
}

pub fn cartan_connection_with(
    kind: NlcKind,
    g: &QuarticTensor,
    tm: &TimeMetric,
    p: &JetPoint,
) -> Result<CartanConnection> {
    let (geo, kappa) = local_geometry(kind, g, tm, p)?;
    Ok(CartanConnection {
        kappa,
        gk: re_mat(&geo.gk),
        l: geo.l,
        c: geo.c,
    })
}

/// Builds the f64 geometry engine at a point, after the metric preconditions.
pub(crate) fn local_geometry(
    kind: NlcKind,
    g: &QuarticTensor,
    tm: &TimeMetric,
    p: &JetPoint,
) -> Result<(Geometry<f64>, f64)> {
    // validates the domain, G_ij11 and the inverse-metric denominator
    crate::metric::metric_pair(g, p)?;
    let jet = metric_jet(g, &p.y);
    let nj = NlcJet::new(kind, tm, p);
    let m = nj.m.map(|v| v.value);
    let geo = Geometry::new(&jet, &m, &nj.n_values()).ok_or(JetError::SingularTensor {
        det: 0.0,
        threshold: 0.0,
    })?;
    Ok((geo, christoffel_time(tm, p.t).kappa))
}

/// A^i_{jk} = (2δ^i_j + 2δ^i_k + 2δ_jk − 8δ^i_jδ_jk − 1)/8, stored `[i][j][k]`.
pub const A_TABLE: Rank3 = build_a_table();

const fn build_a_table() -> Rank3 {
    let mut a = [[[0.0; 4]; 4]; 4];
    let mut i = 0;
    while i < 4 {
        let mut j = 0;
        while j < 4 {
            let mut k = 0;
            while k < 4 {
                let dij = (i == j) as i32;
                let dik = (i == k) as i32;
                let djk = (j == k) as i32;
                a[i][j][k] = (2 * dij + 2 * dik + 2 * djk - 8 * dij * djk - 1) as f64 / 8.0;
                k += 1;
            }
            j += 1;
        }
        i += 1;
    }
    a
}

/// Berwald-Moór closed form: C^i_{j(k)} = A^i_{jk}·yⁱ/(yʲyᵏ), L = (κ/3)C, G^k_{j1} = 0.
pub fn bm_cartan_closed(tm: &TimeMetric, p: &JetPoint) -> Result<CartanConnection> {
    check_positive_cone(&p.y)?;
    let kappa = christoffel_time(tm, p.t).kappa;
    let y = p.y;
    let c: Rank3 = std::array::from_fn(|i| {
        std::array::from_fn(|j| std::array::from_fn(|k| A_TABLE[i][j][k] * y[i] / (y[j] * y[k])))
    });
    let l = c.map(|m| m.map(|r| r.map(|v| kappa / 3.0 * v)));
    Ok(CartanConnection {
        kappa,
        gk: [[0.0; 4]; 4],
        l,
        c,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{flatten3, max_abs};

    fn pt(t: f64, y: [f64; 4]) -> JetPoint {
        JetPoint::at(t, y).unwrap()
    }

    #[test]
    fn christoffel_examples() {
        let k = christoffel_time(&TimeMetric::constant(3.0).unwrap(), 1.2);
        assert_eq!((k.kappa, k.dkappa), (0.0, 0.0));
        for t in [-0.7, 0.0, 2.0] {
            let k = christoffel_time(&TimeMetric::exponential(1.0, 1.0).unwrap(), t);
            assert!((k.kappa - 0.5).abs() < 1e-15);
            assert!(k.dkappa.abs() < 1e-15);
        }
        // κ = t/(1+t²), dκ/dt = (1−t²)/(1+t²)²
        let k = christoffel_time(&TimeMetric::power(1.0).unwrap(), 0.5);
        assert!((k.kappa - 0.4).abs() < 1e-15);
        assert!((k.dkappa - 0.48).abs() < 1e-15);
    }

    #[test]
    fn nonlinear_connections() {
        let p = pt(0.0, [1.0, 2.0, 3.0, 4.0]);
        let flat = TimeMetric::constant(1.0).unwrap();
        let can = canonical_nlc(&flat, &p);
        assert_eq!(can.m, [0.0; 4]);
        assert_eq!(can.n, [[0.0; 4]; 4]);
        assert_eq!(apriori_nlc(&flat, &p).n, [[0.0; 4]; 4]);

        let e1 = TimeMetric::exponential(1.0, 1.0).unwrap();
        let can = canonical_nlc(&e1, &p);
        assert_eq!(can.m, [-0.5, -1.0, -1.5, -2.0]);
        assert_eq!(can.n, [[0.0; 4]; 4]);
        let apr = apriori_nlc(&e1, &p);
        assert_eq!(apr.m, can.m);
        for i in 0..4 {
            for j in 0..4 {
                let want = if i == j { -1.0 / 6.0 } else { 0.0 };
                assert!((apr.n[i][j] - want).abs() < 1e-16);
            }
        }
        let e2 = TimeMetric::exponential(1.0, 2.0).unwrap();
        assert_eq!(canonical_nlc(&e2, &p).m, can.m.map(|v| 2.0 * v));
    }

    #[test]
    fn adapted_bases_are_dual() {
        let e1 = TimeMetric::exponential(1.0, 1.0).unwrap();
        let p = pt(0.0, [2.0; 4]);
        for nlc in [apriori_nlc(&e1, &p), canonical_nlc(&e1, &p)] {
            let pairing = duality_pairing(&nlc, &p);
            for (a, row) in pairing.iter().enumerate() {
                for (b, v) in row.iter().enumerate() {
                    assert!((v - delta(a, b)).abs() < 1e-15, "pairing[{a}][{b}] = {v}");
                }
            }
        }
        let cob = adapted_cobasis(&apriori_nlc(&e1, &p), &p);
        assert_eq!(cob.dy_correction_t, [-1.0; 4]);
    }

    #[test]
    fn a_table_values() {
        assert_eq!(A_TABLE[0][1][2], -0.125);
        assert_eq!(A_TABLE[0][0][1], 0.125);
        assert_eq!(A_TABLE[0][1][0], 0.125);
        assert_eq!(A_TABLE[1][0][0], 0.125);
        assert_eq!(A_TABLE[2][2][2], -0.375);
        for j in 0..4 {
            let trace: f64 = (0..4).map(|m| A_TABLE[m][j][m]).sum();
            assert_eq!(trace, 0.0);
        }
    }

    #[test]
    fn cartan_bm_hand_values() {
        let e1 = TimeMetric::exponential(1.0, 1.0).unwrap();
        let g = QuarticTensor::berwald_moor();
        let ones = cartan_connection(&g, &e1, &pt(0.0, [1.0; 4])).unwrap();
        for (got, want) in flatten3(&ones.c).iter().zip(flatten3(&A_TABLE)) {
            assert!((got - want).abs() < 1e-13);
        }
        let p = pt(0.0, [1.0, 2.0, 3.0, 4.0]);
        let gen = cartan_connection(&g, &e1, &p).unwrap();
        assert!((gen.c[0][1][2] + 1.0 / 48.0).abs() < 1e-14);
        assert!(max_abs(&crate::linalg::flatten2(&gen.gk)) < 1e-12);
        let closed = bm_cartan_closed(&e1, &p).unwrap();
        assert_eq!(closed.c[1][1][1], -3.0 / 16.0);
        assert!((gen.c[1][1][1] + 3.0 / 16.0).abs() < 1e-14);
        for (a, b) in flatten3(&gen.l).iter().zip(flatten3(&closed.l)) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn canonical_connection_gives_trivial_l() {
        let g = QuarticTensor::berwald_moor();
        let p = pt(0.2, [0.5, 1.5, 2.5, 3.5]);
        for tm in [TimeMetric::constant(1.0).unwrap(), TimeMetric::exponential(1.0, 0.8).unwrap()] {
            let cc = cartan_connection_with(NlcKind::Canonical, &g, &tm, &p).unwrap();
            assert_eq!(max_abs(&flatten3(&cc.l)), 0.0);
        }
        let cc = cartan_connection(&g, &TimeMetric::constant(1.0).unwrap(), &p).unwrap();
        assert_eq!(max_abs(&flatten3(&cc.l)), 0.0);
    }

    #[test]
    fn cartan_rejects_outside_cone() {
        let tm = TimeMetric::constant(1.0).unwrap();
        let p = JetPoint { t: 0.0, x: [0.0; 4], y: [1.0, -1.0, 1.0, -1.0] };
        assert!(cartan_connection(&QuarticTensor::berwald_moor(), &tm, &p).is_err());
        assert!(bm_cartan_closed(&tm, &p).is_err());
    }
}
