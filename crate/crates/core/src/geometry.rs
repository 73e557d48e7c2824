//! Generic adapted-derivative engine.
//!
//! Given the metric jet (g_ij with exact first and second y-derivatives) and
//! the coefficients of a nonlinear connection, this assembles the Cartan
//! connection components and their y-derivatives, and from those the torsion
//! and curvature d-tensors, directly from their defining formulas.
//!
//! Conventions (0-based, x-constant G):
//! - `dg[k][i][j]` = ∂g_ij/∂yᵏ, `d2g[k][l][i][j]` = ∂²g_ij/∂yᵏ∂yˡ
//! - `c[i][j][k]` = C^i_{j(k)}, `l[i][j][k]` = L^i_{jk}
//! - `dc[q][..]`, `dl[q][..]` carry one extra ∂/∂y^q in front
//! - δ/δxᵏ = ∂/∂xᵏ − N^p_k ∂/∂yᵖ and δ/δt = ∂/∂t − M^p ∂/∂yᵖ; since G does
//!   not depend on x, δ/δxᵏ acts on y-fields as −N^p_k ∂/∂yᵖ.
//!
//! The spatial coefficients N are taken y-independent, which holds for both
//! the canonical and the a-priori connection.

use crate::jetcore::Scalar;
use crate::linalg::{invert4, zeros, zeros3, zeros4, Mat4, Rank3, Rank4};
use crate::metric::MetricJet;

#[derive(Debug, Clone)]
pub struct Geometry<T> {
    pub g: Mat4<T>,
    pub g_inv: Mat4<T>,
    pub dg: [Mat4<T>; 4],
    pub d2g: [[Mat4<T>; 4]; 4],
    pub dg_inv: [Mat4<T>; 4],
    pub c: Rank3<T>,
    pub dc: Rank4<T>,
    pub l: Rank3<T>,
    pub dl: Rank4<T>,
    /// G^k_{j1}, stored `gk[k][j]`.
    pub gk: Mat4<T>,
    n: Mat4,
}

impl<T: Scalar> Geometry<T> {
    /// `m` are the temporal coefficients M^{(i)}_{(1)1} at the point, `n` the
    /// spatial coefficients N^{(i)}_{(1)j} stored `n[i][j]`.
    pub fn new(jet: &MetricJet<T>, m: &[T; 4], n: &Mat4) -> Option<Self> {
        let mut g = zeros::<T>();
        let mut dg = [zeros::<T>(); 4];
        let mut d2g = [[zeros::<T>(); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let e = &jet.g_lo[i][j];
                g[i][j] = e.value;
                for k in 0..4 {
                    dg[k][i][j] = e.grad[k];
                    for l in 0..4 {
                        d2g[k][l][i][j] = e.hess(k, l);
                    }
                }
            }
        }
        let g_inv = invert4(&g)?;
        let dg_inv: [Mat4<T>; 4] = std::array::from_fn(|k| {
            let mut out = zeros::<T>();
            for i in 0..4 {
                for j in 0..4 {
                    let mut acc = T::zero();
                    for a in 0..4 {
                        for b in 0..4 {
                            acc -= g_inv[i][a] * dg[k][a][b] * g_inv[b][j];
                        }
                    }
                    out[i][j] = acc;
                }
            }
            out
        });

        let mut c = zeros3::<T>();
        let mut dc = zeros4::<T>();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let mut acc = T::zero();
                    for mm in 0..4 {
                        acc += g_inv[i][mm] * (dg[k][j][mm] + dg[j][k][mm] - dg[mm][j][k]);
                    }
                    c[i][j][k] = acc * 0.5;
                    for q in 0..4 {
                        let mut acc = T::zero();
                        for mm in 0..4 {
                            acc += dg_inv[q][i][mm] * (dg[k][j][mm] + dg[j][k][mm] - dg[mm][j][k])
                                + g_inv[i][mm]
                                    * (d2g[q][k][j][mm] + d2g[q][j][k][mm] - d2g[q][mm][j][k]);
                        }
                        dc[q][i][j][k] = acc * 0.5;
                    }
                }
            }
        }

        // δg/δxᵏ and its y-derivatives
        let mut hg = [zeros::<T>(); 4];
        let mut dhg = [[zeros::<T>(); 4]; 4];
        for k in 0..4 {
            for p in 0..4 {
                let coef = -n[p][k];
                if coef == 0.0 {
                    continue;
                }
                for i in 0..4 {
                    for j in 0..4 {
                        hg[k][i][j] += dg[p][i][j] * coef;
                        for q in 0..4 {
                            dhg[q][k][i][j] += d2g[q][p][i][j] * coef;
                        }
                    }
                }
            }
        }
        let mut l = zeros3::<T>();
        let mut dl = zeros4::<T>();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let mut acc = T::zero();
                    for mm in 0..4 {
                        acc += g_inv[i][mm] * (hg[k][j][mm] + hg[j][k][mm] - hg[mm][j][k]);
                    }
                    l[i][j][k] = acc * 0.5;
                    for q in 0..4 {
                        let mut acc = T::zero();
                        for mm in 0..4 {
                            acc += dg_inv[q][i][mm] * (hg[k][j][mm] + hg[j][k][mm] - hg[mm][j][k])
                                + g_inv[i][mm]
                                    * (dhg[q][k][j][mm] + dhg[q][j][k][mm] - dhg[q][mm][j][k]);
                        }
                        dl[q][i][j][k] = acc * 0.5;
                    }
                }
            }
        }

        // δg/δt; g carries no explicit t-dependence
        let mut tg = zeros::<T>();
        for (p, mp) in m.iter().enumerate() {
            for i in 0..4 {
                for j in 0..4 {
                    tg[i][j] -= *mp * dg[p][i][j];
                }
            }
        }
        let mut gk = zeros::<T>();
        for k in 0..4 {
            for j in 0..4 {
                let mut acc = T::zero();
                for mm in 0..4 {
                    acc += g_inv[k][mm] * tg[mm][j];
                }
                gk[k][j] = acc * 0.5;
            }
        }

        let geo = Geometry {
            g,
            g_inv,
            dg,
            d2g,
            dg_inv,
            c,
            dc,
            l,
            dl,
            gk,
            n: *n,
        };
        #[cfg(debug_assertions)]
        geo.debug_check_one_term();
        Some(geo)
    }

    /// C from the one-term form (g^{im}/2)·∂g_jm/∂yᵏ, which agrees with the
    /// three-term form because g_ij is a y-Hessian.
    pub fn c_one_term(&self) -> Rank3<T> {
        let mut out = zeros3::<T>();
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let mut acc = T::zero();
                    for mm in 0..4 {
                        acc += self.g_inv[i][mm] * self.dg[k][j][mm];
                    }
                    out[i][j][k] = acc * 0.5;
                }
            }
        }
        out
    }

    #[cfg(debug_assertions)]
    fn debug_check_one_term(&self) {
        let one = self.c_one_term();
        let scale = self
            .c
            .iter()
            .flatten()
            .flatten()
            .fold(0.0f64, |m, v| m.max(v.re().abs()));
        for (a, b) in one.iter().flatten().flatten().zip(self.c.iter().flatten().flatten()) {
            debug_assert!(
                (a.re() - b.re()).abs() <= 1e-8 * scale.max(1e-300),
                "one-term and three-term C disagree"
            );
        }
    }

    /// δf/δxᵏ for a y-field whose y-gradient is `df[p]`.
    fn horizontal(&self, df: impl Fn(usize) -> T, k: usize) -> T {
        let mut acc = T::zero();
        for p in 0..4 {
            let coef = -self.n[p][k];
            if coef != 0.0 {
                acc += df(p) * coef;
            }
        }
        acc
    }

    /// S^l_{i(j)(k)} = ∂C^l_{i(j)}/∂yᵏ − ∂C^l_{i(k)}/∂yʲ + C^m_{i(j)}C^l_{m(k)} − C^m_{i(k)}C^l_{m(j)},
    /// stored `s[l][i][j][k]`.
    pub fn s_tensor(&self) -> Rank4<T> {
        let (c, dc) = (&self.c, &self.dc);
        let mut s = zeros4::<T>();
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let mut acc = dc[k][l][i][j] - dc[j][l][i][k];
                        for m in 0..4 {
                            acc += c[m][i][j] * c[l][m][k] - c[m][i][k] * c[l][m][j];
                        }
                        s[l][i][j][k] = acc;
                    }
                }
            }
        }
        s
    }

    /// R^l_{ijk} = δL^l_{ij}/δxᵏ − δL^l_{ik}/δxʲ + L^m_{ij}L^l_{mk} − L^m_{ik}L^l_{mj}.
    pub fn r_tensor(&self) -> Rank4<T> {
        let (lc, dl) = (&self.l, &self.dl);
        let mut r = zeros4::<T>();
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let mut acc = self.horizontal(|p| dl[p][l][i][j], k)
                            - self.horizontal(|p| dl[p][l][i][k], j);
                        for m in 0..4 {
                            acc += lc[m][i][j] * lc[l][m][k] - lc[m][i][k] * lc[l][m][j];
                        }
                        r[l][i][j][k] = acc;
                    }
                }
            }
        }
        r
    }

    /// C^l_{i(k)|j}, stored `[l][i][k][j]`.
    pub fn c_horizontal_derivative(&self) -> Rank4<T> {
        let (c, lc, dc) = (&self.c, &self.l, &self.dc);
        let mut out = zeros4::<T>();
        for l in 0..4 {
            for i in 0..4 {
                for k in 0..4 {
                    for j in 0..4 {
                        let mut acc = self.horizontal(|p| dc[p][l][i][k], j);
                        for m in 0..4 {
                            acc += c[m][i][k] * lc[l][m][j]
                                - c[l][m][k] * lc[m][i][j]
                                - c[l][i][m] * lc[m][k][j];
                        }
                        out[l][i][k][j] = acc;
                    }
                }
            }
        }
        out
    }

    /// P^l_{ij(k)} = ∂L^l_{ij}/∂yᵏ − C^l_{i(k)|j} + C^l_{i(m)}P^{(m)}_{(1)j(k)},
    /// with `p_mixed[m][j][k]` = P^{(m)}_{(1)j(k)}.
    pub fn p_tensor(&self, p_mixed: &Rank3<T>) -> Rank4<T> {
        let bar = self.c_horizontal_derivative();
        let (c, dl) = (&self.c, &self.dl);
        let mut out = zeros4::<T>();
        for l in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    for k in 0..4 {
                        let mut acc = dl[k][l][i][j] - bar[l][i][k][j];
                        for m in 0..4 {
                            acc += c[l][i][m] * p_mixed[m][j][k];
                        }
                        out[l][i][j][k] = acc;
                    }
                }
            }
        }
        out
    }

    /// P^{(k)}_{(1)i(j)} = ∂N^k_i/∂yʲ − L^k_{ji}; N is y-independent here.
    pub fn p_mixed(&self) -> Rank3<T> {
        let mut out = zeros3::<T>();
        for k in 0..4 {
            for i in 0..4 {
                for j in 0..4 {
                    out[k][i][j] = -self.l[k][j][i];
                }
            }
        }
        out
    }
}

/// Σ_m T[m][i][j][m].
pub fn ricci_contract<T: Scalar>(t: &Rank4<T>) -> Mat4<T> {
    let mut out = zeros::<T>();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = T::zero();
            for m in 0..4 {
                acc += t[m][i][j][m];
            }
            out[i][j] = acc;
        }
    }
    out
}
