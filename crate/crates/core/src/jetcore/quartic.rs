use std::collections::BTreeMap;

use super::scalar::Scalar;
use crate::error::{JetError, Result};

/// Sorted index quadruple, 1-based (p ≤ q ≤ r ≤ s).
pub type Quadruple = [u8; 4];

/// Totally symmetric rank-4 tensor G_pqrs on four indices.
///
/// Only the 35 sorted quadruples are stored; any permutation reads the same
/// entry. A dense copy is kept for the contractions.
#[derive(Debug, Clone, PartialEq)]
pub struct QuarticTensor {
    components: BTreeMap<Quadruple, f64>,
    dense: [[[[f64; 4]; 4]; 4]; 4],
}

fn sorted(idx: [u8; 4]) -> Quadruple {
    let mut k = idx;
    k.sort_unstable();
    k
}

impl QuarticTensor {
    /// All 35 sorted quadruples in lexicographic order.
    pub fn quadruples() -> impl Iterator<Item = Quadruple> {
        (1..=4u8).flat_map(|p| {
            (p..=4).flat_map(move |q| {
                (q..=4).flat_map(move |r| (r..=4).map(move |s| [p, q, r, s]))
            })
        })
    }

    pub fn zero() -> Self {
        QuarticTensor {
            components: Self::quadruples().map(|k| (k, 0.0)).collect(),
            dense: [[[[0.0; 4]; 4]; 4]; 4],
        }
    }

    /// G_pqrs = 1/4! on the quadruple of distinct indices, 0 elsewhere.
    pub fn berwald_moor() -> Self {
        let mut g = Self::zero();
        g.set([1, 2, 3, 4], 1.0 / 24.0)
            .expect("distinct quadruple is valid");
        g
    }

    /// Builds a tensor from (1-based) index quadruples in any order. Two
    /// permutations of the same quadruple are rejected as conflicting.
    pub fn from_components<I>(entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = ([u8; 4], f64)>,
    {
        let mut g = Self::zero();
        let mut seen = std::collections::BTreeSet::new();
        for (idx, v) in entries {
            let key = sorted(idx);
            if !seen.insert(key) {
                return Err(JetError::Construction(format!(
                    "quadruple {key:?} given more than once"
                )));
            }
            g.set(idx, v)?;
        }
        Ok(g)
    }

    pub fn set(&mut self, idx: [u8; 4], value: f64) -> Result<()> {
        if idx.iter().any(|&i| !(1..=4).contains(&i)) {
            return Err(JetError::Construction(format!(
                "index quadruple {idx:?} out of range 1..=4"
            )));
        }
        if !value.is_finite() {
            return Err(JetError::Construction(format!(
                "component {idx:?} is not finite"
            )));
        }
        let key = sorted(idx);
        self.components.insert(key, value);
        let [p, q, r, s] = key.map(|i| (i - 1) as usize);
        for perm in permutations([p, q, r, s]) {
            self.dense[perm[0]][perm[1]][perm[2]][perm[3]] = value;
        }
        Ok(())
    }

    /// Component for 1-based indices in any order.
    pub fn get(&self, idx: [u8; 4]) -> f64 {
        self.components.get(&sorted(idx)).copied().unwrap_or(0.0)
    }

    /// Component for 0-based indices.
    #[inline]
    pub fn at(&self, p: usize, q: usize, r: usize, s: usize) -> f64 {
        self.dense[p][q][r][s]
    }

    pub fn components(&self) -> &BTreeMap<Quadruple, f64> {
        &self.components
    }

    pub fn is_berwald_moor(&self) -> bool {
        self.components.iter().all(|(k, &v)| {
            if *k == [1, 2, 3, 4] {
                v == 1.0 / 24.0
            } else {
                v == 0.0
            }
        })
    }

    /// The y-contractions of G: (G₁₁₁₁, G_i111, G_ij11, G_ijk1, G_ijkl), i.e.
    /// G₁₁₁₁ and its first four y-derivatives.
    pub fn contractions<T: Scalar>(&self, y: &[T; 4]) -> Contractions<T> {
        let z = T::zero();
        let mut c3 = [[[z; 4]; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                for k in 0..4 {
                    let mut acc = z;
                    for (p, yp) in y.iter().enumerate() {
                        let g = self.dense[i][j][k][p];
                        if g != 0.0 {
                            acc += *yp * g;
                        }
                    }
                    c3[i][j][k] = acc;
                }
            }
        }
        let mut c2 = [[z; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = z;
                for (k, yk) in y.iter().enumerate() {
                    acc += c3[i][j][k] * *yk;
                }
                c2[i][j] = acc;
            }
        }
        let mut c1 = [z; 4];
        for i in 0..4 {
            let mut acc = z;
            for (j, yj) in y.iter().enumerate() {
                acc += c2[i][j] * *yj;
            }
            c1[i] = acc;
        }
        let mut c0 = z;
        for (i, yi) in y.iter().enumerate() {
            c0 += c1[i] * *yi;
        }
        let mut gijkl = [[[[0.0; 4]; 4]; 4]; 4];
        for (i, a) in gijkl.iter_mut().enumerate() {
            for (j, b) in a.iter_mut().enumerate() {
                for (k, c) in b.iter_mut().enumerate() {
                    for (l, e) in c.iter_mut().enumerate() {
                        *e = 24.0 * self.dense[i][j][k][l];
                    }
                }
            }
        }
        Contractions {
            g1111: c0,
            gi111: c1.map(|v| v * 4.0),
            gij11: c2.map(|r| r.map(|v| v * 12.0)),
            gijk1: c3.map(|m| m.map(|r| r.map(|v| v * 24.0))),
            gijkl,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct Contractions<T> {
    pub g1111: T,
    pub gi111: [T; 4],
    pub gij11: [[T; 4]; 4],
    pub gijk1: [[[T; 4]; 4]; 4],
    pub gijkl: [[[[f64; 4]; 4]; 4]; 4],
}

fn permutations(idx: [usize; 4]) -> Vec<[usize; 4]> {
    let mut out = Vec::with_capacity(24);
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    if a != b && a != c && a != d && b != c && b != d && c != d {
                        out.push([idx[a], idx[b], idx[c], idx[d]]);
                    }
                }
            }
        }
    }
    out
}
