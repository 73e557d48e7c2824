use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::Scalar;
use crate::error::{JetError, Result};

/// Packed upper-triangle position of (i, j) in a symmetric 4×4.
#[inline]
pub const fn tri(i: usize, j: usize) -> usize {
    let (a, b) = if i <= j { (i, j) } else { (j, i) };
    // rows 0..a contribute 4 + 3 + ... entries
    a * 4 - a * (a.saturating_sub(1)) / 2 + (b - a)
}

/// Second-order truncated Taylor expansion in the four fiber coordinates:
/// value, gradient and (symmetric, upper-triangle stored) Hessian.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor2<T = f64> {
    pub value: T,
    pub grad: [T; 4],
    hess: [T; 10],
}

impl<T: Scalar> Taylor2<T> {
    pub fn constant(value: T) -> Self {
        Taylor2 {
            value,
            grad: [T::zero(); 4],
            hess: [T::zero(); 10],
        }
    }

    /// Builds an expansion from a full Hessian; only the upper triangle is read.
    pub fn from_parts(value: T, grad: [T; 4], hess: [[T; 4]; 4]) -> Self {
        let mut packed = [T::zero(); 10];
        for i in 0..4 {
            for j in i..4 {
                packed[tri(i, j)] = hess[i][j];
            }
        }
        Taylor2 {
            value,
            grad,
            hess: packed,
        }
    }

    /// The coordinate function yⁱ evaluated at `value`.
    pub fn variable(value: T, i: usize) -> Self {
        let mut t = Self::constant(value);
        t.grad[i] = T::one();
        t
    }

    pub fn hess(&self, i: usize, j: usize) -> T {
        self.hess[tri(i, j)]
    }

    pub fn hessian(&self) -> [[T; 4]; 4] {
        let mut h = [[T::zero(); 4]; 4];
        for (i, row) in h.iter_mut().enumerate() {
            for (j, e) in row.iter_mut().enumerate() {
                *e = self.hess(i, j);
            }
        }
        h
    }

    /// Composition with a scalar function given its value and first two
    /// derivatives at `self.value`.
    fn compose(self, f: T, df: T, d2f: T) -> Self {
        let mut out = Self::constant(f);
        for i in 0..4 {
            out.grad[i] = df * self.grad[i];
        }
        for i in 0..4 {
            for j in i..4 {
                out.hess[tri(i, j)] =
                    df * self.hess(i, j) + d2f * self.grad[i] * self.grad[j];
            }
        }
        out
    }

    pub fn sqrt(self) -> Self {
        let s = self.value.sqrt();
        let ds = (s * 2.0).recip();
        let d2s = -(ds / (self.value * 2.0));
        self.compose(s, ds, d2s)
    }

    pub fn powf(self, p: f64) -> Self {
        let v = self.value;
        self.compose(
            v.powf(p),
            v.powf(p - 1.0) * p,
            v.powf(p - 2.0) * (p * (p - 1.0)),
        )
    }

    pub fn recip(self) -> Self {
        let r = self.value.recip();
        let r2 = r * r;
        self.compose(r, -r2, r2 * r * 2.0)
    }

    pub fn scale(self, k: T) -> Self {
        let mut out = self;
        out.value = out.value * k;
        out.grad = out.grad.map(|g| g * k);
        out.hess = out.hess.map(|h| h * k);
        out
    }
}

impl<T: Scalar> Add for Taylor2<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut out = self;
        out.value += rhs.value;
        for k in 0..4 {
            out.grad[k] += rhs.grad[k];
        }
        for k in 0..10 {
            out.hess[k] += rhs.hess[k];
        }
        out
    }
}

impl<T: Scalar> Sub for Taylor2<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Scalar> Neg for Taylor2<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Taylor2 {
            value: -self.value,
            grad: self.grad.map(|g| -g),
            hess: self.hess.map(|h| -h),
        }
    }
}

impl<T: Scalar> Mul for Taylor2<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let (a, b) = (self, rhs);
        let mut out = Self::constant(a.value * b.value);
        for k in 0..4 {
            out.grad[k] = a.value * b.grad[k] + b.value * a.grad[k];
        }
        for i in 0..4 {
            for j in i..4 {
                out.hess[tri(i, j)] = a.value * b.hess(i, j)
                    + b.value * a.hess(i, j)
                    + a.grad[i] * b.grad[j]
                    + a.grad[j] * b.grad[i];
            }
        }
        out
    }
}

impl<T: Scalar> Div for Taylor2<T> {
    type Output = Self;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: Self) -> Self {
        self * rhs.recip()
    }
}

impl<T: Scalar> Mul<f64> for Taylor2<T> {
    type Output = Self;
    fn mul(self, rhs: f64) -> Self {
        self.scale(T::from_f64(rhs))
    }
}

impl<T: Scalar> Add<f64> for Taylor2<T> {
    type Output = Self;
    fn add(self, rhs: f64) -> Self {
        let mut out = self;
        out.value += T::from_f64(rhs);
        out
    }
}

/// Seeds the four fiber coordinates as independent Taylor variables.
pub fn taylor2_seed(y: [f64; 4]) -> Result<[Taylor2; 4]> {
    if let Some(i) = y.iter().position(|&v| !(v > 0.0)) {
        return Err(JetError::Domain(format!(
            "y[{}] = {} is not in the positive cone",
            i + 1,
            y[i]
        )));
    }
    Ok(std::array::from_fn(|i| Taylor2::variable(y[i], i)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn packed_index_is_bijective() {
        let mut seen = [false; 10];
        for i in 0..4 {
            for j in i..4 {
                let k = tri(i, j);
                assert!(!seen[k]);
                seen[k] = true;
                assert_eq!(tri(j, i), k);
            }
        }
        assert!(seen.iter().all(|&s| s));
    }

    #[test]
    fn seed_is_coordinate_function() {
        let s = taylor2_seed([1.0, 2.0, 3.0, 4.0]).unwrap();
        assert_eq!(s[0].value, 1.0);
        assert_eq!(s[0].grad, [1.0, 0.0, 0.0, 0.0]);
        assert_eq!(s[0].hessian(), [[0.0; 4]; 4]);
        assert_eq!(s[3].grad, [0.0, 0.0, 0.0, 1.0]);
    }

    #[test]
    fn seed_rejects_non_positive() {
        assert!(matches!(
            taylor2_seed([1.0, 0.0, 3.0, 4.0]),
            Err(JetError::Domain(_))
        ));
        assert!(taylor2_seed([1.0, 2.0, -3.0, 4.0]).is_err());
        assert!(taylor2_seed([1.0, 2.0, 3.0, f64::NAN]).is_err());
    }

    #[test]
    fn product_of_seeds_at_ones() {
        let [a, b, c, d] = taylor2_seed([1.0; 4]).unwrap();
        let p = a * b * c * d;
        assert_eq!(p.value, 1.0);
        assert_eq!(p.grad, [1.0; 4]);
        // off-diagonal second derivatives of y1y2y3y4 at ones are 1
        assert_eq!(p.hess(0, 1), 1.0);
        assert_eq!(p.hess(2, 2), 0.0);
    }

    #[test]
    fn product_of_seeds_grad_is_g_over_y() {
        let [a, b, c, d] = taylor2_seed([1.0, 2.0, 3.0, 4.0]).unwrap();
        let p = a * b * c * d;
        assert_eq!(p.value, 24.0);
        assert_eq!(p.grad, [24.0, 12.0, 8.0, 6.0]);
        assert_eq!(p.hess(0, 1), 12.0);
        assert_eq!(p.hess(2, 3), 2.0);
    }

    #[test]
    fn quotient_and_recip_are_consistent() {
        let [a, b, _, _] = taylor2_seed([2.0, 3.0, 1.0, 1.0]).unwrap();
        let q = a / b;
        assert!((q.value - 2.0 / 3.0).abs() < 1e-15);
        assert!((q.grad[1] + 2.0 / 9.0).abs() < 1e-15);
        // ∂²(a/b)/∂b² = 2a/b³
        assert!((q.hess(1, 1) - 4.0 / 27.0).abs() < 1e-15);
        // ∂²(a/b)/∂a∂b = -1/b²
        assert!((q.hess(0, 1) + 1.0 / 9.0).abs() < 1e-15);
    }
}
