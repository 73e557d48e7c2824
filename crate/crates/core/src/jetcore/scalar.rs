use std::fmt::Debug;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};

/// Field-like number type the geometry pipeline is generic over.
///
/// `f64` is the ordinary evaluation type. [`Dual4`] carries an extra exact
/// gradient with respect to the four fiber coordinates, which lets the same
/// pipeline produce one more y-derivative than [`Taylor2`](super::Taylor2)
/// alone provides.
pub trait Scalar:
    Copy
    + Debug
    + PartialEq
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
    + AddAssign
    + SubAssign
    + Mul<f64, Output = Self>
{
    fn from_f64(v: f64) -> Self;
    /// The real (value) part, used for pivoting and domain checks.
    fn re(&self) -> f64;
    fn sqrt(self) -> Self;
    fn powf(self, p: f64) -> Self;

    fn zero() -> Self {
        Self::from_f64(0.0)
    }
    fn one() -> Self {
        Self::from_f64(1.0)
    }
    fn recip(self) -> Self {
        Self::one() / self
    }
}

impl Scalar for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn re(&self) -> f64 {
        *self
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn powf(self, p: f64) -> Self {
        f64::powf(self, p)
    }
}

/// First-order dual number with a 4-component gradient.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Dual4 {
    pub re: f64,
    pub eps: [f64; 4],
}

impl Dual4 {
    pub const fn constant(re: f64) -> Self {
        Dual4 { re, eps: [0.0; 4] }
    }

    /// The i-th coordinate variable with value `re`.
    pub fn variable(re: f64, i: usize) -> Self {
        let mut eps = [0.0; 4];
        eps[i] = 1.0;
        Dual4 { re, eps }
    }

    fn chain(self, f: f64, df: f64) -> Self {
        Dual4 {
            re: f,
            eps: self.eps.map(|e| df * e),
        }
    }
}

impl Add for Dual4 {
    type Output = Dual4;
    fn add(self, rhs: Dual4) -> Dual4 {
        let mut eps = self.eps;
        for (e, r) in eps.iter_mut().zip(rhs.eps) {
            *e += r;
        }
        Dual4 {
            re: self.re + rhs.re,
            eps,
        }
    }
}

impl Sub for Dual4 {
    type Output = Dual4;
    fn sub(self, rhs: Dual4) -> Dual4 {
        let mut eps = self.eps;
        for (e, r) in eps.iter_mut().zip(rhs.eps) {
            *e -= r;
        }
        Dual4 {
            re: self.re - rhs.re,
            eps,
        }
    }
}

impl Mul for Dual4 {
    type Output = Dual4;
    fn mul(self, rhs: Dual4) -> Dual4 {
        let mut eps = [0.0; 4];
        for (k, e) in eps.iter_mut().enumerate() {
            *e = self.re * rhs.eps[k] + rhs.re * self.eps[k];
        }
        Dual4 {
            re: self.re * rhs.re,
            eps,
        }
    }
}

impl Div for Dual4 {
    type Output = Dual4;
    fn div(self, rhs: Dual4) -> Dual4 {
        let inv = 1.0 / rhs.re;
        let re = self.re * inv;
        let mut eps = [0.0; 4];
        for (k, e) in eps.iter_mut().enumerate() {
            *e = (self.eps[k] - re * rhs.eps[k]) * inv;
        }
        Dual4 { re, eps }
    }
}

impl Neg for Dual4 {
    type Output = Dual4;
    fn neg(self) -> Dual4 {
        Dual4 {
            re: -self.re,
            eps: self.eps.map(|e| -e),
        }
    }
}

impl Mul<f64> for Dual4 {
    type Output = Dual4;
    fn mul(self, rhs: f64) -> Dual4 {
        Dual4 {
            re: self.re * rhs,
            eps: self.eps.map(|e| e * rhs),
        }
    }
}

impl AddAssign for Dual4 {
    fn add_assign(&mut self, rhs: Dual4) {
        *self = *self + rhs;
    }
}

impl SubAssign for Dual4 {
    fn sub_assign(&mut self, rhs: Dual4) {
        *self = *self - rhs;
    }
}

impl Scalar for Dual4 {
    fn from_f64(v: f64) -> Self {
        Dual4::constant(v)
    }
    fn re(&self) -> f64 {
        self.re
    }
    fn sqrt(self) -> Self {
        let s = self.re.sqrt();
        self.chain(s, 0.5 / s)
    }
    fn powf(self, p: f64) -> Self {
        self.chain(self.re.powf(p), p * self.re.powf(p - 1.0))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dual_quotient_rule() {
        let x = Dual4::variable(2.0, 0);
        let y = Dual4::variable(5.0, 1);
        let q = x / y;
        assert_eq!(q.re, 0.4);
        assert!((q.eps[0] - 0.2).abs() < 1e-15);
        assert!((q.eps[1] + 2.0 / 25.0).abs() < 1e-15);
    }

    #[test]
    fn dual_sqrt_and_powf() {
        let x = Dual4::variable(4.0, 2);
        let r = x.sqrt();
        assert_eq!(r.re, 2.0);
        assert_eq!(r.eps[2], 0.25);
        let p = x.powf(-0.5);
        assert_eq!(p.re, 0.5);
        assert!((p.eps[2] + 0.0625).abs() < 1e-15);
    }
}
