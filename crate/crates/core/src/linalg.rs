//! Fixed 4-dimensional tensor storage and the few dense routines we need.

use crate::jetcore::Scalar;

pub type Vec4<T = f64> = [T; 4];
pub type Mat4<T = f64> = [[T; 4]; 4];
pub type Rank3<T = f64> = [[[T; 4]; 4]; 4];
pub type Rank4<T = f64> = [[[[T; 4]; 4]; 4]; 4];

pub fn zeros<T: Scalar>() -> Mat4<T> {
    [[T::zero(); 4]; 4]
}

pub fn zeros3<T: Scalar>() -> Rank3<T> {
    [[[T::zero(); 4]; 4]; 4]
}

pub fn zeros4<T: Scalar>() -> Rank4<T> {
    [[[[T::zero(); 4]; 4]; 4]; 4]
}

pub fn identity<T: Scalar>() -> Mat4<T> {
    let mut m = zeros();
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = T::one();
    }
    m
}

#[inline]
pub fn delta(i: usize, j: usize) -> f64 {
    if i == j {
        1.0
    } else {
        0.0
    }
}

pub fn matmul<T: Scalar>(a: &Mat4<T>, b: &Mat4<T>) -> Mat4<T> {
    let mut out = zeros();
    for i in 0..4 {
        for j in 0..4 {
            let mut acc = T::zero();
            for k in 0..4 {
                acc += a[i][k] * b[k][j];
            }
            out[i][j] = acc;
        }
    }
    out
}

pub fn map_mat<T: Copy, U>(m: &Mat4<T>, f: impl Fn(T) -> U) -> Mat4<U> {
    std::array::from_fn(|i| std::array::from_fn(|j| f(m[i][j])))
}

pub fn re_mat<T: Scalar>(m: &Mat4<T>) -> Mat4 {
    map_mat(m, |v| v.re())
}

/// Inverse by Gauss-Jordan elimination with partial pivoting on the real
/// part. Returns `None` when a pivot vanishes.
pub fn invert4<T: Scalar>(m: &Mat4<T>) -> Option<Mat4<T>> {
    let mut a = *m;
    let mut inv = identity::<T>();
    for col in 0..4 {
        let pivot = (col..4).max_by(|&r, &s| {
            a[r][col]
                .re()
                .abs()
                .partial_cmp(&a[s][col].re().abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if !(a[pivot][col].re().abs() > 0.0) {
            return None;
        }
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for k in 0..4 {
            a[col][k] = a[col][k] * p;
            inv[col][k] = inv[col][k] * p;
        }
        for row in 0..4 {
            if row == col {
                continue;
            }
            let f = a[row][col];
            if f.re() == 0.0 && f == T::zero() {
                continue;
            }
            for k in 0..4 {
                let (ak, ik) = (a[col][k], inv[col][k]);
                a[row][k] -= f * ak;
                inv[row][k] -= f * ik;
            }
        }
    }
    Some(inv)
}

/// Determinant by LU with partial pivoting.
pub fn det4(m: &Mat4) -> f64 {
    let mut a = *m;
    let mut det = 1.0;
    for col in 0..4 {
        let pivot = (col..4)
            .max_by(|&r, &s| a[r][col].abs().total_cmp(&a[s][col].abs()))
            .unwrap_or(col);
        if a[pivot][col] == 0.0 {
            return 0.0;
        }
        if pivot != col {
            a.swap(col, pivot);
            det = -det;
        }
        det *= a[col][col];
        for row in col + 1..4 {
            let f = a[row][col] / a[col][col];
            for k in col..4 {
                a[row][k] -= f * a[col][k];
            }
        }
    }
    det
}

pub fn flatten2(m: &Mat4) -> Vec<f64> {
    m.iter().flatten().copied().collect()
}

pub fn flatten3(m: &Rank3) -> Vec<f64> {
    m.iter().flatten().flatten().copied().collect()
}

pub fn flatten4(m: &Rank4) -> Vec<f64> {
    m.iter().flatten().flatten().flatten().copied().collect()
}

pub fn max_abs(v: &[f64]) -> f64 {
    v.iter().fold(0.0f64, |m, x| m.max(x.abs()))
}
