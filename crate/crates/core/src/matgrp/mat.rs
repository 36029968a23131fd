//! Small dense row-major `f64` matrices with the handful of operations the
//! group catalog needs.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Mat {
    n: usize,
    a: Vec<f64>,
}

impl Mat {
    pub fn zeros(n: usize) -> Self {
        Mat { n, a: vec![0.0; n * n] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.a[i * n + i] = 1.0;
        }
        m
    }

    pub fn from_row_major(n: usize, a: Vec<f64>) -> Result<Self> {
        if a.len() != n * n {
            return Err(Error::Dimension(format!("{} entries for a {n}x{n} matrix", a.len())));
        }
        Ok(Mat { n, a })
    }

    pub fn diag(d: &[f64]) -> Self {
        let mut m = Mat::zeros(d.len());
        for (i, x) in d.iter().enumerate() {
            m.a[i * d.len() + i] = *x;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.a
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.a
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: f64) {
        self.a[i * self.n + j] = x;
    }

    pub fn mul(&self, b: &Mat) -> Mat {
        let n = self.n;
        let mut c = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let x = self.a[i * n + k];
                if x == 0.0 {
                    continue;
                }
                for j in 0..n {
                    c.a[i * n + j] += x * b.a[k * n + j];
                }
            }
        }
        c
    }

    pub fn add(&self, b: &Mat) -> Mat {
        Mat { n: self.n, a: self.a.iter().zip(&b.a).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, b: &Mat) -> Mat {
        Mat { n: self.n, a: self.a.iter().zip(&b.a).map(|(x, y)| x - y).collect() }
    }

    pub fn scale(&self, s: f64) -> Mat {
        Mat { n: self.n, a: self.a.iter().map(|x| x * s).collect() }
    }

    pub fn transpose(&self) -> Mat {
        let n = self.n;
        let mut t = Mat::zeros(n);
        for i in 0..n {
            for j in 0..n {
                t.a[j * n + i] = self.a[i * n + j];
            }
        }
        t
    }

    /// Maximum absolute row sum.
    pub fn norm_inf(&self) -> f64 {
        (0..self.n)
            .map(|i| self.a[i * self.n..(i + 1) * self.n].iter().map(|x| x.abs()).sum::<f64>())
            .fold(0.0, f64::max)
    }

    /// Largest entry in absolute value.
    pub fn max_abs(&self) -> f64 {
        self.a.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    /// Gaussian elimination with partial pivoting; returns `(lu, perm, sign)`.
    fn lu(&self) -> Result<(Mat, Vec<usize>, f64)> {
        let n = self.n;
        let mut m = self.clone();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut sign = 1.0;
        let scale = self.max_abs().max(f64::MIN_POSITIVE);
        for c in 0..n {
            let p = (c..n).max_by(|&i, &j| m.get(i, c).abs().total_cmp(&m.get(j, c).abs())).expect("non-empty range");
            if m.get(p, c).abs() <= 1e-14 * scale {
                return Err(Error::Singular);
            }
            if p != c {
                for j in 0..n {
                    m.a.swap(p * n + j, c * n + j);
                }
                perm.swap(p, c);
                sign = -sign;
            }
            for r in c + 1..n {
                let f = m.get(r, c) / m.get(c, c);
                m.set(r, c, f);
                for j in c + 1..n {
                    let v = m.get(r, j) - f * m.get(c, j);
                    m.set(r, j, v);
                }
            }
        }
        Ok((m, perm, sign))
    }

    pub fn det(&self) -> f64 {
        match self.lu() {
            Ok((m, _, sign)) => (0..self.n).map(|i| m.get(i, i)).product::<f64>() * sign,
            Err(_) => 0.0,
        }
    }

    pub fn inverse(&self) -> Result<Mat> {
        let n = self.n;
        let (lu, perm, _) = self.lu()?;
        let mut inv = Mat::zeros(n);
        for col in 0..n {
            let mut x: Vec<f64> = (0..n).map(|i| if perm[i] == col { 1.0 } else { 0.0 }).collect();
            for i in 0..n {
                for k in 0..i {
                    x[i] -= lu.get(i, k) * x[k];
                }
            }
            for i in (0..n).rev() {
                for k in i + 1..n {
                    x[i] -= lu.get(i, k) * x[k];
                }
                x[i] /= lu.get(i, i);
            }
            for (i, xi) in x.iter().enumerate() {
                inv.set(i, col, *xi);
            }
        }
        Ok(inv)
    }
}

/// Matrix exponential by scaling and squaring of a Taylor polynomial.
pub fn expm(x: &Mat) -> Mat {
    let norm = x.norm_inf();
    let mut s = 0u32;
    if norm > 0.5 {
        s = (norm / 0.5).log2().ceil() as u32;
    }
    let y = x.scale(0.5f64.powi(s as i32));
    let mut result = Mat::identity(x.n());
    let mut term = Mat::identity(x.n());
    for k in 1..=30 {
        term = term.mul(&y).scale(1.0 / k as f64);
        result = result.add(&term);
        if term.max_abs() < 1e-18 * result.max_abs() {
            break;
        }
    }
    for _ in 0..s {
        result = result.mul(&result);
    }
    result
}

/// Principal square root by the Denman–Beavers iteration.
pub fn sqrtm(a: &Mat) -> Result<Mat> {
    let mut y = a.clone();
    let mut z = Mat::identity(a.n());
    for _ in 0..100 {
        let yi = y.inverse().map_err(|_| Error::LogOutOfRange("square root iteration hit a singular matrix".into()))?;
        let zi = z.inverse().map_err(|_| Error::LogOutOfRange("square root iteration hit a singular matrix".into()))?;
        let y_next = y.add(&zi).scale(0.5);
        let z_next = z.add(&yi).scale(0.5);
        let delta = y_next.sub(&y).max_abs();
        y = y_next;
        z = z_next;
        if delta <= 1e-15 * y.max_abs().max(1.0) {
            return Ok(y);
        }
    }
    Err(Error::LogOutOfRange("square root iteration did not converge".into()))
}

/// Principal logarithm by inverse scaling and squaring: repeated square roots
/// until `‖A − I‖ ≤ 1/4`, then the Mercator series.
pub fn logm(a: &Mat) -> Result<Mat> {
    let n = a.n();
    let id = Mat::identity(n);
    let mut b = a.clone();
    let mut k = 0;
    while b.sub(&id).norm_inf() > 0.25 {
        if k >= 40 {
            return Err(Error::LogOutOfRange("matrix too far from the identity".into()));
        }
        b = sqrtm(&b)?;
        k += 1;
    }
    let x = b.sub(&id);
    let mut sum = Mat::zeros(n);
    let mut power = id;
    for m in 1..=80 {
        power = power.mul(&x);
        let term = power.scale(if m % 2 == 1 { 1.0 } else { -1.0 } / m as f64);
        sum = sum.add(&term);
        if term.max_abs() < 1e-18 {
            break;
        }
    }
    if sum.as_slice().iter().any(|v| !v.is_finite()) {
        return Err(Error::LogOutOfRange("logarithm series diverged".into()));
    }
    Ok(sum.scale(2f64.powi(k)))
}

/// Modified Gram–Schmidt with one reorthogonalization pass, normalized so
/// that `R` has a positive diagonal.  Returns `(Q, R)` with `A = QR`.
pub fn qr_mgs(a: &Mat) -> Result<(Mat, Mat)> {
    let n = a.n();
    let mut q = Mat::zeros(n);
    let mut r = Mat::zeros(n);
    let scale = a.max_abs().max(f64::MIN_POSITIVE);
    for j in 0..n {
        let mut v: Vec<f64> = (0..n).map(|i| a.get(i, j)).collect();
        for _pass in 0..2 {
            for k in 0..j {
                let c: f64 = (0..n).map(|i| q.get(i, k) * v[i]).sum();
                for (i, vi) in v.iter_mut().enumerate() {
                    *vi -= c * q.get(i, k);
                }
                r.set(k, j, r.get(k, j) + c);
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm <= 1e-14 * scale {
            return Err(Error::Singular);
        }
        r.set(j, j, norm);
        for (i, vi) in v.iter().enumerate() {
            q.set(i, j, vi / norm);
        }
    }
    Ok((q, r))
}

/// `g = k a n` with `k` orthogonal, `a` positive diagonal and `n` unit upper
/// triangular.
#[derive(Clone, Debug, PartialEq)]
pub struct Iwasawa {
    pub k: Mat,
    pub a: Mat,
    pub n: Mat,
}

pub fn iwasawa(g: &Mat) -> Result<Iwasawa> {
    let (k, r) = qr_mgs(g)?;
    let d: Vec<f64> = (0..g.n()).map(|i| r.get(i, i)).collect();
    let mut n = r;
    for (i, di) in d.iter().enumerate() {
        for j in 0..g.n() {
            let v = if j == i { 1.0 } else { n.get(i, j) / di };
            n.set(i, j, v);
        }
    }
    for i in 0..g.n() {
        for j in 0..i {
            n.set(i, j, 0.0);
        }
    }
    Ok(Iwasawa { k, a: Mat::diag(&d), n })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(n: usize, v: &[f64]) -> Mat {
        Mat::from_row_major(n, v.to_vec()).unwrap()
    }

    #[test]
    fn exp_of_diagonal_and_nilpotent() {
        let e = expm(&Mat::diag(&[1.0, -1.0]));
        assert!((e.get(0, 0) - 1f64.exp()).abs() < 1e-14);
        assert!((e.get(1, 1) - (-1f64).exp()).abs() < 1e-15);
        let e = expm(&m(2, &[0.0, 3.0, 0.0, 0.0]));
        assert_eq!(e, m(2, &[1.0, 3.0, 0.0, 1.0]));
    }

    #[test]
    fn log_inverts_exp() {
        let x = m(3, &[0.3, -0.2, 0.1, 0.4, -0.1, 0.2, -0.3, 0.25, -0.2]);
        let back = logm(&expm(&x)).unwrap();
        assert!(back.sub(&x).max_abs() < 1e-13);
        let big = m(2, &[0.0, 2.5, -2.5, 0.0]);
        let back = logm(&expm(&big)).unwrap();
        assert!(back.sub(&big).max_abs() < 1e-12);
    }

    #[test]
    fn log_rejects_negative_eigenvalues() {
        assert!(logm(&Mat::diag(&[-1.0, -1.0])).is_err());
    }

    #[test]
    fn inverse_and_det() {
        let a = m(2, &[2.0, 1.0, 1.0, 1.0]);
        assert!((a.det() - 1.0).abs() < 1e-15);
        let p = a.mul(&a.inverse().unwrap());
        assert!(p.sub(&Mat::identity(2)).max_abs() < 1e-15);
        assert!(m(2, &[1.0, 2.0, 2.0, 4.0]).inverse().is_err());
    }

    #[test]
    fn iwasawa_examples() {
        let g = Mat::diag(&[2.0, 0.5]);
        let f = iwasawa(&g).unwrap();
        assert_eq!((f.k, f.a, f.n), (Mat::identity(2), g, Mat::identity(2)));
        let u = m(2, &[1.0, 1.0, 0.0, 1.0]);
        let f = iwasawa(&u).unwrap();
        assert_eq!((f.k, f.a, f.n), (Mat::identity(2), Mat::identity(2), u));
    }

    #[test]
    fn qr_reconstructs_rotation_times_shear() {
        let c = 0.6f64;
        let s = 0.8f64;
        let g = m(2, &[c, -s, s, c]).mul(&m(2, &[3.0, 0.0, 0.0, 1.0 / 3.0])).mul(&m(2, &[1.0, -2.0, 0.0, 1.0]));
        let f = iwasawa(&g).unwrap();
        assert!(f.k.mul(&f.a).mul(&f.n).sub(&g).max_abs() < 1e-14);
        assert!((f.k.get(0, 0) - c).abs() < 1e-15 && (f.k.get(1, 0) - s).abs() < 1e-15);
        assert!((f.a.get(0, 0) - 3.0).abs() < 1e-14);
        assert!((f.n.get(0, 1) + 2.0).abs() < 1e-14);
    }
}
