//! Linear harmonic maps of the unit ball in `R^n`, singular values of the
//! differential, and the Poisson kernel / Green function of the ball.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Dense `n × n` matrix stored row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Matrix<T> {
    n: usize,
    data: Vec<T>,
}

impl<T: Real> Matrix<T> {
    pub fn from_row_major(n: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != n * n {
            return Err(Error::Dimension {
                expected: n * n,
                got: data.len(),
            });
        }
        Ok(Self { n, data })
    }

    pub fn identity(n: usize) -> Self {
        Self::diagonal(&vec![T::one(); n])
    }

    pub fn diagonal(d: &[T]) -> Self {
        let n = d.len();
        let mut data = vec![T::zero(); n * n];
        for (i, &v) in d.iter().enumerate() {
            data[i * n + i] = v;
        }
        Self { n, data }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> T {
        self.data[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn as_row_major(&self) -> &[T] {
        &self.data
    }

    pub fn apply(&self, x: &[T]) -> Vec<T> {
        (0..self.n).map(|i| dot(self.row(i), x)).collect()
    }

    pub fn matmul(&self, rhs: &Self) -> Self {
        let n = self.n;
        let mut data = vec![T::zero(); n * n];
        for i in 0..n {
            for j in 0..n {
                data[i * n + j] = (0..n).map(|k| self.get(i, k) * rhs.get(k, j)).sum();
            }
        }
        Self { n, data }
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let data = (0..n * n).map(|idx| self.get(idx % n, idx / n)).collect();
        Self { n, data }
    }

    /// Singular values in decreasing order, by one-sided (Hestenes) Jacobi
    /// rotations on the columns.
    #[allow(clippy::needless_range_loop)] // rotates two columns in place
    pub fn singular_values(&self) -> Vec<T> {
        let n = self.n;
        // columns of A
        let mut cols: Vec<Vec<T>> = (0..n).map(|j| (0..n).map(|i| self.get(i, j)).collect()).collect();
        let tol = T::epsilon();
        for _sweep in 0..60 {
            let mut rotated = false;
            for p in 0..n {
                for q in p + 1..n {
                    let alpha = dot(&cols[p], &cols[p]);
                    let beta = dot(&cols[q], &cols[q]);
                    let gamma = dot(&cols[p], &cols[q]);
                    if gamma.abs() <= tol * (alpha * beta).sqrt() || gamma == T::zero() {
                        continue;
                    }
                    rotated = true;
                    let zeta = (beta - alpha) / (T::lit(2.0) * gamma);
                    let t = zeta.signum() / (zeta.abs() + (T::one() + zeta * zeta).sqrt());
                    let c = (T::one() + t * t).sqrt().recip();
                    let s = c * t;
                    for i in 0..n {
                        let (a, b) = (cols[p][i], cols[q][i]);
                        cols[p][i] = c * a - s * b;
                        cols[q][i] = s * a + c * b;
                    }
                }
            }
            if !rotated {
                break;
            }
        }
        let mut sv: Vec<T> = cols.iter().map(|c| dot(c, c).sqrt()).collect();
        sv.sort_by(|a, b| b.partial_cmp(a).unwrap_or(std::cmp::Ordering::Equal));
        sv
    }

    /// `sqrt(trace AᵀA)`.
    pub fn frobenius(&self) -> T {
        self.data.iter().map(|&v| v * v).sum::<T>().sqrt()
    }
}

pub(crate) fn dot<T: Real>(a: &[T], b: &[T]) -> T {
    a.iter().zip(b).map(|(&x, &y)| x * y).sum()
}

fn norm<T: Real>(a: &[T]) -> T {
    dot(a, a).sqrt()
}

/// Operator norm, minimal stretch and Hilbert (Frobenius) norm of a differential.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SingularNorms<T> {
    /// `|Df|`, largest singular value.
    pub op: T,
    /// `ℓ(Df)`, smallest singular value.
    pub ell: T,
    /// `‖Df‖ = sqrt(Σ λ_k)`.
    pub hilbert: T,
}

pub fn singular_norms<T: Real>(a: &Matrix<T>) -> SingularNorms<T> {
    let sv = a.singular_values();
    SingularNorms {
        op: sv[0],
        ell: sv[sv.len() - 1],
        hilbert: a.frobenius(),
    }
}

/// Least `K` with `|Df| ≤ K·ℓ(Df)` for `x ↦ Ax + b`.
pub fn qr_constant_linear<T: Real>(a: &Matrix<T>) -> Result<T> {
    let s = singular_norms(a);
    if s.ell <= T::lit(1e-14) * s.op || s.op == T::zero() {
        return Err(Error::SingularMatrix {
            op: s.op.as_f64(),
            ell: s.ell.as_f64(),
        });
    }
    Ok(s.op / s.ell)
}

/// Harmonic map `x ↦ Ax + b` of the unit ball.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearBallMap<T> {
    pub a: Matrix<T>,
    pub b: Vec<T>,
}

impl<T: Real> LinearBallMap<T> {
    pub fn new(a: Matrix<T>, b: Vec<T>) -> Result<Self> {
        if a.dim() < 2 {
            return Err(Error::Domain {
                name: "n",
                value: a.dim() as f64,
                domain: "n >= 2",
            });
        }
        if b.len() != a.dim() {
            return Err(Error::Dimension {
                expected: a.dim(),
                got: b.len(),
            });
        }
        Ok(Self { a, b })
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    pub fn eval(&self, x: &[T]) -> Vec<T> {
        let mut y = self.a.apply(x);
        for (yi, &bi) in y.iter_mut().zip(&self.b) {
            *yi += bi;
        }
        y
    }

    /// First coordinate `f_1(x) = ⟨A_1, x⟩ + b_1`.
    pub fn first_component(&self, x: &[T]) -> T {
        dot(self.a.row(0), x) + self.b[0]
    }

    pub fn center_value(&self) -> &[T] {
        &self.b
    }

    pub fn norms(&self) -> SingularNorms<T> {
        singular_norms(&self.a)
    }

    pub fn qr_constant(&self) -> Result<T> {
        qr_constant_linear(&self.a)
    }
}

/// Surface area `ω_{n−1}` of the unit sphere in `R^n` (`2π` for n = 2, `4π` for n = 3).
pub fn unit_sphere_area<T: Real>(n: usize) -> T {
    assert!(n >= 1, "dimension must be positive");
    // S(1) = 2, S(2) = 2π, S(n+2) = 2π·S(n)/n
    let (mut area, mut k) = if n % 2 == 1 { (T::lit(2.0), 1) } else { (T::TAU(), 2) };
    while k < n {
        area = area * T::TAU() / T::from_count(k);
        k += 2;
    }
    area
}

/// `c_n = 1/((n−2)·ω_{n−1})` for `n ≥ 3`.
pub fn green_constant<T: Real>(n: usize) -> T {
    assert!(n >= 3, "c_n is defined for n >= 3");
    (T::from_count(n - 2) * unit_sphere_area::<T>(n)).recip()
}

/// Poisson kernel `(1 − |x|²)/|x − η|^n`, normalized so its mean over the sphere is 1.
pub fn poisson_kernel<T: Real>(x: &[T], eta: &[T]) -> Result<T> {
    if x.len() != eta.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: eta.len(),
        });
    }
    let n = x.len();
    let diff: Vec<T> = x.iter().zip(eta).map(|(&a, &b)| a - b).collect();
    Ok((T::one() - dot(x, x)) / norm(&diff).powi(n as i32))
}

/// Green function of the unit ball, positive inside and zero on the sphere.
///
/// `n = 2`: `(1/2π)·log(|1 − x·conj(y)| / |x − y|)`;
/// `n ≥ 3`: `c_n·(|x − y|^{2−n} − (1 + |x|²|y|² − 2⟨x,y⟩)^{(2−n)/2})`.
pub fn green_function<T: Real>(x: &[T], y: &[T]) -> Result<T> {
    if x.len() != y.len() {
        return Err(Error::Dimension {
            expected: x.len(),
            got: y.len(),
        });
    }
    let n = x.len();
    if n < 2 {
        return Err(Error::Dimension { expected: 2, got: n });
    }
    let diff: Vec<T> = x.iter().zip(y).map(|(&a, &b)| a - b).collect();
    let dist2 = dot(&diff, &diff);
    if dist2 == T::zero() {
        return Err(Error::CoincidentPoints);
    }
    // |1 − x·conj(y)|² in the plane, the same expression for every n
    let image2 = T::one() + dot(x, x) * dot(y, y) - T::lit(2.0) * dot(x, y);
    if n == 2 {
        Ok((image2 / dist2).ln() / (T::lit(2.0) * T::TAU()))
    } else {
        let e = T::lit(2.0 - n as f64) / T::lit(2.0);
        Ok(green_constant::<T>(n) * (dist2.powf(e) - image2.powf(e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::f64::consts::PI;

    /// Symmetric eigenvalues of AᵀA by classical two-sided Jacobi rotations.
    #[allow(clippy::needless_range_loop)]
    fn jacobi_eigen_oracle(a: &Matrix<f64>) -> Vec<f64> {
        let n = a.dim();
        let ata = a.transpose().matmul(a);
        let mut m: Vec<Vec<f64>> = (0..n).map(|i| (0..n).map(|j| ata.get(i, j)).collect()).collect();
        for _ in 0..100 {
            let off: f64 = (0..n)
                .flat_map(|i| (0..n).map(move |j| (i, j)))
                .filter(|(i, j)| i != j)
                .map(|(i, j)| m[i][j] * m[i][j])
                .sum();
            if off < 1e-30 {
                break;
            }
            for p in 0..n {
                for q in p + 1..n {
                    if m[p][q].abs() < 1e-300 {
                        continue;
                    }
                    let theta = (m[q][q] - m[p][p]) / (2.0 * m[p][q]);
                    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                    let t = if theta == 0.0 { 1.0 } else { t };
                    let c = 1.0 / (t * t + 1.0).sqrt();
                    let s = t * c;
                    for k in 0..n {
                        let (mkp, mkq) = (m[k][p], m[k][q]);
                        m[k][p] = c * mkp - s * mkq;
                        m[k][q] = s * mkp + c * mkq;
                    }
                    for k in 0..n {
                        let (mpk, mqk) = (m[p][k], m[q][k]);
                        m[p][k] = c * mpk - s * mqk;
                        m[q][k] = s * mpk + c * mqk;
                    }
                }
            }
        }
        let mut ev: Vec<f64> = (0..n).map(|i| m[i][i].max(0.0).sqrt()).collect();
        ev.sort_by(|a, b| b.partial_cmp(a).unwrap());
        ev
    }

    #[test]
    fn singular_norm_examples() {
        let s = singular_norms(&Matrix::<f64>::identity(3));
        assert_eq!((s.op, s.ell), (1.0, 1.0));
        assert!((s.hilbert - 3f64.sqrt()).abs() < 1e-15);
        let s = singular_norms(&Matrix::diagonal(&[2.0, 1.0]));
        assert_eq!((s.op, s.ell), (2.0, 1.0));
        assert!((s.hilbert - 5f64.sqrt()).abs() < 1e-15);
        let s = singular_norms(&Matrix::diagonal(&[1.0, 1.0, 3.0]));
        assert_eq!((s.op, s.ell), (3.0, 1.0));
        assert!((s.hilbert - 11f64.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn qr_constant_examples() {
        assert_eq!(qr_constant_linear(&Matrix::<f64>::identity(3)).unwrap(), 1.0);
        assert_eq!(qr_constant_linear(&Matrix::diagonal(&[1.0, 1.0, 2.0])).unwrap(), 2.0);
        let z = Matrix::<f64>::from_row_major(3, vec![0.0; 9]).unwrap();
        assert!(matches!(qr_constant_linear(&z), Err(Error::SingularMatrix { .. })));
    }

    #[test]
    fn singular_values_against_nalgebra() {
        let data = vec![0.3, -1.2, 0.5, 2.0, 0.1, -0.7, 0.4, 0.9, 1.5];
        let a = Matrix::from_row_major(3, data.clone()).unwrap();
        let na = nalgebra::DMatrix::from_row_slice(3, 3, &data);
        let mut expect: Vec<f64> = na.singular_values().iter().copied().collect();
        expect.sort_by(|a, b| b.partial_cmp(a).unwrap());
        for (x, y) in a.singular_values().iter().zip(&expect) {
            assert!((x - y).abs() < 1e-13);
        }
    }

    #[test]
    fn sphere_areas() {
        assert!((unit_sphere_area::<f64>(2) - 2.0 * PI).abs() < 1e-15);
        assert!((unit_sphere_area::<f64>(3) - 4.0 * PI).abs() < 1e-14);
        assert!((unit_sphere_area::<f64>(4) - 2.0 * PI * PI).abs() < 1e-13);
        assert!((unit_sphere_area::<f64>(5) - 8.0 * PI * PI / 3.0).abs() < 1e-13);
        assert!((green_constant::<f64>(3) - 1.0 / (4.0 * PI)).abs() < 1e-16);
    }

    #[test]
    fn poisson_examples() {
        for n in 2..6 {
            let x = vec![0.0; n];
            let mut eta = vec![0.0; n];
            eta[n - 1] = 1.0;
            assert_eq!(poisson_kernel(&x, &eta).unwrap(), 1.0);
        }
        let p: f64 = poisson_kernel(&[0.5, 0.0], &[1.0, 0.0]).unwrap();
        assert!((p - 3.0).abs() < 1e-15);
    }

    #[test]
    fn green_examples() {
        // boundary vanishing
        let x = [0.3, -0.2];
        let y = [0.6f64.cos(), 0.6f64.sin()];
        assert!(green_function(&x, &y).unwrap().abs() < 1e-15);
        let x3 = [0.1, 0.4, -0.3];
        let y3 = [0.0, 0.6, 0.8];
        assert!(green_function::<f64>(&x3, &y3).unwrap().abs() < 1e-14);
        let g = green_function(&[0.0, 0.0, 0.0], &[0.5, 0.0, 0.0]).unwrap();
        assert!((g - 1.0 / (4.0 * PI)).abs() < 1e-15);
        assert_eq!(green_function(&[0.1, 0.1], &[0.1, 0.1]), Err(Error::CoincidentPoints));
    }

    fn point_in_ball(n: usize) -> impl Strategy<Value = Vec<f64>> {
        prop::collection::vec(-1.0..1.0f64, n).prop_map(|v| {
            let r = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if r >= 0.95 {
                v.iter().map(|x| x * 0.95 / r).collect()
            } else {
                v
            }
        })
    }

    fn matrix(n: usize) -> impl Strategy<Value = Matrix<f64>> {
        prop::collection::vec(-2.0..2.0f64, n * n).prop_map(move |d| Matrix::from_row_major(n, d).unwrap())
    }

    proptest! {
        #[test]
        fn green_symmetric_and_positive_2d(x in point_in_ball(2), y in point_in_ball(2)) {
            let d: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum();
            prop_assume!(d > 1e-6);
            let gxy = green_function(&x, &y).unwrap();
            let gyx = green_function(&y, &x).unwrap();
            prop_assert!((gxy - gyx).abs() <= 1e-13 * (1.0 + gxy.abs()));
            prop_assert!(gxy > 0.0);
        }

        #[test]
        fn green_symmetric_and_positive_3d(x in point_in_ball(3), y in point_in_ball(3)) {
            let d: f64 = x.iter().zip(&y).map(|(a, b)| (a - b).powi(2)).sum();
            prop_assume!(d > 1e-6);
            let gxy = green_function(&x, &y).unwrap();
            let gyx = green_function(&y, &x).unwrap();
            prop_assert!((gxy - gyx).abs() <= 1e-13 * (1.0 + gxy.abs()));
            prop_assert!(gxy > 0.0);
        }

        #[test]
        fn singular_values_agree_with_jacobi_oracle(a in matrix(3)) {
            let sv = a.singular_values();
            // the oracle squares the matrix, so nearly singular inputs lose digits
            prop_assume!(sv[2] > 1e-2);
            let oracle = jacobi_eigen_oracle(&a);
            for (x, y) in sv.iter().zip(&oracle) {
                prop_assert!((x - y).abs() <= 1e-11 * (1.0 + sv[0]));
            }
        }

        #[test]
        fn qr_constant_orthogonally_invariant(a in matrix(3), angle in 0.0..std::f64::consts::TAU, angle2 in 0.0..std::f64::consts::TAU) {
            prop_assume!(singular_norms(&a).ell > 1e-3);
            let (c, s) = (angle.cos(), angle.sin());
            let r1 = Matrix::from_row_major(3, vec![c, -s, 0.0, s, c, 0.0, 0.0, 0.0, 1.0]).unwrap();
            let (c2, s2) = (angle2.cos(), angle2.sin());
            let r2 = Matrix::from_row_major(3, vec![1.0, 0.0, 0.0, 0.0, c2, -s2, 0.0, s2, c2]).unwrap();
            let q = r1.matmul(&r2);
            let k = qr_constant_linear(&a).unwrap();
            let kq = qr_constant_linear(&q.matmul(&a)).unwrap();
            prop_assert!((k - kq).abs() <= 1e-12 * k.max(1.0) * k);
        }

        #[test]
        fn operator_norm_dominates_mean_eigenvalue(a in matrix(4)) {
            let s = singular_norms(&a);
            prop_assert!(s.op * s.op >= s.hilbert * s.hilbert / 4.0 * (1.0 - 1e-12));
            // |Df| <= K ℓ(Df) with equality for the least K
            if let Ok(k) = qr_constant_linear(&a) {
                prop_assert!((s.op - k * s.ell).abs() <= 1e-12 * s.op);
            }
        }
    }
}
