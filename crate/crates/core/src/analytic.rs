//! Finite power series on the closed unit disk and the sector-map family.
//!
//! Analytic functions are carried as polynomials `a_0 + a_1 z + ... + a_d z^d`.
//! Polynomials extend smoothly to the closed disk, so boundary integrals can be
//! taken at `r = 1` directly.

use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Polynomial `Σ a_j z^j` with complex coefficients.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexSeries<T> {
    coeffs: Vec<Complex<T>>,
}

impl<T: Real> ComplexSeries<T> {
    /// Builds a series from `a_0, a_1, ...`. An empty input is the zero series `(0,)`.
    pub fn new(mut coeffs: Vec<Complex<T>>) -> Self {
        if coeffs.is_empty() {
            coeffs.push(Complex::new(T::zero(), T::zero()));
        }
        Self { coeffs }
    }

    pub fn from_real(coeffs: &[T]) -> Self {
        Self::new(coeffs.iter().map(|&c| Complex::new(c, T::zero())).collect())
    }

    pub fn zero() -> Self {
        Self::new(Vec::new())
    }

    pub fn constant(c: Complex<T>) -> Self {
        Self::new(vec![c])
    }

    /// The identity series `z`.
    pub fn identity() -> Self {
        Self::from_real(&[T::zero(), T::one()])
    }

    /// `c · z^m`.
    pub fn monomial(c: Complex<T>, m: usize) -> Self {
        let mut coeffs = vec![Complex::new(T::zero(), T::zero()); m + 1];
        coeffs[m] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Complex<T>] {
        &self.coeffs
    }

    /// Index of the last stored coefficient. Trailing zeros are kept, so this is
    /// the formal degree.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Horner evaluation of `Σ a_j z^j`.
    pub fn eval(&self, z: Complex<T>) -> Complex<T> {
        let mut acc = Complex::new(T::zero(), T::zero());
        for &a in self.coeffs.iter().rev() {
            acc = acc * z + a;
        }
        acc
    }

    /// Value and first derivative in one Horner pass.
    pub fn eval_with_derivative(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        let zero = Complex::new(T::zero(), T::zero());
        let (mut val, mut der) = (zero, zero);
        for &a in self.coeffs.iter().rev() {
            der = der * z + val;
            val = val * z + a;
        }
        (val, der)
    }

    /// Coefficient `j` of the result is `(j+1)·a_{j+1}`; a constant maps to `(0,)`.
    pub fn derivative(&self) -> Self {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(j, &a)| a * T::from_count(j))
            .collect();
        Self::new(coeffs)
    }

    /// Coefficient `j+1` of the result is `a_j/(j+1)`, coefficient 0 is exactly 0.
    pub fn antiderivative(&self) -> Self {
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Complex::new(T::zero(), T::zero()));
        coeffs.extend(self.coeffs.iter().enumerate().map(|(j, &a)| a / T::from_count(j + 1)));
        Self::new(coeffs)
    }

    pub fn scale(&self, c: Complex<T>) -> Self {
        Self::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Series of `z ↦ conj(s(conj z))`, i.e. conjugated coefficients.
    pub fn conj_coeffs(&self) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.conj()).collect())
    }

    /// Largest modulus over `n_angles` equispaced points of the circle `|z| = r`.
    pub fn max_modulus_on_circle(&self, r: T, n_angles: usize) -> T {
        let step = T::TAU() / T::from_count(n_angles);
        (0..n_angles)
            .map(|j| self.eval(Complex::from_polar(r, step * T::from_count(j))).norm())
            .fold(T::zero(), T::max)
    }
}

impl<T: Real> Add for &ComplexSeries<T> {
    type Output = ComplexSeries<T>;

    fn add(self, rhs: Self) -> ComplexSeries<T> {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = Complex::new(T::zero(), T::zero());
        let coeffs = (0..n)
            .map(|j| self.coeffs.get(j).copied().unwrap_or(zero) + rhs.coeffs.get(j).copied().unwrap_or(zero))
            .collect();
        ComplexSeries::new(coeffs)
    }
}

impl<T: Real> Neg for &ComplexSeries<T> {
    type Output = ComplexSeries<T>;

    fn neg(self) -> ComplexSeries<T> {
        ComplexSeries::new(self.coeffs.iter().map(|&a| -a).collect())
    }
}

impl<T: Real> Sub for &ComplexSeries<T> {
    type Output = ComplexSeries<T>;

    fn sub(self, rhs: Self) -> ComplexSeries<T> {
        self + &(-rhs)
    }
}

/// Cauchy product.
impl<T: Real> Mul for &ComplexSeries<T> {
    type Output = ComplexSeries<T>;

    fn mul(self, rhs: Self) -> ComplexSeries<T> {
        let zero = Complex::new(T::zero(), T::zero());
        let mut coeffs = vec![zero; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j] + a * b;
            }
        }
        ComplexSeries::new(coeffs)
    }
}

fn check_half_angle<T: Real>(beta: T) -> Result<()> {
    if beta > T::zero() && beta < T::FRAC_PI_2() {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "beta",
            value: beta.as_f64(),
            domain: "(0, pi/2)",
        })
    }
}

/// Boundary value of the sector map `((1+z)/(1−z))^{2β/π}` at `z = e^{it}`.
///
/// Uses the closed form `(i·cot(t/2))^{2β/π}`: modulus `|cot(t/2)|^{2β/π}`,
/// argument `+β` for `t > 0` and `−β` for `t < 0`.
pub fn sector_boundary_value<T: Real>(beta: T, t: T) -> Result<Complex<T>> {
    check_half_angle(beta)?;
    if t == T::zero() {
        return Err(Error::BoundarySingularity);
    }
    if t.abs() > T::PI() {
        return Err(Error::Domain {
            name: "t",
            value: t.as_f64(),
            domain: "[-pi, pi] \\ {0}",
        });
    }
    let exponent = T::lit(2.0) * beta / T::PI();
    let cot = (t / T::lit(2.0)).tan().recip();
    let modulus = cot.abs().powf(exponent);
    let arg = if t > T::zero() { beta } else { -beta };
    Ok(Complex::from_polar(modulus, arg))
}

/// Taylor coefficients of `((1+z)/(1−z))^a`, `a = 2β/π`, up to `z^degree`.
///
/// The function satisfies `(1 − z²)·g′ = 2a·g`, which gives
/// `c_{j+1} = (2a·c_j + (j−1)·c_{j−1}) / (j+1)` with `c_0 = 1`.
pub fn sector_taylor_coeffs<T: Real>(beta: T, degree: usize) -> Result<Vec<T>> {
    check_half_angle(beta)?;
    let a = T::lit(2.0) * beta / T::PI();
    let two_a = a + a;
    let mut c = Vec::with_capacity(degree + 1);
    c.push(T::one());
    if degree >= 1 {
        c.push(two_a);
    }
    for j in 1..degree {
        let next = (two_a * c[j] + T::from_count(j - 1) * c[j - 1]) / T::from_count(j + 1);
        c.push(next);
    }
    Ok(c)
}

/// Plain Taylor truncation of the sector map.
pub fn sector_series<T: Real>(beta: T, degree: usize) -> Result<ComplexSeries<T>> {
    Ok(ComplexSeries::from_real(&sector_taylor_coeffs(beta, degree)?))
}

/// Fejér (Cesàro) truncation of the sector map: coefficient `j` is damped by
/// `1 − j/(degree+1)`.
///
/// The Fejér kernel is positive, so the truncated map still takes the closed
/// disk into the closed sector `|arg w| ≤ β`, and its real part stays positive.
pub fn sector_series_fejer<T: Real>(beta: T, degree: usize) -> Result<ComplexSeries<T>> {
    let n1 = T::from_count(degree + 1);
    let coeffs: Vec<T> = sector_taylor_coeffs(beta, degree)?
        .into_iter()
        .enumerate()
        .map(|(j, c)| c * (T::one() - T::from_count(j) / n1))
        .collect();
    Ok(ComplexSeries::from_real(&coeffs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4, FRAC_PI_6, PI};

    type C = Complex<f64>;

    fn series(c: &[(f64, f64)]) -> ComplexSeries<f64> {
        ComplexSeries::new(c.iter().map(|&(re, im)| C::new(re, im)).collect())
    }

    #[test]
    fn eval_examples() {
        let id = ComplexSeries::<f64>::identity();
        assert_eq!(id.eval(C::new(0.3, 0.4)), C::new(0.3, 0.4));
        let one = ComplexSeries::from_real(&[1.0]);
        assert_eq!(one.eval(C::new(-0.7, 0.2)), C::new(1.0, 0.0));
        let sq = ComplexSeries::from_real(&[0.0, 0.0, 1.0]);
        assert_eq!(sq.eval(C::i()), C::new(-1.0, 0.0));
    }

    #[test]
    fn derivative_examples() {
        let d = ComplexSeries::from_real(&[0.0, 0.0, 1.0]).derivative();
        assert_eq!(d, ComplexSeries::from_real(&[0.0, 2.0]));
        let d = ComplexSeries::from_real(&[5.0]).derivative();
        assert_eq!(d, ComplexSeries::from_real(&[0.0]));
        assert_eq!(d.degree(), 0);
        let d = ComplexSeries::from_real(&[1.0, 1.0, 1.0]).derivative();
        assert_eq!(d, ComplexSeries::from_real(&[1.0, 2.0]));
    }

    #[test]
    fn antiderivative_examples() {
        let a = ComplexSeries::from_real(&[1.0]).antiderivative();
        assert_eq!(a, ComplexSeries::from_real(&[0.0, 1.0]));
        let a = ComplexSeries::from_real(&[0.0, 2.0]).antiderivative();
        assert_eq!(a, ComplexSeries::from_real(&[0.0, 0.0, 1.0]));
        let a = ComplexSeries::from_real(&[6.0, 0.0, 3.0]).antiderivative();
        assert_eq!(a, ComplexSeries::from_real(&[0.0, 6.0, 0.0, 1.0]));
        assert_eq!(a.coeffs()[0], C::new(0.0, 0.0));
    }

    #[test]
    fn product_and_sum() {
        let a = series(&[(1.0, 0.0), (0.0, 1.0)]);
        let b = series(&[(1.0, 0.0), (0.0, -1.0)]);
        // (1 + iz)(1 − iz) = 1 + z²
        assert_eq!(&a * &b, ComplexSeries::from_real(&[1.0, 0.0, 1.0]));
        assert_eq!(&a + &b, ComplexSeries::from_real(&[2.0, 0.0]));
        assert_eq!(&a - &a, ComplexSeries::from_real(&[0.0, 0.0]));
    }

    #[test]
    fn derivative_with_eval_matches_derivative_series() {
        let s = series(&[(0.3, -0.1), (1.0, 0.2), (-0.4, 0.5), (0.25, 0.0)]);
        let z = C::new(0.31, -0.47);
        let (v, d) = s.eval_with_derivative(z);
        assert!((v - s.eval(z)).norm() < 1e-15);
        assert!((d - s.derivative().eval(z)).norm() < 1e-15);
    }

    #[test]
    fn sector_boundary_examples() {
        let w = sector_boundary_value(FRAC_PI_4, PI / 2.0).unwrap();
        assert!((w - C::from_polar(1.0, FRAC_PI_4)).norm() < 1e-15);
        let w = sector_boundary_value(FRAC_PI_4, -PI / 2.0).unwrap();
        assert!((w - C::from_polar(1.0, -FRAC_PI_4)).norm() < 1e-15);
        let w = sector_boundary_value(FRAC_PI_3, PI / 2.0).unwrap();
        assert!((w.norm() - 1.0).abs() < 1e-15);
        assert!((w.arg() - FRAC_PI_3).abs() < 1e-15);
    }

    #[test]
    fn sector_boundary_matches_continued_power_near_circle() {
        // Oracle: principal power of (1+z)/(1−z) at z = 0.999·e^{it}.
        let beta = FRAC_PI_3;
        let a = 2.0 * beta / PI;
        for &t in &[PI / 2.0, 1.0, 2.5, -0.7, -2.9] {
            let z = C::from_polar(0.999, t);
            let near = ((C::new(1.0, 0.0) + z) / (C::new(1.0, 0.0) - z)).powf(a);
            let w = sector_boundary_value(beta, t).unwrap();
            assert!((near - w).norm() < 2e-3 * w.norm().max(1.0), "t = {t}");
            assert!((near.arg() - w.arg()).abs() < 1e-2);
            let closer = C::from_polar(1.0 - 1e-7, t);
            let closer = ((C::new(1.0, 0.0) + closer) / (C::new(1.0, 0.0) - closer)).powf(a);
            assert!((closer - w).norm() < 1e-5 * w.norm().max(1.0), "t = {t}");
        }
    }

    #[test]
    fn sector_boundary_rejects() {
        assert_eq!(sector_boundary_value(FRAC_PI_4, 0.0), Err(Error::BoundarySingularity));
        assert!(matches!(sector_boundary_value(0.0, 1.0), Err(Error::Domain { .. })));
        assert!(matches!(
            sector_boundary_value(PI / 2.0, 1.0),
            Err(Error::Domain { .. })
        ));
    }

    #[test]
    fn sector_taylor_matches_closed_form_inside() {
        let beta = FRAC_PI_6;
        let s = sector_series(beta, 200).unwrap();
        let a = 2.0 * beta / PI;
        for &z in &[C::new(0.3, 0.2), C::new(-0.5, 0.1), C::new(0.0, -0.6)] {
            let exact = ((C::new(1.0, 0.0) + z) / (C::new(1.0, 0.0) - z)).powf(a);
            assert!((s.eval(z) - exact).norm() < 1e-12);
        }
    }

    #[test]
    fn fejer_truncation_stays_in_sector() {
        let beta = FRAC_PI_6;
        let s = sector_series_fejer(beta, 24).unwrap();
        for i in 0..=20 {
            let r = i as f64 / 20.0;
            for j in 0..512 {
                let w = s.eval(C::from_polar(r, 2.0 * PI * j as f64 / 512.0));
                assert!(w.re > 0.0);
                assert!(w.arg().abs() <= beta + 1e-12);
            }
        }
    }
}
