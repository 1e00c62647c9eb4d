//! Planar harmonic maps `f = g + conj(h)` on the unit disk.

use num_complex::Complex;
use serde::{Deserialize, Serialize};

use crate::analytic::ComplexSeries;
use crate::error::{Error, Result};
use crate::scalar::Real;

/// `|g′(z)|` below this is treated as a critical point of `g`.
pub const DEGENERATE_MODULUS: f64 = 1e-14;

/// Default margin for [`PlanarHarmonicMap::range_avoids_negative_axis`].
pub const DEFAULT_AXIS_MARGIN: f64 = 1e-9;

/// Boundary grid used when a constructor has to certify `sup |ω| < 1`.
const OMEGA_CHECK_RADII: usize = 16;
const OMEGA_CHECK_ANGLES: usize = 1024;

/// `f(z)` together with `u = Re f` and `v = Im f`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MapValue<T> {
    pub f: Complex<T>,
    pub u: T,
    pub v: T,
}

/// Grid certificate of quasiregularity.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QrBound<T> {
    /// Grid supremum of `|h′/g′|`.
    pub k_sup: T,
    /// `(1 + k_sup)/(1 − k_sup)`.
    pub big_k: T,
}

/// `K = (1+k)/(1−k)`.
pub fn big_k_from_k<T: Real>(k: T) -> T {
    (T::one() + k) / (T::one() - k)
}

/// `k = (K−1)/(K+1)`.
pub fn k_from_big_k<T: Real>(big_k: T) -> T {
    (big_k - T::one()) / (big_k + T::one())
}

/// Polar sample grid `r_i = i/n_radii` (`i = 0..=n_radii`, the centre once),
/// `t_j = 2πj/n_angles`.
pub(crate) fn polar_grid<T: Real>(n_radii: usize, n_angles: usize) -> impl Iterator<Item = Complex<T>> {
    let center = std::iter::once(Complex::new(T::zero(), T::zero()));
    let ring = (1..=n_radii).flat_map(move |i| {
        let r = T::from_count(i) / T::from_count(n_radii);
        (0..n_angles).map(move |j| Complex::from_polar(r, T::TAU() * T::from_count(j) / T::from_count(n_angles)))
    });
    center.chain(ring)
}

/// Harmonic map `f = g + conj(h)` with polynomial analytic parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlanarHarmonicMap<T> {
    pub g: ComplexSeries<T>,
    pub h: ComplexSeries<T>,
}

impl<T: Real> PlanarHarmonicMap<T> {
    pub fn new(g: ComplexSeries<T>, h: ComplexSeries<T>) -> Self {
        Self { g, h }
    }

    /// Analytic map (`h = 0`).
    pub fn analytic(g: ComplexSeries<T>) -> Self {
        Self::new(g, ComplexSeries::zero())
    }

    /// `h = antiderivative(ω·g′)`, so the second dilatation `h′/g′` is exactly `ω`.
    ///
    /// Rejects `ω` whose modulus reaches 1 on the check grid (the boundary
    /// circle carries the maximum, interior radii are scanned as well).
    pub fn with_dilatation(g: ComplexSeries<T>, omega: &ComplexSeries<T>) -> Result<Self> {
        let sup = polar_grid::<T>(OMEGA_CHECK_RADII, OMEGA_CHECK_ANGLES)
            .map(|z| omega.eval(z).norm())
            .fold(T::zero(), T::max);
        if sup >= T::one() {
            return Err(Error::DilatationTooLarge {
                sup_modulus: sup.as_f64(),
            });
        }
        let h = (omega * &g.derivative()).antiderivative();
        Ok(Self { g, h })
    }

    pub fn degree(&self) -> usize {
        self.g.degree().max(self.h.degree())
    }

    pub fn eval(&self, z: Complex<T>) -> MapValue<T> {
        let f = self.g.eval(z) + self.h.eval(z).conj();
        MapValue { f, u: f.re, v: f.im }
    }

    pub fn f(&self, z: Complex<T>) -> Complex<T> {
        self.g.eval(z) + self.h.eval(z).conj()
    }

    /// `(g′(z), h′(z))`.
    pub fn derivatives(&self, z: Complex<T>) -> (Complex<T>, Complex<T>) {
        (self.g.eval_with_derivative(z).1, self.h.eval_with_derivative(z).1)
    }

    /// `|h′(z)| / |g′(z)|`.
    pub fn dilatation(&self, z: Complex<T>) -> Result<T> {
        let (dg, dh) = self.derivatives(z);
        let m = dg.norm();
        if m < T::lit(DEGENERATE_MODULUS) {
            return Err(Error::DegeneratePoint {
                re: z.re.as_f64(),
                im: z.im.as_f64(),
                modulus: m.as_f64(),
            });
        }
        Ok(dh.norm() / m)
    }

    /// Grid supremum of the dilatation and the matching `K`.
    ///
    /// Points where `g′` and `h′` both vanish are skipped: the dilatation
    /// there is the limit of nearby values (a constant map gets `K = 1`).
    pub fn qr_bound(&self, n_radii: usize, n_angles: usize) -> Result<QrBound<T>> {
        let mut k_sup = T::zero();
        let tiny = T::lit(DEGENERATE_MODULUS);
        for z in polar_grid::<T>(n_radii.max(1), n_angles.max(1)) {
            let (dg, dh) = self.derivatives(z);
            if dg.norm() < tiny && dh.norm() < tiny {
                continue;
            }
            k_sup = k_sup.max(self.dilatation(z)?);
        }
        if k_sup >= T::one() - T::lit(1e-12) {
            return Err(Error::NotQuasiregular { k_sup: k_sup.as_f64() });
        }
        Ok(QrBound {
            k_sup,
            big_k: big_k_from_k(k_sup),
        })
    }

    /// `|∇u|² = |g′ + h′|²`.
    pub fn grad_u_squared(&self, z: Complex<T>) -> T {
        let (dg, dh) = self.derivatives(z);
        (dg + dh).norm_sqr()
    }

    /// Heuristic certificate that `f` misses `(−∞, 0)`: every grid point has
    /// `Re f > −margin` or `|Im f| > margin`.
    pub fn range_avoids_negative_axis(&self, n_radii: usize, n_angles: usize, margin: T) -> bool {
        polar_grid::<T>(n_radii.max(1), n_angles.max(1)).all(|z| {
            let f = self.f(z);
            f.re > -margin || f.im.abs() > margin
        })
    }

    /// Smallest `|f|` on the polar grid.
    pub fn min_modulus(&self, n_radii: usize, n_angles: usize) -> T {
        polar_grid::<T>(n_radii.max(1), n_angles.max(1))
            .map(|z| self.f(z).norm())
            .fold(T::infinity(), T::min)
    }

    /// Principal argument of `f(0)`, `None` when `f(0) = 0`.
    pub fn initial_angle(&self) -> Option<T> {
        let f0 = self.f(Complex::new(T::zero(), T::zero()));
        if f0.re == T::zero() && f0.im == T::zero() {
            None
        } else {
            Some(f0.arg())
        }
    }
}
