//! Closed-form Laplacians of `|f|^p`, `|u|^p` and `Re f^p` for planar
//! harmonic maps, finite-difference oracles, and quadrature residuals of the
//! Green-potential identities.

use num_complex::Complex;
use rayon::prelude::*;

use crate::ball::{green_function, poisson_kernel};
use crate::error::{check_p, Error, Result};
use crate::planar::PlanarHarmonicMap;
use crate::quadrature::{
    gauss_legendre, graded_radial, nodal_disk_nodes, sphere_rule, ArcRule, QuadratureSpec, NEAR_ZERO,
};
use crate::scalar::{pairwise_sum, Real};

/// Successive regularized integrals closer than this end the ε-schedule.
pub const EPS_STOP: f64 = 1e-9;

/// Points farther than this from the origin are rejected by the representation residuals.
pub const MAX_REPRESENTATION_RADIUS: f64 = 0.8;

/// Strictly decreasing positive `ε` values for `w_ε = sqrt(ε² + u²)`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegularizationSchedule<T> {
    eps_values: Vec<T>,
}

impl<T: Real> RegularizationSchedule<T> {
    pub fn new(eps_values: Vec<T>) -> Result<Self> {
        if eps_values.is_empty() {
            return Err(Error::Schedule("empty schedule".into()));
        }
        #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
        if eps_values.iter().any(|&e| !(e > T::zero()) || !e.is_finite()) {
            return Err(Error::Schedule("every ε must be positive and finite".into()));
        }
        if eps_values.windows(2).any(|w| w[1] >= w[0]) {
            return Err(Error::Schedule("ε values must strictly decrease".into()));
        }
        Ok(Self { eps_values })
    }

    /// `ε = 2^{−j}` for `j = first..=last`.
    pub fn dyadic(first: i32, last: i32) -> Result<Self> {
        Self::new((first..=last).map(|j| T::lit(2f64.powi(-j))).collect())
    }

    pub fn values(&self) -> &[T] {
        &self.eps_values
    }
}

impl<T: Real> Default for RegularizationSchedule<T> {
    /// `ε = 2^{−j}`, `j = 0..=60`.
    fn default() -> Self {
        Self::dyadic(0, 60).expect("static schedule")
    }
}

fn near_zero<T: Real>(quantity: &'static str, modulus: T) -> Result<()> {
    if modulus < T::lit(NEAR_ZERO) {
        Err(Error::NearZero {
            quantity,
            modulus: modulus.as_f64(),
        })
    } else {
        Ok(())
    }
}

/// `Δ|f|^p = (p(p−2)/4)|f|^{p−4}‖∇|f|²‖² + (p/2)|f|^{p−2}·4(|g′|² + |h′|²)`,
/// with `‖∇|f|²‖² = 4|g′·conj f + f·h′|²`.
pub fn laplacian_abs_f_p<T: Real>(m: &PlanarHarmonicMap<T>, z: Complex<T>, p: T) -> Result<T> {
    let f = m.f(z);
    let r = f.norm();
    near_zero("|f|", r)?;
    let (gp, hp) = m.derivatives(z);
    let four = T::lit(4.0);
    let grad_sq = four * (gp * f.conj() + f * hp).norm_sqr();
    let first = p * (p - T::lit(2.0)) / four * r.powf(p - four) * grad_sq;
    let second = p / T::lit(2.0) * r.powf(p - T::lit(2.0)) * four * (gp.norm_sqr() + hp.norm_sqr());
    Ok(first + second)
}

/// `Δ|u|^p = p(p−1)|g′ + h′|²|u|^{p−2}`, `u = Re f ≠ 0`.
pub fn laplacian_abs_u_p<T: Real>(m: &PlanarHarmonicMap<T>, z: Complex<T>, p: T) -> Result<T> {
    let u = m.eval(z).u;
    near_zero("|u|", u.abs())?;
    Ok(p * (p - T::one()) * m.grad_u_squared(z) * u.abs().powf(p - T::lit(2.0)))
}

/// `p(p−1)·f^{p−2}·4g′·conj(h′)` with the principal branch; its real part is `ΔRe(f^p)`.
pub fn laplacian_f_p_complex<T: Real>(m: &PlanarHarmonicMap<T>, z: Complex<T>, p: T) -> Result<Complex<T>> {
    let f = m.f(z);
    near_zero("|f|", f.norm())?;
    if f.im == T::zero() && f.re < T::zero() {
        return Err(Error::BranchCut {
            re: f.re.as_f64(),
            im: f.im.as_f64(),
        });
    }
    let (gp, hp) = m.derivatives(z);
    let power = (f.ln() * (p - T::lit(2.0))).exp();
    Ok(power * gp * hp.conj() * (T::lit(4.0) * p * (p - T::one())))
}

/// `ΔRe(f^p) = p(p−1)·Re(f^{p−2}·4g′·conj(h′))`.
pub fn laplacian_re_f_p<T: Real>(m: &PlanarHarmonicMap<T>, z: Complex<T>, p: T) -> Result<T> {
    Ok(laplacian_f_p_complex(m, z, p)?.re)
}

/// Second-order central stencil (`2n + 1` points) for `Δφ` at `x` in the unit ball of `R^n`.
pub fn finite_diff_laplacian<T: Real>(phi: impl Fn(&[T]) -> T, x: &[T], step: T) -> Result<T> {
    let mut reach = T::zero();
    for i in 0..x.len() {
        for sign in [T::one(), -T::one()] {
            let r2: T = x
                .iter()
                .enumerate()
                .map(|(j, &v)| if j == i { v + sign * step } else { v })
                .map(|v| v * v)
                .sum();
            reach = reach.max(r2.sqrt());
        }
    }
    if reach >= T::one() {
        return Err(Error::DomainExit { reach: reach.as_f64() });
    }
    let center = phi(x);
    let mut y = x.to_vec();
    let mut acc = T::zero();
    for i in 0..x.len() {
        y[i] = x[i] + step;
        acc += phi(&y);
        y[i] = x[i] - step;
        acc += phi(&y);
        y[i] = x[i];
    }
    Ok((acc - T::from_count(2 * x.len()) * center) / (step * step))
}

/// Planar form of [`finite_diff_laplacian`].
pub fn finite_diff_laplacian_plane<T: Real>(phi: impl Fn(Complex<T>) -> T, z: Complex<T>, step: T) -> Result<T> {
    finite_diff_laplacian(|x| phi(Complex::new(x[0], x[1])), &[z.re, z.im], step)
}

/// Pointwise pieces of the `n = 2` proof chain at one point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainBounds<T> {
    /// `Δ|f|^p`.
    pub lap_f: T,
    /// `(p(p−2)/K² + 2p)|f|^{p−2}(|g′|² + |h′|²)`.
    pub intermediate: T,
    /// `c₂(K, p)^p·Δ|u|^p`.
    pub scaled_lap_u: T,
}

impl<T: Real> ChainBounds<T> {
    pub fn intermediate_holds(&self) -> bool {
        self.lap_f <= self.intermediate * (T::one() + T::lit(1e-12)) + T::lit(1e-300)
    }

    pub fn final_holds(&self) -> bool {
        self.lap_f <= self.scaled_lap_u * (T::one() + T::lit(1e-12)) + T::lit(1e-300)
    }
}

pub fn chain_bounds<T: Real>(m: &PlanarHarmonicMap<T>, z: Complex<T>, p: T, big_k: T) -> Result<ChainBounds<T>> {
    let lap_f = laplacian_abs_f_p(m, z, p)?;
    let lap_u = laplacian_abs_u_p(m, z, p)?;
    let (gp, hp) = m.derivatives(z);
    let r = m.f(z).norm();
    let two = T::lit(2.0);
    let intermediate = (p * (p - two) / (big_k * big_k) + two * p) * r.powf(p - two) * (gp.norm_sqr() + hp.norm_sqr());
    let c = crate::constants::c_theorem1(2, big_k, p)?;
    Ok(ChainBounds {
        lap_f,
        intermediate,
        scaled_lap_u: c.powf(p) * lap_u,
    })
}

/// Result of the planar Green-identity check for `u = Re f`.
#[derive(Debug, Clone, PartialEq)]
pub struct GreenIdentity<T> {
    /// `‖u‖_p^p` on the unit circle.
    pub lhs: T,
    /// `|u(0)|^p` plus the regularized Green integral.
    pub rhs: T,
    /// `|lhs − rhs|/(1 + |lhs|)`.
    pub residual: T,
    /// `ε` at which the schedule stopped.
    pub eps: T,
    /// Regularized integrals along the schedule, up to the stopping index.
    pub integrals: Vec<T>,
}

/// Precomputed nodes of `(1/2π)∫ p(p−1)(ε² + u²)^{(p−2)/2}|∇u|² log(1/|z|) dA`;
/// each `ε` is then a reweighted sum.
struct RegularizedIntegrand<T> {
    /// weight · kernel · p(p−1)|∇u|²
    coeff: Vec<T>,
    u_sq: Vec<T>,
    half_s: T,
}

impl<T: Real> RegularizedIntegrand<T> {
    fn build(m: &PlanarHarmonicMap<T>, p: T, spec: &QuadratureSpec) -> Result<Self> {
        let s = p - T::lit(2.0);
        let nodes = nodal_disk_nodes(|z| m.eval(z).u, s, spec)?;
        let pp1 = p * (p - T::one());
        let (coeff, u_sq): (Vec<T>, Vec<T>) = nodes
            .par_iter()
            .map(|nd| {
                let u = m.eval(nd.z).u;
                (nd.weight * nd.kernel * pp1 * m.grad_u_squared(nd.z), u * u)
            })
            .unzip();
        Ok(Self {
            coeff,
            u_sq,
            half_s: s / T::lit(2.0),
        })
    }

    fn integral(&self, eps: T) -> T {
        let e2 = eps * eps;
        let terms: Vec<T> = self
            .coeff
            .par_iter()
            .zip(&self.u_sq)
            .map(|(&c, &u2)| {
                let v = c * (e2 + u2).powf(self.half_s);
                if v.is_finite() {
                    v
                } else {
                    T::zero()
                }
            })
            .collect();
        pairwise_sum(&terms)
    }
}

/// `‖u‖_p^p` at `r = 1` by the zero-aware circle rule.
fn boundary_power_mean<T: Real>(m: &PlanarHarmonicMap<T>, p: T, spec: &QuadratureSpec) -> Result<T> {
    let rule = ArcRule::new(p, spec.arc_nodes())?;
    let phi = |t: T| m.eval(Complex::from_polar(T::one(), t)).u;
    Ok(rule.mean(&phi, |_| T::one(), spec.n_angles))
}

/// Checks `‖u‖_p^p = |u(0)|^p + (p(p−1)/2π)∫|u|^{p−2}|∇u|² log(1/|z|) dA`,
/// approaching the right side along the ε-schedule.
pub fn green_identity_residual_plane<T: Real>(
    m: &PlanarHarmonicMap<T>,
    p: T,
    spec: &QuadratureSpec,
    schedule: &RegularizationSchedule<T>,
) -> Result<GreenIdentity<T>> {
    check_p(p.as_f64())?;
    let lhs = boundary_power_mean(m, p, spec)?;
    let center = m.eval(Complex::new(T::zero(), T::zero())).u.abs().powf(p);
    let integrand = RegularizedIntegrand::build(m, p, spec)?;
    let mut integrals = Vec::new();
    let mut last_difference = T::infinity();
    for &eps in schedule.values() {
        let value = integrand.integral(eps);
        if let Some(&prev) = integrals.last() {
            last_difference = (value - prev).abs();
        }
        integrals.push(value);
        if last_difference < T::lit(EPS_STOP) {
            let rhs = center + value;
            return Ok(GreenIdentity {
                lhs,
                rhs,
                residual: (lhs - rhs).abs() / (T::one() + lhs.abs()),
                eps,
                integrals,
            });
        }
    }
    Err(Error::NoConvergence {
        last_difference: last_difference.as_f64(),
    })
}

/// [`green_identity_residual_plane`] and [`eps_monotonicity_check`] from a
/// single node build; the residual is taken at the same stopping index.
pub fn green_identity_with_monotonicity<T: Real>(
    m: &PlanarHarmonicMap<T>,
    p: T,
    spec: &QuadratureSpec,
    schedule: &RegularizationSchedule<T>,
) -> Result<(GreenIdentity<T>, bool)> {
    check_p(p.as_f64())?;
    let lhs = boundary_power_mean(m, p, spec)?;
    let center = m.eval(Complex::new(T::zero(), T::zero())).u.abs().powf(p);
    let integrand = RegularizedIntegrand::build(m, p, spec)?;
    let eps = schedule.values();
    let values: Vec<T> = eps.iter().map(|&e| integrand.integral(e)).collect();
    let monotone = is_nondecreasing(&values);
    let stop = values
        .windows(2)
        .position(|w| (w[1] - w[0]).abs() < T::lit(EPS_STOP))
        .map(|i| i + 1)
        .ok_or_else(|| Error::NoConvergence {
            last_difference: values
                .windows(2)
                .last()
                .map(|w| (w[1] - w[0]).abs().as_f64())
                .unwrap_or(f64::INFINITY),
        })?;
    let rhs = center + values[stop];
    Ok((
        GreenIdentity {
            lhs,
            rhs,
            residual: (lhs - rhs).abs() / (T::one() + lhs.abs()),
            eps: eps[stop],
            integrals: values[..=stop].to_vec(),
        },
        monotone,
    ))
}

fn is_nondecreasing<T: Real>(values: &[T]) -> bool {
    let slack = T::lit(1e-12);
    values.windows(2).all(|w| w[1] >= w[0] - slack * w[0].abs())
}

/// True iff the regularized Green integrals never decrease as `ε` decreases
/// along the whole schedule (pointwise the integrand grows as `ε ↓ 0` for
/// `p ≤ 2`, so the sums converge to the `|u|^p` limit from below).
pub fn eps_monotonicity_check<T: Real>(
    m: &PlanarHarmonicMap<T>,
    p: T,
    spec: &QuadratureSpec,
    schedule: &RegularizationSchedule<T>,
) -> Result<bool> {
    check_p(p.as_f64())?;
    let integrand = RegularizedIntegrand::build(m, p, spec)?;
    let values: Vec<T> = schedule.values().iter().map(|&e| integrand.integral(e)).collect();
    Ok(is_nondecreasing(&values))
}

fn check_representation_point<T: Real>(x: &[T]) -> Result<()> {
    let r = x.iter().map(|&v| v * v).sum::<T>().sqrt();
    if r > T::lit(MAX_REPRESENTATION_RADIUS) {
        return Err(Error::Domain {
            name: "|x|",
            value: r.as_f64(),
            domain: "[0, 0.8]",
        });
    }
    Ok(())
}

/// `|w(x) − (∫_S P(x,·)w dσ − ∫_D G(x,·)Δw dA)|` in the plane.
///
/// The volume term uses polar coordinates centred at `x`, where the
/// logarithmic singularity of `G` is integrable against `ρ dρ`.
pub fn green_representation_residual_2d<T: Real>(
    w: impl Fn(Complex<T>) -> T + Sync,
    laplacian_w: impl Fn(Complex<T>) -> T + Sync,
    x: Complex<T>,
    spec: &QuadratureSpec,
) -> Result<T> {
    check_representation_point(&[x.re, x.im])?;
    let xs = [x.re, x.im];
    let n = spec.n_angles;
    let poisson: Result<Vec<T>> = (0..n)
        .map(|j| {
            let eta = Complex::from_polar(T::one(), T::TAU() * T::from_count(j) / T::from_count(n));
            Ok(poisson_kernel(&xs, &[eta.re, eta.im])? * w(eta))
        })
        .collect();
    let poisson = pairwise_sum(&poisson?) / T::from_count(n);

    let radial = graded_radial::<T>(spec.n_radial);
    let dtheta = T::TAU() / T::from_count(n);
    let rays: Vec<T> = (0..n)
        .into_par_iter()
        .map(|j| {
            let e = Complex::from_polar(T::one(), T::TAU() * T::from_count(j) / T::from_count(n));
            let xe = x.re * e.re + x.im * e.im;
            let rho_max = -xe + (xe * xe + T::one() - x.norm_sqr()).sqrt();
            let terms: Vec<T> = radial
                .iter()
                .map(|&(s, ws)| {
                    let rho = rho_max * s;
                    let y = x + e * rho;
                    // log|x − y| = log ρ exactly; y may round onto x for tiny ρ
                    let g = ((Complex::new(T::one(), T::zero()) - x * y.conj()).norm().ln() - rho.ln()) / T::TAU();
                    ws * rho_max * rho * g * laplacian_w(y)
                })
                .collect();
            pairwise_sum(&terms) * dtheta
        })
        .collect();
    let volume = pairwise_sum(&rays);
    Ok((w(x) - (poisson - volume)).abs())
}

/// Three-dimensional form of [`green_representation_residual_2d`].
pub fn green_representation_residual_3d<T: Real>(
    w: impl Fn(&[T; 3]) -> T + Sync,
    laplacian_w: impl Fn(&[T; 3]) -> T + Sync,
    x: [T; 3],
    spec: &QuadratureSpec,
) -> Result<T> {
    check_representation_point(&x)?;
    let sphere = sphere_rule::<T>(spec);
    let poisson: Result<Vec<T>> = sphere
        .iter()
        .map(|(eta, wt)| Ok(*wt * poisson_kernel(&x, eta)? * w(eta)))
        .collect();
    let poisson = pairwise_sum(&poisson?);

    // ∫_B G(x,y)Δw(y) dV with y = x + ρe: dV = ρ² dρ dA(e), and ρ²G is bounded
    let (gx, gw) = gauss_legendre::<T>(spec.ball_radial());
    let area = T::lit(4.0) * T::PI();
    let rays: Result<Vec<T>> = sphere
        .par_iter()
        .map(|(e, wt)| {
            let xe = x[0] * e[0] + x[1] * e[1] + x[2] * e[2];
            let x2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
            let rho_max = -xe + (xe * xe + T::one() - x2).sqrt();
            let half = T::lit(0.5) * rho_max;
            let terms: Result<Vec<T>> = gx
                .iter()
                .zip(&gw)
                .map(|(&t, &wg)| {
                    let rho = half * (t + T::one());
                    let y = [x[0] + rho * e[0], x[1] + rho * e[1], x[2] + rho * e[2]];
                    let g = green_function(&x, &y)?;
                    Ok(wg * half * rho * rho * g * laplacian_w(&y))
                })
                .collect();
            Ok(*wt * area * pairwise_sum(&terms?))
        })
        .collect();
    let volume = pairwise_sum(&rays?);
    Ok((w(&x) - (poisson - volume)).abs())
}
