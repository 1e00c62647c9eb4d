//! Deterministic integration rules: circle means, log-weighted disk
//! integrals, sphere means and radially weighted ball integrals (n = 3),
//! plus a zero-aware circle rule for integrands `|φ|^s·G` whose base `φ`
//! changes sign on the circle.
//!
//! Every reduction goes through [`pairwise_sum`] over a vector built in node
//! order, so results are bit-stable regardless of thread count.

use num_complex::Complex;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{check_p, Error, Result};
use crate::scalar::{ln_gamma, pairwise_sum, Real};

/// Nodes closer than this to a zero of the integrand base raise the degraded flag.
pub const NEAR_ZERO: f64 = 1e-10;

/// Node counts for every rule in this module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadratureSpec {
    /// Trapezoid nodes on each circle.
    pub n_angles: usize,
    /// Gauss–Legendre nodes along the radius.
    pub n_radial: usize,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self {
            n_angles: 4096,
            n_radial: 256,
        }
    }
}

impl QuadratureSpec {
    pub fn new(n_angles: usize, n_radial: usize) -> Result<Self> {
        if n_angles < 8 {
            return Err(Error::Domain {
                name: "n_angles",
                value: n_angles as f64,
                domain: ">= 8",
            });
        }
        if n_radial < 4 {
            return Err(Error::Domain {
                name: "n_radial",
                value: n_radial as f64,
                domain: ">= 4",
            });
        }
        Ok(Self { n_angles, n_radial })
    }

    /// Both counts doubled.
    pub fn refined(&self) -> Self {
        Self {
            n_angles: 2 * self.n_angles,
            n_radial: 2 * self.n_radial,
        }
    }

    /// Polar GL nodes of the sphere rule.
    pub fn sphere_polar(&self) -> usize {
        (self.n_radial / 2).max(2)
    }

    /// Azimuthal trapezoid nodes of the sphere rule.
    pub fn sphere_azimuth(&self) -> usize {
        (self.n_angles / 16).max(8)
    }

    /// Radial nodes of the 3-D ball rule.
    pub fn ball_radial(&self) -> usize {
        (self.n_radial / 2).max(2)
    }

    /// Gauss–Jacobi nodes per nodal arc of the zero-aware circle rule.
    pub fn arc_nodes(&self) -> usize {
        (self.n_angles / 32).clamp(16, 128)
    }
}

/// Gauss–Legendre rule on `[−1, 1]`, nodes ascending.
pub fn gauss_legendre<T: Real>(n: usize) -> (Vec<T>, Vec<T>) {
    assert!(n >= 1, "Gauss–Legendre needs at least one node");
    let mut nodes = vec![0.0f64; n];
    let mut weights = vec![0.0f64; n];
    let nf = n as f64;
    for i in 0..n.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (nf + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let kf = k as f64;
                let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 1 { x } else { p1 };
            let pm = if n == 1 { 1.0 } else { p0 };
            dp = nf * (x * pn - pm) / (x * x - 1.0);
            let dx = pn / dp;
            x -= dx;
            if dx.abs() <= 1e-16 * x.abs().max(1.0) {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (
        nodes.into_iter().map(T::lit).collect(),
        weights.into_iter().map(T::lit).collect(),
    )
}

/// Gauss–Legendre on `(0, 1)` in `s` with `r = s⁴`, returning `(r_i, w_i)`
/// for `∫₀¹ F(r) dr`. The grading clusters nodes at the origin, where the
/// log and power weights of the Green integrals are singular.
pub fn graded_radial<T: Real>(n: usize) -> Vec<(T, T)> {
    let (x, w) = gauss_legendre::<f64>(n);
    x.iter()
        .zip(&w)
        .map(|(&xi, &wi)| {
            let s = 0.5 * (xi + 1.0);
            (T::lit(s.powi(4)), T::lit(0.5 * wi * 4.0 * s.powi(3)))
        })
        .collect()
}

/// Gauss–Jacobi rule for the weight `(1 − x)^s (1 + x)^s` on `[−1, 1]`,
/// `s > −1`, via Golub–Welsch.
pub fn gauss_jacobi_symmetric<T: Real>(m: usize, s: f64) -> Result<(Vec<T>, Vec<T>)> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    if !(s > -1.0) || m == 0 {
        return Err(Error::Domain {
            name: "jacobi exponent",
            value: s,
            domain: "s > -1",
        });
    }
    let ab = 2.0 * s;
    let mut diag = vec![0.0f64; m];
    let mut off = vec![0.0f64; m];
    for k in 1..m {
        let kf = k as f64;
        let b2 = if k == 1 {
            4.0 * (1.0 + s) * (1.0 + s) / ((2.0 + ab).powi(2) * (3.0 + ab))
        } else {
            let t = 2.0 * kf + ab;
            4.0 * kf * (kf + s) * (kf + s) * (kf + ab) / (t * t * (t + 1.0) * (t - 1.0))
        };
        off[k - 1] = b2.sqrt();
    }
    let mut first = vec![0.0f64; m];
    first[0] = 1.0;
    tridiagonal_ql(&mut diag, &mut off, &mut first)?;
    let mu0 = ((2.0 * s + 1.0) * std::f64::consts::LN_2 + 2.0 * ln_gamma(s + 1.0) - ln_gamma(2.0 * s + 2.0)).exp();
    let mut pairs: Vec<(f64, f64)> = diag.into_iter().zip(first.into_iter().map(|z| mu0 * z * z)).collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    Ok((
        pairs.iter().map(|&(x, _)| T::lit(x)).collect(),
        pairs.iter().map(|&(_, w)| T::lit(w)).collect(),
    ))
}

/// Implicit QL on a symmetric tridiagonal matrix (`off[i]` couples `i` and
/// `i+1`), applying the rotations to the row vector `z` so that on exit
/// `z[j]` is the first component of the `j`-th normalized eigenvector.
fn tridiagonal_ql(d: &mut [f64], e: &mut [f64], z: &mut [f64]) -> Result<()> {
    let n = d.len();
    if n > 0 {
        e[n - 1] = 0.0;
    }
    for l in 0..n {
        let mut iter = 0;
        loop {
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > 60 {
                return Err(Error::NoConvergence {
                    last_difference: e[l].abs(),
                });
            }
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c, mut p) = (1.0, 1.0, 0.0);
            let mut deflated = false;
            let mut i = m;
            while i > l {
                i -= 1;
                let f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    deflated = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;
                let zf = z[i + 1];
                z[i + 1] = s * z[i] + c * zf;
                z[i] = c * z[i] - s * zf;
            }
            if deflated {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }
    Ok(())
}

fn check_finite<T: Real>(values: &[T]) -> Result<()> {
    match values.iter().position(|v| !v.is_finite()) {
        Some(node) => Err(Error::NonFinite {
            node,
            value: values[node].as_f64(),
        }),
        None => Ok(()),
    }
}

fn angle<T: Real>(j: usize, n: usize) -> T {
    T::TAU() * T::from_count(j) / T::from_count(n)
}

/// `(1/n)·Σ_j φ(r·e^{2πij/n})`, the normalized mean over the circle `|z| = r`.
pub fn circle_mean<T: Real>(phi: impl Fn(Complex<T>) -> T, r: T, spec: &QuadratureSpec) -> Result<T> {
    let n = spec.n_angles;
    let values: Vec<T> = (0..n).map(|j| phi(Complex::from_polar(r, angle(j, n)))).collect();
    check_finite(&values)?;
    Ok(pairwise_sum(&values) / T::from_count(n))
}

/// `(1/2π)∫_D ψ(z)·log(1/|z|) dA(z)`: graded Gauss–Legendre in `r` times the
/// trapezoid circle mean.
pub fn disk_green_integral<T: Real>(psi: impl Fn(Complex<T>) -> T + Sync, spec: &QuadratureSpec) -> Result<T> {
    let radial = graded_radial::<T>(spec.n_radial);
    let shells: Result<Vec<T>> = radial
        .par_iter()
        .map(|&(r, w)| Ok(w * r * (-r.ln()) * circle_mean(&psi, r, spec)?))
        .collect();
    Ok(pairwise_sum(&shells?))
}

/// Product rule on the unit sphere of `R³`: Gauss–Legendre in `cos θ`,
/// trapezoid in azimuth. Returns points and weights summing to 1.
pub fn sphere_rule<T: Real>(spec: &QuadratureSpec) -> Vec<([T; 3], T)> {
    let (x, w) = gauss_legendre::<f64>(spec.sphere_polar());
    let na = spec.sphere_azimuth();
    let mut out = Vec::with_capacity(x.len() * na);
    for (&c, &wc) in x.iter().zip(&w) {
        let sn = (1.0 - c * c).max(0.0).sqrt();
        for j in 0..na {
            let phi = std::f64::consts::TAU * j as f64 / na as f64;
            out.push((
                [T::lit(sn * phi.cos()), T::lit(sn * phi.sin()), T::lit(c)],
                T::lit(0.5 * wc / na as f64),
            ));
        }
    }
    out
}

/// Normalized mean over the unit sphere of `R³` (`σ(S) = 1`).
pub fn sphere_mean_3d<T: Real>(phi: impl Fn(&[T; 3]) -> T, spec: &QuadratureSpec) -> Result<T> {
    let rule = sphere_rule::<T>(spec);
    let values: Vec<T> = rule.iter().map(|(x, _)| phi(x)).collect();
    check_finite(&values)?;
    let terms: Vec<T> = rule.iter().zip(&values).map(|((_, w), &v)| *w * v).collect();
    Ok(pairwise_sum(&terms))
}

/// `c₃·∫_B ψ(x)(|x|^{−1} − 1) dV(x)` with `c₃ = 1/4π`, i.e.
/// `∫₀¹ (r − r²)·mean_S ψ(r·) dr`.
pub fn ball_green_integral_3d<T: Real>(psi: impl Fn(&[T; 3]) -> T + Sync, spec: &QuadratureSpec) -> Result<T> {
    let radial = graded_radial::<T>(spec.ball_radial());
    let shells: Result<Vec<T>> = radial
        .par_iter()
        .map(|&(r, w)| {
            let mean = sphere_mean_3d(|x| psi(&[r * x[0], r * x[1], r * x[2]]), spec)?;
            Ok(w * (r - r * r) * mean)
        })
        .collect();
    Ok(pairwise_sum(&shells?))
}

/// Integral mean `M_p` with a flag raised when some node came within
/// [`NEAR_ZERO`] of a zero of the integrand base.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HardyMean<T> {
    pub value: T,
    pub degraded: bool,
}

/// `M_p(f, r) = (mean_{|z|=r} |f|^p)^{1/p}`; at `r = 1` this is `‖f‖_p` for
/// maps smooth on the closed disk.
pub fn hardy_norm<T: Real>(
    f: impl Fn(Complex<T>) -> Complex<T>,
    p: T,
    r: T,
    spec: &QuadratureSpec,
) -> Result<HardyMean<T>> {
    check_p(p.as_f64())?;
    let n = spec.n_angles;
    let moduli: Vec<T> = (0..n).map(|j| f(Complex::from_polar(r, angle(j, n))).norm()).collect();
    check_finite(&moduli)?;
    let degraded = moduli.iter().any(|&m| m < T::lit(NEAR_ZERO));
    let powers: Vec<T> = moduli.iter().map(|&m| m.powf(p)).collect();
    Ok(HardyMean {
        value: (pairwise_sum(&powers) / T::from_count(n)).powf(p.recip()),
        degraded,
    })
}

/// Sphere analogue of [`hardy_norm`] for `n = 3`; `modulus` returns `|f(ξ)|`.
pub fn hardy_norm_sphere<T: Real>(modulus: impl Fn(&[T; 3]) -> T, p: T, spec: &QuadratureSpec) -> Result<HardyMean<T>> {
    check_p(p.as_f64())?;
    let rule = sphere_rule::<T>(spec);
    let moduli: Vec<T> = rule.iter().map(|(x, _)| modulus(x)).collect();
    check_finite(&moduli)?;
    let degraded = moduli.iter().any(|&m| m < T::lit(NEAR_ZERO));
    let terms: Vec<T> = rule.iter().zip(&moduli).map(|((_, w), &m)| *w * m.powf(p)).collect();
    Ok(HardyMean {
        value: pairwise_sum(&terms).powf(p.recip()),
        degraded,
    })
}

/// One node of the zero-aware circle rule. The rule approximates
/// `mean_t |φ(t)|^s·G(t)` by `Σ weight·kernel·|φ(t)|^s·G(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArcNode<T> {
    pub t: T,
    pub weight: T,
    /// `((t − a)(b − t))^{−s}` on a nodal arc `(a, b)`, 1 for trapezoid nodes.
    pub kernel: T,
}

fn bisect_root<T: Real>(phi: &impl Fn(T) -> T, mut a: T, mut b: T, mut fa: T) -> T {
    for _ in 0..200 {
        let mid = T::lit(0.5) * (a + b);
        if mid <= a || mid >= b {
            break;
        }
        let fm = phi(mid);
        if fm == T::zero() {
            return mid;
        }
        if (fm > T::zero()) == (fa > T::zero()) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    T::lit(0.5) * (a + b)
}

/// Zeros of `φ` on `[0, 2π)` located by sign changes on the `n`-point grid.
pub fn circle_sign_changes<T: Real>(phi: &impl Fn(T) -> T, n: usize) -> Vec<T> {
    let ts: Vec<T> = (0..n).map(|j| angle(j, n)).collect();
    let vals: Vec<T> = ts.iter().map(|&t| phi(t)).collect();
    let mut roots = Vec::new();
    for j in 0..n {
        let (a, fa) = (ts[j], vals[j]);
        let fb = vals[(j + 1) % n];
        if fa == T::zero() {
            roots.push(a);
        } else if fb != T::zero() && (fa > T::zero()) != (fb > T::zero()) {
            let b = if j + 1 == n { T::TAU() } else { ts[j + 1] };
            let mut root = bisect_root(phi, a, b, fa);
            if root >= T::TAU() {
                root -= T::TAU();
            }
            roots.push(root);
        }
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    roots
}

/// Gauss–Jacobi rule reused across all arcs of one call.
#[derive(Debug, Clone)]
pub struct ArcRule<T> {
    s: T,
    nodes: Vec<T>,
    weights: Vec<T>,
}

impl<T: Real> ArcRule<T> {
    pub fn new(s: T, m: usize) -> Result<Self> {
        let (nodes, weights) = gauss_jacobi_symmetric::<T>(m, s.as_f64())?;
        Ok(Self { s, nodes, weights })
    }

    pub fn exponent(&self) -> T {
        self.s
    }

    /// Nodes of the zero-aware rule for `φ` on a full circle parametrized by `t`.
    ///
    /// Without sign changes this is the `n_angles` trapezoid rule. Otherwise
    /// every arc between consecutive zeros gets the Gauss–Jacobi rule with
    /// weight `((t − a)(b − t))^s`, which absorbs the `|φ|^s` endpoint
    /// behaviour of simple zeros.
    pub fn nodes(&self, phi: &impl Fn(T) -> T, n_angles: usize) -> Vec<ArcNode<T>> {
        let roots = circle_sign_changes(phi, n_angles);
        if roots.is_empty() {
            let w = T::from_count(n_angles).recip();
            return (0..n_angles)
                .map(|j| ArcNode {
                    t: angle(j, n_angles),
                    weight: w,
                    kernel: T::one(),
                })
                .collect();
        }
        let half = T::lit(0.5);
        let mut out = Vec::with_capacity(roots.len() * self.nodes.len());
        for i in 0..roots.len() {
            let a = roots[i];
            let b = if i + 1 == roots.len() {
                roots[0] + T::TAU()
            } else {
                roots[i + 1]
            };
            if b - a < T::lit(1e-13) {
                continue;
            }
            let (mid, hw) = (half * (a + b), half * (b - a));
            // Jacobian of the affine map and of the weight rescaling
            let scale = hw.powf(T::lit(2.0) * self.s + T::one()) / T::TAU();
            for (&x, &w) in self.nodes.iter().zip(&self.weights) {
                let t = mid + hw * x;
                let dist = (t - a) * (b - t);
                out.push(ArcNode {
                    t,
                    weight: scale * w,
                    kernel: dist.powf(-self.s),
                });
            }
        }
        out
    }

    /// `mean_t |φ(t)|^s·G(t)`. Non-finite node values (a node exactly on a
    /// zero) contribute nothing.
    pub fn mean(&self, phi: &impl Fn(T) -> T, g: impl Fn(T) -> T, n_angles: usize) -> T {
        let terms: Vec<T> = self
            .nodes(phi, n_angles)
            .iter()
            .map(|nd| {
                let v = nd.weight * nd.kernel * phi(nd.t).abs().powf(self.s) * g(nd.t);
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

/// `‖u‖_p` on the circle `|z| = r` for real-valued `u`, using the zero-aware rule.
pub fn real_hardy_norm<T: Real>(u: impl Fn(Complex<T>) -> T, p: T, r: T, spec: &QuadratureSpec) -> Result<T> {
    check_p(p.as_f64())?;
    let rule = ArcRule::new(p, spec.arc_nodes())?;
    let phi = |t: T| u(Complex::from_polar(r, t));
    let mean = rule.mean(&phi, |_| T::one(), spec.n_angles);
    if !mean.is_finite() {
        return Err(Error::NonFinite {
            node: 0,
            value: mean.as_f64(),
        });
    }
    Ok(mean.powf(p.recip()))
}

/// Node of the zero-aware disk rule for `(1/2π)∫_D |u|^s·G·log(1/|z|) dA`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskNode<T> {
    pub z: Complex<T>,
    /// Radial weight × `r·log(1/r)` × arc weight.
    pub weight: T,
    pub kernel: T,
}

/// Graded radial rule times the zero-aware circle rule of `u` on each shell.
pub fn nodal_disk_nodes<T: Real>(
    u: impl Fn(Complex<T>) -> T + Sync,
    s: T,
    spec: &QuadratureSpec,
) -> Result<Vec<DiskNode<T>>> {
    let rule = ArcRule::new(s, spec.arc_nodes())?;
    let radial = graded_radial::<T>(spec.n_radial);
    let shells: Vec<Vec<DiskNode<T>>> = radial
        .par_iter()
        .map(|&(r, w)| {
            let phi = |t: T| u(Complex::from_polar(r, t));
            let radial_weight = w * r * (-r.ln());
            rule.nodes(&phi, spec.n_angles)
                .into_iter()
                .map(|nd| DiskNode {
                    z: Complex::from_polar(r, nd.t),
                    weight: radial_weight * nd.weight,
                    kernel: nd.kernel,
                })
                .collect()
        })
        .collect();
    Ok(shells.into_iter().flatten().collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn spec_validation() {
        assert!(QuadratureSpec::new(7, 16).is_err());
        assert!(QuadratureSpec::new(8, 3).is_err());
        assert_eq!(
            QuadratureSpec::new(8, 4).unwrap().refined(),
            QuadratureSpec::new(16, 8).unwrap()
        );
    }

    #[test]
    fn legendre_integrates_polynomials() {
        for n in [1, 2, 5, 16, 64] {
            let (x, w) = gauss_legendre::<f64>(n);
            assert!((w.iter().sum::<f64>() - 2.0).abs() < 1e-14);
            for d in 0..2 * n {
                let exact = if d % 2 == 1 { 0.0 } else { 2.0 / (d as f64 + 1.0) };
                let q: f64 = x.iter().zip(&w).map(|(xi, wi)| wi * xi.powi(d as i32)).sum();
                assert!((q - exact).abs() < 1e-13, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn jacobi_matches_reference_values() {
        // reference from an independent implementation (scipy.special.roots_jacobi)
        let (x, w) = gauss_jacobi_symmetric::<f64>(4, -0.5).unwrap();
        // s = -1/2 is Gauss–Chebyshev: nodes cos((2j-1)π/8), weights π/4
        for j in 0..4 {
            let expect = ((2.0 * (4 - j) as f64 - 1.0) * PI / 8.0).cos();
            assert!((x[j] - expect).abs() < 1e-15);
            assert!((w[j] - PI / 4.0).abs() < 1e-14);
        }
        let (x, w) = gauss_jacobi_symmetric::<f64>(3, 0.5).unwrap();
        use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4, FRAC_PI_8};
        let xr = [-FRAC_1_SQRT_2, 0.0, FRAC_1_SQRT_2];
        let wr = [FRAC_PI_8, FRAC_PI_4, FRAC_PI_8];
        for j in 0..3 {
            assert!((x[j] - xr[j]).abs() < 1e-15);
            assert!((w[j] - wr[j]).abs() < 1e-15);
        }
        let (x, w) = gauss_jacobi_symmetric::<f64>(5, -0.8).unwrap();
        let xr = [
            -0.9800844631816812,
            -0.6251286238697017,
            0.0,
            0.6251286238697017,
            0.9800844631816812,
        ];
        let wr = [
            2.010782187526211,
            0.7864067275071391,
            0.6742752940193382,
            0.7864067275071391,
            2.010782187526211,
        ];
        for j in 0..5 {
            assert!((x[j] - xr[j]).abs() < 1e-14, "{} {}", x[j], xr[j]);
            assert!((w[j] - wr[j]).abs() < 1e-13, "{} {}", w[j], wr[j]);
        }
    }

    #[test]
    fn jacobi_moments() {
        // ∫(1-x²)^s x² dx = B(3/2, s+1)
        for &s in &[-0.8, -0.5, -0.2, 0.0, 0.5, 1.2, 2.0] {
            let (x, w) = gauss_jacobi_symmetric::<f64>(20, s).unwrap();
            let m0: f64 = w.iter().sum();
            let m2: f64 = x.iter().zip(&w).map(|(a, b)| a * a * b).sum();
            let beta = |a: f64, b: f64| (ln_gamma(a) + ln_gamma(b) - ln_gamma(a + b)).exp();
            assert!((m0 - beta(0.5, s + 1.0)).abs() < 1e-13 * m0);
            assert!((m2 - beta(1.5, s + 1.0)).abs() < 1e-13 * m0);
        }
    }

    #[test]
    fn graded_radial_weight_sums() {
        for n in [16, 64, 256] {
            let rule = graded_radial::<f64>(n);
            let q: f64 = rule.iter().map(|(r, w)| w * r * (-r.ln())).sum();
            assert!((q - 0.25).abs() < 1e-12, "n={n} err={}", q - 0.25);
        }
    }

    #[test]
    fn circle_mean_examples() {
        let s = spec();
        assert!((circle_mean(|_| 3.5f64, 0.4, &s).unwrap() - 3.5).abs() < 1e-15);
        let v = circle_mean(|z: Complex<f64>| (z.arg().cos()).powi(2), 0.7, &s).unwrap();
        assert!((v - 0.5).abs() < 1e-15);
        let v = circle_mean(|z: Complex<f64>| (z + 0.5 * z.conj()).norm_sqr(), 1.0, &s).unwrap();
        assert!((v - 1.25).abs() < 1e-14);
        let err = circle_mean(|z: Complex<f64>| if z.re <= -1.0 { f64::NAN } else { 1.0 }, 1.0, &s);
        assert!(matches!(err, Err(Error::NonFinite { node: 2048, .. })));
    }

    #[test]
    fn disk_green_examples() {
        let s = spec();
        assert!((disk_green_integral(|_| 1.0f64, &s).unwrap() - 0.25).abs() < 1e-12);
        assert!((disk_green_integral(|z: Complex<f64>| z.norm_sqr(), &s).unwrap() - 1.0 / 16.0).abs() < 1e-12);
        // 2|∇Re z|² = 2 matches ‖Re z‖₂² − 0 = 1/2
        assert!((disk_green_integral(|_| 2.0f64, &s).unwrap() - 0.5).abs() < 1e-12);
        let small = QuadratureSpec::new(64, 16).unwrap();
        assert!((disk_green_integral(|_| 1.0f64, &small).unwrap() - 0.25).abs() < 1e-12);
    }

    #[test]
    fn sphere_examples() {
        let s = spec();
        let w = pairwise_sum(&sphere_rule::<f64>(&s).iter().map(|(_, w)| *w).collect::<Vec<_>>());
        assert!((w - 1.0).abs() < 1e-14, "weight sum error {}", w - 1.0);
        assert!((sphere_mean_3d(|_| 2.5f64, &s).unwrap() - 2.5).abs() < 1e-14);
        assert!((sphere_mean_3d(|x: &[f64; 3]| x[0] * x[0], &s).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert!(sphere_mean_3d(|x: &[f64; 3]| x[0] * x[1], &s).unwrap().abs() < 1e-15);
    }

    #[test]
    fn ball_green_examples() {
        let s = spec();
        assert!((ball_green_integral_3d(|_| 1.0f64, &s).unwrap() - 1.0 / 6.0).abs() < 1e-13);
        assert!((ball_green_integral_3d(|_| 2.0f64, &s).unwrap() - 1.0 / 3.0).abs() < 1e-13);
        assert_eq!(ball_green_integral_3d(|_| 0.0f64, &s).unwrap(), 0.0);
    }

    #[test]
    fn hardy_norm_examples() {
        let s = spec();
        for m in 0..5 {
            for &p in &[1.2, 1.5, 2.0] {
                for &r in &[0.3, 0.8, 1.0] {
                    let v = hardy_norm(|z: Complex<f64>| z.powu(m), p, r, &s).unwrap();
                    assert!((v.value - r.powi(m as i32)).abs() < 1e-14);
                }
            }
        }
        let v = hardy_norm(|z: Complex<f64>| z + 0.5 * z.conj(), 2.0, 1.0, &s).unwrap();
        assert!((v.value - 1.25f64.sqrt()).abs() < 1e-14);
        let v = hardy_norm_sphere(|x: &[f64; 3]| x[0].abs(), 2.0, &s).unwrap();
        assert!((v.value - (1.0f64 / 3.0).sqrt()).abs() < 1e-14);
        assert!(hardy_norm(|z: Complex<f64>| z, 2.5, 1.0, &s).is_err());
        assert!(hardy_norm(|z: Complex<f64>| z, 1.0, 1.0, &s).is_err());
        assert!(hardy_norm(|z: Complex<f64>| z - 1.0, 1.5, 1.0, &s).unwrap().degraded);
    }

    #[test]
    fn nodal_rule_against_closed_form() {
        // mean |cos t|^p = Γ((p+1)/2)/(√π Γ(p/2+1))
        let s = spec();
        for &p in &[1.1, 1.2, 1.5, 2.0] {
            let exact = (ln_gamma::<f64>((p + 1.0) / 2.0) - ln_gamma(p / 2.0 + 1.0)).exp() / PI.sqrt();
            let v = real_hardy_norm(|z: Complex<f64>| z.re, p, 1.0, &s).unwrap().powf(p);
            assert!((v - exact).abs() < 1e-14, "p={p} err={}", v - exact);
        }
        // the trapezoid rule on the same integrand is far less accurate at p=1.1
        let p: f64 = 1.1;
        let exact = (ln_gamma::<f64>((p + 1.0) / 2.0) - ln_gamma(p / 2.0 + 1.0)).exp() / PI.sqrt();
        let off = QuadratureSpec::new(4097, 256).unwrap();
        let trap = hardy_norm(|z: Complex<f64>| Complex::new(z.re, 0.0), p, 1.0, &off)
            .unwrap()
            .value
            .powf(p);
        assert!((trap - exact).abs() > 1e-10);
    }

    #[test]
    fn nodal_rule_negative_exponent() {
        // mean |cos t|^{-1/2} = Γ(1/4)/(√π Γ(3/4))
        let rule = ArcRule::<f64>::new(-0.5, 64).unwrap();
        let v = rule.mean(&|t: f64| t.cos(), |_| 1.0, 4096);
        let exact = (ln_gamma(0.25f64) - ln_gamma(0.75)).exp() / PI.sqrt();
        assert!((v - exact).abs() < 1e-13, "err={}", v - exact);
    }

    #[test]
    fn sign_changes_found() {
        let roots = circle_sign_changes(&|t: f64| (3.0 * t).sin() + 0.1, 512);
        assert_eq!(roots.len(), 6);
        for r in roots {
            assert!(((3.0 * r).sin() + 0.1).abs() < 1e-14);
        }
        assert!(circle_sign_changes(&|t: f64| 2.0 + t.cos(), 64).is_empty());
    }

    #[test]
    fn refinement_stability() {
        let s = QuadratureSpec::new(1024, 64).unwrap();
        let r = s.refined();
        let psi = |z: Complex<f64>| (z * z + 0.3).norm_sqr() + z.re;
        let a = disk_green_integral(psi, &s).unwrap();
        let b = disk_green_integral(psi, &r).unwrap();
        assert!((a - b).abs() <= 1e-8 * b.abs());
        let phi = |x: &[f64; 3]| x[0].powi(4) + x[1] * x[2] + 1.0;
        let a = ball_green_integral_3d(phi, &s).unwrap();
        let b = ball_green_integral_3d(phi, &r).unwrap();
        assert!((a - b).abs() <= 1e-8 * b.abs());
    }

    #[test]
    fn generic_over_f32() {
        let s = QuadratureSpec::new(256, 32).unwrap();
        let v = disk_green_integral(|_| 1.0f32, &s).unwrap();
        assert!((v - 0.25).abs() < 1e-5);
    }
}
