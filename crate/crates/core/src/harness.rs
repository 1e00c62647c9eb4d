//! End-to-end checks of the Riesz-type inequalities: pointwise
//! trigonometric lemmas, the disk and ball theorems, the sector-map
//! sharpness probe, randomized quasiregular families and equality cases.
//!
//! Everything here is `f64`; the generic kernels live in the other modules.

use std::collections::BTreeMap;
use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analytic::{sector_boundary_value, sector_series_fejer, ComplexSeries};
use crate::ball::{qr_constant_linear, LinearBallMap, Matrix};
use crate::constants::{
    c_theorem1, c_theorem2, classical_constants, d_theorem2, initial_condition_ok, pichorides_ab, verbitsky_cd,
};
use crate::error::{check_p, Error, Result};
use crate::identities::{
    finite_diff_laplacian_plane, green_identity_with_monotonicity, green_representation_residual_2d,
    green_representation_residual_3d, laplacian_abs_f_p, laplacian_abs_u_p, laplacian_f_p_complex,
    RegularizationSchedule,
};
use crate::planar::{big_k_from_k, PlanarHarmonicMap, DEFAULT_AXIS_MARGIN};
use crate::quadrature::{
    gauss_legendre, hardy_norm, hardy_norm_sphere, real_hardy_norm, sphere_mean_3d, QuadratureSpec,
};
use crate::scalar::pairwise_sum;

type C = Complex<f64>;
type Map = PlanarHarmonicMap<f64>;

/// Relative slack in `lhs ≤ rhs·(1 + PASS_SLACK)`.
pub const PASS_SLACK: f64 = 1e-9;
/// Grid used to certify `K` and the range condition of planar maps.
pub const QR_RADII: usize = 32;
pub const QR_ANGLES: usize = 1024;
/// `|Im f(0)|` below this counts as zero.
pub const IM_F0_TOL: f64 = 1e-12;
/// Pointwise scans accept `min ≥ −POINTWISE_TOL`.
pub const POINTWISE_TOL: f64 = 1e-12;

/// Node counts echoed into every report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GridMeta {
    pub angles: usize,
    pub radial: usize,
}

impl From<&QuadratureSpec> for GridMeta {
    fn from(s: &QuadratureSpec) -> Self {
        Self {
            angles: s.n_angles,
            radial: s.n_radial,
        }
    }
}

/// Outcome of one check.
///
/// For inequality checks `lhs ≤ rhs` is the claim. Identity and pointwise
/// checks put the measured violation or residual in `lhs` and the tolerance
/// in `rhs`, so `pass` has one meaning throughout.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub params: BTreeMap<String, f64>,
    pub lhs: f64,
    pub rhs: f64,
    pub constant: f64,
    pub ratio: Option<f64>,
    /// Required hypotheses; any `false` makes the report not applicable.
    pub hypotheses: BTreeMap<String, bool>,
    /// Informational flags that never affect `pass`.
    pub diagnostics: BTreeMap<String, bool>,
    pub measured: BTreeMap<String, f64>,
    pub applicable: bool,
    pub pass: bool,
    pub grid: GridMeta,
    pub notes: String,
}

impl VerificationReport {
    pub fn new(theorem_id: &str, grid: GridMeta) -> Self {
        Self {
            theorem_id: theorem_id.to_string(),
            params: BTreeMap::new(),
            lhs: 0.0,
            rhs: 0.0,
            constant: 1.0,
            ratio: None,
            hypotheses: BTreeMap::new(),
            diagnostics: BTreeMap::new(),
            measured: BTreeMap::new(),
            applicable: true,
            pass: false,
            grid,
            notes: String::new(),
        }
    }

    pub fn param(mut self, key: &str, value: f64) -> Self {
        self.params.insert(key.to_string(), value);
        self
    }

    pub fn hypothesis(mut self, key: &str, value: bool) -> Self {
        self.hypotheses.insert(key.to_string(), value);
        self
    }

    pub fn diagnostic(mut self, key: &str, value: bool) -> Self {
        self.diagnostics.insert(key.to_string(), value);
        self
    }

    pub fn measure(mut self, key: &str, value: f64) -> Self {
        self.measured.insert(key.to_string(), value);
        self
    }

    pub fn note(mut self, text: &str) -> Self {
        if !self.notes.is_empty() {
            self.notes.push_str("; ");
        }
        self.notes.push_str(text);
        self
    }

    /// Sets the comparison and derives `ratio`, `applicable` and `pass`.
    pub fn compare(mut self, lhs: f64, rhs: f64, constant: f64) -> Self {
        self.lhs = lhs;
        self.rhs = rhs;
        self.constant = constant;
        self.ratio = (rhs > 0.0).then(|| lhs / rhs);
        self.applicable = self.hypotheses.values().all(|&h| h);
        self.pass = self.applicable && lhs <= rhs * (1.0 + PASS_SLACK);
        if !self.applicable {
            self = self.note("NOT-APPLICABLE: hypothesis not satisfied");
        }
        self
    }

    /// An applicable report that does not pass.
    pub fn is_failure(&self) -> bool {
        self.applicable && !self.pass
    }
}

/// Minimum of a pointwise expression over a uniform grid on `[−π, π]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PointwiseScan {
    pub min_value: f64,
    pub argmin: f64,
    pub max_abs: f64,
}

fn scan_grid(n_grid: usize, f: impl Fn(f64) -> f64 + Sync) -> PointwiseScan {
    let values: Vec<(f64, f64)> = (0..n_grid)
        .into_par_iter()
        .map(|j| {
            let x = -PI + 2.0 * PI * j as f64 / (n_grid - 1) as f64;
            (x, f(x))
        })
        .collect();
    let mut scan = PointwiseScan {
        min_value: f64::INFINITY,
        argmin: 0.0,
        max_abs: 0.0,
    };
    for (x, v) in values {
        if v < scan.min_value {
            scan.min_value = v;
            scan.argmin = x;
        }
        scan.max_abs = scan.max_abs.max(v.abs());
    }
    scan
}

fn check_grid(n_grid: usize) -> Result<()> {
    if n_grid < 1000 {
        return Err(Error::Domain {
            name: "n_grid",
            value: n_grid as f64,
            domain: ">= 1000",
        });
    }
    Ok(())
}

/// Pichorides scan of `A|cos x|^p − B cos(px) − |sin x|^p` on `|x| ≤ π`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PichoridesScan {
    pub gap: PointwiseScan,
    /// `min (cos(p(π−x)) − cos(px))` over `x ∈ [π/2, π]`, the step that extends
    /// the inequality from `|x| ≤ π/2` to `|x| ≤ π`.
    pub extension_min: f64,
}

pub fn verify_pointwise_pichorides(p: f64, n_grid: usize) -> Result<PichoridesScan> {
    check_grid(n_grid)?;
    let (a, b) = pichorides_ab(p)?;
    let gap = scan_grid(n_grid, |x| {
        a * x.cos().abs().powf(p) - b * (p * x).cos() - x.sin().abs().powf(p)
    });
    let ext = scan_grid(n_grid, |y| {
        // y ∈ [−π, π] ↦ x ∈ [π/2, π]
        let x = FRAC_PI_2 + (y + PI) / 4.0;
        (p * (PI - x)).cos() - (p * x).cos()
    });
    Ok(PichoridesScan {
        gap,
        extension_min: ext.min_value,
    })
}

/// Scan of `−1 + C(p)|cos t|^p − cos(pt)·D(p)` on `[−π, π]`.
pub fn verify_pointwise_verbitsky(p: f64, n_grid: usize) -> Result<PointwiseScan> {
    check_grid(n_grid)?;
    let (c, d) = verbitsky_cd(p)?;
    Ok(scan_grid(n_grid, |t| {
        -1.0 + c * t.cos().abs().powf(p) - (p * t).cos() * d
    }))
}

pub fn pichorides_report(p: f64, n_grid: usize) -> Result<VerificationReport> {
    let s = verify_pointwise_pichorides(p, n_grid)?;
    let violation = (-s.gap.min_value).max(0.0).max(-s.extension_min);
    Ok(VerificationReport::new(
        "pichorides-pointwise",
        GridMeta {
            angles: n_grid,
            radial: 0,
        },
    )
    .param("p", p)
    .measure("min_gap", s.gap.min_value)
    .measure("argmin", s.gap.argmin)
    .measure("max_abs_gap", s.gap.max_abs)
    .measure("extension_min", s.extension_min)
    .compare(violation, POINTWISE_TOL, 1.0))
}

pub fn verbitsky_report(p: f64, n_grid: usize) -> Result<VerificationReport> {
    let s = verify_pointwise_verbitsky(p, n_grid)?;
    Ok(VerificationReport::new(
        "verbitsky-pointwise",
        GridMeta {
            angles: n_grid,
            radial: 0,
        },
    )
    .param("p", p)
    .measure("min_value", s.min_value)
    .measure("argmin", s.argmin)
    .measure("max_abs", s.max_abs)
    .compare((-s.min_value).max(0.0), POINTWISE_TOL, 1.0))
}

/// Boundary norms of a planar map at `r = 1`.
struct BoundaryNorms {
    f: f64,
    u: f64,
    v: f64,
    degraded: bool,
}

fn boundary_norms(m: &Map, p: f64, spec: &QuadratureSpec) -> Result<BoundaryNorms> {
    let f = hardy_norm(|z| m.f(z), p, 1.0, spec)?;
    let u = real_hardy_norm(|z| m.eval(z).u, p, 1.0, spec)?;
    let v = real_hardy_norm(|z| m.eval(z).v, p, 1.0, spec)?;
    Ok(BoundaryNorms {
        f: f.value,
        u,
        v,
        degraded: f.degraded,
    })
}

/// Proof-chain diagnostics on a coarse interior grid; violations are logged, not failed.
fn chain_diagnostics(m: &Map, p: f64, big_k: f64) -> (bool, bool) {
    let (mut intermediate, mut fin) = (true, true);
    for i in 1..8 {
        let r = i as f64 / 8.0;
        for j in 0..64 {
            let z = C::from_polar(r, 2.0 * PI * j as f64 / 64.0);
            if let Ok(c) = crate::identities::chain_bounds(m, z, p, big_k) {
                intermediate &= c.intermediate_holds();
                fin &= c.final_holds();
            }
        }
    }
    (intermediate, fin)
}

/// `‖f‖_p ≤ c₂(K, p)·‖Re f‖_p` for `Im f(0) = 0`.
pub fn check_theorem1_plane(m: &Map, p: f64, spec: &QuadratureSpec) -> Result<VerificationReport> {
    check_p(p)?;
    let qr = m.qr_bound(QR_RADII, QR_ANGLES)?;
    let c = c_theorem1(2, qr.big_k, p)?;
    let norms = boundary_norms(m, p, spec)?;
    let f0 = m.eval(C::new(0.0, 0.0));
    let two_term = norms.f.powf(p)
        <= (f0.f.norm().powf(p) + c.powf(p) * (norms.u.powf(p) - f0.u.abs().powf(p))) * (1.0 + PASS_SLACK);
    let (chain_mid, chain_final) = chain_diagnostics(m, p, qr.big_k);
    Ok(VerificationReport::new("disk-real-part-bound", spec.into())
        .param("p", p)
        .param("K", qr.big_k)
        .param("k", qr.k_sup)
        .param("n", 2.0)
        .hypothesis("im_f0_zero", f0.v.abs() <= IM_F0_TOL)
        .hypothesis("k_finite", qr.big_k.is_finite())
        .diagnostic("two_term_form", two_term)
        .diagnostic("chain_intermediate_pointwise", chain_mid)
        .diagnostic("chain_final_pointwise", chain_final)
        .diagnostic("degraded_quadrature", norms.degraded)
        .measure("norm_f", norms.f)
        .measure("norm_u", norms.u)
        .compare(norms.f, c * norms.u, c))
}

/// `‖f‖_p^p ≤ |f(0)|^p + c_n(K, p)^p(‖f₁‖_p^p − |f₁(0)|^p)` for `x ↦ Ax + b`, `n = 3`.
pub fn check_theorem1_ball(map: &LinearBallMap<f64>, p: f64, spec: &QuadratureSpec) -> Result<VerificationReport> {
    check_p(p)?;
    let n = map.dim();
    if n != 3 {
        return Err(Error::Dimension { expected: 3, got: n });
    }
    let big_k = qr_constant_linear(&map.a)?;
    let c = c_theorem1(n, big_k, p)?;
    let norm_f = hardy_norm_sphere(|x| map.eval(x).iter().map(|v| v * v).sum::<f64>().sqrt(), p, spec)?;
    let norm_f1 = hardy_norm_sphere(|x| map.first_component(x).abs(), p, spec)?;
    let b = map.center_value();
    let b_norm = b.iter().map(|v| v * v).sum::<f64>().sqrt();
    let lhs = norm_f.value.powf(p);
    let rhs = b_norm.powf(p) + c.powf(p) * (norm_f1.value.powf(p) - b[0].abs().powf(p));
    let norms = map.norms();
    Ok(VerificationReport::new("ball-first-component-bound", spec.into())
        .param("p", p)
        .param("K", big_k)
        .param("n", n as f64)
        .hypothesis("k_finite", big_k.is_finite())
        .diagnostic(
            "op_sq_dominates_mean",
            norms.op * norms.op >= norms.hilbert * norms.hilbert / n as f64 * (1.0 - 1e-12),
        )
        .diagnostic("degraded_quadrature", norm_f.degraded || norm_f1.degraded)
        .measure("norm_f_p", lhs)
        .measure("norm_f1_p", norm_f1.value.powf(p))
        .compare(lhs, rhs, c))
}

/// Parts a) (`‖Im f‖ ≤ c(p,K)‖Re f‖`) and b) (`‖f‖ ≤ d(p,K)‖Re f‖`).
pub fn check_theorem2(m: &Map, p: f64, spec: &QuadratureSpec) -> Result<[VerificationReport; 2]> {
    check_p(p)?;
    let qr = m.qr_bound(QR_RADII, QR_ANGLES)?;
    let theta = m.initial_angle();
    let init = initial_condition_ok(theta, p, qr.k_sup);
    let range_ok = m.range_avoids_negative_axis(QR_RADII, QR_ANGLES, DEFAULT_AXIS_MARGIN);
    let attains_zero = m.min_modulus(QR_RADII, QR_ANGLES) < DEFAULT_AXIS_MARGIN;
    let norms = boundary_norms(m, p, spec)?;
    let c = c_theorem2(p, qr.big_k)?;
    let d = d_theorem2(p, qr.big_k)?;
    let base = |id: &str| {
        VerificationReport::new(id, spec.into())
            .param("p", p)
            .param("K", qr.big_k)
            .param("k", qr.k_sup)
            .param("theta", theta.unwrap_or(0.0))
            .hypothesis("initial_angle", init.strict)
            .hypothesis("range_avoids_negative_axis", range_ok)
            .hypothesis("k_finite", qr.big_k.is_finite())
            .diagnostic("initial_condition_general", init.general)
            .diagnostic("f0_is_zero", theta.is_none())
            .diagnostic("attains_zero", attains_zero)
            .diagnostic("degraded_quadrature", norms.degraded)
            .measure("norm_f", norms.f)
            .measure("norm_u", norms.u)
            .measure("norm_v", norms.v)
    };
    Ok([
        base("half-plane-imaginary-bound").compare(norms.v, c * norms.u, c),
        base("half-plane-modulus-bound").compare(norms.f, d * norms.u, d),
    ])
}

/// Sector-map sharpness measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SharpnessProbe {
    pub measured_ratio: f64,
    pub bound: f64,
    pub gap: f64,
    /// `((1+k)/(1−k))·tan β`.
    pub closed_form_ratio: f64,
    pub norm_u: f64,
    pub norm_v: f64,
    /// `(1−k)cos β·sec(βp)^{1/p}`, the exact `‖u‖_p`.
    pub closed_form_norm_u: f64,
    /// Range and dilatation of the Fejér-truncated interior map.
    pub truncated_range_ok: bool,
    pub truncated_k_sup: f64,
}

/// Geometric levels toward each endpoint of `(0, π)`.
const SECTOR_LEVELS: usize = 64;
const SECTOR_NODES: usize = 32;

/// `(1/π)∫₀^π F(t) dt` for `F ~ t^{−a}` at 0 and `F ~ (π−t)^{b}` at π.
fn graded_half_circle_mean(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
    let (x, w) = gauss_legendre::<f64>(SECTOR_NODES);
    let mut terms = Vec::with_capacity(2 * SECTOR_LEVELS * SECTOR_NODES + 2);
    for j in 0..SECTOR_LEVELS {
        let hi = FRAC_PI_2 * 0.5f64.powi(j as i32);
        let lo = 0.5 * hi;
        let (mid, half) = (0.5 * (hi + lo), 0.5 * (hi - lo));
        for (&xi, &wi) in x.iter().zip(&w) {
            let tau = mid + half * xi;
            terms.push(half * wi * f(tau));
            terms.push(half * wi * f(PI - tau));
        }
    }
    // tails below the finest level, from the local power law
    let delta = FRAC_PI_2 * 0.5f64.powi(SECTOR_LEVELS as i32);
    terms.push(f(delta) * delta / (1.0 - a));
    terms.push(f(PI - delta) * delta / (1.0 + b));
    pairwise_sum(&terms) / PI
}

pub fn sharpness_probe(
    p: f64,
    k: f64,
    beta_fraction: f64,
    truncation_degree: usize,
    _spec: &QuadratureSpec,
) -> Result<SharpnessProbe> {
    check_p(p)?;
    if !(0.0..=0.5).contains(&k) {
        return Err(Error::Domain {
            name: "k",
            value: k,
            domain: "[0, 0.5]",
        });
    }
    if !(beta_fraction > 0.0 && beta_fraction < 1.0) {
        return Err(Error::Domain {
            name: "beta_fraction",
            value: beta_fraction,
            domain: "(0, 1), i.e. beta·p < pi/2",
        });
    }
    let beta = beta_fraction * PI / (2.0 * p);
    let boundary = |t: f64| -> C {
        let g = sector_boundary_value(beta, t).unwrap_or(C::new(f64::NAN, f64::NAN));
        g - g.conj() * k
    };
    let a = 2.0 * beta * p / PI;
    let mean_u = graded_half_circle_mean(|t| boundary(t).re.abs().powf(p), a, a);
    let mean_v = graded_half_circle_mean(|t| boundary(t).im.abs().powf(p), a, a);
    let (norm_u, norm_v) = (mean_u.powf(1.0 / p), mean_v.powf(1.0 / p));
    let big_k = big_k_from_k(k);
    let bound = c_theorem2(p, big_k)?;
    let measured_ratio = norm_v / norm_u;

    let g = sector_series_fejer(beta, truncation_degree)?;
    let truncated = Map::new(g.clone(), g.scale(C::new(-k, 0.0)));
    let truncated_range_ok = truncated.range_avoids_negative_axis(QR_RADII, QR_ANGLES, DEFAULT_AXIS_MARGIN);
    let truncated_k_sup = truncated
        .qr_bound(QR_RADII, QR_ANGLES)
        .map(|q| q.k_sup)
        .unwrap_or(f64::NAN);
    Ok(SharpnessProbe {
        measured_ratio,
        bound,
        gap: bound - measured_ratio,
        closed_form_ratio: big_k * beta.tan(),
        norm_u,
        norm_v,
        closed_form_norm_u: (1.0 - k) * beta.cos() * (1.0 / (beta * p).cos()).powf(1.0 / p),
        truncated_range_ok,
        truncated_k_sup,
    })
}

pub fn sharpness_report(
    p: f64,
    k: f64,
    beta_fraction: f64,
    degree: usize,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let s = sharpness_probe(p, k, beta_fraction, degree, spec)?;
    Ok(VerificationReport::new("sector-sharpness", spec.into())
        .param("p", p)
        .param("k", k)
        .param("K", big_k_from_k(k))
        .param("beta_fraction", beta_fraction)
        .param("degree", degree as f64)
        .hypothesis("truncated_range_avoids_negative_axis", s.truncated_range_ok)
        .diagnostic("truncated_dilatation_is_k", (s.truncated_k_sup - k).abs() <= 1e-12)
        .measure("measured_ratio", s.measured_ratio)
        .measure("closed_form_ratio", s.closed_form_ratio)
        .measure("gap", s.gap)
        .measure("norm_u", s.norm_u)
        .measure("closed_form_norm_u", s.closed_form_norm_u)
        .measure("norm_v", s.norm_v)
        .compare(s.measured_ratio, s.bound, s.bound))
}

fn uniform_disk(rng: &mut ChaCha8Rng) -> C {
    let r = rng.gen::<f64>().sqrt();
    C::from_polar(r, 2.0 * PI * rng.gen::<f64>())
}

/// Deterministic pseudo-random `k_max`-quasiregular maps.
///
/// `g` has coefficients uniform in the complex unit square scaled by
/// `1/(j+1)²`, with a real constant term so that `Im f(0) = 0`; with
/// `positive` the constant term is shifted by `1.1·max_{|z|=1}|g|`.
/// The dilatation is `ω = k_max·w` with `w` a uniform point of the disk or
/// `a + bz`, `|a| + |b| ≤ 1`.
pub fn random_qr_family(seed: u64, count: usize, degree: usize, k_max: f64, positive: bool) -> Result<Vec<Map>> {
    if degree > 16 || degree == 0 {
        return Err(Error::Domain {
            name: "degree",
            value: degree as f64,
            domain: "1..=16",
        });
    }
    if !(0.0..1.0).contains(&k_max) {
        return Err(Error::Domain {
            name: "k_max",
            value: k_max,
            domain: "[0, 1)",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        let mut coeffs = vec![C::new(rng.gen_range(-1.0..1.0), 0.0)];
        for j in 1..=degree {
            let c = C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
            coeffs.push(c / ((j + 1) * (j + 1)) as f64);
        }
        if positive {
            coeffs[0].re += 1.1 * ComplexSeries::new(coeffs.clone()).max_modulus_on_circle(1.0, QR_ANGLES);
        }
        let g = ComplexSeries::new(coeffs);
        let omega = if rng.gen::<bool>() {
            ComplexSeries::constant(uniform_disk(&mut rng) * k_max)
        } else {
            let lambda: f64 = rng.gen();
            let a = uniform_disk(&mut rng) * lambda;
            let b = uniform_disk(&mut rng) * (1.0 - lambda);
            ComplexSeries::new(vec![a * k_max, b * k_max])
        };
        out.push(Map::with_dilatation(g, &omega)?);
    }
    Ok(out)
}

/// Identity map of the ball in `R^n`: `‖I‖₂ = c_n(1, 2)·‖I₁‖₂` with `‖I₁‖₂² = 1/n`.
pub fn equality_case_identity(n: usize, spec: &QuadratureSpec) -> Result<VerificationReport> {
    let c = c_theorem1(n, 1.0, 2.0)?;
    let lhs = 1.0;
    let rhs = c * (1.0 / n as f64).sqrt();
    let mut report = VerificationReport::new("ball-identity-equality", spec.into())
        .param("n", n as f64)
        .param("p", 2.0)
        .param("K", 1.0)
        .diagnostic("equality_closed_form", (lhs / rhs - 1.0).abs() <= 1e-14)
        .measure("norm_identity_sq", lhs)
        .measure("norm_first_sq", 1.0 / n as f64);
    if n == 3 {
        let m: f64 = sphere_mean_3d(|x: &[f64; 3]| x[0] * x[0], spec)?;
        let err = (m - 1.0 / 3.0).abs();
        report = report
            .hypothesis("quadrature_cross_check", err <= 1e-12)
            .measure("quadrature_first_moment", m)
            .measure("quadrature_residual", err);
    }
    Ok(report.compare(lhs, rhs, c))
}

/// Planar maps for the Green-identity battery: `u` vanishing on curves
/// through the origin that meet every circle transversally, and `u > 0` on
/// the closed disk.
pub fn green_test_maps() -> Vec<(&'static str, Map)> {
    let s = |v: &[(f64, f64)]| ComplexSeries::new(v.iter().map(|&(a, b)| C::new(a, b)).collect());
    let m = |g: &[(f64, f64)], h: &[(f64, f64)]| Map::new(s(g), s(h));
    vec![
        ("re z", m(&[(0.0, 0.0), (1.0, 0.0)], &[])),
        ("re z^2", m(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], &[])),
        ("re z^3", m(&[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)], &[])),
        ("z + 0.2 z^3", m(&[(0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.2, 0.0)], &[])),
        (
            "z + 0.3 conj z",
            m(&[(0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.3, 0.0)]),
        ),
        (
            "mixed cubic",
            m(
                &[(0.0, 0.0), (0.5, 0.2), (0.0, 0.0), (0.1, 0.0)],
                &[(0.0, 0.0), (0.2, 0.0), (0.0, 0.1)],
            ),
        ),
        (
            "i z^8 + 0.3 conj z^8",
            m(
                &[(0.0, 0.0); 8].iter().copied().chain([(0.0, 1.0)]).collect::<Vec<_>>(),
                &[(0.0, 0.0); 8].iter().copied().chain([(0.3, 0.0)]).collect::<Vec<_>>(),
            ),
        ),
        (
            "z^2 + 0.1 z^4",
            m(&[(0.0, 0.0), (0.0, 0.0), (1.0, 0.0), (0.0, 0.0), (0.1, 0.0)], &[]),
        ),
        (
            "z^5 - 0.2 conj z^5",
            m(
                &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, 0.0)],
                &[(0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (-0.2, 0.0)],
            ),
        ),
        ("(1+i) z + 0.1 z^2", m(&[(0.0, 0.0), (1.0, 1.0), (0.1, 0.0)], &[])),
        (
            "z^4 + 0.2 z^6",
            m(
                &[
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (1.0, 0.0),
                    (0.0, 0.0),
                    (0.2, 0.0),
                ],
                &[],
            ),
        ),
        (
            "z - 0.15 z^2 conj-mix",
            m(&[(0.0, 0.0), (1.0, 0.0), (-0.15, 0.0)], &[(0.0, 0.0), (0.1, 0.1)]),
        ),
        ("2 + z", m(&[(2.0, 0.0), (1.0, 0.0)], &[])),
        (
            "3 + z^2 + 0.5 conj z",
            m(&[(3.0, 0.0), (0.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.5, 0.0)]),
        ),
        (
            "1.5 + 0.5 z + 0.3 z^4",
            m(&[(1.5, 0.0), (0.5, 0.0), (0.0, 0.0), (0.0, 0.0), (0.3, 0.0)], &[]),
        ),
        (
            "1.2 + 0.4 z^8",
            m(
                &[
                    (1.2, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.4, 0.5),
                ],
                &[],
            ),
        ),
        (
            "2 + z + 0.3 conj z^2",
            m(&[(2.0, 0.0), (1.0, 0.0)], &[(0.0, 0.0), (0.0, 0.0), (0.3, 0.0)]),
        ),
        (
            "1 + 0.3 z^3 + 0.2 conj z",
            m(
                &[(1.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.3, 0.0)],
                &[(0.0, 0.0), (0.2, 0.0)],
            ),
        ),
        (
            "4 + (1-i) z^5 + 0.5 conj z^6",
            m(
                &[(4.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (0.0, 0.0), (1.0, -1.0)],
                &[
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.0, 0.0),
                    (0.5, 0.0),
                ],
            ),
        ),
        ("1", m(&[(1.0, 0.0)], &[])),
    ]
}

/// Worst residual of the Green identity over one `p` for a set of maps.
pub fn green_identity_report(
    maps: &[(&str, Map)],
    p: f64,
    spec: &QuadratureSpec,
    schedule: &RegularizationSchedule<f64>,
    tolerance: f64,
) -> Result<VerificationReport> {
    let mut worst = 0.0f64;
    let mut monotone = true;
    let mut vanishing = 0usize;
    for (_, m) in maps {
        let (r, mono) = green_identity_with_monotonicity(m, p, spec, schedule)?;
        worst = worst.max(r.residual);
        monotone &= mono;
        if m.eval(C::new(0.0, 0.0)).u.abs() <= IM_F0_TOL {
            vanishing += 1;
        }
    }
    Ok(VerificationReport::new("green-identity-plane", spec.into())
        .param("p", p)
        .param("maps", maps.len() as f64)
        .hypothesis("eps_monotone", monotone)
        .measure("max_residual", worst)
        .measure("maps_with_u0_zero", vanishing as f64)
        .compare(worst, tolerance, 1.0))
}

/// Manufactured solutions `(w, Δw)` for the representation formula.
pub type Manufactured2d = (&'static str, fn(C) -> f64, fn(C) -> f64);
pub type Manufactured3d = (&'static str, fn(&[f64; 3]) -> f64, fn(&[f64; 3]) -> f64);

pub fn manufactured_2d(harmonic: bool) -> Vec<Manufactured2d> {
    if harmonic {
        vec![
            ("re z", |z| z.re, |_| 0.0),
            ("re z^3", |z| z.powu(3).re, |_| 0.0),
            ("im z^2", |z| (z * z).im, |_| 0.0),
        ]
    } else {
        vec![
            ("|z|^2", |z| z.norm_sqr(), |_| 4.0),
            ("|z|^4", |z| z.norm_sqr().powi(2), |z| 16.0 * z.norm_sqr()),
            ("x^3", |z| z.re.powi(3), |z| 6.0 * z.re),
        ]
    }
}

pub fn manufactured_3d(harmonic: bool) -> Vec<Manufactured3d> {
    if harmonic {
        vec![
            ("x1", |x| x[0], |_| 0.0),
            ("x1 x2", |x| x[0] * x[1], |_| 0.0),
            ("x1^2 - x2^2", |x| x[0] * x[0] - x[1] * x[1], |_| 0.0),
        ]
    } else {
        vec![
            ("|x|^2", |x| x[0] * x[0] + x[1] * x[1] + x[2] * x[2], |_| 6.0),
            ("x1^3", |x| x[0].powi(3), |x| 6.0 * x[0]),
            ("x1^2 x2", |x| x[0] * x[0] * x[1], |x| 2.0 * x[1]),
        ]
    }
}

/// Ten fixed interior points with `|x| ≤ 0.8` (the origin, the rim and in between).
pub fn representation_points(n: usize) -> Vec<Vec<f64>> {
    (0..10)
        .map(|i| {
            let r = 0.8 * i as f64 / 9.0;
            let a = 2.0 * PI * (0.137 + 0.31 * i as f64);
            let b = (0.3 + 0.17 * i as f64).cos();
            if n == 2 {
                vec![r * a.cos(), r * a.sin()]
            } else {
                let s = (1.0 - b * b).sqrt();
                vec![r * s * a.cos(), r * s * a.sin(), r * b]
            }
        })
        .collect()
}

/// Worst representation residual for dimension `n ∈ {2, 3}` over the
/// harmonic or forced manufactured set.
pub fn green_representation_report(
    n: usize,
    harmonic: bool,
    spec: &QuadratureSpec,
    tolerance: f64,
) -> Result<VerificationReport> {
    let points = representation_points(n);
    let mut worst = 0.0f64;
    for x in &points {
        if n == 2 {
            for (_, w, lap) in manufactured_2d(harmonic) {
                worst = worst.max(green_representation_residual_2d(w, lap, C::new(x[0], x[1]), spec)?);
            }
        } else if n == 3 {
            for (_, w, lap) in manufactured_3d(harmonic) {
                worst = worst.max(green_representation_residual_3d(w, lap, [x[0], x[1], x[2]], spec)?);
            }
        } else {
            return Err(Error::Dimension { expected: 3, got: n });
        }
    }
    Ok(VerificationReport::new(
        if harmonic {
            "green-representation-harmonic"
        } else {
            "green-representation-forced"
        },
        spec.into(),
    )
    .param("n", n as f64)
    .param("points", points.len() as f64)
    .measure("max_residual", worst)
    .compare(worst, tolerance, 1.0))
}

/// Step of the stencil oracle; Richardson extrapolation with `h` and `h/2`
/// makes it fourth order.
pub const STENCIL_STEP: f64 = 2e-3;

fn stencil(phi: impl Fn(C) -> f64 + Copy, z: C) -> Result<f64> {
    let coarse = finite_diff_laplacian_plane(phi, z, STENCIL_STEP)?;
    let fine = finite_diff_laplacian_plane(phi, z, STENCIL_STEP / 2.0)?;
    Ok((4.0 * fine - coarse) / 3.0)
}

/// Agreement of the three closed-form Laplacians with the stencil oracle on
/// random `(map, point)` pairs, plus the pointwise bounds
/// `|ΔRe f^p| ≤ 4kp(p−1)|f|^{p−2}|g′|²` and `Δ|u|^p ≥ p(p−1)(1−k)²|g′|²|u|^{p−2}`.
pub fn laplacian_report(seed: u64, maps: usize, points_per_map: usize) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = [0.0f64; 3];
    let (mut fut_ok, mut equ_ok) = (true, true);
    let mut pairs = 0usize;
    let mut used = 0usize;
    let mut drawn = 0usize;
    while used < maps {
        drawn += 1;
        if drawn > 100 * maps.max(1) {
            return Err(Error::Spec("no map with enough admissible sample points".into()));
        }
        let degree = rng.gen_range(2..=8);
        let coeffs: Vec<C> = (0..=degree)
            .map(|j| C::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)) / ((j + 1) * (j + 1)) as f64)
            .collect();
        let omega = C::from_polar(rng.gen_range(0.1..0.5), rng.gen_range(0.0..2.0 * PI));
        let m = Map::with_dilatation(ComplexSeries::new(coeffs), &ComplexSeries::constant(omega))?;
        let p = rng.gen_range(1.1..=2.0);
        // points away from zeros of f, u and g′ and from the branch cut of f^p;
        // a map with too few of them is replaced by the next draw
        let mut points = Vec::with_capacity(points_per_map);
        for _ in 0..2000 {
            if points.len() == points_per_map {
                break;
            }
            let z = C::from_polar(0.9 * rng.gen::<f64>().sqrt(), rng.gen_range(0.0..2.0 * PI));
            let v = m.eval(z);
            let (gp, _) = m.derivatives(z);
            if v.f.norm() > 0.1 && v.u.abs() > 0.1 && v.f.arg().abs() < PI - 0.1 && gp.norm() > 0.1 {
                points.push(z);
            }
        }
        if points.len() < points_per_map {
            continue;
        }
        used += 1;
        let k = m.qr_bound(QR_RADII, QR_ANGLES)?.k_sup;
        for z in points {
            pairs += 1;
            let v = m.eval(z);
            let (gp, _) = m.derivatives(z);
            let exact_f = laplacian_abs_f_p(&m, z, p)?;
            let exact_u = laplacian_abs_u_p(&m, z, p)?;
            let exact_re = laplacian_f_p_complex(&m, z, p)?;
            let fd_f = stencil(|w| m.f(w).norm().powf(p), z)?;
            let fd_u = stencil(|w| m.eval(w).u.abs().powf(p), z)?;
            let fd_re = stencil(|w| m.f(w).powf(p).re, z)?;
            worst[0] = worst[0].max((fd_f - exact_f).abs() / exact_f.abs());
            worst[1] = worst[1].max((fd_u - exact_u).abs() / exact_u.abs());
            // Re changes sign, so scale by the modulus of the complex expression
            worst[2] = worst[2].max((fd_re - exact_re.re).abs() / exact_re.norm());
            let r = v.f.norm();
            fut_ok &= exact_re.re.abs() <= 4.0 * k * p * (p - 1.0) * r.powf(p - 2.0) * gp.norm_sqr() * (1.0 + 1e-12);
            equ_ok &=
                exact_u >= p * (p - 1.0) * (1.0 - k).powi(2) * gp.norm_sqr() * v.u.abs().powf(p - 2.0) * (1.0 - 1e-12);
        }
    }
    let max = worst.iter().copied().fold(0.0, f64::max);
    Ok(
        VerificationReport::new("laplacian-formulas", GridMeta { angles: 0, radial: 0 })
            .param("seed", seed as f64)
            .param("pairs", pairs as f64)
            .param("step", STENCIL_STEP)
            .hypothesis("bound_re_f_p", fut_ok)
            .hypothesis("bound_abs_u_p", equ_ok)
            .measure("max_rel_err_abs_f_p", worst[0])
            .measure("max_rel_err_abs_u_p", worst[1])
            .measure("max_rel_err_re_f_p", worst[2])
            .compare(max, 1e-5, 1.0),
    )
}

/// Worst relative error of the closed-form constant identities over `samples` random parameters.
pub fn constant_identities_report(seed: u64, samples: usize) -> Result<VerificationReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let rel = |a: f64, b: f64| (a - b).abs() / b.abs().max(1.0);
    let mut worst = [0.0f64; 5];
    for _ in 0..samples {
        let p: f64 = rng.gen_range(1.01..=2.0);
        let big_k: f64 = rng.gen_range(1.0..10.0);
        let a = PI / (2.0 * p);
        worst[0] = worst[0].max(rel(c_theorem2(p, 1.0)?, a.tan()));
        worst[1] = worst[1].max(rel(d_theorem2(p, 1.0)?, 1.0 / a.cos()));
        worst[2] = worst[2].max(rel(c_theorem2(2.0, big_k)?, big_k));
        worst[4] = worst[4].max(rel(classical_constants(p)?.csc, 1.0 / a.cos()));
    }
    for n in 2..=10 {
        worst[3] = worst[3].max(rel(c_theorem1(n, 1.0, 2.0)?, (n as f64).sqrt()));
    }
    let max = worst.iter().copied().fold(0.0, f64::max);
    Ok(
        VerificationReport::new("constant-identities", GridMeta { angles: 0, radial: 0 })
            .param("seed", seed as f64)
            .param("samples", samples as f64)
            .measure("c_p_1_vs_tan", worst[0])
            .measure("d_p_1_vs_sec", worst[1])
            .measure("c_2_k_vs_k", worst[2])
            .measure("c_n_1_2_vs_sqrt_n", worst[3])
            .measure("csc_pbar_vs_sec_p", worst[4])
            .compare(max, 1e-13, 1.0),
    )
}

/// Sweep of [`check_theorem1_plane`] over a random family, summarized by the
/// worst ratio `‖f‖_p/(c₂‖u‖_p)`.
pub fn theorem1_sweep(
    seed: u64,
    samples: usize,
    degree: usize,
    p: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let family = random_qr_family(seed, samples, degree, k, false)?;
    let reports: Result<Vec<VerificationReport>> =
        family.par_iter().map(|m| check_theorem1_plane(m, p, spec)).collect();
    summarize("disk-real-part-bound-sweep", reports?, seed, p, k, spec)
}

/// Sweep of [`check_theorem2`] over the positive random family.
pub fn theorem2_sweep(
    seed: u64,
    samples: usize,
    degree: usize,
    p: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<[VerificationReport; 2]> {
    let family = random_qr_family(seed, samples, degree, k, true)?;
    let reports: Result<Vec<[VerificationReport; 2]>> = family.par_iter().map(|m| check_theorem2(m, p, spec)).collect();
    let reports = reports?;
    let (a, b): (Vec<_>, Vec<_>) = reports.into_iter().map(|[a, b]| (a, b)).unzip();
    Ok([
        summarize("half-plane-imaginary-bound-sweep", a, seed, p, k, spec)?,
        summarize("half-plane-modulus-bound-sweep", b, seed, p, k, spec)?,
    ])
}

fn summarize(
    id: &str,
    reports: Vec<VerificationReport>,
    seed: u64,
    p: f64,
    k: f64,
    spec: &QuadratureSpec,
) -> Result<VerificationReport> {
    let applicable: Vec<&VerificationReport> = reports.iter().filter(|r| r.applicable).collect();
    let failures = applicable.iter().filter(|r| !r.pass).count();
    let worst = applicable.iter().filter_map(|r| r.ratio).fold(0.0, f64::max);
    let max_constant = applicable.iter().map(|r| r.constant).fold(1.0, f64::max);
    let two_term = reports
        .iter()
        .all(|r| r.diagnostics.get("two_term_form").copied().unwrap_or(true));
    Ok(VerificationReport::new(id, spec.into())
        .param("seed", seed as f64)
        .param("p", p)
        .param("k_max", k)
        .param("samples", reports.len() as f64)
        .diagnostic("two_term_form", two_term)
        .measure("applicable", applicable.len() as f64)
        .measure("not_applicable", (reports.len() - applicable.len()) as f64)
        .measure("failures", failures as f64)
        .compare(worst, 1.0, max_constant))
}

/// `diag(1, 1, s)` on the ball of `R³`.
pub fn ball_diagonal_map(s: f64) -> Result<LinearBallMap<f64>> {
    LinearBallMap::new(Matrix::diagonal(&[1.0, 1.0, s]), vec![0.0; 3])
}

/// Settings of [`suite`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SuiteConfig {
    pub seed: u64,
    pub samples: usize,
    pub degree: usize,
    pub n_grid: usize,
    pub spec: QuadratureSpec,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        Self {
            seed: 7,
            samples: 200,
            degree: 8,
            n_grid: 100_000,
            spec: QuadratureSpec::default(),
        }
    }
}

pub const SUITE_P: [f64; 5] = [1.1, 1.25, 1.5, 1.75, 2.0];
pub const SWEEP_P: [f64; 3] = [1.25, 1.5, 2.0];
pub const SWEEP_K: [f64; 3] = [0.0, 0.1, 0.3];
pub const GREEN_P: [f64; 3] = [1.2, 1.5, 2.0];
pub const SHARP_K: [f64; 3] = [0.0, 0.05, 0.1];
pub const SHARP_BF: [f64; 3] = [0.5, 0.9, 0.99];
pub const BALL_S: [f64; 4] = [1.0, 1.5, 2.0, 4.0];
pub const SHARP_DEGREE: usize = 32;

/// The full battery, in a fixed order.
pub fn suite(cfg: &SuiteConfig) -> Result<Vec<VerificationReport>> {
    let spec = &cfg.spec;
    let mut out = Vec::new();
    for &p in &SUITE_P {
        out.push(pichorides_report(p, cfg.n_grid)?);
    }
    for &p in &SUITE_P {
        out.push(verbitsky_report(p, cfg.n_grid)?);
    }
    out.push(constant_identities_report(cfg.seed, 50)?);
    let maps = green_test_maps();
    let schedule = RegularizationSchedule::default();
    for &p in &GREEN_P {
        out.push(green_identity_report(&maps, p, spec, &schedule, 1e-6)?);
    }
    for n in [2, 3] {
        out.push(green_representation_report(n, true, spec, 1e-8)?);
        out.push(green_representation_report(n, false, spec, 1e-6)?);
    }
    out.push(laplacian_report(cfg.seed, 30, 10)?);
    for (i, &p) in SWEEP_P.iter().enumerate() {
        for (j, &k) in SWEEP_K.iter().enumerate() {
            let seed = cfg.seed.wrapping_add((10 * i + j) as u64);
            out.push(theorem1_sweep(seed, cfg.samples, cfg.degree, p, k, spec)?);
            out.extend(theorem2_sweep(seed, cfg.samples, cfg.degree, p, k, spec)?);
        }
    }
    for &s in &BALL_S {
        for p in [1.5, 2.0] {
            out.push(check_theorem1_ball(&ball_diagonal_map(s)?, p, spec)?);
        }
    }
    for n in [2, 3, 7] {
        out.push(equality_case_identity(n, spec)?);
    }
    for &p in &SWEEP_P {
        for &k in &SHARP_K {
            for &bf in &SHARP_BF {
                out.push(sharpness_report(p, k, bf, SHARP_DEGREE, spec)?);
            }
        }
        out.push(sharpness_report(p, 0.0, 0.999, SHARP_DEGREE, spec)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    fn real_map(g: &[f64], h: &[f64]) -> Map {
        Map::new(ComplexSeries::from_real(g), ComplexSeries::from_real(h))
    }

    #[test]
    fn pichorides_examples() {
        let s = verify_pointwise_pichorides(2.0, 100_000).unwrap();
        assert!(s.gap.max_abs <= 1e-14, "{}", s.gap.max_abs);
        for p in [1.1, 1.5] {
            let s = verify_pointwise_pichorides(p, 100_000).unwrap();
            assert!(s.gap.min_value >= -1e-12);
            assert!(s.extension_min >= -1e-12);
        }
        assert!(verify_pointwise_pichorides(1.5, 999).is_err());
    }

    #[test]
    fn verbitsky_examples() {
        assert!(verify_pointwise_verbitsky(2.0, 100_000).unwrap().max_abs <= 1e-14);
        for p in [1.25, 1.5] {
            assert!(verify_pointwise_verbitsky(p, 100_000).unwrap().min_value >= -1e-12);
        }
    }

    #[test]
    fn disk_bound_examples() {
        let r = check_theorem1_plane(&real_map(&[0.0, 1.0], &[]), 2.0, &spec()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-14 && (r.rhs - 1.0).abs() < 1e-12);
        assert!(r.pass);
        let k: f64 = 0.3;
        let r = check_theorem1_plane(&real_map(&[0.0, 1.0], &[0.0, k]), 2.0, &spec()).unwrap();
        assert!((r.lhs - (1.0 + k * k).sqrt()).abs() < 1e-14);
        // u = (1+k)x, ‖u‖₂² = (1+k)²/2
        let big_k = big_k_from_k(k);
        let expect = c_theorem1(2, big_k, 2.0).unwrap() * (1.0 + k) / 2f64.sqrt();
        assert!((r.rhs - expect).abs() < 1e-12 && r.pass);
        let r = check_theorem1_plane(&real_map(&[1.0], &[]), 1.5, &spec()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-14 && r.pass);
    }

    #[test]
    fn ball_bound_examples() {
        let id = ball_diagonal_map(1.0).unwrap();
        let r = check_theorem1_ball(&id, 2.0, &spec()).unwrap();
        assert!((r.lhs - 1.0).abs() < 1e-13 && (r.rhs - 1.0).abs() < 1e-13 && r.pass);
        let r = check_theorem1_ball(&ball_diagonal_map(2.0).unwrap(), 2.0, &spec()).unwrap();
        assert!((r.lhs - 2.0).abs() < 1e-13 && (r.rhs - 3.0).abs() < 1e-13 && r.pass);
        let singular =
            LinearBallMap::new(Matrix::from_row_major(3, vec![0.0; 9]).unwrap(), vec![1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            check_theorem1_ball(&singular, 2.0, &spec()),
            Err(Error::SingularMatrix { .. })
        ));
    }

    #[test]
    fn half_plane_bound_examples() {
        let [a, b] = check_theorem2(&real_map(&[2.0, 1.0], &[]), 2.0, &spec()).unwrap();
        assert!((a.lhs - 0.5f64.sqrt()).abs() < 1e-13);
        assert!((a.rhs - 4.5f64.sqrt()).abs() < 1e-13);
        assert!(a.pass && b.pass);
        let [a, b] = check_theorem2(&real_map(&[0.0, 1.0], &[]), 2.0, &spec()).unwrap();
        assert!(!a.applicable && !a.pass && !a.is_failure());
        assert!(!b.applicable);
        assert!(!a.hypotheses["range_avoids_negative_axis"]);
    }

    #[test]
    fn half_plane_bound_on_sector_family() {
        let p = 1.5;
        let beta = 0.95 * PI / (2.0 * p);
        let g = sector_series_fejer(beta, 64).unwrap();
        let m = Map::new(g.clone(), g.scale(C::new(-0.05, 0.0)));
        let [a, _] = check_theorem2(&m, p, &spec()).unwrap();
        assert!(a.applicable && a.pass);
    }

    #[test]
    fn sharpness_examples() {
        let s = sharpness_probe(2.0, 0.0, 0.5, 16, &spec()).unwrap();
        assert!((s.measured_ratio - (PI / 8.0).tan()).abs() < 1e-12);
        let s = sharpness_probe(2.0, 0.05, 0.99, 16, &spec()).unwrap();
        let big_k = 21.0 / 19.0;
        assert!((s.measured_ratio - big_k * (0.99 * PI / 4.0).tan()).abs() < 1e-12);
        assert!((s.bound - big_k).abs() < 1e-14 && s.gap > 0.0);
        assert!(sharpness_probe(1.5, 0.0, 1.0, 16, &spec()).is_err());
        assert!(sharpness_probe(1.5, 0.6, 0.5, 16, &spec()).is_err());
    }

    #[test]
    fn sharpness_norms_match_closed_form() {
        // mean |cot(t/2)|^a = sec(πa/2), so ‖u‖_p is known exactly
        for &(p, k, bf) in &[(1.25, 0.0, 0.5), (1.5, 0.1, 0.9), (2.0, 0.05, 0.99), (1.25, 0.0, 0.999)] {
            let s = sharpness_probe(p, k, bf, 16, &spec()).unwrap();
            assert!(
                (s.norm_u - s.closed_form_norm_u).abs() <= 1e-9 * s.closed_form_norm_u,
                "{p} {k} {bf}: {} vs {}",
                s.norm_u,
                s.closed_form_norm_u
            );
        }
    }

    #[test]
    fn sharpness_gap_shrinks() {
        for &p in &SWEEP_P {
            let mut last = f64::INFINITY;
            for bf in [0.5, 0.9, 0.99, 0.999] {
                let s = sharpness_probe(p, 0.0, bf, 16, &spec()).unwrap();
                assert!(s.gap < last && s.gap >= 0.0);
                last = s.gap;
            }
        }
    }

    #[test]
    fn random_family_contract() {
        let a = random_qr_family(3, 5, 6, 0.3, false).unwrap();
        let b = random_qr_family(3, 5, 6, 0.3, false).unwrap();
        assert_eq!(a, b);
        assert!(random_qr_family(3, 0, 6, 0.3, false).unwrap().is_empty());
        for m in random_qr_family(11, 20, 8, 0.3, true).unwrap() {
            assert!(m.qr_bound(QR_RADII, QR_ANGLES).unwrap().k_sup <= 0.3 + 1e-12);
            assert!(m.eval(C::new(0.0, 0.0)).v.abs() <= IM_F0_TOL);
        }
        assert!(random_qr_family(1, 1, 17, 0.3, false).is_err());
        assert!(random_qr_family(1, 1, 4, 1.0, false).is_err());
    }

    #[test]
    fn equality_examples() {
        for n in [2, 3, 7] {
            let r = equality_case_identity(n, &spec()).unwrap();
            assert!(r.pass && (r.ratio.unwrap() - 1.0).abs() <= 1e-14, "n={n}");
        }
        let r = equality_case_identity(3, &spec()).unwrap();
        assert!(r.measured["quadrature_residual"] <= 1e-12);
    }

    #[test]
    fn riesz_at_p2_for_analytic_samples() {
        // v(0) = 0 analytic samples: ‖v‖₂ ≤ ‖u‖₂ with constant 1
        for m in random_qr_family(5, 30, 6, 0.0, true).unwrap() {
            let [a, _] = check_theorem2(&m, 2.0, &spec()).unwrap();
            assert!(a.measured["norm_v"] <= a.measured["norm_u"] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn report_roundtrip() {
        let r = check_theorem1_plane(&real_map(&[0.0, 1.0], &[0.0, 0.2]), 1.5, &spec()).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&json).unwrap();
        assert_eq!(r, back);
    }
}
