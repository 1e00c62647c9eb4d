//! Closed forms of the Riesz-type constants for harmonic quasiregular maps
//! and the classical Pichorides/Verbitsky constants they reduce to.
//!
//! All forms are simplified so that no quotient of two large numbers occurs
//! (`tan^p` instead of `tan^{p−1}/cot`).

use serde::{Deserialize, Serialize};

use crate::error::{check_p, Error, Result};
use crate::scalar::Real;

fn check_big_k(big_k: f64) -> Result<()> {
    if big_k.is_finite() && big_k >= 1.0 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "K",
            value: big_k,
            domain: "[1, inf)",
        })
    }
}

fn check_n(n: usize) -> Result<()> {
    if n >= 2 {
        Ok(())
    } else {
        Err(Error::Domain {
            name: "n",
            value: n as f64,
            domain: "n >= 2",
        })
    }
}

fn half_angle<T: Real>(p: T) -> T {
    T::FRAC_PI_2() / p
}

/// `A(p) = tan^p(π/2p)`, `B(p) = sin^{p−1}(π/2p)/cos(π/2p)`.
pub fn pichorides_ab<T: Real>(p: T) -> Result<(T, T)> {
    check_p(p.as_f64())?;
    let a = half_angle(p);
    Ok((a.tan().powf(p), a.sin().powf(p - T::one()) / a.cos()))
}

/// `C(p) = cos(π/2p)^{−p}`, `D(p) = tan(π/2p)`.
pub fn verbitsky_cd<T: Real>(p: T) -> Result<(T, T)> {
    check_p(p.as_f64())?;
    let a = half_angle(p);
    Ok((a.cos().powf(-p), a.tan()))
}

/// `c_n(K, p) = [(1 + (n−1)K²)(1 + (p−2)/(nK²))/(p−1)]^{1/p}`.
pub fn c_theorem1<T: Real>(n: usize, big_k: T, p: T) -> Result<T> {
    check_n(n)?;
    check_big_k(big_k.as_f64())?;
    check_p(p.as_f64())?;
    let nf = T::from_count(n);
    let k2 = big_k * big_k;
    let radicand = (T::one() + (nf - T::one()) * k2) * (T::one() + (p - T::lit(2.0)) / (nf * k2)) / (p - T::one());
    Ok(radicand.powf(p.recip()))
}

/// `c(p, K) = (A(p) + (K² − 1)·B(p))^{1/p}`.
pub fn c_theorem2<T: Real>(p: T, big_k: T) -> Result<T> {
    check_big_k(big_k.as_f64())?;
    let (a, b) = pichorides_ab(p)?;
    Ok((a + (big_k * big_k - T::one()) * b).powf(p.recip()))
}

/// `d(p, K) = (C(p) + (K² − 1)·D(p))^{1/p}`.
pub fn d_theorem2<T: Real>(p: T, big_k: T) -> Result<T> {
    check_big_k(big_k.as_f64())?;
    let (c, d) = verbitsky_cd(p)?;
    Ok((c + (big_k * big_k - T::one()) * d).powf(p.recip()))
}

/// `sec`, `csc`, `cot` of `π/(2p̄)` with `p̄ = max{p, p/(p−1)}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ClassicalConstants<T> {
    pub sec: T,
    pub csc: T,
    pub cot: T,
    pub pbar: T,
}

pub fn classical_constants<T: Real>(p: T) -> Result<ClassicalConstants<T>> {
    #[allow(clippy::neg_cmp_op_on_partial_ord)] // also rejects NaN
    if !(p > T::one()) || !p.is_finite() {
        return Err(Error::Domain {
            name: "p",
            value: p.as_f64(),
            domain: "(1, inf)",
        });
    }
    let pbar = p.max(p / (p - T::one()));
    let a = half_angle(pbar);
    Ok(ClassicalConstants {
        sec: a.cos().recip(),
        csc: a.sin().recip(),
        cot: a.tan().recip(),
        pbar,
    })
}

/// Outcome of the initial-value hypotheses on `θ = arg f(0)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct InitialCondition {
    /// `cos(pθ) + (4k/(1−k)²)|cos θ|^p ≥ 0`.
    pub general: bool,
    /// `|θ| < π/(2p)`.
    pub strict: bool,
}

/// `None` stands for `f(0) = 0`, which satisfies both conditions.
pub fn initial_condition_ok<T: Real>(theta: Option<T>, p: T, k: T) -> InitialCondition {
    let Some(theta) = theta else {
        return InitialCondition {
            general: true,
            strict: true,
        };
    };
    let weight = T::lit(4.0) * k / ((T::one() - k) * (T::one() - k));
    let lhs = (p * theta).cos() + weight * theta.cos().abs().powf(p);
    InitialCondition {
        // cos(pθ) at the exact zero comes out as ~1e-16 of either sign
        general: lhs >= -T::lit(4.0) * T::epsilon(),
        strict: theta.abs() < half_angle(p),
    }
}

/// Validated `(p, K, n)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantQuery {
    pub p: f64,
    pub big_k: f64,
    pub n: usize,
}

/// Every constant for one query, keyed as in the `constants` CLI output.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConstantTable {
    #[serde(rename = "A")]
    pub a: f64,
    #[serde(rename = "B")]
    pub b: f64,
    #[serde(rename = "C")]
    pub c: f64,
    #[serde(rename = "D")]
    pub d: f64,
    pub c_thm1: f64,
    pub c_thm2: f64,
    pub d_thm2: f64,
    pub sec: f64,
    pub csc: f64,
    pub cot: f64,
    pub pbar: f64,
}

impl ConstantQuery {
    pub fn new(p: f64, big_k: f64, n: usize) -> Result<Self> {
        check_p(p)?;
        check_big_k(big_k)?;
        check_n(n)?;
        Ok(Self { p, big_k, n })
    }

    /// `k = (K−1)/(K+1)`.
    pub fn k(&self) -> f64 {
        crate::planar::k_from_big_k(self.big_k)
    }

    pub fn table(&self) -> Result<ConstantTable> {
        let (a, b) = pichorides_ab(self.p)?;
        let (c, d) = verbitsky_cd(self.p)?;
        let cl = classical_constants(self.p)?;
        Ok(ConstantTable {
            a,
            b,
            c,
            d,
            c_thm1: c_theorem1(self.n, self.big_k, self.p)?,
            c_thm2: c_theorem2(self.p, self.big_k)?,
            d_thm2: d_theorem2(self.p, self.big_k)?,
            sec: cl.sec,
            csc: cl.csc,
            cot: cl.cot,
            pbar: cl.pbar,
        })
    }
}

/// Slow 128-bit evaluation of the same constants, for cross-checking the
/// double-precision forms.
pub mod extended {
    use astro_float::{BigFloat, Consts, Radix, RoundingMode};

    const PREC: usize = 128;
    // Correct rounding loops forever on exactly representable results
    // (e.g. 2.25^0.5); 128 bits without final rounding is plenty here.
    const RM: RoundingMode = RoundingMode::None;

    struct Ctx {
        cc: Consts,
    }

    impl Ctx {
        fn new() -> Self {
            Self {
                cc: Consts::new().expect("astro-float constant cache"),
            }
        }

        fn num(&self, x: f64) -> BigFloat {
            BigFloat::from_f64(x, PREC)
        }

        fn half_angle(&mut self, p: f64) -> BigFloat {
            let pi = self.cc.pi(PREC, RM);
            pi.div(&self.num(2.0 * p), PREC, RM)
        }

        fn pow(&mut self, x: &BigFloat, e: f64) -> BigFloat {
            x.pow(&self.num(e), PREC, RM, &mut self.cc)
        }

        fn decimal(&mut self, x: &BigFloat) -> f64 {
            x.format(Radix::Dec, RM, &mut self.cc)
                .ok()
                .and_then(|s| s.parse::<f64>().ok())
                .unwrap_or(f64::NAN)
        }

        /// `(A, B, C, D)` at 128 bits.
        fn abcd(&mut self, p: f64) -> [BigFloat; 4] {
            let a = self.half_angle(p);
            let (s, c, t) = (
                a.sin(PREC, RM, &mut self.cc),
                a.cos(PREC, RM, &mut self.cc),
                a.tan(PREC, RM, &mut self.cc),
            );
            let big_a = self.pow(&t, p);
            let big_b = self.pow(&s, p - 1.0).div(&c, PREC, RM);
            let big_c = self.pow(&c, -p);
            [big_a, big_b, big_c, t]
        }

        fn combine(&mut self, lead: &BigFloat, slope: &BigFloat, big_k: f64, p: f64) -> f64 {
            let k2m1 = self
                .num(big_k)
                .mul(&self.num(big_k), PREC, RM)
                .sub(&self.num(1.0), PREC, RM);
            let sum = lead.add(&k2m1.mul(slope, PREC, RM), PREC, RM);
            let root = self.pow(&sum, 1.0 / p);
            self.decimal(&root)
        }
    }

    /// `(A(p), B(p))`.
    pub fn pichorides_ab(p: f64) -> (f64, f64) {
        let mut ctx = Ctx::new();
        let [a, b, _, _] = ctx.abcd(p);
        (ctx.decimal(&a), ctx.decimal(&b))
    }

    /// `(C(p), D(p))`.
    pub fn verbitsky_cd(p: f64) -> (f64, f64) {
        let mut ctx = Ctx::new();
        let [_, _, c, d] = ctx.abcd(p);
        (ctx.decimal(&c), ctx.decimal(&d))
    }

    /// `c(p, K)`; `1/p` enters as a double, which is exact enough for a cross-check.
    pub fn c_theorem2(p: f64, big_k: f64) -> f64 {
        let mut ctx = Ctx::new();
        let [a, b, _, _] = ctx.abcd(p);
        ctx.combine(&a, &b, big_k, p)
    }

    /// `d(p, K)`.
    pub fn d_theorem2(p: f64, big_k: f64) -> f64 {
        let mut ctx = Ctx::new();
        let [_, _, c, d] = ctx.abcd(p);
        ctx.combine(&c, &d, big_k, p)
    }
}
