//! Direct evaluation of the normalized sinc, `h = sinc²`, and the periodic
//! lattice sum
//!
//! ```text
//! f_r(x) = Σ_{m ∈ Z} |sinc(x + m)|^{2r},   x ∈ [0, 1],  r > 1/2.
//! ```
//!
//! # Truncation
//!
//! With `s = 2r` and `x ∈ [0, 1]` every term with `x + m ≠ 0` equals
//! `σ · |x + m|^{-s}` where `σ = (|sin πx| / π)^s`, because
//! `|sin π(x + m)| = |sin πx|`. Keeping `|m| ≤ M`, the omitted mass is
//!
//! ```text
//! σ · [ Σ_{m ≥ M+1} (m + x)^{-s} + Σ_{k ≥ M+1} (k - x)^{-s} ].
//! ```
//!
//! For each one-sided sum `Σ_{m ≥ M+1} g(m)` with `g(t) = (t + a)^{-s}`
//! (`a = ±x`), `g` is convex and decreasing, so Hermite–Hadamard gives
//! `g(m) ≤ ∫_{m-1/2}^{m+1/2} g` with a per-cell defect of at most
//! `g''(m - 1/2) / 24`. Summing the defects and comparing the sum of the
//! decreasing `g''` with its integral yields
//!
//! ```text
//! 0 ≤ I(a) - Σ_{m ≥ M+1} g(m) ≤ E(a),
//! I(a) = v^{1-s} / (s - 1),
//! E(a) = [ s(s+1) v^{-s-2} + s v^{-s-1} ] / 24,      v = M + 1/2 + a.
//! ```
//!
//! The partial sum is therefore corrected by `σ·(I(x) + I(-x) - (E(x) + E(-x))/2)`
//! and the reported `tail_bound` is `σ·(E(x) + E(-x))/2`, a proven bound on
//! `|f_r(x) - value|` up to floating-point rounding. The cruder bound
//! `2 π^{-s} [M^{-s} + M^{1-s}/(s-1)]` (integral comparison without the
//! midpoint correction) is exposed as [`crude_tail_bound`]; at `r = 1` it
//! would need `M ≈ 10^{11}` terms for a `10^{-12}` budget.

use crate::error::{domain, Error, Result};
use std::f64::consts::PI;

/// Exponent parameters at or below this value are rejected: the lattice sum
/// diverges at `r = 1/2`.
pub const R_FLOOR: f64 = 0.501;

/// Below this magnitude `sinc` switches to its Taylor series.
const SINC_SERIES_CUTOFF: f64 = 1e-4;

/// `sin(πx)` with exact reduction of the argument modulo 2.
pub fn sin_pi(x: f64) -> f64 {
    // x - 2·round(x/2) is exact for all finite x
    let y = x - 2.0 * (0.5 * x).round();
    // y ∈ [-1, 1]; fold into [-1/2, 1/2] using sin(π(1 - y)) = sin(πy)
    if y > 0.5 {
        (PI * (1.0 - y)).sin()
    } else if y < -0.5 {
        (PI * (-1.0 - y)).sin()
    } else {
        (PI * y).sin()
    }
}

/// `cos(πx)` with exact reduction of the argument modulo 2.
pub fn cos_pi(x: f64) -> f64 {
    let y = (x - 2.0 * (0.5 * x).round()).abs();
    // y ∈ [0, 1]; cos(πy) = sin(π(1/2 - y)), exact subtraction near 1/2
    if y <= 0.25 {
        (PI * y).cos()
    } else if y <= 0.75 {
        (PI * (0.5 - y)).sin()
    } else {
        -(PI * (1.0 - y)).cos()
    }
}

/// Normalized sinc, `sin(πx)/(πx)` with the removable singularity filled in.
pub fn sinc(x: f64) -> Result<f64> {
    if !x.is_finite() {
        return domain(format!("sinc: non-finite argument {x}"));
    }
    Ok(sinc_unchecked(x))
}

pub(crate) fn sinc_unchecked(x: f64) -> f64 {
    if x.abs() < SINC_SERIES_CUTOFF {
        let t = (PI * x) * (PI * x);
        1.0 - t / 6.0 + t * t / 120.0
    } else {
        sin_pi(x) / (PI * x)
    }
}

/// `h(x) = sinc(x)²`.
pub fn h(x: f64) -> Result<f64> {
    let s = sinc(x)?;
    Ok(s * s)
}

pub(crate) fn h_unchecked(x: f64) -> f64 {
    let s = sinc_unchecked(x);
    s * s
}

/// Which evaluation route a caller asks for.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EvalMode {
    Direct,
    Hurwitz,
    Polynomial,
    #[default]
    Consensus,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig {
    target_tol: f64,
    max_terms: u64,
    mode: EvalMode,
}

impl EvalConfig {
    pub fn new(target_tol: f64, max_terms: u64, mode: EvalMode) -> Result<Self> {
        if !(target_tol > 0.0) || !target_tol.is_finite() {
            return domain(format!("target_tol must be positive, got {target_tol}"));
        }
        if max_terms < 1 {
            return domain("max_terms must be at least 1");
        }
        Ok(Self {
            target_tol,
            max_terms,
            mode,
        })
    }

    /// Direct-summation config with the given tolerance and a generous term cap.
    pub fn with_tol(target_tol: f64) -> Result<Self> {
        Self::new(target_tol, 10_000_000, EvalMode::Direct)
    }

    pub fn target_tol(&self) -> f64 {
        self.target_tol
    }

    pub fn max_terms(&self) -> u64 {
        self.max_terms
    }

    pub fn mode(&self) -> EvalMode {
        self.mode
    }
}

impl Default for EvalConfig {
    fn default() -> Self {
        Self {
            target_tol: 1e-13,
            max_terms: 10_000_000,
            mode: EvalMode::Consensus,
        }
    }
}

/// An exponent `r` and a point `x ∈ [0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    r: f64,
    x: f64,
}

impl EvalPoint {
    pub fn new(r: f64, x: f64) -> Result<Self> {
        if !r.is_finite() || r <= R_FLOOR {
            return domain(format!("r must exceed {R_FLOOR}, got {r}"));
        }
        if !(0.0..=1.0).contains(&x) {
            return domain(format!("x must lie in [0, 1], got {x}"));
        }
        Ok(Self { r, x })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn x(&self) -> f64 {
        self.x
    }
}

/// Result of a truncated direct summation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DirectSum {
    pub value: f64,
    /// Proven bound on `|f_r(x) - value|` from truncation.
    pub tail_bound: f64,
    /// Truncation index `M`; terms `|m| ≤ M` were summed.
    pub terms: u64,
}

/// Neumaier-compensated accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    comp: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn total(&self) -> f64 {
        self.sum + self.comp
    }
}

/// `2 π^{-s} [M^{-s} + M^{1-s}/(s-1)]` with `s = 2r`: a bound on the mass
/// omitted by the plain partial sum over `|m| ≤ M`.
pub fn crude_tail_bound(r: f64, m: u64) -> f64 {
    let s = 2.0 * r;
    let mf = m as f64;
    2.0 * PI.powf(-s) * (mf.powf(-s) + mf.powf(1.0 - s) / (s - 1.0))
}

struct TailModel {
    s: f64,
    sigma: f64,
    x: f64,
}

impl TailModel {
    fn new(r: f64, x: f64) -> Self {
        let s = 2.0 * r;
        let sigma = (sin_pi(x).abs() / PI).powf(s);
        Self { s, sigma, x }
    }

    fn side(&self, m: u64, a: f64) -> (f64, f64) {
        let s = self.s;
        let v = m as f64 + 0.5 + a;
        let integral = v.powf(1.0 - s) / (s - 1.0);
        let defect = (s * (s + 1.0) * v.powf(-s - 2.0) + s * v.powf(-s - 1.0)) / 24.0;
        (integral, defect)
    }

    /// (tail estimate, bound on its error) for truncation index `m`.
    fn tail(&self, m: u64) -> (f64, f64) {
        if self.sigma == 0.0 {
            return (0.0, 0.0);
        }
        let (ip, ep) = self.side(m, self.x);
        let (im, em) = self.side(m, -self.x);
        let half_defect = 0.5 * (ep + em);
        (
            self.sigma * (ip + im - half_defect),
            self.sigma * half_defect,
        )
    }
}

/// Smallest `M ∈ [1, max_terms]` meeting the tolerance.
fn choose_truncation(model: &TailModel, tol: f64, max_terms: u64) -> Result<u64> {
    let (_, worst) = model.tail(max_terms);
    if worst > tol {
        return Err(Error::PrecisionUnreachable {
            achieved: worst,
            target: tol,
        });
    }
    let (mut lo, mut hi) = (1u64, max_terms);
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if model.tail(mid).1 <= tol {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(lo)
}

/// Truncated direct summation of `f_r(x)` with a tail correction and a
/// proven truncation bound.
pub fn f_direct(p: EvalPoint, cfg: &EvalConfig) -> Result<DirectSum> {
    let (r, x) = (p.r, p.x);
    let model = TailModel::new(r, x);
    let m = choose_truncation(&model, cfg.target_tol, cfg.max_terms)?;
    let (tail, bound) = model.tail(m);

    let s = 2.0 * r;
    let int_power = (s.fract() == 0.0 && s <= i32::MAX as f64).then_some(s as i32);
    let abs_sin_over_pi = sin_pi(x).abs() / PI;
    let term = |mm: i64| -> f64 {
        let u = x + mm as f64;
        let base = if u.abs() < SINC_SERIES_CUTOFF {
            sinc_unchecked(u).abs()
        } else {
            abs_sin_over_pi / u.abs()
        };
        if base == 0.0 {
            return 0.0;
        }
        match int_power {
            Some(n) => base.powi(n),
            None => base.powf(s),
        }
    };

    let mut acc = CompensatedSum::default();
    acc.add(tail);
    for k in (1..=m as i64).rev() {
        acc.add(term(k));
        acc.add(term(-k));
    }
    acc.add(term(0));
    Ok(DirectSum {
        value: acc.total(),
        tail_bound: bound,
        terms: m,
    })
}

/// Central finite difference of `f_r` at `x` with the given step.
pub fn f_deriv_fd(p: EvalPoint, step: f64) -> Result<f64> {
    if !(step > 0.0) || !step.is_finite() {
        return domain(format!("step must be positive, got {step}"));
    }
    let (r, x) = (p.r, p.x);
    if x - step <= 0.0 || x + step >= 1.0 {
        return domain(format!("x ± step leaves (0, 1): x = {x}, step = {step}"));
    }
    let cfg = EvalConfig::with_tol(step.powi(3).min(1e-15))?;
    let plus = f_direct(EvalPoint::new(r, x + step)?, &cfg)?.value;
    let minus = f_direct(EvalPoint::new(r, x - step)?, &cfg)?.value;
    Ok((plus - minus) / (2.0 * step))
}
