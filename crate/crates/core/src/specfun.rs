//! Bernoulli numbers, even zeta values, the Hurwitz zeta function and the
//! closed-form routes to `f_r`.
//!
//! The Hurwitz zeta function is evaluated by Euler–Maclaurin summation:
//!
//! ```text
//! ζ(s, a) = Σ_{k<N} (k+a)^{-s} + (N+a)^{1-s}/(s-1) + (N+a)^{-s}/2
//!         + Σ_{j=1}^{8} B_{2j}/(2j)! · s(s+1)…(s+2j-2) · (N+a)^{-s-2j+1}  + R,
//! ```
//!
//! starting from `N = 25` and doubling `N` until the first omitted correction
//! (`j = 9`) is below `1e-14` in absolute terms or `1e-16` relative to the
//! result. Internally everything is carried in the scaled form
//! `a^s · ζ(s, a) = Σ_k (a/(k+a))^s`, which stays finite for the large
//! exponents and small offsets that occur in `f_r` at large `r`.

use crate::error::{domain, Error, Result};
use crate::sinc::{cos_pi, sin_pi, EvalPoint};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// Largest argument accepted by [`factorial`].
pub const FACTORIAL_CAP: u32 = 201;

const EM_START_TERMS: u64 = 25;
const EM_MAX_TERMS: u64 = 1 << 22;
const EM_CORRECTIONS: usize = 8;

/// `n!` as an exact integer, for `n ≤ 201`.
pub fn factorial(n: u32) -> Result<BigInt> {
    if n > FACTORIAL_CAP {
        return Err(Error::SizeLimit(format!(
            "factorial argument {n} exceeds cap {FACTORIAL_CAP}"
        )));
    }
    Ok((1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k)))
}

fn binomial_row(n: usize) -> Vec<BigInt> {
    let mut row = vec![BigInt::one(); n + 1];
    for k in 1..n {
        row[k] = &row[k - 1] * BigInt::from(n - k + 1) / BigInt::from(k);
    }
    row
}

/// `B_0, …, B_{n_max}` with `B_1 = -1/2`, from `Σ_{k≤n} C(n+1, k) B_k = 0`.
pub fn bernoulli(n_max: usize) -> Vec<BigRational> {
    let mut b: Vec<BigRational> = Vec::with_capacity(n_max + 1);
    b.push(BigRational::one());
    for n in 1..=n_max {
        let row = binomial_row(n + 1);
        let acc = (0..n).fold(BigRational::zero(), |acc, k| {
            acc + BigRational::from_integer(row[k].clone()) * &b[k]
        });
        b.push(-acc / BigRational::from_integer(BigInt::from(n + 1)));
    }
    b
}

/// `B_{2j} / (2j)!` for `j = 1..=9` (index 0 unused).
fn em_coefficients() -> &'static [f64; EM_CORRECTIONS + 2] {
    static TABLE: OnceLock<[f64; EM_CORRECTIONS + 2]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let b = bernoulli(2 * (EM_CORRECTIONS + 1));
        let mut out = [0.0; EM_CORRECTIONS + 2];
        for (j, slot) in out.iter_mut().enumerate().skip(1) {
            let fact = factorial(2 * j as u32).expect("small factorial");
            let c = &b[2 * j] / BigRational::from_integer(fact);
            *slot = c.to_f64().expect("finite coefficient");
        }
        out
    })
}

/// `ζ(2n)` as an exact rational multiple of `π^{2n}` plus its float value.
#[derive(Debug, Clone, PartialEq)]
pub struct ZetaEvenValue {
    pub n: u32,
    /// Coefficient of `π^{2n}`.
    pub rational_part: BigRational,
    pub float_value: f64,
}

/// `ζ(2n) = (-1)^{n+1} B_{2n} (2π)^{2n} / (2 (2n)!)`.
pub fn zeta_even(n: u32) -> Result<ZetaEvenValue> {
    if n == 0 {
        return domain("zeta_even requires n >= 1");
    }
    let b = bernoulli(2 * n as usize);
    let two_pow = BigInt::one() << (2 * n as usize);
    let denom = BigInt::from(2) * factorial(2 * n)?;
    let rational_part = b[2 * n as usize].abs() * BigRational::new(two_pow, denom);
    let float_value = rational_part.to_f64().unwrap_or(f64::NAN) * PI.powi(2 * n as i32);
    Ok(ZetaEvenValue {
        n,
        rational_part,
        float_value,
    })
}

fn check_hurwitz_args(s: f64, a: f64) -> Result<()> {
    if !s.is_finite() || s <= 1.0 + 1e-9 {
        return domain(format!("hurwitz_zeta needs s > 1 + 1e-9, got {s}"));
    }
    if !a.is_finite() || a <= 0.0 || a > 2.0 {
        return domain(format!("hurwitz_zeta needs a in (0, 2], got {a}"));
    }
    Ok(())
}

/// One Euler–Maclaurin pass in scaled form; returns (value, error estimate),
/// both multiplied by `a^s`.
fn em_scaled(s: f64, a: f64, n: u64) -> (f64, f64) {
    let mut head = 0.0;
    for k in (0..n).rev() {
        head += (a / (k as f64 + a)).powf(s);
    }
    let big = n as f64 + a;
    let w = (a / big).powf(s);
    if w == 0.0 {
        return (head, 0.0);
    }
    let coeffs = em_coefficients();
    let mut tail = big / (s - 1.0) + 0.5;
    // rising = s(s+1)…(s+2j-2), inv_pow = big^{1-2j}
    let mut rising = s;
    let mut inv_pow = 1.0 / big;
    let mut omitted = 0.0;
    for (j, &c) in coeffs.iter().enumerate().skip(1) {
        let term = c * rising * inv_pow;
        if j <= EM_CORRECTIONS {
            tail += term;
        } else {
            omitted = term.abs();
        }
        let k = (2 * j) as f64;
        rising *= (s + k - 1.0) * (s + k);
        inv_pow /= big * big;
    }
    (head + w * tail, w * omitted)
}

/// `a^s · ζ(s, a)`.
pub(crate) fn hurwitz_scaled(s: f64, a: f64) -> Result<f64> {
    check_hurwitz_args(s, a)?;
    let mut n = EM_START_TERMS;
    loop {
        let (value, err) = em_scaled(s, a, n);
        let abs_err = err * a.powf(-s);
        if abs_err <= 1e-14 || err <= 1e-16 * value {
            return Ok(value);
        }
        if n >= EM_MAX_TERMS {
            return Err(Error::PrecisionUnreachable {
                achieved: abs_err,
                target: 1e-14,
            });
        }
        n *= 2;
    }
}

/// Hurwitz zeta `ζ(s, a) = Σ_{k≥0} (k + a)^{-s}` for `s > 1`, `a ∈ (0, 2]`.
pub fn hurwitz_zeta(s: f64, a: f64) -> Result<f64> {
    Ok(hurwitz_scaled(s, a)? * a.powf(-s))
}

/// `∂ζ(s, a)/∂a = -s ζ(s + 1, a)`.
pub fn hurwitz_zeta_da(s: f64, a: f64) -> Result<f64> {
    check_hurwitz_args(s, a)?;
    Ok(-s * hurwitz_zeta(s + 1.0, a)?)
}

/// `(|sin πx| / (π a))^s` with `a ∈ {x, 1 - x}`.
fn scaled_prefactor(abs_sin: f64, a: f64, s: f64) -> f64 {
    (abs_sin / (PI * a)).powf(s)
}

/// `f_r(x) = (|sin πx|/π)^{2r} (ζ(2r, x) + ζ(2r, 1 - x))`, extended to real
/// `r` through the absolute value; endpoints return 1 by continuity.
pub fn f_hurwitz(p: EvalPoint) -> Result<f64> {
    let (r, x) = (p.r(), p.x());
    if x == 0.0 || x == 1.0 {
        return Ok(1.0);
    }
    let s = 2.0 * r;
    let abs_sin = sin_pi(x).abs();
    let left = scaled_prefactor(abs_sin, x, s) * hurwitz_scaled(s, x)?;
    let right = scaled_prefactor(abs_sin, 1.0 - x, s) * hurwitz_scaled(s, 1.0 - x)?;
    Ok(left + right)
}

/// Derivative of the Hurwitz form in `x ∈ (0, 1)`:
///
/// ```text
/// f_r'(x) = 2r π cot(πx) f_r(x)
///         + (|sin πx|/π)^{2r} (∂_a ζ(2r, x) - ∂_a ζ(2r, 1 - x)),
/// ```
///
/// with `∂_a ζ(s, a) = -s ζ(s+1, a)` carried in scaled form.
pub fn f_deriv_analytic(p: EvalPoint) -> Result<f64> {
    let (r, x) = (p.r(), p.x());
    if x <= 0.0 || x >= 1.0 {
        return domain(format!("f_deriv_analytic needs x in (0, 1), got {x}"));
    }
    let s = 2.0 * r;
    let y = 1.0 - x;
    let abs_sin = sin_pi(x).abs();
    let pre_x = scaled_prefactor(abs_sin, x, s);
    let pre_y = scaled_prefactor(abs_sin, y, s);
    let f = pre_x * hurwitz_scaled(s, x)? + pre_y * hurwitz_scaled(s, y)?;
    let cot = cos_pi(x) / sin_pi(x);
    // σ·∂_aζ(s, a) = -s · pre_a · a^{-1} · a^{s+1} ζ(s+1, a)
    let da_x = -s * pre_x * hurwitz_scaled(s + 1.0, x)? / x;
    let da_y = -s * pre_y * hurwitz_scaled(s + 1.0, y)? / y;
    Ok(s * PI * cot * f + (da_x - da_y))
}

/// `ψ^{(2n)}(x) = -(2n)! Σ_{m≥0} (x + m)^{-(2n+1)}` for `x ∈ (0, 1)`.
pub fn polygamma_even_series(n: u32, x: f64) -> Result<f64> {
    if n == 0 {
        return domain("polygamma_even_series requires n >= 1");
    }
    if !(x > 0.0 && x < 1.0) {
        return domain(format!("polygamma_even_series needs x in (0, 1), got {x}"));
    }
    let fact = factorial(2 * n)?.to_f64().unwrap_or(f64::INFINITY);
    if !fact.is_finite() {
        return domain(format!("(2n)! overflows a double for n = {n}"));
    }
    Ok(-fact * hurwitz_zeta(2.0 * n as f64 + 1.0, x)?)
}

/// `f_{n+1/2}(x)` through the even polygamma functions:
/// `π^{-(2n+1)} |sin πx|^{2n+1} · (-1/(2n)!) (ψ^{(2n)}(x) + ψ^{(2n)}(1-x))`.
pub fn f_half_integer_polygamma(n: u32, x: f64) -> Result<f64> {
    let fact = factorial(2 * n)?.to_f64().unwrap_or(f64::INFINITY);
    let psi_sum = polygamma_even_series(n, x)? + polygamma_even_series(n, 1.0 - x)?;
    let pre = (sin_pi(x).abs() / PI).powi(2 * n as i32 + 1);
    Ok(-pre * psi_sum / fact)
}
