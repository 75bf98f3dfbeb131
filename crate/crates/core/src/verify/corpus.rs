//! The registry of certified inequalities behind the minimum claim.
//!
//! Entries, by id:
//!
//! * `basicinequality`: `√2 sin(πx/4) - x ≥ 0` on `[0, 1]`.
//! * `L6i`: `1 - x² - cos(πx/2) ≥ 0` on `[0, 1]`.
//! * `L6ii`: `(x² + 1) cos²(πx/2) - (1 - x²)² ≥ 0` on `[0, 1]`, plus the two
//!   scalar facts used in its quartic estimate (`L6ii_quartic`, `L6ii_coeff`).
//! * `L2i`: `h(x) + h(x - 1) - 8/π² ≥ 0` on `[0, 1]`.
//! * `L2ii_m{m}`, `m = 1..=10`: `s_m(1/2) - s_m(x) ≥ 0` on `[0, 1]` with
//!   `s_m(x) = h(x + m) + h(x - (m + 1))`.
//! * `psiM_{M}`, `M = 3..=10`: `ψ_M'(x) ≤ 0` on `[0, 1]`, where
//!   `ψ_M(x) = √(x² + 1) cos(πx/2) / (M² - x²)` and, by hand,
//!   `ψ_M'(x) = D_M(x) / (2 √(x² + 1) (M² - x²)²)` with
//!   `D_M(x) = 2x(x² + 2 + M²) cos(πx/2) - π(M² - x⁴ + (M² - 1)x²) sin(πx/2)`.
//! * `phi_r{r}`, `r ∈ {1, 1.5, 2, 3, 5}`: `φ_r'(x) ≤ 0` on `[0, 1/2]`, where
//!   `φ_r(x) = (1/2 - x)² + (1/2 + x)² - ((1/2 - x)^{2r} + (1/2 + x)^{2r})^{1/r}`
//!   and `φ_r'(x) = 4x - 2 S^{1/r - 1} ((1/2 + x)^{2r-1} - (1/2 - x)^{2r-1})`
//!   with `S = (1/2 - x)^{2r} + (1/2 + x)^{2r}`. For `r = 1` the derivative
//!   vanishes identically.
//! * `L2iv_k_m{m}`: `k(x) = 4x[4x⁴ + (1 - 12a²)x² + (3a² - 8a⁴)] ≤ 0` on
//!   `[0, 1/2]`, `a = m + 1/2`, and `L2iv_p_m{m}`: the quadratic
//!   `p(y) = 4y² + (1 - 12a²)y + (3a² - 8a⁴) ≤ 0` on `[0, 1/4]`.

use super::certify::{Claim, CertifiedInequality, EqualitySet};
use super::expr::{c, cos, pi, sin, sinc, sqrt, x, Expr};
use super::interval::Interval;

/// Depth used when certifying the registry.
pub const CORPUS_MAX_DEPTH: u32 = 40;

/// `r` values of the `phi_r` family.
pub const PHI_R_VALUES: [f64; 5] = [1.0, 1.5, 2.0, 3.0, 5.0];

fn h(arg: Expr) -> Expr {
    sinc(arg).powi(2)
}

fn unit() -> Interval {
    Interval::new(0.0, 1.0)
}

pub fn basic_inequality() -> Expr {
    sqrt(c(2.0)) * sin(pi() * x() / 4.0) - x()
}

pub fn lemma6_i() -> Expr {
    1.0 - x().powi(2) - cos(pi() * x() / 2.0)
}

pub fn lemma6_ii() -> Expr {
    (x().powi(2) + 1.0) * cos(pi() * x() / 2.0).powi(2) - (1.0 - x().powi(2)).powi(2)
}

/// `π⁴/64 - π²/4 - 1`.
fn quartic_coefficient() -> Expr {
    pi().powi(4) / 64.0 - pi().powi(2) / 4.0 - 1.0
}

/// `(1 - π²/4) + (π⁴/64 - π²/4 - 1)/4`, claimed to exceed -2.
pub fn lemma6_ii_quadratic_coefficient() -> Expr {
    (1.0 - pi().powi(2) / 4.0) + quartic_coefficient() / 4.0
}

pub fn lemma2_i() -> Expr {
    h(x()) + h(x() - 1.0) - 8.0 / pi().powi(2)
}

/// `s_m(x) = h(x + m) + h(x - (m + 1))`.
pub fn s_m(m: u32) -> Expr {
    let m = m as f64;
    h(x() + m) + h(x() - (m + 1.0))
}

pub fn lemma2_ii(m: u32) -> Expr {
    let a = m as f64 + 0.5;
    // s_m(1/2) = 2 h(m + 1/2) = 2 / (π² (m + 1/2)²)
    2.0 / (pi().powi(2) * (a * a)) - s_m(m)
}

/// `ψ_M(x) = √(x² + 1) cos(πx/2) / (M² - x²)`.
pub fn psi(big_m: u32) -> Expr {
    let m2 = (big_m * big_m) as f64;
    sqrt(x().powi(2) + 1.0) * cos(pi() * x() / 2.0) / (m2 - x().powi(2))
}

/// Hand-derived `ψ_M'`.
pub fn psi_derivative(big_m: u32) -> Expr {
    let m2 = (big_m * big_m) as f64;
    let half_angle = pi() * x() / 2.0;
    let d = 2.0 * x() * (x().powi(2) + 2.0 + m2) * cos(half_angle.clone())
        - pi() * (m2 - x().powi(4) + (m2 - 1.0) * x().powi(2)) * sin(half_angle);
    d / (2.0 * sqrt(x().powi(2) + 1.0) * (m2 - x().powi(2)).powi(2))
}

fn two_r(r: f64) -> i32 {
    let s = 2.0 * r;
    assert!(s.fract() == 0.0, "phi family needs 2r integral, got r = {r}");
    s as i32
}

/// `φ_r(x)` on `[0, 1/2]`.
pub fn phi(r: f64) -> Expr {
    let n = two_r(r);
    let (a, b) = (0.5 + x(), 0.5 - x());
    let s = b.powi(n) + a.powi(n);
    let root = if r == 1.0 { s } else { s.pow(c(1.0) / c(r)) };
    b.powi(2) + a.powi(2) - root
}

/// Hand-derived `φ_r'`.
pub fn phi_derivative(r: f64) -> Expr {
    let n = two_r(r);
    let (a, b) = (0.5 + x(), 0.5 - x());
    let s = b.powi(n) + a.powi(n);
    let scale = if r == 1.0 {
        c(1.0)
    } else {
        s.pow(c(1.0) / c(r) - 1.0)
    };
    4.0 * x() - 2.0 * scale * (a.powi(n - 1) - b.powi(n - 1))
}

fn quartic_parts(m: u32) -> (f64, f64) {
    let a = m as f64 + 0.5;
    let a2 = a * a;
    (1.0 - 12.0 * a2, 3.0 * a2 - 8.0 * a2 * a2)
}

/// `k(x) = 4x[4x⁴ + (1 - 12a²)x² + (3a² - 8a⁴)]`, `a = m + 1/2`.
pub fn lemma2_iv_k(m: u32) -> Expr {
    let (b, c0) = quartic_parts(m);
    4.0 * x() * (4.0 * x().powi(4) + b * x().powi(2) + c0)
}

/// `p(y) = 4y² + (1 - 12a²)y + (3a² - 8a⁴)`.
pub fn lemma2_iv_p(m: u32) -> Expr {
    let (b, c0) = quartic_parts(m);
    4.0 * x().powi(2) + b * x() + c0
}

/// `g(x) = ((a + x)^{-2} + (a - x)^{-2}) (1 - 4x²)²`.
pub fn lemma2_iv_g(m: u32) -> Expr {
    let a = m as f64 + 0.5;
    ((a + x()).powi(-2) + (a - x()).powi(-2)) * (1.0 - 4.0 * x().powi(2)).powi(2)
}

fn fmt_r(r: f64) -> String {
    format!("{r}")
}

/// The full registry, in a fixed order.
pub fn corpus() -> Vec<CertifiedInequality> {
    let mut out = Vec::new();
    let pts = |v: &[f64]| EqualitySet::Points(v.to_vec());

    out.push(CertifiedInequality::new(
        "basicinequality",
        unit(),
        basic_inequality(),
        Claim::Nonnegative,
        pts(&[0.0, 1.0]),
        r"\sqrt{2}\sin(\tfrac{1}{4}\pi x)\geq x",
    ));
    out.push(CertifiedInequality::new(
        "L6i",
        unit(),
        lemma6_i(),
        Claim::Nonnegative,
        pts(&[0.0, 1.0]),
        r"\cos(\tfrac{1}{2}\pi x) \leq  1-x^2",
    ));
    out.push(CertifiedInequality::new(
        "L6ii",
        unit(),
        lemma6_ii(),
        Claim::Nonnegative,
        pts(&[0.0, 1.0]),
        r"{(x^2+1)\cos^2(\tfrac12\pi x)} \ge {(1-x^2)^2}",
    ));
    out.push(CertifiedInequality::new(
        "L6ii_quartic",
        Interval::point(0.0),
        quartic_coefficient(),
        Claim::Nonpositive,
        EqualitySet::none(),
        r"\frac{\pi^4}{64} -\frac{\pi^2}{4}-1 < 0",
    ));
    out.push(CertifiedInequality::new(
        "L6ii_coeff",
        Interval::point(0.0),
        lemma6_ii_quadratic_coefficient() + 2.0,
        Claim::Nonnegative,
        EqualitySet::none(),
        r"(1-\frac{\pi^2}{4}) + \frac14(\frac{\pi^4}{64} -\frac{\pi^2}{4}-1)\approx -1.9537471\dots> -2",
    ));
    out.push(CertifiedInequality::new(
        "L2i",
        unit(),
        lemma2_i(),
        Claim::Nonnegative,
        pts(&[0.5]),
        r"h(x)+h(x-1)",
    ));
    for m in 1..=10 {
        out.push(CertifiedInequality::new(
            format!("L2ii_m{m}"),
            unit(),
            lemma2_ii(m),
            Claim::Nonnegative,
            pts(&[0.5]),
            r"h(x+m)+h(x-(m+1))",
        ));
    }
    for big_m in 3..=10 {
        out.push(CertifiedInequality::new(
            format!("psiM_{big_m}"),
            unit(),
            psi_derivative(big_m),
            Claim::Nonpositive,
            pts(&[0.0]),
            r"\psi_M(x) := \frac{\sqrt{x^2  + 1 }}{M^2 - x^2 }\cos (\tfrac12\pi x)",
        ));
    }
    for r in PHI_R_VALUES {
        let equality = if r == 1.0 {
            EqualitySet::Everywhere
        } else {
            pts(&[0.0, 0.5])
        };
        out.push(CertifiedInequality::new(
            format!("phi_r{}", fmt_r(r)),
            Interval::new(0.0, 0.5),
            phi_derivative(r),
            Claim::Nonpositive,
            equality,
            r"\phi_r(x):= (\tfrac12-x)^2 + (\tfrac12+x)^2 - ((\tfrac12-x)^{2r} + (\tfrac12+x)^{2r})^{1/r}",
        ));
    }
    for m in 1..=10 {
        out.push(CertifiedInequality::new(
            format!("L2iv_k_m{m}"),
            Interval::new(0.0, 0.5),
            lemma2_iv_k(m),
            Claim::Nonpositive,
            pts(&[0.0]),
            r"4x[4x^4+(1-12a^2)x^2+(3a^2-8a^4)]",
        ));
    }
    for m in 1..=10 {
        out.push(CertifiedInequality::new(
            format!("L2iv_p_m{m}"),
            Interval::new(0.0, 0.25),
            lemma2_iv_p(m),
            Claim::Nonpositive,
            EqualitySet::none(),
            r"p(y):=4y^2+(1-12a^2)y+(3a^2-8a^4)",
        ));
    }
    out
}
