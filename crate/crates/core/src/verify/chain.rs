//! Numerical witness for the chain of inequalities that reduces the minimum
//! of `f_r` at `1/2` to the majorization lemma.
//!
//! With `s_m(x) = h(x + m) + h(x - m - 1)`, `x_m = s_m(x)`, `y_m = s_m(1/2)`,
//! `x̃_0 = (h(x)^r + h(x - 1)^r)^{1/r}` and `ỹ_0` likewise at `1/2`:
//!
//! ```text
//! eq1   x_0 ≥ y_0,  x_i ≤ y_i (i ≥ 1)
//! eq2   Σ x_m = Σ y_m = 1
//! eq2a  x_0 + … + x_n ≥ y_0 + … + y_n
//! eq3   x̃_0 - x_0 ≥ ỹ_0 - y_0
//! eq5   x̃_0 + x_1 + … + x_n ≥ ỹ_0 + y_1 + … + y_n
//! eq4   x̃_0 ≥ ỹ_0
//! ```
//!
//! and `ỹ_0 > 4/π² > y_i` for `i ≥ 1`. Sums are truncated at `M`; since
//! `s_m ≤ 2/(π² m²)` the discarded tail is below `2/(π² M)`.

use super::certify::Status;
use crate::error::{domain, Result};
use crate::sinc::h_unchecked;
use serde::Serialize;
use std::f64::consts::PI;

/// Slack for rounding in every chain comparison.
pub const TAU: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainCheck {
    pub name: String,
    /// Left side minus right side; the check holds when this is ≥ -allowance.
    pub margin: f64,
    pub allowance: f64,
}

impl ChainCheck {
    pub fn holds(&self) -> bool {
        self.margin >= -self.allowance
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProofChainWitness {
    pub r: f64,
    pub x: f64,
    pub x_seq: Vec<f64>,
    pub y_seq: Vec<f64>,
    pub x0_tilde: f64,
    pub y0_tilde: f64,
    pub threshold: f64,
    pub tail_tol: f64,
    pub checks: Vec<ChainCheck>,
}

impl ProofChainWitness {
    pub fn status(&self) -> Status {
        if self.checks.iter().all(ChainCheck::holds) {
            Status::Passed
        } else {
            Status::Violated
        }
    }

    pub fn worst(&self) -> Option<&ChainCheck> {
        self.checks
            .iter()
            .min_by(|a, b| (a.margin + a.allowance).total_cmp(&(b.margin + b.allowance)))
    }
}

/// `h(x + m) + h(x - m - 1)`.
pub fn s_m(m: u32, x: f64) -> f64 {
    h_unchecked(x + m as f64) + h_unchecked(x - m as f64 - 1.0)
}

fn tilde(r: f64, x: f64) -> f64 {
    (h_unchecked(x).powf(r) + h_unchecked(x - 1.0).powf(r)).powf(1.0 / r)
}

pub fn proof_chain(r: f64, x: f64, big_m: u32) -> Result<ProofChainWitness> {
    if !(r >= 1.0) || !r.is_finite() {
        return domain(format!("proof_chain needs r >= 1, got {r}"));
    }
    if !(0.0..=1.0).contains(&x) {
        return domain(format!("proof_chain needs x in [0, 1], got {x}"));
    }
    if big_m < 8 {
        return domain(format!("proof_chain needs M >= 8, got {big_m}"));
    }
    let threshold = 4.0 / (PI * PI);
    let tail_tol = 2.0 / (PI * PI * big_m as f64);
    let x_seq: Vec<f64> = (0..=big_m).map(|m| s_m(m, x)).collect();
    let y_seq: Vec<f64> = (0..=big_m).map(|m| s_m(m, 0.5)).collect();
    let x0t = tilde(r, x);
    let y0t = tilde(r, 0.5);
    let mut checks = Vec::new();
    let mut push = |name: String, margin: f64, allowance: f64| {
        checks.push(ChainCheck { name, margin, allowance })
    };

    push("eq1_0".into(), x_seq[0] - y_seq[0], TAU);
    for i in 1..=big_m as usize {
        push(format!("eq1_{i}"), y_seq[i] - x_seq[i], TAU);
    }
    let (sx, sy): (f64, f64) = (x_seq.iter().sum(), y_seq.iter().sum());
    push("eq2_x_lower".into(), sx - 1.0, tail_tol);
    push("eq2_x_upper".into(), 1.0 - sx, TAU);
    push("eq2_y_lower".into(), sy - 1.0, tail_tol);
    push("eq2_y_upper".into(), 1.0 - sy, TAU);
    let (mut px, mut py) = (0.0, 0.0);
    let (mut pxt, mut pyt) = (x0t, y0t);
    for n in 0..=big_m as usize {
        px += x_seq[n];
        py += y_seq[n];
        push(format!("eq2a_{n}"), px - py, TAU + tail_tol);
        if n > 0 {
            pxt += x_seq[n];
            pyt += y_seq[n];
        }
        push(format!("eq5_{n}"), pxt - pyt, TAU + tail_tol);
    }
    push("eq3".into(), (x0t - x_seq[0]) - (y0t - y_seq[0]), TAU);
    push("eq4".into(), x0t - y0t, TAU);
    push("threshold_y0".into(), y0t - threshold, 0.0);
    for i in 1..=big_m as usize {
        push(format!("threshold_y{i}"), threshold - y_seq[i], 0.0);
    }
    // the majorization conclusion with g(v) = v^r, truncated at M
    let gx = x0t.powf(r) + x_seq[1..].iter().map(|v| v.powf(r)).sum::<f64>();
    let gy = y0t.powf(r) + y_seq[1..].iter().map(|v| v.powf(r)).sum::<f64>();
    push("conclusion".into(), gx - gy, TAU + tail_tol);

    Ok(ProofChainWitness {
        r,
        x,
        x_seq,
        y_seq,
        x0_tilde: x0t,
        y0_tilde: y0t,
        threshold,
        tail_tol,
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_at_03_passes() {
        let w = proof_chain(2.0, 0.3, 64).unwrap();
        assert_eq!(w.status(), Status::Passed, "{:?}", w.worst());
        assert!((w.threshold - 0.405_284_7).abs() < 1e-7);
        assert_eq!(w.x_seq.len(), 65);
    }

    #[test]
    fn at_the_minimizer_everything_is_tight() {
        let w = proof_chain(2.0, 0.5, 16).unwrap();
        assert_eq!(w.x_seq, w.y_seq);
        assert_eq!(w.x0_tilde, w.y0_tilde);
        for c in w.checks.iter().filter(|c| c.name.starts_with("eq1")) {
            assert_eq!(c.margin, 0.0);
        }
    }

    #[test]
    fn s1_at_half() {
        let v = s_m(1, 0.5);
        assert!((v - 8.0 / (9.0 * PI * PI)).abs() < 1e-16);
        assert!((v - 0.090_063_2).abs() < 1e-7);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(proof_chain(0.5, 0.3, 16).is_err());
        assert!(proof_chain(2.0, 1.3, 16).is_err());
        assert!(proof_chain(2.0, 0.3, 7).is_err());
    }
}
