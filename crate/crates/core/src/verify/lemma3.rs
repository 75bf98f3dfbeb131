//! Randomized check of the majorization lemma: if `Σx ≥ Σy` and there is a
//! threshold `t` with `x_i ≤ y_i` whenever `y_i < t` and `x_i ≥ y_i` whenever
//! `y_i ≥ t`, then `Σg(x) ≥ Σg(y)` for every nondecreasing convex `g ≥ 0`.

use super::certify::Status;
use crate::error::{domain, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Nondecreasing convex maps of `[0, ∞)` into itself.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", content = "param", rename_all = "snake_case")]
pub enum Transform {
    /// `x^ρ` with `ρ ≥ 1`.
    Power(f64),
    /// `e^x - 1`.
    ExpMinusOne,
    /// `max(0, x - c)²`.
    ShiftedSquare(f64),
}

impl Transform {
    pub fn apply(&self, v: f64) -> f64 {
        match *self {
            Transform::Power(rho) => v.powf(rho),
            Transform::ExpMinusOne => v.exp_m1(),
            Transform::ShiftedSquare(c) => (v - c).max(0.0).powi(2),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma3Instance {
    pub x: Vec<f64>,
    pub y: Vec<f64>,
    pub t: f64,
    pub g: Transform,
}

impl Lemma3Instance {
    pub fn new(x: Vec<f64>, y: Vec<f64>, t: f64, g: Transform) -> Result<Self> {
        let inst = Self { x, y, t, g };
        inst.check_hypotheses()?;
        Ok(inst)
    }

    /// Checks lengths, nonnegativity, the sum condition and the threshold
    /// condition exactly as stored.
    pub fn check_hypotheses(&self) -> Result<()> {
        if self.x.is_empty() || self.x.len() != self.y.len() {
            return domain("x and y must be nonempty and of equal length");
        }
        if let Transform::Power(rho) = self.g {
            if !(rho >= 1.0) {
                return domain(format!("power transform needs exponent >= 1, got {rho}"));
            }
        }
        if !(self.t >= 0.0) || self.x.iter().chain(&self.y).any(|v| !(*v >= 0.0) || !v.is_finite()) {
            return domain("entries and threshold must be finite and nonnegative");
        }
        if self.x.iter().sum::<f64>() < self.y.iter().sum::<f64>() {
            return domain("sum of x is below sum of y");
        }
        for (xi, yi) in self.x.iter().zip(&self.y) {
            if (*yi < self.t && xi > yi) || (*yi >= self.t && xi < yi) {
                return domain(format!("threshold condition fails at x = {xi}, y = {yi}"));
            }
        }
        Ok(())
    }

    /// `Σg(x) - Σg(y)`.
    pub fn margin(&self) -> f64 {
        let gx: f64 = self.x.iter().map(|&v| self.g.apply(v)).sum();
        let gy: f64 = self.y.iter().map(|&v| self.g.apply(v)).sum();
        gx - gy
    }

    fn rounding_allowance(&self) -> f64 {
        let scale: f64 = self.x.iter().chain(&self.y).map(|&v| self.g.apply(v).abs()).sum();
        1e-12 * (1.0 + scale)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Lemma3Report {
    pub trials: u64,
    pub seed: u64,
    pub status: Status,
    pub violations: u64,
    pub tightest_margin: f64,
    pub tightest: Option<Lemma3Instance>,
    pub first_violation: Option<Lemma3Instance>,
}

fn random_transform(rng: &mut ChaCha8Rng) -> Transform {
    match rng.gen_range(0..3) {
        0 => Transform::Power(rng.gen_range(1.0..=4.0)),
        1 => Transform::ExpMinusOne,
        _ => Transform::ShiftedSquare(rng.gen_range(0.0..1.0)),
    }
}

fn random_instance(rng: &mut ChaCha8Rng) -> Lemma3Instance {
    let n = rng.gen_range(1..=8usize);
    let y: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    let g = random_transform(rng);
    if rng.gen_ratio(1, 16) {
        return Lemma3Instance { x: y.clone(), y, t: 0.5, g };
    }
    let mut sorted = y.clone();
    sorted.sort_by(f64::total_cmp);
    let t = sorted[rng.gen_range(0..n)];
    let mut x: Vec<f64> = y
        .iter()
        .map(|&yi| {
            if yi < t {
                yi * rng.gen_range(0.0..=1.0)
            } else {
                yi + 0.5 * rng.gen_range(0.0..1.0)
            }
        })
        .collect();
    let deficit = y.iter().sum::<f64>() - x.iter().sum::<f64>();
    if deficit > 0.0 {
        let above = y.iter().filter(|&&yi| yi >= t).count() as f64;
        let share = deficit * (1.0 + 1e-9) / above;
        for (xi, yi) in x.iter_mut().zip(&y) {
            if *yi >= t {
                *xi += share;
            }
        }
    }
    Lemma3Instance { x, y, t, g }
}

/// Runs `trials` seeded instances and asserts the conclusion on each.
pub fn lemma3_property(trials: u64, seed: u64) -> Result<Lemma3Report> {
    if trials == 0 {
        return domain("trials must be at least 1");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut violations = 0;
    let mut tightest_margin = f64::INFINITY;
    let mut tightest = None;
    let mut first_violation = None;
    for _ in 0..trials {
        let inst = random_instance(&mut rng);
        inst.check_hypotheses()?;
        let m = inst.margin();
        if m < -inst.rounding_allowance() {
            violations += 1;
            first_violation.get_or_insert_with(|| inst.clone());
        }
        if m < tightest_margin {
            tightest_margin = m;
            tightest = Some(inst);
        }
    }
    Ok(Lemma3Report {
        trials,
        seed,
        status: if violations == 0 { Status::Passed } else { Status::Violated },
        violations,
        tightest_margin,
        tightest,
        first_violation,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_instance() {
        let inst =
            Lemma3Instance::new(vec![0.3, 0.8], vec![0.4, 0.6], 0.5, Transform::Power(2.0)).unwrap();
        let gx: f64 = inst.x.iter().map(|v| v * v).sum();
        assert!((gx - 0.73).abs() < 1e-15);
        assert!((inst.margin() - 0.21).abs() < 1e-15);
    }

    #[test]
    fn identical_sequences_give_equality() {
        for g in [Transform::Power(3.3), Transform::ExpMinusOne, Transform::ShiftedSquare(0.2)] {
            let v = vec![0.1, 0.7, 0.4];
            let inst = Lemma3Instance::new(v.clone(), v, 0.4, g).unwrap();
            assert_eq!(inst.margin(), 0.0);
        }
    }

    #[test]
    fn hypotheses_are_enforced() {
        let p = Transform::Power(2.0);
        assert!(Lemma3Instance::new(vec![0.3], vec![0.4], 0.1, p).is_err());
        assert!(Lemma3Instance::new(vec![0.5, 0.1], vec![0.4, 0.2], 0.3, p).is_err());
        assert!(Lemma3Instance::new(vec![0.5], vec![0.4], 0.1, Transform::Power(0.5)).is_err());
        assert!(Lemma3Instance::new(vec![], vec![], 0.1, p).is_err());
    }

    #[test]
    fn seeded_run_is_clean_and_reproducible() {
        let a = lemma3_property(20_000, 42).unwrap();
        assert_eq!(a.violations, 0);
        assert_eq!(a.status, Status::Passed);
        let b = lemma3_property(20_000, 42).unwrap();
        assert_eq!(a, b);
        assert!(lemma3_property(0, 1).is_err());
    }
}
