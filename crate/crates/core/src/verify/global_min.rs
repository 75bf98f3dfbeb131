//! Grid check that `f_r` is minimal at `x = 1/2`, decreasing on the left half
//! and increasing on the right half.

use super::certify::Status;
use crate::consensus::Evaluator;
use crate::error::{domain, Result};
use crate::sinc::{EvalConfig, EvalPoint};
use crate::specfun::f_deriv_analytic;
use rayon::prelude::*;
use serde::Serialize;

/// Bound on `|f'(x) + f'(1 - x)|` over the grid.
pub const ANTISYMMETRY_TOL: f64 = 1e-9;

/// Smallest uncertainty ever assumed for a double-precision value near 1.
const ROUNDING_FLOOR: f64 = 1e-15;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GlobalMinReport {
    pub r: f64,
    pub grid_n: usize,
    pub tol: f64,
    pub status: Status,
    pub min_value: f64,
    /// `min_i f(x_i) - f(1/2)`.
    pub worst_margin: f64,
    /// Grid point of the worst failed check, or of the worst margin.
    pub witness: f64,
    /// Largest `f'` on the left half (should be ≤ tol).
    pub max_left_slope: f64,
    /// Smallest `f'` on the right half (should be ≥ -tol).
    pub min_right_slope: f64,
    pub max_antisymmetry: f64,
    /// Largest method spread plus truncation bound met on the grid.
    pub uncertainty: f64,
    pub diagnostic: Option<String>,
}

struct Sample {
    x: f64,
    value: f64,
    uncertainty: f64,
    slope: Option<f64>,
}

pub fn verify_global_min(r: f64, grid_n: usize, tol: f64) -> Result<GlobalMinReport> {
    if r < 1.0 || !r.is_finite() {
        return domain(format!("verify_global_min needs r >= 1, got {r}"));
    }
    if grid_n < 16 {
        return domain(format!("grid_n must be at least 16, got {grid_n}"));
    }
    if !(tol > 0.0) {
        return domain(format!("tol must be positive, got {tol}"));
    }
    let ev = Evaluator::new(r, EvalConfig::default())?;
    let centre = ev.eval(0.5)?;
    let last = (grid_n - 1) as f64;

    let samples = (0..grid_n)
        .into_par_iter()
        .map(|i| {
            let x = i as f64 / last;
            let e = ev.eval(x)?;
            let slope = if i == 0 || i == grid_n - 1 {
                None
            } else {
                Some(f_deriv_analytic(EvalPoint::new(r, x)?)?)
            };
            Ok(Sample {
                x,
                value: e.value,
                uncertainty: e.spread + e.tail_bound,
                slope,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    let mut worst_margin = f64::INFINITY;
    let mut margin_at = 0.5;
    let mut max_left = f64::NEG_INFINITY;
    let mut min_right = f64::INFINITY;
    let mut anti = 0.0f64;
    let mut uncertainty = centre.spread + centre.tail_bound;
    let mut failure: Option<(f64, String)> = None;

    for (i, s) in samples.iter().enumerate() {
        uncertainty = uncertainty.max(s.uncertainty);
        let margin = s.value - centre.value;
        if margin < worst_margin {
            worst_margin = margin;
            margin_at = s.x;
        }
        if margin < -tol && failure.is_none() {
            failure = Some((s.x, format!("f({}) - f(1/2) = {margin:e}", s.x)));
        }
        let Some(d) = s.slope else { continue };
        if s.x < 0.5 {
            max_left = max_left.max(d);
            if d > tol && failure.is_none() {
                failure = Some((s.x, format!("f'({}) = {d:e} on the left half", s.x)));
            }
        } else if s.x > 0.5 {
            min_right = min_right.min(d);
            if d < -tol && failure.is_none() {
                failure = Some((s.x, format!("f'({}) = {d:e} on the right half", s.x)));
            }
        }
        if let Some(dm) = samples[grid_n - 1 - i].slope {
            let a = (d + dm).abs();
            anti = anti.max(a);
            if a > ANTISYMMETRY_TOL && failure.is_none() {
                failure = Some((s.x, format!("|f'(x) + f'(1-x)| = {a:e} at x = {}", s.x)));
            }
        }
    }

    let uncertainty = uncertainty.max(ROUNDING_FLOOR);
    let (status, witness, diagnostic) = if tol < uncertainty {
        (
            Status::Inconclusive,
            margin_at,
            Some(format!("tol {tol:e} is below the evaluation uncertainty {uncertainty:e}")),
        )
    } else if let Some((x, msg)) = failure {
        (Status::Violated, x, Some(msg))
    } else {
        (Status::Passed, margin_at, None)
    };
    Ok(GlobalMinReport {
        r,
        grid_n,
        tol,
        status,
        min_value: centre.value,
        worst_margin,
        witness,
        max_left_slope: max_left,
        min_right_slope: min_right,
        max_antisymmetry: anti,
        uncertainty,
        diagnostic,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn r2_minimum_is_one_third() {
        let rep = verify_global_min(2.0, 513, 1e-10).unwrap();
        assert_eq!(rep.status, Status::Passed, "{:?}", rep.diagnostic);
        assert!((rep.min_value - 1.0 / 3.0).abs() < 1e-13);
        assert!(rep.worst_margin >= 0.0);
    }

    #[test]
    fn r1_is_flat() {
        let rep = verify_global_min(1.0, 64, 1e-10).unwrap();
        assert_eq!(rep.status, Status::Passed, "{:?}", rep.diagnostic);
        assert!(rep.worst_margin.abs() < 1e-12);
        assert!((rep.min_value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn r15_value() {
        let rep = verify_global_min(1.5, 257, 1e-10).unwrap();
        assert_eq!(rep.status, Status::Passed, "{:?}", rep.diagnostic);
        assert!((rep.min_value - 0.542_754_5).abs() < 1e-7);
    }

    #[test]
    fn tiny_tolerance_is_inconclusive() {
        let rep = verify_global_min(2.0, 16, 1e-30).unwrap();
        assert_eq!(rep.status, Status::Inconclusive);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(verify_global_min(0.9, 64, 1e-9).is_err());
        assert!(verify_global_min(2.0, 15, 1e-9).is_err());
        assert!(verify_global_min(2.0, 64, 0.0).is_err());
    }
}
