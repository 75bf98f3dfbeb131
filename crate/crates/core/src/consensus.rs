//! Multi-route evaluation of `f_r`: direct summation, the Hurwitz closed
//! form and, for integer `r`, the exact polynomial.

use crate::error::{domain, Result};
use crate::exactpoly::{self, SincPolynomial};
use crate::sinc::{f_direct, EvalConfig, EvalMode, EvalPoint};
use crate::specfun::f_hurwitz;

#[derive(Debug, Clone, PartialEq)]
pub struct Evaluation {
    pub value: f64,
    /// Largest pairwise gap among the routes used (0 for a single route).
    pub spread: f64,
    /// Truncation bound of the direct route, when it ran.
    pub tail_bound: f64,
    pub routes: Vec<(EvalMode, f64)>,
}

/// Evaluates `f_r` for one fixed `r` at many points; the exact polynomial is
/// built once.
#[derive(Debug, Clone)]
pub struct Evaluator {
    r: f64,
    cfg: EvalConfig,
    poly: Option<SincPolynomial>,
}

fn integer_r(r: f64) -> Option<u32> {
    (r.fract() == 0.0 && r >= 1.0 && r <= exactpoly::MAX_R as f64).then_some(r as u32)
}

impl Evaluator {
    pub fn new(r: f64, cfg: EvalConfig) -> Result<Self> {
        EvalPoint::new(r, 0.5)?;
        let poly = match (cfg.mode(), integer_r(r)) {
            (EvalMode::Polynomial, None) => {
                return domain(format!("polynomial route needs integer r in 1..=100, got {r}"))
            }
            (EvalMode::Polynomial | EvalMode::Consensus, Some(n)) => Some(exactpoly::poly_f(n)?),
            _ => None,
        };
        Ok(Self { r, cfg, poly })
    }

    pub fn r(&self) -> f64 {
        self.r
    }

    pub fn eval(&self, x: f64) -> Result<Evaluation> {
        let p = EvalPoint::new(self.r, x)?;
        let mut routes = Vec::with_capacity(3);
        let mut tail_bound = 0.0;
        let mode = self.cfg.mode();
        if matches!(mode, EvalMode::Direct | EvalMode::Consensus) {
            let d = f_direct(p, &self.cfg)?;
            tail_bound = d.tail_bound;
            routes.push((EvalMode::Direct, d.value));
        }
        if matches!(mode, EvalMode::Hurwitz | EvalMode::Consensus) {
            routes.push((EvalMode::Hurwitz, f_hurwitz(p)?));
        }
        if let Some(poly) = &self.poly {
            routes.push((EvalMode::Polynomial, exactpoly::poly_eval(poly, x)));
        }
        let mut values: Vec<f64> = routes.iter().map(|&(_, v)| v).collect();
        values.sort_by(f64::total_cmp);
        let n = values.len();
        let value = if n % 2 == 1 {
            values[n / 2]
        } else {
            0.5 * (values[n / 2 - 1] + values[n / 2])
        };
        let spread = values[n - 1] - values[0];
        Ok(Evaluation {
            value,
            spread,
            tail_bound,
            routes,
        })
    }
}

/// One-shot evaluation of `f_r(x)` in the configured mode.
pub fn evaluate(p: EvalPoint, cfg: EvalConfig) -> Result<Evaluation> {
    Evaluator::new(p.r(), cfg)?.eval(p.x())
}
