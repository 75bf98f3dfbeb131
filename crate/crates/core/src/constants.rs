//! Transference constants relating Fourier-transform norms on the torus and
//! on the line.
//!
//! With `q = 2r` the minimum constant is
//! `C_q = f_{q/2}(1/2) = 2(2^q - 1) ζ(q) / π^q`, the torus norm is bounded by
//! `C_q^{-d/q}` times the line norm, and `C_q^{-1/q} ≤ π/2` because
//! `(Σ_m |1/2 + m|^{-q})^{1/q} ≥ 2`. Only these multiplicative factors are
//! computed; the operator norms themselves depend on the Banach space.
//!
//! All formulas are rearranged so that `2^q` and `π^q` never appear on their
//! own, which keeps them finite for large `q`.

use crate::error::{domain, Result};
use crate::specfun::{bernoulli, factorial, hurwitz_zeta};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use serde::{Serialize, Serializer};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantQuery {
    q: f64,
    d: u32,
}

impl ConstantQuery {
    pub fn new(q: f64, d: u32) -> Result<Self> {
        check_q(q)?;
        if d < 1 {
            return domain("dimension d must be at least 1");
        }
        Ok(Self { q, d })
    }

    pub fn q(&self) -> f64 {
        self.q
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    /// Hölder conjugate `p` with `1/p + 1/q = 1`.
    pub fn p(&self) -> f64 {
        self.q / (self.q - 1.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConstantReport {
    pub q: f64,
    pub d: u32,
    pub c_q: f64,
    pub factor: f64,
    pub crude: f64,
    #[serde(serialize_with = "ratio_string")]
    pub exact_c_q: Option<BigRational>,
}

fn ratio_string<S: Serializer>(v: &Option<BigRational>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(r) => s.serialize_str(&r.to_string()),
        None => s.serialize_none(),
    }
}

fn check_q(q: f64) -> Result<()> {
    if !q.is_finite() || q < 2.0 {
        return domain(format!("q must be at least 2, got {q}"));
    }
    Ok(())
}

/// `2(1 - 2^{-q}) ζ(q)`, i.e. `Σ_{m∈Z} |1/2 + m|^{-q}` divided by `2^q`.
fn scaled_halfshift_sum(q: f64) -> Result<f64> {
    Ok(2.0 * (1.0 - (-q).exp2()) * hurwitz_zeta(q, 1.0)?)
}

/// `C_q = 2(2^q - 1) ζ(q) / π^q`.
pub fn c_q(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(scaled_halfshift_sum(q)? * (2.0 / PI).powf(q))
}

/// `(2^{2n} - 1) 2^{2n} |B_{2n}| / (2n)!`, the exact value of `C_{2n}`.
pub fn exact_c_q(n: u32) -> Result<BigRational> {
    if n == 0 {
        return domain("exact_c_q requires n >= 1");
    }
    let two_n = 2 * n as usize;
    let fact = factorial(2 * n)?;
    let pow = BigInt::one() << two_n;
    let b = bernoulli(two_n).swap_remove(two_n).abs();
    Ok(b * BigRational::new((&pow - BigInt::one()) * &pow, fact))
}

/// `(π/2)^d`.
pub fn crude_bound(d: u32) -> Result<f64> {
    if d < 1 {
        return domain("dimension d must be at least 1");
    }
    Ok((PI / 2.0).powi(d as i32))
}

/// `(Σ_{m∈Z} |1/2 + m|^{-q})^{1/q} = (2(2^q - 1) ζ(q))^{1/q}`.
pub fn lq_norm_halfshift(q: f64) -> Result<f64> {
    check_q(q)?;
    Ok(2.0 * scaled_halfshift_sum(q)?.powf(1.0 / q))
}

/// All factors for a `(q, d)` query.
pub fn transference_factor(query: ConstantQuery) -> Result<ConstantReport> {
    let (q, d) = (query.q, query.d);
    let cq = c_q(q)?;
    let factor = (PI / lq_norm_halfshift(q)?).powi(d as i32);
    let exact = if q.fract() == 0.0 && (q as u64).is_multiple_of(2) && q <= 200.0 {
        Some(exact_c_q((q as u32) / 2)?)
    } else {
        None
    };
    Ok(ConstantReport {
        q,
        d,
        c_q: cq,
        factor,
        crude: crude_bound(d)?,
        exact_c_q: exact,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn c_q_examples() {
        assert!((c_q(2.0).unwrap() - 1.0).abs() < 1e-14);
        assert!((c_q(4.0).unwrap() - 1.0 / 3.0).abs() < 1e-14);
        assert!((c_q(6.0).unwrap() - 2.0 / 15.0).abs() < 1e-14);
        assert!(c_q(1.9).is_err());
        assert!(c_q(f64::NAN).is_err());
    }

    #[test]
    fn exact_values() {
        assert_eq!(exact_c_q(1).unwrap(), q(1, 1));
        assert_eq!(exact_c_q(2).unwrap(), q(1, 3));
        assert_eq!(exact_c_q(3).unwrap(), q(2, 15));
        assert_eq!(exact_c_q(4).unwrap(), q(17, 315));
        assert_eq!(exact_c_q(5).unwrap(), q(62, 2835));
        for n in 1..=15 {
            let exact = exact_c_q(n).unwrap().to_f64().unwrap();
            assert!((exact - c_q(2.0 * n as f64).unwrap()).abs() <= 1e-13, "n = {n}");
        }
    }

    #[test]
    fn factor_examples() {
        let r = transference_factor(ConstantQuery::new(2.0, 1).unwrap()).unwrap();
        assert!((r.factor - 1.0).abs() < 1e-12);
        let r = transference_factor(ConstantQuery::new(4.0, 1).unwrap()).unwrap();
        assert!((r.factor - 3f64.powf(0.25)).abs() < 1e-12);
        assert!((r.factor - 1.316_074_0).abs() < 1e-7);
        assert_eq!(r.exact_c_q, Some(q(1, 3)));
        let r = transference_factor(ConstantQuery::new(4.0, 2).unwrap()).unwrap();
        assert!((r.factor - 3f64.sqrt()).abs() < 1e-12);
        let r = transference_factor(ConstantQuery::new(3.5, 1).unwrap()).unwrap();
        assert!(r.exact_c_q.is_none());
        assert!(ConstantQuery::new(4.0, 0).is_err());
        assert!((ConstantQuery::new(4.0, 1).unwrap().p() - 4.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn factor_is_power_of_c_q() {
        for &qq in &[2.0, 2.5, 4.0, 7.0, 30.0] {
            for d in 1..=3 {
                let r = transference_factor(ConstantQuery::new(qq, d).unwrap()).unwrap();
                let via_c = r.c_q.powf(-(d as f64) / qq);
                assert!((r.factor - via_c).abs() < 1e-12);
                assert!(r.factor <= r.crude + 1e-12);
                assert!(r.c_q > 0.0 && r.c_q <= 1.0 + 1e-15);
            }
        }
    }

    #[test]
    fn crude_examples() {
        assert!((crude_bound(1).unwrap() - 1.570_796_3).abs() < 1e-7);
        assert!((crude_bound(2).unwrap() - 2.467_401_1).abs() < 1e-7);
        assert!((crude_bound(3).unwrap() - 3.875_784_6).abs() < 1e-7);
        assert!(crude_bound(0).is_err());
    }

    #[test]
    fn lq_norm_examples() {
        assert!((lq_norm_halfshift(2.0).unwrap() - PI).abs() < 1e-14);
        let expected = (PI.powi(4) / 3.0).powf(0.25);
        assert!((lq_norm_halfshift(4.0).unwrap() - expected).abs() < 1e-14);
        assert!((lq_norm_halfshift(4.0).unwrap() - 2.387_094_207_978_406_6).abs() < 1e-13);
        // the two dominant terms m ∈ {0, -1} give 2·2^{1/q}
        let v = lq_norm_halfshift(1000.0).unwrap();
        assert!((v - 2.0 * 2f64.powf(1e-3)).abs() < 1e-12);
        assert!((v - 2.0).abs() < 2e-3);
    }

    #[test]
    fn report_json_shape() {
        let r = transference_factor(ConstantQuery::new(4.0, 1).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert_eq!(v["exact_c_q"], "1/3");
        assert_eq!(v["d"], 1);
        let r = transference_factor(ConstantQuery::new(3.0, 1).unwrap()).unwrap();
        let v: serde_json::Value = serde_json::to_value(&r).unwrap();
        assert!(v["exact_c_q"].is_null());
        for key in ["q", "d", "c_q", "factor", "crude", "exact_c_q"] {
            assert!(v.get(key).is_some(), "missing {key}");
        }
    }
}
