//! Exact polynomials `P_r` with `f_r(x) = P_r(cos²(πx))` for integer `r`.
//!
//! With `y = cos² t`, `t = πx` and `D = d/dy`, consecutive polynomials are
//! related by
//!
//! ```text
//! 2r(2r+1) P_{r+1} = [ 4y(r - yD)² + 8(r - yD)yD + 2yD + 2r + 4yD² + 2D ] P_r,
//! ```
//!
//! starting from `P_1 = 1`. The operator is applied literally, term by term,
//! using only multiply-by-`y`, differentiate and scalar combinations.

use crate::error::{Error, Result};
use crate::sinc::cos_pi;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Largest `r` for which polynomials are built.
pub const MAX_R: u32 = 100;

/// Dense ascending coefficient list over the rationals.
type Coeffs = Vec<BigRational>;

/// Integer numerators over a common denominator; the operator has integer
/// coefficients, so it never needs a gcd.
type IntCoeffs = Vec<BigInt>;

fn trim(mut p: Coeffs) -> Coeffs {
    while p.len() > 1 && p.last().is_some_and(Zero::is_zero) {
        p.pop();
    }
    p
}

fn mul_y(p: &[BigInt]) -> IntCoeffs {
    let mut out = Vec::with_capacity(p.len() + 1);
    out.push(BigInt::zero());
    out.extend(p.iter().cloned());
    out
}

fn deriv(p: &[BigInt]) -> IntCoeffs {
    if p.len() <= 1 {
        return vec![BigInt::zero()];
    }
    p.iter().enumerate().skip(1).map(|(k, c)| c * k).collect()
}

fn scale(p: &[BigInt], c: i64) -> IntCoeffs {
    p.iter().map(|a| a * c).collect()
}

fn add(p: &[BigInt], q: &[BigInt]) -> IntCoeffs {
    let n = p.len().max(q.len());
    (0..n)
        .map(|k| match (p.get(k), q.get(k)) {
            (Some(a), Some(b)) => a + b,
            (Some(a), None) | (None, Some(a)) => a.clone(),
            (None, None) => BigInt::zero(),
        })
        .collect()
}

/// `(r - yD) p`
fn euler_shift(p: &[BigInt], r: u32) -> IntCoeffs {
    add(&scale(p, r as i64), &scale(&mul_y(&deriv(p)), -1))
}

/// The bracketed operator of the recursion applied to `p` at parameter `r`.
fn recursion_operator(p: &[BigInt], r: u32) -> IntCoeffs {
    let shifted = euler_shift(p, r);
    let y_dp = mul_y(&deriv(p));
    let d2p = deriv(&deriv(p));

    // 4y(r - yD)² p
    let t1 = scale(&mul_y(&euler_shift(&shifted, r)), 4);
    // 8(r - yD) yD p
    let t2 = scale(&euler_shift(&y_dp, r), 8);
    // 2yD p
    let t3 = scale(&y_dp, 2);
    // 2r p
    let t4 = scale(p, 2 * r as i64);
    // 4yD² p
    let t5 = scale(&mul_y(&d2p), 4);
    // 2D p
    let t6 = scale(&deriv(p), 2);

    [t2, t3, t4, t5, t6]
        .iter()
        .fold(t1, |acc, t| add(&acc, t))
}

/// `2r(2r+1)`, the divisor taking the operator image of `P_r` to `P_{r+1}`.
fn step_divisor(r: u32) -> BigInt {
    BigInt::from(2 * r as i64 * (2 * r as i64 + 1))
}

fn to_rational(num: IntCoeffs, den: &BigInt) -> Coeffs {
    trim(num.into_iter().map(|n| BigRational::new(n, den.clone())).collect())
}

fn check_cap(r: u32) -> Result<()> {
    if r > MAX_R {
        return Err(Error::SizeLimit(format!("P_{r} exceeds the cap r <= {MAX_R}")));
    }
    Ok(())
}

/// `P_r` as exact rational coefficients in ascending powers of `y = cos²(πx)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SincPolynomial {
    r: u32,
    coeffs: Coeffs,
}

impl SincPolynomial {
    /// `P_1 = 1`.
    pub fn one() -> Self {
        Self {
            r: 1,
            coeffs: vec![BigRational::one()],
        }
    }

    /// Builds a polynomial from raw coefficients, checking every structural
    /// invariant.
    pub fn from_coeffs(r: u32, coeffs: Vec<BigRational>) -> Result<Self> {
        let p = Self {
            r,
            coeffs: trim(coeffs),
        };
        p.validate()?;
        Ok(p)
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Degree `r - 1`, nonnegative coefficients, coefficients summing to one.
    pub fn validate(&self) -> Result<()> {
        if self.r == 0 {
            return Err(Error::CertificateFailure("r must be positive".into()));
        }
        if self.degree() != self.r as usize - 1 || self.coeffs.last().is_some_and(Zero::is_zero)
        {
            return Err(Error::CertificateFailure(format!(
                "P_{} has degree {}, expected {}",
                self.r,
                self.degree(),
                self.r - 1
            )));
        }
        if let Some(k) = self.coeffs.iter().position(Signed::is_negative) {
            return Err(Error::CertificateFailure(format!(
                "P_{} has negative coefficient {} at y^{k}",
                self.r, self.coeffs[k]
            )));
        }
        let total = self
            .coeffs
            .iter()
            .fold(BigRational::zero(), |acc, c| acc + c);
        if !total.is_one() {
            return Err(Error::CertificateFailure(format!(
                "P_{} coefficients sum to {total}, not 1",
                self.r
            )));
        }
        Ok(())
    }

    /// `P(y)` at the float `y`, Horner scheme.
    pub fn eval_y(&self, y: f64) -> f64 {
        self.float_coeffs()
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * y + c)
    }

    fn float_coeffs(&self) -> Vec<f64> {
        self.coeffs
            .iter()
            .map(|c| c.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// `P_{r+1}` from `P_r`, exactly.
pub fn poly_step(p: &SincPolynomial) -> Result<SincPolynomial> {
    let r = p.r;
    check_cap(r + 1)?;
    let den = p
        .coeffs
        .iter()
        .fold(BigInt::one(), |l, c| l.lcm(c.denom()));
    let num: IntCoeffs = p.coeffs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    Ok(SincPolynomial {
        r: r + 1,
        coeffs: to_rational(recursion_operator(&num, r), &(den * step_divisor(r))),
    })
}

/// `P_r` for `1 ≤ r ≤ 100`, iterating the recursion from `P_1` over the
/// common denominator `(2r - 1)!`.
pub fn poly_f(r: u32) -> Result<SincPolynomial> {
    if r == 0 {
        return Err(Error::SizeLimit("r = 0 outside 1..=100".into()));
    }
    check_cap(r)?;
    let mut num: IntCoeffs = vec![BigInt::one()];
    let mut den = BigInt::one();
    for k in 1..r {
        num = recursion_operator(&num, k);
        den *= step_divisor(k);
    }
    let p = SincPolynomial {
        r,
        coeffs: to_rational(num, &den),
    };
    p.validate()?;
    Ok(p)
}

/// `P_r(cos²(πx))` for `x ∈ [0, 1]`.
pub fn poly_eval(p: &SincPolynomial, x: f64) -> f64 {
    let c = cos_pi(x);
    p.eval_y(c * c)
}

#[derive(Debug, Clone, PartialEq)]
pub struct MinCertificate {
    pub min_value: BigRational,
    pub location: &'static str,
}

/// Nonnegative coefficients put the minimum of `P_r` over `y ∈ [0, 1]` at
/// `y = 0`, i.e. the minimum of `f_r` at `x = 1/2`, with value `P_r(0)`.
pub fn poly_min_certificate(p: &SincPolynomial) -> Result<MinCertificate> {
    p.validate()?;
    Ok(MinCertificate {
        min_value: p.coeffs[0].clone(),
        location: "minimum of P over [0,1] at y=0, hence f_r minimum at x=1/2",
    })
}
