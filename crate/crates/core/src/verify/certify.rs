//! Adaptive bisection certification of sign claims.
//!
//! A box is settled when an enclosure of the expression over it has the
//! claimed sign. Enclosures are the intersection of the natural interval
//! extension, the mean-value form around the midpoint and, on boxes touching
//! a listed equality point `p`, the Taylor forms
//!
//! ```text
//! Σ_{j<k} g^{(j)}(p) (X - p)^j / j!  +  g^{(k)}(X) (X - p)^k / k!,   k = 1, 2, 3.
//! ```
//!
//! At equality points the claim is only certifiable up to rounding, so such
//! boxes are accepted once the enclosure clears `-EPS_CERT`.

use super::expr::Expr;
use super::interval::Interval;
use crate::error::{domain, Result};
use serde::Serialize;

/// Slack admitted on boxes that touch a known equality point.
pub const EPS_CERT: f64 = 1e-13;

/// Hard ceiling on bisection depth.
pub const MAX_DEPTH_LIMIT: u32 = 60;

/// Boxes visited before giving up as inconclusive.
const BOX_BUDGET: u64 = 2_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Claim {
    Nonnegative,
    Nonpositive,
}

impl Claim {
    pub fn as_str(&self) -> &'static str {
        match self {
            Claim::Nonnegative => "nonnegative",
            Claim::Nonpositive => "nonpositive",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Certified,
    /// A sampled check (grid, property run) with no failure.
    Passed,
    Violated,
    Inconclusive,
    Pending,
}

impl Status {
    pub fn is_ok(&self) -> bool {
        matches!(self, Status::Certified | Status::Passed)
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Certified => "certified",
            Status::Passed => "passed",
            Status::Violated => "violated",
            Status::Inconclusive => "inconclusive",
            Status::Pending => "pending",
        }
    }
}

/// Where the claimed inequality is known to be tight.
#[derive(Debug, Clone, PartialEq)]
pub enum EqualitySet {
    Points(Vec<f64>),
    /// The expression vanishes identically on the domain.
    Everywhere,
}

impl EqualitySet {
    pub fn none() -> Self {
        EqualitySet::Points(Vec::new())
    }

    fn touching(&self, bx: Interval) -> Vec<f64> {
        match self {
            EqualitySet::Points(ps) => ps.iter().copied().filter(|&p| bx.contains(p)).collect(),
            EqualitySet::Everywhere => vec![bx.mid()],
        }
    }

    fn touches(&self, bx: Interval) -> bool {
        match self {
            EqualitySet::Points(ps) => ps.iter().any(|&p| bx.contains(p)),
            EqualitySet::Everywhere => true,
        }
    }
}

#[derive(Debug, Clone)]
pub struct CertifiedInequality {
    pub id: String,
    pub domain: Interval,
    pub expression: Expr,
    pub claim: Claim,
    pub status: Status,
    pub min_width: f64,
    pub witness: Option<f64>,
    pub equality: EqualitySet,
    /// The mathematical statement being certified.
    pub anchor: String,
    pub boxes_visited: u64,
    /// Smallest claim-oriented lower bound over settled boxes.
    pub worst_margin: f64,
    pub diagnostic: Option<String>,
}

impl CertifiedInequality {
    pub fn new(
        id: impl Into<String>,
        domain: Interval,
        expression: Expr,
        claim: Claim,
        equality: EqualitySet,
        anchor: impl Into<String>,
    ) -> Self {
        Self {
            id: id.into(),
            domain,
            expression,
            claim,
            status: Status::Pending,
            min_width: 1e-8,
            witness: None,
            equality,
            anchor: anchor.into(),
            boxes_visited: 0,
            worst_margin: f64::INFINITY,
            diagnostic: None,
        }
    }

    /// The expression oriented so that the claim reads "≥ 0".
    pub fn oriented(&self) -> Expr {
        match self.claim {
            Claim::Nonnegative => self.expression.clone(),
            Claim::Nonpositive => -self.expression.clone(),
        }
    }
}

struct Oriented {
    g: Expr,
    derivs: [Expr; 3],
}

impl Oriented {
    fn new(g: Expr) -> Self {
        let d1 = g.derivative();
        let d2 = d1.derivative();
        let d3 = d2.derivative();
        Self {
            g,
            derivs: [d1, d2, d3],
        }
    }

    fn nth(&self, j: usize) -> &Expr {
        if j == 0 {
            &self.g
        } else {
            &self.derivs[j - 1]
        }
    }

    fn enclose(&self, bx: Interval, eq: &EqualitySet) -> Interval {
        let mut enc = self.g.enclose(bx);
        if bx.width() == 0.0 {
            return enc;
        }
        let mid = bx.mid();
        let mv = self
            .g
            .enclose(Interval::point(mid))
            .add(self.derivs[0].enclose(bx).mul(bx.sub(Interval::point(mid))));
        if mv.is_finite() {
            enc = enc.intersect(&mv);
        }
        for p in eq.touching(bx) {
            let offset = bx.sub(Interval::point(p));
            for k in 1..=3usize {
                let mut t = Interval::point(0.0);
                let mut fact = 1.0;
                for j in 0..k {
                    if j > 0 {
                        fact *= j as f64;
                    }
                    let coeff = self.nth(j).enclose(Interval::point(p));
                    t = t.add(coeff.mul(offset.powi(j as i32)).div(Interval::point(fact)));
                }
                fact *= k as f64;
                let rem = self
                    .nth(k)
                    .enclose(bx)
                    .mul(offset.powi(k as i32))
                    .div(Interval::point(fact));
                let t = t.add(rem);
                if t.is_finite() {
                    enc = enc.intersect(&t);
                }
            }
        }
        enc
    }
}

/// Runs adaptive bisection on `ineq` and returns it with status, witness,
/// box count and worst margin filled in. Deterministic for fixed inputs.
pub fn certify(ineq: &CertifiedInequality, max_depth: u32) -> Result<CertifiedInequality> {
    if max_depth > MAX_DEPTH_LIMIT {
        return domain(format!("max_depth {max_depth} exceeds {MAX_DEPTH_LIMIT}"));
    }
    let oriented = Oriented::new(ineq.oriented());
    let mut out = ineq.clone();
    out.witness = None;
    out.diagnostic = None;
    let mut worst = f64::INFINITY;
    let mut visited = 0u64;
    let mut inconclusive: Option<String> = None;
    let mut stack = vec![(ineq.domain, 0u32)];

    while let Some((bx, depth)) = stack.pop() {
        visited += 1;
        if visited > BOX_BUDGET {
            inconclusive.get_or_insert_with(|| format!("box budget {BOX_BUDGET} exhausted"));
            break;
        }
        let touches = ineq.equality.touches(bx);
        let threshold = if touches { -EPS_CERT } else { 0.0 };
        let enc = oriented.enclose(bx, &ineq.equality);
        if enc.is_finite() && enc.lo() >= threshold {
            worst = worst.min(enc.lo());
            continue;
        }

        for p in [bx.lo(), bx.mid(), bx.hi()] {
            let point_threshold = if ineq.equality.touches(Interval::point(p)) {
                -EPS_CERT
            } else {
                0.0
            };
            let pe = oriented.g.enclose(Interval::point(p));
            if pe.is_finite() && pe.hi() < point_threshold {
                out.status = Status::Violated;
                out.witness = Some(p);
                out.worst_margin = pe.hi();
                out.boxes_visited = visited;
                out.diagnostic = Some(format!("enclosure {pe} at x = {p:e}"));
                return Ok(out);
            }
        }

        if depth >= max_depth || bx.width() <= ineq.min_width {
            inconclusive.get_or_insert_with(|| {
                if enc.is_finite() {
                    format!("undecided box {bx} with enclosure {enc}")
                } else {
                    format!("non-finite enclosure on box {bx}")
                }
            });
            worst = worst.min(enc.lo());
            continue;
        }
        let (left, right) = bx.split();
        stack.push((right, depth + 1));
        stack.push((left, depth + 1));
    }

    out.boxes_visited = visited;
    out.worst_margin = worst;
    match inconclusive {
        Some(msg) => {
            out.status = Status::Inconclusive;
            out.diagnostic = Some(msg);
        }
        None => out.status = Status::Certified,
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::super::expr::{c, cos, pi, sin, sqrt, x};
    use super::*;

    fn unit() -> Interval {
        Interval::new(0.0, 1.0)
    }

    #[test]
    fn basic_inequality_certifies() {
        let e = sqrt(c(2.0)) * sin(pi() * x() / 4.0) - x();
        let ineq = CertifiedInequality::new(
            "basic",
            unit(),
            e,
            Claim::Nonnegative,
            EqualitySet::Points(vec![0.0, 1.0]),
            "",
        );
        let out = certify(&ineq, 40).unwrap();
        assert_eq!(out.status, Status::Certified, "{:?}", out.diagnostic);
    }

    #[test]
    fn cosine_bound_certifies() {
        let e = 1.0 - x().powi(2) - cos(pi() * x() / 2.0);
        let ineq = CertifiedInequality::new(
            "cos",
            unit(),
            e,
            Claim::Nonnegative,
            EqualitySet::Points(vec![0.0, 1.0]),
            "",
        );
        let out = certify(&ineq, 40).unwrap();
        assert_eq!(out.status, Status::Certified, "{:?}", out.diagnostic);
    }

    #[test]
    fn false_claim_is_violated_near_zero() {
        let e = sin(pi() * x()) - 0.5;
        let ineq = CertifiedInequality::new(
            "false",
            unit(),
            e,
            Claim::Nonnegative,
            EqualitySet::none(),
            "",
        );
        let out = certify(&ineq, 40).unwrap();
        assert_eq!(out.status, Status::Violated);
        let w = out.witness.unwrap();
        assert!(w < 0.1, "{w}");
    }

    #[test]
    fn tight_square_needs_its_equality_point() {
        // (x - 1/2)² written expanded: rounding keeps enclosures near 1/2
        // slightly negative unless the equality point is declared
        let e = x() * x() - x() + 0.25;
        let mut ineq = CertifiedInequality::new(
            "tight",
            unit(),
            e,
            Claim::Nonnegative,
            EqualitySet::none(),
            "",
        );
        let out = certify(&ineq, 30).unwrap();
        assert_eq!(out.status, Status::Inconclusive);
        ineq.equality = EqualitySet::Points(vec![0.5]);
        let out = certify(&ineq, 30).unwrap();
        assert_eq!(out.status, Status::Certified, "{:?}", out.diagnostic);
    }

    #[test]
    fn nonpositive_claims_are_oriented() {
        let ineq = CertifiedInequality::new(
            "neg",
            unit(),
            -(x() * x()) - 1.0,
            Claim::Nonpositive,
            EqualitySet::none(),
            "",
        );
        let out = certify(&ineq, 10).unwrap();
        assert_eq!(out.status, Status::Certified);
        assert!(out.worst_margin >= 1.0 - 1e-12);
    }

    #[test]
    fn depth_limit_is_enforced() {
        let ineq = CertifiedInequality::new(
            "d",
            unit(),
            x(),
            Claim::Nonnegative,
            EqualitySet::none(),
            "",
        );
        assert!(certify(&ineq, 61).is_err());
    }

    #[test]
    fn deterministic() {
        let e = sqrt(c(2.0)) * sin(pi() * x() / 4.0) - x();
        let ineq = CertifiedInequality::new(
            "basic",
            unit(),
            e,
            Claim::Nonnegative,
            EqualitySet::Points(vec![0.0, 1.0]),
            "",
        );
        let a = certify(&ineq, 40).unwrap();
        let b = certify(&ineq, 40).unwrap();
        assert_eq!(a.boxes_visited, b.boxes_visited);
        assert_eq!(a.worst_margin.to_bits(), b.worst_margin.to_bits());
    }
}
