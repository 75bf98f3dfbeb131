//! Univariate expression trees evaluated both pointwise and over intervals.
//!
//! Constants are exact doubles; quantities such as `π` or `1/3` are built
//! from exact pieces (`Pi`, `1.0 / 3.0` as a division node) so that interval
//! evaluation encloses the real number rather than its rounding.

use super::interval::Interval;
use crate::sinc::sinc_unchecked;
use std::f64::consts::PI;
use std::ops;
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq)]
pub enum Node {
    X,
    Const(f64),
    Pi,
    Add(Expr, Expr),
    Sub(Expr, Expr),
    Mul(Expr, Expr),
    Div(Expr, Expr),
    Neg(Expr),
    PowI(Expr, i32),
    /// Real power of a nonnegative base.
    Pow(Expr, Expr),
    Sqrt(Expr),
    Sin(Expr),
    Cos(Expr),
    Exp(Expr),
    Ln(Expr),
    /// Normalized sinc, `sin(πu)/(πu)`.
    Sinc(Expr),
}

/// Shared handle to an expression node.
#[derive(Debug, Clone, PartialEq)]
pub struct Expr(Arc<Node>);

pub fn x() -> Expr {
    Expr::new(Node::X)
}

pub fn c(v: f64) -> Expr {
    Expr::new(Node::Const(v))
}

pub fn pi() -> Expr {
    Expr::new(Node::Pi)
}

pub fn sqrt(e: Expr) -> Expr {
    Expr::new(Node::Sqrt(e))
}

pub fn sin(e: Expr) -> Expr {
    Expr::new(Node::Sin(e))
}

pub fn cos(e: Expr) -> Expr {
    Expr::new(Node::Cos(e))
}

pub fn exp(e: Expr) -> Expr {
    Expr::new(Node::Exp(e))
}

pub fn ln(e: Expr) -> Expr {
    Expr::new(Node::Ln(e))
}

pub fn sinc(e: Expr) -> Expr {
    Expr::new(Node::Sinc(e))
}

impl Expr {
    fn new(n: Node) -> Self {
        Self(Arc::new(n))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn powi(&self, n: i32) -> Expr {
        match n {
            0 => c(1.0),
            1 => self.clone(),
            _ => Expr::new(Node::PowI(self.clone(), n)),
        }
    }

    pub fn pow(&self, e: Expr) -> Expr {
        if let Node::Const(v) = e.node() {
            if v.fract() == 0.0 && v.abs() <= 64.0 {
                return self.powi(*v as i32);
            }
        }
        Expr::new(Node::Pow(self.clone(), e))
    }

    fn as_const(&self) -> Option<f64> {
        match self.node() {
            Node::Const(v) => Some(*v),
            _ => None,
        }
    }

    fn is_zero(&self) -> bool {
        self.as_const() == Some(0.0)
    }

    fn is_one(&self) -> bool {
        self.as_const() == Some(1.0)
    }

    /// True when the expression does not mention `x`.
    pub fn is_constant(&self) -> bool {
        match self.node() {
            Node::X => false,
            Node::Const(_) | Node::Pi => true,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) | Node::Pow(a, b) => {
                a.is_constant() && b.is_constant()
            }
            Node::Neg(a)
            | Node::PowI(a, _)
            | Node::Sqrt(a)
            | Node::Sin(a)
            | Node::Cos(a)
            | Node::Exp(a)
            | Node::Ln(a)
            | Node::Sinc(a) => a.is_constant(),
        }
    }

    /// Pointwise value in double precision.
    pub fn eval(&self, x: f64) -> f64 {
        match self.node() {
            Node::X => x,
            Node::Const(v) => *v,
            Node::Pi => PI,
            Node::Add(a, b) => a.eval(x) + b.eval(x),
            Node::Sub(a, b) => a.eval(x) - b.eval(x),
            Node::Mul(a, b) => a.eval(x) * b.eval(x),
            Node::Div(a, b) => a.eval(x) / b.eval(x),
            Node::Neg(a) => -a.eval(x),
            Node::PowI(a, n) => a.eval(x).powi(*n),
            Node::Pow(a, b) => a.eval(x).powf(b.eval(x)),
            Node::Sqrt(a) => a.eval(x).sqrt(),
            Node::Sin(a) => a.eval(x).sin(),
            Node::Cos(a) => a.eval(x).cos(),
            Node::Exp(a) => a.eval(x).exp(),
            Node::Ln(a) => a.eval(x).ln(),
            Node::Sinc(a) => sinc_unchecked(a.eval(x)),
        }
    }

    /// Enclosure of the range over `bx`.
    pub fn enclose(&self, bx: Interval) -> Interval {
        match self.node() {
            Node::X => bx,
            Node::Const(v) => Interval::point(*v),
            Node::Pi => Interval::pi(),
            Node::Add(a, b) => a.enclose(bx).add(b.enclose(bx)),
            Node::Sub(a, b) => a.enclose(bx).sub(b.enclose(bx)),
            Node::Mul(a, b) => a.enclose(bx).mul(b.enclose(bx)),
            Node::Div(a, b) => a.enclose(bx).div(b.enclose(bx)),
            Node::Neg(a) => a.enclose(bx).neg(),
            Node::PowI(a, n) => a.enclose(bx).powi(*n),
            Node::Pow(a, b) => a.enclose(bx).pow(b.enclose(bx)),
            Node::Sqrt(a) => a.enclose(bx).sqrt(),
            Node::Sin(a) => a.enclose(bx).sin(),
            Node::Cos(a) => a.enclose(bx).cos(),
            Node::Exp(a) => a.enclose(bx).exp(),
            Node::Ln(a) => a.enclose(bx).ln(),
            Node::Sinc(a) => a.enclose(bx).sinc(),
        }
    }

    /// Symbolic derivative in `x`, with identity simplifications only.
    pub fn derivative(&self) -> Expr {
        match self.node() {
            Node::X => c(1.0),
            Node::Const(_) | Node::Pi => c(0.0),
            Node::Add(a, b) => a.derivative() + b.derivative(),
            Node::Sub(a, b) => a.derivative() - b.derivative(),
            Node::Mul(a, b) => a.derivative() * b.clone() + a.clone() * b.derivative(),
            Node::Div(a, b) => {
                if b.is_constant() {
                    a.derivative() / b.clone()
                } else {
                    (a.derivative() * b.clone() - a.clone() * b.derivative()) / b.powi(2)
                }
            }
            Node::Neg(a) => -a.derivative(),
            Node::PowI(a, n) => c(*n as f64) * a.powi(n - 1) * a.derivative(),
            Node::Pow(a, b) => {
                let main = b.clone() * a.pow(b.clone() - c(1.0)) * a.derivative();
                if b.is_constant() {
                    main
                } else {
                    main + self.clone() * ln(a.clone()) * b.derivative()
                }
            }
            Node::Sqrt(a) => a.derivative() / (c(2.0) * self.clone()),
            Node::Sin(a) => cos(a.clone()) * a.derivative(),
            Node::Cos(a) => -(sin(a.clone()) * a.derivative()),
            Node::Exp(a) => self.clone() * a.derivative(),
            Node::Ln(a) => a.derivative() / a.clone(),
            Node::Sinc(a) => {
                // d/du sinc(u) = (cos(πu) - sinc(u)) / u
                (cos(pi() * a.clone()) - self.clone()) / a.clone() * a.derivative()
            }
        }
    }
}

impl ops::Add for Expr {
    type Output = Expr;
    fn add(self, o: Expr) -> Expr {
        if self.is_zero() {
            o
        } else if o.is_zero() {
            self
        } else {
            Expr::new(Node::Add(self, o))
        }
    }
}

impl ops::Sub for Expr {
    type Output = Expr;
    fn sub(self, o: Expr) -> Expr {
        if o.is_zero() {
            self
        } else if self.is_zero() {
            -o
        } else {
            Expr::new(Node::Sub(self, o))
        }
    }
}

impl ops::Mul for Expr {
    type Output = Expr;
    fn mul(self, o: Expr) -> Expr {
        if self.is_zero() || o.is_zero() {
            c(0.0)
        } else if self.is_one() {
            o
        } else if o.is_one() {
            self
        } else {
            Expr::new(Node::Mul(self, o))
        }
    }
}

impl ops::Div for Expr {
    type Output = Expr;
    fn div(self, o: Expr) -> Expr {
        if self.is_zero() {
            c(0.0)
        } else if o.is_one() {
            self
        } else {
            Expr::new(Node::Div(self, o))
        }
    }
}

impl ops::Neg for Expr {
    type Output = Expr;
    fn neg(self) -> Expr {
        match self.node() {
            Node::Const(v) => c(-v),
            Node::Neg(a) => a.clone(),
            _ => Expr::new(Node::Neg(self)),
        }
    }
}

macro_rules! scalar_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl ops::$tr<f64> for Expr {
            type Output = Expr;
            fn $f(self, o: f64) -> Expr {
                ops::$tr::$f(self, c(o))
            }
        }
        impl ops::$tr<Expr> for f64 {
            type Output = Expr;
            fn $f(self, o: Expr) -> Expr {
                ops::$tr::$f(c(self), o)
            }
        }
    )*};
}

scalar_ops!(Add add, Sub sub, Mul mul, Div div);

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_and_interval_agree_on_polynomial() {
        let e = 3.0 * x().powi(2) - 2.0 * x() + 1.0;
        assert_eq!(e.eval(2.0), 9.0);
        let enc = e.enclose(Interval::point(2.0));
        assert!(enc.contains(9.0) && enc.width() < 1e-13);
    }

    #[test]
    fn derivative_rules() {
        let e = sin(pi() * x()) * x().powi(3);
        let d = e.derivative();
        let xv: f64 = 0.3;
        let exact = PI * (PI * xv).cos() * xv.powi(3) + (PI * xv).sin() * 3.0 * xv * xv;
        assert!((d.eval(xv) - exact).abs() < 1e-14);

        let s = sinc(x());
        let ds = s.derivative();
        let h = 1e-6;
        let fd = (sinc_unchecked(0.7 + h) - sinc_unchecked(0.7 - h)) / (2.0 * h);
        assert!((ds.eval(0.7) - fd).abs() < 1e-8);

        let p = (x() + 1.0).pow(c(1.0) / c(3.0));
        let dp = p.derivative();
        let exact = (1.0 / 3.0) * 1.5f64.powf(-2.0 / 3.0);
        assert!((dp.eval(0.5) - exact).abs() < 1e-15);
    }

    #[test]
    fn simplification_identities() {
        assert_eq!(c(0.0) * x(), c(0.0));
        assert_eq!(c(1.0) * x(), x());
        assert_eq!(x() + c(0.0), x());
        assert_eq!(-(-x()), x());
        assert_eq!(x().powi(1), x());
        assert_eq!(c(5.0).derivative(), c(0.0));
        assert!((c(1.0) / c(3.0)).is_constant());
        assert!(!sin(x()).is_constant());
    }
}
