//! Outward-rounded interval arithmetic.
//!
//! Every operation evaluates its endpoint formulas in round-to-nearest and
//! then widens the result by a few units in the last place, four for the
//! field operations and elementary functions. This is validation at
//! floating-point rigor: it assumes the platform `libm` is accurate to
//! within one ulp, and does not switch the hardware rounding mode.

use crate::sinc::sinc_unchecked;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

const ULPS: u32 = 4;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Interval {
    lo: f64,
    hi: f64,
}

fn down(mut v: f64, n: u32) -> f64 {
    for _ in 0..n {
        v = v.next_down();
    }
    v
}

fn up(mut v: f64, n: u32) -> f64 {
    for _ in 0..n {
        v = v.next_up();
    }
    v
}

impl Interval {
    /// `[lo, hi]`; panics if the bounds are NaN or out of order.
    pub fn new(lo: f64, hi: f64) -> Self {
        assert!(lo <= hi, "invalid interval [{lo}, {hi}]");
        Self { lo, hi }
    }

    pub fn point(x: f64) -> Self {
        Self::new(x, x)
    }

    pub fn entire() -> Self {
        Self {
            lo: f64::NEG_INFINITY,
            hi: f64::INFINITY,
        }
    }

    /// An enclosure of π.
    pub fn pi() -> Self {
        Self::widened(PI, PI, 1)
    }

    fn widened(lo: f64, hi: f64, n: u32) -> Self {
        if lo.is_nan() || hi.is_nan() {
            return Self::entire();
        }
        Self {
            lo: down(lo, n),
            hi: up(hi, n),
        }
    }

    fn rounded(lo: f64, hi: f64) -> Self {
        Self::widened(lo, hi, ULPS)
    }

    pub fn lo(&self) -> f64 {
        self.lo
    }

    pub fn hi(&self) -> f64 {
        self.hi
    }

    pub fn width(&self) -> f64 {
        self.hi - self.lo
    }

    pub fn mid(&self) -> f64 {
        0.5 * self.lo + 0.5 * self.hi
    }

    pub fn is_finite(&self) -> bool {
        self.lo.is_finite() && self.hi.is_finite()
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lo <= x && x <= self.hi
    }

    pub fn contains_zero(&self) -> bool {
        self.contains(0.0)
    }

    pub fn hull(&self, other: &Self) -> Self {
        Self {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Intersection of two enclosures of the same quantity. Both are assumed
    /// sound, so an empty result can only come from rounding at a touching
    /// endpoint and collapses onto the larger lower bound.
    pub fn intersect(&self, other: &Self) -> Self {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi).max(lo);
        Self { lo, hi }
    }

    pub fn split(&self) -> (Self, Self) {
        let m = self.mid();
        (Self::new(self.lo, m), Self::new(m, self.hi))
    }

    pub fn add(self, o: Self) -> Self {
        Self::rounded(self.lo + o.lo, self.hi + o.hi)
    }

    pub fn sub(self, o: Self) -> Self {
        Self::rounded(self.lo - o.hi, self.hi - o.lo)
    }

    pub fn neg(self) -> Self {
        Self {
            lo: -self.hi,
            hi: -self.lo,
        }
    }

    pub fn mul(self, o: Self) -> Self {
        let p = [
            self.lo * o.lo,
            self.lo * o.hi,
            self.hi * o.lo,
            self.hi * o.hi,
        ];
        if p.iter().any(|v| v.is_nan()) {
            return Self::entire();
        }
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi)
    }

    pub fn div(self, o: Self) -> Self {
        if o.contains_zero() {
            return Self::entire();
        }
        let p = [
            self.lo / o.lo,
            self.lo / o.hi,
            self.hi / o.lo,
            self.hi / o.hi,
        ];
        if p.iter().any(|v| v.is_nan()) {
            return Self::entire();
        }
        let lo = p.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = p.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi)
    }

    pub fn powi(self, n: i32) -> Self {
        if n == 0 {
            return Self::point(1.0);
        }
        if n < 0 {
            return Self::point(1.0).div(self.powi(-n));
        }
        // powi is repeated multiplication: allow one ulp per factor
        let slack = ULPS + n.unsigned_abs();
        if n % 2 == 1 {
            return Self::widened(self.lo.powi(n), self.hi.powi(n), slack);
        }
        let (a, b) = (self.lo.abs(), self.hi.abs());
        let big = a.max(b).powi(n);
        if self.contains_zero() {
            Self::widened(0.0, big, slack).clamp_lo(0.0)
        } else {
            Self::widened(a.min(b).powi(n), big, slack).clamp_lo(0.0)
        }
    }

    /// `self^e` for a nonnegative base; the extremes of `exp(e·ln x)` over a
    /// box sit at its corners.
    pub fn pow(self, e: Self) -> Self {
        if self.hi < 0.0 || !self.is_finite() || !e.is_finite() {
            return Self::entire();
        }
        let base = Self {
            lo: self.lo.max(0.0),
            hi: self.hi,
        };
        if base.lo == 0.0 && e.lo <= 0.0 {
            return Self::entire();
        }
        if self.lo < 0.0 {
            // only reachable through rounding slack of a nonnegative quantity
            if self.lo < -1e-300 {
                return Self::entire();
            }
        }
        let c = [
            base.lo.powf(e.lo),
            base.lo.powf(e.hi),
            base.hi.powf(e.lo),
            base.hi.powf(e.hi),
        ];
        let lo = c.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = c.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        Self::rounded(lo, hi).clamp_lo(0.0)
    }

    pub fn sqrt(self) -> Self {
        if self.hi < 0.0 {
            return Self::entire();
        }
        Self::rounded(self.lo.max(0.0).sqrt(), self.hi.sqrt()).clamp_lo(0.0)
    }

    pub fn exp(self) -> Self {
        Self::rounded(self.lo.exp(), self.hi.exp()).clamp_lo(0.0)
    }

    pub fn ln(self) -> Self {
        if self.lo <= 0.0 {
            return Self::entire();
        }
        Self::rounded(self.lo.ln(), self.hi.ln())
    }

    pub fn sin(self) -> Self {
        self.trig(f64::sin, FRAC_PI_2)
    }

    pub fn cos(self) -> Self {
        self.trig(f64::cos, 0.0)
    }

    /// Enclosure of a sinusoid whose extrema sit at `phase + kπ`, maxima for
    /// even `k`. Critical points are located with a generous slack so that a
    /// borderline extremum is included rather than missed.
    fn trig(self, f: fn(f64) -> f64, phase: f64) -> Self {
        if !self.is_finite() {
            return Self::new(-1.0, 1.0);
        }
        if self.width() >= 2.0 * PI {
            return Self::new(-1.0, 1.0);
        }
        let (a, b) = (self.lo, self.hi);
        let fa = f(a);
        let fb = f(b);
        let mut out = Self::widened(fa.min(fb), fa.max(fb), ULPS);
        let slack = 1e-12 * (1.0 + a.abs().max(b.abs()));
        let k0 = ((a - phase - slack) / PI).floor() as i64;
        let k1 = ((b - phase + slack) / PI).ceil() as i64;
        for k in k0..=k1 {
            let c = phase + k as f64 * PI;
            if c >= a - slack && c <= b + slack {
                let v = if k.rem_euclid(2) == 0 { 1.0 } else { -1.0 };
                out = out.hull(&Self::point(v));
            }
        }
        out.clamp(-1.0, 1.0)
    }

    /// Normalized sinc `sin(πu)/(πu)`, continuous at 0.
    pub fn sinc(self) -> Self {
        if !self.is_finite() {
            return Self::new(-0.22, 1.0);
        }
        if self.lo >= -1.0 && self.hi <= 1.0 {
            // even and decreasing in |u| on [0, 1]
            let near = if self.contains_zero() {
                0.0
            } else {
                self.lo.abs().min(self.hi.abs())
            };
            let far = self.lo.abs().max(self.hi.abs());
            return Self::widened(sinc_unchecked(far), sinc_unchecked(near), 2 * ULPS)
                .clamp(-0.22, 1.0);
        }
        if self.contains_zero() {
            // global range of the normalized sinc
            return Self::new(-0.22, 1.0);
        }
        let arg = Self::pi().mul(self);
        arg.sin().div(arg).clamp(-0.22, 1.0)
    }

    fn clamp_lo(self, floor: f64) -> Self {
        Self {
            lo: self.lo.max(floor),
            hi: self.hi.max(floor),
        }
    }

    fn clamp(self, floor: f64, ceil: f64) -> Self {
        let lo = self.lo.clamp(floor, ceil);
        let hi = self.hi.clamp(floor, ceil);
        Self { lo, hi }
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:e}, {:e}]", self.lo, self.hi)
    }
}
