//! Generalized exponential and logarithm, and the change-factor algebra
//! every judgment is expressed in.
//!
//! A change `x` stands for the multiplicative wealth update `1 + x`. The
//! value `x = -1` is ruin (factor zero); nothing below it is meaningful.

use std::fmt;

use crate::error::{domain, range, Error, Result};

/// Below this magnitude the shape parameter is treated as zero and the
/// generalized functions collapse to `exp` / `ln`.
pub const SHAPE_EPSILON: f64 = 1e-8;

/// A relative wealth change `x`, with factor `1 + x`. Always `x >= -1`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Change(f64);

impl Change {
    pub const ZERO: Change = Change(0.0);
    pub const RUIN: Change = Change(-1.0);

    pub fn new(x: f64) -> Result<Self> {
        check_change(x, "change")?;
        Ok(Change(x))
    }

    /// Change from an amount relative to a baseline wealth.
    pub fn from_amount(amount: f64, wealth: f64) -> Result<Self> {
        if !(wealth > 0.0 && wealth.is_finite()) {
            return Err(domain(format!("baseline wealth must be positive, got {wealth}")));
        }
        Change::new(amount / wealth)
    }

    pub fn value(self) -> f64 {
        self.0
    }

    pub fn factor(self) -> f64 {
        1.0 + self.0
    }

    /// Applies `other` after `self`: `(1+x1)(1+x2) - 1`.
    pub fn compose(self, other: Change) -> Change {
        Change((self.factor() * other.factor() - 1.0).max(-1.0))
    }

    pub fn is_ruin(self) -> bool {
        self.0 == -1.0
    }
}

impl fmt::Display for Change {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:+.4}%", self.0 * 100.0)
    }
}

impl TryFrom<f64> for Change {
    type Error = Error;

    fn try_from(x: f64) -> Result<Self> {
        Change::new(x)
    }
}

pub(crate) fn check_change(x: f64, what: &str) -> Result<()> {
    if x.is_nan() || x < -1.0 || x == f64::INFINITY {
        return Err(domain(format!("{what} must be a finite value >= -1, got {x}")));
    }
    Ok(())
}

pub(crate) fn check_unit(s: f64, what: &str) -> Result<()> {
    if !(0.0..=1.0).contains(&s) {
        return Err(range(format!("{what} must lie in [0, 1], got {s}")));
    }
    Ok(())
}

/// Generalized exponential `e_h^a = (1 + h a)^(1/h)`, with `exp(a)` as the
/// `h -> 0` limit.
///
/// Fails when `1 + h a <= 0`, i.e. the argument left the real domain.
pub fn gexp(h: f64, a: f64) -> Result<f64> {
    if h.is_nan() || a.is_nan() {
        return Err(domain("gexp called with NaN"));
    }
    if h.abs() < SHAPE_EPSILON {
        return Ok(a.exp());
    }
    let ha = h * a;
    if ha <= -1.0 {
        return Err(domain(format!("gexp: 1 + h*a = {} is not positive (h={h}, a={a})", 1.0 + ha)));
    }
    Ok((ha.ln_1p() / h).exp())
}

/// `e_h^a - 1`, accurate when the result is close to zero.
pub fn gexp_m1(h: f64, a: f64) -> Result<f64> {
    if h.is_nan() || a.is_nan() {
        return Err(domain("gexp called with NaN"));
    }
    if h.abs() < SHAPE_EPSILON {
        return Ok(a.exp_m1());
    }
    let ha = h * a;
    if ha <= -1.0 {
        return Err(domain(format!("gexp: 1 + h*a = {} is not positive (h={h}, a={a})", 1.0 + ha)));
    }
    Ok((ha.ln_1p() / h).exp_m1())
}

/// Generalized logarithm `ln_p(v) = (v^p - 1) / p`, inverse of [`gexp`].
pub fn glog(p: f64, v: f64) -> Result<f64> {
    if !(v > 0.0) {
        return Err(domain(format!("glog: argument must be positive, got {v}")));
    }
    if p.is_nan() {
        return Err(domain("glog called with NaN shape"));
    }
    if p.abs() < SHAPE_EPSILON {
        return Ok(v.ln());
    }
    Ok((p * v.ln()).exp_m1() / p)
}

/// Meiosis on a change: `(1 + X)^s - 1`.
///
/// Shrinks an uncertain change to the certain change with the same time
/// average growth.
pub fn meiotic_change(x: f64, s: f64) -> Result<f64> {
    check_unit(s, "sense of truth")?;
    check_change(x, "change")?;
    if s == 1.0 {
        return Ok(x);
    }
    if x == -1.0 {
        // 0^0 = 1: a never-true ruin contributes nothing
        return Ok(if s == 0.0 { 0.0 } else { -1.0 });
    }
    Ok((s * x.ln_1p()).exp_m1())
}

/// Hyperbole on a change: `(1 + y)^(1/s) - 1`, the inverse of [`meiotic_change`].
pub fn hyperbolic_change(y: f64, s: f64) -> Result<f64> {
    if !(s > 0.0 && s <= 1.0) {
        return Err(range(format!("hyperbole needs a sense of truth in (0, 1], got {s}")));
    }
    check_change(y, "change")?;
    if s == 1.0 || y == -1.0 {
        return Ok(y);
    }
    Ok((y.ln_1p() / s).exp_m1())
}
