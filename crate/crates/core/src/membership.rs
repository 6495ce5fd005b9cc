//! Fuzzy goal "the bigger the better" over changes.
//!
//! The family is `mu(x) = 1 - [1 - alpha*beta*(x+1)]^(1/alpha)`, i.e.
//! `1 - e_alpha^(-beta*(x+1))`. It maps `[-1, inf)` onto `[0, 1)`, is zero at
//! ruin and strictly increasing.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{check_change, check_unit, gexp};

/// Parameters of the membership family. Construct through [`MembershipParams::new`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawParams", into = "RawParams")]
pub struct MembershipParams {
    alpha: f64,
    beta: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParams {
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawParams> for MembershipParams {
    type Error = Error;

    fn try_from(raw: RawParams) -> Result<Self> {
        MembershipParams::new(raw.alpha, raw.beta)
    }
}

impl From<MembershipParams> for RawParams {
    fn from(p: MembershipParams) -> Self {
        RawParams { alpha: p.alpha, beta: p.beta }
    }
}

impl Default for MembershipParams {
    fn default() -> Self {
        MembershipParams { alpha: -1.001, beta: 1.3 }
    }
}

const VALIDATION_GRID: [f64; 10] = [-1.0, -0.9, -0.5, -0.1, 0.0, 0.1, 0.5, 1.0, 10.0, 1e3];

impl MembershipParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(Error::Params(format!("alpha={alpha}, beta={beta} must be finite")));
        }
        if beta <= 0.0 {
            return Err(Error::Params(format!("beta must be positive, got {beta}")));
        }
        // alpha > 0 drives the bracket to zero at finite x and the degree
        // saturates at 1
        if alpha > 0.0 {
            return Err(Error::Params(format!("alpha must be <= 0, got {alpha}")));
        }
        let params = MembershipParams { alpha, beta };
        // degrees may round to 1 far from ruin, so only the low end must be strict
        let mut prev = -1.0;
        for &x in &VALIDATION_GRID {
            let d = params.raw_degree(x)?;
            let strict = x <= 0.0;
            if !(0.0..=1.0).contains(&d) || d < prev || (strict && (d >= 1.0 || d <= prev)) {
                return Err(Error::Params(format!(
                    "alpha={alpha}, beta={beta}: degree {d} at x={x} breaks range or monotonicity"
                )));
            }
            prev = d;
        }
        if params.raw_degree(-1.0)? != 0.0 {
            return Err(Error::Params("degree at ruin is not zero".into()));
        }
        Ok(params)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    fn raw_degree(&self, x: f64) -> Result<f64> {
        Ok(1.0 - gexp(self.alpha, -self.beta * (x + 1.0))?)
    }

    /// Membership degree of the change `x`.
    pub fn degree(&self, x: f64) -> Result<f64> {
        check_change(x, "change")?;
        self.raw_degree(x)
    }

    /// Returns the alternative with the largest degree.
    ///
    /// Ties on the degree go to the larger sense of truth, then to the
    /// first listed alternative.
    pub fn judge<'a>(&self, alternatives: &'a [Alternative]) -> Result<&'a Alternative> {
        let mut best: Option<(&Alternative, f64)> = None;
        for alt in alternatives {
            let d = self.degree(alt.change)?;
            best = match best {
                None => Some((alt, d)),
                Some((b, bd)) if d > bd || (d == bd && alt.sense > b.sense) => Some((alt, d)),
                keep => keep,
            };
        }
        best.map(|(a, _)| a)
            .ok_or_else(|| Error::Empty("judge needs at least one alternative".into()))
    }
}

/// A labeled change submitted to [`MembershipParams::judge`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Alternative {
    pub label: String,
    pub change: f64,
    pub sense: f64,
}

impl Alternative {
    pub fn new(label: impl Into<String>, change: f64, sense: f64) -> Result<Self> {
        check_change(change, "change")?;
        check_unit(sense, "sense of truth")?;
        Ok(Alternative { label: label.into(), change, sense })
    }

    /// An alternative held with certainty.
    pub fn certain(label: impl Into<String>, change: f64) -> Result<Self> {
        Alternative::new(label, change, 1.0)
    }
}
