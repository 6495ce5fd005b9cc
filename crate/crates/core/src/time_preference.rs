//! Choosing between a small-soon and a large-late reward, and the
//! preference reversal that appears when both are pushed into the future.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::math::check_unit;
use crate::membership::{Alternative, MembershipParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Timing {
    Sooner,
    Later,
}

/// `m` after a short delay against `M > m` after `n` such delays.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntertemporalChoice {
    pub small: f64,
    pub large: f64,
    pub wealth: f64,
    pub small_sense: f64,
    pub large_sense: f64,
    /// Attempts at the small reward per large-reward period; may be fractional.
    pub trials: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Decision {
    pub choice: Timing,
    /// `(1 + m/W0)^(n s_m)`
    pub sooner_factor: f64,
    /// `(1 + M/W0)^(s_M)`
    pub later_factor: f64,
}

impl IntertemporalChoice {
    pub fn validate(&self) -> Result<()> {
        if !(self.small > 0.0) || !(self.large > self.small) || !self.large.is_finite() {
            return Err(domain(format!(
                "need large > small > 0, got small={}, large={}",
                self.small, self.large
            )));
        }
        if !(self.wealth > 0.0) || !self.wealth.is_finite() {
            return Err(domain(format!("wealth must be positive, got {}", self.wealth)));
        }
        check_unit(self.small_sense, "small_sense")?;
        check_unit(self.large_sense, "large_sense")?;
        if !(self.trials >= 1.0) || !self.trials.is_finite() {
            return Err(domain(format!("trials must be >= 1, got {}", self.trials)));
        }
        Ok(())
    }

    /// Judges the two rewards after meiosis: LATER iff
    /// `(1 + M/W0)^(s_M) > (1 + m/W0)^(n s_m)`.
    pub fn decide(&self, params: &MembershipParams) -> Result<Decision> {
        self.validate()?;
        let sooner_factor = (self.trials * self.small_sense * (self.small / self.wealth).ln_1p()).exp();
        let later_factor = (self.large_sense * (self.large / self.wealth).ln_1p()).exp();
        let alts = [
            Alternative::new("sooner", sooner_factor - 1.0, self.small_sense)?,
            Alternative::new("later", later_factor - 1.0, self.large_sense)?,
        ];
        let choice = if params.judge(&alts)?.label == "later" { Timing::Later } else { Timing::Sooner };
        Ok(Decision { choice, sooner_factor, later_factor })
    }

    /// The equivalent-amount scale `kappa` with
    /// `(1 + M/W0)^(s_M) = (1 + kappa s_M / W0)^(n s_m)`; the later reward
    /// wins iff `kappa s_M > m`. Undefined when either sense is zero.
    pub fn equivalent_kappa(&self) -> Result<f64> {
        self.validate()?;
        if self.small_sense == 0.0 || self.large_sense == 0.0 {
            return Err(Error::Range("kappa needs positive senses of truth".into()));
        }
        let exponent = self.large_sense / (self.trials * self.small_sense);
        Ok(self.wealth * (exponent * (self.large / self.wealth).ln_1p()).exp_m1() / self.large_sense)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Reward {
    First,
    Second,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ScheduleRow {
    pub n: u32,
    /// `(1 + M1/W0)^((n+1)/n * s1)`
    pub first_factor: f64,
    /// `(1 + M2/W0)^(s2)`
    pub second_factor: f64,
    pub preferred: Reward,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReversalSchedule {
    pub rows: Vec<ScheduleRow>,
    /// Smallest `n` at which `M2` wins, when `M1` won at `n = 1`.
    pub reversal_at: Option<u32>,
}

/// `M1` in `n` periods against `M2` in `n + 1`, for `n = 1..=horizon`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReversalSetup {
    pub first: f64,
    pub second: f64,
    pub wealth: f64,
    pub first_sense: f64,
    pub second_sense: f64,
    pub horizon: u32,
}

impl ReversalSetup {
    pub fn validate(&self) -> Result<()> {
        if !(self.first > 0.0) || !(self.second >= self.first) || !self.second.is_finite() {
            return Err(domain(format!(
                "need second >= first > 0, got first={}, second={}",
                self.first, self.second
            )));
        }
        if !(self.wealth > 0.0) || !self.wealth.is_finite() {
            return Err(domain(format!("wealth must be positive, got {}", self.wealth)));
        }
        for (name, s) in [("first_sense", self.first_sense), ("second_sense", self.second_sense)] {
            if !(s > 0.0 && s <= 1.0) {
                return Err(Error::Range(format!("{name} must lie in (0, 1], got {s}")));
            }
        }
        if self.horizon == 0 {
            return Err(domain("horizon must be at least 1"));
        }
        Ok(())
    }

    pub fn schedule(&self, params: &MembershipParams) -> Result<ReversalSchedule> {
        self.validate()?;
        let first_log = self.first_sense * (self.first / self.wealth).ln_1p();
        let second_factor = (self.second_sense * (self.second / self.wealth).ln_1p()).exp();
        let mut rows = Vec::with_capacity(self.horizon as usize);
        for n in 1..=self.horizon {
            let ratio = (n as f64 + 1.0) / n as f64;
            let first_factor = (ratio * first_log).exp();
            let alts = [
                Alternative::new("first", first_factor - 1.0, self.first_sense)?,
                Alternative::new("second", second_factor - 1.0, self.second_sense)?,
            ];
            let preferred = if params.judge(&alts)?.label == "first" { Reward::First } else { Reward::Second };
            rows.push(ScheduleRow { n, first_factor, second_factor, preferred });
        }
        let reversal_at = match rows.first() {
            Some(r) if r.preferred == Reward::First => {
                rows.iter().find(|r| r.preferred == Reward::Second).map(|r| r.n)
            }
            _ => None,
        };
        Ok(ReversalSchedule { rows, reversal_at })
    }
}
