//! Lotteries read through meiosis (gains) and hyperbole (losses).
//!
//! Gains shrink to the concave `M+_p(x) = (1+x)^p - 1`; losses, inflated by a
//! convexity rate `rho`, become `H-_p(rho x) = e_p^(rho x) - 1`. Together they
//! form the S-shaped value curve [`SCurveParams::value`].

use serde::{Deserialize, Serialize};

use crate::error::{domain, range, Error, Result};
use crate::math::{check_unit, gexp_m1, glog, meiotic_change};
use crate::membership::{Alternative, MembershipParams};

/// Changes closer than this are treated as the same change when judging.
pub const INDISTINGUISHABLE: f64 = 1e-12;

/// Parameters of the S-curve: sense of truth `p` and loss convexity `rho`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawSCurve", into = "RawSCurve")]
pub struct SCurveParams {
    p: f64,
    rho: f64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSCurve {
    p: f64,
    rho: f64,
}

impl TryFrom<RawSCurve> for SCurveParams {
    type Error = Error;

    fn try_from(raw: RawSCurve) -> Result<Self> {
        SCurveParams::new(raw.p, raw.rho)
    }
}

impl From<SCurveParams> for RawSCurve {
    fn from(s: SCurveParams) -> Self {
        RawSCurve { p: s.p, rho: s.rho }
    }
}

impl SCurveParams {
    /// Convexity used for the illustrative figures; it makes risk seeking
    /// visible but overstates it.
    pub const ILLUSTRATIVE_RHO: f64 = 1.2;
    pub const REALISTIC_RHO: f64 = 1.05;

    pub fn new(p: f64, rho: f64) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::Params(format!("p must lie in (0, 1], got {p}")));
        }
        if !(rho >= 1.0) || !rho.is_finite() {
            return Err(Error::Params(format!("rho must be finite and >= 1, got {rho}")));
        }
        Ok(SCurveParams { p, rho })
    }

    pub fn p(&self) -> f64 {
        self.p
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Hyperbolic loss value `(1 + p rho x)^(1/p) - 1` for `x` in `(-1, 0]`.
    pub fn loss_value(&self, x: f64) -> Result<f64> {
        if !(x > -1.0 && x <= 0.0) {
            return Err(domain(format!("loss must lie in (-1, 0], got {x}")));
        }
        gexp_m1(self.p, self.rho * x)
    }

    /// `S_p(x)`: `p ln_p(1+x)` for gains, `e_p^(rho x) - 1` for losses.
    pub fn value(&self, x: f64) -> Result<f64> {
        if !(x > -1.0) || !x.is_finite() {
            return Err(domain(format!("S-curve is defined on (-1, inf), got {x}")));
        }
        if x >= 0.0 {
            Ok(self.p * glog(self.p, 1.0 + x)?)
        } else {
            self.loss_value(x)
        }
    }

    /// Loss level `x*` where the loss curve re-crosses the identity line.
    ///
    /// Losses in `(x*, 0)` favor the gamble, losses below `x*` the sure loss.
    /// `None` when there is no interior crossing. For `p = 1/2` the root is
    /// `-4 (rho - 1) / rho^2`.
    pub fn risk_crossover(&self) -> Result<Option<f64>> {
        const EDGE: f64 = 1e-9;
        const SCAN: usize = 2000;
        // the loss curve leaves its domain at x = -1/(p rho)
        let lo = (-1.0f64).max(-1.0 / (self.p * self.rho)) + EDGE;
        let hi = -EDGE;
        if lo >= hi {
            return Ok(None);
        }
        let gap = |x: f64| -> Result<f64> { Ok(self.loss_value(x)? - x) };

        // gaps within rounding noise carry no sign (e.g. p = rho = 1, where
        // the curve is the identity)
        let sign = |x: f64, g: f64| if g.abs() <= INDISTINGUISHABLE * x.abs() { 0 } else { g.signum() as i8 };

        let mut brackets = Vec::new();
        let mut last: Option<(f64, i8)> = None;
        for i in 0..=SCAN {
            let x = lo + (hi - lo) * i as f64 / SCAN as f64;
            let sg = sign(x, gap(x)?);
            if sg == 0 {
                continue;
            }
            if let Some((px, ps)) = last {
                if ps != sg {
                    brackets.push((px, x));
                }
            }
            last = Some((x, sg));
        }
        match brackets.as_slice() {
            [] => Ok(None),
            [(a, b)] => bisect(gap, *a, *b, 1e-10).map(Some),
            many => Err(Error::Crossing(format!(
                "{} sign changes of the loss curve against the identity for p={}, rho={}",
                many.len(),
                self.p,
                self.rho
            ))),
        }
    }
}

fn bisect<F>(f: F, mut a: f64, mut b: f64, width: f64) -> Result<f64>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut fa = f(a)?;
    while b - a > width {
        let mid = 0.5 * (a + b);
        let fm = f(mid)?;
        if fm == 0.0 {
            return Ok(mid);
        }
        if (fm > 0.0) == (fa > 0.0) {
            a = mid;
            fa = fm;
        } else {
            b = mid;
        }
    }
    Ok(0.5 * (a + b))
}

/// Meiotic value of a gain: `(1+x)^p - 1`.
pub fn meiotic_value(p: f64, x: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(range(format!("p must lie in (0, 1], got {p}")));
    }
    if !(x >= 0.0) || !x.is_finite() {
        return Err(domain(format!("gain must be finite and >= 0, got {x}")));
    }
    meiotic_change(x, p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LotteryChoice {
    Certain,
    Uncertain,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LotteryJudgment {
    pub choice: LotteryChoice,
    /// Change argued for the sure option.
    pub certain_change: f64,
    /// Change argued for the gamble.
    pub uncertain_change: f64,
    /// The two changes were indistinguishable and the tie policy decided.
    pub tie: bool,
}

fn judge_pair(certain: f64, uncertain: f64, p: f64, params: &MembershipParams) -> Result<LotteryJudgment> {
    let tie = (certain - uncertain).abs() <= INDISTINGUISHABLE * certain.abs().max(1.0);
    let uncertain_for_judge = if tie { certain } else { uncertain };
    let alts = [
        Alternative::new("certain", certain, 1.0)?,
        Alternative::new("uncertain", uncertain_for_judge, p)?,
    ];
    let choice = if params.judge(&alts)?.label == "certain" {
        LotteryChoice::Certain
    } else {
        LotteryChoice::Uncertain
    };
    Ok(LotteryJudgment { choice, certain_change: certain, uncertain_change: uncertain, tie })
}

/// Win `p x` for sure against win `x` with probability `p`.
///
/// The gamble is valued at its meiotic change, which never exceeds `p x`.
pub fn judge_gain_lottery(x: f64, p: f64, params: &MembershipParams) -> Result<LotteryJudgment> {
    let uncertain = meiotic_value(p, x)?;
    judge_pair(p * x, uncertain, p, params)
}

/// Lose `p |x|` for sure against lose `|x|` with probability `p`, compared
/// in the `F` frame: the sure loss is inflated to `e_p^(rho x) - 1`.
pub fn judge_loss_lottery(x: f64, scurve: &SCurveParams, params: &MembershipParams) -> Result<LotteryJudgment> {
    if !(x > -1.0 && x < 0.0) {
        return Err(domain(format!("loss must lie in (-1, 0), got {x}")));
    }
    let certain = scurve.loss_value(x)?;
    judge_pair(certain, x, scurve.p, params)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Disjunction {
    /// `(1+x1)^p (1+x2)^q - 1`
    pub change: f64,
    /// `p + q = 1`: one of the two outcomes happens at the next moment.
    pub next_form: bool,
}

/// Average change of "win `x1` with probability `p` or lose `x2` with probability `q`".
pub fn disjunction_change(x1: f64, p: f64, x2: f64, q: f64) -> Result<Disjunction> {
    if !(x1 >= 0.0) || !x1.is_finite() {
        return Err(domain(format!("gain must be finite and >= 0, got {x1}")));
    }
    if !(x2 <= 0.0 && x2 > -1.0) {
        return Err(domain(format!("loss must lie in (-1, 0], got {x2}")));
    }
    check_unit(p, "p")?;
    check_unit(q, "q")?;
    let total = p + q;
    if total > 1.0 + INDISTINGUISHABLE {
        return Err(Error::ProbabilityMass(total));
    }
    let change = (p * x1.ln_1p() + q * x2.ln_1p()).exp_m1();
    Ok(Disjunction { change, next_form: (total - 1.0).abs() <= INDISTINGUISHABLE })
}

/// A disjunction is fair when its average change is positive.
pub fn is_fair(x1: f64, p: f64, x2: f64, q: f64) -> Result<bool> {
    Ok(disjunction_change(x1, p, x2, q)?.change > 0.0)
}

/// Change that undoes `x`: `1/(1+x) - 1`.
pub fn restore_change(x: f64) -> Result<f64> {
    if !(x > -1.0) || !x.is_finite() {
        return Err(domain(format!("cannot restore from change {x}")));
    }
    Ok(-x / (1.0 + x))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outcome {
    pub amount: f64,
    pub probability: f64,
}

/// Outcomes over a baseline wealth; probabilities sum to at most one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Lottery {
    pub wealth: f64,
    pub outcomes: Vec<Outcome>,
}

impl Lottery {
    pub fn new(wealth: f64, outcomes: Vec<Outcome>) -> Result<Self> {
        let lottery = Lottery { wealth, outcomes };
        lottery.validate()?;
        Ok(lottery)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.wealth > 0.0) || !self.wealth.is_finite() {
            return Err(domain(format!("wealth must be positive, got {}", self.wealth)));
        }
        if self.outcomes.is_empty() {
            return Err(Error::Empty("lottery has no outcomes".into()));
        }
        let mut total = 0.0;
        for o in &self.outcomes {
            check_unit(o.probability, "outcome probability")?;
            let x = o.amount / self.wealth;
            if !(x > -1.0) || !x.is_finite() {
                return Err(domain(format!(
                    "outcome {} against wealth {} is at or beyond ruin",
                    o.amount, self.wealth
                )));
            }
            total += o.probability;
        }
        if total > 1.0 + INDISTINGUISHABLE {
            return Err(Error::ProbabilityMass(total));
        }
        Ok(())
    }

    /// Outcomes as `(change, probability)` pairs.
    pub fn changes(&self) -> Vec<(f64, f64)> {
        self.outcomes.iter().map(|o| (o.amount / self.wealth, o.probability)).collect()
    }

    pub fn total_probability(&self) -> f64 {
        self.outcomes.iter().map(|o| o.probability).sum()
    }

    pub fn is_next_form(&self) -> bool {
        (self.total_probability() - 1.0).abs() <= INDISTINGUISHABLE
    }

    /// Product-form average change `prod (1+x_i)^(p_i) - 1`.
    pub fn average_change(&self) -> f64 {
        self.changes().iter().map(|(x, p)| p * x.ln_1p()).sum::<f64>().exp_m1()
    }

    pub fn is_fair(&self) -> bool {
        self.average_change() > 0.0
    }

    /// Playing against not playing: `max{mu(average change), mu(0)}`.
    /// Not playing wins ties.
    pub fn worth_playing(&self, params: &MembershipParams) -> Result<bool> {
        let alts = [
            Alternative::certain("abstain", 0.0)?,
            Alternative::new("play", self.average_change(), self.total_probability().min(1.0))?,
        ];
        Ok(params.judge(&alts)?.label == "play")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn fig5() -> SCurveParams {
        SCurveParams::new(0.5, 1.2).unwrap()
    }

    #[test]
    fn identity_curve_has_no_crossover() {
        for rho in [1.0, 1.5] {
            assert_eq!(SCurveParams::new(1.0, rho).unwrap().risk_crossover().unwrap(), None);
        }
    }

    #[test]
    fn params_validation() {
        assert!(SCurveParams::new(0.0, 1.2).is_err());
        assert!(SCurveParams::new(1.1, 1.2).is_err());
        assert!(SCurveParams::new(0.5, 0.99).is_err());
        assert!(serde_json::from_str::<SCurveParams>(r#"{"p":0.5,"rho":0.5}"#).is_err());
    }

    #[test]
    fn meiotic_value_examples() {
        assert_abs_diff_eq!(meiotic_value(0.5, 1.0).unwrap(), 0.414_213_562_373_095, epsilon = 1e-14);
        assert_eq!(meiotic_value(1.0, 2.5).unwrap(), 2.5);
        assert_eq!(meiotic_value(0.1, 0.0).unwrap(), 0.0);
        assert!(meiotic_value(0.0, 1.0).is_err());
        assert!(meiotic_value(0.5, -0.1).is_err());
    }

    #[test]
    fn loss_value_examples() {
        let s = fig5();
        assert_abs_diff_eq!(s.loss_value(-0.3).unwrap(), -0.3276, epsilon = 1e-14);
        assert_eq!(s.loss_value(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(s.loss_value(-0.9).unwrap(), -0.7884, epsilon = 1e-14);
        assert!(s.loss_value(-1.0).is_err());
        assert!(s.loss_value(0.1).is_err());
        // 1 + p rho x <= 0
        let steep = SCurveParams::new(0.9, 1.5).unwrap();
        assert!(matches!(steep.loss_value(-0.8), Err(Error::Domain(_))));
    }

    #[test]
    fn s_curve_examples() {
        let s = fig5();
        assert_abs_diff_eq!(s.value(1.0).unwrap(), 0.414_213_562_373_095, epsilon = 1e-14);
        assert_eq!(s.value(0.0).unwrap(), 0.0);
        assert_abs_diff_eq!(s.value(-5.0 / 9.0).unwrap(), -5.0 / 9.0, epsilon = 1e-14);
        assert!(s.value(-1.0).is_err());
    }

    #[test]
    fn crossover_examples() {
        let x = fig5().risk_crossover().unwrap().unwrap();
        assert_abs_diff_eq!(x, -5.0 / 9.0, epsilon = 1e-9);
        assert_eq!(SCurveParams::new(0.5, 1.0).unwrap().risk_crossover().unwrap(), None);
        let x = SCurveParams::new(0.5, 1.44).unwrap().risk_crossover().unwrap().unwrap();
        assert_abs_diff_eq!(x, -0.848_765_432_098_765, epsilon = 1e-9);
        // p rho > 1: the loss curve stays below the identity until it leaves its domain
        assert_eq!(SCurveParams::new(0.9, 1.5).unwrap().risk_crossover().unwrap(), None);
    }

    #[test]
    fn crossover_closed_form() {
        for i in 1..100 {
            let rho = 1.0 + i as f64 / 100.0;
            let x = SCurveParams::new(0.5, rho).unwrap().risk_crossover().unwrap().unwrap();
            let closed = -4.0 * (rho - 1.0) / (rho * rho);
            assert!((x - closed).abs() <= 1e-9, "rho={rho}: {x} vs {closed}");
        }
    }

    #[test]
    fn gain_lottery() {
        let m = MembershipParams::default();
        let j = judge_gain_lottery(2.0, 0.5, &m).unwrap();
        assert_eq!(j.choice, LotteryChoice::Certain);
        assert_eq!(j.certain_change, 1.0);
        assert_abs_diff_eq!(j.uncertain_change, 0.732_050_807_568_877, epsilon = 1e-14);
        assert!(!j.tie);

        let j = judge_gain_lottery(0.0, 0.3, &m).unwrap();
        assert!(j.tie && j.choice == LotteryChoice::Certain);
        let j = judge_gain_lottery(0.1, 1.0, &m).unwrap();
        assert!(j.tie && j.choice == LotteryChoice::Certain);
    }

    #[test]
    fn loss_lottery() {
        let m = MembershipParams::default();
        let s = fig5();
        assert_eq!(judge_loss_lottery(-0.3, &s, &m).unwrap().choice, LotteryChoice::Uncertain);
        assert_eq!(judge_loss_lottery(-0.9, &s, &m).unwrap().choice, LotteryChoice::Certain);
        let j = judge_loss_lottery(-5.0 / 9.0, &s, &m).unwrap();
        assert!(j.tie);
        assert_eq!(j.choice, LotteryChoice::Certain);
        assert!(judge_loss_lottery(0.0, &s, &m).is_err());
    }

    #[test]
    fn loss_judgment_follows_crossover() {
        let m = MembershipParams::default();
        for (p, rho) in [(0.5, 1.2), (0.3, 1.1), (0.7, 1.3), (0.5, 1.8)] {
            let s = SCurveParams::new(p, rho).unwrap();
            let x_star = s.risk_crossover().unwrap().unwrap();
            for i in 1..100 {
                let x = -(i as f64) / 100.0;
                if (x - x_star).abs() < 1e-6 || 1.0 + p * rho * x <= 0.0 {
                    continue;
                }
                let expected = if x > x_star { LotteryChoice::Uncertain } else { LotteryChoice::Certain };
                assert_eq!(judge_loss_lottery(x, &s, &m).unwrap().choice, expected, "p={p} rho={rho} x={x}");
            }
        }
    }

    #[test]
    fn disjunction_examples() {
        let d = disjunction_change(0.1, 0.5, -0.1, 0.5).unwrap();
        assert_abs_diff_eq!(d.change, -0.005_012_562_893_380_045, epsilon = 1e-15);
        assert!(d.next_form);
        let d = disjunction_change(0.0, 0.3, 0.0, 0.2).unwrap();
        assert_eq!(d.change, 0.0);
        assert!(!d.next_form);
        assert!(matches!(disjunction_change(0.1, 0.6, -0.1, 0.6), Err(Error::ProbabilityMass(_))));
        assert!(disjunction_change(-0.1, 0.5, -0.1, 0.5).is_err());
        assert!(disjunction_change(0.1, 0.5, 0.1, 0.5).is_err());
    }

    #[test]
    fn fairness() {
        assert!(is_fair(0.25, 0.5, -0.1, 0.5).unwrap());
        assert!(is_fair(0.3, 1.0, 0.0, 0.0).unwrap());
        for i in 1..100 {
            let x = i as f64 / 100.0;
            assert!(!is_fair(x, 0.5, -x, 0.5).unwrap());
        }
    }

    #[test]
    fn restore_examples() {
        assert_abs_diff_eq!(restore_change(-0.1).unwrap(), 0.111_111_111_111_111, epsilon = 1e-15);
        assert_abs_diff_eq!(restore_change(0.1).unwrap(), -0.090_909_090_909_091, epsilon = 1e-15);
        assert_eq!(restore_change(0.0).unwrap(), 0.0);
        assert!(restore_change(1e-300).unwrap().abs() < 1e-299);
        assert!(restore_change(-1.0).is_err());
    }

    #[test]
    fn lottery_type() {
        let l = Lottery::new(
            10_000.0,
            vec![Outcome { amount: 1000.0, probability: 0.5 }, Outcome { amount: -1000.0, probability: 0.5 }],
        )
        .unwrap();
        assert!(l.is_next_form());
        assert!(!l.is_fair());
        assert!(!l.worth_playing(&MembershipParams::default()).unwrap());
        let d = disjunction_change(0.1, 0.5, -0.1, 0.5).unwrap();
        assert_abs_diff_eq!(l.average_change(), d.change, epsilon = 1e-15);

        assert!(Lottery::new(100.0, vec![Outcome { amount: -100.0, probability: 0.1 }]).is_err());
        assert!(Lottery::new(100.0, vec![]).is_err());
        assert!(Lottery::new(
            100.0,
            vec![Outcome { amount: 1.0, probability: 0.7 }, Outcome { amount: 1.0, probability: 0.7 }]
        )
        .is_err());
        let good = Lottery::new(100.0, vec![Outcome { amount: 50.0, probability: 0.5 }]).unwrap();
        assert!(!good.is_next_form());
        assert!(good.worth_playing(&MembershipParams::default()).unwrap());
    }

    proptest! {
        #[test]
        fn gains_below_tangent(p in 0.001f64..=1.0, x in 0.0f64..1e3) {
            let v = meiotic_value(p, x).unwrap();
            prop_assert!(p * x >= v - 1e-12 * (1.0 + v.abs()));
            let via_glog = p * glog(p, 1.0 + x).unwrap();
            prop_assert!((v - via_glog).abs() <= 1e-12 * (1.0 + v.abs()));
        }

        #[test]
        fn gains_judged_certain(p in 0.01f64..0.99, x in 1e-3f64..100.0) {
            let j = judge_gain_lottery(x, p, &MembershipParams::default()).unwrap();
            prop_assert_eq!(j.choice, LotteryChoice::Certain);
            prop_assert!(!j.tie);
        }

        #[test]
        fn s_curve_shape(p in 0.05f64..=1.0, rho in 1.0f64..2.0, x in 0.0f64..5.0, d in 1e-3f64..0.5) {
            // concave on gains
            let s = SCurveParams::new(p, rho).unwrap();
            let (a, b, c) = (s.value(x).unwrap(), s.value(x + d).unwrap(), s.value(x + 2.0 * d).unwrap());
            prop_assert!(b - a >= c - b - 1e-12);
        }
    }

    #[test]
    fn loss_tangent_at_origin() {
        for (p, rho) in [(0.1, 1.0), (0.3, 1.0), (0.7, 1.0), (0.5, 1.2), (0.9, 1.5), (1.0, 1.05)] {
            let s = SCurveParams::new(p, rho).unwrap();
            let h = 1e-7;
            let slope = -s.loss_value(-h).unwrap() / h;
            assert!((slope - rho).abs() < 1e-6, "p={p} rho={rho} slope={slope}");
            let rel = |x: f64| (s.loss_value(x).unwrap() - rho * x).abs() / x.abs();
            assert!(rel(-1e-6) <= rel(-1e-3) && rel(-1e-6) < 1e-5);
        }
    }
}
