//! Temporal hypotheses, the meiosis and hyperbole procedures, and a
//! time-average simulator for the similarity `F(Theta) ~ N(theta)`.
//!
//! A hypothesis that is true with long-run frequency `s` and changes wealth by
//! `1 + X` when true grows wealth on average by `(1 + X)^s` per period. The
//! meiosis maps it to the certain change with the same growth; hyperbole goes
//! the other way.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{check_change, check_unit, hyperbolic_change, meiotic_change};
use crate::membership::{Alternative, MembershipParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Quantifier {
    /// `N`: true at the next moment.
    Next,
    /// `F`: true at some future moment.
    Sometime,
    /// `G`: true at every future moment.
    Always,
    /// `GF`: true infinitely often.
    Frequently,
}

impl Quantifier {
    /// `N` and `G` assert certainty.
    pub fn is_certain(self) -> bool {
        matches!(self, Quantifier::Next | Quantifier::Always)
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Quantifier::Next => "N",
            Quantifier::Sometime => "F",
            Quantifier::Always => "G",
            Quantifier::Frequently => "GF",
        }
    }
}

/// Adverbs of frequency and the sense of truth this crate assigns to them.
pub const ADVERB_SCALE: [(&str, f64); 6] = [
    ("never", 0.0),
    ("rarely", 0.15),
    ("sometimes", 0.4),
    ("often", 0.65),
    ("usually", 0.8),
    ("always", 1.0),
];

pub fn sense_from_adverb(adverb: &str) -> Option<f64> {
    let adverb = adverb.trim().to_ascii_lowercase();
    ADVERB_SCALE.iter().find(|(a, _)| *a == adverb).map(|(_, s)| *s)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub label: String,
    change: f64,
    sense: f64,
    quantifier: Quantifier,
}

impl Hypothesis {
    pub fn new(label: impl Into<String>, change: f64, sense: f64, quantifier: Quantifier) -> Result<Self> {
        check_change(change, "hypothesis change")?;
        check_unit(sense, "sense of truth")?;
        if quantifier.is_certain() && sense != 1.0 {
            return Err(Error::Range(format!(
                "{} hypotheses are certain, sense of truth must be 1 (got {sense})",
                quantifier.symbol()
            )));
        }
        Ok(Hypothesis { label: label.into(), change, sense, quantifier })
    }

    pub fn next(label: impl Into<String>, change: f64) -> Result<Self> {
        Hypothesis::new(label, change, 1.0, Quantifier::Next)
    }

    pub fn sometime(label: impl Into<String>, change: f64, sense: f64) -> Result<Self> {
        Hypothesis::new(label, change, sense, Quantifier::Sometime)
    }

    pub fn change(&self) -> f64 {
        self.change
    }

    pub fn sense(&self) -> f64 {
        self.sense
    }

    pub fn quantifier(&self) -> Quantifier {
        self.quantifier
    }

    /// Reduces the change and raises certainty: the `N`-form similar hypothesis.
    pub fn meiosis(&self) -> Result<Hypothesis> {
        Ok(Hypothesis {
            label: self.label.clone(),
            change: meiotic_change(self.change, self.sense)?,
            sense: 1.0,
            quantifier: Quantifier::Next,
        })
    }

    /// Exaggerates a certain change down to the sense of truth `target`.
    pub fn hyperbole(&self, target: f64) -> Result<Hypothesis> {
        if self.sense != 1.0 {
            return Err(Error::Mode(format!(
                "hyperbole starts from a certain hypothesis, '{}' has sense {}",
                self.label, self.sense
            )));
        }
        Ok(Hypothesis {
            label: self.label.clone(),
            change: hyperbolic_change(self.change, target)?,
            sense: target,
            quantifier: Quantifier::Sometime,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CompareMode {
    /// Reduce both hypotheses to the `N` frame.
    Meiosis,
    /// Raise both to the smaller of the two senses of truth.
    Hyperbole,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Comparison {
    pub winner: String,
    pub mode: CompareMode,
    /// Equalized changes of the two hypotheses, in input order.
    pub changes: [f64; 2],
    /// Common sense of truth of the frame the changes live in.
    pub frame_sense: f64,
}

/// Judges two hypotheses after bringing them to a common sense of truth.
///
/// Both modes compare `(1+x_a)^s_a` against `(1+x_b)^s_b` up to a monotone
/// rescaling, so they agree on the winner.
pub fn compare_hypotheses(
    a: &Hypothesis,
    b: &Hypothesis,
    params: &MembershipParams,
    mode: CompareMode,
) -> Result<Comparison> {
    let (ca, cb, frame_sense) = match mode {
        CompareMode::Meiosis => (a.meiosis()?.change, b.meiosis()?.change, 1.0),
        CompareMode::Hyperbole => {
            let target = a.sense.min(b.sense);
            if target == 0.0 {
                return Err(Error::Mode(
                    "hyperbole is undefined when a hypothesis has sense of truth 0".into(),
                ));
            }
            let raise = |h: &Hypothesis| -> Result<f64> {
                if h.sense == target {
                    Ok(h.change)
                } else {
                    Ok(h.meiosis()?.hyperbole(target)?.change)
                }
            };
            (raise(a)?, raise(b)?, target)
        }
    };
    // original senses feed the tie policy
    let alts = [
        Alternative::new(a.label.clone(), ca, a.sense)?,
        Alternative::new(b.label.clone(), cb, b.sense)?,
    ];
    let winner = params.judge(&alts)?.label.clone();
    Ok(Comparison { winner, mode, changes: [ca, cb], frame_sense })
}

/// Per-period growth factor `(W_T / W_0)^(1/T)` realized by a change `x`
/// that fires with probability `p` in each of `periods` independent periods.
///
/// The trajectory is reproducible: a `ChaCha8Rng` seeded with
/// `seed_from_u64(seed)` draws one uniform `u` in `[0, 1)` per period and the
/// change fires iff `u < p`.
pub fn simulate_time_average(x: f64, p: f64, periods: u64, seed: u64) -> Result<f64> {
    simulate_outcomes(&[(x, p)], periods, seed)
}

/// Like [`simulate_time_average`] for a disjunction of outcomes. Outcome `i`
/// fires iff `u` falls in `[P_{i-1}, P_i)` with `P_i` the cumulative
/// probability; otherwise wealth is unchanged that period.
pub fn simulate_outcomes(outcomes: &[(f64, f64)], periods: u64, seed: u64) -> Result<f64> {
    if periods == 0 {
        return Err(Error::Domain("simulation needs at least one period".into()));
    }
    if outcomes.is_empty() {
        return Err(Error::Empty("no outcomes to simulate".into()));
    }
    let mut total = 0.0;
    for &(x, p) in outcomes {
        if !(x > -1.0) || !x.is_finite() {
            return Err(Error::Domain(format!("simulated change must be finite and > -1, got {x}")));
        }
        check_unit(p, "probability")?;
        total += p;
    }
    if total > 1.0 + 1e-12 {
        return Err(Error::ProbabilityMass(total));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = vec![0u64; outcomes.len()];
    for _ in 0..periods {
        let u: f64 = rng.gen();
        let mut cumulative = 0.0;
        for (i, &(_, p)) in outcomes.iter().enumerate() {
            cumulative += p;
            if u < cumulative {
                hits[i] += 1;
                break;
            }
        }
    }

    if let Some(i) = hits.iter().position(|&k| k == periods) {
        return Ok(1.0 + outcomes[i].0);
    }
    let log_growth: f64 = outcomes
        .iter()
        .zip(&hits)
        .map(|(&(x, _), &k)| k as f64 * x.ln_1p())
        .sum();
    Ok((log_growth / periods as f64).exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    #[test]
    fn quantifier_certainty() {
        assert!(Hypothesis::new("g", 0.1, 0.5, Quantifier::Always).is_err());
        assert!(Hypothesis::new("n", 0.1, 0.9, Quantifier::Next).is_err());
        assert!(Hypothesis::new("gf", 0.1, 0.9, Quantifier::Frequently).is_ok());
        assert!(Hypothesis::sometime("f", -1.2, 0.5).is_err());
        assert!(Hypothesis::sometime("f", 0.2, 1.2).is_err());
    }

    #[test]
    fn adverbs() {
        assert_eq!(sense_from_adverb("Often"), Some(0.65));
        assert_eq!(sense_from_adverb("never"), Some(0.0));
        assert_eq!(sense_from_adverb("whenever"), None);
    }

    #[test]
    fn meiosis_examples() {
        let m = Hypothesis::sometime("G", 1.0, 0.5).unwrap().meiosis().unwrap();
        assert_abs_diff_eq!(m.change(), std::f64::consts::SQRT_2 - 1.0, epsilon = 1e-14);
        assert_eq!((m.sense(), m.quantifier()), (1.0, Quantifier::Next));

        let m = Hypothesis::sometime("G", 0.3, 1.0).unwrap().meiosis().unwrap();
        assert_eq!(m.change(), 0.3);

        let m = Hypothesis::sometime("G", 0.5, 0.0).unwrap().meiosis().unwrap();
        assert_eq!(m.change(), 0.0);
        assert_eq!(m.quantifier(), Quantifier::Next);
    }

    #[test]
    fn hyperbole_examples() {
        let h = Hypothesis::next("A", 0.1).unwrap().hyperbole(0.5).unwrap();
        assert_abs_diff_eq!(h.change(), 0.21, epsilon = 1e-14);
        assert_eq!((h.sense(), h.quantifier()), (0.5, Quantifier::Sometime));

        let h = Hypothesis::next("A", 0.2).unwrap().hyperbole(1.0).unwrap();
        assert_eq!((h.change(), h.quantifier()), (0.2, Quantifier::Sometime));

        let h = Hypothesis::next("A", -0.1).unwrap().hyperbole(0.5).unwrap();
        assert_abs_diff_eq!(h.change(), -0.19, epsilon = 1e-14);

        assert!(matches!(Hypothesis::next("A", 0.1).unwrap().hyperbole(0.0), Err(Error::Range(_))));
        assert!(matches!(Hypothesis::sometime("A", 0.1, 0.3).unwrap().hyperbole(0.2), Err(Error::Mode(_))));
    }

    #[test]
    fn ant_and_grasshopper() {
        let ant = Hypothesis::next("Ant", 0.1).unwrap();
        let grasshopper = Hypothesis::sometime("Grasshopper", 0.5, 0.5).unwrap();
        let p = MembershipParams::default();

        let c = compare_hypotheses(&ant, &grasshopper, &p, CompareMode::Meiosis).unwrap();
        assert_eq!(c.winner, "Grasshopper");
        assert_abs_diff_eq!(c.changes[1], 0.224_744_871_391_589, epsilon = 1e-14);
        assert_eq!(c.changes[0], 0.1);

        let c = compare_hypotheses(&ant, &grasshopper, &p, CompareMode::Hyperbole).unwrap();
        assert_eq!(c.winner, "Grasshopper");
        assert_abs_diff_eq!(c.changes[0], 0.21, epsilon = 1e-14);
        assert_eq!(c.changes[1], 0.5);
        assert_eq!(c.frame_sense, 0.5);
    }

    #[test]
    fn identical_hypotheses_tie_to_first() {
        let a = Hypothesis::sometime("A", 0.3, 0.4).unwrap();
        let b = Hypothesis::sometime("A-copy", 0.3, 0.4).unwrap();
        let p = MembershipParams::default();
        for mode in [CompareMode::Meiosis, CompareMode::Hyperbole] {
            assert_eq!(compare_hypotheses(&a, &b, &p, mode).unwrap().winner, "A");
        }
    }

    #[test]
    fn hyperbole_mode_needs_positive_sense() {
        let a = Hypothesis::sometime("A", 0.3, 0.0).unwrap();
        let b = Hypothesis::next("B", 0.1).unwrap();
        let p = MembershipParams::default();
        assert!(matches!(compare_hypotheses(&a, &b, &p, CompareMode::Hyperbole), Err(Error::Mode(_))));
        assert_eq!(compare_hypotheses(&a, &b, &p, CompareMode::Meiosis).unwrap().winner, "B");
    }

    #[test]
    fn simulation_examples() {
        let g = simulate_time_average(1.0, 0.5, 100_000, 7).unwrap();
        assert!((g / std::f64::consts::SQRT_2 - 1.0).abs() < 0.01, "{g}");
        assert_eq!(simulate_time_average(0.37, 1.0, 1000, 1).unwrap(), 1.37);
        assert_eq!(simulate_time_average(0.37, 0.0, 1000, 1).unwrap(), 1.0);
    }

    #[test]
    fn simulation_is_reproducible() {
        let a = simulate_time_average(0.8, 0.3, 5000, 42).unwrap();
        let b = simulate_time_average(0.8, 0.3, 5000, 42).unwrap();
        let c = simulate_time_average(0.8, 0.3, 5000, 43).unwrap();
        assert_eq!(a.to_bits(), b.to_bits());
        assert_ne!(a, c);
    }

    #[test]
    fn simulation_preconditions() {
        assert!(simulate_time_average(-1.0, 0.5, 10, 0).is_err());
        assert!(simulate_time_average(0.5, 1.5, 10, 0).is_err());
        assert!(simulate_time_average(0.5, 0.5, 0, 0).is_err());
        assert!(matches!(simulate_outcomes(&[(0.1, 0.6), (-0.1, 0.6)], 10, 0), Err(Error::ProbabilityMass(_))));
    }

    proptest! {
        #[test]
        fn meiosis_then_hyperbole_restores(x in -0.95f64..10.0, s in 0.01f64..=1.0) {
            let h = Hypothesis::sometime("h", x, s).unwrap();
            let back = h.meiosis().unwrap().hyperbole(s).unwrap();
            prop_assert!((back.change() - x).abs() < 1e-10);
            prop_assert_eq!(back.sense(), s);
        }

        #[test]
        fn meiosis_matches_generalized_forms(x in 0.0f64..10.0, s in 0.01f64..=1.0) {
            let m = Hypothesis::sometime("h", x, s).unwrap().meiosis().unwrap().change();
            // (1+X)^s - 1 = s ln_s(1+X) = e_{1/s}^{...}: check the glog route
            let via_glog = s * crate::math::glog(s, 1.0 + x).unwrap();
            prop_assert!((m - via_glog).abs() < 1e-12 * (1.0 + m.abs()));
        }

        #[test]
        fn modes_agree(
            xa in -0.9f64..5.0, sa in 0.01f64..=1.0,
            xb in -0.9f64..5.0, sb in 0.01f64..=1.0,
        ) {
            let ga = sa * xa.ln_1p();
            let gb = sb * xb.ln_1p();
            prop_assume!((ga - gb).abs() > 1e-9);
            let a = Hypothesis::sometime("a", xa, sa).unwrap();
            let b = Hypothesis::sometime("b", xb, sb).unwrap();
            let p = MembershipParams::default();
            let m = compare_hypotheses(&a, &b, &p, CompareMode::Meiosis).unwrap();
            let h = compare_hypotheses(&a, &b, &p, CompareMode::Hyperbole).unwrap();
            prop_assert_eq!(&m.winner, &h.winner);
            prop_assert_eq!(&m.winner, if ga > gb { "a" } else { "b" });
        }
    }

    #[test]
    fn simulation_tracks_meiosis() {
        // a handful of fixed draws keeps runtime modest
        for (i, (x, s)) in [(1.0, 0.5), (0.3, 0.8), (2.0, 0.1), (-0.5, 0.4), (0.05, 0.95)].iter().enumerate() {
            let sim = simulate_time_average(*x, *s, 100_000, 1000 + i as u64).unwrap();
            let expected = 1.0 + meiotic_change(*x, *s).unwrap();
            assert!((sim / expected - 1.0).abs() < 0.01, "x={x} s={s} sim={sim} expected={expected}");
        }
    }
}
