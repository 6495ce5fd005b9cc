use std::path::{Path, PathBuf};

use serde::de::{self, DeserializeOwned, Deserializer};
use serde::Deserialize;
use serde_json::{json, Value};

use super::{Artifact, CliError, CsvTable, Overrides, RunOutput};
use crate::discounting::{annualized_rate, fit_discount, read_indifference_csv, DiscountParams, FitOptions};
use crate::membership::MembershipParams;
use crate::prospect::{judge_gain_lottery, judge_loss_lottery, restore_change, Lottery, Outcome, SCurveParams};
use crate::temporal::{compare_hypotheses, sense_from_adverb, simulate_outcomes, CompareMode, Hypothesis, Quantifier};
use crate::time_preference::{IntertemporalChoice, Reward, ReversalSetup, Timing};

const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Kind {
    TimePreference,
    Reversal,
    DiscountCurve,
    Fit,
    ProspectCurve,
    Lottery,
    Compare,
    Rates,
}

/// One scenario file: a kind, its parameters, and optional output/seed.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: Kind,
    pub parameters: Value,
    #[serde(default)]
    pub output: Option<PathBuf>,
    #[serde(default)]
    pub seed: Option<u64>,
}

/// A sense of truth given as a number in `[0, 1]` or an adverb of frequency.
fn sense<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Raw {
        Number(f64),
        Adverb(String),
    }
    match Raw::deserialize(d)? {
        Raw::Number(v) => Ok(v),
        Raw::Adverb(a) => sense_from_adverb(&a)
            .ok_or_else(|| de::Error::custom(format!("unknown adverb of frequency `{a}`"))),
    }
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TimePreferenceParams {
    small: f64,
    large: f64,
    wealth: f64,
    #[serde(deserialize_with = "sense")]
    small_sense: f64,
    #[serde(deserialize_with = "sense")]
    large_sense: f64,
    trials: f64,
    #[serde(default)]
    membership: Option<MembershipParams>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ReversalParams {
    first: f64,
    second: f64,
    wealth: f64,
    #[serde(deserialize_with = "sense")]
    first_sense: f64,
    #[serde(deserialize_with = "sense")]
    second_sense: f64,
    horizon: u32,
    #[serde(default)]
    membership: Option<MembershipParams>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveSpec {
    h: f64,
    rho: f64,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct DiscountCurveParams {
    curves: Vec<CurveSpec>,
    max_delay: f64,
    #[serde(default = "one")]
    step: f64,
}

fn one() -> f64 {
    1.0
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FitParams {
    #[serde(default)]
    data: Option<PathBuf>,
    #[serde(default)]
    points: Option<Vec<(f64, f64)>>,
    #[serde(default)]
    unconstrained: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProspectCurveParams {
    p: f64,
    rho: f64,
    #[serde(default = "curve_min")]
    x_min: f64,
    #[serde(default = "one")]
    x_max: f64,
    #[serde(default = "curve_step")]
    step: f64,
}

fn curve_min() -> f64 {
    -0.99
}

fn curve_step() -> f64 {
    0.01
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct LotteryParams {
    wealth: f64,
    outcomes: Vec<Outcome>,
    /// Loss convexity used when a single loss outcome is judged against its sure counterpart.
    #[serde(default = "illustrative_rho")]
    rho: f64,
    #[serde(default)]
    simulation_periods: Option<u64>,
    #[serde(default)]
    membership: Option<MembershipParams>,
}

fn illustrative_rho() -> f64 {
    SCurveParams::ILLUSTRATIVE_RHO
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct HypothesisSpec {
    label: String,
    change: f64,
    #[serde(deserialize_with = "sense")]
    sense: f64,
    quantifier: Quantifier,
}

#[derive(Deserialize)]
#[serde(rename_all = "snake_case")]
enum ModeSpec {
    Meiosis,
    Hyperbole,
    Both,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct CompareParams {
    a: HypothesisSpec,
    b: HypothesisSpec,
    #[serde(default = "both")]
    mode: ModeSpec,
    #[serde(default)]
    membership: Option<MembershipParams>,
}

fn both() -> ModeSpec {
    ModeSpec::Both
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct Offer {
    now: f64,
    later: f64,
    years: f64,
    #[serde(default)]
    label: Option<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RatesParams {
    offers: Vec<Offer>,
}

fn parameters<T: DeserializeOwned>(kind: Kind, value: Value) -> Result<T, CliError> {
    serde_json::from_value(value).map_err(|e| CliError::Schema(format!("{kind:?} parameters: {e}")))
}

/// Reads and runs a scenario file. Relative `data` paths resolve against
/// the scenario's directory.
pub fn run_scenario_file(path: &Path, overrides: &Overrides) -> Result<RunOutput, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
    let base = path.parent().unwrap_or(Path::new("."));
    run_scenario(&text, base, overrides)
}

pub fn run_scenario(text: &str, base: &Path, overrides: &Overrides) -> Result<RunOutput, CliError> {
    let scenario: Scenario = serde_json::from_str(text).map_err(|e| CliError::Schema(e.to_string()))?;
    let seed = overrides.seed.or(scenario.seed).unwrap_or(DEFAULT_SEED);
    let kind = scenario.kind;
    let p = scenario.parameters;
    let artifact = match kind {
        Kind::TimePreference => time_preference(parameters(kind, p)?)?,
        Kind::Reversal => reversal(parameters(kind, p)?)?,
        Kind::DiscountCurve => discount_curve(parameters(kind, p)?)?,
        Kind::Fit => fit(parameters(kind, p)?, base)?,
        Kind::ProspectCurve => prospect_curve(parameters(kind, p)?)?,
        Kind::Lottery => lottery(parameters(kind, p)?, seed)?,
        Kind::Compare => compare(parameters(kind, p)?)?,
        Kind::Rates => rates(parameters(kind, p)?)?,
    };
    Ok(RunOutput { artifact, path: overrides.out.clone().or(scenario.output) })
}

fn time_preference(p: TimePreferenceParams) -> Result<Artifact, CliError> {
    let choice = IntertemporalChoice {
        small: p.small,
        large: p.large,
        wealth: p.wealth,
        small_sense: p.small_sense,
        large_sense: p.large_sense,
        trials: p.trials,
    };
    let d = choice.decide(&p.membership.unwrap_or_default())?;
    let kappa = choice.equivalent_kappa().ok();
    Ok(Artifact::Json(json!({
        "decision": match d.choice { Timing::Later => "later", Timing::Sooner => "sooner" },
        "sooner_factor": d.sooner_factor,
        "later_factor": d.later_factor,
        "kappa": kappa,
    })))
}

fn reversal(p: ReversalParams) -> Result<Artifact, CliError> {
    let setup = ReversalSetup {
        first: p.first,
        second: p.second,
        wealth: p.wealth,
        first_sense: p.first_sense,
        second_sense: p.second_sense,
        horizon: p.horizon,
    };
    let s = setup.schedule(&p.membership.unwrap_or_default())?;
    let mut t = CsvTable::new(["n", "first_factor", "second_factor", "preferred"]);
    t.annotate("reversal_at", s.reversal_at.map_or("none".to_string(), |n| n.to_string()));
    for r in &s.rows {
        t.push(vec![
            r.n.to_string(),
            super::csv_number(r.first_factor),
            super::csv_number(r.second_factor),
            match r.preferred { Reward::First => "first", Reward::Second => "second" }.to_string(),
        ]);
    }
    Ok(Artifact::Csv(t))
}

fn grid(lo: f64, hi: f64, step: f64) -> Result<Vec<f64>, CliError> {
    if !(step > 0.0) || !(hi >= lo) || !lo.is_finite() || !hi.is_finite() {
        return Err(CliError::Schema(format!("invalid grid: from {lo} to {hi} by {step}")));
    }
    let count = ((hi - lo) / step + 1e-9).floor() as usize;
    if count > 1_000_000 {
        return Err(CliError::Schema(format!("grid of {count} points is too large")));
    }
    // clean up representation error so x-values print as the user wrote them
    Ok((0..=count).map(|i| ((lo + i as f64 * step) * 1e9).round() / 1e9).collect())
}

fn discount_curve(p: DiscountCurveParams) -> Result<Artifact, CliError> {
    if p.curves.is_empty() {
        return Err(CliError::Schema("discount_curve needs at least one entry in `curves`".into()));
    }
    let params: Vec<DiscountParams> = p
        .curves
        .iter()
        .map(|c| DiscountParams::new(c.h, c.rho))
        .collect::<Result<_, _>>()?;
    let labels = p.curves.iter().map(|c| {
        c.label.clone().unwrap_or_else(|| format!("h={};rho={}", c.h, c.rho))
    });
    let mut t = CsvTable::new(std::iter::once("delay".to_string()).chain(labels));
    for n in grid(0.0, p.max_delay, p.step)? {
        let mut row = vec![n];
        for d in &params {
            row.push(d.discount(n)?);
        }
        t.push_numbers(&row);
    }
    Ok(Artifact::Csv(t))
}

fn fit(p: FitParams, base: &Path) -> Result<Artifact, CliError> {
    let points = match (p.data, p.points) {
        (Some(path), None) => {
            let path = base.join(path);
            let file = std::fs::File::open(&path)
                .map_err(|e| CliError::Io(format!("cannot read {}: {e}", path.display())))?;
            read_indifference_csv(file)?
        }
        (None, Some(points)) => points,
        _ => return Err(CliError::Schema("fit needs exactly one of `data` or `points`".into())),
    };
    let fit = fit_discount(&points, FitOptions { unconstrained: p.unconstrained })?;
    Ok(Artifact::Json(json!({
        "h": fit.params.h(),
        "rho": fit.params.rho(),
        "residual": fit.residual,
        "converged": fit.converged,
        "evaluations": fit.evaluations,
        "points": points.len(),
    })))
}

fn prospect_curve(p: ProspectCurveParams) -> Result<Artifact, CliError> {
    let s = SCurveParams::new(p.p, p.rho)?;
    if !(p.x_min > -1.0) {
        return Err(CliError::Schema(format!("x_min must be > -1, got {}", p.x_min)));
    }
    Ok(Artifact::Csv(s_curve_table(&s, &grid(p.x_min, p.x_max, p.step)?)?))
}

pub(super) fn s_curve_table(s: &SCurveParams, xs: &[f64]) -> Result<CsvTable, crate::Error> {
    let mut t = CsvTable::new(["x", "s_curve", "identity", "region"]);
    let crossover = s.risk_crossover()?;
    t.annotate("p", super::csv_number(s.p()));
    t.annotate("rho", super::csv_number(s.rho()));
    t.annotate("crossover", crossover.map_or("none".to_string(), super::csv_number));
    for &x in xs {
        // below -1/(p rho) the loss branch is undefined
        let Ok(v) = s.value(x) else { continue };
        let region = if x >= 0.0 {
            "risk_aversion"
        } else if v < x {
            "risk_seeking"
        } else if v > x {
            "ruin_aversion"
        } else {
            "neutral"
        };
        t.push(vec![super::csv_number(x), super::csv_number(v), super::csv_number(x), region.into()]);
    }
    Ok(t)
}

fn lottery(p: LotteryParams, seed: u64) -> Result<Artifact, CliError> {
    let lottery = Lottery::new(p.wealth, p.outcomes)?;
    let membership = p.membership.unwrap_or_default();
    let changes = lottery.changes();
    let restore: Vec<f64> = changes.iter().map(|(x, _)| restore_change(*x)).collect::<Result<_, _>>()?;

    let mut out = json!({
        "changes": changes.iter().map(|(x, _)| *x).collect::<Vec<_>>(),
        "total_probability": lottery.total_probability(),
        "next_form": lottery.is_next_form(),
        "average_change": lottery.average_change(),
        "fair": lottery.is_fair(),
        "worth_playing": lottery.worth_playing(&membership)?,
        "restore_changes": restore,
    });

    if let [(x, prob)] = changes.as_slice() {
        let judgment = if *x >= 0.0 {
            judge_gain_lottery(*x, *prob, &membership)?
        } else {
            judge_loss_lottery(*x, &SCurveParams::new(*prob, p.rho)?, &membership)?
        };
        out["sure_vs_gamble"] = serde_json::to_value(judgment).expect("plain struct");
    }

    if let Some(periods) = p.simulation_periods {
        let growth = simulate_outcomes(&changes, periods, seed)?;
        out["simulation"] = json!({
            "periods": periods,
            "seed": seed,
            "growth_factor": growth,
            "expected_factor": 1.0 + lottery.average_change(),
        });
    }
    Ok(Artifact::Json(out))
}

fn compare(p: CompareParams) -> Result<Artifact, CliError> {
    let hyp = |h: HypothesisSpec| Hypothesis::new(h.label, h.change, h.sense, h.quantifier);
    let a = hyp(p.a)?;
    let b = hyp(p.b)?;
    let membership = p.membership.unwrap_or_default();
    let modes: &[CompareMode] = match p.mode {
        ModeSpec::Meiosis => &[CompareMode::Meiosis],
        ModeSpec::Hyperbole => &[CompareMode::Hyperbole],
        ModeSpec::Both => &[CompareMode::Meiosis, CompareMode::Hyperbole],
    };
    let mut results = Vec::new();
    for &mode in modes {
        let c = compare_hypotheses(&a, &b, &membership, mode)?;
        results.push(serde_json::to_value(c).expect("plain struct"));
    }
    Ok(Artifact::Json(json!({ "comparisons": results })))
}

fn rates(p: RatesParams) -> Result<Artifact, CliError> {
    if p.offers.is_empty() {
        return Err(CliError::Schema("rates needs at least one offer".into()));
    }
    let mut rows = Vec::new();
    let mut values = Vec::new();
    for (i, o) in p.offers.iter().enumerate() {
        let r = annualized_rate(o.now, o.later, o.years)?;
        values.push(r);
        rows.push(json!({
            "label": o.label.clone().unwrap_or_else(|| format!("offer_{}", i + 1)),
            "now": o.now,
            "later": o.later,
            "years": o.years,
            "rate": r,
            "percent": r * 100.0,
        }));
    }
    let monotone = values.windows(2).all(|w| w[1] < w[0]);
    Ok(Artifact::Json(json!({ "rates": rows, "monotone_decreasing": monotone })))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(text: &str) -> Result<RunOutput, CliError> {
        run_scenario(text, Path::new("."), &Overrides::default())
    }

    #[test]
    fn schema_errors_name_the_field() {
        let e = run(r#"{"kind":"rates","parameters":{"offers":[{"now":1,"later":2,"yeers":1}]}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 1);
        assert!(e.to_string().contains("yeers"), "{e}");

        let e = run(r#"{"kind":"time_preference","parameters":{"small":1}}"#).unwrap_err();
        assert!(e.to_string().contains("large"), "{e}");

        let e = run(r#"{"kind":"nope","parameters":{}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 1);

        let e = run(r#"{"kind":"rates","parameters":{"offers":[]},"extra":1}"#).unwrap_err();
        assert!(e.to_string().contains("extra"), "{e}");

        assert_eq!(run("").unwrap_err().exit_code(), 1);
    }

    #[test]
    fn domain_errors_exit_2() {
        let e = run(r#"{"kind":"prospect_curve","parameters":{"p":0.5,"rho":0.5}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
        let e = run(r#"{"kind":"rates","parameters":{"offers":[{"now":30,"later":15,"years":1}]}}"#).unwrap_err();
        assert_eq!(e.exit_code(), 2);
    }

    #[test]
    fn adverb_senses() {
        let out = run(r#"{"kind":"compare","parameters":{
            "a":{"label":"Ant","change":0.1,"sense":"always","quantifier":"next"},
            "b":{"label":"Grasshopper","change":0.5,"sense":"sometimes","quantifier":"sometime"}}}"#)
        .unwrap();
        let Artifact::Json(v) = out.artifact else { panic!() };
        assert_eq!(v["comparisons"][0]["winner"], "Grasshopper");
        let e = run(r#"{"kind":"compare","parameters":{
            "a":{"label":"Ant","change":0.1,"sense":"seldomly","quantifier":"next"},
            "b":{"label":"G","change":0.5,"sense":0.5,"quantifier":"sometime"}}}"#)
        .unwrap_err();
        assert_eq!(e.exit_code(), 1);
    }

    #[test]
    fn grid_is_clean() {
        let g = grid(-0.99, 1.0, 0.01).unwrap();
        assert_eq!(g.len(), 200);
        assert_eq!(g[0], -0.99);
        assert_eq!(g[99], 0.0);
        assert_eq!(*g.last().unwrap(), 1.0);
        assert!(grid(0.0, 1.0, 0.0).is_err());
    }
}
