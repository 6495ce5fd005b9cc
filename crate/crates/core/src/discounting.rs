//! The hyperbolic discount family `e_h^(-rho n) = (1 - h rho n)^(1/h)`.
//!
//! `h <= 0` is the hyperbolicity (`h -> 0-` gives exponential discounting)
//! and `rho > 0` the discount rate per period. Intertemporal arbitrage
//! between a small-soon and a large-late reward fixes both, see
//! [`DiscountParams::from_arbitrage`].

use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{domain, Error, Result};
use crate::math::gexp;
use crate::simplex;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DiscountParams {
    h: f64,
    rho: f64,
}

impl DiscountParams {
    pub fn new(h: f64, rho: f64) -> Result<Self> {
        if !(h <= 0.0) || !h.is_finite() {
            return Err(Error::Params(format!("hyperbolicity must be finite and <= 0, got {h}")));
        }
        Self::new_unconstrained(h, rho)
    }

    /// Allows `h > 0`, where the family is only defined for `n < 1/(h rho)`.
    /// Meant for diagnostics against the unrestricted Benhabib family.
    pub fn new_unconstrained(h: f64, rho: f64) -> Result<Self> {
        if !h.is_finite() {
            return Err(Error::Params(format!("hyperbolicity must be finite, got {h}")));
        }
        if !(rho > 0.0) || !rho.is_finite() {
            return Err(Error::Params(format!("discount rate must be positive, got {rho}")));
        }
        Ok(DiscountParams { h, rho })
    }

    /// Parameters implied by arbitrage between `m` (sense `s_m`, `n` trials)
    /// and `M` (sense `s_big`), where `kappa` is the equivalent amount scale:
    /// `h = -s_big / (s_m n)` and `rho = kappa s_m / W0`.
    pub fn from_arbitrage(s_m: f64, s_big: f64, n: f64, kappa: f64, wealth: f64) -> Result<Self> {
        for (name, v) in [("s_m", s_m), ("s_M", s_big)] {
            if !(v > 0.0 && v <= 1.0) {
                return Err(Error::Range(format!("{name} must lie in (0, 1], got {v}")));
            }
        }
        if !(n >= 1.0) || !n.is_finite() {
            return Err(domain(format!("number of trial periods must be >= 1, got {n}")));
        }
        if !(kappa > 0.0) || !(wealth > 0.0) {
            return Err(domain(format!("kappa and wealth must be positive, got {kappa} and {wealth}")));
        }
        DiscountParams::new(-s_big / (s_m * n), kappa * s_m / wealth)
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Discount factor after `n` periods.
    pub fn discount(&self, n: f64) -> Result<f64> {
        if !(n >= 0.0) {
            return Err(domain(format!("delay must be >= 0, got {n}")));
        }
        gexp(self.h, -self.rho * n)
    }

    /// Average per-period rate `-ln(D(n)) / n` implied by the discount at `n`.
    pub fn average_rate(&self, n: f64) -> Result<f64> {
        if !(n > 0.0) {
            return Err(domain(format!("average rate needs a positive delay, got {n}")));
        }
        Ok(-self.discount(n)?.ln() / n)
    }

    /// Discounting over the delay `a + b` split in two versus left whole.
    pub fn subadditive_combine(&self, a: f64, b: f64) -> Result<Subadditivity> {
        let divided = self.discount(a)? * self.discount(b)?;
        let undivided = self.discount(a + b)?;
        let (x, y) = (self.rho * a, self.rho * b);
        let identity = gexp(self.h, -x - y + self.h * x * y)?;
        Ok(Subadditivity { divided, undivided, identity })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Subadditivity {
    /// `D(a) D(b)`
    pub divided: f64,
    /// `D(a + b)`
    pub undivided: f64,
    /// `e_h^(-x-y+hxy)`, algebraically equal to `divided`.
    pub identity: f64,
}

/// Continuously compounded annual rate `ln(M/m) / t` that makes `m` now
/// and `M` after `t` years equivalent.
pub fn annualized_rate(now: f64, later: f64, years: f64) -> Result<f64> {
    if !(now > 0.0) || !(later > now) || !later.is_finite() {
        return Err(domain(format!("need later > now > 0, got now={now}, later={later}")));
    }
    if !(years > 0.0) {
        return Err(domain(format!("delay in years must be positive, got {years}")));
    }
    Ok((later / now).ln() / years)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Fit {
    pub params: DiscountParams,
    /// Sum of squared residuals at `params`.
    pub residual: f64,
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct FitOptions {
    /// Let `h` range over positive values too.
    pub unconstrained: bool,
}

const MAX_EVALUATIONS: usize = 10_000;
const DIAMETER_TOL: f64 = 1e-9;

/// Least-squares fit of `(h, rho)` to `(delay, discount)` points.
///
/// A log-spaced grid over `h in [-10, -1e-6]`, `rho in [1e-4, 10]` picks the
/// start; Nelder–Mead in `(ln(-h), ln rho)` refines it. Running out of the
/// evaluation budget is reported through [`Fit::converged`], not as an error.
pub fn fit_discount(points: &[(f64, f64)], options: FitOptions) -> Result<Fit> {
    if points.len() < 2 {
        return Err(Error::InsufficientData { needed: 2, got: points.len() });
    }
    for &(n, d) in points {
        if !(n >= 0.0) || !n.is_finite() {
            return Err(domain(format!("delays must be finite and >= 0, got {n}")));
        }
        if !(d > 0.0 && d <= 1.0) {
            return Err(domain(format!("observed discounts must lie in (0, 1], got {d}")));
        }
    }
    let mut delays: Vec<f64> = points.iter().map(|p| p.0).collect();
    delays.sort_by(f64::total_cmp);
    if delays.windows(2).any(|w| w[0] == w[1]) {
        return Err(domain("delays must be distinct"));
    }

    let sse = |params: Result<DiscountParams>| -> f64 {
        let Ok(params) = params else { return f64::INFINITY };
        points.iter().try_fold(0.0, |acc, &(n, d)| {
            params.discount(n).map(|v| acc + (v - d).powi(2))
        })
        .unwrap_or(f64::INFINITY)
    };
    // search coordinates: [ln(-h), ln rho], or [h, ln rho] when unconstrained
    let decode = |[u, v]: [f64; 2]| -> Result<DiscountParams> {
        if options.unconstrained {
            DiscountParams::new_unconstrained(u, v.exp())
        } else {
            DiscountParams::new(-u.exp(), v.exp())
        }
    };

    let h_grid = log_space(1e-6, 10.0, 36);
    let rho_grid = log_space(1e-4, 10.0, 41);
    let mut start = [0.0, 0.0];
    let mut best = f64::INFINITY;
    let mut evaluations = 0;
    let shapes: Vec<f64> = if options.unconstrained {
        h_grid.iter().flat_map(|&h| [-h, h]).chain([0.0]).collect()
    } else {
        h_grid.iter().map(|h| h.ln()).collect()
    };
    for &u in &shapes {
        for &rho in &rho_grid {
            let p = [u, rho.ln()];
            let f = sse(decode(p));
            evaluations += 1;
            if f < best {
                best = f;
                start = p;
            }
        }
    }

    let mut step = 0.5;
    let mut result = None;
    // restart from the incumbent until a fresh simplex stops improving
    while evaluations < MAX_EVALUATIONS {
        let m = simplex::minimize(
            |p| sse(decode(p)),
            start,
            &simplex::Options {
                diameter_tol: DIAMETER_TOL,
                max_evaluations: MAX_EVALUATIONS - evaluations,
                initial_step: step,
            },
        );
        evaluations += m.evaluations;
        let improved = m.value < best;
        if m.value <= best {
            best = m.value;
            start = m.point;
        }
        let converged = m.converged;
        result = Some(converged);
        if !improved || !converged {
            break;
        }
        step = (step * 0.2).max(1e-3);
    }

    Ok(Fit {
        params: decode(start)?,
        residual: best,
        evaluations,
        converged: result.unwrap_or(false),
    })
}

fn log_space(lo: f64, hi: f64, count: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..count)
        .map(|i| (a + (b - a) * i as f64 / (count - 1) as f64).exp())
        .collect()
}

/// Reads indifference points from CSV with header `delay_periods,discount_factor`.
pub fn read_indifference_csv<R: Read>(reader: R) -> Result<Vec<(f64, f64)>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| domain(format!("unreadable CSV header: {e}")))?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["delay_periods", "discount_factor"] {
        return Err(domain(format!(
            "CSV header must be `delay_periods,discount_factor`, got `{}`",
            headers.iter().collect::<Vec<_>>().join(",")
        )));
    }
    let mut points = Vec::new();
    for (line, record) in rdr.records().enumerate() {
        let record = record.map_err(|e| domain(format!("CSV row {}: {e}", line + 2)))?;
        let parse = |i: usize| -> Result<f64> {
            record[i]
                .parse::<f64>()
                .map_err(|e| domain(format!("CSV row {}, column {}: {e}", line + 2, &headers[i])))
        };
        points.push((parse(0)?, parse(1)?));
    }
    Ok(points)
}
