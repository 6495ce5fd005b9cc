//! Derivative-free Nelder–Mead minimizer in two dimensions.

#[derive(Debug, Clone, Copy)]
pub(crate) struct Minimum {
    pub point: [f64; 2],
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

pub(crate) struct Options {
    pub diameter_tol: f64,
    pub max_evaluations: usize,
    pub initial_step: f64,
}

const REFLECT: f64 = 1.0;
const EXPAND: f64 = 2.0;
const CONTRACT: f64 = 0.5;
const SHRINK: f64 = 0.5;

fn diameter(simplex: &[([f64; 2], f64); 3]) -> f64 {
    let mut d: f64 = 0.0;
    for i in 0..3 {
        for j in i + 1..3 {
            let dx = simplex[i].0[0] - simplex[j].0[0];
            let dy = simplex[i].0[1] - simplex[j].0[1];
            d = d.max(dx.hypot(dy));
        }
    }
    d
}

pub(crate) fn minimize<F>(mut f: F, start: [f64; 2], opts: &Options) -> Minimum
where
    F: FnMut([f64; 2]) -> f64,
{
    let mut evals = 0;
    let mut eval = |p: [f64; 2], evals: &mut usize| {
        *evals += 1;
        let v = f(p);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };

    let s = opts.initial_step;
    let mut simplex = [start, [start[0] + s, start[1]], [start[0], start[1] + s]]
        .map(|p| (p, 0.0));
    for v in simplex.iter_mut() {
        v.1 = eval(v.0, &mut evals);
    }

    let mut converged = false;
    while evals < opts.max_evaluations {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        if diameter(&simplex) < opts.diameter_tol {
            converged = true;
            break;
        }
        let (best, worst) = (simplex[0], simplex[2]);
        let centroid = [
            0.5 * (simplex[0].0[0] + simplex[1].0[0]),
            0.5 * (simplex[0].0[1] + simplex[1].0[1]),
        ];
        let along = |t: f64| {
            [
                centroid[0] + t * (worst.0[0] - centroid[0]),
                centroid[1] + t * (worst.0[1] - centroid[1]),
            ]
        };

        let reflected = along(-REFLECT);
        let fr = eval(reflected, &mut evals);
        if fr < best.1 {
            let expanded = along(-EXPAND);
            let fe = eval(expanded, &mut evals);
            simplex[2] = if fe < fr { (expanded, fe) } else { (reflected, fr) };
            continue;
        }
        if fr < simplex[1].1 {
            simplex[2] = (reflected, fr);
            continue;
        }
        let contracted = if fr < worst.1 { along(-CONTRACT) } else { along(CONTRACT) };
        let fc = eval(contracted, &mut evals);
        if fc < worst.1.min(fr) {
            simplex[2] = (contracted, fc);
            continue;
        }
        for v in simplex.iter_mut().skip(1) {
            v.0 = [
                best.0[0] + SHRINK * (v.0[0] - best.0[0]),
                best.0[1] + SHRINK * (v.0[1] - best.0[1]),
            ];
            v.1 = eval(v.0, &mut evals);
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    Minimum { point: simplex[0].0, value: simplex[0].1, evaluations: evals, converged }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rosenbrock() {
        let opts = Options { diameter_tol: 1e-10, max_evaluations: 20_000, initial_step: 0.5 };
        let m = minimize(
            |[x, y]| (1.0 - x).powi(2) + 100.0 * (y - x * x).powi(2),
            [-1.2, 1.0],
            &opts,
        );
        assert!(m.converged);
        assert!((m.point[0] - 1.0).abs() < 1e-6 && (m.point[1] - 1.0).abs() < 1e-6, "{:?}", m);
    }

    #[test]
    fn respects_budget() {
        let opts = Options { diameter_tol: 0.0, max_evaluations: 50, initial_step: 1.0 };
        let m = minimize(|[x, y]| x * x + y * y, [3.0, 4.0], &opts);
        assert!(!m.converged);
        assert!(m.evaluations <= 52);
    }
}
