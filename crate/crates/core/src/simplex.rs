//! Nelder–Mead simplex minimization.
//!
//! Standard coefficients (reflection 1, expansion 2, contraction ½,
//! shrink ½). Every objective evaluation is recorded so a caller can replay
//! the best value reached within any prefix of the evaluation budget.

#[derive(Clone, Copy, Debug)]
pub struct SimplexOptions {
    pub max_evals: usize,
    /// Stop once the largest vertex distance from the best vertex falls
    /// below this.
    pub diameter: f64,
}

impl Default for SimplexOptions {
    fn default() -> Self {
        SimplexOptions { max_evals: 2000, diameter: 1e-10 }
    }
}

#[derive(Clone, Debug)]
pub struct Minimum<const N: usize> {
    pub x: [f64; N],
    pub f: f64,
    /// `(f, x)` of every evaluation in order.
    pub trace: Vec<(f64, [f64; N])>,
    pub converged: bool,
}

impl<const N: usize> Minimum<N> {
    pub fn evaluations(&self) -> usize {
        self.trace.len()
    }
}

/// Minimizes `f` from the initial simplex `x0 + step·e_i`. NaN values are
/// treated as `+∞`.
pub fn minimize<const N: usize, F>(mut f: F, x0: [f64; N], step: f64, opts: SimplexOptions) -> Minimum<N>
where
    F: FnMut(&[f64; N]) -> f64,
{
    let mut trace = Vec::with_capacity(opts.max_evals.min(4096));
    let mut eval = |x: [f64; N], trace: &mut Vec<(f64, [f64; N])>| {
        let v = f(&x);
        let v = if v.is_nan() { f64::INFINITY } else { v };
        trace.push((v, x));
        v
    };

    let mut simplex: Vec<([f64; N], f64)> = Vec::with_capacity(N + 1);
    simplex.push((x0, eval(x0, &mut trace)));
    for i in 0..N {
        if trace.len() >= opts.max_evals {
            break;
        }
        let mut x = x0;
        x[i] += step;
        simplex.push((x, eval(x, &mut trace)));
    }

    let mut converged = false;
    while simplex.len() == N + 1 && trace.len() < opts.max_evals {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let best = simplex[0].0;
        let diam = simplex[1..].iter().map(|(x, _)| dist(x, &best)).fold(0.0, f64::max);
        if diam < opts.diameter {
            converged = true;
            break;
        }

        let mut centroid = [0.0; N];
        for (x, _) in &simplex[..N] {
            for k in 0..N {
                centroid[k] += x[k] / N as f64;
            }
        }
        let (worst, f_worst) = simplex[N];
        let along = |t: f64| -> [f64; N] {
            let mut y = [0.0; N];
            for k in 0..N {
                y[k] = centroid[k] + t * (worst[k] - centroid[k]);
            }
            y
        };

        let xr = along(-1.0);
        let fr = eval(xr, &mut trace);
        if fr < simplex[0].1 {
            if trace.len() >= opts.max_evals {
                simplex[N] = (xr, fr);
                break;
            }
            let xe = along(-2.0);
            let fe = eval(xe, &mut trace);
            simplex[N] = if fe < fr { (xe, fe) } else { (xr, fr) };
            continue;
        }
        if fr < simplex[N - 1].1 {
            simplex[N] = (xr, fr);
            continue;
        }
        if trace.len() >= opts.max_evals {
            break;
        }
        let (xc, fc) = if fr < f_worst {
            let xc = along(-0.5);
            (xc, eval(xc, &mut trace))
        } else {
            let xc = along(0.5);
            (xc, eval(xc, &mut trace))
        };
        if fc < fr.min(f_worst) {
            simplex[N] = (xc, fc);
            continue;
        }
        for vertex in simplex.iter_mut().skip(1) {
            if trace.len() >= opts.max_evals {
                break;
            }
            let mut y = [0.0; N];
            for k in 0..N {
                y[k] = best[k] + 0.5 * (vertex.0[k] - best[k]);
            }
            *vertex = (y, eval(y, &mut trace));
        }
    }

    let (f_best, x_best) =
        trace.iter().copied().min_by(|a, b| a.0.total_cmp(&b.0)).expect("at least one evaluation");
    Minimum { x: x_best, f: f_best, trace, converged }
}

fn dist<const N: usize>(a: &[f64; N], b: &[f64; N]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}
