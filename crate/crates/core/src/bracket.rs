//! Bracketed scalar root finding.
//!
//! Brent's method (inverse quadratic interpolation and secant steps guarded
//! by bisection). The functions solved in this crate have logarithmic
//! singularities at the ends of their brackets, so infinite function values
//! are accepted: while any of the three retained values is infinite the
//! solver bisects.

/// Termination controls.
#[derive(Clone, Copy, Debug)]
pub struct RootOptions {
    /// Absolute width at which the bracket is considered collapsed.
    pub xtol: f64,
    pub max_iter: usize,
}

impl Default for RootOptions {
    fn default() -> Self {
        RootOptions { xtol: 1e-15, max_iter: 200 }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct Root {
    pub x: f64,
    pub fx: f64,
    pub iterations: usize,
    /// `false` when the iteration cap was hit before the bracket collapsed.
    pub converged: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum RootError {
    NoSignChange { fa: f64, fb: f64 },
    NotANumber { x: f64 },
}

/// Finds a sign change of `f` in `[a, b]`.
///
/// `f(a)` and `f(b)` must have opposite signs (either may be infinite).
pub fn find_root<F>(mut f: F, a: f64, b: f64, opts: RootOptions) -> Result<Root, RootError>
where
    F: FnMut(f64) -> f64,
{
    let fa = f(a);
    let fb = f(b);
    find_root_with(f, a, fa, b, fb, opts)
}

/// As [`find_root`], with the endpoint values already known.
pub fn find_root_with<F>(
    mut f: F,
    mut a: f64,
    mut fa: f64,
    mut b: f64,
    mut fb: f64,
    opts: RootOptions,
) -> Result<Root, RootError>
where
    F: FnMut(f64) -> f64,
{
    if fa.is_nan() {
        return Err(RootError::NotANumber { x: a });
    }
    if fb.is_nan() {
        return Err(RootError::NotANumber { x: b });
    }
    if fa == 0.0 {
        return Ok(Root { x: a, fx: fa, iterations: 0, converged: true });
    }
    if fb == 0.0 {
        return Ok(Root { x: b, fx: fb, iterations: 0, converged: true });
    }
    if fa.signum() == fb.signum() {
        return Err(RootError::NoSignChange { fa, fb });
    }

    let mut c = a;
    let mut fc = fa;
    let mut d = b - a;
    let mut e = d;

    for iter in 1..=opts.max_iter {
        if fb.signum() == fc.signum() {
            c = a;
            fc = fa;
            d = b - a;
            e = d;
        }
        if fc.abs() < fb.abs() {
            a = b;
            b = c;
            c = a;
            fa = fb;
            fb = fc;
            fc = fa;
        }

        let tol = 2.0 * f64::EPSILON * b.abs() + 0.5 * opts.xtol;
        let xm = 0.5 * (c - b);
        if xm.abs() <= tol || fb == 0.0 {
            return Ok(Root { x: b, fx: fb, iterations: iter, converged: true });
        }

        let interpolate =
            e.abs() >= tol && fa.abs() > fb.abs() && fa.is_finite() && fb.is_finite() && fc.is_finite();
        if interpolate {
            let s = fb / fa;
            let (mut p, mut q);
            if a == c {
                p = 2.0 * xm * s;
                q = 1.0 - s;
            } else {
                let qq = fa / fc;
                let r = fb / fc;
                p = s * (2.0 * xm * qq * (qq - r) - (b - a) * (r - 1.0));
                q = (qq - 1.0) * (r - 1.0) * (s - 1.0);
            }
            if p > 0.0 {
                q = -q;
            }
            p = p.abs();
            if 2.0 * p < (3.0 * xm * q - (tol * q).abs()).min((e * q).abs()) {
                e = d;
                d = p / q;
            } else {
                d = xm;
                e = d;
            }
        } else {
            d = xm;
            e = d;
        }

        a = b;
        fa = fb;
        b += if d.abs() > tol { d } else { tol.copysign(xm) };
        fb = f(b);
        if fb.is_nan() {
            return Err(RootError::NotANumber { x: b });
        }
    }

    Ok(Root { x: b, fx: fb, iterations: opts.max_iter, converged: false })
}
