//! Projections of harmonic pairs to a line.
//!
//! Points `p = (c, d)` of the target line `h_c` are parametrized by the angle
//! `σ` of the point of `d` lying on the arc `P` of `X ∖ c` running
//! counterclockwise from `c₁` to `c₂`; the other point of `d` is its
//! reflection across `c`. The two points of `d` are labelled `v, w` with `v`
//! on the same side of `c` as the first point of `a` not in `c`, so that `v`,
//! `v′` of two points of `h_c` always lie on one arc of `X ∖ c`.
//!
//! The admissible segment `z_c u_c` (for `a = (z, u)`) is a compact
//! `σ`-interval even when `a` and `c` share a point, so no bracket expansion
//! is needed for rays.

use serde::Serialize;

use crate::bracket::{find_root_with, RootOptions};
use crate::circle::{pairs_separate, Arc, CirclePoint, PointPair};
use crate::error::{Error, Result};
use crate::harmonic::{harmonic_residual, reflection, HarmonicPair};
use crate::lines::{axis_coord, axis_distance, pair_coord};
use crate::moebius::MoebiusStructure;

/// Outcome of a projection to a line.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct ProjectionResult {
    /// The point `(c, d)` on the target line.
    pub point: HarmonicPair,
    /// The ratio realized; absent in the harmonic-degenerate cases.
    pub ratio: Option<f64>,
    /// The labelled points of `d`; `None` when the answer was read off
    /// without solving.
    pub v: Option<CirclePoint>,
    pub w: Option<CirclePoint>,
    pub iterations: usize,
    pub residual: f64,
}

impl ProjectionResult {
    fn trivial(point: HarmonicPair, ratio: Option<f64>) -> Self {
        ProjectionResult { point, ratio, v: None, w: None, iterations: 0, residual: 0.0 }
    }

    pub fn axis(&self) -> PointPair {
        self.point.right()
    }
}

/// Whether `(a, c)` is a harmonic pair to tolerance.
pub(crate) fn is_harmonic(m: &MoebiusStructure, a: PointPair, c: PointPair) -> bool {
    !a.shares_point(c)
        && pairs_separate(a, c).unwrap_or(false)
        && harmonic_residual(m, a, c).is_ok_and(|r| r <= m.tolerances().harmonic)
}

/// The `σ`-parametrization of a target line `h_c` relative to a source
/// axis `a`.
#[derive(Clone, Copy, Debug)]
pub(crate) struct Chart {
    c: PointPair,
    arc: Arc,
    /// Whether `v` is the point on `arc` (otherwise its reflection).
    v_on_arc: bool,
}

impl Chart {
    pub(crate) fn new(a: PointPair, c: PointPair) -> Self {
        let arc = Arc::new(c.first(), c.second());
        let r = if c.contains(a.first()) { a.second() } else { a.first() };
        Chart { c, arc, v_on_arc: arc.contains(r) }
    }

    /// The pair `d = (v, w)` at parameter `σ`.
    pub(crate) fn at(&self, m: &MoebiusStructure, sigma: f64) -> (CirclePoint, CirclePoint) {
        let p = self.arc.point_at(sigma);
        let n = reflection(m, self.c, p).unwrap_or(p);
        if self.v_on_arc {
            (p, n)
        } else {
            (n, p)
        }
    }

    /// As [`Chart::at`], but at the parameter of a pin the nearer point of
    /// `d` is replaced by the pinned point, so segment ends are exact.
    pub(crate) fn at_pinned(
        &self,
        m: &MoebiusStructure,
        sigma: f64,
        pins: &[(f64, CirclePoint)],
    ) -> (CirclePoint, CirclePoint) {
        let (mut v, mut w) = self.at(m, sigma);
        for &(p, x) in pins {
            if p == sigma {
                if v.angular_distance(x) <= w.angular_distance(x) {
                    v = x;
                } else {
                    w = x;
                }
            }
        }
        (v, w)
    }

    /// Parameters of the points of `h_c` through the two points of `a`,
    /// paired with those points.
    pub(crate) fn ends(&self, m: &MoebiusStructure, a: PointPair) -> Result<[(f64, CirclePoint); 2]> {
        Ok([(self.param_of(m, a.first())?, a.first()), (self.param_of(m, a.second())?, a.second())])
    }

    /// Parameter of the point of `h_c` through `x`; endpoints of `c` map to
    /// the ends of the arc.
    pub(crate) fn param_of(&self, m: &MoebiusStructure, x: CirclePoint) -> Result<f64> {
        if x == self.c.first() {
            return Ok(0.0);
        }
        if x == self.c.second() {
            return Ok(self.arc.len());
        }
        let y = if self.arc.contains(x) { x } else { reflection(m, self.c, x)? };
        Ok(self.arc.param(y))
    }

    /// The `σ`-interval of the segment between the projections of the two
    /// points of `a`.
    pub(crate) fn interval(&self, m: &MoebiusStructure, a: PointPair) -> Result<(f64, f64)> {
        let [(s1, _), (s2, _)] = self.ends(m, a)?;
        Ok(if s1 <= s2 { (s1, s2) } else { (s2, s1) })
    }
}

fn solve_failure(_: crate::bracket::RootError) -> Error {
    Error::MonotonicityFailure("projection not bracketed")
}

/// The `s`-projection of `q = (a, b)` to `h_c`: the unique `p = (c, d)` on
/// `z_c u_c` such that `b` divides `v_a w_a` in ratio `s`.
pub fn s_projection(m: &MoebiusStructure, q: HarmonicPair, c: PointPair, s: f64) -> Result<ProjectionResult> {
    if !(s > 0.0 && s.is_finite()) {
        return Err(Error::InvalidRatio(s));
    }
    let (a, b) = (q.left(), q.right());
    if c == a {
        return Ok(ProjectionResult::trivial(HarmonicPair::new_unchecked(c, b), Some(s)));
    }
    if is_harmonic(m, a, c) {
        return Ok(ProjectionResult::trivial(HarmonicPair::new_unchecked(c, a), Some(s)));
    }
    let chart = Chart::new(a, c);
    let pins = chart.ends(m, a)?;
    let (lo, hi) = chart.interval(m, a)?;
    let target = pair_coord(m, a, b);
    let f = |sigma: f64| {
        let (v, w) = chart.at_pinned(m, sigma, &pins);
        (axis_coord(m, a, v) + s * axis_coord(m, a, w)) / (1.0 + s) - target
    };
    let root = find_root_with(f, lo, f(lo), hi, f(hi), RootOptions::default()).map_err(solve_failure)?;
    let (v, w) = chart.at_pinned(m, root.x, &pins);
    Ok(ProjectionResult {
        point: HarmonicPair::new_unchecked(c, PointPair::new(v, w)?),
        ratio: Some(s),
        v: Some(v),
        w: Some(w),
        iterations: root.iterations,
        residual: root.fx.abs(),
    })
}

/// The midpoint projection `pr_c = pr_c¹`.
pub fn midpoint_projection(m: &MoebiusStructure, q: HarmonicPair, c: PointPair) -> Result<ProjectionResult> {
    s_projection(m, q, c, 1.0)
}

/// `(s, t)` for the equal-ratio problem at `σ`:
/// `s = |v_b a| / |a w_b|`, `t = |v_a b| / |b w_a|`.
pub(crate) fn equal_ratio_pair(
    m: &MoebiusStructure,
    chart: &Chart,
    pins: &[(f64, CirclePoint)],
    a: PointPair,
    b: PointPair,
    sigma: f64,
) -> (f64, f64) {
    let (v, w) = chart.at_pinned(m, sigma, pins);
    let ratio = |axis: PointPair, target: PointPair| {
        let t = pair_coord(m, axis, target);
        (axis_coord(m, axis, v) - t).abs() / (t - axis_coord(m, axis, w)).abs()
    };
    (ratio(b, a), ratio(a, b))
}

/// The equal-ratio projection: the unique `p` on `x_c y_c ∩ z_c u_c` with
/// `|v_b a| / |a w_b| = |v_a b| / |b w_a|`.
///
/// The common ratio is reported, so the result coincides with the
/// `s`-projection for that ratio.
pub fn equal_ratio_projection(
    m: &MoebiusStructure,
    q: HarmonicPair,
    c: PointPair,
) -> Result<ProjectionResult> {
    let (a, b) = (q.left(), q.right());
    if c == a {
        return Ok(ProjectionResult::trivial(HarmonicPair::new_unchecked(c, b), None));
    }
    if c == b || is_harmonic(m, a, c) {
        return Ok(ProjectionResult::trivial(HarmonicPair::new_unchecked(c, a), None));
    }
    if is_harmonic(m, c, b) {
        return Ok(ProjectionResult::trivial(HarmonicPair::new_unchecked(c, b), None));
    }
    let chart = Chart::new(a, c);
    let [pa, pa2] = chart.ends(m, a)?;
    let [pb, pb2] = chart.ends(m, b)?;
    let pins = [pa, pa2, pb, pb2];
    let (a_lo, a_hi) = chart.interval(m, a)?;
    let (b_lo, b_hi) = chart.interval(m, b)?;
    let (lo, hi) = (a_lo.max(b_lo), a_hi.min(b_hi));
    if lo >= hi {
        return Err(Error::DegenerateConfiguration("admissible segments do not overlap"));
    }
    let f = |sigma: f64| {
        let (s, t) = equal_ratio_pair(m, &chart, &pins, a, b, sigma);
        s.ln() - t.ln()
    };
    let (lo, f_lo) = finite_end(&f, lo, hi);
    let (hi, f_hi) = finite_end(&f, hi, lo);
    let root = find_root_with(f, lo, f_lo, hi, f_hi, RootOptions::default()).map_err(solve_failure)?;
    let (v, w) = chart.at_pinned(m, root.x, &pins);
    let (_, t) = equal_ratio_pair(m, &chart, &pins, a, b, root.x);
    Ok(ProjectionResult {
        point: HarmonicPair::new_unchecked(c, PointPair::new(v, w)?),
        ratio: Some(t),
        v: Some(v),
        w: Some(w),
        iterations: root.iterations,
        residual: root.fx.abs(),
    })
}

/// Moves `x` toward `toward` until `f` is not NaN (`∞/∞` at a shared end of
/// the two admissible segments).
fn finite_end(f: &impl Fn(f64) -> f64, x: f64, toward: f64) -> (f64, f64) {
    let mut y = x;
    let mut step = (toward - x) * 1e-12;
    for _ in 0..40 {
        let fy = f(y);
        if !fy.is_nan() {
            return (y, fy);
        }
        y = x + step;
        step *= 4.0;
    }
    (y, f(y))
}

/// Classification returned by [`monotone_family_check`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyStatus {
    Monotone,
    /// `c = a`: every segment is a point.
    Vacuous,
    /// `(a, c)` harmonic: the family is constant.
    Degenerate,
    Violated,
}

#[derive(Clone, Copy, Debug, Serialize)]
pub struct FamilyReport {
    pub status: FamilyStatus,
    /// Minimal signed step of `v_a` and `w_a` along the sampled grid, in the
    /// common direction of motion; negative on a violation.
    pub worst_slack: f64,
}

/// Samples `p` on a grid of `z_c u_c` and checks that the endpoints `v_a`,
/// `w_a` of the segment family move in the same direction.
pub fn monotone_family_check(
    m: &MoebiusStructure,
    a: PointPair,
    c: PointPair,
    samples: usize,
) -> Result<FamilyReport> {
    if c == a {
        return Ok(FamilyReport { status: FamilyStatus::Vacuous, worst_slack: 0.0 });
    }
    if is_harmonic(m, a, c) {
        return Ok(FamilyReport { status: FamilyStatus::Degenerate, worst_slack: 0.0 });
    }
    let chart = Chart::new(a, c);
    let (lo, hi) = chart.interval(m, a)?;
    let n = samples.max(2);
    let coords: Vec<(f64, f64)> = (1..=n)
        .map(|k| {
            let sigma = lo + (hi - lo) * k as f64 / (n + 1) as f64;
            let (v, w) = chart.at(m, sigma);
            (axis_coord(m, a, v), axis_coord(m, a, w))
        })
        .collect();
    let dir = (coords[n - 1].0 - coords[0].0).signum();
    let worst = coords
        .windows(2)
        .map(|p| (dir * (p[1].0 - p[0].0)).min(dir * (p[1].1 - p[0].1)))
        .fold(f64::INFINITY, f64::min);
    let status = if worst > 0.0 { FamilyStatus::Monotone } else { FamilyStatus::Violated };
    Ok(FamilyReport { status, worst_slack: worst })
}

/// `|pr_c(q) pr_c(q′)| / |qq′|` for `q`, `q′` on a common line `h_a`.
pub fn contraction_ratio(
    m: &MoebiusStructure,
    q: HarmonicPair,
    q2: HarmonicPair,
    c: PointPair,
) -> Result<(f64, f64)> {
    let a = q.left();
    if q2.left() != a {
        return Err(Error::NotCollinear);
    }
    let before = axis_distance(m, a, q.right(), q2.right());
    let p = midpoint_projection(m, q, c)?;
    let p2 = midpoint_projection(m, q2, c)?;
    let after = axis_distance(m, c, p.point.right(), p2.point.right());
    Ok((after, before))
}

/// Slack of the averaged expansion inequality
/// `½(|v_a v′_a| + |w_a w′_a|) − |dd′|` for `d = (v, w)`, `d′ = (v′, w′)` on
/// `h_c`.
pub fn averaged_expansion_slack(
    m: &MoebiusStructure,
    a: PointPair,
    c: PointPair,
    d: (CirclePoint, CirclePoint),
    d2: (CirclePoint, CirclePoint),
) -> Result<f64> {
    let (v, w) = d;
    let (v2, w2) = d2;
    if !pairs_separate(PointPair::new(v, w2)?, PointPair::new(v2, w)?)? {
        return Err(Error::DegenerateConfiguration("(v, w′) and (v′, w) do not separate"));
    }
    let lhs = 0.5
        * ((axis_coord(m, a, v) - axis_coord(m, a, v2)).abs()
            + (axis_coord(m, a, w) - axis_coord(m, a, w2)).abs());
    let dd = axis_distance(m, c, PointPair::new(v, w)?, PointPair::new(v2, w2)?);
    Ok(lhs - dd)
}

/// Two points `d`, `d′` of `h_c` inside `z_c u_c` (for `a = (z, u)`), with
/// `σ`-positions given as fractions of the admissible interval.
pub fn admissible_pairs(
    m: &MoebiusStructure,
    a: PointPair,
    c: PointPair,
    f1: f64,
    f2: f64,
) -> Result<[(CirclePoint, CirclePoint); 2]> {
    let chart = Chart::new(a, c);
    let (lo, hi) = chart.interval(m, a)?;
    let at = |f: f64| chart.at(m, lo + (hi - lo) * f.clamp(0.0, 1.0));
    Ok([at(f1), at(f2)])
}
