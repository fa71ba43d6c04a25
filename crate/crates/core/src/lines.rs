//! Lines of `Hm`, their log-ratio coordinate, segments and common
//! perpendiculars.
//!
//! The line `h_a` consists of all harmonic pairs with axis `a`. For
//! `a = (x, y)` (sorted by angle) the coordinate of `(a, b)` is
//! `t = ln d(x, z) − ln d(y, z)` for either point `z` of `b`; by harmonicity
//! both points give the same value, and differences of `t` are the line
//! distance.

use serde::Serialize;

use crate::bracket::{find_root_with, RootOptions};
use crate::circle::{strong_causal, Arc, CirclePoint, PointPair};
use crate::error::{Error, Result};
use crate::harmonic::{reflection, HarmonicPair};
use crate::moebius::MoebiusStructure;

/// `ln d(a₁, x) − ln d(a₂, x)`; `−∞` at `a₁`, `+∞` at `a₂`.
#[inline]
pub fn axis_coord(m: &MoebiusStructure, a: PointPair, x: CirclePoint) -> f64 {
    m.ln_dist(a.first(), x) - m.ln_dist(a.second(), x)
}

/// Coordinate of the pair `b` on the line with axis `a`, averaged over the
/// two points of `b`.
#[inline]
pub(crate) fn pair_coord(m: &MoebiusStructure, a: PointPair, b: PointPair) -> f64 {
    0.5 * (axis_coord(m, a, b.first()) + axis_coord(m, a, b.second()))
}

/// An oriented line `h_a`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Line {
    axis: PointPair,
    positive: Arc,
}

impl Line {
    /// Orientation defaults to the complementary arc whose midpoint has the
    /// smaller angle.
    pub fn new(axis: PointPair) -> Self {
        let [p, n] = axis.arcs();
        let positive = if p.midpoint().angle() <= n.midpoint().angle() { p } else { n };
        Line { axis, positive }
    }

    /// Uses the arc of `X ∖ axis` containing `z` as the positive arc.
    pub fn with_orientation(axis: PointPair, z: CirclePoint) -> Result<Self> {
        let positive =
            axis.arc_containing(z).ok_or(Error::DegenerateConfiguration("orientation point on the axis"))?;
        Ok(Line { axis, positive })
    }

    pub fn axis(&self) -> PointPair {
        self.axis
    }

    pub fn positive_arc(&self) -> Arc {
        self.positive
    }

    /// The pair `(axis, (z, ρ_axis(z)))` for `z` on the positive arc.
    pub fn through(&self, m: &MoebiusStructure, z: CirclePoint) -> Result<HarmonicPair> {
        project_point(m, z, self.axis)
    }

    /// The point of the line with coordinate `t`.
    pub fn point_at(&self, m: &MoebiusStructure, t: f64) -> Result<HarmonicPair> {
        if !t.is_finite() {
            return Err(Error::InvalidConfig(format!("line coordinate {t} is not finite")));
        }
        let arc = self.positive;
        let f = |s: f64| axis_coord(m, self.axis, arc.point_at(s)) - t;
        let len = arc.len();
        let root = find_root_with(f, 0.0, f(0.0), len, f(len), RootOptions::default())
            .map_err(|_| Error::MonotonicityFailure("line coordinate not bracketed"))?;
        self.through(m, arc.point_at(root.x))
    }

    pub fn contains(&self, m: &MoebiusStructure, q: HarmonicPair) -> bool {
        q.partner(self.axis).is_some_and(|b| {
            crate::harmonic::harmonic_residual(m, self.axis, b).is_ok_and(|r| r <= m.tolerances().harmonic)
        })
    }

    pub fn coord(&self, m: &MoebiusStructure, q: HarmonicPair) -> Result<f64> {
        line_coord(m, self, q)
    }
}

/// The projection `x_a = (a, (x, ρ_a(x)))` of a circle point to `h_a`.
pub fn project_point(m: &MoebiusStructure, x: CirclePoint, a: PointPair) -> Result<HarmonicPair> {
    if a.contains(x) {
        return Err(Error::DegenerateConfiguration("projected point lies on the axis"));
    }
    let y = reflection(m, a, x)?;
    Ok(HarmonicPair::new_unchecked(a, PointPair::new(x, y)?))
}

/// The coordinate of `q` on `line`.
pub fn line_coord(m: &MoebiusStructure, line: &Line, q: HarmonicPair) -> Result<f64> {
    if !line.contains(m, q) {
        return Err(Error::NotOnLine);
    }
    let b = q.partner(line.axis).ok_or(Error::NotOnLine)?;
    Ok(pair_coord(m, line.axis, b))
}

/// An axis shared by `q` and `q'`, preferring `q.left`.
pub fn shared_axis(q: HarmonicPair, q2: HarmonicPair) -> Option<PointPair> {
    q.axes().into_iter().find(|&a| q2.has_axis(a))
}

/// The distance between two harmonic pairs on a common line.
pub fn line_distance(m: &MoebiusStructure, q: HarmonicPair, q2: HarmonicPair) -> Result<f64> {
    if q.hm() == q2.hm() {
        return Ok(0.0);
    }
    let a = shared_axis(q, q2).ok_or(Error::NotCollinear)?;
    let b = q.partner(a).ok_or(Error::NotCollinear)?;
    let b2 = q2.partner(a).ok_or(Error::NotCollinear)?;
    Ok(axis_distance(m, a, b, b2))
}

/// `|t_a(b) − t_a(b′)|` without any validation.
#[inline]
pub(crate) fn axis_distance(m: &MoebiusStructure, a: PointPair, b: PointPair, b2: PointPair) -> f64 {
    if b == b2 {
        return 0.0;
    }
    (pair_coord(m, a, b) - pair_coord(m, a, b2)).abs()
}

/// The four expressions for the distance between `(a, b)` and `(a, b′)`
/// obtained from the four choices of one point in `b` and one in `b′`.
pub fn distance_expressions(m: &MoebiusStructure, a: PointPair, b: PointPair, b2: PointPair) -> [f64; 4] {
    let [x, y] = a.points();
    let [z, u] = b.points();
    let [z2, u2] = b2.points();
    let e = |p: CirclePoint, p2: CirclePoint| {
        (m.ln_dist(x, p2) + m.ln_dist(y, p) - m.ln_dist(x, p) - m.ln_dist(y, p2)).abs()
    };
    [e(z, z2), e(z, u2), e(u, z2), e(u, u2)]
}

/// A segment `qq′` of a line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    axis: PointPair,
    start: PointPair,
    end: PointPair,
}

impl Segment {
    pub fn new(q: HarmonicPair, q2: HarmonicPair) -> Result<Self> {
        let axis = shared_axis(q, q2).ok_or(Error::NotCollinear)?;
        let start = q.partner(axis).ok_or(Error::NotCollinear)?;
        let end = q2.partner(axis).ok_or(Error::NotCollinear)?;
        Ok(Segment { axis, start, end })
    }

    pub fn axis(&self) -> PointPair {
        self.axis
    }

    pub fn ends(&self) -> [HarmonicPair; 2] {
        [HarmonicPair::new_unchecked(self.axis, self.start), HarmonicPair::new_unchecked(self.axis, self.end)]
    }

    pub fn length(&self, m: &MoebiusStructure) -> f64 {
        axis_distance(m, self.axis, self.start, self.end)
    }

    /// Whether `(axis, b)` is an interior point: `b` separates the two end
    /// pairs.
    pub fn contains(&self, b: PointPair) -> bool {
        crate::circle::pair_separates_pairs(b, self.start, self.end).unwrap_or(false)
    }
}

/// The unique axis harmonic to both `b` and `b2`.
///
/// The fixed point of `ρ_b ∘ ρ_{b′}` on the arc `b⁺` of `X ∖ b` away from
/// `b′` is bracketed: the displacement is positive at the start of `b⁺` and
/// negative at its end.
pub fn common_perpendicular(m: &MoebiusStructure, b: PointPair, b2: PointPair) -> Result<PointPair> {
    if b.shares_point(b2) || !strong_causal(b, b2)? {
        return Err(Error::NoCommonPerpendicular);
    }
    let plus =
        b.arcs().into_iter().find(|arc| !arc.contains(b2.first())).ok_or(Error::NoCommonPerpendicular)?;
    let len = plus.len();
    solve_perpendicular(m, b, b2, plus, 0.0, len)
}

pub(crate) fn solve_perpendicular(
    m: &MoebiusStructure,
    b: PointPair,
    b2: PointPair,
    plus: Arc,
    lo: f64,
    hi: f64,
) -> Result<PointPair> {
    let g = |s: f64| -> f64 {
        let x = plus.point_at(s);
        let image = reflection(m, b2, x).and_then(|y| reflection(m, b, y));
        match image {
            Ok(r) if r == plus.from() => -s,
            Ok(r) => plus.param(r) - s,
            Err(_) => f64::NAN,
        }
    };
    let root = find_root_with(g, lo, g(lo), hi, g(hi), RootOptions::default())
        .map_err(|_| Error::NoCommonPerpendicular)?;
    let x = plus.point_at(root.x);
    let y = reflection(m, b2, x)?;
    let a = PointPair::new(x, y)?;
    let tol = m.tolerances().harmonic;
    let r1 = crate::harmonic::harmonic_residual(m, a, b)?;
    let r2 = crate::harmonic::harmonic_residual(m, a, b2)?;
    if r1.max(r2) > tol {
        return Err(Error::NotHarmonic { residual: r1.max(r2) });
    }
    Ok(a)
}

/// Arc-coordinate form of a pair for serialization.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct AxisAngles(pub f64, pub f64);

impl From<PointPair> for AxisAngles {
    fn from(p: PointPair) -> Self {
        AxisAngles(p.first().angle(), p.second().angle())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::{E, SQRT_2, TAU};

    const INF: f64 = f64::INFINITY;

    fn chart(s: f64) -> CirclePoint {
        CirclePoint::from_chart(s)
    }

    fn cpair(s: f64, t: f64) -> PointPair {
        PointPair::from_chart(s, t).unwrap()
    }

    fn random_pair(rng: &mut ChaCha8Rng) -> PointPair {
        PointPair::from_angles(rng.gen_range(0.0..TAU), rng.gen_range(0.0..TAU)).unwrap()
    }

    #[test]
    fn projection_examples() {
        let m = MoebiusStructure::canonical();
        let q = project_point(&m, chart(2.0), cpair(0.0, INF)).unwrap();
        assert!(q.right().approx_eq(cpair(2.0, -2.0), 1e-12));
        let q = project_point(&m, chart(2.0), cpair(1.0, 3.0)).unwrap();
        assert!(q.right().approx_eq(cpair(2.0, INF), 1e-12));
        assert!(project_point(&m, chart(1.0), cpair(1.0, 3.0)).is_err());
    }

    #[test]
    fn coordinate_examples() {
        let m = MoebiusStructure::canonical();
        let a = cpair(0.0, INF);
        let line = Line::with_orientation(a, chart(1.0)).unwrap();
        let q = |s: f64| HarmonicPair::new(&m, a, cpair(s, -s)).unwrap();
        let t = |s: f64| line.coord(&m, q(s)).unwrap();
        assert!(((t(E) - t(1.0)).abs() - 1.0).abs() < 1e-12);
        assert!((line_distance(&m, q(1.0), q(E)).unwrap() - 1.0).abs() < 1e-12);
        let (d12, d23, d13) = (
            line_distance(&m, q(1.0), q(2.0)).unwrap(),
            line_distance(&m, q(2.0), q(6.0)).unwrap(),
            line_distance(&m, q(1.0), q(6.0)).unwrap(),
        );
        assert!((d13 - d12 - d23).abs() < 1e-12);
        assert!((d13 - 6f64.ln()).abs() < 1e-12);
        assert_eq!(line_distance(&m, q(2.0), q(2.0)).unwrap(), 0.0);
        let off = project_point(&m, chart(3.0), cpair(-1.0, 1.0)).unwrap();
        assert_eq!(line.coord(&m, off), Err(Error::NotOnLine));
        let far = HarmonicPair::new_unchecked(cpair(-2.0, 2.0), cpair(-4.0, -1.0));
        assert_eq!(line_distance(&m, q(1.0), far), Err(Error::NotCollinear));
    }

    #[test]
    fn point_at_inverts_the_coordinate() {
        let m = MoebiusStructure::sine_perturbed(0.1).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..200 {
            let line = Line::new(random_pair(&mut rng));
            let t = rng.gen_range(-8.0..8.0);
            let q = line.point_at(&m, t).unwrap();
            assert!((line.coord(&m, q).unwrap() - t).abs() < 1e-9);
        }
    }

    #[test]
    fn distance_expressions_agree() {
        let m = MoebiusStructure::sine_perturbed(0.2).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..1000 {
            let a = random_pair(&mut rng);
            let b = project_point(&m, CirclePoint::new(rng.gen_range(0.0..TAU)), a).unwrap();
            let b2 = project_point(&m, CirclePoint::new(rng.gen_range(0.0..TAU)), a).unwrap();
            let e = distance_expressions(&m, a, b.right(), b2.right());
            let d = line_distance(&m, b, b2).unwrap();
            for v in e {
                assert!((v - d).abs() < 1e-9, "{e:?} vs {d}");
            }
            assert!((line_distance(&m, b.swap(), b2.swap()).unwrap() - d).abs() == 0.0);
        }
    }

    #[test]
    fn segment_membership_matches_coordinates() {
        let m = MoebiusStructure::canonical();
        let a = cpair(0.0, INF);
        let q = |s: f64| HarmonicPair::new(&m, a, cpair(s, -s)).unwrap();
        let seg = Segment::new(q(1.0), q(4.0)).unwrap();
        assert!(seg.contains(cpair(2.0, -2.0)));
        assert!(!seg.contains(cpair(5.0, -5.0)));
        assert!((seg.length(&m) - 4f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn perpendicular_example() {
        let m = MoebiusStructure::canonical();
        let a = common_perpendicular(&m, cpair(0.0, INF), cpair(1.0, 2.0)).unwrap();
        assert!((a.first().chart() - SQRT_2).abs() < 1e-9);
        assert!((a.second().chart() + SQRT_2).abs() < 1e-9);
        assert_eq!(
            common_perpendicular(&m, cpair(0.0, INF), cpair(1.0, -1.0)),
            Err(Error::NoCommonPerpendicular)
        );
        assert_eq!(
            common_perpendicular(&m, cpair(0.0, INF), cpair(0.0, 1.0)),
            Err(Error::NoCommonPerpendicular)
        );
    }

    #[test]
    fn perpendicular_is_unique_and_symmetric() {
        let m = MoebiusStructure::canonical();
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        let mut done = 0;
        while done < 200 {
            let (b, b2) = (random_pair(&mut rng), random_pair(&mut rng));
            if b.shares_point(b2) || !strong_causal(b, b2).unwrap() {
                continue;
            }
            done += 1;
            let a = common_perpendicular(&m, b, b2).unwrap();
            let a2 = common_perpendicular(&m, b2, b).unwrap();
            assert!(a.approx_eq(a2, 1e-11), "{a:?} {a2:?}");
            let plus = b.arcs().into_iter().find(|arc| !arc.contains(b2.first())).unwrap();
            let s = plus.param(if plus.contains(a.first()) { a.first() } else { a.second() });
            for k in 1..=8 {
                let lo = s * (1.0 - k as f64 / 9.0);
                let hi = s + (plus.len() - s) * k as f64 / 9.0;
                let r = solve_perpendicular(&m, b, b2, plus, lo, hi).unwrap();
                assert!(r.approx_eq(a, 1e-12));
            }
        }
    }
}
