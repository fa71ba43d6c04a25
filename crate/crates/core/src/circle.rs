//! Points, pairs and arcs on the circle, plus the combinatorial predicates
//! (cyclic order, separation, strong causality) that the rest of the crate
//! queries.
//!
//! A point is stored as its angle in `[0, 2π)`. The stereographic chart used
//! throughout the tests sends the angle `θ` to `tan(θ/2)`, so that angle `0`
//! is chart `0`, angle `π/2` is chart `1` and angle `π` is the chart pole `∞`.

use std::f64::consts::{PI, TAU};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance for comparing angles produced by the solvers.
pub const ANGLE_EPS: f64 = 1e-12;

#[derive(Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CirclePoint(f64);

impl CirclePoint {
    /// Builds a point from any finite angle, reducing it to `[0, 2π)`.
    ///
    /// Panics if `angle` is not finite.
    pub fn new(angle: f64) -> Self {
        assert!(angle.is_finite(), "circle angle must be finite, got {angle}");
        let mut r = angle.rem_euclid(TAU);
        // rem_euclid can round tiny negative inputs up to exactly TAU
        if r >= TAU {
            r = 0.0;
        }
        CirclePoint(r)
    }

    /// The point whose stereographic chart coordinate is `s`; `±∞` maps to
    /// the pole at angle `π`.
    pub fn from_chart(s: f64) -> Self {
        if s.is_infinite() {
            return CirclePoint(PI);
        }
        CirclePoint::new(2.0 * s.atan())
    }

    pub fn angle(self) -> f64 {
        self.0
    }

    /// Stereographic chart coordinate `tan(θ/2)`; the pole returns `+∞`.
    pub fn chart(self) -> f64 {
        if self.0 == PI {
            f64::INFINITY
        } else {
            (0.5 * self.0).tan()
        }
    }

    /// The diametrically opposite point.
    pub fn antipode(self) -> Self {
        CirclePoint::new(self.0 + PI)
    }

    /// Angular distance along the circle, in `[0, π]`.
    pub fn angular_distance(self, other: CirclePoint) -> f64 {
        let d = (self.0 - other.0).abs();
        d.min(TAU - d)
    }

    pub fn approx_eq(self, other: CirclePoint, eps: f64) -> bool {
        self.angular_distance(other) <= eps
    }

    /// Counterclockwise angular offset from `self` to `other`, in `[0, 2π)`.
    pub(crate) fn ccw_offset(self, other: CirclePoint) -> f64 {
        let mut d = other.0 - self.0;
        if d < 0.0 {
            d += TAU;
        }
        d
    }
}

impl fmt::Debug for CirclePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "θ{}", self.0)
    }
}

/// Sign of the cyclic order of three points: `+1` counterclockwise, `-1`
/// clockwise, `0` if any two coincide.
pub fn cyclic_order(p1: CirclePoint, p2: CirclePoint, p3: CirclePoint) -> i8 {
    if p1 == p2 || p2 == p3 || p1 == p3 {
        return 0;
    }
    if p1.ccw_offset(p2) < p1.ccw_offset(p3) {
        1
    } else {
        -1
    }
}

/// Unordered pair of distinct points, stored sorted by angle.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[CirclePoint; 2]", into = "[CirclePoint; 2]")]
pub struct PointPair {
    p: CirclePoint,
    q: CirclePoint,
}

impl PointPair {
    pub fn new(p: CirclePoint, q: CirclePoint) -> Result<Self> {
        if p == q {
            return Err(Error::DegenerateConfiguration("pair with coincident points"));
        }
        Ok(if p.0 < q.0 { PointPair { p, q } } else { PointPair { p: q, q: p } })
    }

    pub fn from_angles(a: f64, b: f64) -> Result<Self> {
        PointPair::new(CirclePoint::new(a), CirclePoint::new(b))
    }

    pub fn from_chart(s: f64, t: f64) -> Result<Self> {
        PointPair::new(CirclePoint::from_chart(s), CirclePoint::from_chart(t))
    }

    /// The point with the smaller angle.
    pub fn first(self) -> CirclePoint {
        self.p
    }

    /// The point with the larger angle.
    pub fn second(self) -> CirclePoint {
        self.q
    }

    pub fn points(self) -> [CirclePoint; 2] {
        [self.p, self.q]
    }

    pub fn contains(self, x: CirclePoint) -> bool {
        self.p == x || self.q == x
    }

    pub fn shares_point(self, other: PointPair) -> bool {
        self.contains(other.p) || self.contains(other.q)
    }

    /// The two open arcs of the complement: `first → second` and
    /// `second → first`, both counterclockwise.
    pub fn arcs(self) -> [Arc; 2] {
        [Arc::new(self.p, self.q), Arc::new(self.q, self.p)]
    }

    /// The open arc of the complement that contains `x`, if `x` is not an
    /// endpoint.
    pub fn arc_containing(self, x: CirclePoint) -> Option<Arc> {
        let [a, b] = self.arcs();
        if a.contains(x) {
            Some(a)
        } else if b.contains(x) {
            Some(b)
        } else {
            None
        }
    }

    /// Given one endpoint, the other one.
    pub fn other(self, x: CirclePoint) -> Option<CirclePoint> {
        if x == self.p {
            Some(self.q)
        } else if x == self.q {
            Some(self.p)
        } else {
            None
        }
    }

    pub fn approx_eq(self, other: PointPair, eps: f64) -> bool {
        (self.p.approx_eq(other.p, eps) && self.q.approx_eq(other.q, eps))
            || (self.p.approx_eq(other.q, eps) && self.q.approx_eq(other.p, eps))
    }
}

impl TryFrom<[CirclePoint; 2]> for PointPair {
    type Error = Error;

    fn try_from(v: [CirclePoint; 2]) -> Result<Self> {
        PointPair::new(v[0], v[1])
    }
}

impl From<PointPair> for [CirclePoint; 2] {
    fn from(p: PointPair) -> Self {
        p.points()
    }
}

impl fmt::Debug for PointPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.p, self.q)
    }
}

/// Open arc swept counterclockwise from `from` to `to`.
///
/// The arc is parametrized by the counterclockwise offset `s ∈ (0, len)`
/// from `from`; the endpoints correspond to `s = 0` and `s = len`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Arc {
    from: CirclePoint,
    to: CirclePoint,
}

impl Arc {
    pub fn new(from: CirclePoint, to: CirclePoint) -> Self {
        Arc { from, to }
    }

    pub fn from(self) -> CirclePoint {
        self.from
    }

    pub fn to(self) -> CirclePoint {
        self.to
    }

    pub fn len(self) -> f64 {
        let l = self.from.ccw_offset(self.to);
        if l == 0.0 {
            TAU
        } else {
            l
        }
    }

    pub fn contains(self, x: CirclePoint) -> bool {
        if x == self.from || x == self.to {
            return false;
        }
        self.from.ccw_offset(x) < self.len()
    }

    pub fn reversed(self) -> Arc {
        Arc::new(self.to, self.from)
    }

    /// The point at offset `s` from `from`; `s = len` returns `to` exactly.
    pub fn point_at(self, s: f64) -> CirclePoint {
        if s >= self.len() {
            return self.to;
        }
        CirclePoint::new(self.from.0 + s)
    }

    /// Offset of `x` from `from`; endpoints map to `0` and `len`.
    pub fn param(self, x: CirclePoint) -> f64 {
        if x == self.to {
            return self.len();
        }
        self.from.ccw_offset(x)
    }

    pub fn midpoint(self) -> CirclePoint {
        self.point_at(0.5 * self.len())
    }
}

fn require_disjoint(a: PointPair, b: PointPair) -> Result<()> {
    if a.shares_point(b) {
        Err(Error::DegenerateConfiguration("pairs share a point"))
    } else {
        Ok(())
    }
}

/// Whether the points of `b` lie in different components of the complement
/// of `a`.
pub fn pairs_separate(a: PointPair, b: PointPair) -> Result<bool> {
    require_disjoint(a, b)?;
    let arc = a.arcs()[0];
    Ok(arc.contains(b.p) != arc.contains(b.q))
}

/// Whether both points of `b2` lie on one open arc determined by `b`.
pub fn strong_causal(b: PointPair, b2: PointPair) -> Result<bool> {
    Ok(!pairs_separate(b, b2)?)
}

/// Whether `b` and `c` lie on different open arcs determined by `d`.
pub fn pair_separates_pairs(d: PointPair, b: PointPair, c: PointPair) -> Result<bool> {
    require_disjoint(d, b)?;
    require_disjoint(d, c)?;
    let arc = d.arcs()[0];
    let side = |x: PointPair| -> Option<bool> {
        let (s, t) = (arc.contains(x.p), arc.contains(x.q));
        (s == t).then_some(s)
    };
    Ok(match (side(b), side(c)) {
        (Some(sb), Some(sc)) => sb != sc,
        _ => false,
    })
}
