//! Harmonic pairs of point-pairs and the conjugate solver.
//!
//! A pair of pairs `(a, b)`, `a = (x, y)`, `b = (z, u)`, is harmonic when
//! `|xz|·|yu| = |xu|·|yz|`. For a monotone structure the two pairs then
//! separate each other, and for fixed `a` and `z ∉ a` the partner `u` is
//! unique and lies on the arc of `X ∖ a` not containing `z`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bracket::{find_root_with, RootError, RootOptions};
use crate::circle::{pairs_separate, CirclePoint, PointPair};
use crate::error::{Error, Result};
use crate::moebius::MoebiusStructure;

/// `ln(d(x,z)d(y,u)) − ln(d(x,u)d(y,z))` for `a = (x,y)`, `b = (z,u)` in
/// stored order. Zero exactly on the harmonic locus.
#[inline]
pub(crate) fn signed_residual(m: &MoebiusStructure, a: PointPair, b: PointPair) -> f64 {
    let [x, y] = a.points();
    let [z, u] = b.points();
    m.ln_dist(x, z) + m.ln_dist(y, u) - m.ln_dist(x, u) - m.ln_dist(y, z)
}

/// Log-residual of the harmonicity condition; independent of the order of
/// the points inside each pair.
pub fn harmonic_residual(m: &MoebiusStructure, a: PointPair, b: PointPair) -> Result<f64> {
    if a.shares_point(b) {
        return Err(Error::DegenerateConfiguration("harmonic residual of pairs sharing a point"));
    }
    Ok(signed_residual(m, a, b).abs())
}

/// The harmonic partner of `z` with respect to `a`: the unique `u` on the
/// arc of `X ∖ a` not containing `z` such that `(a, (z, u))` is harmonic.
pub fn conjugate(m: &MoebiusStructure, a: PointPair, z: CirclePoint) -> Result<CirclePoint> {
    let [x, y] = a.points();
    let arc = a
        .arc_containing(z)
        .ok_or(Error::DegenerateConfiguration("conjugate of an axis endpoint"))?
        .reversed();
    let c0 = m.ln_dist(x, z) - m.ln_dist(y, z);
    let f = |s: f64| {
        let u = arc.point_at(s);
        c0 + m.ln_dist(y, u) - m.ln_dist(x, u)
    };
    let len = arc.len();
    let root = find_root_with(f, 0.0, f(0.0), len, f(len), RootOptions::default()).map_err(|e| match e {
        RootError::NoSignChange { .. } => Error::MonotonicityFailure("conjugate not bracketed"),
        RootError::NotANumber { .. } => Error::MonotonicityFailure("conjugate residual is NaN"),
    })?;
    Ok(arc.point_at(root.x))
}

/// The reflection `ρ_b`: swaps each `x ∉ b` with its harmonic partner and
/// fixes the two points of `b`.
pub fn reflection(m: &MoebiusStructure, b: PointPair, x: CirclePoint) -> Result<CirclePoint> {
    if b.contains(x) {
        return Ok(x);
    }
    conjugate(m, b, x)
}

/// The embedding `e_i` of nondegenerate triples into harmonic 4-tuples of
/// type `(i)`, `i ∈ {1, 2, 3}`.
///
/// For `t = (x₁, x₂, x₃)` returns `(y, x₁, x₂, x₃)` where `y` is the midpoint
/// of `x_{i+1}`, `x_{i+2}` in the chart with `x_i` infinitely remote.
pub fn embed_e(m: &MoebiusStructure, i: usize, t: [CirclePoint; 3]) -> Result<[CirclePoint; 4]> {
    if !(1..=3).contains(&i) {
        return Err(Error::InvalidConfig(format!("embedding index {i} not in 1..=3")));
    }
    if t[0] == t[1] || t[1] == t[2] || t[0] == t[2] {
        return Err(Error::DegenerateConfiguration("degenerate triple"));
    }
    let k = i - 1;
    let remote = t[k];
    let ends = PointPair::new(t[(k + 1) % 3], t[(k + 2) % 3])?;
    // equal chart distances to both ends means ((x_{i+1}, x_{i+2}), (x_i, y)) is harmonic
    let y = conjugate(m, ends, remote)?;
    Ok([y, t[0], t[1], t[2]])
}

/// An element of `Harm`: an ordered harmonic pair `(left, right)`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarmonicPair {
    left: PointPair,
    right: PointPair,
}

impl HarmonicPair {
    /// Validates disjointness, separation and the harmonic residual against
    /// the structure's tolerance.
    pub fn new(m: &MoebiusStructure, left: PointPair, right: PointPair) -> Result<Self> {
        let residual = harmonic_residual(m, left, right)?;
        if residual > m.tolerances().harmonic || !pairs_separate(left, right)? {
            return Err(Error::NotHarmonic { residual });
        }
        Ok(HarmonicPair { left, right })
    }

    /// Skips validation; for assembling deliberately invalid test inputs.
    pub fn new_unchecked(left: PointPair, right: PointPair) -> Self {
        HarmonicPair { left, right }
    }

    pub fn left(self) -> PointPair {
        self.left
    }

    pub fn right(self) -> PointPair {
        self.right
    }

    pub fn axes(self) -> [PointPair; 2] {
        [self.left, self.right]
    }

    pub fn has_axis(self, axis: PointPair) -> bool {
        self.left == axis || self.right == axis
    }

    /// The axis paired with `axis`, if `axis` is one of the two.
    pub fn partner(self, axis: PointPair) -> Option<PointPair> {
        if self.left == axis {
            Some(self.right)
        } else if self.right == axis {
            Some(self.left)
        } else {
            None
        }
    }

    pub fn residual(self, m: &MoebiusStructure) -> f64 {
        signed_residual(m, self.left, self.right).abs()
    }

    pub fn swap(self) -> Self {
        HarmonicPair { left: self.right, right: self.left }
    }

    pub fn hm(self) -> HmPoint {
        HmPoint(self)
    }
}

impl fmt::Debug for HarmonicPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{:?} | {:?}]", self.left, self.right)
    }
}

/// The fixed-point-free involution `j(a, b) = (b, a)` of `Harm`.
pub fn involution_j(q: HarmonicPair) -> HarmonicPair {
    q.swap()
}

/// A point of `Hm = Harm / j`: a harmonic pair with unordered axes.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
#[serde(transparent)]
pub struct HmPoint(HarmonicPair);

impl HmPoint {
    pub fn representative(self) -> HarmonicPair {
        self.0
    }

    pub fn axes(self) -> [PointPair; 2] {
        self.0.axes()
    }

    pub fn has_axis(self, axis: PointPair) -> bool {
        self.0.has_axis(axis)
    }

    pub fn partner(self, axis: PointPair) -> Option<PointPair> {
        self.0.partner(axis)
    }

    /// Order-independent key: the four angles, axes sorted lexicographically.
    pub fn key(self) -> [f64; 4] {
        let k = |p: PointPair| [p.first().angle(), p.second().angle()];
        let (a, b) = (k(self.0.left), k(self.0.right));
        if a <= b {
            [a[0], a[1], b[0], b[1]]
        } else {
            [b[0], b[1], a[0], a[1]]
        }
    }
}

impl PartialEq for HmPoint {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0 || self.0 == other.0.swap()
    }
}

impl From<HarmonicPair> for HmPoint {
    fn from(q: HarmonicPair) -> Self {
        HmPoint(q)
    }
}
