//! Semi-metrics on the circle and the Möbius structures they generate.
//!
//! Everything downstream is computed from an everywhere-finite base
//! semi-metric. Inversion charts `d_ω` are exposed for inspection and
//! testing, but cross-ratios and line coordinates never go through them, so
//! no `±∞` arithmetic appears in the hot paths.

use std::f64::consts::TAU;

use serde::{Deserialize, Serialize};

use crate::circle::CirclePoint;
use crate::error::{Error, Result};

/// Numerical tolerances shared by every module.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Comparisons of logarithms of cross-ratios.
    pub cross_ratio: f64,
    /// Log-residual below which a pair of pairs counts as harmonic.
    pub harmonic: f64,
    /// Angle comparisons of solver outputs.
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances { cross_ratio: 1e-9, harmonic: 1e-10, angle: crate::circle::ANGLE_EPS }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StructureKind {
    #[serde(alias = "canonical")]
    CanonicalChordal,
    #[serde(alias = "sine")]
    SinePerturbed,
    #[serde(alias = "power")]
    PowerPerturbed,
    Tabulated,
}

/// Tabulated semi-metric: `values[i][j]` is the distance between the grid
/// angles `2πi/n` and `2πj/n`. The diagonal is ignored.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TableSpec {
    pub values: Vec<Vec<f64>>,
}

/// JSON description of a structure:
/// `{"kind": "canonical-chordal" | "sine-perturbed" | "power-perturbed" | "tabulated", "epsilon"?: number, "table"?: {"values": [[...]]}}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StructureSpec {
    pub kind: StructureKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<TableSpec>,
}

impl StructureSpec {
    pub fn canonical() -> Self {
        StructureSpec { kind: StructureKind::CanonicalChordal, epsilon: None, table: None }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidStructure(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
enum SemiMetric {
    Chordal,
    /// `d·(1 + ε sin(θx + θy))`
    Sine(f64),
    /// `d^(1+ε)`
    Power(f64),
    Tabulated(RatioGrid),
}

/// Grid of `d / chordal`, interpolated bilinearly and periodically.
#[derive(Clone, Debug, PartialEq)]
struct RatioGrid {
    n: usize,
    ratio: Vec<f64>,
}

impl RatioGrid {
    fn from_table(t: &TableSpec) -> Result<Self> {
        let n = t.values.len();
        if n < 3 {
            return Err(Error::InvalidStructure("table needs at least 3 rows".into()));
        }
        let mut ratio = vec![0.0; n * n];
        for (i, row) in t.values.iter().enumerate() {
            if row.len() != n {
                return Err(Error::InvalidStructure(format!("table row {i} is not of length {n}")));
            }
            for (j, &v) in row.iter().enumerate() {
                if i == j {
                    continue;
                }
                if !v.is_finite() || v <= 0.0 {
                    return Err(Error::InvalidStructure(format!(
                        "table entry ({i}, {j}) must be positive and finite"
                    )));
                }
                let chord = chordal(grid_angle(i, n), grid_angle(j, n));
                ratio[i * n + j] = v / chord;
            }
        }
        // diagonal ratios are the limits along the grid; use the neighbours
        for i in 0..n {
            let (ip, im) = ((i + 1) % n, (i + n - 1) % n);
            ratio[i * n + i] =
                0.25 * (ratio[i * n + ip] + ratio[i * n + im] + ratio[ip * n + i] + ratio[im * n + i]);
        }
        Ok(RatioGrid { n, ratio })
    }

    fn raw(&self, x: f64, y: f64) -> f64 {
        let n = self.n;
        let scale = n as f64 / TAU;
        let (u, v) = (x * scale, y * scale);
        let (i0, j0) = (u.floor(), v.floor());
        let (fu, fv) = (u - i0, v - j0);
        let i0 = i0 as usize % n;
        let j0 = j0 as usize % n;
        let (i1, j1) = ((i0 + 1) % n, (j0 + 1) % n);
        let g = |i: usize, j: usize| self.ratio[i * n + j];
        (1.0 - fu) * (1.0 - fv) * g(i0, j0)
            + fu * (1.0 - fv) * g(i1, j0)
            + (1.0 - fu) * fv * g(i0, j1)
            + fu * fv * g(i1, j1)
    }

    fn eval(&self, x: f64, y: f64) -> f64 {
        0.5 * (self.raw(x, y) + self.raw(y, x))
    }
}

fn grid_angle(i: usize, n: usize) -> f64 {
    TAU * i as f64 / n as f64
}

#[inline]
fn chordal(x: f64, y: f64) -> f64 {
    2.0 * (0.5 * (x - y)).sin().abs()
}

/// A Möbius structure on the circle, represented by a base semi-metric with
/// no infinitely remote point.
#[derive(Clone, Debug, PartialEq)]
pub struct MoebiusStructure {
    base: SemiMetric,
    spec: StructureSpec,
    tol: Tolerances,
}

impl MoebiusStructure {
    /// The canonical structure, generated by the chordal metric
    /// `2|sin(Δθ/2)|` of the unit circle.
    pub fn canonical() -> Self {
        MoebiusStructure {
            base: SemiMetric::Chordal,
            spec: StructureSpec::canonical(),
            tol: Tolerances::default(),
        }
    }

    /// Chordal metric times `1 + ε sin(θx + θy)`; requires `|ε| < 1`.
    pub fn sine_perturbed(epsilon: f64) -> Result<Self> {
        MoebiusStructure::from_spec(&StructureSpec {
            kind: StructureKind::SinePerturbed,
            epsilon: Some(epsilon),
            table: None,
        })
    }

    /// Chordal metric raised to the power `1 + ε`; requires `ε > -1`.
    pub fn power_perturbed(epsilon: f64) -> Result<Self> {
        MoebiusStructure::from_spec(&StructureSpec {
            kind: StructureKind::PowerPerturbed,
            epsilon: Some(epsilon),
            table: None,
        })
    }

    pub fn tabulated(values: Vec<Vec<f64>>) -> Result<Self> {
        MoebiusStructure::from_spec(&StructureSpec {
            kind: StructureKind::Tabulated,
            epsilon: None,
            table: Some(TableSpec { values }),
        })
    }

    pub fn from_spec(spec: &StructureSpec) -> Result<Self> {
        let eps = || {
            spec.epsilon
                .filter(|e| e.is_finite())
                .ok_or_else(|| Error::InvalidStructure("missing or non-finite \"epsilon\"".into()))
        };
        let base = match spec.kind {
            StructureKind::CanonicalChordal => SemiMetric::Chordal,
            StructureKind::SinePerturbed => {
                let e = eps()?;
                if e.abs() >= 1.0 {
                    return Err(Error::InvalidStructure("sine perturbation needs |epsilon| < 1".into()));
                }
                SemiMetric::Sine(e)
            }
            StructureKind::PowerPerturbed => {
                let e = eps()?;
                if e <= -1.0 {
                    return Err(Error::InvalidStructure("power perturbation needs epsilon > -1".into()));
                }
                SemiMetric::Power(e)
            }
            StructureKind::Tabulated => {
                let table =
                    spec.table.as_ref().ok_or_else(|| Error::InvalidStructure("missing \"table\"".into()))?;
                SemiMetric::Tabulated(RatioGrid::from_table(table)?)
            }
        };
        Ok(MoebiusStructure { base, spec: spec.clone(), tol: Tolerances::default() })
    }

    pub fn with_tolerances(mut self, tol: Tolerances) -> Self {
        self.tol = tol;
        self
    }

    pub fn tolerances(&self) -> Tolerances {
        self.tol
    }

    pub fn spec(&self) -> &StructureSpec {
        &self.spec
    }

    /// Base semi-metric value; zero exactly on the diagonal.
    pub fn dist(&self, x: CirclePoint, y: CirclePoint) -> f64 {
        let (a, b) = (x.angle(), y.angle());
        match &self.base {
            SemiMetric::Chordal => chordal(a, b),
            SemiMetric::Sine(e) => chordal(a, b) * (1.0 + e * (a + b).sin()),
            SemiMetric::Power(e) => chordal(a, b).powf(1.0 + e),
            SemiMetric::Tabulated(g) => chordal(a, b) * g.eval(a, b),
        }
    }

    /// Natural logarithm of [`dist`](Self::dist); `-∞` on the diagonal.
    #[inline]
    pub fn ln_dist(&self, x: CirclePoint, y: CirclePoint) -> f64 {
        let (a, b) = (x.angle(), y.angle());
        let lc = chordal(a, b).ln();
        match &self.base {
            SemiMetric::Chordal => lc,
            SemiMetric::Sine(e) => lc + (e * (a + b).sin()).ln_1p(),
            SemiMetric::Power(e) => (1.0 + e) * lc,
            SemiMetric::Tabulated(g) => lc + g.eval(a, b).ln(),
        }
    }

    /// The semi-metric of the structure in which `omega` is infinitely
    /// remote:
    /// `d_ω(x,y) = d(ω, ω*)·d(x,y) / (d(x,ω)·d(y,ω))`, with `ω*` the
    /// antipode of `ω`.
    ///
    /// The constant factor `d(ω, ω*)` fixes the homothety class so that, for
    /// the canonical structure, `d_ω` is the Euclidean distance of the
    /// stereographic chart centred at `ω*`.
    pub fn dist_inverted(&self, omega: CirclePoint, x: CirclePoint, y: CirclePoint) -> f64 {
        if x == y {
            return 0.0;
        }
        if x == omega || y == omega {
            return f64::INFINITY;
        }
        let scale = self.dist(omega, omega.antipode());
        scale * self.dist(x, y) / (self.dist(x, omega) * self.dist(y, omega))
    }

    /// `(ln cr₁, ln cr₂, ln cr₃)` of a nondegenerate 4-tuple.
    pub fn cross_ratio_triple(&self, q: [CirclePoint; 4]) -> Result<CrossRatioTriple> {
        require_distinct(&q)?;
        let l = |i: usize, j: usize| self.ln_dist(q[i], q[j]);
        Ok(CrossRatioTriple::from_pairing_logs([l(0, 1) + l(2, 3), l(0, 2) + l(1, 3), l(0, 3) + l(1, 2)]))
    }

    /// Cross-ratio triple evaluated in the inversion chart `d_ω`. Used to
    /// check chart independence; all points must differ from `omega`.
    pub fn cross_ratio_triple_in_chart(
        &self,
        omega: CirclePoint,
        q: [CirclePoint; 4],
    ) -> Result<CrossRatioTriple> {
        require_distinct(&q)?;
        if q.contains(&omega) {
            return Err(Error::DegenerateConfiguration("tuple meets the remote point"));
        }
        let l = |i: usize, j: usize| self.dist_inverted(omega, q[i], q[j]).ln();
        Ok(CrossRatioTriple::from_pairing_logs([l(0, 1) + l(2, 3), l(0, 2) + l(1, 3), l(0, 3) + l(1, 2)]))
    }

    /// `d(x,z)d(y,u) + d(x,u)d(y,z) − d(x,y)d(z,u)` for `q = (x,y,z,u)`.
    /// Repeated entries are allowed.
    pub fn ptolemaic_residual(&self, q: [CirclePoint; 4]) -> f64 {
        let [x, y, z, u] = q;
        self.dist(x, z) * self.dist(y, u) + self.dist(x, u) * self.dist(y, z)
            - self.dist(x, y) * self.dist(z, u)
    }

    /// Minimum of the ptolemaic residual over the three pairings of `q`.
    pub fn ptolemaic_min_residual(&self, q: [CirclePoint; 4]) -> f64 {
        let [x, y, z, u] = q;
        self.ptolemaic_residual([x, y, z, u])
            .min(self.ptolemaic_residual([x, z, y, u]))
            .min(self.ptolemaic_residual([x, u, y, z]))
    }
}

fn require_distinct(q: &[CirclePoint; 4]) -> Result<()> {
    for i in 0..4 {
        for j in i + 1..4 {
            if q[i] == q[j] {
                return Err(Error::Degenerate4Tuple);
            }
        }
    }
    Ok(())
}

/// Logarithms of the three cross-ratios; a point of the plane `a₁+a₂+a₃ = 0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CrossRatioTriple {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl CrossRatioTriple {
    pub fn new(a1: f64, a2: f64, a3: f64) -> Self {
        CrossRatioTriple { a1, a2, a3 }
    }

    /// From the log-products `L_k` of the pairings (12)(34), (13)(24),
    /// (14)(23): `a₁ = L₂ − L₃`, `a₂ = L₃ − L₁`, `a₃ = L₁ − L₂`.
    fn from_pairing_logs(l: [f64; 3]) -> Self {
        CrossRatioTriple { a1: l[1] - l[2], a2: l[2] - l[0], a3: l[0] - l[1] }
    }

    pub fn as_array(self) -> [f64; 3] {
        [self.a1, self.a2, self.a3]
    }

    pub fn sum(self) -> f64 {
        self.a1 + self.a2 + self.a3
    }

    pub fn max_norm(self) -> f64 {
        self.a1.abs().max(self.a2.abs()).max(self.a3.abs())
    }

    pub fn max_abs_diff(self, other: CrossRatioTriple) -> f64 {
        (self.a1 - other.a1).abs().max((self.a2 - other.a2).abs()).max((self.a3 - other.a3).abs())
    }

    /// Index (0-based) of the coordinate within `tol` of zero, if any.
    pub fn zero_coordinate(self, tol: f64) -> Option<usize> {
        self.as_array().iter().position(|a| a.abs() <= tol)
    }
}

/// A permutation of the four entries of a tuple, acting by
/// `π(q)_i = q_{π[i]}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Permutation4([usize; 4]);

const PAIRINGS: [[(usize, usize); 2]; 3] = [[(0, 1), (2, 3)], [(0, 2), (1, 3)], [(0, 3), (1, 2)]];

impl Permutation4 {
    pub fn new(map: [usize; 4]) -> Result<Self> {
        let mut seen = [false; 4];
        for &i in &map {
            if i >= 4 || seen[i] {
                return Err(Error::InvalidConfig(format!("{map:?} is not a permutation of 0..4")));
            }
            seen[i] = true;
        }
        Ok(Permutation4(map))
    }

    pub fn identity() -> Self {
        Permutation4([0, 1, 2, 3])
    }

    /// Transposition of the 0-based positions `i` and `j`.
    pub fn transposition(i: usize, j: usize) -> Self {
        let mut m = [0, 1, 2, 3];
        m.swap(i, j);
        Permutation4(m)
    }

    pub fn all() -> Vec<Permutation4> {
        let mut out = Vec::with_capacity(24);
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        if let Ok(p) = Permutation4::new([a, b, c, d]) {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    pub fn map(self) -> [usize; 4] {
        self.0
    }

    pub fn apply<T: Copy>(self, q: [T; 4]) -> [T; 4] {
        let m = self.0;
        [q[m[0]], q[m[1]], q[m[2]], q[m[3]]]
    }

    pub fn sign(self) -> i8 {
        let m = self.0;
        let inversions =
            (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).filter(|&(i, j)| m[i] > m[j]).count();
        if inversions % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Image under the cross-ratio homomorphism `S₄ → S₃`: pairing `k` of
    /// the permuted tuple is pairing `σ[k]` of the original one.
    pub fn pairing_image(self) -> [usize; 3] {
        let m = self.0;
        let mut sigma = [0; 3];
        for (k, pairing) in PAIRINGS.iter().enumerate() {
            // one edge determines the pairing
            let (i, j) = pairing[0];
            let (x, y) = (m[i], m[j]);
            sigma[k] = PAIRINGS
                .iter()
                .position(|p| p.iter().any(|&(s, t)| (s, t) == (x, y) || (t, s) == (x, y)))
                .expect("every edge belongs to one pairing");
        }
        sigma
    }
}

/// Applies `π` to a cross-ratio triple through the signed cross-ratio
/// homomorphism: `M(π(q)) = sign(π)·φ(π)·M(q)`.
pub fn permuted_triple(t: CrossRatioTriple, pi: Permutation4) -> CrossRatioTriple {
    let a = t.as_array();
    let sigma = pi.pairing_image();
    let s = f64::from(pi.sign());
    CrossRatioTriple::new(s * a[sigma[0]], s * a[sigma[1]], s * a[sigma[2]])
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, LN_2, PI, SQRT_2};

    fn pt(a: f64) -> CirclePoint {
        CirclePoint::new(a)
    }

    fn chart(s: f64) -> CirclePoint {
        CirclePoint::from_chart(s)
    }

    #[test]
    fn chordal_distances() {
        let m = MoebiusStructure::canonical();
        assert!((m.dist(pt(0.0), pt(PI)) - 2.0).abs() < 1e-15);
        assert!((m.dist(pt(0.0), pt(FRAC_PI_2)) - SQRT_2).abs() < 1e-15);
        assert_eq!(m.dist(pt(1.3), pt(1.3)), 0.0);
        assert_eq!(m.ln_dist(pt(1.3), pt(1.3)), f64::NEG_INFINITY);
    }

    #[test]
    fn inverted_chart_is_stereographic_line() {
        let m = MoebiusStructure::canonical();
        let omega = pt(PI);
        assert!((m.dist_inverted(omega, chart(0.0), chart(1.0)) - 1.0).abs() < 1e-15);
        assert_eq!(m.dist_inverted(omega, chart(3.0), omega), f64::INFINITY);
        assert_eq!(m.dist_inverted(omega, omega, omega), 0.0);
    }

    #[test]
    fn basic_cross_ratio_examples() {
        let m = MoebiusStructure::canonical();
        let inf = f64::INFINITY;
        let t = m.cross_ratio_triple([chart(0.0), chart(1.0), chart(2.0), chart(inf)]).unwrap();
        assert!(t.max_abs_diff(CrossRatioTriple::new(LN_2, 0.0, -LN_2)) < 1e-14);
        let t = m.cross_ratio_triple([chart(1.0), chart(0.0), chart(2.0), chart(inf)]).unwrap();
        assert!(t.max_abs_diff(CrossRatioTriple::new(-LN_2, LN_2, 0.0)) < 1e-14);
        assert_eq!(
            m.cross_ratio_triple([chart(1.0), chart(0.0), chart(1.0), chart(inf)]),
            Err(Error::Degenerate4Tuple)
        );
    }

    #[test]
    fn transposition_matches_direct_recomputation() {
        let t = CrossRatioTriple::new(LN_2, 0.0, -LN_2);
        let swapped = permuted_triple(t, Permutation4::transposition(0, 1));
        assert!(swapped.max_abs_diff(CrossRatioTriple::new(-LN_2, LN_2, 0.0)) < 1e-15);
        assert_eq!(permuted_triple(t, Permutation4::identity()), t);
    }

    #[test]
    fn homomorphism_sign_agrees_with_pairing_sign() {
        for p in Permutation4::all() {
            let s = p.pairing_image();
            let even = matches!(s, [0, 1, 2] | [1, 2, 0] | [2, 0, 1]);
            assert_eq!(p.sign() == 1, even, "{p:?} -> {s:?}");
        }
        assert_eq!(Permutation4::all().len(), 24);
    }

    #[test]
    fn ptolemaic_degenerate_reduction() {
        let m = MoebiusStructure::canonical();
        let (x, y, u) = (pt(0.3), pt(2.0), pt(4.0));
        assert!(m.ptolemaic_residual([x, y, x, u]).abs() < 1e-15);
        assert!(m.ptolemaic_residual([x, x, y, u]) >= 0.0);
    }

    #[test]
    fn power_perturbation_scales_cross_ratios() {
        let m0 = MoebiusStructure::canonical();
        let m = MoebiusStructure::power_perturbed(0.5).unwrap();
        let q = [pt(0.1), pt(1.0), pt(2.5), pt(5.0)];
        let t0 = m0.cross_ratio_triple(q).unwrap();
        let t = m.cross_ratio_triple(q).unwrap();
        for (a, b) in t0.as_array().iter().zip(t.as_array()) {
            assert!((1.5 * a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn tabulated_chordal_reproduces_canonical() {
        let n = 24;
        let values: Vec<Vec<f64>> =
            (0..n).map(|i| (0..n).map(|j| chordal(grid_angle(i, n), grid_angle(j, n))).collect()).collect();
        let m = MoebiusStructure::tabulated(values).unwrap();
        let m0 = MoebiusStructure::canonical();
        for &(a, b) in &[(0.1, 0.2), (1.0, 4.0), (3.3, 0.01)] {
            assert!((m.dist(pt(a), pt(b)) - m0.dist(pt(a), pt(b))).abs() < 1e-14);
        }
        assert_eq!(m.dist(pt(0.7), pt(0.7)), 0.0);
    }

    #[test]
    fn structure_spec_parsing() {
        let s = StructureSpec::from_json(r#"{"kind": "sine-perturbed", "epsilon": 0.05}"#).unwrap();
        assert_eq!(s.kind, StructureKind::SinePerturbed);
        assert!(MoebiusStructure::from_spec(&s).is_ok());
        let s = StructureSpec::from_json(r#"{"kind": "canonical"}"#).unwrap();
        assert_eq!(s.kind, StructureKind::CanonicalChordal);
        assert!(StructureSpec::from_json(r#"{"kind": "hyperbolic"}"#).is_err());
        assert!(MoebiusStructure::sine_perturbed(1.5).is_err());
        assert!(MoebiusStructure::from_spec(&StructureSpec {
            kind: StructureKind::PowerPerturbed,
            epsilon: None,
            table: None
        })
        .is_err());
        assert!(MoebiusStructure::tabulated(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).is_err());
    }
}
