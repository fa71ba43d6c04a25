//! Statistical checkers for the monotonicity, increment and ptolemaic
//! properties, and for the non-vanishing of cross-ratio triples.
//!
//! Each checker draws `n` configurations from per-index random streams,
//! evaluates a slack that is positive when the property holds, and reports
//! the minimum together with the first few negative samples.

use rayon::prelude::*;
use serde::Serialize;

use crate::circle::{cyclic_order, CirclePoint, PointPair};
use crate::error::{Error, Result};
use crate::harmonic::{conjugate, embed_e, harmonic_residual};
use crate::moebius::{MoebiusStructure, StructureSpec};
use crate::sampling::{point_on_arc, random_point, random_separating, sample_rng};

/// Counterexamples kept per report.
pub const MAX_COUNTEREXAMPLES: usize = 16;
/// Attempts per increment sample before giving up.
pub const SAMPLER_RETRIES: usize = 100;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AxiomId {
    Monotone,
    Nonzero,
    Ptolemaic,
    Increment,
}

impl AxiomId {
    pub fn name(self) -> &'static str {
        match self {
            AxiomId::Monotone => "monotone",
            AxiomId::Nonzero => "nonzero",
            AxiomId::Ptolemaic => "ptolemaic",
            AxiomId::Increment => "increment",
        }
    }
}

/// Which test produced a sample.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SampleKind {
    /// Separating pairs `(x, y)`, `(z, u)`.
    Separating,
    /// Nested intervals `xz ⊂ xy` of `X_u`.
    Nested,
    Random,
    /// A tuple built by an embedding `e_i`.
    Harmonic,
    Increment,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Counterexample {
    pub index: usize,
    pub kind: SampleKind,
    /// Angles of the tuple.
    pub points: Vec<f64>,
    pub slack: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axiom: AxiomId,
    pub structure: StructureSpec,
    pub seed: u64,
    pub attempted: usize,
    pub valid: usize,
    /// Minimum slack over valid samples.
    pub margin: f64,
    /// Minimum of the raw residual where the margin is tolerance-shifted.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub min_residual: Option<f64>,
    pub counterexamples: Vec<Counterexample>,
    /// How the axiom was read, where the statement leaves a choice.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub reading: Option<&'static str>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.valid > 0 && self.margin > 0.0
    }

    /// Slacks of the stored counterexamples recomputed from their points.
    pub fn reevaluate(&self, m: &MoebiusStructure) -> Vec<f64> {
        self.counterexamples
            .iter()
            .map(|c| {
                let p: Vec<CirclePoint> = c.points.iter().map(|&a| CirclePoint::new(a)).collect();
                slack_of(m, self.axiom, c.kind, &p).unwrap_or(f64::NAN)
            })
            .collect()
    }
}

const INCREMENT_READING: &str = "harmonic sub-tuples have separating pairs (1st, 3rd) and (2nd, 4th)";

fn quad(p: &[CirclePoint]) -> [CirclePoint; 4] {
    [p[0], p[1], p[2], p[3]]
}

/// The slack of a stored sample.
fn slack_of(m: &MoebiusStructure, axiom: AxiomId, kind: SampleKind, p: &[CirclePoint]) -> Result<f64> {
    match (axiom, kind) {
        (AxiomId::Monotone, SampleKind::Nested) => Ok(nested_slack(m, quad(p))),
        (AxiomId::Monotone, _) => Ok(monotone_slack(m, quad(p))),
        (AxiomId::Nonzero, _) => Ok(m.cross_ratio_triple(quad(p))?.max_norm()),
        (AxiomId::Ptolemaic, _) => Ok(m.ptolemaic_min_residual(quad(p)) + m.tolerances().cross_ratio),
        (AxiomId::Increment, _) => {
            let q: [CirclePoint; 7] =
                p.try_into().map_err(|_| Error::InvalidConfig("7 points expected".into()))?;
            increment_slack(m, &q)
        }
    }
}

/// `ln(|xy||zu|) − max(ln(|xz||yu|), ln(|xu||yz|))` for `q = (x, y, z, u)`.
pub fn monotone_slack(m: &MoebiusStructure, q: [CirclePoint; 4]) -> f64 {
    let [x, y, z, u] = q;
    let l = |a, b| m.ln_dist(a, b);
    l(x, y) + l(z, u) - (l(x, z) + l(y, u)).max(l(x, u) + l(y, z))
}

/// `ln |xy|_u − ln |xz|_u` in the inversion chart at `u`.
pub fn nested_slack(m: &MoebiusStructure, q: [CirclePoint; 4]) -> f64 {
    let [x, y, z, u] = q;
    m.dist_inverted(u, x, y).ln() - m.dist_inverted(u, x, z).ln()
}

struct Sample {
    kind: SampleKind,
    points: Vec<CirclePoint>,
    slack: f64,
    residual: f64,
}

fn summarize(
    m: &MoebiusStructure,
    axiom: AxiomId,
    seed: u64,
    n: usize,
    samples: Vec<Result<Sample>>,
) -> AxiomReport {
    let mut margin = f64::INFINITY;
    let mut min_residual = f64::INFINITY;
    let mut valid = 0;
    let mut counterexamples = Vec::new();
    for (index, s) in samples.into_iter().enumerate() {
        let Ok(s) = s else { continue };
        if !s.slack.is_finite() {
            continue;
        }
        valid += 1;
        margin = margin.min(s.slack);
        min_residual = min_residual.min(s.residual);
        if s.slack < 0.0 && counterexamples.len() < MAX_COUNTEREXAMPLES {
            counterexamples.push(Counterexample {
                index,
                kind: s.kind,
                points: s.points.iter().map(|p| p.angle()).collect(),
                slack: s.slack,
            });
        }
    }
    AxiomReport {
        axiom,
        structure: m.spec().clone(),
        seed,
        attempted: n,
        valid,
        margin,
        min_residual: (axiom == AxiomId::Ptolemaic).then_some(min_residual),
        counterexamples,
        reading: (axiom == AxiomId::Increment).then_some(INCREMENT_READING),
    }
}

fn run<F>(m: &MoebiusStructure, axiom: AxiomId, n: usize, seed: u64, draw: F) -> Result<AxiomReport>
where
    F: Fn(usize, &mut rand_chacha::ChaCha8Rng) -> Result<Sample> + Sync,
{
    if n == 0 {
        return Err(Error::EmptySampleBudget);
    }
    let samples: Vec<Result<Sample>> =
        (0..n).into_par_iter().map(|i| draw(i, &mut sample_rng(seed, i as u64))).collect();
    if axiom == AxiomId::Increment {
        if let Some(Err(e)) = samples.iter().find(|s| matches!(s, Err(Error::SamplerStarvation(_)))) {
            return Err(e.clone());
        }
    }
    Ok(summarize(m, axiom, seed, n, samples))
}

/// Monotonicity on separating pairs; odd-indexed samples test the nested
/// interval form in the inversion chart at `u`.
pub fn check_monotone(m: &MoebiusStructure, n: usize, seed: u64) -> Result<AxiomReport> {
    run(m, AxiomId::Monotone, n, seed, |i, rng| {
        if i % 2 == 1 {
            // x, z, y in order along X_u away from u
            let mut p = [0; 4].map(|_| random_point(rng));
            p.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
            let [u, x, z, y] = p;
            let q = [x, y, z, u];
            if q.iter().enumerate().any(|(k, a)| q[k + 1..].contains(a)) {
                return Err(Error::Degenerate4Tuple);
            }
            let slack = nested_slack(m, q);
            return Ok(Sample { kind: SampleKind::Nested, points: q.to_vec(), slack, residual: slack });
        }
        let (a, b) = random_separating(rng);
        let q = [a.first(), a.second(), b.first(), b.second()];
        let slack = monotone_slack(m, q);
        Ok(Sample { kind: SampleKind::Separating, points: q.to_vec(), slack, residual: slack })
    })
}

/// `max |aᵢ|` of cross-ratio triples; every fourth sample is a harmonic
/// tuple from an embedding `e_i`, where one coordinate vanishes.
pub fn check_nonzero(m: &MoebiusStructure, n: usize, seed: u64) -> Result<AxiomReport> {
    run(m, AxiomId::Nonzero, n, seed, |i, rng| {
        let t = [0; 3].map(|_| random_point(rng));
        let (kind, q) = if i % 4 == 3 {
            (SampleKind::Harmonic, embed_e(m, 1 + (i / 4) % 3, t)?)
        } else {
            (SampleKind::Random, [t[0], t[1], t[2], random_point(rng)])
        };
        let slack = m.cross_ratio_triple(q)?.max_norm();
        Ok(Sample { kind, points: q.to_vec(), slack, residual: slack })
    })
}

/// Ptolemy's inequality over the three pairings. The canonical structure
/// attains equality on every cyclically ordered tuple, so the margin is the
/// minimal residual shifted by the cross-ratio tolerance; the raw minimum is
/// reported alongside.
pub fn check_ptolemaic(m: &MoebiusStructure, n: usize, seed: u64) -> Result<AxiomReport> {
    let eps = m.tolerances().cross_ratio;
    run(m, AxiomId::Ptolemaic, n, seed, |_, rng| {
        let q = [0; 4].map(|_| random_point(rng));
        let residual = m.ptolemaic_min_residual(q);
        Ok(Sample { kind: SampleKind::Random, points: q.to_vec(), slack: residual + eps, residual })
    })
}

/// A 7-tuple in cyclic order `1234567` with `q₂₄₇ = (x₁,x₃,x₅,x₆)` and
/// `q₁₅₇ = (x₂,x₃,x₄,x₆)` harmonic.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SeventupleSample {
    pub points: [CirclePoint; 7],
    /// Harmonic residuals of `q₂₄₇` and `q₁₅₇`.
    pub residuals: [f64; 2],
}

impl SeventupleSample {
    /// The sub-tuple with the listed entries (1-based) crossed out.
    pub fn cross_out(&self, drop: &[usize]) -> Vec<CirclePoint> {
        (1..=7).filter(|k| !drop.contains(k)).map(|k| self.points[k - 1]).collect()
    }

    fn sub4(&self, drop: [usize; 3]) -> [CirclePoint; 4] {
        quad(&self.cross_out(&drop))
    }

    pub fn q247(&self) -> [CirclePoint; 4] {
        self.sub4([2, 4, 7])
    }

    pub fn q157(&self) -> [CirclePoint; 4] {
        self.sub4([1, 5, 7])
    }

    pub fn q345(&self) -> [CirclePoint; 4] {
        self.sub4([3, 4, 5])
    }

    pub fn q123(&self) -> [CirclePoint; 4] {
        self.sub4([1, 2, 3])
    }
}

/// Whether the points occur counterclockwise in the given order.
fn in_cyclic_order(p: &[CirclePoint]) -> bool {
    let n = p.len();
    (0..n).all(|i| cyclic_order(p[i], p[(i + 1) % n], p[(i + 2) % n]) == 1)
}

fn draw_increment(m: &MoebiusStructure, rng: &mut impl rand::Rng) -> Result<SeventupleSample> {
    let tol = m.tolerances().harmonic;
    for _ in 0..SAMPLER_RETRIES {
        let mut t = [0; 3].map(|_| random_point(rng));
        t.sort_by(|a, b| a.angle().total_cmp(&b.angle()));
        let [x1, x3, x5] = t;
        if x1 == x3 || x3 == x5 {
            continue;
        }
        let x6 = conjugate(m, PointPair::new(x1, x5)?, x3)?;
        let x2 = point_on_arc(rng, crate::circle::Arc::new(x1, x3));
        let x4 = conjugate(m, PointPair::new(x3, x6)?, x2)?;
        let x7 = point_on_arc(rng, crate::circle::Arc::new(x6, x1));
        let points = [x1, x2, x3, x4, x5, x6, x7];
        if !in_cyclic_order(&points) {
            continue;
        }
        let residuals = [
            harmonic_residual(m, PointPair::new(x1, x5)?, PointPair::new(x3, x6)?)?,
            harmonic_residual(m, PointPair::new(x2, x4)?, PointPair::new(x3, x6)?)?,
        ];
        if residuals[0] > tol || residuals[1] > tol {
            continue;
        }
        return Ok(SeventupleSample { points, residuals });
    }
    Err(Error::SamplerStarvation(SAMPLER_RETRIES))
}

/// Draws a 7-tuple for the increment axiom.
pub fn sample_increment_tuple(m: &MoebiusStructure, seed: u64) -> Result<SeventupleSample> {
    draw_increment(m, &mut sample_rng(seed, 0))
}

/// `ln cr₁(q₃₄₅) − ln cr₁(q₁₂₃)`.
pub fn increment_slack(m: &MoebiusStructure, q: &[CirclePoint; 7]) -> Result<f64> {
    let s = SeventupleSample { points: *q, residuals: [0.0; 2] };
    Ok(m.cross_ratio_triple(s.q345())?.a1 - m.cross_ratio_triple(s.q123())?.a1)
}

pub fn check_increment(m: &MoebiusStructure, n: usize, seed: u64) -> Result<AxiomReport> {
    run(m, AxiomId::Increment, n, seed, |_, rng| {
        let s = draw_increment(m, rng)?;
        let slack = increment_slack(m, &s.points)?;
        Ok(Sample {
            kind: SampleKind::Increment,
            points: s.points.to_vec(),
            slack,
            residual: s.residuals[0].max(s.residuals[1]),
        })
    })
}

/// All four checkers with a shared seed.
pub fn check_all(m: &MoebiusStructure, n: usize, seed: u64) -> Result<Vec<AxiomReport>> {
    Ok(vec![
        check_monotone(m, n, seed)?,
        check_increment(m, n, seed)?,
        check_ptolemaic(m, n, seed)?,
        check_nonzero(m, n, seed)?,
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_margins_are_positive() {
        let m = MoebiusStructure::canonical();
        for r in check_all(&m, 1000, 7).unwrap() {
            assert!(r.passed(), "{r:?}");
            assert!(r.counterexamples.is_empty());
        }
    }

    #[test]
    fn empty_budget_is_rejected() {
        let m = MoebiusStructure::canonical();
        assert_eq!(check_monotone(&m, 0, 1).unwrap_err(), Error::EmptySampleBudget);
        assert_eq!(check_increment(&m, 0, 1).unwrap_err(), Error::EmptySampleBudget);
    }

    #[test]
    fn reports_are_deterministic() {
        let m = MoebiusStructure::sine_perturbed(0.05).unwrap();
        let a = serde_json::to_string(&check_nonzero(&m, 1, 3).unwrap()).unwrap();
        let b = serde_json::to_string(&check_nonzero(&m, 1, 3).unwrap()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn increment_sampler_postconditions() {
        let m = MoebiusStructure::canonical();
        for seed in 0..1000 {
            let s = sample_increment_tuple(&m, seed).unwrap();
            assert!(in_cyclic_order(&s.points));
            assert!(s.residuals.iter().all(|&r| r <= 1e-10));
            let q = s.q247();
            assert_eq!(q, [s.points[0], s.points[2], s.points[4], s.points[5]]);
        }
        assert_eq!(sample_increment_tuple(&m, 5).unwrap(), sample_increment_tuple(&m, 5).unwrap());
    }

    #[test]
    fn harmonic_tuples_have_small_but_positive_norm() {
        let m = MoebiusStructure::canonical();
        let r = check_nonzero(&m, 400, 2).unwrap();
        assert!(r.margin > 0.0);
    }

    #[test]
    fn power_structure_fails_ptolemy_reproducibly() {
        let m = MoebiusStructure::power_perturbed(0.5).unwrap();
        let r = check_ptolemaic(&m, 2000, 9).unwrap();
        assert!(r.margin < 0.0);
        assert!(!r.counterexamples.is_empty());
        for s in r.reevaluate(&m) {
            assert!(s < 0.0);
        }
    }
}
