//! Computational toolkit for Möbius structures on the circle.
//!
//! The crate models the space of harmonic pairs of a Möbius structure on
//! `S¹`, its lines with their log-ratio distance, zig-zag paths and the
//! pseudometric they induce, and the projections of harmonic pairs to a line.
//! Axiom checkers and randomized verifiers test the geometric claims
//! numerically on concrete structures.
//!
//! ```
//! use harmonia::prelude::*;
//!
//! let m = MoebiusStructure::canonical();
//! let axis = PointPair::from_chart(0.0, f64::INFINITY).unwrap();
//! let q = project_point(&m, CirclePoint::from_chart(2.0), axis).unwrap();
//! let other = q.right().other(CirclePoint::from_chart(2.0)).unwrap();
//! assert!((other.chart() + 2.0).abs() < 1e-12);
//! ```

pub mod axioms;
pub mod bracket;
pub mod circle;
pub mod error;
pub mod experiment;
pub mod harmonic;
pub mod lines;
pub mod moebius;
pub mod projections;
pub mod sampling;
pub mod simplex;
pub mod zigzag;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::axioms::{AxiomId, AxiomReport};
    pub use crate::circle::{
        cyclic_order, pair_separates_pairs, pairs_separate, strong_causal, Arc, CirclePoint, PointPair,
    };
    pub use crate::error::{Error, Result};
    pub use crate::harmonic::{
        conjugate, embed_e, harmonic_residual, involution_j, reflection, HarmonicPair, HmPoint,
    };
    pub use crate::lines::{common_perpendicular, line_coord, line_distance, project_point, Line};
    pub use crate::moebius::{
        permuted_triple, CrossRatioTriple, MoebiusStructure, Permutation4, StructureSpec, Tolerances,
    };
    pub use crate::projections::{
        equal_ratio_projection, midpoint_projection, s_projection, ProjectionResult,
    };
    pub use crate::zigzag::{
        closed_path_check, connect_five, delta_upper, verify_geodesic, DeltaEstimate, DeltaOptions, ZZPath,
    };
}
