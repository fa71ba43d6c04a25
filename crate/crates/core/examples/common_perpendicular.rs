//! Lines, distances along them and the common perpendicular of two axes.

use harmonia::lines::{distance_expressions, Segment};
use harmonia::prelude::*;

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    let a = PointPair::from_chart(0.0, f64::INFINITY)?;
    let b = PointPair::from_chart(1.0, 2.0)?;
    let cp = common_perpendicular(&m, a, b)?;
    println!("perpendicular of (0, ∞) and (1, 2): ({:.12}, {:.12})", cp.first().chart(), cp.second().chart());

    let line = Line::new(a);
    let q = project_point(&m, CirclePoint::from_chart(1.0), a)?;
    let q2 = project_point(&m, CirclePoint::from_chart(5.0), a)?;
    println!("coordinates on h_(0,∞): {:.6}, {:.6}", line_coord(&m, &line, q)?, line_coord(&m, &line, q2)?);
    println!("|qq′| = {:.12}", line_distance(&m, q, q2)?);
    println!("four expressions: {:?}", distance_expressions(&m, a, q.right(), q2.right()));

    let seg = Segment::new(q, q2)?;
    let mid = project_point(&m, CirclePoint::from_chart(2.0), a)?;
    println!("segment length {:.6}, contains (2, −2): {}", seg.length(&m), seg.contains(mid.right()));
    Ok(())
}
