//! Projections of a line to another: the s-projection family, the midpoint
//! projection and its contraction.

use harmonia::prelude::*;
use harmonia::projections::{contraction_ratio, equal_ratio_projection, s_projection};

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    let q =
        HarmonicPair::new(&m, PointPair::from_chart(1.0, 3.0)?, PointPair::from_chart(2.0, f64::INFINITY)?)?;
    let c = PointPair::from_chart(0.0, f64::INFINITY)?;
    let p = midpoint_projection(&m, q, c)?;
    let d = p.axis();
    println!("pr_c(q) = (c, ({:.12}, {:.12}))", d.first().chart(), d.second().chart());

    for s in [0.25, 1.0, 4.0] {
        let r = s_projection(&m, q, c, s)?;
        println!(
            "s = {s}: axis ({:.6}, {:.6}), residual {:.1e}",
            r.axis().first().chart(),
            r.axis().second().chart(),
            r.residual
        );
    }

    let e = equal_ratio_projection(&m, q, c)?;
    let (x, y) = (e.axis().first().chart(), e.axis().second().chart());
    println!("equal-ratio projection: (c, ({x:.6}, {y:.6})), ratio {:?}", e.ratio);

    let a = q.left();
    let q2 = project_point(&m, CirclePoint::from_chart(1.5), a)?;
    let (after, before) = contraction_ratio(&m, q, q2, c)?;
    println!("|qq′| = {before:.6}, after projection {after:.6}, ratio {:.6}", after / before);
    Ok(())
}
