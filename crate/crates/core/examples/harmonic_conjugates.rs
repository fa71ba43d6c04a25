//! Harmonic conjugates, reflections and the pair involution.

use harmonia::harmonic::{conjugate, embed_e, involution_j, reflection};
use harmonia::prelude::*;

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    let a = PointPair::from_chart(0.0, f64::INFINITY)?;
    for z in [0.5, 2.0, -3.0] {
        let u = conjugate(&m, a, CirclePoint::from_chart(z))?;
        println!("conjugate of {z} with respect to (0, ∞): {:.12}", u.chart());
    }

    let b = PointPair::from_chart(-1.0, 1.0)?;
    let x = CirclePoint::from_chart(3.0);
    let y = reflection(&m, b, x)?;
    println!("ρ_(−1,1)(3) = {:.12}, back: {:.12}", y.chart(), reflection(&m, b, y)?.chart());

    let q = HarmonicPair::new(&m, b, PointPair::new(x, y)?)?;
    println!("residual of {q:?}: {:.1e}", q.residual(&m));
    println!("j(q) = {:?}", involution_j(q));

    let t = [f64::INFINITY, -1.0, 1.0].map(CirclePoint::from_chart);
    let e = embed_e(&m, 1, t)?;
    println!("embedding of (∞, −1, 1) at slot 1: {:?}", e.map(|p| p.chart()));

    let sine = MoebiusStructure::sine_perturbed(0.3)?;
    let u = conjugate(&sine, a, CirclePoint::from_chart(2.0))?;
    println!("same conjugate in the sine-perturbed structure: {:.12}", u.chart());
    Ok(())
}
