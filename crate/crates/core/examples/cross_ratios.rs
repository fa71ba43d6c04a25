//! Cross-ratio triples of a 4-tuple, their permutation rule and chart independence.

use harmonia::moebius::{permuted_triple, Permutation4};
use harmonia::prelude::*;

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    let q = [0.3, 1.4, 2.9, 4.6].map(CirclePoint::new);
    let t = m.cross_ratio_triple(q)?;
    println!("triple {:?}, sum {:.1e}", t.as_array(), t.sum());

    let pi = Permutation4::transposition(0, 1);
    let direct = m.cross_ratio_triple(pi.apply(q))?;
    println!("after swapping x1, x2: {:?}", direct.as_array());
    println!("predicted:             {:?}", permuted_triple(t, pi).as_array());

    let omega = CirclePoint::new(5.5);
    let inverted = m.cross_ratio_triple_in_chart(omega, q)?;
    println!("in the chart at ω = 5.5: {:?}", inverted.as_array());

    let harmonic = [0.0, 1.0, -1.0, f64::INFINITY].map(CirclePoint::from_chart);
    let h = m.cross_ratio_triple(harmonic)?;
    println!("(0, ∞; 1, −1) has a zero coordinate at {:?}", h.zero_coordinate(1e-12));
    Ok(())
}
