//! Searches for zig-zag shortcuts between two points of a line.

use harmonia::experiment::geodesic_instance;
use harmonia::prelude::*;

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    let mut worst = f64::INFINITY;
    for i in 0..10 {
        let (q, q2) = geodesic_instance(&m, 42, i)?;
        let r = verify_geodesic(&m, q, q2, 2000, i)?;
        println!("pair {i}: |qq′| = {:.6}, best other path {:.6}, sides {}", r.direct, r.found, r.sides);
        worst = worst.min(r.margin);
    }
    println!("smallest margin {worst:.3e}");
    Ok(())
}
