//! Side slacks of closed zig-zag paths.

use harmonia::experiment::closed_path_instance;
use harmonia::prelude::*;
use harmonia::zigzag::closed_path_check;

fn main() -> Result<()> {
    let m = MoebiusStructure::canonical();
    for i in 0..6 {
        let (kind, path) = closed_path_instance(&m, 5, i)?;
        let r = closed_path_check(&m, &path)?;
        let lens: Vec<String> = path.side_lengths().iter().map(|l| format!("{l:.3}")).collect();
        println!("{kind:<8} sides [{}], min slack {:.4}", lens.join(", "), r.min_slack);
    }
    Ok(())
}
