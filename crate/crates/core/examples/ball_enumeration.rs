//! Materialise balls around the origin and count their cells.
//!
//! ```text
//! cargo run --example ball_enumeration -- 3
//! ```

use cubemodel::model::{ball, neighbors, VertexId};

fn main() -> cubemodel::Result<()> {
    let max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(3);
    let origin = VertexId::origin();
    println!("neighbours of {origin}:");
    for n in neighbors(&origin) {
        println!("  {n}");
    }
    println!("{:>6} {:>8} {:>8} {:>8} {:>6}", "radius", "vertices", "edges", "squares", "cubes");
    for r in 0..=max {
        let b = ball(&origin, r)?;
        println!("{r:>6} {:>8} {:>8} {:>8} {:>6}", b.len(), b.edge_indices().len(), b.squares().len(), b.cubes().len());
    }
    Ok(())
}
