//! Distances are hyperplane counts; medians are computed coordinatewise.

use cubemodel::hyperplane::{distance, median, separating_set};
use cubemodel::model::{ball, bfs_distance, VertexId};

fn main() -> cubemodel::Result<()> {
    let u: VertexId = "ε;0,0,0".parse()?;
    let v: VertexId = "(2,5),(1,0);3,-1,4".parse()?;
    println!("d({u}, {v}) = {}", distance(&u, &v));
    for h in separating_set(&u, &v) {
        println!("  separated by {h}");
    }

    let w: VertexId = "(2,5);0,2,0".parse()?;
    println!("median({u}, {v}, {w}) = {}", median(&u, &v, &w));

    // The symbolic value agrees with breadth-first search inside a ball.
    let b = ball(&u, 4)?;
    let x: VertexId = "(1,0);1,1,0".parse()?;
    println!("symbolic {} vs BFS {}", distance(&u, &x), bfs_distance(&b, &u, &x)?);
    Ok(())
}
