//! Contact graphs of a ball, distances in the full contact graph, and the
//! four-point δ of the plain and factored graphs.

use cubemodel::contact::{ball_contact_graph, build_factored_contact_graph, contact_distance, four_point_delta};
use cubemodel::factor::hyperclosure_ball;
use cubemodel::hyperplane::HyperplaneId;
use cubemodel::model::{ball, VertexId};

fn main() -> cubemodel::Result<()> {
    let radius: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    let b = ball(&VertexId::origin(), radius)?;
    let plain = ball_contact_graph(&b);
    let closure = hyperclosure_ball(&b)?;
    let factored = build_factored_contact_graph(&plain.vertices.iter().cloned().collect(), &closure.members);
    println!("plain: {} vertices, {} edges", plain.order(), plain.edges.len());
    println!("factored: {} vertices ({} cones), {} edges", factored.order(), factored.cone_vertices.len(), factored.edges.len());

    let p = four_point_delta(&plain, 0, 0);
    let f = four_point_delta(&factored, 0, 0);
    println!("delta plain {} over {} quadruples, factored {} over {}", p.delta, p.quadruples, f.delta, f.quadruples);

    let h1: HyperplaneId = "T<ε|2>@0".parse()?;
    for target in ["T<(2,5)|2>@0", "T<(2,5),(1,3)|1>@0", "S[(2,5),(1,3),(2,1)]"] {
        let h2: HyperplaneId = target.parse()?;
        let r = contact_distance(&h1, &h2, 1)?;
        let path: Vec<String> = r.path.iter().map(|h| h.to_string()).collect();
        println!("{h1} -> {h2}: {} {:?} via {}", r.value, r.certificate, path.join(" "));
    }
    Ok(())
}
