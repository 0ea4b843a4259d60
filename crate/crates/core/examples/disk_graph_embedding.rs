//! Disk-graph distances, the embedding into the contact graph, rewriting a
//! contact path into the embedding's image, and density witnesses.

use cubemodel::contact::contact_distance;
use cubemodel::disk::{density_witness, iota, nd_adjacent, nd_distance, rewrite_geodesic_traced};
use cubemodel::hyperplane::{HyperplaneId, MeridianId};

fn main() -> cubemodel::Result<()> {
    let mu: MeridianId = "<ε|2>".parse()?;
    for other in ["<ε|1>", "<(2,0)|2>", "<(2,0),(1,0),(2,3)|2>", "<(2,0),(1,4),(2,1),(1,2)|1>"] {
        let nu: MeridianId = other.parse()?;
        let nd = nd_distance(&mu, &nu, 1)?;
        let cd = contact_distance(&HyperplaneId::Twist(iota(&mu)), &HyperplaneId::Twist(iota(&nu)), 1)?;
        println!("{mu} {nu}: adjacent {} disk {} contact {}", nd_adjacent(&mu, &nu)?, nd.value, cd.value);
    }

    let path: Vec<HyperplaneId> = ["T<ε|1>@0", "S[(2,5)]", "T<ε|3>@0"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;
    let r = rewrite_geodesic_traced(&path)?;
    println!("rewritten: {}", r.path.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" "));
    for (i, case) in r.steps {
        println!("  position {i}: {case:?}");
    }

    for h in ["T<ε|1>@7", "S[(2,5)]", "S[(1,3),(3,0)]"] {
        let h: HyperplaneId = h.parse()?;
        println!("witness for {h}: {}", HyperplaneId::Twist(density_witness(&h)));
    }
    Ok(())
}
