//! Classify pairs of hyperplanes and list parallel copies of a
//! combinatorial hyperplane.

use cubemodel::hyperplane::{
    contact, enumerate_parallel_copies, parallel_class, CombinatorialHyperplaneId, HyperplaneId, Side,
};

fn main() -> cubemodel::Result<()> {
    let pairs = [
        ("T<ε|1>@0", "T<ε|2>@0"),
        ("T<ε|1>@0", "T<ε|1>@1"),
        ("S[(2,5)]", "S[(2,6)]"),
        ("S[(2,5)]", "S[(1,0)]"),
        ("T<ε|2>@4", "S[(2,5)]"),
        ("T<ε|1>@0", "S[(2,5)]"),
    ];
    for (a, b) in pairs {
        let (h1, h2): (HyperplaneId, HyperplaneId) = (a.parse()?, b.parse()?);
        println!("{h1:>12} {h2:>12}  {:?}", contact(&h1, &h2)?);
    }

    let c = CombinatorialHyperplaneId::new("S[(2,5)]".parse()?, Side::Minus);
    println!("class of {c}: {:?}", parallel_class(&c));
    for copy in enumerate_parallel_copies(&c, 6) {
        println!("  {copy}");
    }
    Ok(())
}
