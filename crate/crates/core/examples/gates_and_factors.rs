//! The fourteen factor-system members through a vertex, gates between
//! them, and the gate closure of a ball.

use cubemodel::factor::{
    crossing_signature, gate_chain, gate_subcomplex, gate_vertex, hyperclosure_ball, members_at,
    separating_switch_chain, SubcomplexDescriptor,
};
use cubemodel::model::{ball, VertexId};
use cubemodel::tree::Slot;

fn main() -> cubemodel::Result<()> {
    let v: VertexId = "(2,5);1,0,-1".parse()?;
    let members = members_at(&v);
    println!("{} members through {v}:", members.len());
    for f in &members {
        println!("  {f}");
    }

    let line = &members[members.len() - 4];
    let x: VertexId = "(2,5),(3,2);4,4,4".parse()?;
    println!("gate of {x} onto {line}: {}", gate_vertex(line, &x));

    let far = SubcomplexDescriptor::CombSwitch { node: "(1,5),(2,7)".parse()?, slot: Slot::ONE, value: 0 };
    let near = &members[5];
    let direct = gate_subcomplex(near, &far);
    let chain = separating_switch_chain(near, &far);
    let chained = gate_chain(near, &far, &chain)?;
    println!("gate of {far} onto {near}: {direct}");
    println!("through {} separating bridges: {chained}", chain.len());
    println!("parallel: {}", crossing_signature(&direct) == crossing_signature(&chained));

    for r in 1..=3 {
        let c = hyperclosure_ball(&ball(&VertexId::origin(), r)?)?;
        println!("radius {r}: {} members after {} rounds, {:?}", c.report.total, c.report.rounds, c.report.counts);
    }
    Ok(())
}
