//! JSON, DOT and text renderings. All output is deterministic: collections
//! are emitted in their sorted order and JSON is pretty-printed with a
//! trailing newline.

use std::fmt::Write as _;

use serde::Serialize;

use crate::contact::ContactGraph;
use crate::model::{Ball, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Text,
    Json,
    Dot,
}

pub fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serialisable");
    s.push('\n');
    s
}

#[derive(Serialize)]
#[serde(rename_all = "camelCase")]
struct BallJson<'a> {
    center: &'a VertexId,
    radius: u32,
    vertices: &'a [VertexId],
    depths: Vec<u32>,
    edges: &'a [(u32, u32)],
    squares: &'a [[u32; 4]],
    cubes: &'a [[u32; 8]],
}

pub fn ball_json(b: &Ball) -> String {
    json(&BallJson {
        center: &b.center,
        radius: b.radius,
        vertices: b.vertices(),
        depths: (0..b.len() as u32).map(|i| b.depth(i)).collect(),
        edges: b.edge_indices(),
        squares: b.squares(),
        cubes: b.cubes(),
    })
}

pub fn ball_dot(b: &Ball) -> String {
    let mut out = String::from("graph ball {\n");
    for (i, v) in b.vertices().iter().enumerate() {
        let _ = writeln!(out, "  v{i} [label=\"{v}\"];");
    }
    for &(p, q) in b.edge_indices() {
        let _ = writeln!(out, "  v{p} -- v{q};");
    }
    out.push_str("}\n");
    out
}

pub fn ball_text(b: &Ball) -> String {
    let mut out = format!(
        "ball center {} radius {}: {} vertices, {} edges, {} squares, {} cubes\n",
        b.center,
        b.radius,
        b.len(),
        b.edge_indices().len(),
        b.squares().len(),
        b.cubes().len()
    );
    for (i, v) in b.vertices().iter().enumerate() {
        let _ = writeln!(out, "{} {v}", b.depth(i as u32));
    }
    out
}

pub fn contact_graph_text(g: &ContactGraph) -> String {
    let mut out = format!(
        "{:?} contact graph: {} hyperplanes, {} cone vertices, {} edges\n",
        g.provenance,
        g.vertices.len(),
        g.cone_vertices.len(),
        g.edges.len()
    )
    .to_lowercase();
    for &(a, b) in &g.edges {
        let _ = writeln!(out, "{} -- {}", g.label(a), g.label(b));
    }
    out
}
