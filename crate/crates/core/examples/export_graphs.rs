//! Write a ball, its contact graph and its meridian graph as JSON and DOT
//! into a directory.
//!
//! ```text
//! cargo run --example export_graphs -- /tmp/cubemodel 2
//! ```

use std::fs;
use std::path::PathBuf;

use cubemodel::contact::ball_contact_graph;
use cubemodel::disk::MeridianGraph;
use cubemodel::export::{ball_dot, ball_json, json};
use cubemodel::model::{ball, VertexId};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut args = std::env::args().skip(1);
    let dir = PathBuf::from(args.next().unwrap_or_else(|| "cubemodel-export".to_string()));
    let radius: u32 = args.next().and_then(|a| a.parse().ok()).unwrap_or(2);
    fs::create_dir_all(&dir)?;

    let b = ball(&VertexId::origin(), radius)?;
    let contact = ball_contact_graph(&b);
    let meridians = MeridianGraph::of_ball(&b);
    let files = [
        ("ball.json", ball_json(&b)),
        ("ball.dot", ball_dot(&b)),
        ("contact.json", json(&contact)),
        ("contact.dot", contact.to_dot()),
        ("meridians.json", json(&meridians)),
        ("meridians.dot", meridians.to_dot()),
    ];
    for (name, body) in files {
        fs::write(dir.join(name), body)?;
        println!("wrote {}", dir.join(name).display());
    }
    Ok(())
}
