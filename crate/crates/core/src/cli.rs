//! Command-line front end. `run` takes parsed arguments and returns the
//! process exit code: 0 success, 1 verification failure, 2 usage or input
//! error, 3 resource limit.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::contact::{
    ball_contact_graph, build_factored_contact_graph, contact_distance, four_point_delta, hyperplanes_meeting,
    ContactGraph, DistanceResult,
};
use crate::disk::{nd_distance, rewrite_geodesic_traced, MeridianGraph};
use crate::error::{Error, Result};
use crate::export::{ball_dot, ball_json, ball_text, contact_graph_text, json, Format};
use crate::factor::hyperclosure_ball;
use crate::hyperplane::{distance, median, separating_set, HyperplaneId, MeridianId};
use crate::model::{ball_with_limits, Ball, BallLimits, VertexId};
use crate::verify::verify_suite;

#[derive(Debug, Parser)]
#[command(name = "cubemodel", version, about = "Symbolic cube complex for the genus-two handlebody group")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
    /// Ball radius around the centre vertex.
    #[arg(long, global = true, default_value_t = 2)]
    pub radius: u32,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Maximum number of vertices materialised in a ball.
    #[arg(long = "cap", global = true, env = "CUBEMODEL_CAP", default_value_t = 2_000_000)]
    pub vertex_cap: usize,
    #[arg(long = "format", global = true, value_enum, default_value_t = Format::Text)]
    pub output_format: Format,
    /// Write output here instead of stdout.
    #[arg(long = "out", global = true)]
    pub output_path: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Vertices, edges and cells of a ball.
    Ball {
        #[arg(long, default_value = "ε;0,0,0")]
        center: VertexId,
    },
    /// Combinatorial distance between two vertices.
    Dist {
        #[arg(long)]
        from: VertexId,
        #[arg(long)]
        to: VertexId,
    },
    /// Median of three vertices.
    Median { a: VertexId, b: VertexId, c: VertexId },
    /// Hyperplanes separating two vertices, or all hyperplanes meeting the ball.
    Hyperplanes {
        #[arg(long, requires = "to")]
        from: Option<VertexId>,
        #[arg(long, requires = "from")]
        to: Option<VertexId>,
    },
    /// Contact distance between two hyperplanes, or the ball's contact graph.
    Contact {
        #[arg(long, requires = "to")]
        from: Option<HyperplaneId>,
        #[arg(long, requires = "from")]
        to: Option<HyperplaneId>,
        #[arg(long, default_value_t = 1)]
        search_radius: u32,
    },
    /// Factored contact graph of the ball, optionally with its four-point δ.
    Fcontact {
        #[arg(long)]
        delta: bool,
        /// Quadruples to sample for δ; 0 examines all of them.
        #[arg(long, default_value_t = 0)]
        samples: u64,
    },
    /// Distance between two meridians in the disk graph.
    DiskDist {
        #[arg(long)]
        from: MeridianId,
        #[arg(long)]
        to: MeridianId,
        #[arg(long, default_value_t = 1)]
        search_radius: u32,
    },
    /// Rewrite a contact path between embedded meridians into the embedding's image.
    Rewrite {
        #[arg(required = true)]
        path: Vec<HyperplaneId>,
    },
    /// Run a verification suite, or `all`.
    Verify { suite: String },
    /// Export a ball-derived object.
    Export { what: ExportKind },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum ExportKind {
    Ball,
    Contact,
    Fcontact,
    Meridians,
    Closure,
}

struct Output {
    text: String,
    code: i32,
}

impl Output {
    fn ok(text: String) -> Self {
        Output { text, code: 0 }
    }
}

/// Parses `args` (program name first) and runs. Help and version requests
/// exit 0; malformed arguments exit 2.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            let _ = e.print();
            e.exit_code()
        }
    }
}

pub fn run(config: &RunConfig) -> i32 {
    match execute(config) {
        Ok(out) => match emit(config, &out.text) {
            Ok(()) => out.code,
            Err(e) => {
                eprintln!("error: {e}");
                2
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}

pub fn exit_code(e: &Error) -> i32 {
    match e {
        Error::ResourceLimit { .. } | Error::RadiusTooLarge { .. } => 3,
        _ => 2,
    }
}

fn emit(config: &RunConfig, text: &str) -> std::io::Result<()> {
    match &config.output_path {
        Some(path) => std::fs::write(path, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn origin_ball(config: &RunConfig) -> Result<Ball> {
    let limits = BallLimits { vertex_cap: config.vertex_cap, ..BallLimits::default() };
    ball_with_limits(&VertexId::origin(), config.radius, limits)
}

fn render<T: Serialize>(config: &RunConfig, value: &T, text: impl FnOnce() -> String) -> String {
    match config.output_format {
        Format::Json => json(value),
        _ => text(),
    }
}

fn render_graph(config: &RunConfig, g: &ContactGraph) -> String {
    match config.output_format {
        Format::Json => json(g),
        Format::Dot => g.to_dot(),
        Format::Text => contact_graph_text(g),
    }
}

fn distance_text(r: &DistanceResult) -> String {
    let path: Vec<String> = r.path.iter().map(|h| h.to_string()).collect();
    format!(
        "{} ({:?}, certificate {:?}, search radius {})\n{}\n",
        r.value,
        r.status,
        r.certificate,
        r.search_radius,
        path.join(" ")
    )
}

#[derive(Serialize)]
struct DistJson {
    distance: u64,
    separating: Vec<HyperplaneId>,
}

fn execute(config: &RunConfig) -> Result<Output> {
    let lines = |items: Vec<String>| items.into_iter().map(|s| s + "\n").collect::<String>();
    Ok(match &config.command {
        Command::Ball { center } => {
            let limits = BallLimits { vertex_cap: config.vertex_cap, ..BallLimits::default() };
            let b = ball_with_limits(center, config.radius, limits)?;
            Output::ok(match config.output_format {
                Format::Json => ball_json(&b),
                Format::Dot => ball_dot(&b),
                Format::Text => ball_text(&b),
            })
        }
        Command::Dist { from, to } => {
            let value = DistJson { distance: distance(from, to), separating: separating_set(from, to).into_iter().collect() };
            Output::ok(render(config, &value, || format!("{}\n", value.distance)))
        }
        Command::Median { a, b, c } => {
            let m = median(a, b, c);
            Output::ok(render(config, &m, || format!("{m}\n")))
        }
        Command::Hyperplanes { from, to } => {
            let hs: Vec<HyperplaneId> = match (from, to) {
                (Some(u), Some(v)) => separating_set(u, v).into_iter().collect(),
                _ => hyperplanes_meeting(&origin_ball(config)?),
            };
            Output::ok(render(config, &hs, || lines(hs.iter().map(|h| h.to_string()).collect())))
        }
        Command::Contact { from, to, search_radius } => match (from, to) {
            (Some(h1), Some(h2)) => {
                let r = contact_distance(h1, h2, *search_radius)?;
                Output::ok(render(config, &r, || distance_text(&r)))
            }
            _ => Output::ok(render_graph(config, &ball_contact_graph(&origin_ball(config)?))),
        },
        Command::Fcontact { delta, samples } => {
            let g = factored_graph(config)?;
            if *delta {
                let plain = four_point_delta(&g.hyperplane_subgraph(), *samples, config.seed);
                let factored = four_point_delta(&g, *samples, config.seed);
                #[derive(Serialize)]
                struct Deltas {
                    plain: crate::contact::DeltaReport,
                    factored: crate::contact::DeltaReport,
                }
                let d = Deltas { plain, factored };
                Output::ok(render(config, &d, || {
                    format!(
                        "plain delta {} ({} quadruples)\nfactored delta {} ({} quadruples)\n",
                        d.plain.delta, d.plain.quadruples, d.factored.delta, d.factored.quadruples
                    )
                }))
            } else {
                Output::ok(render_graph(config, &g))
            }
        }
        Command::DiskDist { from, to, search_radius } => {
            let r = nd_distance(from, to, *search_radius)?;
            Output::ok(render(config, &r, || distance_text(&r)))
        }
        Command::Rewrite { path } => {
            let r = rewrite_geodesic_traced(path)?;
            Output::ok(render(config, &r, || lines(vec![r.path.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(" ")])))
        }
        Command::Verify { suite } => {
            let report = verify_suite(suite, config.radius, config.seed)?;
            let code = report.exit_code;
            Output { text: render(config, &report, || report.to_text()), code }
        }
        Command::Export { what } => Output::ok(export(config, *what)?),
    })
}

fn factored_graph(config: &RunConfig) -> Result<ContactGraph> {
    let b = origin_ball(config)?;
    let closure = hyperclosure_ball(&b)?;
    let mut g = build_factored_contact_graph(&hyperplanes_meeting(&b).into_iter().collect(), &closure.members);
    g.source_ball = Some((&b).into());
    Ok(g)
}

fn export(config: &RunConfig, what: ExportKind) -> Result<String> {
    let b = origin_ball(config)?;
    Ok(match what {
        ExportKind::Ball => match config.output_format {
            Format::Dot => ball_dot(&b),
            Format::Text => ball_text(&b),
            Format::Json => ball_json(&b),
        },
        ExportKind::Contact => render_graph(config, &ball_contact_graph(&b)),
        ExportKind::Fcontact => render_graph(config, &factored_graph(config)?),
        ExportKind::Meridians => {
            let g = MeridianGraph::of_ball(&b);
            match config.output_format {
                Format::Dot => g.to_dot(),
                Format::Json => json(&g),
                Format::Text => g.vertices.iter().map(|m| format!("{m}\n")).collect(),
            }
        }
        ExportKind::Closure => {
            let c = hyperclosure_ball(&b)?;
            #[derive(Serialize)]
            struct ClosureJson<'a> {
                report: &'a crate::factor::ClosureReport,
                members: Vec<&'a crate::factor::SubcomplexDescriptor>,
            }
            match config.output_format {
                Format::Json => json(&ClosureJson { report: &c.report, members: c.members.iter().collect() }),
                _ => {
                    let mut out = format!("closure of radius {}: {} members in {} rounds\n", b.radius, c.report.total, c.report.rounds);
                    out.extend(c.members.iter().map(|m| format!("{m}\n")));
                    out
                }
            }
        }
    })
}
