//! Contact graphs over finite hyperplane sets, factored contact graphs with
//! one cone vertex per parallelism class, distances in the infinite contact
//! graph, and the four-point hyperbolicity diagnostic.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factor::{crossing_signature, crosses, CrossingSignature, SubcomplexDescriptor, Variant};
use crate::hyperplane::{contact_unchecked, dual_hyperplane, meridian_of, HyperplaneId, SwitchHyperplaneId};
use crate::model::{edge_between, Ball, VertexId};
use crate::tree::{Slot, SwitchLabel};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Provenance {
    Plain,
    Factored,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct BallRef {
    pub center: VertexId,
    pub radius: u32,
}

impl From<&Ball> for BallRef {
    fn from(b: &Ball) -> Self {
        BallRef { center: b.center.clone(), radius: b.radius }
    }
}

/// Vertices are numbered hyperplanes first, then cone vertices; edges are
/// sorted pairs `(i, j)` with `i < j`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct ContactGraph {
    pub vertices: Vec<HyperplaneId>,
    pub cone_vertices: Vec<CrossingSignature>,
    pub edges: Vec<(u32, u32)>,
    pub provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub source_ball: Option<BallRef>,
}

impl ContactGraph {
    pub fn order(&self) -> usize {
        self.vertices.len() + self.cone_vertices.len()
    }

    pub fn label(&self, i: u32) -> String {
        let i = i as usize;
        match self.vertices.get(i) {
            Some(h) => h.to_string(),
            None => format!("cone{}", self.cone_vertices[i - self.vertices.len()]),
        }
    }

    pub fn adjacency(&self) -> Vec<Vec<u32>> {
        let mut adj = vec![Vec::new(); self.order()];
        for &(a, b) in &self.edges {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Hyperplane vertices joined by edges in both directions; the plain
    /// graph on hyperplane vertices.
    pub fn hyperplane_subgraph(&self) -> ContactGraph {
        let n = self.vertices.len() as u32;
        ContactGraph {
            vertices: self.vertices.clone(),
            cone_vertices: Vec::new(),
            edges: self.edges.iter().copied().filter(|&(a, b)| a < n && b < n).collect(),
            provenance: Provenance::Plain,
            source_ball: self.source_ball.clone(),
        }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph contact {\n");
        for i in 0..self.order() as u32 {
            let shape = if (i as usize) < self.vertices.len() { "ellipse" } else { "box" };
            let _ = writeln!(out, "  n{i} [label=\"{}\", shape={shape}];", self.label(i));
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -- n{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Hyperplanes dual to some edge of the ball, sorted.
pub fn hyperplanes_meeting(b: &Ball) -> Vec<HyperplaneId> {
    let set: BTreeSet<HyperplaneId> = b
        .edge_indices()
        .iter()
        .map(|&(p, q)| dual_hyperplane(&edge_between(b.vertex(p), b.vertex(q)).expect("ball edge")))
        .collect();
    set.into_iter().collect()
}

pub fn build_contact_graph(hyperplanes: &BTreeSet<HyperplaneId>) -> ContactGraph {
    let vertices: Vec<HyperplaneId> = hyperplanes.iter().cloned().collect();
    let edges = contact_edges(&vertices);
    ContactGraph { vertices, cone_vertices: Vec::new(), edges, provenance: Provenance::Plain, source_ball: None }
}

pub fn ball_contact_graph(b: &Ball) -> ContactGraph {
    let mut g = build_contact_graph(&hyperplanes_meeting(b).into_iter().collect());
    g.source_ball = Some(b.into());
    g
}

fn contact_edges(vertices: &[HyperplaneId]) -> Vec<(u32, u32)> {
    (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            (i + 1..vertices.len())
                .filter(move |&j| contact_unchecked(&vertices[i], &vertices[j]).is_edge())
                .map(move |j| (i as u32, j as u32))
        })
        .collect()
}

/// Whether a descriptor gets a cone vertex: lines, trees and combinatorial
/// hyperplanes.
pub fn is_coned(f: &SubcomplexDescriptor) -> bool {
    matches!(f.variant(), Variant::Line | Variant::Tree | Variant::CombTwist | Variant::CombSwitch)
}

pub fn build_factored_contact_graph(
    hyperplanes: &BTreeSet<HyperplaneId>,
    subcomplexes: &BTreeSet<SubcomplexDescriptor>,
) -> ContactGraph {
    let vertices: Vec<HyperplaneId> = hyperplanes.iter().cloned().collect();
    let mut edges = contact_edges(&vertices);
    let mut classes: BTreeMap<CrossingSignature, &SubcomplexDescriptor> = BTreeMap::new();
    for f in subcomplexes.iter().filter(|f| is_coned(f)) {
        classes.entry(crossing_signature(f)).or_insert(f);
    }
    let n = vertices.len() as u32;
    let cone_edges: Vec<Vec<(u32, u32)>> = classes
        .values()
        .collect::<Vec<_>>()
        .par_iter()
        .enumerate()
        .map(|(c, f)| {
            vertices
                .iter()
                .enumerate()
                .filter(|(_, h)| crosses(f, h))
                .map(|(i, _)| (i as u32, n + c as u32))
                .collect()
        })
        .collect();
    edges.extend(cone_edges.into_iter().flatten());
    edges.sort_unstable();
    ContactGraph {
        vertices,
        cone_vertices: classes.into_keys().collect(),
        edges,
        provenance: Provenance::Factored,
        source_ball: None,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceStatus {
    Exact,
    UpperBound,
}

/// How an exact value was established.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Certificate {
    /// Distance at most two, decided in closed form.
    Symbolic,
    /// A path of length three was found and length two was ruled out.
    Exclusion,
    /// The search value did not change over two further widenings. This is
    /// a heuristic, not a proof.
    Stabilized,
    /// The search ranged over a candidate set known to contain a geodesic.
    Complete,
    None,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DistanceResult {
    pub value: u64,
    pub status: DistanceStatus,
    pub search_radius: u32,
    pub certificate: Certificate,
    /// A path realising `value`, endpoints included.
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub path: Vec<HyperplaneId>,
}

impl DistanceResult {
    fn exact(path: Vec<HyperplaneId>, search_radius: u32, certificate: Certificate) -> Self {
        DistanceResult {
            value: path.len() as u64 - 1,
            status: DistanceStatus::Exact,
            search_radius,
            certificate,
            path,
        }
    }

    pub fn is_exact(&self) -> bool {
        self.status == DistanceStatus::Exact
    }
}

/// Default bound on the candidate set of a single distance search.
pub const CANDIDATE_CAP: usize = 250_000;

/// Distance between two hyperplanes in the contact graph of the whole
/// complex.
///
/// Contact forces supports to meet, and a detour through hyperplanes whose
/// supports miss the tree path between the two endpoint supports can always
/// be replaced by a hyperplane at the point where the detour leaves the
/// path. So candidates are twist hyperplanes over meridians through path
/// nodes and switch hyperplanes at path nodes. Their walls and bridge
/// labels are drawn from a window of `search_radius + 1` around the values
/// occurring at the endpoints and along the path.
pub fn contact_distance(h1: &HyperplaneId, h2: &HyperplaneId, search_radius: u32) -> Result<DistanceResult> {
    contact_distance_capped(h1, h2, search_radius, CANDIDATE_CAP)
}

pub fn contact_distance_capped(
    h1: &HyperplaneId,
    h2: &HyperplaneId,
    search_radius: u32,
    cap: usize,
) -> Result<DistanceResult> {
    if h1 == h2 {
        return Ok(DistanceResult::exact(vec![h1.clone()], search_radius, Certificate::Symbolic));
    }
    if contact_unchecked(h1, h2).is_edge() {
        return Ok(DistanceResult::exact(vec![h1.clone(), h2.clone()], search_radius, Certificate::Symbolic));
    }
    if let Some(mid) = common_neighbor(h1, h2) {
        return Ok(DistanceResult::exact(vec![h1.clone(), mid, h2.clone()], search_radius, Certificate::Symbolic));
    }
    let first = universe_search(h1, h2, search_radius, cap)?;
    if first.len() == 4 {
        return Ok(DistanceResult::exact(first, search_radius, Certificate::Exclusion));
    }
    let wider = universe_search(h1, h2, search_radius + 1, cap)?;
    let widest = universe_search(h1, h2, search_radius + 2, cap)?;
    let stable = first.len() == wider.len() && wider.len() == widest.len();
    let best = [first, wider, widest].into_iter().min_by_key(|p| p.len()).expect("three searches");
    if best.len() == 4 {
        return Ok(DistanceResult::exact(best, search_radius, Certificate::Exclusion));
    }
    Ok(DistanceResult {
        value: best.len() as u64 - 1,
        status: if stable { DistanceStatus::Exact } else { DistanceStatus::UpperBound },
        search_radius,
        certificate: if stable { Certificate::Stabilized } else { Certificate::None },
        path: best,
    })
}

/// Values of the walls and bridge sides attached to a hyperplane.
fn anchor_values(h: &HyperplaneId) -> Vec<i64> {
    match h {
        HyperplaneId::Twist(t) => vec![t.wall, t.wall + 1],
        HyperplaneId::Switch(s) => s.sides().iter().map(|(_, v)| *v).collect(),
    }
}

/// A hyperplane in contact with both, if any. Supports of `h1` and `h2` are
/// assumed disjoint when the search is non-trivial.
pub fn common_neighbor(h1: &HyperplaneId, h2: &HyperplaneId) -> Option<HyperplaneId> {
    let (s1, s2) = (h1.support(), h2.support());
    let ok = |c: &HyperplaneId| {
        c != h1 && c != h2 && contact_unchecked(h1, c).is_edge() && contact_unchecked(c, h2).is_edge()
    };
    let (p1, p2) = match s1.bridge(&s2) {
        Ok(x) => {
            // a slot used by neither hyperplane gives a wall crossing both
            let used = [h1.slot(), h2.slot()];
            return Slot::ALL
                .iter()
                .filter(|s| !used.contains(s))
                .map(|&s| HyperplaneId::twist(meridian_of(&x, s), 0))
                .find(ok);
        }
        Err(pair) => pair,
    };
    let mut walls: BTreeSet<i64> = BTreeSet::new();
    for v in anchor_values(h1).into_iter().chain(anchor_values(h2)) {
        walls.extend([v - 2, v - 1, v, v + 1]);
    }
    let generic = walls.iter().map(|w| w.abs()).max().unwrap_or(0) + 5;
    walls.insert(generic);
    for s in Slot::ALL {
        let m = meridian_of(&p1, s);
        if !m.support().contains(&p2) {
            continue;
        }
        let zero_first = std::iter::once(0).chain(walls.iter().copied().filter(|&w| w != 0));
        if let Some(c) = zero_first.map(|w| HyperplaneId::twist(m.clone(), w)).find(ok) {
            return Some(c);
        }
    }
    if p1.distance(&p2) == 1 {
        let child = if p1.depth() > p2.depth() { p1 } else { p2 };
        let c = HyperplaneId::switch(child);
        if ok(&c) {
            return Some(c);
        }
    }
    None
}

struct Candidate {
    h: HyperplaneId,
    lo: usize,
    hi: usize,
}

fn universe_search(h1: &HyperplaneId, h2: &HyperplaneId, radius: u32, cap: usize) -> Result<Vec<HyperplaneId>> {
    let (p1, p2) = h1.support().bridge(&h2.support()).expect_err("disjoint supports");
    let path = p1.path_to(&p2);

    let mut base: BTreeSet<i64> = [0].into_iter().collect();
    base.extend(anchor_values(h1));
    base.extend(anchor_values(h2));
    for w in path.windows(2) {
        let child = if w[1].depth() > w[0].depth() { &w[1] } else { &w[0] };
        base.insert(child.last().expect("child").dual);
    }
    let spread = i64::from(radius) + 1;
    let values: BTreeSet<i64> = base.iter().flat_map(|&v| (v - spread)..=(v + spread)).collect();

    let interval = |h: &HyperplaneId| -> Option<(usize, usize)> {
        let sup = h.support();
        let hits: Vec<usize> = path.iter().enumerate().filter(|(_, x)| sup.contains(x)).map(|(i, _)| i).collect();
        Some((*hits.first()?, *hits.last()?))
    };

    let mut set: BTreeSet<HyperplaneId> = BTreeSet::new();
    set.insert(h1.clone());
    set.insert(h2.clone());
    for x in &path {
        for s in Slot::ALL {
            let m = meridian_of(x, s);
            for &w in &values {
                set.insert(HyperplaneId::twist(m.clone(), w));
            }
            for &k in &values {
                if let Some(child) = x.child(SwitchLabel::new(s, k)) {
                    set.insert(HyperplaneId::switch(child));
                }
            }
        }
        if !x.is_root() {
            set.insert(HyperplaneId::Switch(SwitchHyperplaneId::new(x.clone())));
        }
        if set.len() > cap {
            return Err(Error::ResourceLimit { what: "contact search candidates", cap });
        }
    }
    let candidates: Vec<Candidate> = set
        .into_iter()
        .filter_map(|h| interval(&h).map(|(lo, hi)| Candidate { h, lo, hi }))
        .collect();
    let index: HashMap<&HyperplaneId, usize> = candidates.iter().enumerate().map(|(i, c)| (&c.h, i)).collect();
    let (src, dst) = (index[h1], index[h2]);

    let mut prev = vec![usize::MAX; candidates.len()];
    prev[src] = src;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        if u == dst {
            break;
        }
        let cu = &candidates[u];
        for (v, cv) in candidates.iter().enumerate() {
            if prev[v] != usize::MAX || cv.hi < cu.lo || cu.hi < cv.lo {
                continue;
            }
            if contact_unchecked(&cu.h, &cv.h).is_edge() {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    if prev[dst] == usize::MAX {
        return Err(Error::ResourceLimit { what: "contact search (no path in candidate set)", cap });
    }
    let mut out = vec![candidates[dst].h.clone()];
    let mut cur = dst;
    while cur != src {
        cur = prev[cur];
        out.push(candidates[cur].h.clone());
    }
    out.reverse();
    Ok(out)
}

/// All-pairs hop distances by BFS from every vertex; `u32::MAX` marks
/// unreachable pairs.
pub fn all_pairs_distances(adj: &[Vec<u32>]) -> Vec<Vec<u32>> {
    (0..adj.len())
        .into_par_iter()
        .map(|s| {
            let mut d = vec![u32::MAX; adj.len()];
            d[s] = 0;
            let mut queue = VecDeque::from([s as u32]);
            while let Some(u) = queue.pop_front() {
                for &v in &adj[u as usize] {
                    if d[v as usize] == u32::MAX {
                        d[v as usize] = d[u as usize] + 1;
                        queue.push_back(v);
                    }
                }
            }
            d
        })
        .collect()
}

/// Vertices of a largest connected component, smallest index first on ties.
pub fn largest_component(adj: &[Vec<u32>]) -> Vec<u32> {
    let mut seen = vec![false; adj.len()];
    let mut best: Vec<u32> = Vec::new();
    for s in 0..adj.len() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut comp = vec![s as u32];
        let mut i = 0;
        while i < comp.len() {
            for &v in &adj[comp[i] as usize] {
                if !seen[v as usize] {
                    seen[v as usize] = true;
                    comp.push(v);
                }
            }
            i += 1;
        }
        if comp.len() > best.len() {
            best = comp;
        }
    }
    best.sort_unstable();
    best
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct DeltaReport {
    /// Twice the largest four-point δ, kept integral for exact comparison.
    pub twice_delta: u32,
    pub delta: f64,
    pub quadruples: u64,
    pub exhaustive: bool,
    pub component_size: usize,
    pub seed: u64,
}

fn four_point(a: u32, b: u32, c: u32) -> u32 {
    let hi = a.max(b).max(c);
    let lo = a.min(b).min(c);
    hi - (a + b + c - hi - lo)
}

/// Gromov four-point δ of the largest component of `g`. With `sample_size`
/// zero every quadruple is examined; otherwise that many quadruples are
/// drawn with a ChaCha generator seeded by `seed`.
pub fn four_point_delta(g: &ContactGraph, sample_size: u64, seed: u64) -> DeltaReport {
    let adj = g.adjacency();
    let comp = largest_component(&adj);
    let local: HashMap<u32, usize> = comp.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let sub: Vec<Vec<u32>> = comp
        .iter()
        .map(|&v| adj[v as usize].iter().map(|u| local[u] as u32).collect())
        .collect();
    let n = comp.len();
    let rows = all_pairs_distances(&sub);
    let d: Vec<u32> = rows.into_iter().flatten().collect();
    let at = |i: usize, j: usize| d[i * n + j];
    let (twice, count, exhaustive) = if sample_size == 0 {
        let (t, c) = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| (x + 1..n).map(move |y| (x, y)))
            .map(|(x, y)| {
                let (rx, ry) = (&d[x * n..(x + 1) * n], &d[y * n..(y + 1) * n]);
                let dxy = rx[y];
                let mut best = 0;
                let mut count = 0u64;
                for z in y + 1..n {
                    let rz = &d[z * n..(z + 1) * n];
                    let (dxz, dyz) = (rx[z], ry[z]);
                    for w in z + 1..n {
                        best = best.max(four_point(dxy + rz[w], dxz + ry[w], rx[w] + dyz));
                    }
                    count += (n - z - 1) as u64;
                }
                (best, count)
            })
            .reduce(|| (0, 0), |a, b| (a.0.max(b.0), a.1 + b.1));
        (t, c, true)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut best = 0;
        if n > 0 {
            for _ in 0..sample_size {
                let q: [usize; 4] = std::array::from_fn(|_| rng.gen_range(0..n));
                let (x, y, z, w) = (q[0], q[1], q[2], q[3]);
                best = best.max(four_point(at(x, y) + at(z, w), at(x, z) + at(y, w), at(x, w) + at(y, z)));
            }
        }
        (best, sample_size, false)
    };
    DeltaReport {
        twice_delta: twice,
        delta: f64::from(twice) / 2.0,
        quadruples: count,
        exhaustive,
        component_size: n,
        seed,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hyperplane::MeridianId;

    fn t(anchor: &str, slot: u8, wall: i64) -> HyperplaneId {
        HyperplaneId::twist(MeridianId { anchor: anchor.parse().unwrap(), slot: Slot::new(slot).unwrap() }, wall)
    }
    fn s(child: &str) -> HyperplaneId {
        HyperplaneId::switch(child.parse().unwrap())
    }

    #[test]
    fn small_graphs() {
        let g = build_contact_graph(&[t("ε", 1, 0), t("ε", 2, 0)].into_iter().collect());
        assert_eq!(g.edges, vec![(0, 1)]);
        let g = build_contact_graph(&[s("(2,5)"), s("(2,6)")].into_iter().collect());
        assert!(g.edges.is_empty());
    }

    #[test]
    fn distances() {
        let h = t("ε", 1, 0);
        let r = contact_distance(&h, &h, 1).unwrap();
        assert_eq!((r.value, r.status), (0, DistanceStatus::Exact));
        assert_eq!(contact_distance(&h, &t("ε", 2, 0), 1).unwrap().value, 1);
        let r = contact_distance(&t("ε", 2, 0), &t("(2,5)", 2, 0), 1).unwrap();
        assert_eq!((r.value, r.status, r.certificate), (2, DistanceStatus::Exact, Certificate::Symbolic));
    }

    #[test]
    fn tree_has_zero_delta() {
        let g = ContactGraph {
            vertices: (0..5).map(|i| t("ε", 1, i)).collect(),
            cone_vertices: Vec::new(),
            edges: vec![(0, 1), (1, 2), (1, 3), (3, 4)],
            provenance: Provenance::Plain,
            source_ball: None,
        };
        assert_eq!(four_point_delta(&g, 0, 0).twice_delta, 0);
    }
}
