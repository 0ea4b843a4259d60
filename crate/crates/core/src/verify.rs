//! Verification suites. Each suite materialises balls, runs the symbolic
//! operations and compares them with brute-force oracles or with proven
//! properties of the model, producing a report of named checks.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::contact::{
    all_pairs_distances, ball_contact_graph, build_factored_contact_graph, contact_distance, four_point_delta,
    hyperplanes_meeting, largest_component, DeltaReport,
};
use crate::disk::{density_witness, in_iota_image, iota, nd_distance, rewrite_geodesic, MeridianGraph};
use crate::error::{Error, Result};
use crate::factor::{
    contains, crossing_signature, crosses, gate_chain, gate_subcomplex, gate_vertex, hyperclosure_ball, members_at,
    separating_switch_chain, SubcomplexDescriptor,
};
use crate::hyperplane::{
    contact, distance, enumerate_parallel_copies, median, parallel_class, separating_set, Contact, HyperplaneId,
};
use crate::model::{ball, edge_between, neighbors, Ball, EdgeKind, VertexId};
use crate::oracle::{four_cycles, BallHyperplanes};
use crate::tree::Slot;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Degree,
    Metric,
    ContactEdges,
    Multiplicity,
    Hyperclosure,
    Gates,
    Parallelism,
    Iota,
    Density,
    Quasitree,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Degree,
        Suite::Metric,
        Suite::ContactEdges,
        Suite::Multiplicity,
        Suite::Hyperclosure,
        Suite::Gates,
        Suite::Parallelism,
        Suite::Iota,
        Suite::Density,
        Suite::Quasitree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Degree => "degree",
            Suite::Metric => "metric",
            Suite::ContactEdges => "contact-edges",
            Suite::Multiplicity => "multiplicity",
            Suite::Hyperclosure => "hyperclosure",
            Suite::Gates => "gates",
            Suite::Parallelism => "parallelism",
            Suite::Iota => "iota",
            Suite::Density => "density",
            Suite::Quasitree => "quasitree",
        }
    }

    fn stream(self) -> u64 {
        Suite::ALL.iter().position(|&s| s == self).expect("listed") as u64
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL.into_iter().find(|x| x.name() == s).ok_or_else(|| Error::UnknownSuite(s.to_string()))
    }
}

/// What a check's expectation rests on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Basis {
    /// A proven property of the complex.
    Theorem,
    /// Agreement with a brute-force computation on a finite ball.
    Oracle,
    /// A value measured once and locked in.
    Regression,
    /// Holds by construction or convention.
    Definition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub suite: Suite,
    pub name: String,
    pub status: Status,
    pub measured: String,
    pub expected: String,
    pub basis: Basis,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct VerificationReport {
    pub suite: String,
    pub radius: u32,
    pub seed: u64,
    pub generator: String,
    pub checks: Vec<Check>,
    pub exit_code: i32,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("suite {} radius {} seed {} ({})\n", self.suite, self.radius, self.seed, self.generator);
        for c in &self.checks {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!(
                "{status} {}/{}: measured {} expected {} [{:?}]\n",
                c.suite, c.name, c.measured, c.expected, c.basis
            ));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("{} checks, {} failed\n", self.checks.len(), failed));
        out
    }
}

/// Depth up to which a radius-`r` ball decides contact exactly: the two
/// carriers' meeting point is within the sum of the two hyperplane depths.
pub fn contact_certified_depth(radius: u32) -> u32 {
    radius / 2
}

/// Twice the four-point δ measured on the radius-`r` ball's plain and
/// factored contact graphs.
pub fn locked_delta(radius: u32) -> Option<(u32, u32)> {
    match radius {
        0 => Some((0, 0)),
        1 => Some((0, 1)),
        2 => Some((2, 2)),
        3 => Some((2, 2)),
        _ => None,
    }
}

struct Recorder {
    suite: Suite,
    checks: Vec<Check>,
}

impl Recorder {
    fn check(&mut self, name: &str, ok: bool, measured: impl ToString, expected: impl ToString, basis: Basis) {
        self.checks.push(Check {
            suite: self.suite,
            name: name.to_string(),
            status: if ok { Status::Pass } else { Status::Fail },
            measured: measured.to_string(),
            expected: expected.to_string(),
            basis,
        });
    }

    fn count(&mut self, name: &str, failures: usize, total: usize, basis: Basis) {
        self.check(name, failures == 0, format!("{failures}/{total} failures"), "0 failures", basis);
    }
}

pub fn verify_all(radius: u32, seed: u64) -> Result<VerificationReport> {
    let mut checks = Vec::new();
    for s in Suite::ALL {
        checks.extend(run_suite(s, radius, seed)?);
    }
    Ok(report("all", radius, seed, checks))
}

pub fn verify_suite(name: &str, radius: u32, seed: u64) -> Result<VerificationReport> {
    if name == "all" {
        return verify_all(radius, seed);
    }
    let suite: Suite = name.parse()?;
    Ok(report(suite.name(), radius, seed, run_suite(suite, radius, seed)?))
}

fn report(suite: &str, radius: u32, seed: u64, checks: Vec<Check>) -> VerificationReport {
    let exit_code = if checks.iter().all(|c| c.status == Status::Pass) { 0 } else { 1 };
    VerificationReport { suite: suite.to_string(), radius, seed, generator: "ChaCha8Rng".to_string(), checks, exit_code }
}

pub fn run_suite(suite: Suite, radius: u32, seed: u64) -> Result<Vec<Check>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(suite.stream());
    let mut r = Recorder { suite, checks: Vec::new() };
    match suite {
        Suite::Degree => degree(&mut r, radius)?,
        Suite::Metric => metric(&mut r, radius, &mut rng)?,
        Suite::ContactEdges => contact_edges(&mut r, radius)?,
        Suite::Multiplicity => multiplicity(&mut r, radius)?,
        Suite::Hyperclosure => hyperclosure(&mut r, radius)?,
        Suite::Gates => gates(&mut r, radius, &mut rng)?,
        Suite::Parallelism => parallelism(&mut r, radius)?,
        Suite::Iota => iota_suite(&mut r, radius)?,
        Suite::Density => density(&mut r, radius)?,
        Suite::Quasitree => quasitree(&mut r, radius)?,
    }
    Ok(r.checks)
}

fn origin_ball(radius: u32) -> Result<Ball> {
    ball(&VertexId::origin(), radius)
}

fn degree(r: &mut Recorder, radius: u32) -> Result<()> {
    let b = origin_ball(radius)?;
    let mut bad = 0;
    for v in b.vertices() {
        let ns = neighbors(v);
        let distinct: BTreeSet<&VertexId> = ns.iter().collect();
        if distinct.len() != 9 || ns.iter().any(|n| !neighbors(n).contains(v)) {
            bad += 1;
        }
    }
    r.count("nine distinct symmetric neighbours", bad, b.len(), Basis::Theorem);
    let interior: Vec<u32> = (0..b.len() as u32).filter(|&i| b.depth(i) < radius).collect();
    let bad = interior.iter().filter(|&&i| b.adjacency(i).len() != 9).count();
    r.count("interior ball degree 9", bad, interior.len(), Basis::Oracle);

    let cycles = four_cycles(&b);
    let mut bad = 0;
    for c in &cycles {
        let e1 = edge_between(b.vertex(c.a), b.vertex(c.x)).expect("edge");
        let e2 = edge_between(b.vertex(c.a), b.vertex(c.y)).expect("edge");
        if (e1.kind == EdgeKind::Switch && e2.kind == EdgeKind::Switch)
            || (e1.slot == e2.slot && (e1.kind == EdgeKind::Switch || e2.kind == EdgeKind::Switch))
        {
            bad += 1;
        }
    }
    r.count("no switch-switch or same-slot switch-twist squares", bad, cycles.len(), Basis::Theorem);
    r.check(
        "4-cycles are exactly the detected squares",
        cycles.len() == b.squares().len(),
        cycles.len(),
        b.squares().len(),
        Basis::Oracle,
    );
    Ok(())
}

fn metric(r: &mut Recorder, radius: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    let b = origin_ball(radius)?;
    let (mut pairs, mut bad) = (0, 0);
    for i in 0..b.len() as u32 {
        let dist = b.distances_from(i);
        for j in i + 1..b.len() as u32 {
            if b.depth(i) + b.depth(j) > radius {
                continue;
            }
            pairs += 1;
            let (u, v) = (b.vertex(i), b.vertex(j));
            let sep = separating_set(u, v).len() as u64;
            if sep != u64::from(dist[j as usize]) || distance(u, v) != sep {
                bad += 1;
            }
        }
    }
    r.count("hyperplane count equals BFS distance (all certified pairs)", bad, pairs, Basis::Oracle);

    let big = origin_ball(radius + 1)?;
    let certified: Vec<u32> = (0..big.len() as u32).collect();
    let (mut sampled, mut bad) = (0, 0);
    let mut cache: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    while sampled < 10_000 {
        let i = *certified.choose(rng).expect("nonempty");
        let j = *certified.choose(rng).expect("nonempty");
        if big.depth(i) + big.depth(j) > radius + 1 {
            continue;
        }
        sampled += 1;
        let dist = cache.entry(i).or_insert_with(|| big.distances_from(i));
        if separating_set(big.vertex(i), big.vertex(j)).len() as u64 != u64::from(dist[j as usize]) {
            bad += 1;
        }
    }
    r.count(&format!("hyperplane count equals BFS distance (10000 sampled at radius {})", radius + 1), bad, sampled, Basis::Oracle);

    let verts = b.vertices();
    let mut bad = 0;
    for _ in 0..2_000 {
        let (u, v, w) = (verts.choose(rng).unwrap(), verts.choose(rng).unwrap(), verts.choose(rng).unwrap());
        let m = median(u, v, w);
        let on = |a: &VertexId, c: &VertexId| distance(a, &m) + distance(&m, c) == distance(a, c);
        if !(on(u, v) && on(v, w) && on(u, w)) {
            bad += 1;
        }
    }
    r.count("median lies on geodesics between each pair (2000 sampled)", bad, 2_000, Basis::Theorem);
    Ok(())
}

fn contact_edges(r: &mut Recorder, radius: u32) -> Result<()> {
    let b = origin_ball(radius)?;
    let bh = BallHyperplanes::new(&b);
    let depth = contact_certified_depth(radius);
    let inner = bh.interior(&b, depth);
    let (mut bad, mut pairs) = (0, 0);
    for (i, h1) in inner.iter().enumerate() {
        for h2 in &inner[i + 1..] {
            pairs += 1;
            let oracle = if bh.crosses(h1, h2) {
                Contact::Cross
            } else if bh.carriers_meet(h1, h2) {
                Contact::Osculate
            } else {
                Contact::None
            };
            if contact(h1, h2)? != oracle {
                bad += 1;
            }
        }
    }
    r.count(&format!("contact matches carrier oracle (hyperplanes within depth {depth})"), bad, pairs, Basis::Oracle);

    let all: Vec<&HyperplaneId> = bh.edges.keys().collect();
    let (mut bad, mut pairs) = (0, 0);
    for (i, h1) in all.iter().enumerate() {
        for h2 in &all[i + 1..] {
            pairs += 1;
            let sym = contact(h1, h2)?;
            if (bh.crosses(h1, h2) && sym != Contact::Cross) || (bh.carriers_meet(h1, h2) && !sym.is_edge()) {
                bad += 1;
            }
        }
    }
    r.count("every contact seen in the ball is predicted", bad, pairs, Basis::Oracle);

    let g = ball_contact_graph(&b);
    let comp = largest_component(&g.adjacency());
    r.check("ball contact graph connected", comp.len() == g.vertices.len(), comp.len(), g.vertices.len(), Basis::Theorem);
    Ok(())
}

fn multiplicity(r: &mut Recorder, radius: u32) -> Result<()> {
    let b = origin_ball(radius)?;
    let mut bad = 0;
    for v in b.vertices() {
        let m = members_at(v);
        let distinct: BTreeSet<&SubcomplexDescriptor> = m.iter().collect();
        if m.len() != 14 || distinct.len() != 14 || m.iter().any(|f| !contains(f, v) || f.validate().is_err()) {
            bad += 1;
        }
    }
    r.count("fourteen distinct members through every vertex", bad, b.len(), Basis::Theorem);

    let small = origin_ball(radius.min(3))?;
    let closure = hyperclosure_ball(&small)?;
    let mut bad = 0;
    for v in small.vertices() {
        if closure.members.iter().filter(|f| contains(f, v)).count() != 14 {
            bad += 1;
        }
    }
    r.count(
        &format!("closure members through each vertex number 14 (radius {})", small.radius),
        bad,
        small.len(),
        Basis::Oracle,
    );
    Ok(())
}

fn hyperclosure(r: &mut Recorder, radius: u32) -> Result<()> {
    let radii: BTreeSet<u32> = [radius.min(2), radius].into_iter().collect();
    for rad in radii {
        let b = origin_ball(rad)?;
        let c = hyperclosure_ball(&b)?;
        r.check(&format!("radius {rad}: stabilises within 3 rounds"), c.report.rounds <= 3, c.report.rounds, "<= 3", Basis::Theorem);
        let invalid = c.members.iter().filter(|f| f.validate().is_err()).count();
        r.count(&format!("radius {rad}: members are valid descriptors of the six kinds"), invalid, c.members.len(), Basis::Theorem);
        let through: BTreeSet<SubcomplexDescriptor> = b.vertices().iter().flat_map(members_at).collect();
        r.check(
            &format!("radius {rad}: closure equals the members through ball vertices"),
            through == c.members,
            c.members.len(),
            through.len(),
            Basis::Oracle,
        );
        let counts: Vec<String> = c.report.counts.iter().map(|(k, v)| format!("{k:?}={v}")).collect();
        r.check(&format!("radius {rad}: variant counts"), true, counts.join(","), "recorded", Basis::Definition);
    }
    Ok(())
}

/// Brute-force crossing set: hyperplanes among `hs` with a dual edge of the
/// working ball inside `f`.
fn oracle_crossing(bh: &BallHyperplanes, b: &Ball, hs: &[HyperplaneId], f: &SubcomplexDescriptor) -> BTreeSet<HyperplaneId> {
    hs.iter()
        .filter(|h| bh.edges[*h].iter().any(|&(p, q)| contains(f, b.vertex(p)) && contains(f, b.vertex(q))))
        .cloned()
        .collect()
}

fn gates(r: &mut Recorder, radius: u32, rng: &mut ChaCha8Rng) -> Result<()> {
    // Descriptors through vertices within `near` of the centre are gated onto
    // each other; gate images then lie within 3·near, and an edge dual to a
    // hyperplane within depth 1 that crosses a descriptor has a copy inside it
    // within 3·near + 2, the working radius.
    let near = (radius / 3).max(1);
    let work = origin_ball(3 * near + 2)?;
    let bh = BallHyperplanes::new(&work);
    let hs = bh.interior(&work, 1);
    let nearby: Vec<&VertexId> = work.vertices().iter().filter(|v| distance(&work.center, v) <= u64::from(near)).collect();
    let pool: Vec<SubcomplexDescriptor> = nearby
        .iter()
        .flat_map(|v| members_at(v))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let (mut bad_cross, mut bad_oracle, mut bad_inter, mut bad_vertex, mut intersecting) = (0, 0, 0, 0, 0);
    for _ in 0..1_000 {
        let f1 = pool.choose(rng).expect("pool");
        let f2 = pool.choose(rng).expect("pool");
        let g = gate_subcomplex(f1, f2);
        if hs.iter().any(|h| crosses(&g, h) != (crosses(f1, h) && crosses(f2, h))) {
            bad_cross += 1;
        }
        let (o1, o2, og) = (
            oracle_crossing(&bh, &work, &hs, f1),
            oracle_crossing(&bh, &work, &hs, f2),
            oracle_crossing(&bh, &work, &hs, &g),
        );
        if og != o1.intersection(&o2).cloned().collect() {
            bad_oracle += 1;
        }
        let common: BTreeSet<&VertexId> =
            work.vertices().iter().filter(|v| contains(f1, v) && contains(f2, v)).collect();
        if !common.is_empty() {
            intersecting += 1;
            let in_g: BTreeSet<&VertexId> = work.vertices().iter().filter(|v| contains(&g, v)).collect();
            if g != gate_subcomplex(f2, f1) || in_g != common {
                bad_inter += 1;
            }
        }
        for y in nearby.iter().filter(|y| contains(f2, y)) {
            let nearest = work
                .vertices()
                .iter()
                .filter(|z| contains(f1, z))
                .map(|z| (distance(y, z), z))
                .min()
                .map(|(_, z)| z.clone());
            if nearest.as_ref() != Some(&gate_vertex(f1, y)) || !contains(&g, &gate_vertex(f1, y)) {
                bad_vertex += 1;
                break;
            }
        }
    }
    r.count("gate image crossed by exactly the common hyperplanes (1000 pairs)", bad_cross, 1_000, Basis::Theorem);
    r.count("gate image crossing set matches ball oracle (1000 pairs)", bad_oracle, 1_000, Basis::Oracle);
    r.count("intersecting pairs gate to their intersection", bad_inter, intersecting, Basis::Theorem);
    r.count("gate of a vertex is its unique nearest point and lies in the gate image", bad_vertex, 1_000, Basis::Oracle);

    let closure = hyperclosure_ball(&origin_ball(radius)?)?;
    let members: Vec<&SubcomplexDescriptor> = closure.members.iter().collect();
    let (mut found, mut bad, mut tries) = (0, 0, 0);
    while found < 200 && tries < 200_000 {
        tries += 1;
        let f1 = members[rng.gen_range(0..members.len())];
        let f2 = members[rng.gen_range(0..members.len())];
        let chain = separating_switch_chain(f1, f2);
        if chain.is_empty() {
            continue;
        }
        found += 1;
        match gate_chain(f1, f2, &chain) {
            Ok(g) if crossing_signature(&g) == crossing_signature(&gate_subcomplex(f1, f2)) => {}
            _ => bad += 1,
        }
    }
    r.check("separated configurations found", found == 200, found, 200, Basis::Definition);
    r.count("gate through a separating chain is parallel to the direct gate", bad, found, Basis::Theorem);
    Ok(())
}

fn parallelism(r: &mut Recorder, radius: u32) -> Result<()> {
    // Combinatorial hyperplanes through vertices within `inner`, compared on
    // hyperplanes dual to edges within depth 2: an edge inside the subcomplex
    // dual to such a hyperplane exists within inner + 4 when one exists at all.
    let inner = contact_certified_depth(radius);
    let work = origin_ball(inner + 4)?;
    let bh = BallHyperplanes::new(&work);
    let hs = bh.interior(&work, 2);
    let mut combs = BTreeSet::new();
    for v in work.vertices().iter().filter(|v| distance(&work.center, v) <= u64::from(inner)) {
        for s in Slot::ALL {
            combs.insert(SubcomplexDescriptor::CombTwist { meridian: crate::hyperplane::meridian_of(&v.node, s), value: v.coord(s) });
            combs.insert(SubcomplexDescriptor::CombSwitch { node: v.node.clone(), slot: s, value: v.coord(s) });
        }
    }
    let combs: Vec<SubcomplexDescriptor> = combs.into_iter().collect();
    let oracle: Vec<BTreeSet<HyperplaneId>> = combs.iter().map(|f| oracle_crossing(&bh, &work, &hs, f)).collect();
    let classes: Vec<_> = combs.iter().map(|f| parallel_class(&f.as_combinatorial().expect("combinatorial"))).collect();
    let sigs: Vec<_> = combs.iter().map(crossing_signature).collect();
    let (mut bad, mut bad_sig, mut pairs) = (0, 0, 0);
    for i in 0..combs.len() {
        for j in i + 1..combs.len() {
            pairs += 1;
            if (oracle[i] == oracle[j]) != (classes[i] == classes[j]) {
                bad += 1;
            }
            if (sigs[i] == sigs[j]) != (classes[i] == classes[j]) {
                bad_sig += 1;
            }
        }
    }
    r.count(
        &format!("parallel classes equal crossing-set classes ({} combinatorial hyperplanes)", combs.len()),
        bad,
        pairs,
        Basis::Oracle,
    );
    r.count("parallel classes agree with crossing signatures", bad_sig, pairs, Basis::Theorem);

    let mut bad = 0;
    let mut fewest = usize::MAX;
    for f in &combs {
        let c = f.as_combinatorial().expect("combinatorial");
        let copies = enumerate_parallel_copies(&c, 25);
        let distinct: BTreeSet<_> = copies.iter().collect();
        fewest = fewest.min(distinct.len());
        let class = parallel_class(&c);
        let sig = crossing_signature(f);
        if copies.iter().any(|k| {
            parallel_class(k) != class || crossing_signature(&SubcomplexDescriptor::from_combinatorial(k)) != sig
        }) {
            bad += 1;
        }
    }
    r.check("distinct parallel copies per class", fewest >= 25, fewest, ">= 25", Basis::Theorem);
    r.count("enumerated copies are pairwise parallel", bad, combs.len(), Basis::Theorem);
    Ok(())
}

fn iota_suite(r: &mut Recorder, radius: u32) -> Result<()> {
    let big = origin_ball(radius + 1)?;
    let mg = MeridianGraph::of_ball(&big);
    let ms = &mg.vertices;
    let mut bad = 0;
    for &(a, b) in &mg.edges {
        let (ha, hb) = (HyperplaneId::Twist(iota(&ms[a as usize])), HyperplaneId::Twist(iota(&ms[b as usize])));
        if contact(&ha, &hb)? != Contact::Cross {
            bad += 1;
        }
    }
    r.count("adjacent meridians map to crossing hyperplanes", bad, mg.edges.len(), Basis::Theorem);
    let images: BTreeSet<_> = ms.iter().map(iota).collect();
    r.check("embedding is injective", images.len() == ms.len(), images.len(), ms.len(), Basis::Definition);

    let (mut pairs, mut bad) = (0, 0);
    for i in 0..ms.len() {
        for j in i + 1..ms.len() {
            let nd = nd_distance(&ms[i], &ms[j], 1)?;
            if nd.value > 3 {
                continue;
            }
            pairs += 1;
            let c = contact_distance(&HyperplaneId::Twist(iota(&ms[i])), &HyperplaneId::Twist(iota(&ms[j])), 1)?;
            if !c.is_exact() || c.value != nd.value {
                bad += 1;
            }
        }
    }
    r.count(
        &format!("contact distance equals disk distance (pairs at distance <= 3, radius {})", radius + 1),
        bad,
        pairs,
        Basis::Theorem,
    );

    let b = origin_ball(radius)?;
    let g = ball_contact_graph(&b);
    let adj = g.adjacency();
    let d = all_pairs_distances(&adj);
    let n = g.vertices.len();
    let (mut total, mut bad, mut through_switch) = (0, 0, 0);
    for s in (0..n).filter(|&s| in_iota_image(&g.vertices[s])) {
        for t in (0..n).filter(|&t| t != s && in_iota_image(&g.vertices[t])) {
            let len = d[s][t];
            if !(2..=4).contains(&len) {
                continue;
            }
            let exact = contact_distance(&g.vertices[s], &g.vertices[t], 1)?;
            if !exact.is_exact() || exact.value != u64::from(len) {
                continue;
            }
            let mut stack = vec![vec![s]];
            while let Some(p) = stack.pop() {
                let u = *p.last().expect("nonempty");
                if u == t {
                    total += 1;
                    let path: Vec<HyperplaneId> = p.iter().map(|&i| g.vertices[i].clone()).collect();
                    if path.iter().any(|h| !h.is_twist()) {
                        through_switch += 1;
                    }
                    let ok = match rewrite_geodesic(&path) {
                        Ok(out) => {
                            out.len() == path.len()
                                && out[0] == path[0]
                                && out.last() == path.last()
                                && out.iter().all(in_iota_image)
                                && out.windows(2).all(|w| w[0] != w[1] && contact(&w[0], &w[1]).map(|c| c.is_edge()).unwrap_or(false))
                        }
                        Err(_) => false,
                    };
                    if !ok {
                        bad += 1;
                    }
                    continue;
                }
                for &v in &adj[u] {
                    let v = v as usize;
                    if d[s][v] == d[s][u] + 1 && d[s][v] + d[v][t] == len {
                        let mut q = p.clone();
                        q.push(v);
                        stack.push(q);
                    }
                }
            }
        }
    }
    r.count(
        &format!("rewriting certified geodesics of length 2..4 ({through_switch} through switch hyperplanes)"),
        bad,
        total,
        Basis::Theorem,
    );
    Ok(())
}

fn density(r: &mut Recorder, radius: u32) -> Result<()> {
    let b = origin_ball(radius)?;
    let hs = hyperplanes_meeting(&b);
    let mut bad = 0;
    for h in &hs {
        let w = HyperplaneId::Twist(density_witness(h));
        if !in_iota_image(&w) || (&w != h && !contact(h, &w)?.is_edge()) {
            bad += 1;
        }
    }
    r.count("every hyperplane within contact distance 1 of the embedded disk graph", bad, hs.len(), Basis::Theorem);
    Ok(())
}

/// Vertex count above which quadruples are sampled rather than enumerated.
pub const EXHAUSTIVE_DELTA_LIMIT: usize = 600;

pub fn ball_deltas(radius: u32) -> Result<(DeltaReport, DeltaReport)> {
    let b = origin_ball(radius)?;
    let plain = ball_contact_graph(&b);
    let closure = hyperclosure_ball(&b)?;
    let factored = build_factored_contact_graph(&plain.vertices.iter().cloned().collect(), &closure.members);
    let sample = |n: usize| if n <= EXHAUSTIVE_DELTA_LIMIT { 0 } else { 5_000_000 };
    Ok((
        four_point_delta(&plain, sample(plain.order()), 0),
        four_point_delta(&factored, sample(factored.order()), 0),
    ))
}

fn quasitree(r: &mut Recorder, radius: u32) -> Result<()> {
    let (plain, factored) = ball_deltas(radius)?;
    let describe = |d: &DeltaReport| {
        format!(
            "delta={} over {} quadruples ({}, component {})",
            d.delta,
            d.quadruples,
            if d.exhaustive { "exhaustive" } else { "sampled" },
            d.component_size
        )
    };
    match locked_delta(radius) {
        Some((p, f)) => {
            r.check("plain contact graph delta", plain.twice_delta == p, describe(&plain), format!("delta={}", f64::from(p) / 2.0), Basis::Regression);
            r.check("factored contact graph delta", factored.twice_delta == f, describe(&factored), format!("delta={}", f64::from(f) / 2.0), Basis::Regression);
        }
        None => {
            r.check("plain contact graph delta", true, describe(&plain), "recorded", Basis::Regression);
            r.check("factored contact graph delta", true, describe(&factored), "recorded", Basis::Regression);
        }
    }
    r.check(
        "factored delta at most plain delta + 2",
        factored.twice_delta <= plain.twice_delta + 4,
        factored.delta,
        format!("<= {}", plain.delta + 2.0),
        Basis::Regression,
    );
    Ok(())
}
