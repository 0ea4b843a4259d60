//! The non-separating disk graph on model meridians: two meridians are
//! adjacent when some pants decomposition contains both, i.e. their supports
//! share a tree node. Also the embedding into the contact graph, rewriting of
//! contact geodesics into its image, and density witnesses.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::contact::{BallRef, Certificate, DistanceResult, DistanceStatus};
use crate::error::{Error, Result};
use crate::hyperplane::{contact_unchecked, meridian_of, Contact, HyperplaneId, MeridianId, TwistHyperplaneId};
use crate::model::Ball;
use crate::tree::Slot;

pub fn nd_adjacent(mu: &MeridianId, nu: &MeridianId) -> Result<bool> {
    if mu == nu {
        return Err(Error::EqualMeridian(mu.clone()));
    }
    Ok(mu.support().meets(&nu.support()))
}

pub fn iota(mu: &MeridianId) -> TwistHyperplaneId {
    TwistHyperplaneId { meridian: mu.clone(), wall: 0 }
}

pub fn in_iota_image(h: &HyperplaneId) -> bool {
    matches!(h, HyperplaneId::Twist(t) if t.wall == 0)
}

/// Distance in the disk graph. Every geodesic can be pushed onto meridians
/// through nodes of the tree path between the two supports: a run of
/// meridians off the path lives in one branch, and both of its neighbours
/// contain the node where that branch attaches, so one meridian there
/// replaces the run. The search over those meridians is therefore exact.
pub fn nd_distance(mu: &MeridianId, nu: &MeridianId, search_radius: u32) -> Result<DistanceResult> {
    if mu == nu {
        return Err(Error::EqualMeridian(mu.clone()));
    }
    let path = nd_geodesic(mu, nu);
    let value = path.len() as u64 - 1;
    Ok(DistanceResult {
        value,
        status: DistanceStatus::Exact,
        search_radius,
        certificate: if value <= 2 { Certificate::Symbolic } else { Certificate::Complete },
        path: path.iter().map(|m| HyperplaneId::Twist(iota(m))).collect(),
    })
}

/// A geodesic of meridians from `mu` to `nu`, endpoints included.
pub fn nd_geodesic(mu: &MeridianId, nu: &MeridianId) -> Vec<MeridianId> {
    let (s1, s2) = (mu.support(), nu.support());
    let nodes = match s1.bridge(&s2) {
        Ok(x) => vec![x],
        Err((p, q)) => p.path_to(&q),
    };
    let mut candidates: BTreeSet<MeridianId> = [mu.clone(), nu.clone()].into_iter().collect();
    for x in &nodes {
        candidates.extend(Slot::ALL.iter().map(|&s| meridian_of(x, s)));
    }
    let candidates: Vec<MeridianId> = candidates.into_iter().collect();
    let supports: Vec<_> = candidates.iter().map(|m| m.support()).collect();
    let index: HashMap<&MeridianId, usize> = candidates.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let (src, dst) = (index[mu], index[nu]);
    let mut prev = vec![usize::MAX; candidates.len()];
    prev[src] = src;
    let mut queue = VecDeque::from([src]);
    while let Some(u) = queue.pop_front() {
        if u == dst {
            break;
        }
        for v in 0..candidates.len() {
            if prev[v] == usize::MAX && supports[u].meets(&supports[v]) {
                prev[v] = u;
                queue.push_back(v);
            }
        }
    }
    let mut out = vec![candidates[dst].clone()];
    let mut cur = dst;
    while cur != src {
        cur = prev[cur];
        out.push(candidates[cur].clone());
    }
    out.reverse();
    out
}

/// Meridians through the nodes of a ball, with disk-graph edges.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase")]
pub struct MeridianGraph {
    pub vertices: Vec<MeridianId>,
    pub edges: Vec<(u32, u32)>,
    pub source_ball: Option<BallRef>,
}

impl MeridianGraph {
    pub fn of_ball(b: &Ball) -> Self {
        let set: BTreeSet<MeridianId> = b
            .vertices()
            .iter()
            .flat_map(|v| Slot::ALL.map(|s| meridian_of(&v.node, s)))
            .collect();
        let vertices: Vec<MeridianId> = set.into_iter().collect();
        let supports: Vec<_> = vertices.iter().map(|m| m.support()).collect();
        let mut edges = Vec::new();
        for i in 0..vertices.len() {
            for j in i + 1..vertices.len() {
                if supports[i].meets(&supports[j]) {
                    edges.push((i as u32, j as u32));
                }
            }
        }
        MeridianGraph { vertices, edges, source_ball: Some(b.into()) }
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph meridians {\n");
        for (i, m) in self.vertices.iter().enumerate() {
            let _ = writeln!(out, "  m{i} [label=\"{m}\"];");
        }
        for &(a, b) in &self.edges {
            let _ = writeln!(out, "  m{a} -- m{b};");
        }
        out.push_str("}\n");
        out
    }
}

/// Which replacement rule was applied at a position.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RewriteCase {
    /// Switch between two twist hyperplanes that both osculate with it.
    BothOsculate,
    /// Switch between two twist hyperplanes that both cross it.
    BothCross,
    /// Switch followed by a switch, previous hyperplane osculating.
    SwitchNextOsculate,
    /// Switch followed by a switch, previous hyperplane crossing.
    SwitchNextCross,
    /// Off-image twist hyperplane crossed by both neighbours.
    TwistCrossed,
    /// Off-image twist hyperplane osculating with both neighbours.
    TwistOsculated,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Rewrite {
    pub path: Vec<HyperplaneId>,
    pub steps: Vec<(usize, RewriteCase)>,
}

fn validate_path(path: &[HyperplaneId]) -> Result<()> {
    if path.is_empty() {
        return Err(Error::InvalidPath("empty path".into()));
    }
    for (i, w) in path.windows(2).enumerate() {
        if w[0] == w[1] || !contact_unchecked(&w[0], &w[1]).is_edge() {
            return Err(Error::InvalidPath(format!("{} and {} at position {i} are not in contact", w[0], w[1])));
        }
    }
    for end in [&path[0], &path[path.len() - 1]] {
        if !in_iota_image(end) {
            return Err(Error::InvalidPath(format!("endpoint {end} is not a wall-0 twist hyperplane")));
        }
    }
    Ok(())
}

/// Twist hyperplanes crossing `h`: meridians of other slots at its bridge
/// ends. Only defined for switch hyperplanes.
fn twists_crossing_switch(h: &HyperplaneId) -> Vec<HyperplaneId> {
    let HyperplaneId::Switch(s) = h else { return Vec::new() };
    let mut out = Vec::new();
    for (node, _) in s.sides() {
        for slot in s.slot().others() {
            out.push(HyperplaneId::twist(meridian_of(&node, slot), 0));
        }
    }
    out
}

/// Twist hyperplanes osculating with the switch hyperplane `h`.
fn twists_osculating_switch(h: &HyperplaneId) -> Vec<HyperplaneId> {
    let HyperplaneId::Switch(s) = h else { return Vec::new() };
    let mut out = Vec::new();
    for (node, value) in s.sides() {
        let m = meridian_of(&node, s.slot());
        for w in [value - 1, value] {
            out.push(HyperplaneId::twist(m.clone(), w));
        }
    }
    out
}

/// Rewrites a contact path with endpoints in the image of the embedding
/// into one of the same length through wall-0 twist hyperplanes only.
pub fn rewrite_geodesic(path: &[HyperplaneId]) -> Result<Vec<HyperplaneId>> {
    rewrite_geodesic_traced(path).map(|r| r.path)
}

pub fn rewrite_geodesic_traced(path: &[HyperplaneId]) -> Result<Rewrite> {
    validate_path(path)?;
    let mut out = path.to_vec();
    let mut steps = Vec::new();
    let n = out.len();
    let fits = |prev: &HyperplaneId, c: &HyperplaneId, next: &HyperplaneId| {
        c != prev && c != next && contact_unchecked(prev, c).is_edge() && contact_unchecked(c, next).is_edge()
    };

    for i in 1..n.saturating_sub(1) {
        if out[i].is_twist() {
            continue;
        }
        let (prev, cur, next) = (&out[i - 1], &out[i], &out[i + 1]);
        let before = contact_unchecked(prev, cur);
        let after = contact_unchecked(cur, next);
        let (case, pool) = if next.is_twist() {
            match (before, after) {
                (Contact::Osculate, Contact::Osculate) => (RewriteCase::BothOsculate, twists_crossing_switch(cur)),
                (Contact::Cross, Contact::Cross) => (RewriteCase::BothCross, twists_osculating_switch(cur)),
                _ => {
                    return Err(Error::CaseExhaustion {
                        index: i,
                        detail: format!("{prev} {before:?} / {next} {after:?} around switch {cur}"),
                    })
                }
            }
        } else {
            let pool: Vec<HyperplaneId> = twists_crossing_switch(cur)
                .into_iter()
                .filter(|c| contact_unchecked(c, next) == Contact::Cross)
                .collect();
            match before {
                Contact::Osculate => (RewriteCase::SwitchNextOsculate, pool),
                _ => (RewriteCase::SwitchNextCross, pool),
            }
        };
        let replacement = pool.into_iter().find(|c| fits(prev, c, next)).ok_or_else(|| Error::CaseExhaustion {
            index: i,
            detail: format!("no twist replacement for {cur} in case {case:?}"),
        })?;
        out[i] = replacement;
        steps.push((i, case));
    }

    for i in 1..n.saturating_sub(1) {
        if in_iota_image(&out[i]) {
            continue;
        }
        let (prev, cur, next) = (&out[i - 1], &out[i], &out[i + 1]);
        let HyperplaneId::Twist(t) = cur else { unreachable!("switches were replaced") };
        let (case, pool) = match (contact_unchecked(prev, cur), contact_unchecked(cur, next)) {
            (Contact::Cross, Contact::Cross) => (RewriteCase::TwistCrossed, vec![HyperplaneId::Twist(iota(&t.meridian))]),
            (Contact::Osculate, Contact::Osculate) => (
                RewriteCase::TwistOsculated,
                t.meridian.slot.others().iter().map(|&s| HyperplaneId::twist(meridian_of(&t.meridian.anchor, s), 0)).collect(),
            ),
            (a, b) => {
                return Err(Error::CaseExhaustion {
                    index: i,
                    detail: format!("{prev} {a:?} / {next} {b:?} around twist {cur}"),
                })
            }
        };
        let replacement = pool.into_iter().find(|c| fits(prev, c, next)).ok_or_else(|| Error::CaseExhaustion {
            index: i,
            detail: format!("no image replacement for {cur} in case {case:?}"),
        })?;
        out[i] = replacement;
        steps.push((i, case));
    }
    validate_path(&out).map_err(|e| Error::CaseExhaustion { index: 0, detail: e.to_string() })?;
    Ok(Rewrite { path: out, steps })
}

/// A wall-0 twist hyperplane in contact with `h`; `h` itself when it is
/// already in the image.
pub fn density_witness(h: &HyperplaneId) -> TwistHyperplaneId {
    match h {
        HyperplaneId::Twist(t) if t.wall == 0 => t.clone(),
        HyperplaneId::Twist(t) => {
            let other = t.meridian.slot.others()[0];
            iota(&meridian_of(&t.meridian.anchor, other))
        }
        HyperplaneId::Switch(s) => iota(&meridian_of(&s.parent(), s.slot().others()[0])),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(anchor: &str, slot: u8) -> MeridianId {
        MeridianId { anchor: anchor.parse().unwrap(), slot: Slot::new(slot).unwrap() }
    }
    fn t(anchor: &str, slot: u8, wall: i64) -> HyperplaneId {
        HyperplaneId::twist(m(anchor, slot), wall)
    }

    #[test]
    fn adjacency() {
        assert!(nd_adjacent(&m("ε", 1), &m("ε", 2)).unwrap());
        assert!(!nd_adjacent(&m("ε", 2), &m("(2,0)", 2)).unwrap());
        assert!(nd_adjacent(&m("ε", 2), &m("(1,4)", 1)).unwrap());
        assert!(nd_adjacent(&m("ε", 1), &m("ε", 1)).is_err());
    }

    #[test]
    fn iota_examples() {
        assert_eq!(HyperplaneId::Twist(iota(&m("ε", 1))), t("ε", 1, 0));
        assert_ne!(iota(&m("ε", 1)), iota(&m("(1,0)", 1)));
    }

    #[test]
    fn distances() {
        let r = nd_distance(&m("ε", 1), &m("ε", 2), 1).unwrap();
        assert_eq!(r.value, 1);
        let r = nd_distance(&m("ε", 2), &m("(2,0)", 2), 1).unwrap();
        assert_eq!((r.value, r.status), (2, DistanceStatus::Exact));
    }

    #[test]
    fn witnesses() {
        assert_eq!(HyperplaneId::Twist(density_witness(&t("ε", 1, 7))), t("ε", 2, 0));
        let s = HyperplaneId::switch("(2,5)".parse().unwrap());
        assert_eq!(HyperplaneId::Twist(density_witness(&s)), t("ε", 1, 0));
    }

    #[test]
    fn rewrite_switch_between_crossings() {
        let s = HyperplaneId::switch("(2,5)".parse().unwrap());
        let path = vec![t("ε", 1, 0), s, t("ε", 3, 0)];
        let r = rewrite_geodesic_traced(&path).unwrap();
        assert_eq!(r.path.len(), 3);
        assert!(r.path.iter().all(in_iota_image));
        assert_eq!(r.path[1], t("ε", 2, 0));
        assert_eq!(r.steps, vec![(1, RewriteCase::BothCross), (1, RewriteCase::TwistCrossed)]);
        let unchanged = vec![t("ε", 1, 0), t("ε", 2, 0)];
        assert_eq!(rewrite_geodesic(&unchanged).unwrap(), unchanged);
    }
}
