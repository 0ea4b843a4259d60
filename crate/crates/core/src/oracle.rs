//! Brute-force oracles over a materialised ball.
//!
//! Everything here works from the ball's adjacency lists alone: 4-cycles and
//! cube configurations are found by neighbourhood search, hyperplane pieces
//! by merging opposite edges of 4-cycles. The symbolic modules are checked
//! against these, so nothing in this file calls into them except to attach
//! names to edges.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::hyperplane::{dual_hyperplane, HyperplaneId};
use crate::model::{edge_between, Ball};

/// A 4-cycle `a - x - c - y - a` of ball vertex indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FourCycle {
    pub a: u32,
    pub x: u32,
    pub c: u32,
    pub y: u32,
}

impl FourCycle {
    pub fn vertex_set(&self) -> [u32; 4] {
        let mut s = [self.a, self.x, self.c, self.y];
        s.sort_unstable();
        s
    }
}

fn common_neighbors<'a>(b: &'a Ball, p: u32, q: u32) -> impl Iterator<Item = u32> + 'a {
    let (np, nq) = (b.adjacency(p), b.adjacency(q));
    np.iter().copied().filter(move |z| nq.binary_search(z).is_ok())
}

/// Every 4-cycle of the ball's 1-skeleton, one representative per vertex set.
pub fn four_cycles(b: &Ball) -> Vec<FourCycle> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for a in 0..b.len() as u32 {
        let nbrs = b.adjacency(a);
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                for c in common_neighbors(b, x, y) {
                    if c == a {
                        continue;
                    }
                    let cyc = FourCycle { a, x, c, y };
                    if seen.insert(cyc.vertex_set()) {
                        out.push(cyc);
                    }
                }
            }
        }
    }
    out
}

/// Every 8-vertex cube configuration: three 4-cycles at a corner whose far
/// corners share a further common neighbour.
pub fn cube_configurations(b: &Ball) -> BTreeSet<[u32; 8]> {
    let mut out = BTreeSet::new();
    let completion = |p: u32, q: u32, a: u32| -> Vec<u32> {
        common_neighbors(b, p, q).filter(|&c| c != a).collect()
    };
    for a in 0..b.len() as u32 {
        let nbrs = b.adjacency(a);
        for (i, &x) in nbrs.iter().enumerate() {
            for (j, &y) in nbrs.iter().enumerate().skip(i + 1) {
                for &z in nbrs.iter().skip(j + 1) {
                    for xy in completion(x, y, a) {
                        for xz in completion(x, z, a) {
                            for yz in completion(y, z, a) {
                                let far: Vec<u32> = common_neighbors(b, xy, xz)
                                    .filter(|&w| w != x && b.adjacency(yz).binary_search(&w).is_ok())
                                    .collect();
                                for w in far {
                                    let mut c = [a, x, y, z, xy, xz, yz, w];
                                    c.sort_unstable();
                                    if c.windows(2).all(|p| p[0] != p[1]) {
                                        out.insert(c);
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// Union-find over ball edges, merging opposite sides of every 4-cycle.
pub struct HyperplanePieces {
    edge_index: HashMap<(u32, u32), usize>,
    parent: Vec<usize>,
}

impl HyperplanePieces {
    pub fn new(b: &Ball) -> Self {
        let edge_index: HashMap<(u32, u32), usize> =
            b.edge_indices().iter().enumerate().map(|(i, &e)| (e, i)).collect();
        let mut uf = HyperplanePieces { parent: (0..edge_index.len()).collect(), edge_index };
        for cyc in four_cycles(b) {
            let e = |p: u32, q: u32| (p.min(q), p.max(q));
            uf.union(uf.edge_index[&e(cyc.a, cyc.x)], uf.edge_index[&e(cyc.y, cyc.c)]);
            uf.union(uf.edge_index[&e(cyc.a, cyc.y)], uf.edge_index[&e(cyc.x, cyc.c)]);
        }
        uf
    }

    fn find(&mut self, mut i: usize) -> usize {
        while self.parent[i] != i {
            self.parent[i] = self.parent[self.parent[i]];
            i = self.parent[i];
        }
        i
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }

    /// Piece label of the edge `{p, q}`.
    pub fn piece(&mut self, p: u32, q: u32) -> Option<usize> {
        let i = *self.edge_index.get(&(p.min(q), p.max(q)))?;
        Some(self.find(i))
    }
}

/// Ball edges grouped by their symbolic dual hyperplane, with carriers and
/// the crossing pairs witnessed by 4-cycles.
pub struct BallHyperplanes {
    pub edges: BTreeMap<HyperplaneId, Vec<(u32, u32)>>,
    pub carriers: BTreeMap<HyperplaneId, BTreeSet<u32>>,
    pub crossings: BTreeSet<(HyperplaneId, HyperplaneId)>,
}

impl BallHyperplanes {
    pub fn new(b: &Ball) -> Self {
        let mut edges: BTreeMap<HyperplaneId, Vec<(u32, u32)>> = BTreeMap::new();
        let mut label: HashMap<(u32, u32), HyperplaneId> = HashMap::new();
        for &(p, q) in b.edge_indices() {
            let e = edge_between(b.vertex(p), b.vertex(q)).expect("ball edge");
            let h = dual_hyperplane(&e);
            label.insert((p, q), h.clone());
            edges.entry(h).or_default().push((p, q));
        }
        let mut carriers: BTreeMap<HyperplaneId, BTreeSet<u32>> = BTreeMap::new();
        for (h, es) in &edges {
            let set = carriers.entry(h.clone()).or_default();
            for &(p, q) in es {
                set.insert(p);
                set.insert(q);
            }
        }
        let mut crossings = BTreeSet::new();
        let key = |p: u32, q: u32| (p.min(q), p.max(q));
        for cyc in four_cycles(b) {
            let h1 = label[&key(cyc.a, cyc.x)].clone();
            let h2 = label[&key(cyc.a, cyc.y)].clone();
            if h1 != h2 {
                crossings.insert((h1.clone().min(h2.clone()), h1.max(h2)));
            }
        }
        BallHyperplanes { edges, carriers, crossings }
    }

    /// Hyperplanes with a dual edge whose endpoints both lie within
    /// `depth` of the centre.
    pub fn interior(&self, b: &Ball, depth: u32) -> Vec<HyperplaneId> {
        self.edges
            .iter()
            .filter(|(_, es)| es.iter().any(|&(p, q)| b.depth(p) <= depth && b.depth(q) <= depth))
            .map(|(h, _)| h.clone())
            .collect()
    }

    pub fn crosses(&self, h1: &HyperplaneId, h2: &HyperplaneId) -> bool {
        let k = if h1 < h2 { (h1.clone(), h2.clone()) } else { (h2.clone(), h1.clone()) };
        self.crossings.contains(&k)
    }

    pub fn carriers_meet(&self, h1: &HyperplaneId, h2: &HyperplaneId) -> bool {
        match (self.carriers.get(h1), self.carriers.get(h2)) {
            (Some(a), Some(b)) => a.intersection(b).next().is_some(),
            _ => false,
        }
    }
}
