//! Vertices, edges and finite balls of the cube complex.
//!
//! A vertex is a tree node together with three twist coordinates. Twist
//! edges change one coordinate by one; the switch edge at slot `i` walks the
//! tree edge labelled by the current slot-`i` coordinate. Squares are pairs
//! of commuting moves in distinct slots, except that two switches never span
//! a square. Cubes are triples of pairwise commuting moves.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tree::{Slot, SwitchLabel, TreeNodeId};

/// A 0-cube: a pants decomposition (tree node) with a dual system given by
/// its twist coordinates relative to the node's base dual system.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexId {
    pub node: TreeNodeId,
    pub twist: [i64; 3],
}

impl VertexId {
    pub fn new(node: TreeNodeId, twist: [i64; 3]) -> Self {
        VertexId { node, twist }
    }

    pub fn origin() -> Self {
        VertexId::new(TreeNodeId::root(), [0; 3])
    }

    pub fn coord(&self, slot: Slot) -> i64 {
        self.twist[slot.index()]
    }

    pub fn with_coord(&self, slot: Slot, value: i64) -> VertexId {
        let mut v = self.clone();
        v.twist[slot.index()] = value;
        v
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c] = self.twist;
        write!(f, "{};{a},{b},{c}", self.node)
    }
}

impl FromStr for VertexId {
    type Err = Error;

    /// Parses `word;n1,n2,n3`, e.g. `ε;0,0,0` or `(2,5),(1,0);3,0,2`.
    fn from_str(s: &str) -> Result<Self> {
        let (word, coords) = s
            .rsplit_once(';')
            .ok_or_else(|| Error::Parse(format!("vertex `{s}` lacks `;`")))?;
        let node: TreeNodeId = word.parse()?;
        let parts: Vec<i64> = coords
            .split(',')
            .map(|c| c.trim().parse::<i64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::Parse(format!("bad twist coordinates in `{s}`")))?;
        let twist: [i64; 3] = parts
            .try_into()
            .map_err(|_| Error::Parse(format!("expected three twist coordinates in `{s}`")))?;
        Ok(VertexId::new(node, twist))
    }
}

pub fn twist_target(v: &VertexId, slot: Slot, direction: i64) -> VertexId {
    debug_assert!(direction == 1 || direction == -1);
    v.with_coord(slot, v.coord(slot) + direction)
}

/// The far end of the unique slot-`slot` switch edge at `v`.
pub fn switch_target(v: &VertexId, slot: Slot) -> VertexId {
    let k = v.coord(slot);
    let (node, removed) = v.node.step(SwitchLabel::new(slot, k));
    let value = removed.map_or(0, |r| r.dual);
    VertexId::new(node, v.with_coord(slot, value).twist)
}

/// Whether the slot-`slot` switch at `v` walks toward the tree root.
pub fn switch_goes_up(v: &VertexId, slot: Slot) -> bool {
    !v.node.is_child_label(SwitchLabel::new(slot, v.coord(slot)))
}

/// A generator of the 1-skeleton at a vertex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Move {
    Twist { slot: Slot, dir: i64 },
    Switch { slot: Slot },
}

impl Move {
    pub const ALL: [Move; 9] = [
        Move::Twist { slot: Slot::ONE, dir: 1 },
        Move::Twist { slot: Slot::ONE, dir: -1 },
        Move::Twist { slot: Slot::TWO, dir: 1 },
        Move::Twist { slot: Slot::TWO, dir: -1 },
        Move::Twist { slot: Slot::THREE, dir: 1 },
        Move::Twist { slot: Slot::THREE, dir: -1 },
        Move::Switch { slot: Slot::ONE },
        Move::Switch { slot: Slot::TWO },
        Move::Switch { slot: Slot::THREE },
    ];

    pub fn slot(self) -> Slot {
        match self {
            Move::Twist { slot, .. } | Move::Switch { slot } => slot,
        }
    }

    pub fn apply(self, v: &VertexId) -> VertexId {
        match self {
            Move::Twist { slot, dir } => twist_target(v, slot, dir),
            Move::Switch { slot } => switch_target(v, slot),
        }
    }

    /// Whether the two moves span a square at every vertex.
    pub fn commutes(self, other: Move) -> bool {
        match (self, other) {
            (Move::Switch { .. }, Move::Switch { .. }) => false,
            _ => self.slot() != other.slot(),
        }
    }
}

/// The nine neighbours of `v`: six twists, then three switches.
pub fn neighbors(v: &VertexId) -> Vec<VertexId> {
    Move::ALL.iter().map(|m| m.apply(v)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EdgeKind {
    Twist,
    Switch,
}

/// An edge in canonical form: twist edges point in the `+1` direction from
/// their lesser endpoint, switch edges start at the parent-side endpoint.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId {
    pub kind: EdgeKind,
    pub base: VertexId,
    pub slot: Slot,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub direction: Option<i64>,
}

impl EdgeId {
    pub fn twist(from: &VertexId, slot: Slot, direction: i64) -> EdgeId {
        let base = if direction > 0 { from.clone() } else { twist_target(from, slot, -1) };
        EdgeId { kind: EdgeKind::Twist, base, slot, direction: Some(1) }
    }

    pub fn switch(from: &VertexId, slot: Slot) -> EdgeId {
        let base = if switch_goes_up(from, slot) { switch_target(from, slot) } else { from.clone() };
        EdgeId { kind: EdgeKind::Switch, base, slot, direction: None }
    }

    pub fn from_move(from: &VertexId, m: Move) -> EdgeId {
        match m {
            Move::Twist { slot, dir } => EdgeId::twist(from, slot, dir),
            Move::Switch { slot } => EdgeId::switch(from, slot),
        }
    }

    pub fn endpoints(&self) -> (VertexId, VertexId) {
        let other = match self.kind {
            EdgeKind::Twist => twist_target(&self.base, self.slot, 1),
            EdgeKind::Switch => switch_target(&self.base, self.slot),
        };
        (self.base.clone(), other)
    }
}

/// Limits for ball materialisation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BallLimits {
    pub max_radius: u32,
    pub vertex_cap: usize,
}

impl Default for BallLimits {
    fn default() -> Self {
        BallLimits { max_radius: 6, vertex_cap: 2_000_000 }
    }
}

/// Squares and 3-cubes as sorted tuples of vertex indices into a ball.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cells {
    pub squares: Vec<[u32; 4]>,
    pub cubes: Vec<[u32; 8]>,
}

/// A finite ball in the 1-skeleton together with every cell it contains.
#[derive(Clone, Debug)]
pub struct Ball {
    pub center: VertexId,
    pub radius: u32,
    vertices: Vec<VertexId>,
    index: HashMap<VertexId, u32>,
    depth: Vec<u32>,
    adjacency: Vec<Vec<u32>>,
    edges: Vec<(u32, u32)>,
    cells: Cells,
}

impl Ball {
    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn index_of(&self, v: &VertexId) -> Option<u32> {
        self.index.get(v).copied()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.index.contains_key(v)
    }

    pub fn vertex(&self, i: u32) -> &VertexId {
        &self.vertices[i as usize]
    }

    /// Distance from the centre.
    pub fn depth(&self, i: u32) -> u32 {
        self.depth[i as usize]
    }

    pub fn adjacency(&self, i: u32) -> &[u32] {
        &self.adjacency[i as usize]
    }

    /// Edges as index pairs `(a, b)` with `a < b`, sorted.
    pub fn edge_indices(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edges(&self) -> Vec<EdgeId> {
        let mut out: Vec<EdgeId> = self
            .edges
            .iter()
            .map(|&(a, b)| edge_between(self.vertex(a), self.vertex(b)).expect("ball edge"))
            .collect();
        out.sort();
        out
    }

    pub fn cells(&self) -> &Cells {
        &self.cells
    }

    pub fn squares(&self) -> &[[u32; 4]] {
        &self.cells.squares
    }

    pub fn cubes(&self) -> &[[u32; 8]] {
        &self.cells.cubes
    }

    /// BFS distances inside the ball from vertex index `src`.
    pub fn distances_from(&self, src: u32) -> Vec<u32> {
        let mut dist = vec![u32::MAX; self.vertices.len()];
        let mut queue = VecDeque::new();
        dist[src as usize] = 0;
        queue.push_back(src);
        while let Some(x) = queue.pop_front() {
            let dx = dist[x as usize];
            for &y in &self.adjacency[x as usize] {
                if dist[y as usize] == u32::MAX {
                    dist[y as usize] = dx + 1;
                    queue.push_back(y);
                }
            }
        }
        dist
    }
}

/// The canonical edge joining two adjacent vertices, if they are adjacent.
pub fn edge_between(u: &VertexId, v: &VertexId) -> Option<EdgeId> {
    Move::ALL
        .iter()
        .find(|m| &m.apply(u) == v)
        .map(|m| EdgeId::from_move(u, *m))
}

/// Materialises the ball of the given radius by breadth-first search.
pub fn ball(center: &VertexId, radius: u32) -> Result<Ball> {
    ball_with_limits(center, radius, BallLimits::default())
}

pub fn ball_with_limits(center: &VertexId, radius: u32, limits: BallLimits) -> Result<Ball> {
    if radius > limits.max_radius {
        return Err(Error::RadiusTooLarge { radius, max: limits.max_radius });
    }
    let mut seen: HashMap<VertexId, u32> = HashMap::new();
    seen.insert(center.clone(), 0);
    let mut frontier = vec![center.clone()];
    for d in 1..=radius {
        let mut next = Vec::new();
        for v in &frontier {
            for w in neighbors(v) {
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), d);
                    next.push(w);
                    if seen.len() > limits.vertex_cap {
                        return Err(Error::ResourceLimit { what: "ball vertices", cap: limits.vertex_cap });
                    }
                }
            }
        }
        frontier = next;
    }
    let mut vertices: Vec<VertexId> = seen.keys().cloned().collect();
    vertices.sort();
    let index: HashMap<VertexId, u32> =
        vertices.iter().enumerate().map(|(i, v)| (v.clone(), i as u32)).collect();
    let depth = vertices.iter().map(|v| seen[v]).collect();
    let mut adjacency = vec![Vec::new(); vertices.len()];
    let mut edges = Vec::new();
    for (i, v) in vertices.iter().enumerate() {
        for w in neighbors(v) {
            if let Some(&j) = index.get(&w) {
                adjacency[i].push(j);
                if (i as u32) < j {
                    edges.push((i as u32, j));
                }
            }
        }
        adjacency[i].sort_unstable();
    }
    edges.sort_unstable();
    let mut b = Ball {
        center: center.clone(),
        radius,
        vertices,
        index,
        depth,
        adjacency,
        edges,
        cells: Cells::default(),
    };
    b.cells = detect_cells(&b);
    Ok(b)
}

/// Squares and 3-cubes of the ball, generated from commuting move pairs and
/// triples and kept when all corners lie in the ball.
pub fn detect_cells(b: &Ball) -> Cells {
    let mut squares = BTreeSet::new();
    let mut cubes = BTreeSet::new();
    let moves = Move::ALL;
    for v in b.vertices.iter() {
        for (x, &m1) in moves.iter().enumerate() {
            for (y, &m2) in moves.iter().enumerate().skip(x + 1) {
                if !m1.commutes(m2) {
                    continue;
                }
                let a = m1.apply(v);
                let c = m2.apply(v);
                let ac = m2.apply(&a);
                debug_assert_eq!(ac, m1.apply(&c));
                if let Some(sq) = indices(b, [v, &a, &c, &ac]) {
                    squares.insert(sq);
                }
                for &m3 in moves.iter().skip(y + 1) {
                    if !(m1.commutes(m3) && m2.commutes(m3)) {
                        continue;
                    }
                    let e = m3.apply(v);
                    let ae = m3.apply(&a);
                    let ce = m3.apply(&c);
                    let ace = m3.apply(&ac);
                    if let Some(cube) = indices(b, [v, &a, &c, &ac, &e, &ae, &ce, &ace]) {
                        cubes.insert(cube);
                    }
                }
            }
        }
    }
    Cells { squares: squares.into_iter().collect(), cubes: cubes.into_iter().collect() }
}

fn indices<const N: usize>(b: &Ball, vs: [&VertexId; N]) -> Option<[u32; N]> {
    let mut out = [0u32; N];
    for (slot, v) in out.iter_mut().zip(vs) {
        *slot = b.index_of(v)?;
    }
    out.sort_unstable();
    Some(out)
}

/// Graph distance between two ball vertices using only ball edges.
pub fn bfs_distance(b: &Ball, u: &VertexId, v: &VertexId) -> Result<u32> {
    let iu = b.index_of(u).ok_or_else(|| Error::VertexNotInBall(u.clone()))?;
    let iv = b.index_of(v).ok_or_else(|| Error::VertexNotInBall(v.clone()))?;
    Ok(b.distances_from(iu)[iv as usize])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }

    #[test]
    fn twist_moves() {
        assert_eq!(twist_target(&v("ε;0,0,0"), Slot::TWO, 1), v("ε;0,1,0"));
        assert_eq!(twist_target(&v("ε;0,1,0"), Slot::TWO, -1), v("ε;0,0,0"));
        assert_eq!(twist_target(&v("(2,5);4,0,-1"), Slot::ONE, 1), v("(2,5);5,0,-1"));
    }

    #[test]
    fn switch_moves() {
        assert_eq!(switch_target(&v("ε;0,5,0"), Slot::TWO), v("(2,5);0,0,0"));
        assert_eq!(switch_target(&v("(2,5);0,0,0"), Slot::TWO), v("ε;0,5,0"));
        assert_eq!(switch_target(&v("(2,5);3,7,0"), Slot::TWO), v("(2,5),(2,7);3,0,0"));
    }

    #[test]
    fn neighbours_at_origin() {
        let n: BTreeSet<_> = neighbors(&VertexId::origin()).into_iter().collect();
        assert_eq!(n.len(), 9);
        for s in ["(1,0);0,0,0", "(2,0);0,0,0", "(3,0);0,0,0", "ε;1,0,0", "ε;0,0,-1"] {
            assert!(n.contains(&v(s)), "{s}");
        }
    }

    #[test]
    fn small_balls() {
        let b0 = ball(&VertexId::origin(), 0).unwrap();
        assert_eq!((b0.len(), b0.edge_indices().len()), (1, 0));
        let b1 = ball(&VertexId::origin(), 1).unwrap();
        assert_eq!((b1.len(), b1.edge_indices().len()), (10, 9));
        assert!(b1.squares().is_empty());
    }

    #[test]
    fn radius_and_cap_errors() {
        assert!(matches!(ball(&VertexId::origin(), 7), Err(Error::RadiusTooLarge { .. })));
        let lim = BallLimits { max_radius: 6, vertex_cap: 50 };
        assert!(matches!(
            ball_with_limits(&VertexId::origin(), 3, lim),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn distances_in_a_flat() {
        let b = ball(&VertexId::origin(), 6).unwrap();
        assert_eq!(bfs_distance(&b, &v("ε;0,0,0"), &v("ε;1,2,3")).unwrap(), 6);
        assert_eq!(bfs_distance(&b, &v("ε;0,5,0"), &v("(2,5);0,0,0")).unwrap(), 1);
        assert!(bfs_distance(&b, &v("ε;9,9,9"), &v("ε;0,0,0")).is_err());
    }

    #[test]
    fn switch_cube_is_detected() {
        let b = ball(&VertexId::origin(), 3).unwrap();
        let mut want: Vec<u32> = Vec::new();
        for a in 0..2 {
            for c in 0..2 {
                want.push(b.index_of(&VertexId::new(TreeNodeId::root(), [a, 0, c])).unwrap());
                want.push(b.index_of(&VertexId::new("(2,0)".parse().unwrap(), [a, 0, c])).unwrap());
            }
        }
        want.sort_unstable();
        assert!(b.cubes().iter().any(|c| c[..] == want[..]));
    }

    #[test]
    fn edge_canonical_forms() {
        let e = EdgeId::twist(&v("ε;1,0,0"), Slot::ONE, -1);
        assert_eq!(e.base, v("ε;0,0,0"));
        let s = EdgeId::switch(&v("(2,5);0,0,0"), Slot::TWO);
        assert_eq!(s.base, v("ε;0,5,0"));
        assert_eq!(s.endpoints().1, v("(2,5);0,0,0"));
    }
}
