//! The factor system: six kinds of convex subcomplexes, gate maps onto and
//! between them, the members through a vertex, and ball-restricted closure
//! under gates.
//!
//! Every descriptor is a set of vertices `{(w, n) : w ∈ N, n_s = c_s for
//! s ∉ S}` where `S` is a set of free slots and `N` is either one tree node
//! (flat kinds: 0-cube, line, combinatorial switch hyperplane) or the
//! component of the pants tree under moves of the free slots (tree kinds:
//! tree, combinatorial twist hyperplane, whole complex).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hyperplane::{
    distance, meridian_of, CombinatorialHyperplaneId, HyperplaneId, MeridianId, Side, SwitchHyperplaneId,
};
use crate::model::{switch_target, Ball, VertexId};
use crate::tree::{Component, Slot, SlotSet, TreeNodeId};

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum SubcomplexDescriptor {
    Whole,
    ZeroCube { vertex: VertexId },
    /// All vertices over the meridian's support with the slot coordinate fixed.
    CombTwist { meridian: MeridianId, value: i64 },
    /// The plane `slot = value` inside one twist flat.
    CombSwitch { node: TreeNodeId, slot: Slot, value: i64 },
    /// The line in one flat with two coordinates fixed; `slots` is increasing.
    Line { node: TreeNodeId, slots: (Slot, Slot), values: (i64, i64) },
    /// Intersection of two combinatorial twist hyperplanes of distinct
    /// slots; `first.slot < second.slot`.
    Tree { first: MeridianId, first_value: i64, second: MeridianId, second_value: i64 },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    Whole,
    ZeroCube,
    CombTwist,
    CombSwitch,
    Line,
    Tree,
}

impl SubcomplexDescriptor {
    pub fn variant(&self) -> Variant {
        match self {
            SubcomplexDescriptor::Whole => Variant::Whole,
            SubcomplexDescriptor::ZeroCube { .. } => Variant::ZeroCube,
            SubcomplexDescriptor::CombTwist { .. } => Variant::CombTwist,
            SubcomplexDescriptor::CombSwitch { .. } => Variant::CombSwitch,
            SubcomplexDescriptor::Line { .. } => Variant::Line,
            SubcomplexDescriptor::Tree { .. } => Variant::Tree,
        }
    }

    pub fn line(node: TreeNodeId, a: (Slot, i64), b: (Slot, i64)) -> Self {
        let (a, b) = if a.0 < b.0 { (a, b) } else { (b, a) };
        SubcomplexDescriptor::Line { node, slots: (a.0, b.0), values: (a.1, b.1) }
    }

    pub fn tree(a: (MeridianId, i64), b: (MeridianId, i64)) -> Self {
        let (a, b) = if a.0.slot < b.0.slot { (a, b) } else { (b, a) };
        SubcomplexDescriptor::Tree { first: a.0, first_value: a.1, second: b.0, second_value: b.1 }
    }

    /// Checks the descriptor invariants: canonical meridians, distinct
    /// slots, intersecting tree supports.
    pub fn validate(&self) -> Result<()> {
        let bad = |why: &str| Err(Error::Parse(format!("invalid descriptor {self}: {why}")));
        match self {
            SubcomplexDescriptor::CombTwist { meridian, .. } if !meridian.is_canonical() => {
                bad("meridian is not canonical")
            }
            SubcomplexDescriptor::Line { slots, .. } if slots.0 >= slots.1 => bad("line slots must increase"),
            SubcomplexDescriptor::Tree { first, second, .. } => {
                if !first.is_canonical() || !second.is_canonical() {
                    bad("meridian is not canonical")
                } else if first.slot >= second.slot {
                    bad("tree slots must increase")
                } else if !first.support().meets(&second.support()) {
                    bad("supports do not intersect")
                } else {
                    Ok(())
                }
            }
            _ => Ok(()),
        }
    }

    /// The combinatorial hyperplane this descriptor is, if it is one.
    pub fn as_combinatorial(&self) -> Option<CombinatorialHyperplaneId> {
        match self {
            SubcomplexDescriptor::CombTwist { meridian, value } => Some(CombinatorialHyperplaneId::new(
                HyperplaneId::twist(meridian.clone(), *value),
                Side::Minus,
            )),
            SubcomplexDescriptor::CombSwitch { node, slot, value } => {
                let (h, side) = SwitchHyperplaneId::at_plane(node, *slot, *value);
                Some(CombinatorialHyperplaneId::new(HyperplaneId::Switch(h), side))
            }
            _ => None,
        }
    }

    pub fn from_combinatorial(c: &CombinatorialHyperplaneId) -> Self {
        match &c.hyperplane {
            HyperplaneId::Twist(t) => SubcomplexDescriptor::CombTwist {
                meridian: t.meridian.clone(),
                value: match c.side {
                    Side::Minus => t.wall,
                    Side::Plus => t.wall + 1,
                },
            },
            HyperplaneId::Switch(s) => {
                let [(pn, pv), (cn, cv)] = s.sides();
                let (node, value) = match c.side {
                    Side::Minus => (pn, pv),
                    Side::Plus => (cn, cv),
                };
                SubcomplexDescriptor::CombSwitch { node, slot: s.slot(), value }
            }
        }
    }
}

impl fmt::Display for SubcomplexDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SubcomplexDescriptor::Whole => write!(f, "whole"),
            SubcomplexDescriptor::ZeroCube { vertex } => write!(f, "point({vertex})"),
            SubcomplexDescriptor::CombTwist { meridian, value } => write!(f, "ctwist({meridian}={value})"),
            SubcomplexDescriptor::CombSwitch { node, slot, value } => {
                write!(f, "cswitch({node}|n{slot}={value})")
            }
            SubcomplexDescriptor::Line { node, slots, values } => {
                write!(f, "line({node}|n{}={},n{}={})", slots.0, values.0, slots.1, values.1)
            }
            SubcomplexDescriptor::Tree { first, first_value, second, second_value } => {
                write!(f, "tree({first}={first_value},{second}={second_value})")
            }
        }
    }
}

/// Uniform form of a descriptor: a node set, the free slots and the values
/// of the fixed slots (free entries are zero).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shape {
    pub nodes: Component,
    pub free: SlotSet,
    pub values: [i64; 3],
}

impl Shape {
    pub fn of(f: &SubcomplexDescriptor) -> Shape {
        let mut values = [0; 3];
        match f {
            SubcomplexDescriptor::Whole => Shape {
                nodes: Component { anchor: TreeNodeId::root(), slots: SlotSet::FULL },
                free: SlotSet::FULL,
                values,
            },
            SubcomplexDescriptor::ZeroCube { vertex } => Shape {
                nodes: Component::single(vertex.node.clone()),
                free: SlotSet::EMPTY,
                values: vertex.twist,
            },
            SubcomplexDescriptor::CombTwist { meridian, value } => {
                values[meridian.slot.index()] = *value;
                Shape { nodes: meridian.support(), free: SlotSet::all_but(meridian.slot), values }
            }
            SubcomplexDescriptor::CombSwitch { node, slot, value } => {
                values[slot.index()] = *value;
                Shape { nodes: Component::single(node.clone()), free: SlotSet::all_but(*slot), values }
            }
            SubcomplexDescriptor::Line { node, slots, values: (a, b) } => {
                values[slots.0.index()] = *a;
                values[slots.1.index()] = *b;
                Shape {
                    nodes: Component::single(node.clone()),
                    free: SlotSet::single(Slot::third(slots.0, slots.1)),
                    values,
                }
            }
            SubcomplexDescriptor::Tree { first, first_value, second, second_value } => {
                values[first.slot.index()] = *first_value;
                values[second.slot.index()] = *second_value;
                let free = SlotSet::single(Slot::third(first.slot, second.slot));
                let common = first
                    .support()
                    .bridge(&second.support())
                    .unwrap_or_else(|(p, _)| p);
                Shape { nodes: Component::of(&common, free), free, values }
            }
        }
    }

    /// Whether the node set is a whole free-slot component rather than a
    /// single flat.
    pub fn is_tree_kind(&self) -> bool {
        !self.nodes.slots.is_empty()
    }

    pub fn contains(&self, v: &VertexId) -> bool {
        self.nodes.contains(&v.node)
            && Slot::ALL
                .iter()
                .all(|&s| self.free.contains(s) || v.coord(s) == self.values[s.index()])
    }

    /// A vertex of the subcomplex: the anchor with free coordinates zero.
    pub fn base_point(&self) -> VertexId {
        let mut twist = self.values;
        for s in self.free.iter() {
            twist[s.index()] = 0;
        }
        VertexId::new(self.nodes.anchor.clone(), twist)
    }

    /// Back to the canonical descriptor.
    pub fn descriptor(&self) -> SubcomplexDescriptor {
        let node = &self.nodes.anchor;
        let val = |s: Slot| self.values[s.index()];
        let fixed: Vec<Slot> = self.free.complement().iter().collect();
        match (self.is_tree_kind(), self.free.len()) {
            (_, 0) => SubcomplexDescriptor::ZeroCube { vertex: VertexId::new(node.clone(), self.values) },
            (true, 3) => SubcomplexDescriptor::Whole,
            (true, 2) => SubcomplexDescriptor::CombTwist { meridian: meridian_of(node, fixed[0]), value: val(fixed[0]) },
            (true, _) => SubcomplexDescriptor::tree(
                (meridian_of(node, fixed[0]), val(fixed[0])),
                (meridian_of(node, fixed[1]), val(fixed[1])),
            ),
            (false, 2) => SubcomplexDescriptor::CombSwitch { node: node.clone(), slot: fixed[0], value: val(fixed[0]) },
            (false, 1) => SubcomplexDescriptor::line(node.clone(), (fixed[0], val(fixed[0])), (fixed[1], val(fixed[1]))),
            (false, _) => unreachable!("a full twist flat is not a factor"),
        }
    }
}

pub fn contains(f: &SubcomplexDescriptor, v: &VertexId) -> bool {
    Shape::of(f).contains(v)
}

/// Walks `v` along the tree geodesic to `target`, adjusting the switched
/// slot's coordinate before each bridge.
pub fn transport(v: &VertexId, target: &TreeNodeId) -> VertexId {
    let path = v.node.path_to(target);
    let mut x = v.clone();
    for pair in path.windows(2) {
        let (from, to) = (&pair[0], &pair[1]);
        let (slot, value) = if to.depth() > from.depth() {
            let l = to.last().expect("child");
            (l.slot, l.dual)
        } else {
            (from.last().expect("child").slot, 0)
        };
        x = switch_target(&x.with_coord(slot, value), slot);
        debug_assert_eq!(&x.node, to);
    }
    x
}

fn gate_in_shape(s: &Shape, v: &VertexId) -> VertexId {
    let target = s.nodes.project(&v.node);
    let mut x = transport(v, &target);
    for slot in s.free.complement().iter() {
        x.twist[slot.index()] = s.values[slot.index()];
    }
    x
}

/// The vertex of `f` closest to `v`.
pub fn gate_vertex(f: &SubcomplexDescriptor, v: &VertexId) -> VertexId {
    gate_in_shape(&Shape::of(f), v)
}

/// Distance from `v` to the subcomplex.
pub fn distance_to(f: &SubcomplexDescriptor, v: &VertexId) -> u64 {
    distance(v, &gate_vertex(f, v))
}

/// The gate image of `f2` in `f1`.
pub fn gate_subcomplex(f1: &SubcomplexDescriptor, f2: &SubcomplexDescriptor) -> SubcomplexDescriptor {
    let (s1, s2) = (Shape::of(f1), Shape::of(f2));
    gate_shapes(&s1, &s2).descriptor()
}

fn gate_shapes(s1: &Shape, s2: &Shape) -> Shape {
    let a = gate_in_shape(s1, &s2.base_point());
    let common = s1.free.intersect(s2.free);
    if s1.is_tree_kind() && s2.is_tree_kind() && s1.nodes.meets(&s2.nodes) {
        return Shape { nodes: Component::of(&a.node, common), free: common, values: a.twist };
    }
    let free: SlotSet = common
        .iter()
        .filter(|&s| meridian_of(&a.node, s).support().meets(&s2.nodes))
        .collect();
    Shape { nodes: Component::single(a.node.clone()), free, values: a.twist }
}

/// Whether `h` crosses the subcomplex.
pub fn crosses(f: &SubcomplexDescriptor, h: &HyperplaneId) -> bool {
    shape_crosses(&Shape::of(f), h)
}

fn shape_crosses(s: &Shape, h: &HyperplaneId) -> bool {
    match h {
        HyperplaneId::Twist(t) => {
            s.free.contains(t.meridian.slot) && t.meridian.support().meets(&s.nodes)
        }
        HyperplaneId::Switch(sw) => {
            s.is_tree_kind() && s.nodes.contains(&sw.parent()) && s.nodes.contains(&sw.child)
        }
    }
}

/// Complete invariant of the set of hyperplanes crossing a subcomplex: two
/// subcomplexes are parallel exactly when their signatures agree.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CrossingSignature {
    /// Crossed only by the walls of these meridians.
    Flat { meridians: Vec<MeridianId> },
    /// Crossed by every free-slot wall over the component and its bridges.
    Tree { anchor: TreeNodeId, free: Vec<Slot> },
}

impl fmt::Display for CrossingSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CrossingSignature::Flat { meridians } => {
                write!(f, "[")?;
                for (i, m) in meridians.iter().enumerate() {
                    if i > 0 {
                        write!(f, " ")?;
                    }
                    write!(f, "{m}")?;
                }
                write!(f, "]")
            }
            CrossingSignature::Tree { anchor, free } => {
                let slots: Vec<String> = free.iter().map(|s| s.to_string()).collect();
                write!(f, "[{anchor}|{}]", slots.join(""))
            }
        }
    }
}

pub fn crossing_signature(f: &SubcomplexDescriptor) -> CrossingSignature {
    let s = Shape::of(f);
    if s.is_tree_kind() {
        CrossingSignature::Tree { anchor: s.nodes.anchor.clone(), free: s.free.iter().collect() }
    } else {
        CrossingSignature::Flat { meridians: s.free.iter().map(|slot| meridian_of(&s.nodes.anchor, slot)).collect() }
    }
}

pub fn parallel(f: &SubcomplexDescriptor, g: &SubcomplexDescriptor) -> bool {
    crossing_signature(f) == crossing_signature(g)
}

/// The fourteen factor-system members containing `v`.
pub fn members_at(v: &VertexId) -> Vec<SubcomplexDescriptor> {
    let mut out = vec![SubcomplexDescriptor::Whole, SubcomplexDescriptor::ZeroCube { vertex: v.clone() }];
    for s in Slot::ALL {
        out.push(SubcomplexDescriptor::CombSwitch { node: v.node.clone(), slot: s, value: v.coord(s) });
    }
    for s in Slot::ALL {
        out.push(SubcomplexDescriptor::CombTwist { meridian: meridian_of(&v.node, s), value: v.coord(s) });
    }
    for s in Slot::ALL {
        let [a, b] = s.others();
        out.push(SubcomplexDescriptor::line(v.node.clone(), (a, v.coord(a)), (b, v.coord(b))));
    }
    for s in Slot::ALL {
        let [a, b] = s.others();
        out.push(SubcomplexDescriptor::tree(
            (meridian_of(&v.node, a), v.coord(a)),
            (meridian_of(&v.node, b), v.coord(b)),
        ));
    }
    out
}

/// The combinatorial hyperplanes containing some vertex of the ball.
pub fn combinatorial_hyperplanes_meeting(b: &Ball) -> BTreeSet<SubcomplexDescriptor> {
    let mut out = BTreeSet::new();
    for v in b.vertices() {
        for s in Slot::ALL {
            out.insert(SubcomplexDescriptor::CombTwist { meridian: meridian_of(&v.node, s), value: v.coord(s) });
            out.insert(SubcomplexDescriptor::CombSwitch { node: v.node.clone(), slot: s, value: v.coord(s) });
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureReport {
    /// Smallest `n` with `F_n = F_{n+1}`.
    pub rounds: usize,
    /// Number of new descriptors added in each round, starting with round 1.
    pub added_per_round: Vec<usize>,
    pub counts: BTreeMap<Variant, usize>,
    pub total: usize,
}

#[derive(Clone, Debug)]
pub struct Closure {
    pub members: BTreeSet<SubcomplexDescriptor>,
    pub report: ClosureReport,
}

/// Closes `{whole}` under gates onto the combinatorial hyperplanes meeting
/// the ball, keeping only descriptors that meet the ball. Round `n` gates
/// the descriptors added in round `n-1` onto every combinatorial hyperplane.
pub fn hyperclosure_ball(b: &Ball) -> Result<Closure> {
    hyperclosure_ball_capped(b, 5_000_000)
}

pub fn hyperclosure_ball_capped(b: &Ball, cap: usize) -> Result<Closure> {
    let hyperplanes: Vec<Shape> = combinatorial_hyperplanes_meeting(b).iter().map(Shape::of).collect();
    let center = b.center.clone();
    let radius = u64::from(b.radius);
    let meets = |s: &Shape| distance(&center, &gate_in_shape(s, &center)) <= radius;

    let mut members: BTreeSet<SubcomplexDescriptor> = BTreeSet::new();
    members.insert(SubcomplexDescriptor::Whole);
    let mut frontier = vec![Shape::of(&SubcomplexDescriptor::Whole)];
    let mut added = Vec::new();
    while !frontier.is_empty() {
        let produced: BTreeSet<SubcomplexDescriptor> = frontier
            .par_iter()
            .flat_map_iter(|f| {
                hyperplanes
                    .iter()
                    .map(|c| gate_shapes(c, f))
                    .filter(|g| meets(g))
                    .map(|g| g.descriptor())
                    .collect::<Vec<_>>()
            })
            .collect();
        let fresh: Vec<SubcomplexDescriptor> = produced.into_iter().filter(|d| !members.contains(d)).collect();
        if fresh.is_empty() {
            break;
        }
        added.push(fresh.len());
        members.extend(fresh.iter().cloned());
        if members.len() > cap {
            return Err(Error::ResourceLimit { what: "closure descriptors", cap });
        }
        frontier = fresh.iter().map(Shape::of).collect();
    }
    let mut counts = BTreeMap::new();
    for m in &members {
        *counts.entry(m.variant()).or_insert(0) += 1;
    }
    let report = ClosureReport { rounds: added.len(), added_per_round: added, counts, total: members.len() };
    Ok(Closure { members, report })
}

/// Which side of the bridge `h` the subcomplex lies on, or `None` when the
/// subcomplex crosses it.
fn side_of_switch(s: &Shape, h: &SwitchHyperplaneId) -> Option<Side> {
    if s.is_tree_kind() && s.nodes.contains(&h.parent()) && s.nodes.contains(&h.child) {
        return None;
    }
    Some(if h.child.is_prefix_of(&s.nodes.anchor) { Side::Plus } else { Side::Minus })
}

/// Gates `f2` successively through the chain of combinatorial switch
/// hyperplanes, listed from the one nearest `f2` to the one nearest `f1`,
/// and finally onto `f1`.
pub fn gate_chain(
    f1: &SubcomplexDescriptor,
    f2: &SubcomplexDescriptor,
    chain: &[SubcomplexDescriptor],
) -> Result<SubcomplexDescriptor> {
    let (s1, s2) = (Shape::of(f1), Shape::of(f2));
    for (index, c) in chain.iter().enumerate() {
        let SubcomplexDescriptor::CombSwitch { node, slot, value } = c else {
            return Err(Error::ChainNotSeparating { index });
        };
        let (h, _) = SwitchHyperplaneId::at_plane(node, *slot, *value);
        match (side_of_switch(&s1, &h), side_of_switch(&s2, &h)) {
            (Some(a), Some(b)) if a != b => {}
            _ => return Err(Error::ChainNotSeparating { index }),
        }
    }
    let mut cur = s2;
    for c in chain {
        cur = gate_shapes(&Shape::of(c), &cur);
    }
    Ok(gate_shapes(&s1, &cur).descriptor())
}

/// Combinatorial switch hyperplanes separating two subcomplexes, ordered
/// from the one nearest `f2` to the one nearest `f1`. Each bridge on the
/// tree geodesic between the node sets contributes the side facing `f1`.
pub fn separating_switch_chain(f1: &SubcomplexDescriptor, f2: &SubcomplexDescriptor) -> Vec<SubcomplexDescriptor> {
    let (s1, s2) = (Shape::of(f1), Shape::of(f2));
    let (p1, p2) = match s1.nodes.bridge(&s2.nodes) {
        Ok(_) => return Vec::new(),
        Err(pair) => pair,
    };
    let path = p2.path_to(&p1);
    path.windows(2)
        .map(|w| {
            let (from, to) = (&w[0], &w[1]);
            let child = if to.depth() > from.depth() { to } else { from };
            let h = SwitchHyperplaneId::new(child.clone());
            let side = if h.child.is_prefix_of(to) { Side::Plus } else { Side::Minus };
            SubcomplexDescriptor::from_combinatorial(&CombinatorialHyperplaneId::new(HyperplaneId::Switch(h), side))
        })
        .collect()
}
