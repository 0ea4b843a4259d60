//! Twist and switch hyperplanes, separation, distance, medians, contact
//! classification and parallelism classes.
//!
//! A twist hyperplane lives over the support of a meridian: the component of
//! the pants tree reachable without switching the meridian's slot. The slot
//! coordinate is transported unchanged across the other slots' bridges, so a
//! single integer `wall` names the hyperplane. A switch hyperplane is the
//! midplane of one bridge and is named by the child end of its tree edge.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{EdgeId, EdgeKind, VertexId};
use crate::tree::{Component, Slot, SlotSet, SwitchLabel, TreeNodeId};

/// A non-separating meridian, realised as the slot curve of every node in
/// its support. `anchor` is the root-most node of the support.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct MeridianId {
    pub anchor: TreeNodeId,
    pub slot: Slot,
}

impl MeridianId {
    pub fn support(&self) -> Component {
        Component { anchor: self.anchor.clone(), slots: SlotSet::all_but(self.slot) }
    }

    pub fn is_canonical(&self) -> bool {
        self.anchor.last().is_none_or(|l| l.slot == self.slot)
    }
}

impl fmt::Display for MeridianId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}|{}>", self.anchor, self.slot)
    }
}

pub fn meridian_of(node: &TreeNodeId, slot: Slot) -> MeridianId {
    let c = Component::of(node, SlotSet::all_but(slot));
    MeridianId { anchor: c.anchor, slot }
}

pub fn in_support(m: &MeridianId, node: &TreeNodeId) -> bool {
    m.support().contains(node)
}

/// The slot coordinate a vertex presents to the walls of `m`: its own
/// coordinate over the support, otherwise the coordinate of the plane where
/// its tree geodesic leaves the support.
pub fn effective_coord(m: &MeridianId, x: &VertexId) -> i64 {
    let sup = m.support();
    if sup.contains(&x.node) {
        x.coord(m.slot)
    } else if m.anchor.is_prefix_of(&x.node) {
        let p = sup.project(&x.node);
        x.node.labels()[p.depth()].dual
    } else {
        0
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct TwistHyperplaneId {
    pub meridian: MeridianId,
    pub wall: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SwitchHyperplaneId {
    pub child: TreeNodeId,
}

impl SwitchHyperplaneId {
    pub fn new(child: TreeNodeId) -> Self {
        assert!(!child.is_root(), "switch hyperplane needs a nonempty child word");
        SwitchHyperplaneId { child }
    }

    pub fn label(&self) -> SwitchLabel {
        *self.child.last().expect("nonempty child")
    }

    pub fn slot(&self) -> Slot {
        self.label().slot
    }

    pub fn parent(&self) -> TreeNodeId {
        self.child.parent().expect("nonempty child")
    }

    /// The two glued planes as `(node, slot coordinate)`: parent side first.
    pub fn sides(&self) -> [(TreeNodeId, i64); 2] {
        [(self.parent(), self.label().dual), (self.child.clone(), 0)]
    }

    /// The bridge whose side in flat `node` is the plane `slot = value`.
    pub fn at_plane(node: &TreeNodeId, slot: Slot, value: i64) -> (SwitchHyperplaneId, Side) {
        let (next, removed) = node.step(SwitchLabel::new(slot, value));
        match removed {
            Some(_) => (SwitchHyperplaneId::new(node.clone()), Side::Plus),
            None => (SwitchHyperplaneId::new(next), Side::Minus),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum HyperplaneId {
    Twist(TwistHyperplaneId),
    Switch(SwitchHyperplaneId),
}

impl HyperplaneId {
    pub fn twist(meridian: MeridianId, wall: i64) -> Self {
        HyperplaneId::Twist(TwistHyperplaneId { meridian, wall })
    }

    pub fn switch(child: TreeNodeId) -> Self {
        HyperplaneId::Switch(SwitchHyperplaneId::new(child))
    }

    pub fn is_twist(&self) -> bool {
        matches!(self, HyperplaneId::Twist(_))
    }

    pub fn as_twist(&self) -> Option<&TwistHyperplaneId> {
        match self {
            HyperplaneId::Twist(t) => Some(t),
            HyperplaneId::Switch(_) => None,
        }
    }

    pub fn slot(&self) -> Slot {
        match self {
            HyperplaneId::Twist(t) => t.meridian.slot,
            HyperplaneId::Switch(s) => s.slot(),
        }
    }

    /// Tree nodes over which the carrier lives.
    pub fn support(&self) -> Support {
        match self {
            HyperplaneId::Twist(t) => Support::Component(t.meridian.support()),
            HyperplaneId::Switch(s) => Support::Edge(s.parent(), s.child.clone()),
        }
    }
}

impl fmt::Display for HyperplaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HyperplaneId::Twist(t) => write!(f, "T{}@{}", t.meridian, t.wall),
            HyperplaneId::Switch(s) => write!(f, "S[{}]", s.child),
        }
    }
}

/// The node set a hyperplane's carrier projects to.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Support {
    Component(Component),
    Edge(TreeNodeId, TreeNodeId),
}

impl Support {
    pub fn contains(&self, node: &TreeNodeId) -> bool {
        match self {
            Support::Component(c) => c.contains(node),
            Support::Edge(a, b) => a == node || b == node,
        }
    }

    /// Nearest node of the support to `node`.
    pub fn project(&self, node: &TreeNodeId) -> TreeNodeId {
        match self {
            Support::Component(c) => c.project(node),
            Support::Edge(p, c) => {
                if c.is_prefix_of(node) {
                    c.clone()
                } else {
                    p.clone()
                }
            }
        }
    }

    /// `Ok(node)` with a shared node, or the nearest pair `(mine, theirs)`.
    pub fn bridge(&self, other: &Support) -> std::result::Result<TreeNodeId, (TreeNodeId, TreeNodeId)> {
        let probe = match other {
            Support::Component(c) => c.anchor.clone(),
            Support::Edge(p, _) => p.clone(),
        };
        let p = self.project(&probe);
        if other.contains(&p) {
            Ok(p)
        } else {
            let q = other.project(&p);
            Err((p, q))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

/// Which halfspace of `h` contains `x`. Minus is the `≤ wall` side of a
/// twist hyperplane and the parent side of a switch hyperplane.
pub fn side(h: &HyperplaneId, x: &VertexId) -> Side {
    match h {
        HyperplaneId::Twist(t) => {
            if effective_coord(&t.meridian, x) <= t.wall {
                Side::Minus
            } else {
                Side::Plus
            }
        }
        HyperplaneId::Switch(s) => {
            if s.child.is_prefix_of(&x.node) {
                Side::Plus
            } else {
                Side::Minus
            }
        }
    }
}

pub fn dual_hyperplane(e: &EdgeId) -> HyperplaneId {
    let v = &e.base;
    match e.kind {
        EdgeKind::Twist => HyperplaneId::twist(meridian_of(&v.node, e.slot), v.coord(e.slot)),
        EdgeKind::Switch => {
            let (child, removed) = v.node.step(SwitchLabel::new(e.slot, v.coord(e.slot)));
            debug_assert!(removed.is_none(), "canonical switch edges start on the parent side");
            HyperplaneId::switch(child)
        }
    }
}

pub fn separates(h: &HyperplaneId, u: &VertexId, v: &VertexId) -> bool {
    side(h, u) != side(h, v)
}

/// Meridians whose support meets the tree geodesic between the two nodes.
fn meridians_along(a: &TreeNodeId, b: &TreeNodeId) -> BTreeSet<MeridianId> {
    let mut out = BTreeSet::new();
    for node in a.path_to(b) {
        for s in Slot::ALL {
            out.insert(meridian_of(&node, s));
        }
    }
    out
}

pub fn separating_set(u: &VertexId, v: &VertexId) -> BTreeSet<HyperplaneId> {
    let mut out = BTreeSet::new();
    let path = u.node.path_to(&v.node);
    for w in path.windows(2) {
        let child = if w[0].depth() > w[1].depth() { &w[0] } else { &w[1] };
        out.insert(HyperplaneId::switch(child.clone()));
    }
    for m in meridians_along(&u.node, &v.node) {
        let a = effective_coord(&m, u);
        let b = effective_coord(&m, v);
        for wall in a.min(b)..a.max(b) {
            out.insert(HyperplaneId::twist(m.clone(), wall));
        }
    }
    out
}

/// Number of hyperplanes separating `u` from `v`, i.e. the 1-skeleton
/// distance.
pub fn distance(u: &VertexId, v: &VertexId) -> u64 {
    let tree = u.node.distance(&v.node) as u64;
    let twist: u64 = meridians_along(&u.node, &v.node)
        .iter()
        .map(|m| effective_coord(m, u).abs_diff(effective_coord(m, v)))
        .sum();
    tree + twist
}

fn median3(a: i64, b: i64, c: i64) -> i64 {
    a.max(b).min(a.min(b).max(c))
}

pub fn median(u: &VertexId, v: &VertexId, w: &VertexId) -> VertexId {
    let node = TreeNodeId::median(&u.node, &v.node, &w.node);
    let mut twist = [0; 3];
    for s in Slot::ALL {
        let m = meridian_of(&node, s);
        twist[s.index()] = median3(
            effective_coord(&m, u),
            effective_coord(&m, v),
            effective_coord(&m, w),
        );
    }
    VertexId::new(node, twist)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Contact {
    Cross,
    Osculate,
    None,
}

impl Contact {
    pub fn is_edge(self) -> bool {
        self != Contact::None
    }
}

pub fn contact(h1: &HyperplaneId, h2: &HyperplaneId) -> Result<Contact> {
    if h1 == h2 {
        return Err(Error::IdenticalHyperplane(h1.clone()));
    }
    Ok(contact_unchecked(h1, h2))
}

pub(crate) fn contact_unchecked(h1: &HyperplaneId, h2: &HyperplaneId) -> Contact {
    use HyperplaneId::{Switch, Twist};
    match (h1, h2) {
        (Switch(a), Switch(b)) => {
            let shared = a.child == b.parent() || b.child == a.parent() || a.parent() == b.parent();
            if shared && a.slot() != b.slot() {
                Contact::Osculate
            } else {
                Contact::None
            }
        }
        (Twist(a), Twist(b)) => {
            if a.meridian == b.meridian {
                if a.wall.abs_diff(b.wall) == 1 {
                    Contact::Osculate
                } else {
                    Contact::None
                }
            } else if a.meridian.slot != b.meridian.slot && a.meridian.support().meets(&b.meridian.support()) {
                Contact::Cross
            } else {
                Contact::None
            }
        }
        (Twist(t), Switch(s)) | (Switch(s), Twist(t)) => twist_switch_contact(t, s),
    }
}

fn twist_switch_contact(t: &TwistHyperplaneId, s: &SwitchHyperplaneId) -> Contact {
    let sup = t.meridian.support();
    let mut result = Contact::None;
    for (node, value) in s.sides() {
        if !sup.contains(&node) {
            continue;
        }
        if s.slot() != t.meridian.slot {
            return Contact::Cross;
        }
        if value == t.wall || value == t.wall + 1 {
            result = Contact::Osculate;
        }
    }
    result
}

/// Whether the carrier of `h` contains `x`.
pub fn in_carrier(h: &HyperplaneId, x: &VertexId) -> bool {
    match h {
        HyperplaneId::Twist(t) => {
            in_support(&t.meridian, &x.node) && {
                let c = x.coord(t.meridian.slot);
                c == t.wall || c == t.wall + 1
            }
        }
        HyperplaneId::Switch(s) => s
            .sides()
            .iter()
            .any(|(node, value)| node == &x.node && x.coord(s.slot()) == *value),
    }
}

/// One of the two boundary copies of a hyperplane's carrier.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CombinatorialHyperplaneId {
    pub hyperplane: HyperplaneId,
    pub side: Side,
}

impl CombinatorialHyperplaneId {
    pub fn new(hyperplane: HyperplaneId, side: Side) -> Self {
        CombinatorialHyperplaneId { hyperplane, side }
    }

    pub fn contains(&self, x: &VertexId) -> bool {
        in_carrier(&self.hyperplane, x) && side(&self.hyperplane, x) == self.side
    }
}

impl fmt::Display for CombinatorialHyperplaneId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.side {
            Side::Minus => "-",
            Side::Plus => "+",
        };
        write!(f, "{}{s}", self.hyperplane)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ParallelClassId {
    TwistClass { meridian: MeridianId },
    /// All bridges of `slot` over the slot-only component rooted at `anchor`.
    SwitchClass { anchor: TreeNodeId, slot: Slot },
}

pub fn parallel_class(c: &CombinatorialHyperplaneId) -> ParallelClassId {
    match &c.hyperplane {
        HyperplaneId::Twist(t) => ParallelClassId::TwistClass { meridian: t.meridian.clone() },
        HyperplaneId::Switch(s) => {
            let slot = s.slot();
            let anchor = Component::of(&s.parent(), SlotSet::single(slot)).anchor;
            ParallelClassId::SwitchClass { anchor, slot }
        }
    }
}

/// `count` distinct members of the parallelism class of `c`, starting with
/// `c`. Twist copies step the wall upward; switch copies vary the dual index
/// of the bridge label around its original value.
pub fn enumerate_parallel_copies(c: &CombinatorialHyperplaneId, count: usize) -> Vec<CombinatorialHyperplaneId> {
    match &c.hyperplane {
        HyperplaneId::Twist(t) => (0..count as i64)
            .map(|i| {
                CombinatorialHyperplaneId::new(HyperplaneId::twist(t.meridian.clone(), t.wall + i), c.side)
            })
            .collect(),
        HyperplaneId::Switch(s) => {
            let parent = s.parent();
            let base = s.label();
            let mut out = Vec::with_capacity(count);
            let mut step = 0i64;
            while out.len() < count {
                let offsets: &[i64] = if step == 0 { &[0] } else { &[step, -step] };
                for &o in offsets {
                    if out.len() == count {
                        break;
                    }
                    let label = SwitchLabel::new(base.slot, base.dual + o);
                    if let Some(child) = parent.child(label) {
                        out.push(CombinatorialHyperplaneId::new(HyperplaneId::switch(child), c.side));
                    }
                }
                step += 1;
            }
            out
        }
    }
}

impl FromStr for MeridianId {
    type Err = Error;

    /// Parses `<word|slot>`; any node of the support may be given and the
    /// result is canonical.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::Parse(format!("malformed meridian `{s}`, expected <word|slot>"));
        let body = s.trim().strip_prefix('<').and_then(|b| b.strip_suffix('>')).ok_or_else(bad)?;
        let (word, slot) = body.rsplit_once('|').ok_or_else(bad)?;
        let slot = slot.trim().parse::<u8>().ok().and_then(Slot::new).ok_or_else(bad)?;
        Ok(meridian_of(&word.parse()?, slot))
    }
}

impl FromStr for HyperplaneId {
    type Err = Error;

    /// Parses `T<word|slot>@wall` or `S[word]`.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("malformed hyperplane `{s}`, expected T<word|slot>@wall or S[word]"));
        if let Some(rest) = s.strip_prefix('T') {
            let (m, wall) = rest.rsplit_once('@').ok_or_else(bad)?;
            let wall: i64 = wall.trim().parse().map_err(|_| bad())?;
            Ok(HyperplaneId::twist(m.parse()?, wall))
        } else if let Some(rest) = s.strip_prefix('S') {
            let word = rest.strip_prefix('[').and_then(|r| r.strip_suffix(']')).ok_or_else(bad)?;
            let child: TreeNodeId = word.parse()?;
            if child.is_root() {
                return Err(bad());
            }
            Ok(HyperplaneId::switch(child))
        } else {
            Err(bad())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn node(s: &str) -> TreeNodeId {
        s.parse().unwrap()
    }
    fn v(s: &str) -> VertexId {
        s.parse().unwrap()
    }
    fn mer(s: &str, slot: u8) -> MeridianId {
        MeridianId { anchor: node(s), slot: Slot::new(slot).unwrap() }
    }
    fn tw(s: &str, slot: u8, wall: i64) -> HyperplaneId {
        HyperplaneId::twist(mer(s, slot), wall)
    }
    fn sw(s: &str) -> HyperplaneId {
        HyperplaneId::switch(node(s))
    }

    #[test]
    fn meridian_canonicalisation() {
        assert_eq!(meridian_of(&node("ε"), Slot::TWO), mer("ε", 2));
        assert_eq!(meridian_of(&node("(1,3)"), Slot::TWO), mer("ε", 2));
        assert_eq!(meridian_of(&node("(2,5),(1,0)"), Slot::TWO), mer("(2,5)", 2));
        assert!(mer("(2,5)", 2).is_canonical());
        assert!(!mer("(2,5)", 1).is_canonical());
    }

    #[test]
    fn support_membership() {
        assert!(in_support(&mer("ε", 2), &node("ε")));
        assert!(!in_support(&mer("ε", 2), &node("(2,0)")));
        assert!(in_support(&mer("ε", 2), &node("(1,4),(3,-2)")));
    }

    #[test]
    fn dual_hyperplanes() {
        let e = EdgeId::twist(&v("ε;0,0,0"), Slot::ONE, 1);
        assert_eq!(dual_hyperplane(&e), tw("ε", 1, 0));
        let e = EdgeId::switch(&v("ε;0,5,0"), Slot::TWO);
        assert_eq!(dual_hyperplane(&e), sw("(2,5)"));
        let e2 = EdgeId::twist(&v("(2,7);0,9,9"), Slot::ONE, 1);
        assert_eq!(dual_hyperplane(&e2), tw("ε", 1, 0));
    }

    #[test]
    fn separation_examples() {
        assert!(separates(&sw("(2,5)"), &v("ε;0,0,0"), &v("(2,5);0,0,0")));
        let h = tw("ε", 1, 0);
        assert!(separates(&h, &v("ε;0,0,0"), &v("ε;1,0,0")));
        assert!(!separates(&h, &v("ε;0,0,0"), &v("ε;0,9,9")));
        assert!(separates(&tw("ε", 2, 3), &v("ε;0,0,0"), &v("(2,5);0,0,0")));
    }

    #[test]
    fn separating_set_examples() {
        assert!(separating_set(&v("ε;0,0,0"), &v("ε;0,0,0")).is_empty());
        let s = separating_set(&v("ε;0,0,0"), &v("ε;1,2,3"));
        let want: BTreeSet<_> = [
            tw("ε", 1, 0),
            tw("ε", 2, 0),
            tw("ε", 2, 1),
            tw("ε", 3, 0),
            tw("ε", 3, 1),
            tw("ε", 3, 2),
        ]
        .into_iter()
        .collect();
        assert_eq!(s, want);
        let s = separating_set(&v("ε;0,5,0"), &v("(2,5);0,0,0"));
        assert_eq!(s.into_iter().collect::<Vec<_>>(), vec![sw("(2,5)")]);
    }

    #[test]
    fn medians() {
        let u = v("ε;0,0,0");
        assert_eq!(median(&u, &u, &v("ε;4,4,4")), u);
        assert_eq!(median(&v("ε;0,0,0"), &v("ε;2,0,0"), &v("ε;1,5,0")), v("ε;1,0,0"));
        assert_eq!(median(&v("ε;0,0,0"), &v("(2,0);0,0,0"), &v("ε;0,3,0")), v("ε;0,0,0"));
    }

    #[test]
    fn contact_examples() {
        assert_eq!(contact(&tw("ε", 1, 0), &tw("ε", 2, 0)).unwrap(), Contact::Cross);
        assert_eq!(contact(&tw("ε", 3, 0), &tw("ε", 3, 1)).unwrap(), Contact::Osculate);
        assert_eq!(contact(&sw("(2,5)"), &sw("(1,0)")).unwrap(), Contact::Osculate);
        assert_eq!(contact(&sw("(2,5)"), &sw("(2,6)")).unwrap(), Contact::None);
        assert!(contact(&sw("(2,5)"), &sw("(2,5)")).is_err());
        // a bridge leaving a support through the anchor's parent edge
        assert_eq!(contact(&tw("(2,4)", 2, -1), &sw("(2,4)")).unwrap(), Contact::Osculate);
        assert_eq!(contact(&tw("(2,4)", 2, 3), &sw("(2,4)")).unwrap(), Contact::None);
        assert_eq!(contact(&tw("ε", 2, 4), &sw("(2,4)")).unwrap(), Contact::Osculate);
        assert_eq!(contact(&tw("ε", 1, 9), &sw("(2,4)")).unwrap(), Contact::Cross);
    }

    #[test]
    fn parallel_classes() {
        let a = CombinatorialHyperplaneId::new(tw("ε", 1, 0), Side::Plus);
        let b = CombinatorialHyperplaneId::new(tw("ε", 1, 7), Side::Minus);
        assert_eq!(parallel_class(&a), parallel_class(&b));
        let a = CombinatorialHyperplaneId::new(sw("(2,5)"), Side::Minus);
        let b = CombinatorialHyperplaneId::new(sw("(2,8)"), Side::Plus);
        assert_eq!(parallel_class(&a), ParallelClassId::SwitchClass { anchor: node("ε"), slot: Slot::TWO });
        assert_eq!(parallel_class(&a), parallel_class(&b));
        let c = CombinatorialHyperplaneId::new(sw("(1,0),(2,5)"), Side::Minus);
        assert_eq!(parallel_class(&c), ParallelClassId::SwitchClass { anchor: node("(1,0)"), slot: Slot::TWO });
    }

    #[test]
    fn parallel_copies() {
        let c = CombinatorialHyperplaneId::new(tw("ε", 1, 0), Side::Plus);
        let walls: Vec<i64> = enumerate_parallel_copies(&c, 3)
            .iter()
            .map(|x| x.hyperplane.as_twist().unwrap().wall)
            .collect();
        assert_eq!(walls, vec![0, 1, 2]);
        let c = CombinatorialHyperplaneId::new(sw("(2,0)"), Side::Minus);
        let got = enumerate_parallel_copies(&c, 3);
        let want: Vec<_> = ["(2,0)", "(2,1)", "(2,-1)"]
            .iter()
            .map(|s| CombinatorialHyperplaneId::new(sw(s), Side::Minus))
            .collect();
        assert_eq!(got, want);
        assert_eq!(enumerate_parallel_copies(&c, 1), vec![c.clone()]);
        // siblings under a same-slot parent skip the backtracking label
        let c = CombinatorialHyperplaneId::new(sw("(2,5),(2,1)"), Side::Minus);
        let got = enumerate_parallel_copies(&c, 4);
        assert!(got.iter().all(|x| match &x.hyperplane {
            HyperplaneId::Switch(s) => s.label().dual != 0,
            _ => false,
        }));
    }
}
