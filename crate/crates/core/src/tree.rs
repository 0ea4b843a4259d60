//! The tree of pants decompositions underlying the complex.
//!
//! A node is a reduced word of switch labels read from the basepoint `ε`.
//! The parent of a nonempty word is the word with its final label removed,
//! so prefixes are ancestors and tree geodesics pass through the longest
//! common prefix. Appending `(i, 0)` to a word whose final label has slot
//! `i` walks back to the parent; every other append walks to a child.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Position of a pants curve in a decomposition, one of 1, 2, 3.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "u8", into = "u8")]
pub struct Slot(u8);

impl Slot {
    pub const ONE: Slot = Slot(1);
    pub const TWO: Slot = Slot(2);
    pub const THREE: Slot = Slot(3);
    pub const ALL: [Slot; 3] = [Slot(1), Slot(2), Slot(3)];

    pub fn new(value: u8) -> Option<Slot> {
        (1..=3).contains(&value).then_some(Slot(value))
    }

    pub fn get(self) -> u8 {
        self.0
    }

    /// Zero-based index into a twist triple.
    pub fn index(self) -> usize {
        usize::from(self.0 - 1)
    }

    pub fn from_index(index: usize) -> Slot {
        Slot(index as u8 + 1)
    }

    /// The two remaining slots, in increasing order.
    pub fn others(self) -> [Slot; 2] {
        match self.0 {
            1 => [Slot(2), Slot(3)],
            2 => [Slot(1), Slot(3)],
            _ => [Slot(1), Slot(2)],
        }
    }

    /// The slot distinct from both arguments. The arguments must differ.
    pub fn third(a: Slot, b: Slot) -> Slot {
        debug_assert_ne!(a, b);
        Slot(6 - a.0 - b.0)
    }
}

impl TryFrom<u8> for Slot {
    type Error = String;
    fn try_from(value: u8) -> Result<Self, Self::Error> {
        Slot::new(value).ok_or_else(|| format!("slot {value} outside 1..=3"))
    }
}

impl From<Slot> for u8 {
    fn from(s: Slot) -> u8 {
        s.0
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// A subset of `{1, 2, 3}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SlotSet(u8);

impl SlotSet {
    pub const EMPTY: SlotSet = SlotSet(0);
    pub const FULL: SlotSet = SlotSet(0b111);

    pub fn single(s: Slot) -> SlotSet {
        SlotSet(1 << s.index())
    }

    pub fn all_but(s: Slot) -> SlotSet {
        SlotSet(Self::FULL.0 & !(1 << s.index()))
    }

    pub fn contains(self, s: Slot) -> bool {
        self.0 & (1 << s.index()) != 0
    }

    pub fn with(self, s: Slot) -> SlotSet {
        SlotSet(self.0 | (1 << s.index()))
    }

    pub fn intersect(self, other: SlotSet) -> SlotSet {
        SlotSet(self.0 & other.0)
    }

    pub fn complement(self) -> SlotSet {
        SlotSet(Self::FULL.0 & !self.0)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Slot> {
        Slot::ALL.into_iter().filter(move |s| self.contains(*s))
    }
}

impl FromIterator<Slot> for SlotSet {
    fn from_iter<I: IntoIterator<Item = Slot>>(iter: I) -> Self {
        iter.into_iter().fold(SlotSet::EMPTY, SlotSet::with)
    }
}

/// A switch of the curve in `slot` with the dual twisted `dual` times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "(Slot, i64)", into = "(Slot, i64)")]
pub struct SwitchLabel {
    pub slot: Slot,
    pub dual: i64,
}

impl SwitchLabel {
    pub fn new(slot: Slot, dual: i64) -> Self {
        SwitchLabel { slot, dual }
    }
}

impl From<(Slot, i64)> for SwitchLabel {
    fn from((slot, dual): (Slot, i64)) -> Self {
        SwitchLabel { slot, dual }
    }
}

impl From<SwitchLabel> for (Slot, i64) {
    fn from(l: SwitchLabel) -> Self {
        (l.slot, l.dual)
    }
}

impl fmt::Display for SwitchLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.slot, self.dual)
    }
}

/// A vertex of the pants tree, stored as a reduced word.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<SwitchLabel>", into = "Vec<SwitchLabel>")]
pub struct TreeNodeId(Vec<SwitchLabel>);

/// Whether `next` cancels against a word ending in `last`.
fn cancels(last: Option<&SwitchLabel>, next: &SwitchLabel) -> bool {
    matches!(last, Some(l) if l.slot == next.slot && next.dual == 0)
}

/// Reduces a word by repeatedly deleting adjacent pairs `(i,k)(i,0)`.
pub fn reduce_word<I: IntoIterator<Item = SwitchLabel>>(labels: I) -> TreeNodeId {
    let mut out: Vec<SwitchLabel> = Vec::new();
    for l in labels {
        if cancels(out.last(), &l) {
            out.pop();
        } else {
            out.push(l);
        }
    }
    TreeNodeId(out)
}

impl TreeNodeId {
    pub fn root() -> Self {
        TreeNodeId(Vec::new())
    }

    /// Builds a node from a word that must already be reduced.
    pub fn from_reduced(labels: Vec<SwitchLabel>) -> Result<Self, Error> {
        for w in labels.windows(2) {
            if cancels(Some(&w[0]), &w[1]) {
                return Err(Error::Parse(format!("word is not reduced at {}{}", w[0], w[1])));
            }
        }
        Ok(TreeNodeId(labels))
    }

    pub fn labels(&self) -> &[SwitchLabel] {
        &self.0
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn last(&self) -> Option<&SwitchLabel> {
        self.0.last()
    }

    pub fn parent(&self) -> Option<TreeNodeId> {
        let n = self.0.len();
        (n > 0).then(|| TreeNodeId(self.0[..n - 1].to_vec()))
    }

    pub fn prefix(&self, len: usize) -> TreeNodeId {
        TreeNodeId(self.0[..len].to_vec())
    }

    pub fn is_prefix_of(&self, other: &TreeNodeId) -> bool {
        other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..]
    }

    /// Moves along one tree edge. Returns the new node and, when the step
    /// walks to the parent, the label that was removed.
    pub fn step(&self, label: SwitchLabel) -> (TreeNodeId, Option<SwitchLabel>) {
        if cancels(self.0.last(), &label) {
            let removed = *self.0.last().unwrap();
            (self.prefix(self.0.len() - 1), Some(removed))
        } else {
            let mut w = self.0.clone();
            w.push(label);
            (TreeNodeId(w), None)
        }
    }

    /// Whether `label` is a legal child label at this node.
    pub fn is_child_label(&self, label: SwitchLabel) -> bool {
        !cancels(self.0.last(), &label)
    }

    pub fn child(&self, label: SwitchLabel) -> Option<TreeNodeId> {
        self.is_child_label(label).then(|| {
            let mut w = self.0.clone();
            w.push(label);
            TreeNodeId(w)
        })
    }

    pub fn common_prefix_len(&self, other: &TreeNodeId) -> usize {
        self.0.iter().zip(&other.0).take_while(|(a, b)| a == b).count()
    }

    pub fn distance(&self, other: &TreeNodeId) -> usize {
        let c = self.common_prefix_len(other);
        self.0.len() + other.0.len() - 2 * c
    }

    /// Tree geodesic from `self` to `other`, both endpoints included.
    pub fn path_to(&self, other: &TreeNodeId) -> Vec<TreeNodeId> {
        let c = self.common_prefix_len(other);
        let mut out = Vec::with_capacity(self.distance(other) + 1);
        for len in (c..=self.0.len()).rev() {
            out.push(self.prefix(len));
        }
        for len in c + 1..=other.0.len() {
            out.push(other.prefix(len));
        }
        out
    }

    /// Slots of the edges along the tree geodesic, in walking order.
    pub fn path_slots(&self, other: &TreeNodeId) -> Vec<Slot> {
        let c = self.common_prefix_len(other);
        let up = self.0[c..].iter().rev().map(|l| l.slot);
        let down = other.0[c..].iter().map(|l| l.slot);
        up.chain(down).collect()
    }

    /// Tree median of three nodes: the deepest pairwise common ancestor.
    pub fn median(a: &TreeNodeId, b: &TreeNodeId, c: &TreeNodeId) -> TreeNodeId {
        let ab = a.common_prefix_len(b);
        let ac = a.common_prefix_len(c);
        let bc = b.common_prefix_len(c);
        if ab >= ac && ab >= bc {
            a.prefix(ab)
        } else if ac >= bc {
            a.prefix(ac)
        } else {
            b.prefix(bc)
        }
    }
}

impl TryFrom<Vec<SwitchLabel>> for TreeNodeId {
    type Error = Error;
    fn try_from(v: Vec<SwitchLabel>) -> Result<Self, Error> {
        TreeNodeId::from_reduced(v)
    }
}

impl From<TreeNodeId> for Vec<SwitchLabel> {
    fn from(n: TreeNodeId) -> Self {
        n.0
    }
}

impl fmt::Display for TreeNodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "ε");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for TreeNodeId {
    type Err = Error;

    /// Accepts `ε`, `e` or the empty string for the root, otherwise a
    /// comma-separated list of `(slot,k)` pairs. The word is reduced.
    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim();
        if s.is_empty() || s == "ε" || s == "e" || s == "eps" {
            return Ok(TreeNodeId::root());
        }
        let bad = || Error::Parse(format!("malformed tree word `{s}`"));
        let mut labels = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let rest_t = rest.trim_start_matches([',', ' ']);
            if rest_t.is_empty() {
                break;
            }
            let body = rest_t.strip_prefix('(').ok_or_else(bad)?;
            let close = body.find(')').ok_or_else(bad)?;
            let (pair, tail) = body.split_at(close);
            let (a, b) = pair.split_once(',').ok_or_else(bad)?;
            let slot: u8 = a.trim().parse().map_err(|_| bad())?;
            let slot = Slot::new(slot).ok_or_else(bad)?;
            let dual: i64 = b.trim().parse().map_err(|_| bad())?;
            labels.push(SwitchLabel::new(slot, dual));
            rest = &tail[1..];
        }
        Ok(reduce_word(labels))
    }
}

/// The connected component of `node` in the forest obtained by keeping only
/// tree edges whose slot lies in `slots`, described by its root-most node.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Component {
    pub anchor: TreeNodeId,
    pub slots: SlotSet,
}

impl Component {
    pub fn of(node: &TreeNodeId, slots: SlotSet) -> Component {
        let keep = node
            .labels()
            .iter()
            .rposition(|l| !slots.contains(l.slot))
            .map_or(0, |p| p + 1);
        Component { anchor: node.prefix(keep), slots }
    }

    pub fn single(node: TreeNodeId) -> Component {
        Component { anchor: node, slots: SlotSet::EMPTY }
    }

    pub fn contains(&self, node: &TreeNodeId) -> bool {
        self.anchor.is_prefix_of(node)
            && node.labels()[self.anchor.depth()..]
                .iter()
                .all(|l| self.slots.contains(l.slot))
    }

    /// Nearest node of the component to `node`.
    pub fn project(&self, node: &TreeNodeId) -> TreeNodeId {
        if !self.anchor.is_prefix_of(node) {
            return self.anchor.clone();
        }
        let d = self.anchor.depth();
        let run = node.labels()[d..]
            .iter()
            .take_while(|l| self.slots.contains(l.slot))
            .count();
        node.prefix(d + run)
    }

    /// Whether the two components share a node; if not, the nearest pair.
    pub fn bridge(&self, other: &Component) -> Result<TreeNodeId, (TreeNodeId, TreeNodeId)> {
        let p = self.project(&other.anchor);
        if other.contains(&p) {
            Ok(p)
        } else {
            let q = other.project(&p);
            Err((p, q))
        }
    }

    pub fn meets(&self, other: &Component) -> bool {
        self.bridge(other).is_ok()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn l(s: u8, k: i64) -> SwitchLabel {
        SwitchLabel::new(Slot::new(s).unwrap(), k)
    }

    #[test]
    fn backtrack_cancels() {
        assert_eq!(reduce_word([l(2, 5), l(2, 0)]), TreeNodeId::root());
        assert_eq!(
            reduce_word([l(2, 5), l(1, 3), l(1, 0)]),
            TreeNodeId::from_reduced(vec![l(2, 5)]).unwrap()
        );
    }

    #[test]
    fn distinct_slots_do_not_cancel() {
        let w = vec![l(2, 5), l(1, 0), l(2, 0)];
        assert_eq!(reduce_word(w.clone()).labels(), &w[..]);
        // (1,0) after (2,5) is one of the node's children.
        let n = TreeNodeId::from_reduced(vec![l(2, 5)]).unwrap();
        assert!(n.is_child_label(l(1, 0)));
        assert!(!n.is_child_label(l(2, 0)));
    }

    #[test]
    fn parse_and_display() {
        let n: TreeNodeId = "(2,5),(1,0)".parse().unwrap();
        assert_eq!(n.to_string(), "(2,5),(1,0)");
        assert_eq!("ε".parse::<TreeNodeId>().unwrap(), TreeNodeId::root());
        assert!("(4,1)".parse::<TreeNodeId>().is_err());
        assert!(TreeNodeId::from_reduced(vec![l(1, 3), l(1, 0)]).is_err());
    }

    #[test]
    fn component_projection() {
        let c = Component::of(&TreeNodeId::root(), SlotSet::all_but(Slot::TWO));
        let inside: TreeNodeId = "(1,4),(3,-2)".parse().unwrap();
        assert!(c.contains(&inside));
        let outside: TreeNodeId = "(1,4),(2,7),(3,1)".parse().unwrap();
        assert!(!c.contains(&outside));
        assert_eq!(c.project(&outside), "(1,4)".parse().unwrap());
    }

    #[test]
    fn path_and_median() {
        let a: TreeNodeId = "(1,1),(2,2)".parse().unwrap();
        let b: TreeNodeId = "(1,1),(3,0)".parse().unwrap();
        assert_eq!(a.distance(&b), 2);
        assert_eq!(a.path_to(&b).len(), 3);
        assert_eq!(a.path_slots(&b), vec![Slot::TWO, Slot::THREE]);
        let c = TreeNodeId::root();
        assert_eq!(TreeNodeId::median(&a, &b, &c), "(1,1)".parse().unwrap());
    }
}
