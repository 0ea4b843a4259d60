#![allow(dead_code)]

use cubemodel::hyperplane::{meridian_of, HyperplaneId, MeridianId};
use cubemodel::model::{Move, VertexId};
use cubemodel::tree::Slot;
use proptest::prelude::*;

pub fn walk(moves: &[usize]) -> VertexId {
    moves.iter().fold(VertexId::origin(), |v, &i| Move::ALL[i].apply(&v))
}

pub fn vertex(max_len: usize) -> impl Strategy<Value = VertexId> {
    prop::collection::vec(0..9usize, 0..=max_len).prop_map(|m| walk(&m))
}

pub fn slot() -> impl Strategy<Value = Slot> {
    (0..3usize).prop_map(Slot::from_index)
}

pub fn meridian(max_len: usize) -> impl Strategy<Value = MeridianId> {
    (vertex(max_len), slot()).prop_map(|(v, s)| meridian_of(&v.node, s))
}

/// Hyperplanes dual to an edge leaving a random vertex.
pub fn hyperplane(max_len: usize) -> impl Strategy<Value = HyperplaneId> {
    (vertex(max_len), 0..9usize).prop_map(|(v, i)| {
        let m = Move::ALL[i];
        cubemodel::hyperplane::dual_hyperplane(&cubemodel::model::EdgeId::from_move(&v, m))
    })
}

pub fn v(s: &str) -> VertexId {
    s.parse().expect("vertex literal")
}

pub fn h(s: &str) -> HyperplaneId {
    s.parse().expect("hyperplane literal")
}

pub fn m(s: &str) -> MeridianId {
    s.parse().expect("meridian literal")
}
