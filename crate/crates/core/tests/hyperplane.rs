mod common;

use common::{h, hyperplane, m, v, vertex};
use cubemodel::hyperplane::{
    contact, distance, enumerate_parallel_copies, median, parallel_class, separates, separating_set, side,
    CombinatorialHyperplaneId, Contact, HyperplaneId, MeridianId, ParallelClassId, Side,
};
use cubemodel::model::{ball, bfs_distance, EdgeId, Move, VertexId};
use cubemodel::oracle::BallHyperplanes;
use proptest::prelude::*;

#[test]
fn distance_regressions() {
    assert_eq!(distance(&VertexId::origin(), &v("(2,5),(1,0);3,-1,4")), 15);
    assert_eq!(distance(&v("(1,0);0,0,0"), &v("(2,0);0,0,0")), 2);
    assert_eq!(median(&VertexId::origin(), &v("(2,5),(1,0);3,-1,4"), &v("(2,5);0,2,0")), v("(2,5);0,0,0"));
}

#[test]
fn metric_matches_bfs_in_ball() {
    let b = ball(&VertexId::origin(), 3).unwrap();
    let o = VertexId::origin();
    for x in b.vertices() {
        assert_eq!(distance(&o, x), u64::from(bfs_distance(&b, &o, x).unwrap()), "{x}");
    }
}

#[test]
fn contact_classification_examples() {
    let cases = [
        ("T<ε|1>@0", "T<ε|2>@0", Contact::Cross),
        ("T<ε|1>@0", "T<ε|1>@1", Contact::Osculate),
        ("T<ε|1>@0", "T<ε|1>@2", Contact::None),
        ("S[(2,5)]", "S[(2,6)]", Contact::None),
        ("S[(2,5)]", "S[(1,0)]", Contact::Osculate),
        ("T<ε|1>@0", "S[(2,5)]", Contact::Cross),
        ("T<ε|2>@4", "S[(2,5)]", Contact::Osculate),
        ("T<ε|2>@7", "S[(2,5)]", Contact::None),
    ];
    for (a, b, expected) in cases {
        assert_eq!(contact(&h(a), &h(b)).unwrap(), expected, "{a} {b}");
    }
}

#[test]
fn contact_matches_carrier_oracle_near_origin() {
    let b = ball(&VertexId::origin(), 4).unwrap();
    let bh = BallHyperplanes::new(&b);
    let inner = bh.interior(&b, 2);
    for (i, h1) in inner.iter().enumerate() {
        for h2 in &inner[i + 1..] {
            let expected = if bh.crosses(h1, h2) {
                Contact::Cross
            } else if bh.carriers_meet(h1, h2) {
                Contact::Osculate
            } else {
                Contact::None
            };
            assert_eq!(contact(h1, h2).unwrap(), expected, "{h1} {h2}");
        }
    }
}

#[test]
fn literals_canonicalise() {
    assert_eq!(m("<(2,5)|1>"), m("<ε|1>"));
    assert_ne!(m("<(2,5)|2>"), m("<ε|2>"));
    assert!("S[ε]".parse::<HyperplaneId>().is_err());
    assert!("<ε|4>".parse::<MeridianId>().is_err());
    assert!(contact(&h("S[(2,5)]"), &h("S[(2,5)]")).is_err());
}

#[test]
fn parallel_copies() {
    let c = CombinatorialHyperplaneId::new(h("S[(2,5)]"), Side::Minus);
    assert!(matches!(parallel_class(&c), ParallelClassId::SwitchClass { .. }));
    let copies = enumerate_parallel_copies(&c, 30);
    let distinct: std::collections::BTreeSet<_> = copies.iter().collect();
    assert_eq!(distinct.len(), 30);
    assert!(copies.iter().all(|x| parallel_class(x) == parallel_class(&c)));
}

proptest! {
    #[test]
    fn separating_set_counts_distance(a in vertex(10), b in vertex(10)) {
        let sep = separating_set(&a, &b);
        prop_assert_eq!(sep.len() as u64, distance(&a, &b));
        prop_assert_eq!(distance(&a, &b), distance(&b, &a));
        for hp in &sep {
            prop_assert!(separates(hp, &a, &b));
            prop_assert_ne!(side(hp, &a), side(hp, &b));
        }
    }

    #[test]
    fn walks_bound_distance(moves in prop::collection::vec(0..9usize, 0..12)) {
        let end = common::walk(&moves);
        prop_assert!(distance(&VertexId::origin(), &end) <= moves.len() as u64);
    }

    #[test]
    fn triangle_inequality(a in vertex(8), b in vertex(8), c in vertex(8)) {
        prop_assert!(distance(&a, &c) <= distance(&a, &b) + distance(&b, &c));
    }

    #[test]
    fn median_lies_on_geodesics(a in vertex(8), b in vertex(8), c in vertex(8)) {
        let mid = median(&a, &b, &c);
        for (x, y) in [(&a, &b), (&b, &c), (&a, &c)] {
            prop_assert_eq!(distance(x, &mid) + distance(&mid, y), distance(x, y));
        }
        prop_assert_eq!(median(&a, &a, &b), a.clone());
        prop_assert_eq!(median(&b, &a, &c), mid);
    }

    #[test]
    fn edge_crosses_only_its_dual(x in vertex(10), i in 0..9usize) {
        let mv = Move::ALL[i];
        let y = mv.apply(&x);
        let e = EdgeId::from_move(&x, mv);
        let dual = cubemodel::hyperplane::dual_hyperplane(&e);
        prop_assert_eq!(separating_set(&x, &y).into_iter().collect::<Vec<_>>(), vec![dual]);
    }

    #[test]
    fn contact_is_symmetric(a in hyperplane(8), b in hyperplane(8)) {
        prop_assume!(a != b);
        prop_assert_eq!(contact(&a, &b).unwrap(), contact(&b, &a).unwrap());
    }

    #[test]
    fn hyperplane_literal_round_trip(a in hyperplane(10)) {
        prop_assert_eq!(a.to_string().parse::<HyperplaneId>().unwrap(), a);
    }
}
