mod common;

use std::collections::VecDeque;

use common::{h, m, meridian, hyperplane};
use cubemodel::contact::{contact_distance, Certificate};
use cubemodel::disk::{
    density_witness, in_iota_image, iota, nd_adjacent, nd_distance, nd_geodesic, rewrite_geodesic,
    rewrite_geodesic_traced, MeridianGraph, RewriteCase,
};
use cubemodel::hyperplane::{contact, HyperplaneId};
use cubemodel::model::{ball, VertexId};
use proptest::prelude::*;

fn graph_distance(g: &MeridianGraph, from: usize, to: usize) -> Option<u32> {
    let mut adj = vec![Vec::new(); g.vertices.len()];
    for &(a, b) in &g.edges {
        adj[a as usize].push(b as usize);
        adj[b as usize].push(a as usize);
    }
    let mut dist = vec![u32::MAX; g.vertices.len()];
    dist[from] = 0;
    let mut queue = VecDeque::from([from]);
    while let Some(u) = queue.pop_front() {
        for &w in &adj[u] {
            if dist[w] == u32::MAX {
                dist[w] = dist[u] + 1;
                queue.push_back(w);
            }
        }
    }
    (dist[to] != u32::MAX).then_some(dist[to])
}

#[test]
fn disk_distance_regression() {
    let (a, b) = (m("<ε|2>"), m("<(2,0),(1,0),(2,3)|2>"));
    let r = nd_distance(&a, &b, 1).unwrap();
    assert_eq!(r.value, 2);
    assert_eq!(r.certificate, Certificate::Symbolic);
    assert_eq!(nd_geodesic(&a, &b)[1], m("<ε|3>"));

    let g = MeridianGraph::of_ball(&ball(&VertexId::origin(), 6).unwrap());
    let ia = g.vertices.iter().position(|x| *x == a).unwrap();
    let ib = g.vertices.iter().position(|x| *x == b).unwrap();
    assert_eq!(graph_distance(&g, ia, ib), Some(2));
}

#[test]
fn disk_distance_is_bounded_by_ball_search() {
    let g = MeridianGraph::of_ball(&ball(&VertexId::origin(), 2).unwrap());
    for i in 0..g.vertices.len() {
        for j in i + 1..g.vertices.len() {
            let nd = nd_distance(&g.vertices[i], &g.vertices[j], 1).unwrap().value;
            let bfs = graph_distance(&g, i, j).expect("connected");
            assert!(nd <= u64::from(bfs), "{} {}", g.vertices[i], g.vertices[j]);
            assert_eq!(nd == 1, bfs == 1);
        }
    }
}

#[test]
fn rewrite_example() {
    let path: Vec<HyperplaneId> = ["T<ε|1>@0", "S[(2,5)]", "T<ε|3>@0"].map(h).to_vec();
    let r = rewrite_geodesic_traced(&path).unwrap();
    assert_eq!(r.path, ["T<ε|1>@0", "T<ε|2>@0", "T<ε|3>@0"].map(h).to_vec());
    assert_eq!(r.steps, vec![(1, RewriteCase::BothCross), (1, RewriteCase::TwistCrossed)]);
}

#[test]
fn rewrite_rejects_invalid_paths() {
    assert!(rewrite_geodesic(&[]).is_err());
    assert!(rewrite_geodesic(&["T<ε|1>@0", "T<ε|1>@2"].map(h)).is_err());
    assert!(rewrite_geodesic(&["T<ε|1>@3", "T<ε|2>@0"].map(h)).is_err());
}

#[test]
fn equal_meridians_are_rejected() {
    assert!(nd_adjacent(&m("<ε|1>"), &m("<ε|1>")).is_err());
    assert!(nd_distance(&m("<ε|1>"), &m("<ε|1>"), 1).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn embedding_preserves_small_distances(a in meridian(8), b in meridian(8)) {
        prop_assume!(a != b);
        let nd = nd_distance(&a, &b, 1).unwrap();
        let geo = nd_geodesic(&a, &b);
        prop_assert_eq!(geo.len() as u64, nd.value + 1);
        for w in geo.windows(2) {
            prop_assert!(nd_adjacent(&w[0], &w[1]).unwrap());
        }
        prop_assert_eq!(nd_distance(&b, &a, 1).unwrap().value, nd.value);
        if nd.value <= 3 {
            let c = contact_distance(&HyperplaneId::Twist(iota(&a)), &HyperplaneId::Twist(iota(&b)), 1).unwrap();
            prop_assert!(c.is_exact());
            prop_assert_eq!(c.value, nd.value);
        }
    }

    #[test]
    fn density_witness_touches(x in hyperplane(10)) {
        let w = HyperplaneId::Twist(density_witness(&x));
        prop_assert!(in_iota_image(&w));
        prop_assert!(w == x || contact(&x, &w).unwrap().is_edge());
    }

    #[test]
    fn contact_paths_rewrite_into_the_image(a in meridian(6), b in meridian(6)) {
        prop_assume!(a != b);
        let (ha, hb) = (HyperplaneId::Twist(iota(&a)), HyperplaneId::Twist(iota(&b)));
        let path = contact_distance(&ha, &hb, 1).unwrap().path;
        let out = rewrite_geodesic(&path).unwrap();
        prop_assert_eq!(out.len(), path.len());
        prop_assert!(out.iter().all(in_iota_image));
        for w in out.windows(2) {
            prop_assert!(contact(&w[0], &w[1]).unwrap().is_edge());
        }
    }
}
