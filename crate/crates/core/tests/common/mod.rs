#![allow(dead_code)]

use std::collections::HashMap;

use lipkit::matcore::seeded_rng;
use lipkit::netbounds::{NetworkGraph, Node, NodeKind};
use rand::Rng;

/// Random single-source single-sink DAG on `n` nodes with dyadic node
/// Lipschitz constants, so path sums are exact in floating point.
pub fn random_dag(n: usize, seed: u64) -> (NetworkGraph, Vec<f64>) {
    assert!(n >= 2);
    let mut rng = seeded_rng(seed);
    let mut edges = std::collections::BTreeSet::new();
    for i in 1..n {
        edges.insert((rng.random_range(0..i), i));
    }
    for i in 0..n - 1 {
        edges.insert((i, rng.random_range(i + 1..n)));
    }
    for _ in 0..n {
        let a = rng.random_range(0..n - 1);
        let b = rng.random_range(a + 1..n);
        edges.insert((a, b));
    }
    let lips: Vec<f64> = (0..n).map(|i| if i == 0 { 1.0 } else { rng.random_range(1..=8) as f64 / 4.0 }).collect();
    let graph = dag_with_lips(n, &edges.into_iter().collect::<Vec<_>>(), &lips);
    (graph, lips)
}

pub fn dag_with_lips(n: usize, edges: &[(usize, usize)], lips: &[f64]) -> NetworkGraph {
    let id = |i: usize| format!("n{i}");
    let nodes = (0..n)
        .map(|i| Node::new(id(i), if i == 0 { NodeKind::Input } else { NodeKind::ScalarLip(lips[i]) }))
        .collect();
    let edges: Vec<(String, String)> = edges.iter().map(|&(a, b)| (id(a), id(b))).collect();
    NetworkGraph::new(nodes, &edges, HashMap::new(), &id(0), &id(n - 1)).expect("valid dag")
}

pub fn edges_of(g: &NetworkGraph) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..g.len() {
        for &j in g.successors(i) {
            let a: usize = g.node(i).id[1..].parse().unwrap();
            let b: usize = g.node(j).id[1..].parse().unwrap();
            out.push((a, b));
        }
    }
    out
}
