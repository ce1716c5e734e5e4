//! Seeded random instances.
//!
//! All generators draw from ChaCha8 seeded with `seed_from_u64`, so a given
//! spec always yields the same graph.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Parameters for one generated instance.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Tree { n: usize, seed: u64 },
    BlockGraph { block_orders: Vec<usize>, seed: u64 },
    Dag { n: usize, edge_prob: f64, seed: u64 },
}

pub fn generate(spec: &GenSpec) -> Result<Graph> {
    match spec {
        GenSpec::Tree { n, seed } => gen_tree(*n, *seed),
        GenSpec::BlockGraph { block_orders, seed } => gen_block_graph(block_orders, *seed),
        GenSpec::Dag { n, edge_prob, seed } => gen_dag(*n, *edge_prob, *seed),
    }
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Uniform random labeled tree via a random Prüfer sequence.
pub fn gen_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("tree needs at least one vertex".into()));
    }
    if n <= 2 {
        return Graph::new(n, false, (n == 2).then_some((1, 2)));
    }
    let mut rng = rng(seed);
    let code: Vec<usize> = (0..n - 2).map(|_| rng.random_range(1..=n)).collect();
    Graph::new(n, false, prufer_decode(n, &code))
}

fn prufer_decode(n: usize, code: &[usize]) -> Vec<(usize, usize)> {
    let mut degree = vec![1usize; n + 1];
    for &v in code {
        degree[v] += 1;
    }
    let mut leaves: BTreeSet<usize> = (1..=n).filter(|&v| degree[v] == 1).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &v in code {
        let leaf = leaves.pop_first().expect("a Prüfer step always has a leaf");
        edges.push((leaf, v));
        degree[v] -= 1;
        if degree[v] == 1 {
            leaves.insert(v);
        }
    }
    let last: Vec<usize> = leaves.into_iter().collect();
    edges.push((last[0], last[1]));
    edges
}

/// Cliques of the given orders glued at single cut vertices along a random
/// block-cut tree, then relabeled by a random permutation.
pub fn gen_block_graph(block_orders: &[usize], seed: u64) -> Result<Graph> {
    if block_orders.is_empty() {
        return Err(Error::Parameter("need at least one block".into()));
    }
    if let Some(&bad) = block_orders.iter().find(|&&k| k < 3) {
        return Err(Error::Parameter(format!("block order {bad} is below 3")));
    }
    let mut rng = rng(seed);
    let mut edges = Vec::new();
    let mut next = 1;
    for (i, &order) in block_orders.iter().enumerate() {
        let mut members = Vec::with_capacity(order);
        if i > 0 {
            // attach to any existing vertex
            members.push(rng.random_range(1..next));
        }
        while members.len() < order {
            members.push(next);
            next += 1;
        }
        for (x, &u) in members.iter().enumerate() {
            for &v in &members[x + 1..] {
                edges.push((u, v));
            }
        }
    }
    let n = next - 1;
    let mut label: Vec<usize> = (1..=n).collect();
    label.shuffle(&mut rng);
    Graph::new(n, false, edges.into_iter().map(|(u, v)| (label[u - 1], label[v - 1])))
}

/// Random DAG: a random topological order, each forward pair kept with
/// probability `edge_prob`, then repair edges between consecutive vertices
/// of the order until the graph is weakly connected.
pub fn gen_dag(n: usize, edge_prob: f64, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::Parameter("DAG needs at least one vertex".into()));
    }
    if !(edge_prob > 0.0 && edge_prob <= 1.0) {
        return Err(Error::Parameter(format!(
            "edge probability {edge_prob} is outside (0, 1]"
        )));
    }
    let mut rng = rng(seed);
    let mut order: Vec<usize> = (1..=n).collect();
    order.shuffle(&mut rng);
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(edge_prob) {
                edges.push((order[i], order[j]));
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    for i in 1..n {
        let (a, b) = (find(&mut parent, i - 1), find(&mut parent, i));
        if a != b {
            edges.push((order[i - 1], order[i]));
            parent[a] = b;
        }
    }
    Graph::new(n, true, edges)
}
