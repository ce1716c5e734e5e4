//! Brute-force ground truth.
//!
//! Nothing here touches [`crate::bitmat`], [`crate::lpp`] or
//! [`crate::paths`] algorithms: longest paths come from exhaustive DFS over
//! simple paths and walk counts from exact integer matrix powers.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::paths::{Path, PathSet};

/// Vertex limit for undirected graphs that are not trees.
pub const GENERAL_LIMIT: usize = 20;
/// Vertex limit for trees and directed graphs.
pub const SPARSE_LIMIT: usize = 64;
/// Largest exponent accepted by [`walk_count`].
pub const MAX_WALK_LENGTH: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub length: usize,
    pub paths: PathSet,
    /// `(i, j, k) → A^k_{i,j}` for whatever triples were requested.
    pub walk_counts: Option<BTreeMap<(usize, usize, usize), BigUint>>,
}

fn check_guard(g: &Graph) -> Result<()> {
    let tree_like = !g.is_directed() && g.edge_count() + 1 == g.n();
    let limit = if g.is_directed() || tree_like {
        SPARSE_LIMIT
    } else {
        GENERAL_LIMIT
    };
    if g.n() > limit {
        return Err(Error::Capacity(format!(
            "oracle limited to {limit} vertices for this graph, got {}",
            g.n()
        )));
    }
    Ok(())
}

struct Search<'g> {
    g: &'g Graph,
    on_path: Vec<bool>,
    stack: Vec<usize>,
    best: usize,
    found: PathSet,
}

impl Search<'_> {
    fn visit(&mut self, v: usize) {
        self.on_path[v - 1] = true;
        self.stack.push(v);
        let len = self.stack.len() - 1;
        if len > self.best {
            self.best = len;
            self.found = PathSet::new();
        }
        if len == self.best {
            let p = if self.g.is_directed() {
                Path(self.stack.clone())
            } else {
                Path::canonical(self.stack.clone())
            };
            self.found.insert(p);
        }
        for &w in self.g.neighbors(v) {
            if !self.on_path[w - 1] {
                self.visit(w);
            }
        }
        self.stack.pop();
        self.on_path[v - 1] = false;
    }
}

/// Longest simple path length and every path attaining it, by exhaustive
/// DFS from every start vertex.
pub fn oracle_longest(g: &Graph) -> Result<OracleReport> {
    check_guard(g)?;
    let mut search = Search {
        g,
        on_path: vec![false; g.n()],
        stack: Vec::new(),
        best: 0,
        found: PathSet::new(),
    };
    for v in g.vertices() {
        search.visit(v);
    }
    Ok(OracleReport {
        length: search.best,
        paths: search.found,
        walk_counts: None,
    })
}

/// Like [`oracle_longest`], also recording `A^k_{i,j}` for each triple.
pub fn oracle_with_walks(g: &Graph, triples: &[(usize, usize, usize)]) -> Result<OracleReport> {
    let mut report = oracle_longest(g)?;
    let mut counts = BTreeMap::new();
    for &(i, j, k) in triples {
        counts.insert((i, j, k), walk_count(g, i, j, k)?);
    }
    report.walk_counts = Some(counts);
    Ok(report)
}

fn integer_adjacency(g: &Graph) -> Vec<Vec<BigUint>> {
    let n = g.n();
    let mut a = vec![vec![BigUint::zero(); n]; n];
    for u in g.vertices() {
        for &v in g.neighbors(u) {
            a[u - 1][v - 1] = BigUint::one();
        }
    }
    a
}

fn multiply(x: &[Vec<BigUint>], y: &[Vec<BigUint>]) -> Vec<Vec<BigUint>> {
    let n = x.len();
    let mut out = vec![vec![BigUint::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if x[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !y[k][j].is_zero() {
                    out[i][j] += &x[i][k] * &y[k][j];
                }
            }
        }
    }
    out
}

/// `M^k` in exact integer arithmetic; `M^0 = I`.
pub fn integer_matrix_power(m: &[Vec<BigUint>], k: usize) -> Result<Vec<Vec<BigUint>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("integer matrix is not square".into()));
    }
    let mut acc: Vec<Vec<BigUint>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { BigUint::one() } else { BigUint::zero() }).collect())
        .collect();
    for _ in 0..k {
        acc = multiply(&acc, m);
    }
    Ok(acc)
}

/// Number of walks of length `k` from `i` to `j` (1-based ids).
pub fn walk_count(g: &Graph, i: usize, j: usize, k: usize) -> Result<BigUint> {
    for v in [i, j] {
        if v == 0 || v > g.n() {
            return Err(Error::BadVertex { vertex: v, n: g.n() });
        }
    }
    if k > MAX_WALK_LENGTH {
        return Err(Error::Capacity(format!(
            "walk length {k} exceeds {MAX_WALK_LENGTH}"
        )));
    }
    // one row of A^k suffices: row vector times A, k times
    let a = integer_adjacency(g);
    let n = g.n();
    let mut row = vec![BigUint::zero(); n];
    row[i - 1] = BigUint::one();
    for _ in 0..k {
        let mut next = vec![BigUint::zero(); n];
        for (u, c) in row.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for v in 0..n {
                if !a[u][v].is_zero() {
                    next[v] += c;
                }
            }
        }
        row = next;
    }
    Ok(row.swap_remove(j - 1))
}

/// `A^k` of the graph in exact integer arithmetic.
pub fn walk_matrix(g: &Graph, k: usize) -> Result<Vec<Vec<BigUint>>> {
    integer_matrix_power(&integer_adjacency(g), k)
}
