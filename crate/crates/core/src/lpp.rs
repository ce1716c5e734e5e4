//! Longest-path lengths from booleanized adjacency powers.
//!
//! Each class has a monotone predicate on the exponent whose threshold
//! encodes the answer:
//!
//! | class        | predicate `p(m)`             | answer          |
//! |--------------|------------------------------|-----------------|
//! | tree         | `β(A^{m+1}) = β(A^{m-1})`    | threshold       |
//! | DAG          | `β(A^m) = 0`                 | threshold − 1   |
//! | block graph  | `β(A^m) = J`                 | chain length 𝓛  |
//!
//! The threshold is found by binary search, probing each exponent with a
//! fresh binary exponentiation.

use alloc::format;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{Graph, GraphClass};
use crate::paths::{self, Chain, PowerCache};

/// Outcome of [`binary_search_min_true`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Threshold {
    Exact(usize),
    /// `(lo, hi)` with `hi - lo <= epsilon` and `lo <= t <= hi`.
    Interval(usize, usize),
}

impl Threshold {
    fn map(self, f: impl Fn(usize) -> usize) -> Threshold {
        match self {
            Threshold::Exact(t) => Threshold::Exact(f(t)),
            Threshold::Interval(lo, hi) => Threshold::Interval(f(lo), f(hi)),
        }
    }
}

/// Smallest `t` in `[lo, hi]` with `pred(t)`, for a predicate that is false
/// below `t` and true from `t` on.
///
/// With `epsilon > 1` the search halves the bracket until its width is at
/// most `epsilon` and returns the bracket instead.
pub fn binary_search_min_true(
    lo: usize,
    hi: usize,
    mut pred: impl FnMut(usize) -> bool,
    epsilon: usize,
) -> Result<Threshold> {
    if epsilon == 0 {
        return Err(Error::Parameter("epsilon must be at least 1".into()));
    }
    if lo > hi {
        return Err(Error::Parameter(format!("empty search range [{lo}, {hi}]")));
    }
    if !pred(hi) {
        return Err(Error::NoThreshold { hi });
    }
    let (mut l, mut h) = (lo, hi);
    if epsilon == 1 {
        while l < h {
            let m = l + (h - l) / 2;
            if pred(m) {
                h = m;
            } else {
                l = m + 1;
            }
        }
        return Ok(Threshold::Exact(l));
    }
    while h - l > epsilon {
        let m = l + (h - l) / 2;
        if pred(m) {
            h = m;
        } else {
            l = m;
        }
    }
    Ok(Threshold::Interval(l, h))
}

/// Result of a longest-path length computation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LppResult {
    pub graph_class: GraphClass,
    /// Longest-path length. In interval mode this is the interval's upper
    /// bound.
    pub length: usize,
    /// Number of blocks on the longest chain (block-like classes only).
    pub chain_length: Option<usize>,
    /// Present iff the search ran with `epsilon > 1`.
    pub interval: Option<(usize, usize)>,
}

impl LppResult {
    fn from_threshold(graph_class: GraphClass, t: Threshold, chain_length: Option<usize>) -> Self {
        match t {
            Threshold::Exact(length) => LppResult {
                graph_class,
                length,
                chain_length,
                interval: None,
            },
            Threshold::Interval(lo, hi) => LppResult {
                graph_class,
                length: hi,
                chain_length,
                interval: Some((lo, hi)),
            },
        }
    }

    fn exact(graph_class: GraphClass, length: usize, chain_length: Option<usize>, epsilon: usize) -> Self {
        LppResult {
            graph_class,
            length,
            chain_length,
            interval: (epsilon > 1).then_some((length, length)),
        }
    }
}

pub(crate) fn require(
    g: &Graph,
    operation: &'static str,
    accept: impl Fn(GraphClass) -> bool,
) -> Result<GraphClass> {
    let class = g.classify();
    if accept(class) {
        Ok(class)
    } else {
        Err(Error::Class {
            operation,
            found: class,
        })
    }
}

/// Tree predicate: `β(A^{m+1}) = β(A^{m-1})`, for `m >= 1`.
pub fn tree_stable(a: &BitMatrix, m: usize) -> bool {
    assert!(m >= 1, "tree predicate is defined for m >= 1");
    a.bool_power(m as u64 + 1) == a.bool_power(m as u64 - 1)
}

/// DAG predicate: `β(A^m) = 0`.
pub fn dag_vanishes(a: &BitMatrix, m: usize) -> bool {
    a.bool_power(m as u64).is_zero()
}

/// Block graph predicate: `β(A^m) = J`.
pub fn chain_saturates(a: &BitMatrix, m: usize) -> bool {
    a.bool_power(m as u64).is_all_ones()
}

pub fn tree_diameter(g: &Graph) -> Result<LppResult> {
    tree_diameter_within(g, 1)
}

/// Tree diameter, or an interval of width at most `epsilon` around it.
pub fn tree_diameter_within(g: &Graph, epsilon: usize) -> Result<LppResult> {
    let class = require(g, "tree_diameter", |c| c == GraphClass::Tree)?;
    if g.edge_count() == 0 {
        return Ok(LppResult::exact(class, 0, None, epsilon));
    }
    let a = g.adjacency_matrix();
    let t = binary_search_min_true(1, g.edge_count(), |m| tree_stable(&a, m), epsilon)?;
    Ok(LppResult::from_threshold(class, t, None))
}

/// Least `k >= 1` with `β(A^k) = 0`, i.e. the nilpotency index of `A`.
pub fn dag_min_zero_power(g: &Graph) -> Result<usize> {
    require(g, "dag_min_zero_power", |c| c == GraphClass::Dag)?;
    let a = g.adjacency_matrix();
    match binary_search_min_true(1, g.n().max(1), |m| dag_vanishes(&a, m), 1)? {
        Threshold::Exact(t) => Ok(t),
        Threshold::Interval(..) => unreachable!("exact search"),
    }
}

pub fn dag_longest_length(g: &Graph) -> Result<LppResult> {
    dag_longest_length_within(g, 1)
}

/// Longest path of a DAG: one less than the least vanishing power.
pub fn dag_longest_length_within(g: &Graph, epsilon: usize) -> Result<LppResult> {
    let class = require(g, "dag_longest_length", |c| c == GraphClass::Dag)?;
    let a = g.adjacency_matrix();
    let t = binary_search_min_true(1, g.n().max(1), |m| dag_vanishes(&a, m), epsilon)?;
    Ok(LppResult::from_threshold(class, t.map(|t| t - 1), None))
}

/// Number of blocks on a longest chain. Equals the diameter.
pub fn longest_chain_length(g: &Graph) -> Result<usize> {
    match longest_chain_within(g, 1)? {
        Threshold::Exact(l) => Ok(l),
        Threshold::Interval(..) => unreachable!("exact search"),
    }
}

fn longest_chain_within(g: &Graph, epsilon: usize) -> Result<Threshold> {
    let class = require(g, "longest_chain_length", GraphClass::is_block_like)?;
    if class == GraphClass::CompleteGraph {
        return Ok(Threshold::Exact(1));
    }
    let a = g.adjacency_matrix();
    binary_search_min_true(1, g.edge_count(), |m| chain_saturates(&a, m), epsilon)
}

pub fn uniform_block_lp(g: &Graph) -> Result<LppResult> {
    uniform_block_lp_within(g, 1)
}

/// `𝓛 · (ω − 1)` for uniform block graphs.
///
/// With `epsilon > 1` the chain length is bracketed with width
/// `max(1, epsilon / (ω − 1))` so the scaled interval stays within
/// `epsilon`.
pub fn uniform_block_lp_within(g: &Graph, epsilon: usize) -> Result<LppResult> {
    let class = require(g, "uniform_block_lp", |c| {
        matches!(c, GraphClass::UniformBlockGraph | GraphClass::CompleteGraph)
    })?;
    if class == GraphClass::CompleteGraph {
        return Ok(LppResult::exact(class, g.n() - 1, Some(1), epsilon));
    }
    let omega = g.block_decomposition()?.omega;
    let scale = omega - 1;
    let chain_eps = if epsilon == 1 { 1 } else { (epsilon / scale).max(1) };
    let t = longest_chain_within(g, chain_eps)?;
    let mut result = LppResult::from_threshold(class, t.map(|l| l * scale), None);
    result.chain_length = match t {
        Threshold::Exact(l) => Some(l),
        Threshold::Interval(_, hi) => Some(hi),
    };
    if epsilon > 1 && result.interval.is_none() {
        result.interval = Some((result.length, result.length));
    }
    Ok(result)
}

pub fn block_lp(g: &Graph) -> Result<LppResult> {
    block_lp_within(g, 1)
}

/// Longest path of a block graph: the heaviest chain's `Σ(|B| − 1)`.
///
/// Every heaviest chain is also re-measured with the distance-layer sum
/// [`chain_layer_sum`]; any disagreement is a [`Error::Consistency`] fault.
/// Always exact; `epsilon > 1` only adds the degenerate interval.
pub fn block_lp_within(g: &Graph, epsilon: usize) -> Result<LppResult> {
    let class = require(g, "block_lp", GraphClass::is_block_like)?;
    if class == GraphClass::CompleteGraph {
        return Ok(LppResult::exact(class, g.n() - 1, Some(1), epsilon));
    }
    let ctx = paths::BlockContext::new(g)?;
    let (weight, chains) = ctx.heaviest_chains()?;
    for chain in &chains {
        let alpha = chain.start_vertex();
        let sum = chain_layer_sum(ctx.powers(), chain, alpha);
        if sum != weight as i64 {
            return Err(Error::Consistency(format!(
                "layer sum {sum} from vertex {alpha} disagrees with chain weight {weight} for {chain:?}"
            )));
        }
    }
    Ok(LppResult::exact(class, weight, Some(ctx.chain_length()), epsilon))
}

/// `Σ_{n=1..k} Σ_{i ∈ B_n, i ≠ α} β(A^n)_{α,i} − β(A^{n−1})_{α,i}` over the
/// chain's blocks `B_1..B_k`, with `α` in `B_1`.
///
/// Each inner sum counts the vertices of `B_n` at distance exactly `n` from
/// `α`, which is `|B_n| − 1` along a chain.
pub fn chain_layer_sum(powers: &PowerCache, chain: &Chain, alpha: usize) -> i64 {
    let a = alpha - 1;
    let mut sum = 0i64;
    for (idx, block) in chain.blocks.iter().enumerate() {
        let n = idx + 1;
        let cur = powers.get(n);
        let prev = powers.get(n - 1);
        for &v in block {
            if v == alpha {
                continue;
            }
            sum += cur.get(a, v - 1) as i64 - prev.get(a, v - 1) as i64;
        }
    }
    sum
}

/// Dispatches to the class's length routine.
pub fn longest_path_length(g: &Graph, epsilon: usize) -> Result<LppResult> {
    match g.classify() {
        GraphClass::Tree => tree_diameter_within(g, epsilon),
        GraphClass::Dag => dag_longest_length_within(g, epsilon),
        GraphClass::UniformBlockGraph => {
            let mut r = uniform_block_lp_within(g, epsilon)?;
            if epsilon == 1 {
                // the general route must agree, including its layer-sum check
                let general = block_lp(g)?;
                if general.length != r.length {
                    return Err(Error::Consistency(format!(
                        "uniform length {} differs from chain-sum length {}",
                        r.length, general.length
                    )));
                }
                r.chain_length = general.chain_length;
            }
            Ok(r)
        }
        GraphClass::BlockGraph | GraphClass::CompleteGraph => block_lp_within(g, epsilon),
        other => Err(Error::Class {
            operation: "longest_path_length",
            found: other,
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec::Vec;
    use crate::graph::tests::{b2, complete, directed, path, undirected};

    #[test]
    fn search_examples() {
        assert_eq!(
            binary_search_min_true(0, 10, |x| x >= 7, 1).unwrap(),
            Threshold::Exact(7)
        );
        assert_eq!(
            binary_search_min_true(0, 10, |_| true, 1).unwrap(),
            Threshold::Exact(0)
        );
        assert_eq!(
            binary_search_min_true(0, 16, |x| x >= 7, 4).unwrap(),
            Threshold::Interval(4, 8)
        );
        assert_eq!(
            binary_search_min_true(0, 10, |x| x >= 11, 1).unwrap_err(),
            Error::NoThreshold { hi: 10 }
        );
        assert!(binary_search_min_true(0, 10, |_| true, 0).is_err());
    }

    #[test]
    fn search_interval_brackets_threshold() {
        for hi in 1..40 {
            for t in 0..=hi {
                for eps in 1..6 {
                    match binary_search_min_true(0, hi, |x| x >= t, eps).unwrap() {
                        Threshold::Exact(v) => assert_eq!(v, t),
                        Threshold::Interval(l, h) => {
                            assert!(h - l <= eps && l <= t && t <= h, "{hi} {t} {eps}: {l} {h}")
                        }
                    }
                }
            }
        }
    }

    fn star(leaves: usize) -> Graph {
        undirected(leaves + 1, &(2..=leaves + 1).map(|v| (1, v)).collect::<Vec<_>>())
    }

    fn triangle_path() -> Graph {
        // K3 {1,2,3} - K3 {3,4,5} - K3 {5,6,7}
        undirected(
            7,
            &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (4, 5), (5, 6), (5, 7), (6, 7)],
        )
    }

    fn k3_k4() -> Graph {
        undirected(
            6,
            &[(1, 2), (1, 3), (2, 3), (3, 4), (3, 5), (3, 6), (4, 5), (4, 6), (5, 6)],
        )
    }

    fn triangle_star() -> Graph {
        // three K3 sharing vertex 1
        undirected(
            7,
            &[(1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5), (1, 6), (1, 7), (6, 7)],
        )
    }

    #[test]
    fn tree_examples() {
        assert_eq!(tree_diameter(&path(2)).unwrap().length, 1);
        assert_eq!(tree_diameter(&path(5)).unwrap().length, 4);
        assert_eq!(tree_diameter(&star(3)).unwrap().length, 2);
        assert_eq!(tree_diameter(&path(1)).unwrap().length, 0);
        assert!(matches!(tree_diameter(&b2()), Err(Error::Class { .. })));
    }

    #[test]
    fn dag_examples() {
        assert_eq!(dag_longest_length(&directed(3, &[(1, 2), (2, 3)])).unwrap().length, 2);
        let diamond = directed(4, &[(1, 2), (1, 3), (2, 4), (3, 4)]);
        assert_eq!(dag_longest_length(&diamond).unwrap().length, 2);
        assert_eq!(dag_min_zero_power(&diamond).unwrap(), 3);
        assert_eq!(dag_longest_length(&directed(1, &[])).unwrap().length, 0);
        assert!(matches!(dag_longest_length(&path(3)), Err(Error::Class { .. })));
    }

    #[test]
    fn chain_examples() {
        assert_eq!(longest_chain_length(&b2()).unwrap(), 2);
        assert_eq!(longest_chain_length(&triangle_path()).unwrap(), 3);
        assert_eq!(longest_chain_length(&complete(4)).unwrap(), 1);
        assert!(longest_chain_length(&path(4)).is_err());
    }

    #[test]
    fn uniform_examples() {
        let r = uniform_block_lp(&b2()).unwrap();
        assert_eq!((r.length, r.chain_length), (4, Some(2)));
        assert_eq!(uniform_block_lp(&triangle_path()).unwrap().length, 6);
        assert_eq!(uniform_block_lp(&complete(4)).unwrap().length, 3);
        assert!(uniform_block_lp(&k3_k4()).is_err());
    }

    #[test]
    fn block_examples() {
        assert_eq!(block_lp(&k3_k4()).unwrap().length, 5);
        assert_eq!(block_lp(&b2()).unwrap().length, 4);
        assert_eq!(block_lp(&triangle_star()).unwrap().length, 4);
        assert_eq!(block_lp(&complete(5)).unwrap().length, 4);
    }

    #[test]
    fn mixed_star_uses_heaviest_chain() {
        // K3 {1,2,3}, K3 {1,4,5}, K4 {1,6,7,8} sharing vertex 1
        let g = undirected(
            8,
            &[
                (1, 2), (1, 3), (2, 3), (1, 4), (1, 5), (4, 5),
                (1, 6), (1, 7), (1, 8), (6, 7), (6, 8), (7, 8),
            ],
        );
        let r = block_lp(&g).unwrap();
        assert_eq!((r.length, r.chain_length), (5, Some(2)));
    }

    #[test]
    fn epsilon_modes() {
        // diameter-7 tree with 16 edges: path 1..8 plus nine leaves on vertex 4
        let mut edges: Vec<_> = (1..8).map(|i| (i, i + 1)).collect();
        edges.extend((9..=17).map(|v| (4, v)));
        let g = undirected(17, &edges);
        let r = tree_diameter_within(&g, 4).unwrap();
        assert_eq!(r.interval, Some((4, 8)));
        assert_eq!(tree_diameter(&g).unwrap().length, 7);

        let r = uniform_block_lp_within(&triangle_path(), 2).unwrap();
        let (lo, hi) = r.interval.unwrap();
        assert!(lo <= 6 && 6 <= hi && hi - lo <= 2);

        let r = block_lp_within(&k3_k4(), 3).unwrap();
        assert_eq!(r.interval, Some((5, 5)));
    }

    #[test]
    fn dispatch() {
        assert_eq!(longest_path_length(&b2(), 1).unwrap().length, 4);
        assert_eq!(longest_path_length(&k3_k4(), 1).unwrap().length, 5);
        let c4 = undirected(4, &[(1, 2), (2, 3), (3, 4), (1, 4)]);
        assert!(matches!(
            longest_path_length(&c4, 1),
            Err(Error::Class { found: GraphClass::Other, .. })
        ));
    }
}
