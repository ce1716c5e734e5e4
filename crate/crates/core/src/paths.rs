//! Exact-distance pairs, chain extraction, longest-path enumeration and
//! closed-form path counts.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::bitmat::BitMatrix;
use crate::error::{Error, Result};
use crate::graph::{BlockDecomposition, Graph, GraphClass};
use crate::lpp;

/// Default cap on the number of paths a block-graph enumeration may return.
pub const DEFAULT_PATH_CAP: u128 = 1_000_000;

/// A simple path as a vertex sequence. Undirected paths are stored in
/// canonical orientation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path(pub Vec<usize>);

impl Path {
    /// Lexicographically smaller of the sequence and its reverse.
    pub fn canonical(mut vertices: Vec<usize>) -> Path {
        if vertices.iter().rev().lt(vertices.iter()) {
            vertices.reverse();
        }
        Path(vertices)
    }

    pub fn vertices(&self) -> &[usize] {
        &self.0
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.0.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Distinct vertices, consecutive ones joined by an edge of `g`.
    pub fn is_valid_in(&self, g: &Graph) -> bool {
        let distinct: BTreeSet<_> = self.0.iter().collect();
        distinct.len() == self.0.len()
            && self.0.iter().all(|&v| v >= 1 && v <= g.n())
            && self.0.windows(2).all(|w| g.has_edge(w[0], w[1]))
    }
}

/// Sorted, duplicate-free set of equal-length paths.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PathSet {
    paths: BTreeSet<Path>,
}

impl PathSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, path: Path) -> bool {
        self.paths.insert(path)
    }

    pub fn count(&self) -> usize {
        self.paths.len()
    }

    pub fn is_empty(&self) -> bool {
        self.paths.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Path> {
        self.paths.iter()
    }

    pub fn contains(&self, p: &Path) -> bool {
        self.paths.contains(p)
    }

    /// Common length of the member paths, if any.
    pub fn length(&self) -> Option<usize> {
        self.paths.first().map(Path::len)
    }
}

impl FromIterator<Path> for PathSet {
    fn from_iter<I: IntoIterator<Item = Path>>(iter: I) -> Self {
        PathSet {
            paths: iter.into_iter().collect(),
        }
    }
}

impl<'a> IntoIterator for &'a PathSet {
    type Item = &'a Path;
    type IntoIter = alloc::collections::btree_set::Iter<'a, Path>;
    fn into_iter(self) -> Self::IntoIter {
        self.paths.iter()
    }
}

/// A sequence of blocks where consecutive blocks share exactly one vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Chain {
    /// Sorted vertex sets.
    pub blocks: Vec<Vec<usize>>,
    /// `joints[i]` is the vertex shared by `blocks[i]` and `blocks[i + 1]`.
    pub joints: Vec<usize>,
}

impl Chain {
    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// `Σ(|B| − 1)`, the longest path through the chain.
    pub fn weight(&self) -> usize {
        self.blocks.iter().map(|b| b.len() - 1).sum()
    }

    fn reversed(&self) -> Chain {
        Chain {
            blocks: self.blocks.iter().rev().cloned().collect(),
            joints: self.joints.iter().rev().copied().collect(),
        }
    }

    /// Orientation with the lexicographically smaller block sequence.
    fn canonical(self) -> Chain {
        let rev = self.reversed();
        if rev.blocks < self.blocks {
            rev
        } else {
            self
        }
    }

    /// Smallest vertex of the first block that is not its exit joint.
    pub fn start_vertex(&self) -> usize {
        let exit = self.joints.first().copied();
        *self.blocks[0]
            .iter()
            .find(|&&v| Some(v) != exit)
            .expect("blocks have at least two vertices")
    }

    pub fn invariants_hold(&self) -> bool {
        if self.blocks.is_empty() || self.joints.len() + 1 != self.blocks.len() {
            return false;
        }
        for i in 0..self.blocks.len() {
            for j in i + 1..self.blocks.len() {
                let shared: Vec<_> = self.blocks[i]
                    .iter()
                    .filter(|v| self.blocks[j].binary_search(v).is_ok())
                    .copied()
                    .collect();
                let ok = if j == i + 1 {
                    shared == [self.joints[i]]
                } else {
                    shared.is_empty()
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }
}

/// `β(A^0) .. β(A^k)` computed by successive products.
#[derive(Debug, Clone)]
pub struct PowerCache {
    powers: Vec<BitMatrix>,
}

impl PowerCache {
    pub fn new(a: &BitMatrix, upto: usize) -> Self {
        let mut powers = Vec::with_capacity(upto + 1);
        powers.push(BitMatrix::identity(a.n()));
        for k in 1..=upto {
            let next = if k == 1 {
                a.clone()
            } else {
                powers[k - 1].bool_product(a).expect("same dimension")
            };
            powers.push(next);
        }
        PowerCache { powers }
    }

    pub fn get(&self, k: usize) -> &BitMatrix {
        &self.powers[k]
    }

    pub fn max_power(&self) -> usize {
        self.powers.len() - 1
    }

    /// Entry of `β(A^k)`; negative exponents read as the zero matrix.
    fn entry(&self, k: isize, i: usize, j: usize) -> bool {
        k >= 0 && self.powers[k as usize].get(i, j)
    }
}

fn class_family(cls: GraphClass) -> u8 {
    match cls {
        GraphClass::Tree => 0,
        GraphClass::Dag => 1,
        GraphClass::UniformBlockGraph | GraphClass::BlockGraph | GraphClass::CompleteGraph => 2,
        GraphClass::Other => 3,
    }
}

/// Vertex pairs at path distance exactly `n`.
///
/// - trees: `β(A^n) − β(A^{n−2})`, unordered pairs `i < j`;
/// - block-like graphs: `β(A^n) − β(A^{n−1})`, unordered pairs `i < j`;
/// - DAGs: ordered pairs with `β(A^n) = 1`.
pub fn exact_distance_pairs(g: &Graph, cls: GraphClass, n: usize) -> Result<Vec<(usize, usize)>> {
    let actual = g.classify();
    if class_family(actual) != class_family(cls) || cls == GraphClass::Other {
        return Err(Error::Class {
            operation: "exact_distance_pairs",
            found: actual,
        });
    }
    if n == 0 {
        return Err(Error::Parameter("distance must be at least 1".into()));
    }
    let a = g.adjacency_matrix();
    let cur = a.bool_power(n as u64);
    let mut out = Vec::new();
    match class_family(cls) {
        1 => {
            for i in 0..g.n() {
                out.extend(cur.row_ones(i).map(|j| (i + 1, j + 1)));
            }
        }
        fam => {
            let back = if fam == 0 { 2 } else { 1 };
            let prev = (n >= back).then(|| a.bool_power((n - back) as u64));
            for i in 0..g.n() {
                for j in cur.row_ones(i).filter(|&j| j > i) {
                    if !prev.as_ref().is_some_and(|p| p.get(i, j)) {
                        out.push((i + 1, j + 1));
                    }
                }
            }
        }
    }
    Ok(out)
}

/// Block-graph state shared by chain extraction, enumeration and the
/// length computation: the decomposition, `𝓛` and `β(A^0..A^𝓛)`.
pub(crate) struct BlockContext<'g> {
    g: &'g Graph,
    blocks: BlockDecomposition,
    chain_length: usize,
    powers: PowerCache,
}

impl<'g> BlockContext<'g> {
    pub(crate) fn new(g: &'g Graph) -> Result<Self> {
        let class = lpp::require(g, "block chain extraction", |c| {
            matches!(c, GraphClass::BlockGraph | GraphClass::UniformBlockGraph)
        })?;
        debug_assert!(class.is_block_like());
        let chain_length = lpp::longest_chain_length(g)?;
        let powers = PowerCache::new(&g.adjacency_matrix(), chain_length);
        Ok(BlockContext {
            g,
            blocks: g.block_decomposition()?,
            chain_length,
            powers,
        })
    }

    pub(crate) fn chain_length(&self) -> usize {
        self.chain_length
    }

    pub(crate) fn powers(&self) -> &PowerCache {
        &self.powers
    }

    /// Distance between distinct vertices: the least `n` with
    /// `β(A^n) − β(A^{n−1}) = 1`.
    fn distance(&self, u: usize, v: usize) -> usize {
        (1..=self.chain_length)
            .find(|&n| self.powers.get(n).get(u - 1, v - 1))
            .expect("every pair is within the diameter")
    }

    /// The unique shortest `from`–`to` path, rebuilt backwards: the
    /// predecessor of the current vertex at step `m` is the neighbor at
    /// distance exactly `m − 1` from `from`.
    fn shortest_path(&self, from: usize, to: usize) -> Result<Vec<usize>> {
        let d = self.distance(from, to);
        let s = from - 1;
        let mut rev = vec![to];
        let mut cur = to;
        for m in (1..=d).rev() {
            let layer = m as isize - 1;
            let mut preds = self.g.neighbors(cur).iter().copied().filter(|&k| {
                if layer == 0 {
                    k == from
                } else {
                    k != from
                        && self.powers.entry(layer, s, k - 1)
                        && !self.powers.entry(layer - 1, s, k - 1)
                }
            });
            let k = preds.next().ok_or_else(|| {
                Error::Consistency(format!("no predecessor for {cur} on the {from}-{to} geodesic"))
            })?;
            if preds.next().is_some() {
                return Err(Error::Consistency(format!(
                    "shortest {from}-{to} path is not unique at {cur}"
                )));
            }
            rev.push(k);
            cur = k;
        }
        rev.reverse();
        Ok(rev)
    }

    /// Maps each edge of a geodesic to its block `N(u) ∩ N(v) ∪ {u, v}`.
    fn chain_of_path(&self, path: &[usize]) -> Chain {
        let blocks = path
            .windows(2)
            .map(|w| {
                let (u, v) = (w[0], w[1]);
                let mut b: Vec<usize> = self
                    .g
                    .neighbors(u)
                    .iter()
                    .filter(|x| self.g.neighbors(v).binary_search(x).is_ok())
                    .copied()
                    .collect();
                b.push(u);
                b.push(v);
                b.sort_unstable();
                b
            })
            .collect();
        let joints = path[1..path.len() - 1].to_vec();
        Chain { blocks, joints }.canonical()
    }

    fn chain_between(&self, from: usize, to: usize) -> Result<Chain> {
        Ok(self.chain_of_path(&self.shortest_path(from, to)?))
    }

    fn diametral_pairs(&self) -> Vec<(usize, usize)> {
        let (cur, prev) = (
            self.powers.get(self.chain_length),
            self.powers.get(self.chain_length - 1),
        );
        let mut out = Vec::new();
        for i in 0..self.g.n() {
            for j in cur.row_ones(i).filter(|&j| j > i) {
                if !prev.get(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    /// Chains of maximum weight `Σ(|B| − 1)`, one per unordered block
    /// sequence. They always run between two leaf blocks, so one non-cut
    /// representative per leaf block is enough.
    pub(crate) fn heaviest_chains(&self) -> Result<(usize, Vec<Chain>)> {
        let reps: Vec<usize> = self
            .blocks
            .blocks
            .iter()
            .filter(|b| b.iter().filter(|&&v| self.blocks.is_cut_vertex(v)).count() == 1)
            .map(|b| {
                *b.iter()
                    .find(|&&v| !self.blocks.is_cut_vertex(v))
                    .expect("leaf block has a non-cut vertex")
            })
            .collect();
        let mut best = 0;
        let mut chains = BTreeSet::new();
        for (x, &u) in reps.iter().enumerate() {
            for &v in &reps[x + 1..] {
                let chain = self.chain_between(u, v)?;
                let w = chain.weight();
                if w > best {
                    best = w;
                    chains.clear();
                }
                if w == best {
                    chains.insert(chain);
                }
            }
        }
        Ok((best, chains.into_iter().collect()))
    }
}

/// Chain of the least diametral pair.
pub fn generate_longest_chain(g: &Graph) -> Result<Chain> {
    let ctx = BlockContext::new(g)?;
    let (a, b) = ctx.diametral_pairs()[0];
    ctx.chain_between(a, b)
}

/// Every chain with `𝓛` blocks, each once up to reversal.
pub fn generate_all_longest_chains(g: &Graph) -> Result<Vec<Chain>> {
    let ctx = BlockContext::new(g)?;
    let mut out = BTreeSet::new();
    for (a, b) in ctx.diametral_pairs() {
        out.insert(ctx.chain_between(a, b)?);
    }
    Ok(out.into_iter().collect())
}

/// Every chain whose weight equals the longest-path length.
pub fn generate_heaviest_chains(g: &Graph) -> Result<Vec<Chain>> {
    Ok(BlockContext::new(g)?.heaviest_chains()?.1)
}

/// Every longest path of a tree.
///
/// Endpoints are the pairs with `β(A^𝔇) − β(A^{𝔇−2}) = 1`. Each path is
/// rebuilt from its far end: the predecessor `k` of the current vertex `j`
/// at step `n` is the unique neighbor of `j` with
/// `β(A^{n−1})_{i,k} − β(A^{n−3})_{i,k} = 1`.
pub fn tree_all_longest_paths(g: &Graph) -> Result<PathSet> {
    lpp::require(g, "tree_all_longest_paths", |c| c == GraphClass::Tree)?;
    let d = lpp::tree_diameter(g)?.length;
    if d == 0 {
        return Ok(PathSet::from_iter([Path(vec![1])]));
    }
    let powers = PowerCache::new(&g.adjacency_matrix(), d);
    let top = powers.get(d);
    let mut set = PathSet::new();
    for i in 0..g.n() {
        for j in top.row_ones(i).filter(|&j| j > i) {
            if powers.entry(d as isize - 2, i, j) {
                continue;
            }
            let mut rev = vec![j + 1];
            let mut cur = j + 1;
            for n in (1..=d as isize).rev() {
                let mut preds = g.neighbors(cur).iter().copied().filter(|&k| {
                    powers.entry(n - 1, i, k - 1) && !powers.entry(n - 3, i, k - 1)
                });
                let k = preds.next().ok_or_else(|| {
                    Error::Consistency(format!("tree path {}..{} has no predecessor at {cur}", i + 1, j + 1))
                })?;
                if preds.next().is_some() {
                    return Err(Error::Consistency(format!(
                        "tree path {}..{} branches at {cur}",
                        i + 1,
                        j + 1
                    )));
                }
                rev.push(k);
                cur = k;
            }
            rev.reverse();
            set.insert(Path::canonical(rev));
        }
    }
    Ok(set)
}

/// Every longest path of a DAG.
///
/// Endpoints are the ordered pairs with `β(A^𝔇) = 1`; paths grow backwards
/// over every in-neighbor `k` with `β(A^{n−1})_{i,k} = 1`.
pub fn dag_all_longest_paths(g: &Graph) -> Result<PathSet> {
    lpp::require(g, "dag_all_longest_paths", |c| c == GraphClass::Dag)?;
    let d = lpp::dag_longest_length(g)?.length;
    let powers = PowerCache::new(&g.adjacency_matrix(), d);
    let mut set = PathSet::new();
    let mut suffix = Vec::with_capacity(d + 1);
    for i in 0..g.n() {
        for j in powers.get(d).row_ones(i) {
            suffix.clear();
            dag_backtrack(g, &powers, i, j + 1, d, &mut suffix, &mut set);
        }
    }
    Ok(set)
}

fn dag_backtrack(
    g: &Graph,
    powers: &PowerCache,
    source: usize,
    cur: usize,
    remaining: usize,
    suffix: &mut Vec<usize>,
    out: &mut PathSet,
) {
    suffix.push(cur);
    if remaining == 0 {
        debug_assert_eq!(cur, source + 1);
        out.insert(Path(suffix.iter().rev().copied().collect()));
    } else {
        for &k in g.in_neighbors(cur) {
            if powers.get(remaining - 1).get(source, k - 1) {
                dag_backtrack(g, powers, source, k, remaining - 1, suffix, out);
            }
        }
    }
    suffix.pop();
}

fn factorial(k: usize) -> Result<u128> {
    (1..=k as u128).try_fold(1u128, |acc, x| {
        acc.checked_mul(x)
            .ok_or_else(|| Error::Capacity(format!("{k}! overflows 128 bits")))
    })
}

fn chain_path_count(chain: &Chain) -> Result<u128> {
    let last = chain.blocks.len() - 1;
    chain.blocks.iter().enumerate().try_fold(1u128, |acc, (i, b)| {
        let free = if i == 0 || i == last { b.len() - 1 } else { b.len() - 2 };
        acc.checked_mul(factorial(free)?)
            .ok_or_else(|| Error::Capacity("path count overflows 128 bits".into()))
    })
}

/// Number of longest paths of a block-like graph:
/// `Σ_chains (|B_1|−1)! · (|B_𝓛|−1)! · Π_{middle} (|B_i|−2)!`, and `n!/2`
/// for a lone clique.
pub fn count_block_longest_paths(g: &Graph) -> Result<u128> {
    let class = lpp::require(g, "count_block_longest_paths", GraphClass::is_block_like)?;
    if class == GraphClass::CompleteGraph {
        return Ok(factorial(g.n())? / 2);
    }
    let (_, chains) = BlockContext::new(g)?.heaviest_chains()?;
    chains.iter().try_fold(0u128, |acc, c| {
        acc.checked_add(chain_path_count(c)?)
            .ok_or_else(|| Error::Capacity("path count overflows 128 bits".into()))
    })
}

pub fn block_all_longest_paths(g: &Graph) -> Result<PathSet> {
    block_all_longest_paths_capped(g, DEFAULT_PATH_CAP)
}

/// Every longest path of a block-like graph, refusing to build more than
/// `cap` paths.
///
/// Along each heaviest chain, block `i` is entered at `joints[i−1]`, its
/// free vertices are visited in every order and it is left at `joints[i]`.
pub fn block_all_longest_paths_capped(g: &Graph, cap: u128) -> Result<PathSet> {
    let count = count_block_longest_paths(g)?;
    if count > cap {
        return Err(Error::Capacity(format!(
            "{count} longest paths exceed the cap of {cap}"
        )));
    }
    let mut set = PathSet::new();
    if g.classify() == GraphClass::CompleteGraph {
        let mut order: Vec<usize> = g.vertices().collect();
        loop {
            if order.first() < order.last() {
                set.insert(Path(order.clone()));
            }
            if !next_permutation(&mut order) {
                break;
            }
        }
        return Ok(set);
    }
    let (_, chains) = BlockContext::new(g)?.heaviest_chains()?;
    for chain in &chains {
        let segments: Vec<Vec<usize>> = chain
            .blocks
            .iter()
            .enumerate()
            .map(|(i, b)| {
                let entry = i.checked_sub(1).map(|p| chain.joints[p]);
                let exit = chain.joints.get(i).copied();
                b.iter()
                    .copied()
                    .filter(|&v| Some(v) != entry && Some(v) != exit)
                    .collect()
            })
            .collect();
        let mut prefix = Vec::new();
        interleave(chain, &segments, 0, &mut prefix, &mut set);
    }
    Ok(set)
}

fn interleave(chain: &Chain, segments: &[Vec<usize>], i: usize, prefix: &mut Vec<usize>, out: &mut PathSet) {
    if i == segments.len() {
        out.insert(Path::canonical(prefix.clone()));
        return;
    }
    let mut free = segments[i].clone();
    let base = prefix.len();
    loop {
        prefix.extend_from_slice(&free);
        if let Some(&j) = chain.joints.get(i) {
            prefix.push(j);
        }
        interleave(chain, segments, i + 1, prefix, out);
        prefix.truncate(base);
        if !next_permutation(&mut free) {
            break;
        }
    }
}

/// Advances to the next lexicographic permutation; false after the last.
fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// All longest paths for any supported class.
pub fn all_longest_paths(g: &Graph, cap: u128) -> Result<PathSet> {
    match g.classify() {
        GraphClass::Tree => tree_all_longest_paths(g),
        GraphClass::Dag => dag_all_longest_paths(g),
        c if c.is_block_like() => block_all_longest_paths_capped(g, cap),
        other => Err(Error::Class {
            operation: "all_longest_paths",
            found: other,
        }),
    }
}
