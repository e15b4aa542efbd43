//! The Levenshtein graph `L_{k1,k2;a}`: every string of length `k1..=k2`
//! over `a` symbols, with an edge between strings at edit distance one.

use std::collections::VecDeque;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{edit_distance_banded, hamming_distance};
use crate::error::{Error, Result};
use crate::strings::{from_lex_index, lex_index, run_count, Alphabet, LevString, Symbol};

/// Default cap on the number of materialized vertices.
pub const DEFAULT_VERTEX_BUDGET: usize = 1_000_000;

/// Distance marker for vertices a BFS did not reach.
pub const UNREACHABLE: u32 = u32::MAX;

/// Parameters `(k1, k2, a)` of a Levenshtein graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GraphSpec {
    pub k1: usize,
    pub k2: usize,
    pub a: Alphabet,
}

/// Which string distance equals the geodesic distance of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GeodesicRegime {
    /// `k1 < k2`, or `k1 = k2 <= 2`.
    Levenshtein,
    /// `k1 = k2 > 2`: the graph is the Hamming graph `H_{k,a}`.
    Hamming,
}

impl GraphSpec {
    pub fn new(k1: usize, k2: usize, a: u32) -> Result<Self> {
        let a = Alphabet::new(a)?;
        if k1 > k2 {
            return Err(Error::invalid(format!("k1 = {k1} exceeds k2 = {k2}")));
        }
        Ok(GraphSpec { k1, k2, a })
    }

    #[inline]
    pub fn alphabet_size(&self) -> u32 {
        self.a.size()
    }

    /// `k2 - k1 + 1`, the number of distinct lengths.
    pub fn delta(&self) -> usize {
        self.k2 - self.k1 + 1
    }

    /// Number of strings of length `len`, saturating at `u128::MAX`.
    fn layer_size(&self, len: usize) -> u128 {
        let a = self.a.size() as u128;
        (0..len)
            .try_fold(1u128, |acc, _| acc.checked_mul(a))
            .unwrap_or(u128::MAX)
    }

    /// `sum_{k=k1}^{k2} a^k`, saturating at `u128::MAX`.
    pub fn vertex_count(&self) -> u128 {
        (self.k1..=self.k2).fold(0u128, |acc, k| acc.saturating_add(self.layer_size(k)))
    }

    pub fn geodesic_regime(&self) -> GeodesicRegime {
        if self.k1 < self.k2 || self.k2 <= 2 {
            GeodesicRegime::Levenshtein
        } else {
            GeodesicRegime::Hamming
        }
    }

    pub fn contains(&self, w: &[Symbol]) -> bool {
        (self.k1..=self.k2).contains(&w.len()) && w.iter().all(|&s| self.a.contains(s))
    }

    pub fn check_member(&self, w: &[Symbol]) -> Result<()> {
        if !(self.k1..=self.k2).contains(&w.len()) {
            return Err(Error::invalid(format!(
                "string {} has length {}, outside [{}, {}]",
                LevString::from_symbols(w.to_vec()).to_literal(self.a),
                w.len(),
                self.k1,
                self.k2
            )));
        }
        for &s in w {
            self.a.check_symbol(s)?;
        }
        Ok(())
    }

    fn offset_of_length(&self, len: usize) -> u128 {
        (self.k1..len).map(|k| self.layer_size(k)).sum()
    }

    /// Position of `w` in (length, lexicographic) order.
    pub fn rank(&self, w: &[Symbol]) -> Result<usize> {
        self.check_member(w)?;
        let r = self.offset_of_length(w.len()) + lex_index(w, self.a.size());
        usize::try_from(r).map_err(|_| Error::ResourceLimit {
            what: "rank",
            count: r,
            limit: usize::MAX as u128,
        })
    }

    pub fn unrank(&self, rank: usize) -> Result<LevString> {
        let mut rest = rank as u128;
        for len in self.k1..=self.k2 {
            let size = self.layer_size(len);
            if rest < size {
                return Ok(LevString::from_symbols(from_lex_index(
                    rest,
                    len,
                    self.a.size(),
                )));
            }
            rest -= size;
        }
        Err(Error::invalid(format!(
            "rank {rank} is outside the {} vertices of {}",
            self.vertex_count(),
            self
        )))
    }

    /// All strings in rank order.
    pub fn strings(&self) -> impl Iterator<Item = LevString> + '_ {
        let a = self.a.size();
        (self.k1..=self.k2).flat_map(move |len| {
            let size = self.layer_size(len);
            (0..size).map(move |i| LevString::from_symbols(from_lex_index(i, len, a)))
        })
    }
}

impl std::fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "L_{{{},{};{}}}", self.k1, self.k2, self.a.size())
    }
}

/// Neighbor counts of a string in the unbounded graph, split by length.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DegreeSplit {
    /// Neighbors of length `|u| - 1`.
    pub down: usize,
    /// Neighbors of length `|u|`.
    pub same: usize,
    /// Neighbors of length `|u| + 1`.
    pub up: usize,
}

impl DegreeSplit {
    pub fn total(&self) -> usize {
        self.down + self.same + self.up
    }
}

/// `(r(u), |u|(a-1), a + |u|(a-1))`.
pub fn degree_formula(u: &[Symbol], a: Alphabet) -> DegreeSplit {
    let a = a.size() as usize;
    DegreeSplit {
        down: run_count(u),
        same: u.len() * (a - 1),
        up: a + u.len() * (a - 1),
    }
}

/// Immutable adjacency of `L_{k1,k2;a}` indexed by rank.
#[derive(Debug, Clone)]
pub struct LevGraph {
    spec: GraphSpec,
    starts: Vec<usize>,
    targets: Vec<u32>,
}

impl LevGraph {
    pub fn build(spec: GraphSpec) -> Result<Self> {
        Self::build_with_budget(spec, DEFAULT_VERTEX_BUDGET)
    }

    /// Builds the graph by generating every single-edit neighbor of each
    /// vertex, so the cost is linear in the number of edges.
    pub fn build_with_budget(spec: GraphSpec, budget: usize) -> Result<Self> {
        let count = spec.vertex_count();
        let limit = budget.min(u32::MAX as usize - 1);
        if count > limit as u128 {
            return Err(Error::ResourceLimit {
                what: "graph vertices",
                count,
                limit: limit as u128,
            });
        }
        let n = count as usize;
        let a = spec.a.size();

        let lists: Vec<Vec<u32>> = (0..n)
            .into_par_iter()
            .map_init(Vec::new, |scratch, rank| {
                let w = spec.unrank(rank).expect("rank below vertex count");
                let mut out = Vec::new();
                edit_neighbors(&spec, &w, a, scratch, &mut out);
                out.sort_unstable();
                out.dedup();
                out
            })
            .collect();

        let mut starts = Vec::with_capacity(n + 1);
        let mut targets = Vec::with_capacity(lists.iter().map(Vec::len).sum());
        starts.push(0);
        for list in lists {
            targets.extend(list);
            starts.push(targets.len());
        }
        Ok(LevGraph {
            spec,
            starts,
            targets,
        })
    }

    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn vertex_count(&self) -> usize {
        self.starts.len() - 1
    }

    pub fn edge_count(&self) -> usize {
        self.targets.len() / 2
    }

    /// Sorted neighbor ranks.
    pub fn neighbors(&self, rank: usize) -> &[u32] {
        &self.targets[self.starts[rank]..self.starts[rank + 1]]
    }

    pub fn degree(&self, rank: usize) -> usize {
        self.starts[rank + 1] - self.starts[rank]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.neighbors(u).binary_search(&(v as u32)).is_ok()
    }

    pub fn rank_of(&self, w: &[Symbol]) -> Result<usize> {
        self.spec.rank(w)
    }

    pub fn string_at(&self, rank: usize) -> LevString {
        self.spec.unrank(rank).expect("rank within graph")
    }

    pub fn literal(&self, rank: usize) -> String {
        self.string_at(rank).to_literal(self.spec.a)
    }

    /// Unordered edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.vertex_count()).flat_map(move |u| {
            self.neighbors(u)
                .iter()
                .map(|&v| v as usize)
                .filter(move |&v| v > u)
                .map(move |v| (u, v))
        })
    }

    /// Neighbor counts of `rank` split by neighbor length.
    pub fn degree_split(&self, rank: usize) -> DegreeSplit {
        let len = self.string_at(rank).len();
        let mut split = DegreeSplit {
            down: 0,
            same: 0,
            up: 0,
        };
        for &v in self.neighbors(rank) {
            let vl = self.string_at(v as usize).len();
            match vl.cmp(&len) {
                std::cmp::Ordering::Less => split.down += 1,
                std::cmp::Ordering::Equal => split.same += 1,
                std::cmp::Ordering::Greater => split.up += 1,
            }
        }
        split
    }

    /// BFS distances from a rank into a caller-owned buffer.
    pub fn bfs_into(&self, source: usize, dist: &mut Vec<u32>, queue: &mut VecDeque<u32>) {
        dist.clear();
        dist.resize(self.vertex_count(), UNREACHABLE);
        queue.clear();
        dist[source] = 0;
        queue.push_back(source as u32);
        while let Some(u) = queue.pop_front() {
            let du = dist[u as usize];
            for &v in self.neighbors(u as usize) {
                if dist[v as usize] == UNREACHABLE {
                    dist[v as usize] = du + 1;
                    queue.push_back(v);
                }
            }
        }
    }

    pub fn bfs_from_rank(&self, source: usize) -> Vec<u32> {
        let mut dist = Vec::new();
        self.bfs_into(source, &mut dist, &mut VecDeque::new());
        dist
    }

    /// Geodesic distance from `source` to every vertex, indexed by rank.
    pub fn geodesic_bfs(&self, source: &[Symbol]) -> Result<Vec<u32>> {
        let s = self.rank_of(source)?;
        Ok(self.bfs_from_rank(s))
    }

    /// Geodesic distance without search: the edit distance when
    /// `k1 < k2` or `k1 = k2 <= 2`, the Hamming distance otherwise.
    pub fn geodesic_closed_form(&self, u: &[Symbol], v: &[Symbol]) -> Result<usize> {
        geodesic_closed_form(&self.spec, u, v)
    }

    /// Row `i` holds BFS distances from rank `i`. Sources run in parallel.
    pub fn all_pairs_distances(&self) -> Vec<Vec<u32>> {
        (0..self.vertex_count())
            .into_par_iter()
            .map(|s| self.bfs_from_rank(s))
            .collect()
    }

    /// Largest geodesic distance over all pairs.
    pub fn diameter(&self) -> Result<usize> {
        let n = self.vertex_count();
        let pairs = (n as u128) * (n as u128);
        let limit = (DEFAULT_VERTEX_BUDGET as u128) * 64;
        if pairs > limit {
            return Err(Error::ResourceLimit {
                what: "all-pairs BFS entries",
                count: pairs,
                limit,
            });
        }
        let d = (0..n)
            .into_par_iter()
            .map_init(
                || (Vec::new(), VecDeque::new()),
                |(dist, queue), s| {
                    self.bfs_into(s, dist, queue);
                    dist.iter().copied().max().unwrap_or(0)
                },
            )
            .max()
            .unwrap_or(0);
        if d == UNREACHABLE {
            return Err(Error::invalid(format!("{} is disconnected", self.spec)));
        }
        Ok(d as usize)
    }

    /// Whether a BFS from rank 0 reaches every vertex.
    pub fn is_connected(&self) -> bool {
        self.vertex_count() == 0 || self.bfs_from_rank(0).iter().all(|&d| d != UNREACHABLE)
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "graph \"L_{}_{}_{}\" {{",
            self.spec.k1,
            self.spec.k2,
            self.spec.a.size()
        );
        let labels: Vec<String> = (0..self.vertex_count()).map(|r| self.literal(r)).collect();
        for label in &labels {
            let _ = writeln!(out, "  \"{label}\";");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  \"{}\" -- \"{}\";", labels[u], labels[v]);
        }
        out.push_str("}\n");
        out
    }

    pub fn to_export(&self) -> GraphExport {
        GraphExport {
            format_version: 1,
            spec: SpecExport::from(&self.spec),
            nodes: (0..self.vertex_count()).map(|r| self.literal(r)).collect(),
            edges: self.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

/// Geodesic distance of `L_{k1,k2;a}` from the edit or Hamming distance.
pub fn geodesic_closed_form(spec: &GraphSpec, u: &[Symbol], v: &[Symbol]) -> Result<usize> {
    spec.check_member(u)?;
    spec.check_member(v)?;
    match spec.geodesic_regime() {
        GeodesicRegime::Levenshtein => Ok(edit_distance_banded(u, v)),
        GeodesicRegime::Hamming => hamming_distance(u, v),
    }
}

/// Pushes the ranks of all in-range strings one edit away from `w`.
fn edit_neighbors(
    spec: &GraphSpec,
    w: &[Symbol],
    a: u32,
    scratch: &mut Vec<Symbol>,
    out: &mut Vec<u32>,
) {
    let len = w.len();
    let mut push = |s: &[Symbol]| {
        out.push(spec.rank(s).expect("neighbor within graph") as u32);
    };
    if len >= spec.k1 && len <= spec.k2 {
        for pos in 0..len {
            for c in 0..a {
                if c != w[pos] {
                    scratch.clear();
                    scratch.extend_from_slice(w);
                    scratch[pos] = c;
                    push(scratch);
                }
            }
        }
    }
    if len > spec.k1 {
        for pos in 0..len {
            scratch.clear();
            scratch.extend_from_slice(&w[..pos]);
            scratch.extend_from_slice(&w[pos + 1..]);
            push(scratch);
        }
    }
    if len < spec.k2 {
        for pos in 0..=len {
            for c in 0..a {
                scratch.clear();
                scratch.extend_from_slice(&w[..pos]);
                scratch.push(c);
                scratch.extend_from_slice(&w[pos..]);
                push(scratch);
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecExport {
    pub k1: usize,
    pub k2: usize,
    pub a: u32,
}

impl From<&GraphSpec> for SpecExport {
    fn from(s: &GraphSpec) -> Self {
        SpecExport {
            k1: s.k1,
            k2: s.k2,
            a: s.a.size(),
        }
    }
}

/// JSON adjacency export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphExport {
    pub format_version: u32,
    pub spec: SpecExport,
    pub nodes: Vec<String>,
    pub edges: Vec<[usize; 2]>,
}
