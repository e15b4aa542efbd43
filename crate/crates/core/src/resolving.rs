//! Explicit resolving sets built from strings with at most two runs, the
//! resulting integer embeddings, and exhaustive metric-dimension search for
//! tiny graphs.

use std::collections::HashMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::distance::{dist_to_shape, RunShape};
use crate::error::{Error, Result};
use crate::graph::{GraphSpec, LevGraph, SpecExport};
use crate::strings::{Alphabet, LevString, Symbol};

/// Vertex cap for [`exact_metric_dimension`].
pub const DEFAULT_DIMENSION_GUARD: usize = 40;

/// `R_{k,a}`: the strings `(2n)^i (2n+1)^(k-i)` for `0 <= i <= k` and
/// `0 <= n < a/2`, resolving every pair of distinct length-`k` strings.
pub fn build_rka(k: usize, a: Alphabet) -> Vec<LevString> {
    if k == 0 {
        return vec![LevString::empty()];
    }
    let pairs = a.size() / 2;
    let mut out = Vec::with_capacity(pairs as usize * (k + 1));
    for n in 0..pairs {
        for i in 0..=k {
            out.push(LevString::two_runs(2 * n, i, 2 * n + 1, k - i));
        }
    }
    out
}

/// `|R_{k,a}|`.
pub fn rka_size(k: usize, a: Alphabet) -> usize {
    if k == 0 {
        1
    } else {
        (a.size() / 2) as usize * (k + 1)
    }
}

/// Applies the cyclic shift `s -> s + 1 (mod a)` to every symbol, `times` times.
pub fn shift_chars(w: &[Symbol], times: usize, a: Alphabet) -> LevString {
    let a = a.size();
    let t = (times % a as usize) as Symbol;
    LevString::from_symbols(w.iter().map(|&s| (s + t) % a).collect())
}

/// `shift(R_{k-1,a}) ∪ R_{k+1,a}`, which resolves every pair of distinct
/// length-`k` strings that are permutations of each other.
pub fn permutation_resolver(k: usize, a: Alphabet) -> Result<Vec<LevString>> {
    if k == 0 {
        return Err(Error::invalid("permutation resolver needs k >= 1"));
    }
    let mut out: Vec<LevString> = build_rka(k - 1, a)
        .iter()
        .map(|w| shift_chars(w, 1, a))
        .collect();
    for w in build_rka(k + 1, a) {
        if !out.contains(&w) {
            out.push(w);
        }
    }
    Ok(out)
}

/// Which part of the construction produced a node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "part", rename_all = "snake_case")]
pub enum Provenance {
    /// `alpha^k2`.
    R0 { symbol: Symbol },
    /// Member of `shift^i(R_{k2-2i,a})`.
    R1 { shift: usize, length: usize },
    /// Member of `R_{k1,a}`, present when `k2 - k1` is odd.
    OddTail { length: usize },
}

impl std::fmt::Display for Provenance {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Provenance::R0 { symbol } => write!(f, "R0({symbol}^k2)"),
            Provenance::R1 { shift, length } => write!(f, "R1(shift={shift}, len={length})"),
            Provenance::OddTail { length } => write!(f, "R_k1(len={length})"),
        }
    }
}

/// Ordered resolving set; coordinate order of every embedding.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ResolvingSet {
    spec: GraphSpec,
    nodes: Vec<LevString>,
    provenance: Vec<Vec<Provenance>>,
    raw_len: usize,
}

impl ResolvingSet {
    pub fn spec(&self) -> &GraphSpec {
        &self.spec
    }

    pub fn nodes(&self) -> &[LevString] {
        &self.nodes
    }

    /// Tags per node; more than one when parts of the construction overlap.
    pub fn provenance(&self) -> &[Vec<Provenance>] {
        &self.provenance
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Number of nodes emitted by the construction before deduplication.
    pub fn raw_len(&self) -> usize {
        self.raw_len
    }

    pub fn literals(&self) -> Vec<String> {
        self.nodes
            .iter()
            .map(|w| w.to_literal(self.spec.a))
            .collect()
    }
}

/// `R0 ∪ R1` with `R0 = {alpha^k2}` and `R1` the shifted `R_{k2-2i,a}` plus
/// `R_{k1,a}` when `k2 - k1` is odd. Order: `R0`, then `R1` by shift, then
/// the odd tail; duplicates keep the first position and collect both tags.
pub fn build_resolving_set(spec: &GraphSpec) -> ResolvingSet {
    let a = spec.a;
    let mut raw: Vec<(LevString, Provenance)> = Vec::new();
    for symbol in a.symbols() {
        raw.push((LevString::run(symbol, spec.k2), Provenance::R0 { symbol }));
    }
    for shift in 0..=(spec.k2 - spec.k1) / 2 {
        let length = spec.k2 - 2 * shift;
        for w in build_rka(length, a) {
            raw.push((shift_chars(&w, shift, a), Provenance::R1 { shift, length }));
        }
    }
    if (spec.k2 - spec.k1) % 2 == 1 {
        for w in build_rka(spec.k1, a) {
            raw.push((w, Provenance::OddTail { length: spec.k1 }));
        }
    }

    let raw_len = raw.len();
    let mut index: HashMap<LevString, usize> = HashMap::new();
    let mut nodes = Vec::new();
    let mut provenance: Vec<Vec<Provenance>> = Vec::new();
    for (w, tag) in raw {
        match index.get(&w) {
            Some(&i) => provenance[i].push(tag),
            None => {
                index.insert(w.clone(), nodes.len());
                nodes.push(w);
                provenance.push(vec![tag]);
            }
        }
    }
    ResolvingSet {
        spec: *spec,
        nodes,
        provenance,
        raw_len,
    }
}

/// Pre-deduplication size of [`build_resolving_set`]:
/// `a + [k2-k1 odd]|R_{k1,a}| + sum_i |R_{k2-2i,a}|`.
pub fn construction_size(spec: &GraphSpec) -> usize {
    let a = spec.a;
    let tail = if (spec.k2 - spec.k1) % 2 == 1 {
        rka_size(spec.k1, a)
    } else {
        0
    };
    let body: usize = (0..=(spec.k2 - spec.k1) / 2)
        .map(|i| rka_size(spec.k2 - 2 * i, a))
        .sum();
    a.size() as usize + tail + body
}

/// `a + floor(a/2)(k1+1) + floor(a/2) sum_{i=0}^{floor((k2-k1)/2)} (k2-2i+1)`.
pub fn construction_size_bound(spec: &GraphSpec) -> usize {
    let a = spec.a.size() as usize;
    let half = a / 2;
    let sum: usize = (0..=(spec.k2 - spec.k1) / 2)
        .map(|i| spec.k2 - 2 * i + 1)
        .sum();
    a + half * (spec.k1 + 1) + half * sum
}

/// Outcome of a resolvability check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Resolution {
    Resolving,
    /// First pair, in rank order, with identical distance profiles.
    Unresolved {
        first: LevString,
        second: LevString,
    },
}

impl Resolution {
    pub fn is_resolving(&self) -> bool {
        matches!(self, Resolution::Resolving)
    }
}

/// Whether the geodesic distance profiles to `nodes` are pairwise distinct.
pub fn is_resolving(g: &LevGraph, nodes: &[LevString]) -> Result<Resolution> {
    let ranks: Vec<usize> = nodes.iter().map(|w| g.rank_of(w)).collect::<Result<_>>()?;
    let columns: Vec<Vec<u32>> = ranks.par_iter().map(|&r| g.bfs_from_rank(r)).collect();
    Ok(first_collision(g.vertex_count(), &columns)
        .map(|(x, y)| Resolution::Unresolved {
            first: g.string_at(x),
            second: g.string_at(y),
        })
        .unwrap_or(Resolution::Resolving))
}

fn first_collision(n: usize, columns: &[Vec<u32>]) -> Option<(usize, usize)> {
    let mut seen: HashMap<Vec<u32>, usize> = HashMap::with_capacity(n);
    for v in 0..n {
        let profile: Vec<u32> = columns.iter().map(|c| c[v]).collect();
        if let Some(&u) = seen.get(&profile) {
            return Some((u, v));
        }
        seen.insert(profile, v);
    }
    None
}

/// Distance vector of a string to the nodes of a resolving set.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EmbeddingVector(pub Vec<usize>);

/// Multilateration through the two-run kernels; `O(|R| k2)` per string.
#[derive(Debug, Clone)]
pub struct Embedder<'a> {
    set: &'a ResolvingSet,
    shapes: Vec<(RunShape, usize)>,
}

impl<'a> Embedder<'a> {
    pub fn new(set: &'a ResolvingSet) -> Self {
        let shapes = set
            .nodes
            .iter()
            .map(|w| {
                (
                    RunShape::of(w).expect("resolving nodes have at most two runs"),
                    w.len(),
                )
            })
            .collect();
        Embedder { set, shapes }
    }

    /// Coordinates equal geodesic distances in every regime: the edit
    /// distance for `k1 < k2` or `k2 <= 2`, and otherwise all strings share
    /// one length, where the Hamming and edit distance to a string with at
    /// most two runs coincide.
    pub fn embed(&self, u: &[Symbol]) -> Result<EmbeddingVector> {
        self.set.spec.check_member(u)?;
        Ok(EmbeddingVector(
            self.shapes
                .iter()
                .map(|(shape, len)| dist_to_shape(u, shape, *len))
                .collect(),
        ))
    }
}

pub fn embed(spec: &GraphSpec, set: &ResolvingSet, u: &[Symbol]) -> Result<EmbeddingVector> {
    if set.spec != *spec {
        return Err(Error::invalid(format!(
            "resolving set was built for {}, not {}",
            set.spec, spec
        )));
    }
    Embedder::new(set).embed(u)
}

/// JSON embedding export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingExport {
    pub format_version: u32,
    pub spec: SpecExport,
    pub resolving_set: Vec<String>,
    pub embeddings: serde_json::Map<String, serde_json::Value>,
}

impl EmbeddingExport {
    pub fn new(set: &ResolvingSet, rows: &[(LevString, EmbeddingVector)]) -> Self {
        let embeddings = rows
            .iter()
            .map(|(w, e)| (w.to_literal(set.spec.a), serde_json::json!(e.0)))
            .collect();
        EmbeddingExport {
            format_version: 1,
            spec: SpecExport::from(&set.spec),
            resolving_set: set.literals(),
            embeddings,
        }
    }
}

/// Smallest resolving set found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MetricDimension {
    pub beta: usize,
    pub witness: Vec<LevString>,
}

pub fn exact_metric_dimension(g: &LevGraph, max_size: usize) -> Result<Option<MetricDimension>> {
    exact_metric_dimension_with_guard(g, max_size, DEFAULT_DIMENSION_GUARD)
}

/// Tries subsets by increasing size, lexicographically by rank within a
/// size; the first resolving subset is the witness. `None` when no subset
/// of at most `max_size` vertices resolves.
pub fn exact_metric_dimension_with_guard(
    g: &LevGraph,
    max_size: usize,
    guard: usize,
) -> Result<Option<MetricDimension>> {
    let n = g.vertex_count();
    if n > guard {
        return Err(Error::ResourceLimit {
            what: "vertices for exact metric dimension",
            count: n as u128,
            limit: guard as u128,
        });
    }
    let dist = g.all_pairs_distances();
    for size in 0..=max_size.min(n) {
        for subset in (0..n).combinations(size) {
            if resolves(&dist, &subset) {
                return Ok(Some(MetricDimension {
                    beta: size,
                    witness: subset.iter().map(|&r| g.string_at(r)).collect(),
                }));
            }
        }
    }
    Ok(None)
}

fn resolves(dist: &[Vec<u32>], subset: &[usize]) -> bool {
    let mut profiles: Vec<Vec<u32>> = (0..dist.len())
        .map(|v| subset.iter().map(|&r| dist[r][v]).collect())
        .collect();
    profiles.sort_unstable();
    profiles.windows(2).all(|p| p[0] != p[1])
}

/// `a^k2 <= (k2+1)^beta` and `beta <= |build_resolving_set(spec)|`.
pub fn check_dimension_bounds(spec: &GraphSpec, beta: usize) -> bool {
    let lower =
        pow_saturating(spec.a.size() as u128, spec.k2) <= pow_saturating(spec.k2 as u128 + 1, beta);
    lower && beta <= build_resolving_set(spec).len()
}

fn pow_saturating(base: u128, exp: usize) -> u128 {
    (0..exp).fold(1u128, |acc, _| acc.saturating_mul(base))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::strings::lit;

    fn spec(k1: usize, k2: usize, a: u32) -> GraphSpec {
        GraphSpec::new(k1, k2, a).unwrap()
    }

    fn a(n: u32) -> Alphabet {
        Alphabet::new(n).unwrap()
    }

    #[test]
    fn rka_binary() {
        let r = build_rka(3, a(2));
        assert_eq!(r, vec![lit("111"), lit("011"), lit("001"), lit("000")]);
        assert_eq!(r.len(), rka_size(3, a(2)));
        assert_eq!(build_rka(0, a(5)), vec![LevString::empty()]);
        assert_eq!(build_rka(2, a(5)).len(), 2 * 3);
        assert!(build_rka(4, a(4)).iter().all(|w| w.runs() <= 2));
    }

    #[test]
    fn shifts() {
        assert_eq!(shift_chars(&lit("011"), 1, a(2)), lit("100"));
        assert_eq!(shift_chars(&lit("0123"), 4, a(4)), lit("0123"));
        assert_eq!(shift_chars(&lit("0123"), 1, a(4)), lit("1230"));
    }

    #[test]
    fn construction_for_small_graph() {
        let s = spec(0, 3, 2);
        let r = build_resolving_set(&s);
        assert_eq!(&r.nodes()[..2], &[lit("000"), lit("111")]);
        for w in build_rka(3, a(2)) {
            assert!(r.nodes().contains(&w));
        }
        for w in build_rka(1, a(2)) {
            assert!(r.nodes().contains(&shift_chars(&w, 1, a(2))));
        }
        assert!(r.nodes().contains(&LevString::empty()));
        assert!(r.nodes().iter().all(|w| w.runs() <= 2 && s.contains(w)));
        // 000 and 111 appear in R0 and in R_{3,2}.
        assert_eq!(r.provenance()[0].len(), 2);
        assert_eq!(r.raw_len(), construction_size(&s));
        assert!(r.len() <= construction_size_bound(&s));
    }

    #[test]
    fn resolving_checks() {
        let s = spec(0, 3, 2);
        let g = LevGraph::build(s).unwrap();
        let r = build_resolving_set(&s);
        assert!(is_resolving(&g, r.nodes()).unwrap().is_resolving());

        match is_resolving(&g, &[LevString::empty()]).unwrap() {
            Resolution::Unresolved { first, second } => {
                assert_eq!((first, second), (lit("0"), lit("1")));
            }
            Resolution::Resolving => panic!("ε alone cannot resolve"),
        }
        let all: Vec<_> = s.strings().collect();
        assert!(is_resolving(&g, &all).unwrap().is_resolving());
        assert!(is_resolving(&g, &[lit("0000")]).is_err());
    }

    #[test]
    fn embedding_basics() {
        let s = spec(0, 3, 2);
        let r = build_resolving_set(&s);
        for (j, w) in r.nodes().iter().enumerate() {
            assert_eq!(embed(&s, &r, w).unwrap().0[j], 0);
        }
        assert!(embed(&s, &r, &lit("0101")).is_err());
        assert!(embed(&spec(0, 2, 2), &r, &lit("01")).is_err());
    }

    #[test]
    fn exact_dimension_small() {
        let g = LevGraph::build(spec(0, 1, 2)).unwrap();
        let d = exact_metric_dimension(&g, 5).unwrap().unwrap();
        assert_eq!(d.beta, 2);
        assert_eq!(d.witness, vec![LevString::empty(), lit("0")]);

        let g = LevGraph::build(spec(0, 1, 3)).unwrap();
        assert_eq!(exact_metric_dimension(&g, 5).unwrap().unwrap().beta, 3);
        assert_eq!(exact_metric_dimension(&g, 2).unwrap(), None);

        let big = LevGraph::build(spec(0, 5, 2)).unwrap();
        assert!(matches!(
            exact_metric_dimension(&big, 3),
            Err(Error::ResourceLimit { .. })
        ));
    }

    #[test]
    fn dimension_bounds() {
        let s = spec(0, 3, 2);
        assert!(check_dimension_bounds(&s, build_resolving_set(&s).len()));
        assert!(!check_dimension_bounds(&spec(3, 3, 2), 1));
        assert!(!check_dimension_bounds(
            &s,
            build_resolving_set(&s).len() + 1
        ));
    }
}
