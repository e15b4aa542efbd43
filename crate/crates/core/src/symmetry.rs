//! Automorphisms and determining sets.
//!
//! Two representations: [`StructuralAutomorphism`] is a symbol bijection
//! optionally composed with string reversal, and [`VertexPermutation`] is an
//! explicit permutation of vertex ranks. Equality of automorphisms is
//! equality of their vertex permutations.

use std::collections::HashSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{GraphSpec, LevGraph};
use crate::strings::{Alphabet, LevString, Symbol};

/// Vertex cap for automorphism enumeration and determining-set search.
pub const DEFAULT_ENUMERATION_GUARD: usize = 64;

/// `u -> xi(reverse?(u))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct StructuralAutomorphism {
    pub xi: Vec<Symbol>,
    pub reversed: bool,
}

impl StructuralAutomorphism {
    pub fn new(xi: Vec<Symbol>, reversed: bool) -> Result<Self> {
        let mut seen = vec![false; xi.len()];
        for &s in &xi {
            match seen.get_mut(s as usize) {
                Some(slot) if !*slot => *slot = true,
                _ => {
                    return Err(Error::invalid(format!(
                        "{xi:?} is not a permutation of 0..{}",
                        xi.len()
                    )))
                }
            }
        }
        Ok(StructuralAutomorphism { xi, reversed })
    }

    pub fn identity(a: Alphabet) -> Self {
        StructuralAutomorphism {
            xi: a.symbols().collect(),
            reversed: false,
        }
    }

    pub fn reversal(a: Alphabet) -> Self {
        StructuralAutomorphism {
            xi: a.symbols().collect(),
            reversed: true,
        }
    }

    pub fn is_identity(&self) -> bool {
        !self.reversed && self.xi.iter().enumerate().all(|(i, &s)| i as Symbol == s)
    }

    pub fn apply(&self, u: &[Symbol]) -> LevString {
        let map = |&s: &Symbol| self.xi[s as usize];
        if self.reversed {
            LevString::from_symbols(u.iter().rev().map(map).collect())
        } else {
            LevString::from_symbols(u.iter().map(map).collect())
        }
    }

    /// `self ∘ other`. Reversal commutes with symbol maps, so the result is
    /// again structural.
    pub fn compose(&self, other: &Self) -> Self {
        StructuralAutomorphism {
            xi: other.xi.iter().map(|&s| self.xi[s as usize]).collect(),
            reversed: self.reversed ^ other.reversed,
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.xi.len()];
        for (i, &s) in self.xi.iter().enumerate() {
            inv[s as usize] = i as Symbol;
        }
        StructuralAutomorphism {
            xi: inv,
            reversed: self.reversed,
        }
    }

    /// The vertex permutation this map induces on `g`.
    pub fn to_explicit(&self, g: &LevGraph) -> Result<VertexPermutation> {
        if self.xi.len() != g.spec().alphabet_size() as usize {
            return Err(Error::invalid(format!(
                "symbol map over {} symbols applied to {}",
                self.xi.len(),
                g.spec()
            )));
        }
        let images = (0..g.vertex_count())
            .map(|r| g.rank_of(&self.apply(&g.string_at(r))).map(|x| x as u32))
            .collect::<Result<_>>()?;
        Ok(VertexPermutation(images))
    }
}

pub fn apply_automorphism(phi: &StructuralAutomorphism, u: &[Symbol]) -> LevString {
    phi.apply(u)
}

/// Permutation of vertex ranks; entry `i` is the image of rank `i`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct VertexPermutation(pub Vec<u32>);

impl VertexPermutation {
    pub fn identity(n: usize) -> Self {
        VertexPermutation((0..n as u32).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn image(&self, rank: usize) -> usize {
        self.0[rank] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    /// `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        VertexPermutation(other.0.iter().map(|&x| self.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            inv[x as usize] = i as u32;
        }
        VertexPermutation(inv)
    }

    pub fn is_bijection(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0.iter().all(|&x| {
            let slot = seen.get_mut(x as usize);
            match slot {
                Some(s) if !*s => {
                    *s = true;
                    true
                }
                _ => false,
            }
        })
    }

    pub fn preserves_adjacency(&self, g: &LevGraph) -> bool {
        self.len() == g.vertex_count()
            && self.is_bijection()
            && g.edges()
                .all(|(u, v)| g.has_edge(self.image(u), self.image(v)))
    }
}

/// Either representation, for export.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Automorphism {
    Structural(StructuralAutomorphism),
    Explicit(VertexPermutation),
}

impl Automorphism {
    pub fn to_explicit(&self, g: &LevGraph) -> Result<VertexPermutation> {
        match self {
            Automorphism::Structural(s) => s.to_explicit(g),
            Automorphism::Explicit(p) => Ok(p.clone()),
        }
    }
}

/// All `2 * a!` maps `xi` and `xi ∘ reverse`: non-reversed first, symbol
/// maps in lexicographic order.
pub fn construct_theorem_group(a: Alphabet) -> Vec<StructuralAutomorphism> {
    let n = a.size() as usize;
    [false, true]
        .into_iter()
        .flat_map(|reversed| {
            (0..a.size())
                .permutations(n)
                .map(move |xi| StructuralAutomorphism { xi, reversed })
        })
        .collect()
}

fn check_guard(g: &LevGraph, guard: usize) -> Result<()> {
    if g.vertex_count() > guard {
        return Err(Error::ResourceLimit {
            what: "vertices for automorphism enumeration",
            count: g.vertex_count() as u128,
            limit: guard as u128,
        });
    }
    Ok(())
}

pub fn enumerate_automorphisms(g: &LevGraph) -> Result<Vec<VertexPermutation>> {
    enumerate_automorphisms_with_guard(g, DEFAULT_ENUMERATION_GUARD)
}

/// Every automorphism of `g`, sorted.
///
/// Backtracking over vertex images. Vertices are first colored by
/// iterated degree refinement, and an image must share its preimage's
/// color. Vertices are placed in an order where each one (after the first
/// of its component) has an already-placed neighbor, whose image restricts
/// the candidates to that image's neighbors.
pub fn enumerate_automorphisms_with_guard(
    g: &LevGraph,
    guard: usize,
) -> Result<Vec<VertexPermutation>> {
    check_guard(g, guard)?;
    let n = g.vertex_count();
    if n == 0 {
        return Ok(vec![VertexPermutation(Vec::new())]);
    }
    let colors = refine_colors(g);
    let order = placement_order(g, &colors);

    let mut search = Search {
        g,
        colors: &colors,
        order: &order,
        anchors: anchors(g, &order),
        image: vec![u32::MAX; n],
        used: vec![false; n],
        found: Vec::new(),
    };
    search.run(0);
    let mut found = search.found;
    found.sort();
    Ok(found)
}

/// Stable coloring by (own color, multiset of neighbor colors), starting
/// from degrees. Colors are canonical, so automorphisms preserve them.
fn refine_colors(g: &LevGraph) -> Vec<u32> {
    let n = g.vertex_count();
    let mut colors: Vec<u32> = (0..n).map(|v| g.degree(v) as u32).collect();
    let mut classes = colors.iter().collect::<HashSet<_>>().len();
    loop {
        let signatures: Vec<(u32, Vec<u32>)> = (0..n)
            .map(|v| {
                let mut nb: Vec<u32> = g.neighbors(v).iter().map(|&w| colors[w as usize]).collect();
                nb.sort_unstable();
                (colors[v], nb)
            })
            .collect();
        let mut distinct: Vec<&(u32, Vec<u32>)> = signatures.iter().collect();
        distinct.sort();
        distinct.dedup();
        let next: Vec<u32> = signatures
            .iter()
            .map(|s| distinct.binary_search(&s).expect("signature present") as u32)
            .collect();
        let next_classes = distinct.len();
        colors = next;
        if next_classes == classes {
            return colors;
        }
        classes = next_classes;
    }
}

fn placement_order(g: &LevGraph, colors: &[u32]) -> Vec<usize> {
    let n = g.vertex_count();
    let mut class_size = vec![0usize; n];
    for &c in colors {
        class_size[c as usize] += 1;
    }
    let mut placed = vec![false; n];
    let mut placed_neighbors = vec![0usize; n];
    let mut order = Vec::with_capacity(n);
    for _ in 0..n {
        let next = (0..n)
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                (
                    std::cmp::Reverse(placed_neighbors[v]),
                    class_size[colors[v] as usize],
                    v,
                )
            })
            .expect("unplaced vertex remains");
        placed[next] = true;
        order.push(next);
        for &w in g.neighbors(next) {
            placed_neighbors[w as usize] += 1;
        }
    }
    order
}

/// For each vertex, an earlier-placed neighbor if one exists.
fn anchors(g: &LevGraph, order: &[usize]) -> Vec<Option<usize>> {
    let mut position = vec![0usize; order.len()];
    for (p, &v) in order.iter().enumerate() {
        position[v] = p;
    }
    let mut out = vec![None; order.len()];
    for (p, &v) in order.iter().enumerate() {
        out[v] = g
            .neighbors(v)
            .iter()
            .map(|&w| w as usize)
            .filter(|&w| position[w] < p)
            .min_by_key(|&w| position[w]);
    }
    out
}

struct Search<'a> {
    g: &'a LevGraph,
    colors: &'a [u32],
    order: &'a [usize],
    anchors: Vec<Option<usize>>,
    image: Vec<u32>,
    used: Vec<bool>,
    found: Vec<VertexPermutation>,
}

impl Search<'_> {
    fn run(&mut self, p: usize) {
        if p == self.order.len() {
            self.found.push(VertexPermutation(self.image.clone()));
            return;
        }
        let v = self.order[p];
        let candidates: Vec<usize> = match self.anchors[v] {
            Some(anchor) => self
                .g
                .neighbors(self.image[anchor] as usize)
                .iter()
                .map(|&c| c as usize)
                .collect(),
            None => (0..self.order.len()).collect(),
        };
        for c in candidates {
            if self.used[c] || self.colors[c] != self.colors[v] || !self.consistent(v, c) {
                continue;
            }
            self.image[v] = c as u32;
            self.used[c] = true;
            self.run(p + 1);
            self.used[c] = false;
            self.image[v] = u32::MAX;
        }
    }

    /// Placed neighbors of `v` must map onto exactly the used neighbors of `c`.
    fn consistent(&self, v: usize, c: usize) -> bool {
        let mut mapped = 0;
        for &w in self.g.neighbors(v) {
            let img = self.image[w as usize];
            if img != u32::MAX {
                if !self.g.has_edge(c, img as usize) {
                    return false;
                }
                mapped += 1;
            }
        }
        let used_around_c = self
            .g
            .neighbors(c)
            .iter()
            .filter(|&&x| self.used[x as usize])
            .count();
        mapped == used_around_c
    }
}

fn check_theorem_regime(spec: &GraphSpec) -> Result<()> {
    if spec.k1 == spec.k2 || spec.k2 < 2 {
        return Err(Error::invalid(format!(
            "{spec} is outside k1 != k2, k2 >= 2; the automorphism group there is \
             that of a Hamming or complete graph, use explicit enumeration"
        )));
    }
    Ok(())
}

/// Whether the enumerated group of `g` is exactly the symbol maps and their
/// compositions with reversal.
pub fn match_groups(g: &LevGraph) -> Result<bool> {
    check_theorem_regime(g.spec())?;
    let enumerated: HashSet<VertexPermutation> = enumerate_automorphisms(g)?.into_iter().collect();
    let constructed: HashSet<VertexPermutation> = construct_theorem_group(g.spec().a)
        .iter()
        .map(|s| s.to_explicit(g))
        .collect::<Result<_>>()?;
    Ok(enumerated == constructed)
}

/// Node set whose pointwise stabilizer is trivial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DeterminingSet {
    pub nodes: Vec<LevString>,
}

/// Length-`k2` strings over `symbols` (ascending, in blocks of `k2`), each
/// block padded by repeating its last symbol.
fn covering_blocks(symbols: impl Iterator<Item = Symbol>, k2: usize) -> Vec<LevString> {
    let symbols: Vec<Symbol> = symbols.collect();
    symbols
        .chunks(k2)
        .map(|chunk| {
            let mut v = chunk.to_vec();
            v.resize(k2, *chunk.last().expect("non-empty chunk"));
            LevString::from_symbols(v)
        })
        .collect()
}

/// Determining set of size `ceil(a / k2)` for `k1 != k2`, `k2 >= 2`,
/// `(k2, a) != (2, 2)`.
pub fn build_determining_set(spec: &GraphSpec) -> Result<DeterminingSet> {
    let (k2, a) = (spec.k2, spec.a.size() as usize);
    if spec.k1 == spec.k2 || k2 < 2 || (k2 == 2 && a == 2) {
        return Err(Error::invalid(format!(
            "no construction for {spec}: it needs k1 != k2, k2 >= 2 and (k2, a) != (2, 2); \
             use the exhaustive determining-number search instead"
        )));
    }
    let top = (a - 2) as Symbol;
    let nodes = if k2 >= a {
        let d = if a == 2 {
            LevString::two_runs(0, k2 - 1, 1, 1)
        } else {
            let mut v = vec![0; k2 - a + 2];
            v.extend(1..=top);
            LevString::from_symbols(v)
        };
        vec![d]
    } else if k2 > 2 {
        let mut d1 = vec![0, 0];
        d1.extend(1..=(k2 - 2) as Symbol);
        let mut nodes = vec![LevString::from_symbols(d1)];
        nodes.extend(covering_blocks((k2 - 1) as Symbol..=top, k2));
        nodes
    } else {
        let mut nodes = vec![
            LevString::from_symbols(vec![0, 1]),
            LevString::from_symbols(vec![1, 2]),
        ];
        nodes.extend(covering_blocks(3..=top, 2));
        nodes
    };
    debug_assert_eq!(nodes.len(), a.div_ceil(k2));
    Ok(DeterminingSet { nodes })
}

/// Whether only the identity among `group` fixes every node of `d`.
pub fn is_determining_in(
    group: &[VertexPermutation],
    g: &LevGraph,
    d: &[LevString],
) -> Result<bool> {
    let ranks: Vec<usize> = d.iter().map(|w| g.rank_of(w)).collect::<Result<_>>()?;
    Ok(group
        .iter()
        .filter(|p| !p.is_identity())
        .all(|p| ranks.iter().any(|&r| p.image(r) != r)))
}

pub fn is_determining(g: &LevGraph, d: &[LevString]) -> Result<bool> {
    let group = enumerate_automorphisms(g)?;
    is_determining_in(&group, g, d)
}

/// Smallest determining set found by exhaustive search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DeterminingNumber {
    pub det: usize,
    pub witness: Vec<LevString>,
}

/// Moved-vertex table: one row per non-identity automorphism.
fn moved_table(group: &[VertexPermutation]) -> Vec<Vec<bool>> {
    group
        .iter()
        .filter(|p| !p.is_identity())
        .map(|p| (0..p.len()).map(|r| p.image(r) != r).collect())
        .collect()
}

fn subsets_breaking_all(
    moved: &[Vec<bool>],
    n: usize,
    size: usize,
) -> impl Iterator<Item = Vec<usize>> + '_ {
    (0..n)
        .combinations(size)
        .filter(move |subset| moved.iter().all(|row| subset.iter().any(|&r| row[r])))
}

pub fn exact_determining_number(g: &LevGraph) -> Result<DeterminingNumber> {
    let group = enumerate_automorphisms(g)?;
    Ok(exact_determining_number_in(&group, g))
}

/// Subsets by increasing size, lexicographic by rank within a size.
pub fn exact_determining_number_in(group: &[VertexPermutation], g: &LevGraph) -> DeterminingNumber {
    let n = g.vertex_count();
    let moved = moved_table(group);
    for size in 0..=n {
        if let Some(subset) = subsets_breaking_all(&moved, n, size).next() {
            return DeterminingNumber {
                det: size,
                witness: subset.iter().map(|&r| g.string_at(r)).collect(),
            };
        }
    }
    unreachable!("the full vertex set is determining")
}

/// Every determining set of minimum size, in lexicographic rank order.
pub fn minimum_determining_sets(group: &[VertexPermutation], g: &LevGraph) -> Vec<Vec<LevString>> {
    let n = g.vertex_count();
    let det = exact_determining_number_in(group, g).det;
    let moved = moved_table(group);
    subsets_breaking_all(&moved, n, det)
        .map(|s| s.iter().map(|&r| g.string_at(r)).collect())
        .collect()
}
