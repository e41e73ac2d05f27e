//! Exact chromatic number of the underlying graph and what hangs off it:
//! criticalisation, Gallai-Roy directed paths and the in-degree colouring
//! bound check.

use serde::Serialize;
use thiserror::Error;

use crate::digraph::{Digraph, GraphError, Induced, VertexSet};

pub const DEFAULT_CHROMATIC_CAP: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ColoringError {
    #[error("chromatic number: order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("need chromatic number at least {required}, digraph has {chi}")]
    ChromaticTooSmall { required: usize, chi: usize },
    #[error("colour count must be at least 1")]
    ZeroColors,
    #[error("degree bound parameter must be at least 2, got {0}")]
    LemmaParameter(usize),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Why `chi - 1` colours do not suffice.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LowerBoundEvidence {
    /// A clique of the underlying graph of size `chi`.
    Clique(Vec<usize>),
    /// Exhaustive search found no colouring with this many colours.
    Infeasible { colors: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChromaticCertificate {
    pub chi: usize,
    /// Colour of each vertex, in `0..chi`.
    pub coloring: Vec<usize>,
    pub evidence: LowerBoundEvidence,
}

impl ChromaticCertificate {
    /// Checks properness, the colour count and the clique evidence.
    pub fn is_consistent_with(&self, g: &Digraph) -> bool {
        if self.coloring.len() != g.order() {
            return false;
        }
        let proper = g.arcs().all(|(u, v)| self.coloring[u] != self.coloring[v]);
        let mut used = vec![false; self.chi];
        for &c in &self.coloring {
            if c >= self.chi {
                return false;
            }
            used[c] = true;
        }
        let evidence_ok = match &self.evidence {
            LowerBoundEvidence::Clique(k) => {
                k.len() <= self.chi
                    && k.iter()
                        .enumerate()
                        .all(|(i, &u)| k[i + 1..].iter().all(|&v| g.adjacent(u, v)))
            }
            LowerBoundEvidence::Infeasible { colors } => colors + 1 == self.chi,
        };
        proper && used.iter().all(|&u| u) && evidence_ok
    }
}

fn underlying(g: &Digraph) -> Vec<u64> {
    (0..g.order()).map(|v| g.neighbors(v).bits()).collect()
}

/// Maximum clique of the underlying graph (bitset branch and bound).
pub fn max_clique(g: &Digraph) -> VertexSet {
    fn expand(adj: &[u64], r: u64, mut p: u64, best: &mut u64) {
        if p == 0 {
            if r.count_ones() > best.count_ones() {
                *best = r;
            }
            return;
        }
        while p != 0 {
            if r.count_ones() + p.count_ones() <= best.count_ones() {
                return;
            }
            let v = p.trailing_zeros() as usize;
            expand(adj, r | 1 << v, p & adj[v], best);
            p &= !(1u64 << v);
        }
    }
    let adj = underlying(g);
    let mut best = 0u64;
    expand(&adj, 0, g.vertices().bits(), &mut best);
    VertexSet::from_bits(best)
}

pub fn clique_number(g: &Digraph) -> usize {
    max_clique(g).len()
}

/// Does the underlying graph contain a clique on `size` vertices?
pub fn find_clique(g: &Digraph, size: usize) -> Option<VertexSet> {
    fn search(adj: &[u64], r: u64, mut p: u64, size: u32) -> Option<u64> {
        if r.count_ones() == size {
            return Some(r);
        }
        while p != 0 {
            if r.count_ones() + p.count_ones() < size {
                return None;
            }
            let v = p.trailing_zeros() as usize;
            if let Some(k) = search(adj, r | 1 << v, p & adj[v], size) {
                return Some(k);
            }
            p &= !(1u64 << v);
        }
        None
    }
    search(&underlying(g), 0, g.vertices().bits(), size as u32).map(VertexSet::from_bits)
}

/// DSATUR colouring with at most `k` colours; `None` if impossible.
fn dsatur_colorable(adj: &[u64], k: usize) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut color = vec![usize::MAX; n];
    // forbidden[v] bit c: a neighbour of v has colour c.
    fn rec(adj: &[u64], k: usize, color: &mut [usize], colored: usize, used: usize) -> bool {
        let n = adj.len();
        if colored == n {
            return true;
        }
        let mut pick = usize::MAX;
        let mut best = (0u32, 0u32);
        for v in 0..n {
            if color[v] != usize::MAX {
                continue;
            }
            let mut sat = 0u64;
            let mut uncolored = 0u32;
            for w in VertexSet::from_bits(adj[v]) {
                if color[w] == usize::MAX {
                    uncolored += 1;
                } else {
                    sat |= 1 << color[w];
                }
            }
            let key = (sat.count_ones(), uncolored);
            if pick == usize::MAX || key > best {
                pick = v;
                best = key;
            }
        }
        let v = pick;
        let mut forbidden = 0u64;
        for w in VertexSet::from_bits(adj[v]) {
            if color[w] != usize::MAX {
                forbidden |= 1 << color[w];
            }
        }
        for c in 0..k.min(used + 1) {
            if forbidden >> c & 1 == 1 {
                continue;
            }
            color[v] = c;
            if rec(adj, k, color, colored + 1, used.max(c + 1)) {
                return true;
            }
        }
        color[v] = usize::MAX;
        false
    }
    if n == 0 {
        return Some(color);
    }
    if k == 0 {
        return None;
    }
    rec(adj, k, &mut color, 0, 0).then_some(color)
}

fn greedy_dsatur(adj: &[u64]) -> Vec<usize> {
    let n = adj.len();
    let mut color = vec![usize::MAX; n];
    for _ in 0..n {
        let mut pick = usize::MAX;
        let mut best = (0u32, 0u32);
        for v in 0..n {
            if color[v] != usize::MAX {
                continue;
            }
            let sat = VertexSet::from_bits(adj[v])
                .iter()
                .filter(|&w| color[w] != usize::MAX)
                .fold(0u64, |acc, w| acc | 1 << color[w]);
            let key = (sat.count_ones(), adj[v].count_ones());
            if pick == usize::MAX || key > best {
                pick = v;
                best = key;
            }
        }
        let forbidden = VertexSet::from_bits(adj[pick])
            .iter()
            .filter(|&w| color[w] != usize::MAX)
            .fold(0u64, |acc, w| acc | 1 << color[w]);
        color[pick] = (!forbidden).trailing_zeros() as usize;
    }
    color
}

/// Exact chromatic number of the underlying graph with a witnessing
/// colouring: clique lower bound, DSATUR upper bound, DSATUR branch and
/// bound in between.
pub fn chromatic_number_capped(
    g: &Digraph,
    cap: usize,
) -> Result<ChromaticCertificate, ColoringError> {
    if g.order() > cap {
        return Err(ColoringError::CapExceeded {
            order: g.order(),
            cap,
        });
    }
    let adj = underlying(g);
    let clique = max_clique(g);
    let lower = clique.len();
    let mut coloring = greedy_dsatur(&adj);
    let mut upper = coloring.iter().map(|&c| c + 1).max().unwrap_or(0);
    let mut evidence = LowerBoundEvidence::Clique(clique.to_vec());
    while upper > lower {
        match dsatur_colorable(&adj, upper - 1) {
            Some(c) => {
                coloring = c;
                upper -= 1;
            }
            None => {
                evidence = LowerBoundEvidence::Infeasible { colors: upper - 1 };
                break;
            }
        }
    }
    Ok(ChromaticCertificate {
        chi: upper,
        coloring,
        evidence,
    })
}

pub fn chromatic_number(g: &Digraph) -> Result<ChromaticCertificate, ColoringError> {
    chromatic_number_capped(g, DEFAULT_CHROMATIC_CAP)
}

/// Plain backtracking over vertices in label order. Kept independent of the
/// DSATUR search so the two can check each other.
pub fn is_k_colorable(g: &Digraph, k: usize) -> Result<Option<Vec<usize>>, ColoringError> {
    if k == 0 {
        return Err(ColoringError::ZeroColors);
    }
    if g.order() > DEFAULT_CHROMATIC_CAP {
        return Err(ColoringError::CapExceeded {
            order: g.order(),
            cap: DEFAULT_CHROMATIC_CAP,
        });
    }
    fn rec(g: &Digraph, k: usize, v: usize, used: usize, color: &mut Vec<usize>) -> bool {
        if v == g.order() {
            return true;
        }
        for c in 0..k.min(used + 1) {
            if (0..v).any(|w| g.adjacent(v, w) && color[w] == c) {
                continue;
            }
            color[v] = c;
            if rec(g, k, v + 1, used.max(c + 1), color) {
                return true;
            }
        }
        false
    }
    let mut color = vec![0; g.order()];
    Ok(rec(g, k, 0, 0, &mut color).then_some(color))
}

/// A `t`-critical induced subdigraph: chromatic number exactly `t`, and
/// deleting any vertex drops it below `t`.
///
/// One pass of greedy deletion suffices: a vertex kept because its deletion
/// would drop the chromatic number stays necessary as the digraph shrinks.
pub fn critical_subdigraph(g: &Digraph, t: usize) -> Result<Induced, ColoringError> {
    let chi = chromatic_number(g)?.chi;
    if chi < t {
        return Err(ColoringError::ChromaticTooSmall { required: t, chi });
    }
    let mut keep = g.vertices();
    for v in g.vertices() {
        let trial = keep.without(v);
        let sub = g.induced(trial)?;
        if chromatic_number(&sub.digraph)?.chi >= t {
            keep = trial;
        }
    }
    let result = g.induced(keep)?;
    debug_assert!((0..result.digraph.order()).all(|v| result.digraph.degree(v) + 1 >= t));
    Ok(result)
}

/// Directed path with at least `chi(g)` vertices that cannot be extended at
/// either end.
///
/// Arcs are added in lexicographic order to a spanning acyclic subdigraph
/// unless they would close a cycle; the longest-path level of a vertex in it
/// is a proper colouring of `g`, so some path in it has `chi` vertices. That
/// path is then grown greedily at both ends.
pub fn gallai_roy_path(g: &Digraph) -> Vec<usize> {
    let n = g.order();
    if n == 0 {
        return Vec::new();
    }
    // reach[x] = vertices reachable from x in the acyclic subdigraph.
    let mut reach: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    let mut acyclic_in = vec![0u64; n];
    for (u, v) in g.arcs() {
        if reach[v] >> u & 1 == 1 {
            continue;
        }
        acyclic_in[v] |= 1 << u;
        let rv = reach[v];
        for r in reach.iter_mut() {
            if *r >> u & 1 == 1 {
                *r |= rv;
            }
        }
    }
    // Longest path ending at each vertex: process in topological order,
    // i.e. by decreasing number of reachable vertices.
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(reach[v].count_ones()));
    let mut level = vec![0usize; n];
    let mut pred = vec![usize::MAX; n];
    for &v in &order {
        level[v] = 1;
        for u in VertexSet::from_bits(acyclic_in[v]) {
            if level[u] + 1 > level[v] {
                level[v] = level[u] + 1;
                pred[v] = u;
            }
        }
    }
    let mut end = 0;
    for v in 0..n {
        if level[v] > level[end] {
            end = v;
        }
    }
    let mut path = vec![end];
    while pred[*path.last().unwrap()] != usize::MAX {
        path.push(pred[*path.last().unwrap()]);
    }
    path.reverse();
    extend_directed_path(g, path)
}

/// Greedily appends out-neighbours of the tail and prepends in-neighbours
/// of the head (smallest label first) until neither end extends.
pub fn extend_directed_path(g: &Digraph, mut path: Vec<usize>) -> Vec<usize> {
    let mut on: VertexSet = path.iter().copied().collect();
    loop {
        let tail = *path.last().unwrap();
        if let Some(w) = g.out_set(tail).difference(on).first() {
            path.push(w);
            on.insert(w);
            continue;
        }
        if let Some(w) = g.in_set(path[0]).difference(on).first() {
            path.insert(0, w);
            on.insert(w);
            continue;
        }
        return path;
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeBoundReport {
    pub n: usize,
    pub chi: usize,
    pub clique_number: usize,
    pub max_in_degree: usize,
    pub max_out_degree: usize,
    /// Max in-degree at most `n` and no clique on `2n+1` vertices.
    pub applicable: bool,
    /// `chi <= 2n`, reported only when applicable.
    pub bound_holds: Option<bool>,
    /// Same check with out-degrees (the reversed digraph).
    pub mirrored_applicable: bool,
    pub mirrored_bound_holds: Option<bool>,
}

/// Checks that a digraph with no `K_{2n+1}` whose in-degrees are all at most
/// `n` has chromatic number at most `2n`. Only reports; nothing is claimed
/// when the hypotheses fail.
pub fn check_degree_bound(g: &Digraph, n: usize) -> Result<DegreeBoundReport, ColoringError> {
    if n < 2 {
        return Err(ColoringError::LemmaParameter(n));
    }
    let chi = chromatic_number(g)?.chi;
    let clique_number = clique_number(g);
    let max_in_degree = g.max_in_degree();
    let max_out_degree = g.max_out_degree();
    let no_big_clique = clique_number <= 2 * n;
    let applicable = max_in_degree <= n && no_big_clique;
    let mirrored_applicable = max_out_degree <= n && no_big_clique;
    Ok(DegreeBoundReport {
        n,
        chi,
        clique_number,
        max_in_degree,
        max_out_degree,
        applicable,
        bound_holds: applicable.then_some(chi <= 2 * n),
        mirrored_applicable,
        mirrored_bound_holds: mirrored_applicable.then_some(chi <= 2 * n),
    })
}
