//! Oriented paths described by their blocks, and the exhaustive matcher that
//! decides containment.
//!
//! A pattern is a list of block lengths plus the direction of the first
//! block; directions alternate. Position `j` of a witness is joined to
//! position `j+1` by an arc `w[j] -> w[j+1]` (forward) or `w[j+1] -> w[j]`
//! (backward).

use std::fmt;
use std::ops::ControlFlow;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::digraph::{Digraph, VertexSet};

pub const TOURNAMENT_REPORT_CAP: usize = 7;
pub const LISTING_CAP: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("a pattern needs at least one block")]
    NoBlocks,
    #[error("block {index} has length zero")]
    ZeroBlock { index: usize },
    #[error("pattern of order {pattern} does not fit in a host of order {host}")]
    TooLarge { pattern: usize, host: usize },
    #[error("host is not a tournament")]
    NotATournament,
    #[error("order {order} exceeds cap {cap}")]
    CapExceeded { order: usize, cap: usize },
    #[error("cannot parse pattern `{0}`")]
    Parse(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flipped(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    pub fn short(self) -> &'static str {
        match self {
            Direction::Forward => "fwd",
            Direction::Backward => "bwd",
        }
    }
}

impl FromStr for Direction {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "fwd" | "forward" => Ok(Direction::Forward),
            "bwd" | "backward" => Ok(Direction::Backward),
            _ => Err(PatternError::Parse(s.to_string())),
        }
    }
}

/// An oriented path type: block lengths and the first block's direction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BlockPattern {
    blocks: Vec<usize>,
    first: Direction,
}

impl BlockPattern {
    pub fn new(blocks: Vec<usize>, first: Direction) -> Result<Self, PatternError> {
        if blocks.is_empty() {
            return Err(PatternError::NoBlocks);
        }
        if let Some(index) = blocks.iter().position(|&b| b == 0) {
            return Err(PatternError::ZeroBlock { index });
        }
        Ok(BlockPattern { blocks, first })
    }

    /// Like [`BlockPattern::new`] but drops zero-length blocks at either end,
    /// so `P(k, l, 0)` is the two-block path `P(k, l)`.
    pub fn trimmed(blocks: &[usize], first: Direction) -> Result<Self, PatternError> {
        let start = blocks.iter().position(|&b| b != 0).ok_or(PatternError::NoBlocks)?;
        let end = blocks.iter().rposition(|&b| b != 0).unwrap() + 1;
        let first = if start % 2 == 1 { first.flipped() } else { first };
        BlockPattern::new(blocks[start..end].to_vec(), first)
    }

    /// `P(k,l,r)`: `k` forward arcs, `l` backward, `r` forward.
    pub fn p3(k: usize, l: usize, r: usize) -> Result<Self, PatternError> {
        BlockPattern::new(vec![k, l, r], Direction::Forward)
    }

    /// `P(k,l)`: `k` forward arcs then `l` backward.
    pub fn p2(k: usize, l: usize) -> Result<Self, PatternError> {
        BlockPattern::new(vec![k, l], Direction::Forward)
    }

    pub fn directed(len: usize) -> Result<Self, PatternError> {
        BlockPattern::new(vec![len], Direction::Forward)
    }

    pub fn blocks(&self) -> &[usize] {
        &self.blocks
    }

    pub fn first_direction(&self) -> Direction {
        self.first
    }

    /// Number of arcs.
    pub fn length(&self) -> usize {
        self.blocks.iter().sum()
    }

    /// Number of vertices.
    pub fn order(&self) -> usize {
        self.length() + 1
    }

    pub fn arc_directions(&self) -> Vec<Direction> {
        let mut dirs = Vec::with_capacity(self.length());
        let mut d = self.first;
        for &b in &self.blocks {
            dirs.extend(std::iter::repeat_n(d, b));
            d = d.flipped();
        }
        dirs
    }

    /// Every arc reversed: `P <-> P-bar`.
    pub fn flip(&self) -> BlockPattern {
        BlockPattern {
            blocks: self.blocks.clone(),
            first: self.first.flipped(),
        }
    }

    /// The same path read from its other end: `P(k,l,r) -> P-bar(r,l,k)`.
    pub fn mirror(&self) -> BlockPattern {
        let last = if self.blocks.len() % 2 == 1 {
            self.first
        } else {
            self.first.flipped()
        };
        BlockPattern {
            blocks: self.blocks.iter().rev().copied().collect(),
            first: last.flipped(),
        }
    }

    /// All blocks of length one.
    pub fn is_antidirected(&self) -> bool {
        self.blocks.iter().all(|&b| b == 1)
    }

    /// Every pattern with `len` arcs: each composition of `len`, with both
    /// first directions, compositions in lexicographic order.
    pub fn all_of_length(len: usize) -> Vec<BlockPattern> {
        fn compositions(rest: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
            if rest == 0 {
                out.push(cur.clone());
                return;
            }
            for b in 1..=rest {
                cur.push(b);
                compositions(rest - b, cur, out);
                cur.pop();
            }
        }
        let mut comps = Vec::new();
        if len > 0 {
            compositions(len, &mut Vec::new(), &mut comps);
        }
        comps
            .into_iter()
            .flat_map(|c| {
                [Direction::Forward, Direction::Backward].map(|d| BlockPattern {
                    blocks: c.clone(),
                    first: d,
                })
            })
            .collect()
    }
}

impl fmt::Display for BlockPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let blocks: Vec<String> = self.blocks.iter().map(|b| b.to_string()).collect();
        write!(f, "{}/{}", blocks.join(","), self.first.short())
    }
}

impl FromStr for BlockPattern {
    type Err = PatternError;

    /// `k,l,r/fwd`; the direction suffix defaults to forward.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (blocks, dir) = match s.split_once('/') {
            Some((b, d)) => (b, d.parse()?),
            None => (s, Direction::Forward),
        };
        let blocks = blocks
            .split(',')
            .map(|t| t.trim().parse::<usize>().map_err(|_| PatternError::Parse(s.into())))
            .collect::<Result<Vec<_>, _>>()?;
        BlockPattern::new(blocks, dir)
    }
}

/// Vertex sequence realising a pattern in some host.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathWitness {
    pub vertices: Vec<usize>,
    pub pattern: BlockPattern,
}

impl PathWitness {
    /// Arcs of the occurrence, in path order.
    pub fn arcs(&self) -> Vec<(usize, usize)> {
        self.pattern
            .arc_directions()
            .iter()
            .enumerate()
            .map(|(j, d)| match d {
                Direction::Forward => (self.vertices[j], self.vertices[j + 1]),
                Direction::Backward => (self.vertices[j + 1], self.vertices[j]),
            })
            .collect()
    }

    /// The same vertex sequence read as the flipped pattern (valid in the
    /// reversed host).
    pub fn flipped(&self) -> PathWitness {
        PathWitness {
            vertices: self.vertices.clone(),
            pattern: self.pattern.flip(),
        }
    }

    /// Reversed vertex sequence realising the mirrored pattern.
    pub fn mirrored(&self) -> PathWitness {
        PathWitness {
            vertices: self.vertices.iter().rev().copied().collect(),
            pattern: self.pattern.mirror(),
        }
    }
}

/// Distinct vertices and every arc present with the right direction.
///
/// Deliberately written without the matcher's machinery.
pub fn verify_witness(g: &Digraph, w: &PathWitness) -> bool {
    if w.vertices.len() != w.pattern.length() + 1 {
        return false;
    }
    let mut seen = vec![false; g.order()];
    for &v in &w.vertices {
        if v >= g.order() || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    let mut position = 0;
    let mut forward = w.pattern.first_direction() == Direction::Forward;
    for &block in w.pattern.blocks() {
        for _ in 0..block {
            let (a, b) = (w.vertices[position], w.vertices[position + 1]);
            let ok = if forward { g.has_arc(a, b) } else { g.has_arc(b, a) };
            if !ok {
                return false;
            }
            position += 1;
        }
        forward = !forward;
    }
    true
}

/// Depth-first matcher filling positions left to right, ascending labels,
/// so the first witness found is the lexicographically smallest.
pub struct Matcher<'a> {
    g: &'a Digraph,
    pattern: BlockPattern,
    forward: Vec<bool>,
    allowed: Vec<u64>,
}

impl<'a> Matcher<'a> {
    pub fn new(g: &'a Digraph, pattern: &BlockPattern) -> Self {
        let all = g.vertices().bits();
        Matcher {
            g,
            forward: pattern
                .arc_directions()
                .iter()
                .map(|&d| d == Direction::Forward)
                .collect(),
            allowed: vec![all; pattern.order()],
            pattern: pattern.clone(),
        }
    }

    /// Only vertices of `set` may occupy `position`.
    pub fn restrict(mut self, position: usize, set: VertexSet) -> Self {
        self.allowed[position] &= set.bits();
        self
    }

    /// Restricts a range of positions at once.
    pub fn restrict_range(mut self, positions: std::ops::Range<usize>, set: VertexSet) -> Self {
        for p in positions {
            self.allowed[p] &= set.bits();
        }
        self
    }

    fn walk<F>(&self, path: &mut Vec<usize>, used: u64, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let j = path.len();
        if j == self.allowed.len() {
            return visit(path);
        }
        let mut cand = self.allowed[j] & !used;
        if j > 0 {
            let prev = path[j - 1];
            cand &= if self.forward[j - 1] {
                self.g.out_masks()[prev]
            } else {
                self.g.in_masks()[prev]
            };
        }
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            path.push(v);
            let flow = self.walk(path, used | 1 << v, visit);
            path.pop();
            flow?;
        }
        ControlFlow::Continue(())
    }

    /// Visits every occurrence in lexicographic order until `visit` breaks.
    pub fn for_each<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        if self.pattern.order() > self.g.order() {
            return;
        }
        let _ = self.walk(&mut Vec::with_capacity(self.allowed.len()), 0, &mut visit);
    }

    pub fn first(&self) -> Option<PathWitness> {
        let mut found = None;
        self.for_each(|p| {
            found = Some(p.to_vec());
            ControlFlow::Break(())
        });
        found.map(|vertices| PathWitness {
            vertices,
            pattern: self.pattern.clone(),
        })
    }
}

/// First (lexicographically smallest) occurrence of `pattern` in `g`, as a
/// not-necessarily-induced subdigraph.
pub fn find_pattern(g: &Digraph, pattern: &BlockPattern) -> Result<Option<PathWitness>, PatternError> {
    if pattern.order() > g.order() {
        return Err(PatternError::TooLarge {
            pattern: pattern.order(),
            host: g.order(),
        });
    }
    Ok(Matcher::new(g, pattern).first())
}

/// Like [`find_pattern`] but a pattern larger than the host is simply absent.
pub fn contains(g: &Digraph, pattern: &BlockPattern) -> Option<PathWitness> {
    Matcher::new(g, pattern).first()
}

/// Every occurrence, for hosts of order at most [`LISTING_CAP`].
pub fn list_witnesses(g: &Digraph, pattern: &BlockPattern) -> Result<Vec<PathWitness>, PatternError> {
    if g.order() > LISTING_CAP {
        return Err(PatternError::CapExceeded {
            order: g.order(),
            cap: LISTING_CAP,
        });
    }
    let mut all = Vec::new();
    Matcher::new(g, pattern).for_each(|p| {
        all.push(PathWitness {
            vertices: p.to_vec(),
            pattern: pattern.clone(),
        });
        ControlFlow::Continue(())
    });
    Ok(all)
}

/// Some `P(1,l,1)` with `l >= k`, trying `l = k, k+1, ..` in turn.
pub fn find_p1l1_at_least(g: &Digraph, k: usize) -> Option<PathWitness> {
    (k.max(1)..=g.order().saturating_sub(3))
        .find_map(|l| contains(g, &BlockPattern::p3(1, l, 1).expect("positive blocks")))
}

#[derive(Debug, Clone, Serialize)]
pub struct PatternOutcome {
    pub pattern: BlockPattern,
    pub witness: Option<PathWitness>,
}

/// Which spanning oriented paths a tournament contains.
#[derive(Debug, Clone, Serialize)]
pub struct TournamentPathReport {
    pub order: usize,
    pub outcomes: Vec<PatternOutcome>,
}

impl TournamentPathReport {
    pub fn missing(&self) -> Vec<&BlockPattern> {
        self.outcomes
            .iter()
            .filter(|o| o.witness.is_none())
            .map(|o| &o.pattern)
            .collect()
    }
}

/// Checks every pattern with `|T| - 1` arcs against the tournament `t`.
pub fn contains_all_paths_report(t: &Digraph) -> Result<TournamentPathReport, PatternError> {
    if !t.is_tournament() {
        return Err(PatternError::NotATournament);
    }
    if t.order() > TOURNAMENT_REPORT_CAP {
        return Err(PatternError::CapExceeded {
            order: t.order(),
            cap: TOURNAMENT_REPORT_CAP,
        });
    }
    let outcomes = BlockPattern::all_of_length(t.order().saturating_sub(1))
        .into_iter()
        .map(|pattern| PatternOutcome {
            witness: contains(t, &pattern),
            pattern,
        })
        .collect();
    Ok(TournamentPathReport {
        order: t.order(),
        outcomes,
    })
}
