//! Exhaustive generation of tournaments and small digraphs.

use std::collections::HashSet;

use crate::canon::{canon_masks, decode, encode, CANON_HARD_CAP};
use crate::digraph::{Digraph, GraphError, Mode, VertexSet};

pub const DEFAULT_TOURNAMENT_CAP: usize = 8;
pub const DEFAULT_DEDUPE_CAP: usize = 5;
pub const DEFAULT_LABELED_CAP: usize = 6;

/// Canonical codes of all tournaments of order `n` up to isomorphism, sorted.
///
/// Orderly generation: every class is obtained from the unique smaller class
/// left after deleting a vertex in the orbit the canonical labelling puts
/// first; only extensions whose new vertex lies in that orbit are kept, and
/// the few duplicates (parents with automorphisms) are removed per parent.
pub fn tournament_codes(n: usize, cap: usize) -> Result<Vec<u128>, GraphError> {
    let cap = cap.min(CANON_HARD_CAP);
    if n > cap {
        return Err(GraphError::CapExceeded {
            what: "tournament enumeration",
            order: n,
            cap,
        });
    }
    let mut level: Vec<u128> = vec![0];
    for m in 1..n {
        level = extend_tournaments(m, &level);
    }
    if n == 0 {
        level = vec![0];
    }
    Ok(level)
}

fn extend_tournaments(m: usize, parents: &[u128]) -> Vec<u128> {
    use rayon::prelude::*;

    let new = m;
    let mut codes: Vec<u128> = parents
        .par_iter()
        .flat_map_iter(|&code| {
            let base = decode(m, code);
            let scores: Vec<u32> = base.iter().map(|r| r.count_ones()).collect();
            let mut local: Vec<u128> = Vec::new();
            let mut seen: HashSet<u128> = HashSet::new();
            let mut out = vec![0u64; m + 1];
            let mut inn = vec![0u64; m + 1];
            for subset in 0u64..(1u64 << m) {
                let s = subset.count_ones();
                // The new vertex must reach the maximum score, else it cannot
                // sit in the first canonical cell.
                let ok = (0..m).all(|u| scores[u] + ((subset >> u & 1) ^ 1) as u32 <= s);
                if !ok {
                    continue;
                }
                for u in 0..m {
                    out[u] = base[u] | (((subset >> u & 1) ^ 1) << new);
                }
                out[new] = subset;
                inn[..=m].fill(0);
                for (u, &row) in out.iter().enumerate() {
                    for v in VertexSet::from_bits(row) {
                        inn[v] |= 1u64 << u;
                    }
                }
                let c = canon_masks(&out, &inn);
                if c.first_orbit.contains(new) && seen.insert(c.code) {
                    local.push(c.code);
                }
            }
            local
        })
        .collect();
    codes.par_sort_unstable();
    codes
}

/// All tournaments of order `n` up to isomorphism, in canonical-code order.
pub fn enumerate_tournaments(n: usize, cap: usize) -> Result<Vec<Digraph>, GraphError> {
    Ok(tournament_codes(n, cap)?
        .into_iter()
        .map(|c| tournament_from_code(n, c))
        .collect())
}

pub fn tournament_from_code(n: usize, code: u128) -> Digraph {
    Digraph::from_out_masks(Mode::Oriented, decode(n, code))
}

/// Number of labelled digraphs on `n` vertices in `mode`.
pub fn labeled_count(n: usize, mode: Mode) -> u64 {
    mode.pair_states().pow((n * n.saturating_sub(1) / 2) as u32)
}

/// The labelled digraph with enumeration index `index`.
///
/// Pairs `(u,v)`, `u < v`, are taken in lexicographic order; the first pair
/// is the most significant base-3 (oriented) or base-4 (general) digit with
/// states 0 = none, 1 = `u->v`, 2 = `v->u`, 3 = both.
pub fn labeled_digraph(n: usize, mode: Mode, index: u64) -> Digraph {
    let base = mode.pair_states();
    let pairs = n * n.saturating_sub(1) / 2;
    let mut digits = vec![0u64; pairs];
    let mut x = index;
    for d in digits.iter_mut().rev() {
        *d = x % base;
        x /= base;
    }
    let mut out = vec![0u64; n];
    let mut p = 0;
    for u in 0..n {
        for v in u + 1..n {
            match digits[p] {
                1 => out[u] |= 1 << v,
                2 => out[v] |= 1 << u,
                3 => {
                    out[u] |= 1 << v;
                    out[v] |= 1 << u;
                }
                _ => {}
            }
            p += 1;
        }
    }
    Digraph::from_out_masks(mode, out)
}

/// True when `g` is the canonical representative of its isomorphism class,
/// i.e. its own labelling already achieves the canonical code.
pub fn is_canonical_representative(g: &Digraph) -> bool {
    canon_masks(g.out_masks(), g.in_masks()).code == encode(g.out_masks())
}

/// Streams labelled digraphs of order `n`, optionally keeping one
/// representative per isomorphism class.
#[derive(Debug, Clone)]
pub struct DigraphEnumeration {
    n: usize,
    mode: Mode,
    dedupe: bool,
    next: u64,
    end: u64,
}

/// Exhaustive labelled enumeration, capped at `labeled_cap` vertices, or
/// isomorph-free enumeration capped at `dedupe_cap`.
pub fn enumerate_digraphs(
    n: usize,
    mode: Mode,
    dedupe: bool,
    cap: usize,
) -> Result<DigraphEnumeration, GraphError> {
    if n > cap || (dedupe && n > CANON_HARD_CAP) {
        return Err(GraphError::CapExceeded {
            what: if dedupe {
                "isomorph-free digraph enumeration"
            } else {
                "labelled digraph enumeration"
            },
            order: n,
            cap,
        });
    }
    Ok(DigraphEnumeration {
        n,
        mode,
        dedupe,
        next: 0,
        end: labeled_count(n, mode),
    })
}

impl DigraphEnumeration {
    /// Restricts to the indices whose leading pair states (the prefix of the
    /// pair-state vector) fall into shard `shard` of `shards`.
    pub fn shard(mut self, shard: u64, shards: u64) -> Self {
        let total = self.end;
        let lo = total / shards * shard + (shard).min(total % shards);
        let hi = lo + total / shards + u64::from(shard < total % shards);
        self.next = lo;
        self.end = hi;
        self
    }

    pub fn index_range(&self) -> std::ops::Range<u64> {
        self.next..self.end
    }

    pub fn order(&self) -> usize {
        self.n
    }
}

impl Iterator for DigraphEnumeration {
    type Item = Digraph;

    fn next(&mut self) -> Option<Digraph> {
        while self.next < self.end {
            let g = labeled_digraph(self.n, self.mode, self.next);
            self.next += 1;
            if !self.dedupe || is_canonical_representative(&g) {
                return Some(g);
            }
        }
        None
    }
}
