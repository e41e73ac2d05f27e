//! Canonical labelling by partition refinement and individualisation.
//!
//! The canonical code of a digraph is the smallest adjacency encoding over
//! all leaves of the refinement search tree. Every leaf is visited, so the
//! search also yields the automorphism orbit of the vertex placed first,
//! which the tournament generator uses for orderly extension.

use crate::digraph::{Digraph, GraphError, VertexSet};

/// Hard limit: the adjacency encoding needs `n(n-1)` bits of a `u128`.
pub const CANON_HARD_CAP: usize = 11;
pub const DEFAULT_CANON_CAP: usize = 10;

/// Result of canonical labelling.
#[derive(Debug, Clone)]
pub struct Canon {
    pub order: usize,
    /// Row-major off-diagonal adjacency bits of the canonically relabelled
    /// digraph, first bit most significant.
    pub code: u128,
    /// `perm[i]` is the vertex placed at canonical position `i`.
    pub perm: Vec<usize>,
    /// Vertices that some optimal leaf places at position 0.
    pub first_orbit: VertexSet,
}

/// Off-diagonal adjacency encoding under the identity labelling.
pub fn encode(out: &[u64]) -> u128 {
    let n = out.len();
    let mut code = 0u128;
    for (u, &row) in out.iter().enumerate() {
        for v in 0..n {
            if v != u {
                code = code << 1 | (row >> v & 1) as u128;
            }
        }
    }
    code
}

/// Inverse of [`encode`].
pub fn decode(n: usize, code: u128) -> Vec<u64> {
    let bits = n * n.saturating_sub(1);
    let mut out = vec![0u64; n];
    let mut idx = 0;
    for (u, row) in out.iter_mut().enumerate() {
        for v in 0..n {
            if v != u {
                if code >> (bits - 1 - idx) & 1 == 1 {
                    *row |= 1u64 << v;
                }
                idx += 1;
            }
        }
    }
    out
}

struct Search<'a> {
    n: usize,
    out: &'a [u64],
    inn: &'a [u64],
    best: Option<u128>,
    best_perm: Vec<usize>,
    first_orbit: u64,
}

impl Search<'_> {
    /// Splits cells until every vertex in a cell has the same number of out-
    /// and in-neighbours in every cell. Sub-cells are ordered by descending
    /// signature, so the first cell holds the largest out-degrees.
    fn refine(&self, cells: &mut Vec<u64>) {
        let mut sig = [0u128; 64];
        loop {
            let k = cells.len();
            if k == self.n {
                return;
            }
            for &cell in cells.iter() {
                if cell.count_ones() < 2 {
                    continue;
                }
                let mut c = cell;
                while c != 0 {
                    let v = c.trailing_zeros() as usize;
                    c &= c - 1;
                    let mut s = 0u128;
                    for &other in cells.iter() {
                        let o = (self.out[v] & other).count_ones() as u128;
                        let i = (self.inn[v] & other).count_ones() as u128;
                        s = s << 8 | o << 4 | i;
                    }
                    sig[v] = s;
                }
            }
            let mut next: Vec<u64> = Vec::with_capacity(self.n);
            let mut split = false;
            for &cell in cells.iter() {
                if cell.count_ones() < 2 {
                    next.push(cell);
                    continue;
                }
                let mut members: Vec<(u128, usize)> = VertexSet::from_bits(cell)
                    .iter()
                    .map(|v| (sig[v], v))
                    .collect();
                members.sort_unstable_by_key(|m| std::cmp::Reverse(m.0));
                let mut current = 0u64;
                let mut current_sig = members[0].0;
                for &(s, v) in &members {
                    if s != current_sig {
                        next.push(current);
                        current = 0;
                        current_sig = s;
                        split = true;
                    }
                    current |= 1u64 << v;
                }
                next.push(current);
            }
            *cells = next;
            if !split {
                return;
            }
        }
    }

    fn leaf(&mut self, cells: &[u64]) {
        let perm: Vec<usize> = cells.iter().map(|c| c.trailing_zeros() as usize).collect();
        let mut code = 0u128;
        for &u in &perm {
            for &v in &perm {
                if v != u {
                    code = code << 1 | (self.out[u] >> v & 1) as u128;
                }
            }
        }
        match self.best {
            Some(b) if code > b => {}
            Some(b) if code == b => self.first_orbit |= 1u64 << perm[0],
            _ => {
                self.best = Some(code);
                self.first_orbit = 1u64 << perm[0];
                self.best_perm = perm;
            }
        }
    }

    fn descend(&mut self, mut cells: Vec<u64>) {
        self.refine(&mut cells);
        let Some(target) = cells.iter().position(|c| c.count_ones() > 1) else {
            self.leaf(&cells);
            return;
        };
        let cell = cells[target];
        for v in VertexSet::from_bits(cell) {
            let mut child = Vec::with_capacity(cells.len() + 1);
            child.extend_from_slice(&cells[..target]);
            child.push(1u64 << v);
            child.push(cell & !(1u64 << v));
            child.extend_from_slice(&cells[target + 1..]);
            self.descend(child);
        }
    }
}

/// Canonical labelling of a raw out/in mask pair; no cap checks.
pub(crate) fn canon_masks(out: &[u64], inn: &[u64]) -> Canon {
    let n = out.len();
    let mut search = Search {
        n,
        out,
        inn,
        best: None,
        best_perm: Vec::new(),
        first_orbit: 0,
    };
    if n == 0 {
        return Canon {
            order: 0,
            code: 0,
            perm: Vec::new(),
            first_orbit: VertexSet::EMPTY,
        };
    }
    search.descend(vec![VertexSet::full(n).bits()]);
    Canon {
        order: n,
        code: search.best.unwrap_or(0),
        perm: search.best_perm,
        first_orbit: VertexSet::from_bits(search.first_orbit),
    }
}

/// Canonical labelling of `g`, refusing orders above `cap`.
pub fn canonical_labeling(g: &Digraph, cap: usize) -> Result<Canon, GraphError> {
    let cap = cap.min(CANON_HARD_CAP);
    if g.order() > cap {
        return Err(GraphError::CapExceeded {
            what: "canonical form",
            order: g.order(),
            cap,
        });
    }
    Ok(canon_masks(g.out_masks(), g.in_masks()))
}

/// Byte string equal for two digraphs iff they are isomorphic: the order,
/// then the canonical adjacency code big-endian.
pub fn canonical_form(g: &Digraph, cap: usize) -> Result<Vec<u8>, GraphError> {
    let c = canonical_labeling(g, cap)?;
    Ok(code_bytes(c.order, c.code))
}

pub(crate) fn code_bytes(n: usize, code: u128) -> Vec<u8> {
    let bits = n * n.saturating_sub(1);
    let nbytes = bits.div_ceil(8);
    let mut bytes = vec![n as u8];
    let shifted = code << (nbytes * 8 - bits);
    bytes.extend_from_slice(&shifted.to_be_bytes()[16 - nbytes..]);
    bytes
}

/// The canonically relabelled copy of `g` (mode preserved).
pub fn canonical_digraph(g: &Digraph, cap: usize) -> Result<Digraph, GraphError> {
    let c = canonical_labeling(g, cap)?;
    Ok(g.relabel(&c.perm))
}

pub fn is_isomorphic(a: &Digraph, b: &Digraph, cap: usize) -> Result<bool, GraphError> {
    if a.order() != b.order() || a.arc_count() != b.arc_count() {
        return Ok(false);
    }
    Ok(canonical_labeling(a, cap)?.code == canonical_labeling(b, cap)?.code)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{fixture, transitive_tournament, Mode};

    /// Smallest encoding over every permutation; independent of refinement.
    fn brute_force_min(g: &Digraph) -> u128 {
        fn rec(g: &Digraph, perm: &mut Vec<usize>, used: u64, best: &mut u128) {
            let n = g.order();
            if perm.len() == n {
                *best = (*best).min(encode(g.relabel(perm).out_masks()));
                return;
            }
            for v in 0..n {
                if used >> v & 1 == 0 {
                    perm.push(v);
                    rec(g, perm, used | 1 << v, best);
                    perm.pop();
                }
            }
        }
        let mut best = u128::MAX;
        rec(g, &mut Vec::new(), 0, &mut best);
        best
    }

    #[test]
    fn encode_decode_roundtrip() {
        let g = fixture("paley7").unwrap();
        assert_eq!(decode(7, encode(g.out_masks())), g.out_masks());
    }

    #[test]
    fn relabelling_does_not_change_form() {
        let tt5 = transitive_tournament(5).unwrap();
        let base = canonical_form(&tt5, 10).unwrap();
        let permuted = tt5.relabel(&[3, 0, 4, 1, 2]);
        assert_eq!(canonical_form(&permuted, 10).unwrap(), base);
        assert_eq!(canonical_form(&tt5.relabel(&[0, 1, 2, 3, 4]), 10).unwrap(), base);
    }

    #[test]
    fn c3_differs_from_tt3() {
        let c3 = fixture("c3").unwrap();
        let tt3 = transitive_tournament(3).unwrap();
        assert_ne!(canonical_form(&c3, 10).unwrap(), canonical_form(&tt3, 10).unwrap());
    }

    #[test]
    fn cap_is_enforced() {
        let tt = transitive_tournament(11).unwrap();
        assert!(canonical_form(&tt, 10).is_err());
        assert!(canonical_form(&tt, 11).is_ok());
        assert!(canonical_form(&transitive_tournament(12).unwrap(), 64).is_err());
    }

    #[test]
    fn canonical_code_is_a_relabelling_of_the_input() {
        // The canonical code is realised by `perm`, so it can never be
        // smaller than the brute-force minimum over all permutations.
        let g = Digraph::new(5, [(0, 1), (1, 2), (2, 0), (3, 4), (0, 4)], Mode::Oriented).unwrap();
        let c = canonical_labeling(&g, 10).unwrap();
        assert_eq!(encode(g.relabel(&c.perm).out_masks()), c.code);
        assert!(c.code >= brute_force_min(&g));
    }

    #[test]
    fn first_orbit_of_vertex_transitive_tournament_is_everything() {
        let p7 = fixture("paley7").unwrap();
        let c = canonical_labeling(&p7, 10).unwrap();
        assert_eq!(c.first_orbit, p7.vertices());
        let tt = transitive_tournament(6).unwrap();
        assert_eq!(canonical_labeling(&tt, 10).unwrap().first_orbit.len(), 1);
    }

    #[test]
    fn code_bytes_layout() {
        assert_eq!(code_bytes(0, 0), vec![0]);
        // n = 2 has two bits; 0->1 only gives 0b10, left aligned.
        assert_eq!(code_bytes(2, 0b10), vec![2, 0b1000_0000]);
    }

    mod props {
        use proptest::prelude::*;

        use super::super::*;
        use crate::testkit::arb_relabelled;

        proptest! {
            #[test]
            fn invariant_under_relabelling((g, perm) in arb_relabelled(1, 8)) {
                let h = g.relabel(&perm);
                prop_assert_eq!(canonical_form(&g, 8).unwrap(), canonical_form(&h, 8).unwrap());
                let c = canonical_labeling(&g, 8).unwrap();
                prop_assert_eq!(canonical_digraph(&g, 8).unwrap(), g.relabel(&c.perm));
            }
        }
    }
}
