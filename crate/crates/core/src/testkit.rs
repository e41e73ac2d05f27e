//! Proptest strategies shared by the unit tests.

use proptest::prelude::*;

use crate::digraph::{Digraph, Mode};
use crate::pattern::{BlockPattern, Direction};

pub fn arb_mode() -> impl Strategy<Value = Mode> {
    prop_oneof![Just(Mode::Oriented), Just(Mode::General)]
}

/// Pair states as in sampling: 0 none, 1 `u->v`, 2 `v->u`, 3 both.
pub fn arb_digraph(min: usize, max: usize) -> impl Strategy<Value = Digraph> {
    (min..=max, arb_mode()).prop_flat_map(|(n, mode)| {
        let states = mode.pair_states() as u8;
        proptest::collection::vec(0..states, n * n.saturating_sub(1) / 2).prop_map(move |s| {
            let mut arcs = Vec::new();
            let mut it = s.into_iter();
            for u in 0..n {
                for v in u + 1..n {
                    match it.next().unwrap() {
                        1 => arcs.push((u, v)),
                        2 => arcs.push((v, u)),
                        3 => arcs.extend([(u, v), (v, u)]),
                        _ => {}
                    }
                }
            }
            Digraph::new(n, arcs, mode).unwrap()
        })
    })
}

/// A composition of a length in `1..=max_len`, from its cut points.
pub fn arb_pattern(max_len: usize) -> impl Strategy<Value = BlockPattern> {
    (1..=max_len, any::<u64>(), any::<bool>()).prop_map(|(len, cuts, fwd)| {
        let mut blocks = vec![1];
        for bit in 0..len - 1 {
            if cuts >> bit & 1 == 1 {
                blocks.push(1);
            } else {
                *blocks.last_mut().unwrap() += 1;
            }
        }
        let d = if fwd { Direction::Forward } else { Direction::Backward };
        BlockPattern::new(blocks, d).unwrap()
    })
}

/// A digraph with a permutation of its vertices.
pub fn arb_relabelled(min: usize, max: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    arb_digraph(min, max).prop_flat_map(|g| {
        let perm = Just((0..g.order()).collect::<Vec<_>>()).prop_shuffle();
        (Just(g), perm)
    })
}
