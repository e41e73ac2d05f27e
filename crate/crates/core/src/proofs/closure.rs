//! Turning a directed run into `P(1,k,1)`.
//!
//! Reading `P(1,k,1)` from its second vertex backwards gives a directed run
//! `c0 -> c1 -> .. -> ck` together with an extra in-neighbour `u` of `ck`
//! and an extra out-neighbour `e` of `c0`, both off the run and distinct.
//! The witness is then `u, ck, .., c0, e`.

use std::ops::ControlFlow;

use crate::digraph::{Digraph, VertexSet};
use crate::pattern::{BlockPattern, Matcher};

/// Closes the run if it is a directed path with the two extra neighbours.
pub(crate) fn close_run(g: &Digraph, run: &[usize]) -> Option<Vec<usize>> {
    let on: VertexSet = run.iter().copied().collect();
    if on.len() != run.len() || run.len() < 2 || run.windows(2).any(|w| !g.has_arc(w[0], w[1])) {
        return None;
    }
    let ins = g.in_set(*run.last().unwrap()).difference(on);
    let outs = g.out_set(run[0]).difference(on);
    let (u, e) = ins
        .iter()
        .flat_map(|u| outs.iter().map(move |e| (u, e)))
        .find(|(u, e)| u != e)?;
    let mut w = Vec::with_capacity(run.len() + 2);
    w.push(u);
    w.extend(run.iter().rev());
    w.push(e);
    Some(w)
}

/// Tries every run in order and returns the first that closes.
pub(crate) fn close_any<'a, I>(g: &Digraph, runs: I) -> Option<Vec<usize>>
where
    I: IntoIterator<Item = &'a Vec<usize>>,
{
    runs.into_iter().find_map(|r| close_run(g, r))
}

/// Every directed run of length `k` whose vertices lie in `pool`, in
/// lexicographic order, until one closes.
pub(crate) fn local_closure(g: &Digraph, pool: VertexSet, k: usize) -> Option<Vec<usize>> {
    let run = BlockPattern::directed(k).ok()?;
    let mut found = None;
    Matcher::new(g, &run)
        .restrict_range(0..k + 1, pool)
        .for_each(|r| match close_run(g, r) {
            Some(w) => {
                found = Some(w);
                ControlFlow::Break(())
            }
            None => ControlFlow::Continue(()),
        });
    found
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::transitive_tournament;
    use crate::pattern::{verify_witness, PathWitness};

    #[test]
    fn closing_a_run_in_tt5() {
        let tt = transitive_tournament(5).unwrap();
        // 1 -> 2 -> 3: in-neighbour of 3 off the run is 0, out-neighbour of 1 is 4.
        let w = close_run(&tt, &[1, 2, 3]).unwrap();
        assert_eq!(w, vec![0, 3, 2, 1, 4]);
        let pw = PathWitness {
            vertices: w,
            pattern: BlockPattern::p3(1, 2, 1).unwrap(),
        };
        assert!(verify_witness(&tt, &pw));
        assert_eq!(close_run(&tt, &[0, 1, 2]), None);
        assert_eq!(close_run(&tt, &[2, 1, 3]), None);
    }

    #[test]
    fn local_closure_respects_pool() {
        let tt = transitive_tournament(5).unwrap();
        assert!(local_closure(&tt, VertexSet::from_bits(0b01110), 2).is_some());
        assert!(local_closure(&tt, VertexSet::from_bits(0b00111), 2).is_none());
    }
}
