//! `P(k, m-1-k-i, i)` in digraphs of chromatic number at least `g(m,i)`.
//!
//! Induction on `i`. The vertices of out-degree at least `m-2` form `H`.
//! If `H` is rich enough to hold the pattern with last block one shorter,
//! that path is found recursively and extended by an out-arc of its end;
//! otherwise the rest `H'` has large chromatic number, all its out-degrees
//! are at most `m-3`, so it holds a clique on `2m-5` vertices, and the
//! pattern is found inside that tournament.

use std::ops::ControlFlow;

use super::trace::{Branch, ProofTrace, TraceStep};
use super::{g, require_chi, GIndex, ProofError};
use crate::coloring::{chromatic_number, find_clique};
use crate::digraph::{Digraph, VertexSet};
use crate::pattern::{verify_witness, BlockPattern, Direction, Matcher, PathWitness};

struct Run<'a> {
    trace: &'a mut ProofTrace,
}

fn lift(map: &[usize], vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
    vs.into_iter().map(|v| map[v]).collect()
}

impl Run<'_> {
    fn fail(&mut self, step: &str, reason: String) -> ProofError {
        ProofError::InternalInconsistency {
            step: step.to_string(),
            reason,
            trace: Box::new(self.trace.clone()),
        }
    }

    /// Finds the pattern in `g`, whose vertex `v` is host vertex `map[v]`;
    /// returns it in `g`'s labels.
    fn solve(
        &mut self,
        g: &Digraph,
        map: &[usize],
        m: usize,
        i: usize,
        k: usize,
        depth: usize,
    ) -> Result<Vec<usize>, ProofError> {
        let pattern = BlockPattern::trimmed(&[k, m - 1 - k - i, i], Direction::Forward)
            .map_err(|e| ProofError::Parameter(e.to_string()))?;
        let here = |name: &str, branch: Branch, anchor: &str| {
            TraceStep::new(name, branch, anchor)
                .set("D", map.iter().copied())
                .param("m", m)
                .param("i", i)
                .param("k", k)
                .param("depth", depth)
        };

        if i == 0 || (m == 4 && i == 1) {
            let found = Matcher::new(g, &pattern).first();
            let Some(w) = found else {
                return Err(self.fail(
                    "base",
                    format!("no {pattern} in a digraph of chromatic number >= {}", g_value(m, i)),
                ));
            };
            self.trace.push(
                here("base", Branch::Base, "base case: exhaustive search for the pattern")
                    .set("P", lift(map, w.vertices.iter().copied()))
                    .path(lift(map, w.vertices.iter().copied()))
                    .external(),
            );
            return Ok(w.vertices);
        }

        let h: VertexSet = (0..g.order()).filter(|&v| g.out_degree(v) + 2 >= m).collect();
        let h_prime = g.vertices().difference(h);
        let h_sub = g.induced(h)?;
        let chi_h = chromatic_number(&h_sub.digraph)?.chi;
        let need = g_value(m - 1, i - 1);
        self.trace.push(
            here("split", Branch::Setup, "split by out-degree at least m-2")
                .set("H", lift(map, h))
                .set("H'", lift(map, h_prime))
                .param("chi_H", chi_h)
                .param("g_prev", need),
        );

        if chi_h >= need {
            let h_map: Vec<usize> = h_sub.map.iter().map(|&v| map[v]).collect();
            let q_sub = self.solve(&h_sub.digraph, &h_map, m - 1, i - 1, k, depth + 1)?;
            let q = h_sub.lift(&q_sub);
            let on: VertexSet = q.iter().copied().collect();
            let end = *q.last().unwrap();
            if let Some(u) = g.out_set(end).difference(on).first() {
                let mut path = q.clone();
                path.push(u);
                self.trace.push(
                    here("extend", Branch::RecurseH, "extend the shorter path in H by an out-arc of its end")
                        .set("Q", lift(map, q.iter().copied()))
                        .set("v", [map[end]])
                        .set("u", [map[u]])
                        .path(lift(map, path.iter().copied())),
                );
                return Ok(path);
            }
            // With a one-arc last block the end's out-degree may be used up
            // inside Q; look for an occurrence in H whose end still has an
            // out-neighbour off the path.
            let shorter = BlockPattern::trimmed(&[k, m - 1 - k - i, i - 1], Direction::Forward)
                .map_err(|e| ProofError::Parameter(e.to_string()))?;
            let mut extended = None;
            Matcher::new(g, &shorter)
                .restrict_range(0..shorter.order(), h)
                .for_each(|q| {
                    let on: VertexSet = q.iter().copied().collect();
                    match g.out_set(*q.last().unwrap()).difference(on).first() {
                        Some(u) => {
                            let mut p = q.to_vec();
                            p.push(u);
                            extended = Some((q.to_vec(), p));
                            ControlFlow::Break(())
                        }
                        None => ControlFlow::Continue(()),
                    }
                });
            let Some((q2, path)) = extended else {
                return Err(self.fail(
                    "extend",
                    format!(
                        "no occurrence of {shorter} in H has an end with an out-neighbour off the path"
                    ),
                ));
            };
            self.trace.push(
                here("extend", Branch::Gap, "end of Q has no out-neighbour off Q; choose another Q in H")
                    .set("Q", lift(map, q.iter().copied()))
                    .set("Q2", lift(map, q2.iter().copied()))
                    .set("u", [map[*path.last().unwrap()]])
                    .path(lift(map, path.iter().copied())),
            );
            return Ok(path);
        }

        let hp_sub = g.induced(h_prime)?;
        let chi_hp = chromatic_number(&hp_sub.digraph)?.chi;
        let size = 2 * m - 5;
        let Some(clique) = find_clique(&hp_sub.digraph, size) else {
            return Err(self.fail(
                "tournament",
                format!(
                    "H' has chromatic number {chi_hp} > 2(m-3) with out-degrees at most m-3 but no clique on {size} vertices"
                ),
            ));
        };
        let clique = hp_sub.lift_set(clique);
        let found = Matcher::new(g, &pattern)
            .restrict_range(0..pattern.order(), clique)
            .first();
        let Some(w) = found else {
            return Err(self.fail(
                "tournament",
                format!("tournament on {size} vertices without {pattern}"),
            ));
        };
        self.trace.push(
            here(
                "tournament",
                Branch::TournamentHprime,
                "H' has large chromatic number, so a tournament on 2m-5 vertices; search the pattern inside it (degree bound used in out-degree form)",
            )
            .set("clique", lift(map, clique))
            .param("chi_H'", chi_hp)
            .path(lift(map, w.vertices.iter().copied()))
            .external(),
        );
        Ok(w.vertices)
    }
}

fn g_value(m: usize, i: usize) -> usize {
    g(m, i).expect("arguments stay in the domain") as usize
}

/// A witness for `P(k, m-1-k-i, i)` in `host`, which must have chromatic
/// number at least `g(m,i)`.
pub fn find_three_block_decomposition(
    host: &Digraph,
    k: usize,
    i: usize,
    m: usize,
) -> Result<(PathWitness, ProofTrace), ProofError> {
    let threshold = GIndex::new(m, i)?.value() as usize;
    if k == 0 || k + i + 2 > m {
        return Err(ProofError::Parameter(format!(
            "need 1 <= k <= m-2-i, got k={k}, m={m}, i={i}"
        )));
    }
    require_chi(host, threshold)?;
    let pattern = BlockPattern::trimmed(&[k, m - 1 - k - i, i], Direction::Forward)
        .map_err(|e| ProofError::Parameter(e.to_string()))?;
    let mut trace = ProofTrace::new("l23");
    let core = host.oriented_core();
    trace.push(
        TraceStep::new("core", Branch::Setup, "keep one arc of every digon")
            .set("D", host.vertices())
            .param("chi_threshold", threshold),
    );
    let map: Vec<usize> = (0..host.order()).collect();
    let path = Run { trace: &mut trace }.solve(&core, &map, m, i, k, 0)?;
    let witness = PathWitness {
        vertices: path,
        pattern,
    };
    if !verify_witness(host, &witness) {
        return Err(ProofError::InternalInconsistency {
            step: "return".into(),
            reason: "constructed path does not verify".into(),
            trace: Box::new(trace),
        });
    }
    trace.push(TraceStep::new("return", Branch::Return, "return the path").path(witness.vertices.clone()));
    trace.outcome = Some(witness.clone());
    Ok((witness, trace))
}

/// The flipped pattern, via the reversed digraph: the same vertex sequence
/// realises the flipped path in `host`.
pub fn find_reversed_three_block(
    host: &Digraph,
    k: usize,
    i: usize,
    m: usize,
) -> Result<(PathWitness, ProofTrace), ProofError> {
    let (w, mut trace) = find_three_block_decomposition(&host.reverse(), k, i, m)?;
    trace.finder = "l23_reversed".into();
    trace.reversed = true;
    Ok((w.flipped(), trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{directed_cycle, transitive_tournament};
    use crate::pattern::find_pattern;
    use crate::proofs::check_trace;

    #[test]
    fn tt8_p121() {
        let tt = transitive_tournament(8).unwrap();
        let (w, trace) = find_three_block_decomposition(&tt, 1, 1, 5).unwrap();
        assert_eq!(w.pattern, BlockPattern::p3(1, 2, 1).unwrap());
        assert!(verify_witness(&tt, &w));
        assert!(find_pattern(&tt, &w.pattern).unwrap().is_some());
        check_trace(&tt, &trace).unwrap();
    }

    #[test]
    fn m4_is_base() {
        let tt = transitive_tournament(4).unwrap();
        let (w, trace) = find_three_block_decomposition(&tt, 1, 1, 4).unwrap();
        assert_eq!(w.pattern, BlockPattern::p3(1, 1, 1).unwrap());
        assert!(trace.uses(Branch::Base));
        check_trace(&tt, &trace).unwrap();
    }

    #[test]
    fn reversed() {
        let tt = transitive_tournament(8).unwrap();
        let (w, trace) = find_reversed_three_block(&tt, 1, 1, 5).unwrap();
        assert_eq!(w.pattern, BlockPattern::p3(1, 2, 1).unwrap().flip());
        assert!(verify_witness(&tt, &w));
        assert!(verify_witness(&tt.reverse(), &w.flipped()));
        check_trace(&tt, &trace).unwrap();
        assert!(check_trace(&tt.reverse(), &trace).is_err());
    }

    #[test]
    fn preconditions() {
        let tt = transitive_tournament(7).unwrap();
        assert!(matches!(
            find_three_block_decomposition(&tt, 1, 1, 5),
            Err(ProofError::ChromaticTooSmall { required: 8, chi: 7 })
        ));
        assert!(matches!(
            find_three_block_decomposition(&directed_cycle(5).unwrap(), 3, 1, 4),
            Err(ProofError::Parameter(_))
        ));
        assert!(matches!(
            find_three_block_decomposition(&tt, 1, 2, 5),
            Err(ProofError::Domain { .. })
        ));
    }
}
