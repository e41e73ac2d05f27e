//! `P(1,l,1)` with `l >= k` in digraphs of chromatic number at least `k+4`.
//!
//! In a `(k+4)`-critical digraph take `P(s,1) = x1 .. x(s+1) y` with `s`
//! maximal. Then `x1` has no in-neighbour off the path; an out-neighbour
//! off the path closes the path at once, and otherwise the first `x_i`,
//! `i >= 3`, adjacent to `x1` does, whichever way the arc between them goes.

use super::trace::{Branch, ProofTrace, TraceStep};
use super::{require_chi, ProofError};
use crate::coloring::critical_subdigraph;
use crate::digraph::{Digraph, VertexSet};
use crate::pattern::{verify_witness, BlockPattern, Matcher, PathWitness};

fn fail(trace: &ProofTrace, step: &str, reason: String) -> ProofError {
    ProofError::InternalInconsistency {
        step: step.to_string(),
        reason,
        trace: Box::new(trace.clone()),
    }
}

pub fn find_p1l1_at_least(host: &Digraph, k: usize) -> Result<(PathWitness, ProofTrace), ProofError> {
    if k == 0 {
        return Err(ProofError::Parameter("k must be positive".into()));
    }
    require_chi(host, k + 4)?;
    let mut trace = ProofTrace::new("t31");
    let crit = critical_subdigraph(&host.oriented_core(), k + 4)?;
    let g = &crit.digraph;
    let lift = |vs: &[usize]| crit.lift(vs);
    let d_host = crit.lift_set(g.vertices());
    trace.push(
        TraceStep::new("critical", Branch::Setup, "pass to a (k+4)-critical induced subdigraph")
            .set("D", d_host)
            .param("k", k)
            .param("min_degree", (0..g.order()).map(|v| g.degree(v)).min().unwrap_or(0)),
    );

    let seed_pattern = BlockPattern::p2(k, 1).map_err(|e| ProofError::Parameter(e.to_string()))?;
    let Some(seed) = Matcher::new(g, &seed_pattern).first() else {
        return Err(fail(&trace, "seed", format!("no {seed_pattern} in a critical digraph")));
    };
    // xs = x1 .. x(s+1); y hangs off the end by a backward arc.
    let mut xs: Vec<usize> = seed.vertices[..=k].to_vec();
    let y = seed.vertices[k + 1];
    trace.push(
        TraceStep::new("seed", Branch::Seed, "start from some P(k,1)")
            .set("D", d_host)
            .set("P", lift(&seed.vertices))
            .path(lift(&seed.vertices))
            .external(),
    );

    let mut on: VertexSet = seed.vertices.iter().copied().collect();
    while let Some(z) = g.in_set(xs[0]).difference(on).first() {
        xs.insert(0, z);
        on.insert(z);
    }
    let s = xs.len() - 1;
    let mut p = xs.clone();
    p.push(y);
    trace.push(
        TraceStep::new("maximal", Branch::Extend, "prepend in-neighbours of x1 until s is maximal")
            .set("D", d_host)
            .set("P", lift(&p))
            .param("s", s)
            .path(lift(&p)),
    );

    // Reading order y, x(s+1), .., x1 gives the common prefix of all exits.
    let backward_from = |stop: usize| -> Vec<usize> {
        let mut w = vec![y];
        w.extend(xs[stop..].iter().rev());
        w
    };
    let x1 = xs[0];
    let (exit, path) = if let Some(z) = g.out_set(x1).difference(on).first() {
        let mut w = backward_from(0);
        w.push(z);
        ("out_neighbour", w)
    } else {
        let Some(idx) = (2..xs.len()).find(|&j| g.adjacent(x1, xs[j])) else {
            return Err(fail(
                &trace,
                "minimal_i",
                "x1 has no neighbour among x3 .. x(s+1) despite its degree".into(),
            ));
        };
        let mut w = backward_from(idx);
        if g.has_arc(x1, xs[idx]) {
            w.push(x1);
            w.push(xs[1]);
            ("x1_to_xi", w)
        } else {
            w.push(x1);
            ("xi_to_x1", w)
        }
    };
    let l = path.len() - 3;
    if l < k {
        return Err(fail(&trace, exit, format!("middle block {l} is shorter than k = {k}")));
    }
    let witness = PathWitness {
        vertices: lift(&path),
        pattern: BlockPattern::p3(1, l, 1).map_err(|e| ProofError::Parameter(e.to_string()))?,
    };
    if !verify_witness(host, &witness) {
        return Err(fail(&trace, exit, "constructed path does not verify".into()));
    }
    trace.push(
        TraceStep::new(exit, Branch::Return, match exit {
            "out_neighbour" => "x1 has an out-neighbour z off P",
            "x1_to_xi" => "arc from x1 to the first x_i adjacent to it",
            _ => "arc from the first x_i adjacent to x1 into x1",
        })
        .set("D", d_host)
        .set("P", lift(&p))
        .param("l", l)
        .path(witness.vertices.clone()),
    );
    trace.outcome = Some(witness.clone());
    Ok((witness, trace))
}
