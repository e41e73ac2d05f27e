//! `P(1,k,1)` in digraphs of chromatic number at least `3k+4`, through the
//! set `U` of vertices where some `P(k,1)` starts.
//!
//! A vertex `u` of `U` with out-degree at least `k+2` has an out-neighbour
//! off any `P(k,1)` starting at `u`, and that arc closes the path. If no
//! vertex of `U` has such out-degree, `U` has small chromatic number by the
//! in-degree colouring bound (in out-degree form), so the rest of the
//! digraph still has chromatic number `k+2` and holds a `P(k,1)` starting
//! outside `U`, which is absurd.

use super::trace::{Branch, ProofTrace, TraceStep};
use super::{require_chi, ProofError};
use crate::coloring::{chromatic_number, find_clique};
use crate::digraph::{Digraph, VertexSet};
use crate::pattern::{verify_witness, BlockPattern, Matcher, PathWitness};

fn fail(trace: &ProofTrace, step: &str, reason: String) -> ProofError {
    ProofError::InternalInconsistency {
        step: step.to_string(),
        reason,
        trace: Box::new(trace.clone()),
    }
}

pub fn find_p1k1_via_origins(host: &Digraph, k: usize) -> Result<(PathWitness, ProofTrace), ProofError> {
    if k == 0 {
        return Err(ProofError::Parameter("k must be positive".into()));
    }
    require_chi(host, 3 * k + 4)?;
    let target = BlockPattern::p3(1, k, 1).map_err(|e| ProofError::Parameter(e.to_string()))?;
    let seed = BlockPattern::p2(k, 1).map_err(|e| ProofError::Parameter(e.to_string()))?;
    let g = host.oriented_core();
    let mut trace = ProofTrace::new("origins");
    let starting_at = |u: usize| {
        Matcher::new(&g, &seed)
            .restrict(0, VertexSet::singleton(u))
            .first()
    };
    let u_set: VertexSet = g.vertices().iter().filter(|&u| starting_at(u).is_some()).collect();
    trace.push(
        TraceStep::new("origins", Branch::Setup, "U: vertices where some P(k,1) starts")
            .set("D", g.vertices())
            .set("U", u_set)
            .param("k", k)
            .external(),
    );
    if u_set.is_empty() {
        return Err(fail(&trace, "origins", "no P(k,1) at all".into()));
    }

    if let Some(u) = u_set.iter().find(|&u| g.out_degree(u) >= k + 2) {
        let pu = starting_at(u).expect("u is an origin");
        let on: VertexSet = pu.vertices.iter().copied().collect();
        let Some(z) = g.out_set(u).difference(on).first() else {
            return Err(fail(&trace, "extend", format!("out-degree of {u} is used up inside P_u")));
        };
        // P_u = u -> .. -> w_k <- w_(k+1); read it from w_(k+1) back to u.
        let mut path: Vec<usize> = pu.vertices.iter().rev().copied().collect();
        path.push(z);
        let witness = PathWitness {
            vertices: path,
            pattern: target,
        };
        if !verify_witness(host, &witness) {
            return Err(fail(&trace, "extend", "constructed path does not verify".into()));
        }
        trace.push(
            TraceStep::new("extend", Branch::Return, "u in U with out-degree above k+1: add the arc (u,z)")
                .set("D", g.vertices())
                .set("u", [u])
                .set("P_u", pu.vertices.iter().copied())
                .set("z", [z])
                .path(witness.vertices.clone()),
        );
        trace.outcome = Some(witness.clone());
        return Ok((witness, trace));
    }

    let rest = g.vertices().difference(u_set);
    let rest_sub = g.induced(rest)?;
    let u_sub = g.induced(u_set)?;
    let chi_rest = chromatic_number(&rest_sub.digraph)?.chi;
    let chi_u = chromatic_number(&u_sub.digraph)?.chi;
    trace.push(
        TraceStep::new("low_degree", Branch::Claim, "every vertex of U has out-degree at most k+1")
            .set("D", g.vertices())
            .set("U", u_set)
            .param("k", k)
            .param("chi_U", chi_u)
            .param("chi_rest", chi_rest),
    );
    if chi_rest >= k + 2 {
        let found = Matcher::new(&g, &seed)
            .restrict_range(0..seed.order(), rest)
            .first();
        return Err(fail(
            &trace,
            "rest",
            match found {
                Some(w) => format!("P(k,1) {:?} starts outside U", w.vertices),
                None => format!("D-U has chromatic number {chi_rest} but no P(k,1)"),
            },
        ));
    }
    // U has chromatic number above 2k+2 with out-degrees at most k+1, so the
    // degree bound only fails through a clique on 2k+3 vertices; such a
    // tournament holds the path.
    let size = 2 * k + 3;
    let Some(clique) = find_clique(&u_sub.digraph, size) else {
        return Err(fail(
            &trace,
            "clique",
            format!("U has chromatic number {chi_u} > 2k+2, out-degrees at most k+1 and no clique on {size} vertices"),
        ));
    };
    let clique = u_sub.lift_set(clique);
    let Some(w) = Matcher::new(&g, &target)
        .restrict_range(0..target.order(), clique)
        .first()
    else {
        return Err(fail(&trace, "clique", format!("tournament on {size} vertices without {target}")));
    };
    trace.push(
        TraceStep::new("clique", Branch::Gap, "U contains a tournament on 2k+3 vertices; search the path inside it")
            .set("D", g.vertices())
            .set("clique", clique)
            .path(w.vertices.clone())
            .external(),
    );
    let witness = PathWitness {
        vertices: w.vertices,
        pattern: target,
    };
    trace.push(TraceStep::new("return", Branch::Return, "return the path").path(witness.vertices.clone()));
    trace.outcome = Some(witness.clone());
    Ok((witness, trace))
}
