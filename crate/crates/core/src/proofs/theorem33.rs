//! `P(1,k,1)` in digraphs of chromatic number at least `2k+1`, `k >= 2`.
//!
//! In a `(2k+1)`-critical digraph, `D1` holds the vertices of in-degree at
//! least `k+1` and `D2` the rest; vertices of `D2` have out-degree at least
//! `k`. Either `D2` has chromatic number at least `k` or `D1` at least
//! `k+2`. Each branch follows a long directed path in its part, and every
//! configuration the argument rules out is turned into the path it
//! exhibits. The first branch ends, when nothing closes, with the whole
//! digraph being a tournament on `2k+1` vertices.
//!
//! Every closing move reads a `P(1,k,1)` off a directed run of length `k`
//! (see `closure`). The runs named by the argument are tried first; where
//! the argument leaves the construction implicit, all runs inside the
//! vertices named at that point are tried and the step is marked
//! `LOCAL_CLOSURE`.

use super::closure::{close_any, local_closure};
use super::trace::{Branch, ProofTrace, TraceStep};
use super::{require_chi, ProofError};
use crate::coloring::{chromatic_number, critical_subdigraph, gallai_roy_path};
use crate::digraph::{Digraph, VertexSet};
use crate::pattern::{verify_witness, BlockPattern, Matcher, PathWitness};

struct Ctx<'a> {
    g: &'a Digraph,
    map: &'a [usize],
    k: usize,
    d1: VertexSet,
    d2: VertexSet,
    trace: ProofTrace,
}

fn set_of(path: &[usize]) -> VertexSet {
    path.iter().copied().collect()
}

/// Grows a directed path at both ends using only vertices of `allowed`.
fn extend_within(g: &Digraph, allowed: VertexSet, mut path: Vec<usize>) -> Vec<usize> {
    let mut on = set_of(&path);
    loop {
        let free = allowed.difference(on);
        if let Some(w) = g.out_set(*path.last().unwrap()).intersection(free).first() {
            path.push(w);
            on.insert(w);
        } else if let Some(w) = g.in_set(path[0]).intersection(free).first() {
            path.insert(0, w);
            on.insert(w);
        } else {
            return path;
        }
    }
}

fn joined(parts: &[&[usize]]) -> Vec<usize> {
    parts.concat()
}

impl Ctx<'_> {
    fn lift(&self, vs: impl IntoIterator<Item = usize>) -> Vec<usize> {
        vs.into_iter().map(|v| self.map[v]).collect()
    }

    fn step(&self, name: &str, branch: Branch, anchor: &str) -> TraceStep {
        TraceStep::new(name, branch, anchor)
            .set("D", self.map.iter().copied())
            .param("k", self.k)
    }

    fn fail(&self, step: &str, reason: String) -> ProofError {
        ProofError::InternalInconsistency {
            step: step.to_string(),
            reason,
            trace: Box::new(self.trace.clone()),
        }
    }

    /// Closes one of `runs`, else any run inside `pool`.
    fn try_close(&mut self, name: &str, anchor: &str, runs: &[Vec<usize>], pool: VertexSet) -> Option<Vec<usize>> {
        if let Some(w) = close_any(self.g, runs) {
            let s = self.step(name, Branch::Return, anchor).path(self.lift(w.iter().copied()));
            self.trace.push(s);
            return Some(w);
        }
        let w = local_closure(self.g, pool, self.k)?;
        let s = self
            .step(name, Branch::LocalClosure, "no listed run closes; try every run inside the named vertices")
            .set("pool", self.lift(pool))
            .path(self.lift(w.iter().copied()));
        self.trace.push(s);
        Some(w)
    }

    fn restart(&mut self, reason: &str, path: &[usize]) {
        let s = self
            .step("restart", Branch::Restart, reason)
            .set("P", self.lift(path.iter().copied()))
            .param("length", path.len() - 1)
            .path(self.lift(path.iter().copied()));
        self.trace.push(s);
    }

    fn branch_one(&mut self) -> Result<Vec<usize>, ProofError> {
        let (g, k) = (self.g, self.k);
        let sub = g.induced(self.d2)?;
        let mut path = sub.lift(&gallai_roy_path(&sub.digraph));
        let s = self
            .step("path_d2", Branch::Claim, "long directed path in D2, not extendable inside D2")
            .set("P", self.lift(path.iter().copied()))
            .param("length", path.len() - 1)
            .path(self.lift(path.iter().copied()));
        self.trace.push(s);

        'restart: loop {
            let n = path.len();
            let on = set_of(&path);
            if n < k {
                return Err(self.fail("path_d2", format!("path on {n} vertices although chi(D2) >= k")));
            }
            if n == k {
                // x_k has at most k-2 out-neighbours on P and none elsewhere
                // in D2, so at least two in D1.
                let a = g.out_set(path[k - 1]).intersection(self.d1);
                let s = self
                    .step("short", Branch::Claim, "path of length k-1: its end has two out-neighbours a1, a2 in D1")
                    .set("P", self.lift(path.iter().copied()))
                    .set("A", self.lift(a));
                self.trace.push(s);
                let runs: Vec<Vec<usize>> = a.iter().map(|x| joined(&[&path, &[x]])).collect();
                let pool = on.union(a).union(g.out_set(path[0]));
                return match self.try_close("short", "close P followed by a_i", &runs, pool) {
                    Some(w) => Ok(w),
                    None => Err(self.fail("short", "no closing run although the path has length k-1".into())),
                };
            }

            let rotations = if g.has_arc(path[n - 1], path[0]) { n } else { 1 };
            for rot in 0..rotations {
                let mut p = path.clone();
                p.rotate_left(rot);
                let ext = extend_within(g, self.d2, p.clone());
                if ext.len() > n {
                    self.restart("a rotation of the cycle extends inside D2", &ext);
                    path = ext;
                    continue 'restart;
                }
                let last = p[n - 1];
                let tail = &p[n - k..];
                let p1 = &p[n - k - 1..];
                let a = g.out_set(last).intersection(self.d1);
                if !a.is_empty() {
                    let s = self
                        .step("claim_a", Branch::Claim, "the end of P has an out-neighbour in D1")
                        .set("P", self.lift(p.iter().copied()))
                        .set("P1", self.lift(p1.iter().copied()))
                        .set("A", self.lift(a))
                        .param("rotation", rot);
                    self.trace.push(s);
                    let mut runs: Vec<Vec<usize>> = a.iter().map(|x| joined(&[tail, &[x]])).collect();
                    if let [a1] = a.to_vec()[..] {
                        runs.push(joined(&[&p1[..1], &p1[2..], &[a1]]));
                        runs.push(joined(&[&p1[..2], &p1[3..], &[a1]]));
                        runs.push(joined(&[&p1[..k], &[a1]]));
                        for t in g.out_set(last).intersection(on) {
                            runs.push(joined(&[tail, &[t]]));
                        }
                    }
                    let name = format!("claim_a/{rot}");
                    return match self.try_close(&name, "close a run ending at a vertex of D1", &runs, on.union(a)) {
                        Some(w) => Ok(w),
                        None => Err(self.fail(&name, "end of P has an out-neighbour in D1 and nothing closes".into())),
                    };
                }
                if !g.has_arc(last, p[0]) {
                    let s = self
                        .step("cycle", Branch::Claim, "the end of P should point back to its start")
                        .set("P", self.lift(p.iter().copied()));
                    self.trace.push(s);
                    let runs: Vec<Vec<usize>> = g
                        .out_set(last)
                        .intersection(on)
                        .iter()
                        .map(|t| joined(&[tail, &[t]]))
                        .collect();
                    return match self.try_close("cycle", "close a run through the end's out-neighbours on P", &runs, on) {
                        Some(w) => Ok(w),
                        None => Err(self.fail("cycle", "no arc from the end of P to its start and nothing closes".into())),
                    };
                }
                let z_set = g.in_set(last).difference(on);
                if let Some(z) = z_set.intersection(self.d2).first() {
                    let longer = extend_within(g, self.d2, joined(&[&[z, last], &p[..n - 1]]));
                    self.restart("in-neighbour of the end in D2 gives a longer path round the cycle", &longer);
                    path = longer;
                    continue 'restart;
                }
                if !z_set.is_empty() {
                    let s = self
                        .step("in_d1", Branch::Claim, "the end of P has an in-neighbour z in D1 off P")
                        .set("P", self.lift(p.iter().copied()))
                        .set("z", self.lift(z_set));
                    self.trace.push(s);
                    let runs: Vec<Vec<usize>> = z_set
                        .iter()
                        .map(|z| joined(&[&[z, last], &p[..k - 1]]))
                        .collect();
                    let name = format!("in_d1/{rot}");
                    return match self.try_close(&name, "close a run through z", &runs, on.union(z_set)) {
                        Some(w) => Ok(w),
                        None => Err(self.fail(&name, "in-neighbour off P in D1 and nothing closes".into())),
                    };
                }
            }

            // Every rotation is closed under in- and out-neighbours.
            let s = self
                .step("tournament", Branch::Tournament, "P spans the critical digraph, which is then a tournament on 2k+1 vertices")
                .set("P", self.lift(path.iter().copied()))
                .external();
            self.trace.push(s);
            if on != g.vertices() || !g.is_tournament() {
                return Err(self.fail(
                    "tournament",
                    format!(
                        "P covers {} of {} vertices; tournament: {}",
                        on.len(),
                        g.order(),
                        g.is_tournament()
                    ),
                ));
            }
            let target = BlockPattern::p3(1, k, 1).expect("positive blocks");
            return match Matcher::new(g, &target).first() {
                Some(w) => Ok(w.vertices),
                None => Err(self.fail("tournament", format!("tournament on {} vertices without {target}", g.order()))),
            };
        }
    }

    fn branch_two(&mut self) -> Result<Vec<usize>, ProofError> {
        let (g, k) = (self.g, self.k);
        let sub = g.induced(self.d1)?;
        let mut path = sub.lift(&gallai_roy_path(&sub.digraph));
        loop {
            let n = path.len();
            let on = set_of(&path);
            let s = self
                .step("path_d1", Branch::Claim, "long directed path z1 .. z(k+r) in D1")
                .set("P", self.lift(path.iter().copied()))
                .set("P2", self.lift(path.iter().take(k + 1).copied()))
                .param("length", n.saturating_sub(1))
                .path(self.lift(path.iter().copied()));
            self.trace.push(s);
            if n < k + 2 {
                return Err(self.fail("path_d1", format!("path on {n} vertices although chi(D1) >= k+2")));
            }
            let z1 = path[0];
            let a = g.in_set(z1).intersection(self.d2);
            if !a.is_empty() {
                let s = self
                    .step("claim_c", Branch::Claim, "z1 has an in-neighbour a1 in D2")
                    .set("A", self.lift(a));
                self.trace.push(s);
                let runs: Vec<Vec<usize>> = a
                    .iter()
                    .flat_map(|x| (0..3).map(move |off| (x, off)))
                    .map(|(x, off)| joined(&[&[x], &path[off..off + k]]))
                    .collect();
                return match self.try_close("claim_c", "close a run starting at a1", &runs, on.union(a)) {
                    Some(w) => Ok(w),
                    None => Err(self.fail("claim_c", "z1 has an in-neighbour in D2 and nothing closes".into())),
                };
            }
            let off_path = g.in_set(z1).difference(on);
            if !off_path.is_empty() {
                let longer = extend_within(g, self.d1, joined(&[&off_path.to_vec()[..1], &path]));
                self.restart("z1 has an in-neighbour in D1 off P", &longer);
                path = longer;
                continue;
            }
            let t_set = g.in_set(z1);
            let i_set = g.in_set(path[k - 1]).difference(set_of(&path[..k - 1]));
            let s = self
                .step("in_z1", Branch::Claim, "in-neighbours z_t of z1 lie on P; I = in-neighbours of z_k off z1 .. z(k-1)")
                .set("T", self.lift(t_set))
                .set("I", self.lift(i_set));
            self.trace.push(s);
            let runs: Vec<Vec<usize>> = t_set
                .iter()
                .map(|t| joined(&[&[t], &path[..k]]))
                .collect();
            return match self.try_close("in_z1", "close the run z_t, z1 .. z_k", &runs, on) {
                Some(w) => Ok(w),
                None => Err(self.fail("in_z1", "no closing run from an in-neighbour of z1".into())),
            };
        }
    }
}

pub fn find_p1k1(host: &Digraph, k: usize) -> Result<(PathWitness, ProofTrace), ProofError> {
    if k < 2 {
        return Err(ProofError::Parameter("k must be at least 2".into()));
    }
    require_chi(host, 2 * k + 1)?;
    let target = BlockPattern::p3(1, k, 1).map_err(|e| ProofError::Parameter(e.to_string()))?;
    let crit = critical_subdigraph(&host.oriented_core(), 2 * k + 1)?;
    let g = &crit.digraph;
    let d1: VertexSet = (0..g.order()).filter(|&v| g.in_degree(v) > k).collect();
    let d2 = g.vertices().difference(d1);
    let mut ctx = Ctx {
        g,
        map: &crit.map,
        k,
        d1,
        d2,
        trace: ProofTrace::new("t33"),
    };
    let s = ctx.step("critical", Branch::Setup, "pass to a (2k+1)-critical induced subdigraph");
    ctx.trace.push(s);
    let chi1 = chromatic_number(&g.induced(d1)?.digraph)?.chi;
    let chi2 = chromatic_number(&g.induced(d2)?.digraph)?.chi;
    let s = ctx
        .step("partition", Branch::Setup, "D1: in-degree at least k+1; D2: the rest")
        .set("D1", ctx.lift(d1))
        .set("D2", ctx.lift(d2))
        .param("chi_D1", chi1)
        .param("chi_D2", chi2);
    ctx.trace.push(s);

    let path = if chi2 >= k {
        ctx.branch_one()?
    } else if chi1 >= k + 2 {
        ctx.branch_two()?
    } else {
        return Err(ctx.fail(
            "partition",
            format!("chi(D1) = {chi1} < k+2 and chi(D2) = {chi2} < k"),
        ));
    };
    let witness = PathWitness {
        vertices: ctx.lift(path.iter().copied()),
        pattern: target,
    };
    if !verify_witness(host, &witness) {
        return Err(ctx.fail("return", "constructed path does not verify".into()));
    }
    if ctx.trace.steps.last().map(|s| s.branch) != Some(Branch::Return) {
        let s = ctx.step("return", Branch::Return, "return the path").path(witness.vertices.clone());
        ctx.trace.push(s);
    }
    let mut trace = ctx.trace;
    trace.outcome = Some(witness.clone());
    Ok((witness, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::{fixture, transitive_tournament};
    use crate::enumerate::enumerate_tournaments;
    use crate::proofs::check_trace;

    fn check(host: &Digraph, k: usize) -> ProofTrace {
        let (w, trace) = find_p1k1(host, k).unwrap();
        assert_eq!(w.pattern, BlockPattern::p3(1, k, 1).unwrap());
        assert!(verify_witness(host, &w));
        check_trace(host, &trace).unwrap();
        trace
    }

    #[test]
    fn examples() {
        check(&fixture("regular5").unwrap(), 2);
        check(&transitive_tournament(7).unwrap(), 3);
    }

    #[test]
    fn every_tournament_of_order_five() {
        let ts = enumerate_tournaments(5, 8).unwrap();
        assert_eq!(ts.len(), 12);
        for t in &ts {
            check(t, 2);
        }
    }

    #[test]
    fn preconditions() {
        let tt = transitive_tournament(4).unwrap();
        assert!(matches!(find_p1k1(&tt, 2), Err(ProofError::ChromaticTooSmall { required: 5, chi: 4 })));
        assert!(matches!(find_p1k1(&tt, 1), Err(ProofError::Parameter(_))));
    }
}
