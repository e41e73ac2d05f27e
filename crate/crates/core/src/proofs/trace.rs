//! Step-by-step record of a finder's run, and a checker that re-derives
//! every named set from its definition.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::digraph::{Digraph, VertexSet};
use crate::pattern::{verify_witness, BlockPattern, Matcher, PathWitness};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Branch {
    Setup,
    /// Base case answered by the exhaustive matcher.
    Base,
    /// Path found in the high out-degree part and extended by one arc.
    RecurseH,
    /// Clique in the low out-degree part searched exhaustively.
    TournamentHprime,
    /// A step the argument leaves implicit, filled by a search restricted
    /// to the named sets.
    Gap,
    Seed,
    Extend,
    Claim,
    Restart,
    /// Search over directed runs inside the vertices named so far.
    LocalClosure,
    Tournament,
    Return,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::Setup => "SETUP",
            Branch::Base => "BASE",
            Branch::RecurseH => "RECURSE_H",
            Branch::TournamentHprime => "TOURNAMENT_HPRIME",
            Branch::Gap => "GAP",
            Branch::Seed => "SEED",
            Branch::Extend => "EXTEND",
            Branch::Claim => "CLAIM",
            Branch::Restart => "RESTART",
            Branch::LocalClosure => "LOCAL_CLOSURE",
            Branch::Tournament => "TOURNAMENT",
            Branch::Return => "RETURN",
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceStep {
    pub step: String,
    pub branch: Branch,
    /// Named vertex sets, in the caller's labels.
    pub sets: BTreeMap<String, Vec<usize>>,
    pub anchor: String,
    pub path_so_far: Vec<usize>,
    #[serde(skip_serializing_if = "BTreeMap::is_empty")]
    pub params: BTreeMap<String, usize>,
    /// The step relies on a result whose proof is not constructive here and
    /// was answered by exhaustive search.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub external: bool,
}

impl TraceStep {
    pub fn new(step: &str, branch: Branch, anchor: &str) -> Self {
        TraceStep {
            step: step.to_string(),
            branch,
            sets: BTreeMap::new(),
            anchor: anchor.to_string(),
            path_so_far: Vec::new(),
            params: BTreeMap::new(),
            external: false,
        }
    }

    pub fn set<I: IntoIterator<Item = usize>>(mut self, name: &str, members: I) -> Self {
        let mut v: Vec<usize> = members.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        self.sets.insert(name.to_string(), v);
        self
    }

    pub fn param(mut self, name: &str, value: usize) -> Self {
        self.params.insert(name.to_string(), value);
        self
    }

    pub fn path(mut self, path: Vec<usize>) -> Self {
        self.path_so_far = path;
        self
    }

    pub fn external(mut self) -> Self {
        self.external = true;
        self
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ProofTrace {
    pub finder: String,
    /// The steps and outcome describe the reversed host.
    #[serde(skip_serializing_if = "std::ops::Not::not")]
    pub reversed: bool,
    pub steps: Vec<TraceStep>,
    pub outcome: Option<PathWitness>,
}

impl ProofTrace {
    pub fn new(finder: &str) -> Self {
        ProofTrace {
            finder: finder.to_string(),
            reversed: false,
            steps: Vec::new(),
            outcome: None,
        }
    }

    pub fn push(&mut self, step: TraceStep) {
        self.steps.push(step);
    }

    pub fn branches(&self) -> Vec<Branch> {
        self.steps.iter().map(|s| s.branch).collect()
    }

    pub fn uses(&self, branch: Branch) -> bool {
        self.steps.iter().any(|s| s.branch == branch)
    }

    /// One JSON object per step.
    pub fn to_json_lines(&self) -> String {
        self.steps
            .iter()
            .map(|s| serde_json::to_string(s).expect("trace steps serialize"))
            .collect::<Vec<_>>()
            .join("\n")
    }
}

fn bad(step: &TraceStep, msg: String) -> String {
    format!("step `{}`: {msg}", step.step)
}

/// Re-derives every named set of the trace from its defining predicate in
/// `host` and re-verifies the returned path.
///
/// Sets are evaluated in the subdigraph induced by the step's `D` set (the
/// digraph the step works in) of the host with digons reduced to single
/// arcs, which is the digraph every finder runs on. A reversed trace is
/// checked against the reversed host.
pub fn check_trace(host: &Digraph, trace: &ProofTrace) -> Result<(), String> {
    let reversed;
    let host = if trace.reversed {
        reversed = host.reverse();
        &reversed
    } else {
        host
    };
    let core = host.oriented_core();
    let all = host.vertices();
    for step in &trace.steps {
        let mut named: BTreeMap<&str, VertexSet> = BTreeMap::new();
        for (name, members) in &step.sets {
            if let Some(&v) = members.iter().find(|&&v| v >= host.order()) {
                return Err(bad(step, format!("set {name} has vertex {v} outside the host")));
            }
            named.insert(name, members.iter().copied().collect());
        }
        let d = named.get("D").copied().unwrap_or(all);
        for (name, set) in &named {
            if !set.is_subset(d) {
                return Err(bad(step, format!("set {name} is not inside D")));
            }
        }
        let sub = core.induced(d).map_err(|e| bad(step, e.to_string()))?;
        let defined = |pred: &dyn Fn(usize) -> bool| -> VertexSet {
            (0..sub.digraph.order())
                .filter(|&v| pred(v))
                .map(|v| sub.map[v])
                .collect()
        };
        let param = |p: &str| {
            step.params
                .get(p)
                .copied()
                .ok_or_else(|| bad(step, format!("missing parameter {p}")))
        };
        let expect = |name: &str, want: VertexSet| -> Result<(), String> {
            match named.get(name) {
                Some(&got) if got != want => Err(bad(
                    step,
                    format!("set {name} = {:?}, definition gives {:?}", got.to_vec(), want.to_vec()),
                )),
                _ => Ok(()),
            }
        };
        if named.contains_key("H") || named.contains_key("H'") {
            let m = param("m")?;
            let h = defined(&|v| sub.digraph.out_degree(v) + 2 >= m);
            expect("H", h)?;
            expect("H'", d.difference(h))?;
        }
        if named.contains_key("D1") || named.contains_key("D2") {
            let k = param("k")?;
            let d1 = defined(&|v| sub.digraph.in_degree(v) > k);
            expect("D1", d1)?;
            expect("D2", d.difference(d1))?;
        }
        if named.contains_key("U") {
            let k = param("k")?;
            let seed = BlockPattern::p2(k, 1).map_err(|e| bad(step, e.to_string()))?;
            let u = defined(&|v| {
                Matcher::new(&sub.digraph, &seed)
                    .restrict(0, VertexSet::singleton(v))
                    .first()
                    .is_some()
            });
            expect("U", u)?;
        }
        if let Some(&clique) = named.get("clique") {
            for a in clique {
                for b in clique {
                    if a < b && !host.adjacent(a, b) {
                        return Err(bad(step, format!("clique members {a} and {b} are not adjacent")));
                    }
                }
            }
        }
        if step.branch == Branch::Return {
            let outcome = trace
                .outcome
                .as_ref()
                .ok_or_else(|| bad(step, "RETURN without an outcome".into()))?;
            let w = PathWitness {
                vertices: step.path_so_far.clone(),
                pattern: outcome.pattern.clone(),
            };
            if !verify_witness(host, &w) {
                return Err(bad(step, "returned path does not verify".into()));
            }
        }
    }
    match &trace.outcome {
        Some(w) if !verify_witness(host, w) => Err("outcome does not verify".into()),
        _ => Ok(()),
    }
}
