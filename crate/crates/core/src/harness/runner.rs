use std::collections::BTreeMap;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::campaign::{Campaign, CampaignKind, HostClass, Strategy};
use super::HarnessError;
use crate::canon::{canonical_digraph, CANON_HARD_CAP};
use crate::coloring::{chromatic_number, DEFAULT_CHROMATIC_CAP};
use crate::digraph::{Digraph, Mode};
use crate::enumerate::{
    enumerate_digraphs, is_canonical_representative, labeled_digraph, tournament_codes,
    tournament_from_code, DEFAULT_DEDUPE_CAP, DEFAULT_LABELED_CAP, DEFAULT_TOURNAMENT_CAP,
};
use crate::format::{parse_edge_list, to_edge_list_inline};
use crate::pattern::{
    contains, contains_all_paths_report, find_p1l1_at_least, verify_witness, BlockPattern,
    Direction, PathWitness,
};
use crate::proofs::{
    check_trace, find_p1k1, find_p1k1_via_origins, find_p1l1_at_least as prove_p1l1, find_reversed_three_block,
    find_three_block_decomposition, ProofError, ProofTrace,
};
use crate::rng::{sample_digraph, PairDistribution, SplitMix64};

pub const REPORT_VERSION: u32 = 1;
/// A sampled campaign gives up after this many draws per requested instance.
pub const MAX_ATTEMPTS_PER_SAMPLE: u64 = 1000;
const CHUNK: u64 = 4096;

/// Instance generation caps; they bound work, not results, so they are not
/// part of the campaign identity.
#[derive(Debug, Clone, Copy)]
pub struct RunOptions {
    pub tournament_cap: usize,
    pub labeled_cap: usize,
    pub dedupe_cap: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            tournament_cap: DEFAULT_TOURNAMENT_CAP,
            labeled_cap: DEFAULT_LABELED_CAP,
            dedupe_cap: DEFAULT_DEDUPE_CAP,
        }
    }
}

/// A host meeting the chromatic threshold that lacks the pattern.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Counterexample {
    /// Canonical relabelling, single-line edge list.
    pub dg: String,
    pub chi: usize,
    pub missing: String,
}

/// A finder error or a finder result that failed verification.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub dg: String,
    pub chi: usize,
    pub error: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<serde_json::Value>,
}

/// Integer map keys arrive as strings once the report is buffered for the
/// flattened campaign fields.
mod chi_map {
    use std::collections::BTreeMap;

    use serde::{Deserialize, Deserializer};

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<usize, u64>, D::Error> {
        BTreeMap::<String, u64>::deserialize(d)?
            .into_iter()
            .map(|(k, v)| k.parse().map(|k| (k, v)).map_err(serde::de::Error::custom))
            .collect()
    }
}

/// One line of the report store.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanReport {
    pub v: u32,
    pub campaign_hash: String,
    #[serde(flatten)]
    pub campaign: Campaign,
    /// Instances meeting the chromatic threshold.
    pub tested: u64,
    /// Instances below the threshold.
    pub skipped: u64,
    /// Draws made by a sampled campaign.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attempts: Option<u64>,
    /// Chromatic numbers of every generated instance.
    #[serde(deserialize_with = "chi_map::deserialize")]
    pub chi_hist: BTreeMap<usize, u64>,
    /// Distinct up to isomorphism, sorted by canonical form.
    pub counterexamples: Vec<Counterexample>,
    pub failures: Vec<Failure>,
    /// `BRANCH:step` counts over the finders' traces.
    pub branch_hist: BTreeMap<String, u64>,
    pub ms: u64,
}

impl ScanReport {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }

    /// The report with its wall time zeroed, for comparisons.
    pub fn without_wall_time(&self) -> ScanReport {
        ScanReport { ms: 0, ..self.clone() }
    }

    pub fn is_clean(&self) -> bool {
        self.counterexamples.is_empty() && self.failures.is_empty()
    }

    /// Combines the shards of one campaign into the unsharded report.
    pub fn merge(parts: &[ScanReport]) -> Result<ScanReport, HarnessError> {
        let first = parts
            .first()
            .ok_or_else(|| HarnessError::Campaign("nothing to merge".into()))?;
        let mut campaign = first.campaign.clone();
        campaign.shard = None;
        let mut t = Tally::default();
        let mut ms = 0;
        for p in parts {
            let mut c = p.campaign.clone();
            c.shard = None;
            if c != campaign {
                return Err(HarnessError::Campaign("shards of different campaigns".into()));
            }
            t = t.merge(Tally {
                tested: p.tested,
                skipped: p.skipped,
                chi_hist: p.chi_hist.clone(),
                counterexamples: p.counterexamples.clone(),
                failures: p.failures.clone(),
                branch_hist: p.branch_hist.clone(),
            });
            ms += p.ms;
        }
        Ok(t.into_report(campaign, None, ms))
    }
}

#[derive(Debug, Default)]
struct Tally {
    tested: u64,
    skipped: u64,
    chi_hist: BTreeMap<usize, u64>,
    counterexamples: Vec<Counterexample>,
    failures: Vec<Failure>,
    branch_hist: BTreeMap<String, u64>,
}

impl Tally {
    fn merge(mut self, other: Tally) -> Tally {
        self.tested += other.tested;
        self.skipped += other.skipped;
        for (k, v) in other.chi_hist {
            *self.chi_hist.entry(k).or_default() += v;
        }
        for (k, v) in other.branch_hist {
            *self.branch_hist.entry(k).or_default() += v;
        }
        self.counterexamples.extend(other.counterexamples);
        self.failures.extend(other.failures);
        self
    }

    fn into_report(mut self, campaign: Campaign, attempts: Option<u64>, ms: u64) -> ScanReport {
        self.counterexamples.sort();
        self.counterexamples.dedup();
        self.failures
            .sort_by(|a, b| (&a.dg, &a.error).cmp(&(&b.dg, &b.error)));
        self.failures.dedup_by(|a, b| a.dg == b.dg && a.error == b.error);
        ScanReport {
            v: REPORT_VERSION,
            campaign_hash: campaign.hash(),
            campaign,
            tested: self.tested,
            skipped: self.skipped,
            attempts,
            chi_hist: self.chi_hist,
            counterexamples: self.counterexamples,
            failures: self.failures,
            branch_hist: self.branch_hist,
            ms,
        }
    }
}

fn canonical_text(g: &Digraph) -> String {
    if g.order() <= CANON_HARD_CAP {
        if let Ok(c) = canonical_digraph(g, CANON_HARD_CAP) {
            return to_edge_list_inline(&c);
        }
    }
    to_edge_list_inline(g)
}

/// What a campaign looks for in each tested instance.
#[derive(Debug, Clone)]
enum Target {
    Exactly(BlockPattern),
    /// `P(1,l,1)` for some `l >= k`.
    P1l1AtLeast(usize),
}

impl Target {
    fn describe(&self) -> String {
        match self {
            Target::Exactly(p) => p.to_string(),
            Target::P1l1AtLeast(k) => format!("1,>={k},1/fwd"),
        }
    }

    fn present(&self, g: &Digraph) -> bool {
        match self {
            Target::Exactly(p) => contains(g, p).is_some(),
            Target::P1l1AtLeast(k) => find_p1l1_at_least(g, *k).is_some(),
        }
    }

    fn accepts(&self, w: &PathWitness) -> bool {
        match self {
            Target::Exactly(p) => &w.pattern == p,
            Target::P1l1AtLeast(k) => {
                let b = w.pattern.blocks();
                w.pattern.first_direction() == Direction::Forward
                    && b.len() == 3
                    && b[0] == 1
                    && b[2] == 1
                    && b[1] >= *k
            }
        }
    }
}

type Finder = fn(&Digraph, &Campaign) -> Result<(PathWitness, ProofTrace), ProofError>;

struct Plan {
    campaign: Campaign,
    threshold: usize,
    targets: Vec<(Target, Option<Finder>)>,
}

fn lemma_pattern(c: &Campaign) -> BlockPattern {
    let (m, i) = c.lemma_params().expect("validated");
    BlockPattern::trimmed(&[c.k, m - 1 - c.k - i, i], Direction::Forward).expect("validated")
}

impl Plan {
    fn new(c: &Campaign) -> Result<Plan, HarnessError> {
        c.validate()?;
        let k = c.k;
        let p1k1 = || BlockPattern::p3(1, k, 1).expect("k >= 1");
        let targets: Vec<(Target, Option<Finder>)> = match c.kind {
            CampaignKind::TheoremT31 => vec![(
                Target::P1l1AtLeast(k),
                Some(|g, c| prove_p1l1(g, c.k)),
            )],
            CampaignKind::TheoremT33 => vec![(Target::Exactly(p1k1()), Some(|g, c| find_p1k1(g, c.k)))],
            CampaignKind::TheoremOrigins => vec![(
                Target::Exactly(p1k1()),
                Some(|g, c| find_p1k1_via_origins(g, c.k)),
            )],
            CampaignKind::LemmaL23 => {
                let p = lemma_pattern(c);
                vec![
                    (
                        Target::Exactly(p.clone()),
                        Some(|g, c| {
                            let (m, i) = c.lemma_params().expect("validated");
                            find_three_block_decomposition(g, c.k, i, m)
                        }),
                    ),
                    (
                        Target::Exactly(p.flip()),
                        Some(|g, c| {
                            let (m, i) = c.lemma_params().expect("validated");
                            find_reversed_three_block(g, c.k, i, m)
                        }),
                    ),
                ]
            }
            CampaignKind::ConjectureC32 => vec![(Target::P1l1AtLeast(k), None)],
            CampaignKind::BoundProbe => vec![(Target::Exactly(p1k1()), None)],
            CampaignKind::TournamentPaths => Vec::new(),
        };
        if c.n_max > DEFAULT_CHROMATIC_CAP {
            return Err(HarnessError::Campaign(format!(
                "order {} exceeds the chromatic-number cap {DEFAULT_CHROMATIC_CAP}",
                c.n_max
            )));
        }
        Ok(Plan {
            campaign: c.clone(),
            threshold: c.chi_threshold()?,
            targets,
        })
    }

    fn chi(&self, g: &Digraph, t: &mut Tally) -> Option<usize> {
        match chromatic_number(g) {
            Ok(c) => Some(c.chi),
            Err(e) => {
                t.failures.push(Failure {
                    dg: to_edge_list_inline(g),
                    chi: 0,
                    error: e.to_string(),
                    trace: None,
                });
                None
            }
        }
    }

    fn counterexample(&self, g: &Digraph, chi: usize, missing: &str, still_missing: impl Fn(&Digraph) -> bool, t: &mut Tally) {
        let dg = canonical_text(g);
        let reverified = parse_edge_list(&dg)
            .ok()
            .filter(|h| chromatic_number(h).map(|c| c.chi) == Ok(chi) && still_missing(h));
        match reverified {
            Some(_) => t.counterexamples.push(Counterexample {
                dg,
                chi,
                missing: missing.to_string(),
            }),
            None => t.failures.push(Failure {
                dg,
                chi,
                error: format!("counterexample for {missing} did not re-verify"),
                trace: None,
            }),
        }
    }

    /// Tests one instance whose chromatic number is known.
    fn test(&self, g: &Digraph, chi: usize, t: &mut Tally) {
        *t.chi_hist.entry(chi).or_default() += 1;
        if chi < self.threshold {
            t.skipped += 1;
            return;
        }
        t.tested += 1;
        if self.campaign.kind == CampaignKind::TournamentPaths {
            match contains_all_paths_report(g) {
                Ok(report) => {
                    for p in report.missing() {
                        self.counterexample(g, chi, &p.to_string(), |h| contains(h, p).is_none(), t);
                    }
                }
                Err(e) => t.failures.push(Failure {
                    dg: to_edge_list_inline(g),
                    chi,
                    error: e.to_string(),
                    trace: None,
                }),
            }
            return;
        }
        for (target, finder) in &self.targets {
            if !target.present(g) {
                self.counterexample(g, chi, &target.describe(), |h| !target.present(h), t);
                continue;
            }
            let Some(finder) = finder else { continue };
            let failure = |error: String, trace: Option<serde_json::Value>| Failure {
                dg: to_edge_list_inline(g),
                chi,
                error,
                trace,
            };
            match finder(g, &self.campaign) {
                Ok((w, trace)) => {
                    if !verify_witness(g, &w) || !target.accepts(&w) {
                        t.failures.push(failure(format!("finder returned an invalid witness {:?}", w.vertices), None));
                        continue;
                    }
                    if let Err(e) = check_trace(g, &trace) {
                        t.failures.push(failure(format!("trace check: {e}"), serde_json::to_value(&trace).ok()));
                        continue;
                    }
                    for s in &trace.steps {
                        let step = s.step.split('/').next().unwrap_or("");
                        *t.branch_hist
                            .entry(format!("{}:{}:{step}", trace.finder, s.branch.as_str()))
                            .or_default() += 1;
                    }
                }
                Err(ProofError::InternalInconsistency { step, reason, trace }) => t.failures.push(failure(
                    format!("internal inconsistency at {step}: {reason}"),
                    serde_json::to_value(&*trace).ok(),
                )),
                Err(e) => t.failures.push(failure(e.to_string(), None)),
            }
        }
    }

    fn visit(&self, g: &Digraph, t: &mut Tally) {
        if let Some(chi) = self.chi(g, t) {
            self.test(g, chi, t);
        }
    }
}

pub fn run_campaign(c: &Campaign) -> Result<ScanReport, HarnessError> {
    run_campaign_with(c, &RunOptions::default())
}

pub fn run_campaign_with(c: &Campaign, opts: &RunOptions) -> Result<ScanReport, HarnessError> {
    let plan = Plan::new(c)?;
    let start = Instant::now();
    let (tally, attempts) = match (c.strategy, c.hosts) {
        (Strategy::Exhaustive, HostClass::Tournaments) => (exhaustive_tournaments(&plan, opts)?, None),
        (Strategy::Exhaustive, HostClass::Digraphs) => (exhaustive_digraphs(&plan, opts)?, None),
        (Strategy::Sampled { count, seed }, hosts) => {
            let (t, a) = sampled(&plan, count, seed, hosts);
            (t, Some(a))
        }
    };
    Ok(tally.into_report(c.clone(), attempts, start.elapsed().as_millis() as u64))
}

fn exhaustive_tournaments(plan: &Plan, opts: &RunOptions) -> Result<Tally, HarnessError> {
    let c = &plan.campaign;
    let mut total = Tally::default();
    for n in c.n_min..=c.n_max {
        let codes = tournament_codes(n, opts.tournament_cap)?;
        let t = codes
            .par_iter()
            .fold(Tally::default, |mut t, &code| {
                // A tournament's chromatic number is its order.
                plan.test(&tournament_from_code(n, code), n, &mut t);
                t
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(t);
    }
    Ok(total)
}

fn exhaustive_digraphs(plan: &Plan, opts: &RunOptions) -> Result<Tally, HarnessError> {
    let c = &plan.campaign;
    let cap = if c.dedupe { opts.dedupe_cap } else { opts.labeled_cap };
    let mut total = Tally::default();
    for n in c.n_min..=c.n_max {
        let mut stream = enumerate_digraphs(n, c.mode, c.dedupe, cap)?;
        if let Some((index, count)) = c.shard {
            stream = stream.shard(index, count);
        }
        let range = stream.index_range();
        let chunks = (range.end - range.start).div_ceil(CHUNK);
        let t = (0..chunks)
            .into_par_iter()
            .fold(Tally::default, |mut t, chunk| {
                let lo = range.start + chunk * CHUNK;
                let hi = (lo + CHUNK).min(range.end);
                for index in lo..hi {
                    let g = labeled_digraph(n, c.mode, index);
                    if c.dedupe && !is_canonical_representative(&g) {
                        continue;
                    }
                    plan.visit(&g, &mut t);
                }
                t
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(t);
    }
    Ok(total)
}

/// Draws in batches; the draw sequence depends only on the seed, and the
/// first `count` draws meeting the threshold are tested.
fn sampled(plan: &Plan, count: u64, seed: u64, hosts: HostClass) -> (Tally, u64) {
    let c = &plan.campaign;
    let dist = match (hosts, c.absent_per_mille) {
        (HostClass::Tournaments, _) => PairDistribution::AbsentPerMille(0),
        (_, Some(p)) => PairDistribution::AbsentPerMille(p),
        (_, None) => PairDistribution::Uniform,
    };
    let mode = if hosts == HostClass::Tournaments { Mode::Oriented } else { c.mode };
    let mut rng = SplitMix64::new(seed);
    let max_attempts = count.saturating_mul(MAX_ATTEMPTS_PER_SAMPLE);
    let mut attempts = 0;
    let mut accepted: u64 = 0;
    let mut total = Tally::default();
    let batch = 256.min(max_attempts).max(1);
    while accepted < count && attempts < max_attempts {
        let draws: Vec<Digraph> = (0..batch.min(max_attempts - attempts))
            .map(|_| sample_digraph(&mut rng, c.n_min, c.n_max, mode, dist))
            .collect();
        let chis: Vec<Result<usize, String>> = draws
            .par_iter()
            .map(|g| chromatic_number(g).map(|c| c.chi).map_err(|e| e.to_string()))
            .collect();
        let mut chosen = Vec::new();
        for (g, chi) in draws.iter().zip(chis) {
            if accepted == count {
                break;
            }
            attempts += 1;
            match chi {
                Ok(chi) => {
                    if chi >= plan.threshold {
                        accepted += 1;
                    }
                    chosen.push((g, chi));
                }
                Err(error) => total.failures.push(Failure {
                    dg: to_edge_list_inline(g),
                    chi: 0,
                    error,
                    trace: None,
                }),
            }
        }
        let t = chosen
            .par_iter()
            .fold(Tally::default, |mut t, (g, chi)| {
                plan.test(g, *chi, &mut t);
                t
            })
            .reduce(Tally::default, Tally::merge);
        total = total.merge(t);
    }
    (total, attempts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::digraph::fixture;
    use crate::canon::canonical_form;

    #[test]
    fn conjecture_k1_small_orders_is_clean() {
        let c = Campaign::new(CampaignKind::ConjectureC32, 1, 1, 4);
        let r = run_campaign(&c).unwrap();
        assert!(r.is_clean());
        // Chromatic number 4 on 4 vertices: exactly the 2^6 labelled tournaments.
        assert_eq!(r.tested, 64);
    }

    #[test]
    fn tournament_paths_order_five() {
        let c = Campaign::new(CampaignKind::TournamentPaths, 0, 5, 5);
        let r = run_campaign(&c).unwrap();
        assert_eq!(r.tested, 12);
        assert!(r.failures.is_empty());
        assert_eq!(r.counterexamples.len(), 2);
        let regular5 = canonical_form(&fixture("regular5").unwrap(), 10).unwrap();
        for ce in &r.counterexamples {
            let g = parse_edge_list(&ce.dg).unwrap();
            assert_eq!(canonical_form(&g, 10).unwrap(), regular5);
            assert!(ce.missing.parse::<BlockPattern>().unwrap().is_antidirected());
        }
    }

    #[test]
    fn t33_order_five_tournaments() {
        let c = Campaign::new(CampaignKind::TheoremT33, 2, 5, 5).tournaments();
        let r = run_campaign(&c).unwrap();
        assert_eq!(r.tested, 12);
        assert!(r.is_clean());
        assert!(!r.branch_hist.is_empty());
    }

    #[test]
    fn sampled_is_reproducible() {
        let c = Campaign::new(CampaignKind::TheoremT33, 2, 5, 7)
            .sampled(40, 99)
            .absent_per_mille(100);
        let a = run_campaign(&c).unwrap();
        let b = run_campaign(&c).unwrap();
        assert_eq!(a.tested, 40);
        assert_eq!(a.without_wall_time().to_json_line(), b.without_wall_time().to_json_line());
        let back: ScanReport = serde_json::from_str(&a.to_json_line()).unwrap();
        assert_eq!(back, a);
    }

    #[test]
    fn shards_merge_to_the_whole() {
        let c = Campaign::new(CampaignKind::BoundProbe, 2, 3, 4);
        let whole = run_campaign(&c).unwrap();
        let parts: Vec<ScanReport> = (0..3)
            .map(|s| run_campaign(&c.clone().shard(s, 3)).unwrap())
            .collect();
        let merged = ScanReport::merge(&parts).unwrap();
        assert_eq!(merged.without_wall_time(), whole.without_wall_time());
    }

    #[test]
    fn rejects_bad_campaigns() {
        assert!(run_campaign(&Campaign::new(CampaignKind::TheoremT33, 1, 3, 4)).is_err());
        assert!(run_campaign(&Campaign::new(CampaignKind::TheoremT33, 2, 9, 9).tournaments()).is_err());
        assert!(run_campaign(&Campaign::new(CampaignKind::LemmaL23, 1, 3, 4)).is_err());
        assert!(run_campaign(&Campaign::new(CampaignKind::ConjectureC32, 1, 7, 7)).is_err());
    }
}
