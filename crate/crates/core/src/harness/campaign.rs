use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::HarnessError;
use crate::digraph::Mode;
use crate::proofs::{g, GIndex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CampaignKind {
    /// `P(1,l,1)`, `l >= k`, at chromatic number `k+4`.
    TheoremT31,
    /// `P(1,k,1)` at chromatic number `2k+1`.
    TheoremT33,
    /// `P(1,k,1)` at chromatic number `3k+4` through origins of `P(k,1)`.
    TheoremOrigins,
    /// `P(k, m-1-k-i, i)` and its flip at chromatic number `g(m,i)`.
    LemmaL23,
    /// Every spanning oriented path in tournaments.
    TournamentPaths,
    /// `P(1,l,1)`, `l >= k`, at chromatic number `k+3` (open).
    ConjectureC32,
    /// Hosts lacking `P(1,k,1)`, with their chromatic numbers.
    BoundProbe,
}

impl CampaignKind {
    pub const ALL: [CampaignKind; 7] = [
        CampaignKind::TheoremT31,
        CampaignKind::TheoremT33,
        CampaignKind::TheoremOrigins,
        CampaignKind::LemmaL23,
        CampaignKind::TournamentPaths,
        CampaignKind::ConjectureC32,
        CampaignKind::BoundProbe,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CampaignKind::TheoremT31 => "theorem_t31",
            CampaignKind::TheoremT33 => "theorem_t33",
            CampaignKind::TheoremOrigins => "theorem_origins",
            CampaignKind::LemmaL23 => "lemma_l23",
            CampaignKind::TournamentPaths => "tournament_paths",
            CampaignKind::ConjectureC32 => "conjecture_c32",
            CampaignKind::BoundProbe => "bound_probe",
        }
    }
}

impl fmt::Display for CampaignKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CampaignKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CampaignKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| {
                let names: Vec<&str> = CampaignKind::ALL.iter().map(|k| k.as_str()).collect();
                format!("unknown campaign `{s}` (expected one of {})", names.join(", "))
            })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HostClass {
    Digraphs,
    Tournaments,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "strategy", rename_all = "lowercase")]
pub enum Strategy {
    Exhaustive,
    /// `count` instances meeting the chromatic threshold, drawn from `seed`.
    Sampled { count: u64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Campaign {
    pub kind: CampaignKind,
    pub k: usize,
    pub n_min: usize,
    #[serde(rename = "n")]
    pub n_max: usize,
    pub mode: Mode,
    pub hosts: HostClass,
    #[serde(flatten)]
    pub strategy: Strategy,
    /// Lemma campaigns only.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    /// Sampling density: a pair is empty with this probability in
    /// thousandths; uniform pair states when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub absent_per_mille: Option<u32>,
    /// Exhaustive digraph campaigns: one representative per isomorphism
    /// class instead of every labelled digraph.
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub dedupe: bool,
    /// Exhaustive digraph campaigns: `(index, count)` slice of the labelled
    /// index range of every order.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub shard: Option<(u64, u64)>,
}

impl Campaign {
    pub fn new(kind: CampaignKind, k: usize, n_min: usize, n_max: usize) -> Self {
        Campaign {
            kind,
            k,
            n_min,
            n_max,
            mode: Mode::Oriented,
            hosts: if kind == CampaignKind::TournamentPaths {
                HostClass::Tournaments
            } else {
                HostClass::Digraphs
            },
            strategy: Strategy::Exhaustive,
            m: None,
            i: None,
            absent_per_mille: None,
            dedupe: false,
            shard: None,
        }
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn tournaments(mut self) -> Self {
        self.hosts = HostClass::Tournaments;
        self
    }

    pub fn sampled(mut self, count: u64, seed: u64) -> Self {
        self.strategy = Strategy::Sampled { count, seed };
        self
    }

    pub fn lemma(mut self, m: usize, i: usize) -> Self {
        self.m = Some(m);
        self.i = Some(i);
        self
    }

    pub fn absent_per_mille(mut self, p: u32) -> Self {
        self.absent_per_mille = Some(p);
        self
    }

    pub fn dedupe(mut self) -> Self {
        self.dedupe = true;
        self
    }

    pub fn shard(mut self, index: u64, count: u64) -> Self {
        self.shard = Some((index, count));
        self
    }

    /// Smallest chromatic number an instance needs to be tested.
    pub fn chi_threshold(&self) -> Result<usize, HarnessError> {
        let k = self.k;
        Ok(match self.kind {
            CampaignKind::TheoremT31 => k + 4,
            CampaignKind::TheoremT33 => 2 * k + 1,
            CampaignKind::TheoremOrigins => 3 * k + 4,
            CampaignKind::LemmaL23 => {
                let (m, i) = self.lemma_params()?;
                g(m, i).map_err(|e| HarnessError::Campaign(e.to_string()))? as usize
            }
            CampaignKind::ConjectureC32 => k + 3,
            CampaignKind::TournamentPaths | CampaignKind::BoundProbe => 0,
        })
    }

    pub(crate) fn lemma_params(&self) -> Result<(usize, usize), HarnessError> {
        match (self.m, self.i) {
            (Some(m), Some(i)) => Ok((m, i)),
            _ => Err(HarnessError::Campaign("lemma campaigns need m and i".into())),
        }
    }

    pub fn validate(&self) -> Result<(), HarnessError> {
        let bad = |s: String| Err(HarnessError::Campaign(s));
        if self.n_min > self.n_max || self.n_min == 0 {
            return bad(format!("bad order range {}..={}", self.n_min, self.n_max));
        }
        let min_k = match self.kind {
            CampaignKind::TheoremT33 => 2,
            CampaignKind::TournamentPaths | CampaignKind::LemmaL23 => 0,
            _ => 1,
        };
        if self.k < min_k {
            return bad(format!("{} needs k >= {min_k}", self.kind));
        }
        if self.kind == CampaignKind::LemmaL23 {
            let (m, i) = self.lemma_params()?;
            GIndex::new(m, i).map_err(|e| HarnessError::Campaign(e.to_string()))?;
            if self.k == 0 || self.k + i + 2 > m {
                return bad(format!("need 1 <= k <= m-2-i, got k={}, m={m}, i={i}", self.k));
            }
        }
        if self.kind == CampaignKind::TournamentPaths && self.hosts != HostClass::Tournaments {
            return bad("tournament_paths runs over tournaments".into());
        }
        if self.hosts == HostClass::Tournaments && self.mode != Mode::Oriented {
            return bad("tournaments are oriented".into());
        }
        if let Some((index, count)) = self.shard {
            if count == 0 || index >= count {
                return bad(format!("bad shard {index}/{count}"));
            }
            if self.strategy != Strategy::Exhaustive || self.hosts != HostClass::Digraphs {
                return bad("only exhaustive digraph campaigns shard".into());
            }
        }
        if let Some(p) = self.absent_per_mille {
            if p > 1000 {
                return bad(format!("absent_per_mille {p} exceeds 1000"));
            }
        }
        if let Strategy::Sampled { count: 0, .. } = self.strategy {
            return bad("sample count must be positive".into());
        }
        Ok(())
    }

    /// Hex SHA-256 of the campaign's JSON form.
    pub fn hash(&self) -> String {
        let json = serde_json::to_string(self).expect("campaigns serialize");
        Sha256::digest(json.as_bytes())
            .iter()
            .map(|b| format!("{b:02x}"))
            .collect()
    }
}
