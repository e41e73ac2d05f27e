use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, ErrorKind, Write};
use std::path::{Path, PathBuf};

use super::campaign::CampaignKind;
use super::runner::ScanReport;
use super::HarnessError;
use crate::digraph::Mode;

/// Append-only JSONL file of scan reports, one per line.
#[derive(Debug, Clone)]
pub struct Store {
    path: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Appended {
    New,
    /// A report with the same campaign hash was already stored; the new one
    /// is appended anyway.
    Duplicate,
}

/// Reports match when every set field agrees.
#[derive(Debug, Clone, Default)]
pub struct Query {
    pub kind: Option<CampaignKind>,
    pub k: Option<usize>,
    /// Matches the largest order of the campaign.
    pub n: Option<usize>,
    pub mode: Option<Mode>,
}

impl Query {
    pub fn matches(&self, r: &ScanReport) -> bool {
        let c = &r.campaign;
        self.kind.is_none_or(|x| x == c.kind)
            && self.k.is_none_or(|x| x == c.k)
            && self.n.is_none_or(|x| x == c.n_max)
            && self.mode.is_none_or(|x| x == c.mode)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorruptLine {
    /// 1-based.
    pub line: usize,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct QueryResult {
    pub reports: Vec<ScanReport>,
    pub corrupt: Vec<CorruptLine>,
}

impl Store {
    pub fn new(path: impl Into<PathBuf>) -> Self {
        Store { path: path.into() }
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    fn io(&self, source: std::io::Error) -> HarnessError {
        HarnessError::Io {
            path: self.path.clone(),
            source,
        }
    }

    /// Every readable report, with the lines that failed to parse.
    pub fn load(&self) -> Result<QueryResult, HarnessError> {
        let mut out = QueryResult {
            reports: Vec::new(),
            corrupt: Vec::new(),
        };
        let file = match File::open(&self.path) {
            Ok(f) => f,
            Err(e) if e.kind() == ErrorKind::NotFound => return Ok(out),
            Err(e) => return Err(self.io(e)),
        };
        for (i, line) in BufReader::new(file).lines().enumerate() {
            let line = line.map_err(|e| self.io(e))?;
            if line.trim().is_empty() {
                continue;
            }
            match serde_json::from_str::<ScanReport>(&line) {
                Ok(r) => out.reports.push(r),
                Err(e) => out.corrupt.push(CorruptLine {
                    line: i + 1,
                    error: e.to_string(),
                }),
            }
        }
        Ok(out)
    }

    pub fn contains_hash(&self, hash: &str) -> Result<bool, HarnessError> {
        Ok(self.load()?.reports.iter().any(|r| r.campaign_hash == hash))
    }

    pub fn append(&self, report: &ScanReport) -> Result<Appended, HarnessError> {
        let seen = self.contains_hash(&report.campaign_hash)?;
        let mut f = OpenOptions::new()
            .create(true)
            .append(true)
            .open(&self.path)
            .map_err(|e| self.io(e))?;
        writeln!(f, "{}", report.to_json_line()).map_err(|e| self.io(e))?;
        Ok(if seen { Appended::Duplicate } else { Appended::New })
    }

    pub fn query(&self, q: &Query) -> Result<QueryResult, HarnessError> {
        let mut all = self.load()?;
        all.reports.retain(|r| q.matches(r));
        Ok(all)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::harness::{run_campaign, Campaign};

    fn reports() -> (ScanReport, ScanReport) {
        let a = run_campaign(&Campaign::new(CampaignKind::ConjectureC32, 1, 1, 4)).unwrap();
        let b = run_campaign(&Campaign::new(CampaignKind::BoundProbe, 1, 2, 3)).unwrap();
        (a, b)
    }

    #[test]
    fn append_then_query() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::new(dir.path().join("reports.jsonl"));
        assert!(store.load().unwrap().reports.is_empty());
        let (a, b) = reports();
        assert_eq!(store.append(&a).unwrap(), Appended::New);
        assert_eq!(store.append(&b).unwrap(), Appended::New);
        let all = store.query(&Query::default()).unwrap();
        assert_eq!(all.reports, vec![a.clone(), b]);
        let q = Query {
            kind: Some(CampaignKind::ConjectureC32),
            n: Some(4),
            ..Query::default()
        };
        assert_eq!(store.query(&q).unwrap().reports, vec![a]);
        let none = Query {
            mode: Some(Mode::General),
            ..Query::default()
        };
        assert!(store.query(&none).unwrap().reports.is_empty());
    }

    #[test]
    fn duplicate_hash_flagged() {
        let dir = tempfile::tempdir().unwrap();
        let store = Store::new(dir.path().join("r.jsonl"));
        let (a, _) = reports();
        assert_eq!(store.append(&a).unwrap(), Appended::New);
        assert_eq!(store.append(&a).unwrap(), Appended::Duplicate);
        assert_eq!(store.load().unwrap().reports.len(), 2);
    }

    #[test]
    fn damaged_lines_are_skipped() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("r.jsonl");
        let (a, b) = reports();
        let line_a = a.to_json_line();
        let cut = &line_a[..line_a.len() / 2];
        std::fs::write(
            &path,
            format!("{line_a}\n{cut}\nnot json\n\n{}\n", b.to_json_line()),
        )
        .unwrap();
        let got = Store::new(&path).query(&Query::default()).unwrap();
        assert_eq!(got.reports, vec![a, b]);
        let lines: Vec<usize> = got.corrupt.iter().map(|c| c.line).collect();
        assert_eq!(lines, vec![2, 3]);
    }
}
