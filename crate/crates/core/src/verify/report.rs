use std::fmt::Write;

use serde::Serialize;

use super::joint::JointGame;
use super::{Level, Record, Status};
use crate::oracle::Completeness;
use crate::rules::Color;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Summary {
    pub pass: usize,
    pub fail: usize,
    pub unknown: usize,
    pub unverified: usize,
    /// Records whose obligation came from a default claim.
    pub via_default: usize,
    pub nodes: u64,
}

impl Summary {
    fn of(records: &[Record]) -> Summary {
        let mut s = Summary::default();
        for r in records {
            match r.status {
                Status::Pass => s.pass += 1,
                Status::Fail => s.fail += 1,
                Status::Unknown => s.unknown += 1,
                Status::UnverifiedClaim => s.unverified += 1,
            }
            s.via_default += usize::from(r.via_default);
            s.nodes += r.nodes;
        }
        s
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub document: String,
    pub side: Color,
    pub level: Level,
    pub completeness: Option<Completeness>,
    /// Plies used for draw and cannot-win leaves, when checked.
    pub horizon: Option<u32>,
    pub records: Vec<Record>,
    pub summary: Summary,
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Line<'a> {
    Obligation {
        document: &'a str,
        #[serde(flatten)]
        obligation_record: &'a Record,
    },
    Summary {
        document: &'a str,
        side: Color,
        level: Level,
        completeness: Option<Completeness>,
        horizon: Option<u32>,
        #[serde(flatten)]
        summary: &'a Summary,
    },
    Joint(&'a JointGame),
}

fn tag(status: Status) -> &'static str {
    match status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Unknown => "UNKNOWN",
        Status::UnverifiedClaim => "UNVERIFIED",
    }
}

impl Report {
    pub fn new(document: &str, side: Color, level: Level, records: Vec<Record>) -> Report {
        Report {
            document: document.to_string(),
            side,
            level,
            completeness: None,
            horizon: None,
            summary: Summary::of(&records),
            records,
        }
    }

    pub fn has_failures(&self) -> bool {
        self.summary.fail > 0
    }

    /// No failures, no unverified claims and not a partial transcription.
    /// Unknown records do not block this; they are counted separately.
    pub fn verified(&self) -> bool {
        self.completeness != Some(Completeness::Partial)
            && !self.has_failures()
            && self.summary.unverified == 0
    }

    /// Human-readable report. With `all` unset, passing records are omitted.
    pub fn to_text(&self, all: bool) -> String {
        let mut out = String::new();
        let completeness = match self.completeness {
            Some(Completeness::Partial) => ", partial transcription",
            Some(Completeness::Complete) => ", complete transcription",
            None => "",
        };
        let _ = writeln!(
            out,
            "{}: {} oracle{}, level {:?}",
            self.document, self.side, completeness, self.level
        );
        for r in &self.records {
            if !all && r.status == Status::Pass {
                continue;
            }
            let _ = write!(
                out,
                "  {:<10} {:<9} {}",
                tag(r.status),
                format!("{:?}", r.obligation).to_lowercase(),
                r.path
            );
            if let Some(v) = &r.variation {
                let _ = write!(out, " [{v}]");
            }
            if let Some(c) = &r.claim {
                let _ = write!(out, " {{{c}}}");
            }
            if r.via_default {
                out.push_str(" (default)");
            }
            let _ = write!(out, ": {}", r.detail);
            if !r.witness.is_empty() {
                let _ = write!(out, "; witness: {}", r.witness.join(" "));
            }
            out.push('\n');
        }
        let s = &self.summary;
        let _ = writeln!(
            out,
            "  summary: {} pass, {} fail, {} unknown, {} unverified claims, {} via default claims, {} nodes",
            s.pass, s.fail, s.unknown, s.unverified, s.via_default, s.nodes
        );
        if let Some(h) = self.horizon {
            let _ = writeln!(
                out,
                "  note: draw and cannot-win leaves were checked for {h} plies; the game value beyond that is not established"
            );
        }
        if self.completeness == Some(Completeness::Partial) {
            out.push_str("  note: partial transcription, not verified as a whole\n");
        }
        out
    }

    /// One JSON object per obligation, then a summary object.
    pub fn to_json_lines(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let line = Line::Obligation {
                document: &self.document,
                obligation_record: r,
            };
            out.push_str(&serde_json::to_string(&line).expect("serializable"));
            out.push('\n');
        }
        let line = Line::Summary {
            document: &self.document,
            side: self.side,
            level: self.level,
            completeness: self.completeness,
            horizon: self.horizon,
            summary: &self.summary,
        };
        out.push_str(&serde_json::to_string(&line).expect("serializable"));
        out.push('\n');
        out
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AggregateReport {
    pub reports: Vec<Report>,
    pub joint: Option<JointGame>,
}

impl AggregateReport {
    pub fn has_failures(&self) -> bool {
        self.reports.iter().any(Report::has_failures)
            || self.joint.as_ref().is_some_and(|j| !j.drawn)
    }

    pub fn to_text(&self, all: bool) -> String {
        let mut out: String = self.reports.iter().map(|r| r.to_text(all)).collect();
        if let Some(j) = &self.joint {
            out.push_str(&j.to_text());
        }
        out
    }

    pub fn to_json_lines(&self) -> String {
        let mut out: String = self.reports.iter().map(Report::to_json_lines).collect();
        if let Some(j) = &self.joint {
            out.push_str(&serde_json::to_string(&Line::Joint(j)).expect("serializable"));
            out.push('\n');
        }
        out
    }
}
