//! Check results and suite reports.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Agreement {
    Confirmed,
    Refuted,
    Indeterminate,
}

impl Agreement {
    pub fn as_str(self) -> &'static str {
        match self {
            Agreement::Confirmed => "confirmed",
            Agreement::Refuted => "refuted",
            Agreement::Indeterminate => "indeterminate",
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PaperClaim {
    pub value: String,
    pub citation: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CheckReport {
    #[serde(rename = "check-id")]
    pub check_id: String,
    pub computed: String,
    #[serde(rename = "paper-claim")]
    pub paper_claim: Option<PaperClaim>,
    pub agreement: Agreement,
    pub notes: Vec<String>,
    /// Wall-clock milliseconds; only filled when timings are requested so
    /// that reports stay reproducible byte for byte.
    pub elapsed: Option<String>,
}

impl CheckReport {
    /// Confirmed iff `computed == claim` as strings.
    pub fn compare(
        id: impl Into<String>,
        computed: impl Into<String>,
        claim: impl Into<String>,
        citation: impl Into<String>,
    ) -> Self {
        let computed = computed.into();
        let claim = claim.into();
        let agreement = if computed == claim {
            Agreement::Confirmed
        } else {
            Agreement::Refuted
        };
        CheckReport {
            check_id: id.into(),
            computed,
            paper_claim: Some(PaperClaim {
                value: claim,
                citation: citation.into(),
            }),
            agreement,
            notes: Vec::new(),
            elapsed: None,
        }
    }

    /// A computed value with no claim to compare against.
    pub fn observe(id: impl Into<String>, computed: impl Into<String>) -> Self {
        CheckReport {
            check_id: id.into(),
            computed: computed.into(),
            paper_claim: None,
            agreement: Agreement::Indeterminate,
            notes: Vec::new(),
            elapsed: None,
        }
    }

    /// A claim that the source leaves unsettled; never confirmed.
    pub fn unresolved(
        id: impl Into<String>,
        computed: impl Into<String>,
        claim: impl Into<String>,
        citation: impl Into<String>,
    ) -> Self {
        let mut rep = Self::compare(id, computed, claim, citation);
        rep.agreement = Agreement::Indeterminate;
        rep
    }

    pub fn error(id: impl Into<String>, message: impl Into<String>) -> Self {
        let mut rep = Self::observe(id, "error");
        rep.notes.push(format!("error: {}", message.into()));
        rep
    }

    pub fn is_error(&self) -> bool {
        self.computed == "error" && self.notes.iter().any(|n| n.starts_with("error: "))
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    pub fn with_notes<I, S>(mut self, notes: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        self.notes.extend(notes.into_iter().map(Into::into));
        self
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub m: Option<String>,
    pub seed: String,
    pub survey: String,
    pub bound: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Default, Serialize, Deserialize)]
pub struct Summary {
    pub confirmed: String,
    pub refuted: String,
    pub indeterminate: String,
    pub errors: String,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: ConfigEcho,
    pub checks: Vec<CheckReport>,
    pub summary: Summary,
}

impl SuiteReport {
    pub fn new(suite: &str, config: ConfigEcho, checks: Vec<CheckReport>) -> Self {
        let count = |a: Agreement| {
            checks
                .iter()
                .filter(|c| !c.is_error() && c.agreement == a)
                .count()
                .to_string()
        };
        let summary = Summary {
            confirmed: count(Agreement::Confirmed),
            refuted: count(Agreement::Refuted),
            indeterminate: count(Agreement::Indeterminate),
            errors: checks.iter().filter(|c| c.is_error()).count().to_string(),
        };
        SuiteReport {
            suite: suite.to_string(),
            config,
            checks,
            summary,
        }
    }

    pub fn error_count(&self) -> usize {
        self.checks.iter().filter(|c| c.is_error()).count()
    }

    pub fn count(&self, a: Agreement) -> usize {
        self.checks.iter().filter(|c| !c.is_error() && c.agreement == a).count()
    }

    pub fn find(&self, id: &str) -> Option<&CheckReport> {
        self.checks.iter().find(|c| c.check_id == id)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let cfg = &self.config;
        let _ = writeln!(out, "suite: {}", self.suite);
        let _ = writeln!(
            out,
            "config: m={} seed={} survey={} bound={}",
            cfg.m.as_deref().unwrap_or("<symbolic>"),
            cfg.seed,
            cfg.survey,
            cfg.bound
        );
        for c in &self.checks {
            let _ = writeln!(out);
            let _ = writeln!(out, "[{}] {}", c.agreement.as_str(), c.check_id);
            let _ = writeln!(out, "  computed: {}", c.computed);
            if let Some(claim) = &c.paper_claim {
                let _ = writeln!(out, "  claimed:  {}", claim.value);
                let _ = writeln!(out, "  source:   \"{}\"", claim.citation);
            }
            for n in &c.notes {
                let _ = writeln!(out, "  - {n}");
            }
            if let Some(ms) = &c.elapsed {
                let _ = writeln!(out, "  elapsed: {ms} ms");
            }
        }
        let s = &self.summary;
        let _ = writeln!(out);
        let _ = writeln!(
            out,
            "summary: confirmed={} refuted={} indeterminate={} errors={}",
            s.confirmed, s.refuted, s.indeterminate, s.errors
        );
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_sets_agreement_by_equality() {
        assert_eq!(CheckReport::compare("a", "1", "1", "q").agreement, Agreement::Confirmed);
        assert_eq!(CheckReport::compare("a", "1", "2", "q").agreement, Agreement::Refuted);
        assert_eq!(CheckReport::observe("a", "1").agreement, Agreement::Indeterminate);
        assert_eq!(
            CheckReport::unresolved("a", "1", "1", "q").agreement,
            Agreement::Indeterminate
        );
    }

    #[test]
    fn json_field_names() {
        let rep = CheckReport::compare("x.y", "0", "0", "quote");
        let v = serde_json::to_value(&rep).unwrap();
        assert!(v.get("check-id").is_some());
        assert!(v.get("paper-claim").is_some());
        assert_eq!(v["agreement"], "confirmed");
    }
}
