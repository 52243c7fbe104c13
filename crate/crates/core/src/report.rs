//! Law-check reports shared by every module.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Outcome attached to a report entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    /// The law fails at the given location.
    Violated,
    /// A search ran out of budget before the law could be decided.
    Undecided,
    /// Informational: the check was sampled rather than exhaustive.
    Sampled,
}

/// One line of a report.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Entry {
    pub law: String,
    pub location: String,
    pub status: Status,
}

impl fmt::Display for Entry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.status {
            Status::Violated => write!(f, "{} violated at {}", self.law, self.location),
            Status::Undecided => write!(f, "{} undecided at {}", self.law, self.location),
            Status::Sampled => write!(f, "{} sampled: {}", self.law, self.location),
        }
    }
}

/// A list of law violations and notes. Serializes as a JSON list of
/// `{law, location, status}` objects.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Report {
    entries: Vec<Entry>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn violation(&mut self, law: impl Into<String>, location: impl Into<String>) {
        self.push(law, location, Status::Violated);
    }

    pub fn undecided(&mut self, law: impl Into<String>, location: impl Into<String>) {
        self.push(law, location, Status::Undecided);
    }

    pub fn note_sampled(&mut self, law: impl Into<String>, location: impl Into<String>) {
        self.push(law, location, Status::Sampled);
    }

    fn push(&mut self, law: impl Into<String>, location: impl Into<String>, status: Status) {
        self.entries.push(Entry {
            law: law.into(),
            location: location.into(),
            status,
        });
    }

    /// Check a condition, recording a violation when it is false.
    pub fn require(&mut self, ok: bool, law: &str, location: impl FnOnce() -> String) {
        if !ok {
            self.violation(law, location());
        }
    }

    /// Append the entries of another report, prefixing their law names.
    pub fn absorb(&mut self, prefix: &str, other: Report) {
        for mut e in other.entries {
            if !prefix.is_empty() {
                e.law = format!("{prefix}: {}", e.law);
            }
            self.entries.push(e);
        }
    }

    pub fn entries(&self) -> &[Entry] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// True when no entry is a violation or undecided. Sampling notes are
    /// informational.
    pub fn is_ok(&self) -> bool {
        !self.has_violations() && !self.has_undecided()
    }

    pub fn has_violations(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Violated)
    }

    pub fn has_undecided(&self) -> bool {
        self.entries.iter().any(|e| e.status == Status::Undecided)
    }

    pub fn violations(&self) -> impl Iterator<Item = &Entry> {
        self.entries.iter().filter(|e| e.status == Status::Violated)
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.entries.is_empty() {
            return write!(f, "ok");
        }
        for (k, e) in self.entries.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl IntoIterator for Report {
    type Item = Entry;
    type IntoIter = std::vec::IntoIter<Entry>;

    fn into_iter(self) -> Self::IntoIter {
        self.entries.into_iter()
    }
}
