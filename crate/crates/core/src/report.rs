//! Plain-text verification reports: one `PASS <item> ...` or
//! `FAIL <item> <counterexample>` line per checked item.

use std::fmt;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReportItem {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    pub title: String,
    pub items: Vec<ReportItem>,
    /// Free-form lines printed after the items (measurements, not verdicts).
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report {
            title: title.into(),
            ..Report::default()
        }
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) -> bool {
        self.items.push(ReportItem {
            name: name.into(),
            pass,
            detail: detail.into(),
        });
        pass
    }

    /// Records the outcome of a fallible check; an error counts as a failure.
    pub fn check_result<T>(&mut self, name: impl Into<String>, outcome: Result<T>, detail: impl Fn(&T) -> String) -> bool {
        match outcome {
            Ok(v) => self.check(name, true, detail(&v)),
            Err(e) => self.check(name, false, e.to_string()),
        }
    }

    pub fn note(&mut self, line: impl Into<String>) {
        self.notes.push(line.into());
    }

    pub fn merge(&mut self, other: Report) {
        let prefix = other.title;
        for mut item in other.items {
            if !prefix.is_empty() {
                item.name = format!("{prefix}/{}", item.name);
            }
            self.items.push(item);
        }
        self.notes.extend(other.notes);
    }

    pub fn passed(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ReportItem> {
        self.items.iter().filter(|i| !i.pass)
    }

    /// `Ok` when every item passed, otherwise the first failure as an error.
    pub fn into_result(self) -> Result<Report> {
        let failure = self
            .failures()
            .next()
            .map(|f| (f.name.clone(), f.detail.clone()));
        match failure {
            None => Ok(self),
            Some((item, counterexample)) => Err(Error::VerificationFailed {
                item,
                counterexample,
            }),
        }
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if !self.title.is_empty() {
            writeln!(f, "# {}", self.title)?;
        }
        for item in &self.items {
            let verdict = if item.pass { "PASS" } else { "FAIL" };
            if item.detail.is_empty() {
                writeln!(f, "{verdict} {}", item.name)?;
            } else {
                writeln!(f, "{verdict} {} {}", item.name, item.detail)?;
            }
        }
        for line in &self.notes {
            writeln!(f, "# {line}")?;
        }
        Ok(())
    }
}
