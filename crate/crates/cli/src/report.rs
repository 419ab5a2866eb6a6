//! Report model and the three renderers.

use std::cmp::Ordering;
use std::fmt::{self, Write as _};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Verdict {
    Pass,
    /// Passed, but every tested group was zero.
    Vacuous,
    /// Not run because a block exceeded the cap.
    Skipped,
    Falsified,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Vacuous => "pass-vacuous",
            Verdict::Skipped => "skipped",
            Verdict::Falsified => "FALSIFIED",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Numbers sort numerically, everything else lexicographically after them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Cell {
    N(usize),
    S(String),
}

impl Ord for Cell {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Cell::N(a), Cell::N(b)) => a.cmp(b),
            (Cell::N(_), Cell::S(_)) => Ordering::Less,
            (Cell::S(_), Cell::N(_)) => Ordering::Greater,
            (Cell::S(a), Cell::S(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Cell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::N(n) => write!(f, "{n}"),
            Cell::S(s) => f.write_str(s),
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::N(n)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::S(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::S(s)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::S(if b { "yes" } else { "no" }.into())
    }
}

#[macro_export]
macro_rules! row {
    ($($x:expr),* $(,)?) => { vec![$($crate::report::Cell::from($x)),*] };
}

#[derive(Clone, Debug)]
pub struct Section {
    /// Sort key and title, e.g. `appendix k1`.
    pub name: String,
    pub verdict: Verdict,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub notes: Vec<String>,
}

impl Section {
    pub fn new(name: impl Into<String>, columns: &[&'static str]) -> Self {
        Section { name: name.into(), verdict: Verdict::Pass, columns: columns.to_vec(), rows: Vec::new(), notes: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn note(&mut self, s: impl Into<String>) {
        self.notes.push(s.into());
    }

    /// Raises the verdict; a falsification is never downgraded.
    pub fn mark(&mut self, v: Verdict) {
        self.verdict = self.verdict.max(v);
    }

    pub fn skipped(name: impl Into<String>, reason: String) -> Self {
        let mut s = Section::new(name, &[]);
        s.verdict = Verdict::Skipped;
        s.notes.push(reason);
        s
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    /// Ordered key/value metadata: field, truncation, seed, cap, inputs, suites.
    pub meta: Vec<(String, String)>,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn verdict(&self) -> Verdict {
        if self.sections.iter().any(|s| s.verdict == Verdict::Falsified) {
            Verdict::Falsified
        } else {
            Verdict::Pass
        }
    }

    pub fn counts(&self) -> [usize; 4] {
        let mut c = [0; 4];
        for s in &self.sections {
            c[s.verdict as usize] += 1;
        }
        c
    }

    /// Sorts sections by name and rows by their cells.
    pub fn normalize(&mut self) {
        self.sections.sort_by(|a, b| a.name.cmp(&b.name));
        for s in &mut self.sections {
            s.rows.sort();
        }
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "adams {}", self.command);
        for (k, v) in &self.meta {
            let _ = writeln!(out, "  {k:<11} {v}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "\n== {} [{}]", s.name, s.verdict);
            if !s.rows.is_empty() {
                let cells: Vec<Vec<String>> = s.rows.iter().map(|r| r.iter().map(|c| c.to_string()).collect()).collect();
                let widths: Vec<usize> = (0..s.columns.len())
                    .map(|k| cells.iter().map(|r| r[k].chars().count()).chain([s.columns[k].chars().count()]).max().unwrap())
                    .collect();
                let line = |vals: Vec<&str>| {
                    let mut l = String::new();
                    for (k, v) in vals.iter().enumerate() {
                        let pad = widths[k] - v.chars().count();
                        l.push_str("  ");
                        l.push_str(v);
                        if k + 1 < vals.len() {
                            l.push_str(&" ".repeat(pad));
                        }
                    }
                    l
                };
                let _ = writeln!(out, "{}", line(s.columns.clone()));
                for r in &cells {
                    let _ = writeln!(out, "{}", line(r.iter().map(String::as_str).collect()));
                }
            }
            for n in &s.notes {
                let _ = writeln!(out, "  note: {n}");
            }
        }
        let [p, v, sk, f] = self.counts();
        let _ = writeln!(out, "\n{}: {p} pass, {v} vacuous, {sk} skipped, {f} falsified", self.verdict());
        out
    }

    /// Long format: one record per cell, `(section, verdict, row, column, value)`.
    pub fn csv(&self) -> String {
        let mut w = csv::Writer::from_writer(Vec::new());
        let mut rec = |a: &str, b: &str, c: &str, d: &str, e: &str| {
            w.write_record([a, b, c, d, e]).expect("writing to memory");
        };
        rec("section", "verdict", "row", "column", "value");
        for (k, v) in &self.meta {
            rec("#meta", "", "", k, v);
        }
        for s in &self.sections {
            for (i, r) in s.rows.iter().enumerate() {
                for (col, c) in s.columns.iter().zip(r) {
                    rec(&s.name, s.verdict.as_str(), &i.to_string(), col, &c.to_string());
                }
            }
            for (i, n) in s.notes.iter().enumerate() {
                rec(&s.name, s.verdict.as_str(), &format!("note{i}"), "note", n);
            }
            if s.rows.is_empty() && s.notes.is_empty() {
                rec(&s.name, s.verdict.as_str(), "", "", "");
            }
        }
        rec("#summary", self.verdict().as_str(), "", "", "");
        String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
    }

    /// Line records in the style of the input schema.
    pub fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "# adams report");
        let _ = writeln!(out, "command {}", self.command);
        for (k, v) in &self.meta {
            let _ = writeln!(out, "{k} {v}");
        }
        for s in &self.sections {
            let _ = writeln!(out, "section {} = {}", s.name, s.verdict);
            if !s.columns.is_empty() {
                let _ = writeln!(out, "columns {}", s.columns.join(" "));
            }
            for r in &s.rows {
                let vals: Vec<String> = r.iter().map(|c| c.to_string().replace(' ', "_")).collect();
                let _ = writeln!(out, "row {}", vals.join(" "));
            }
            for n in &s.notes {
                let _ = writeln!(out, "note {n}");
            }
            let _ = writeln!(out, "end");
        }
        let _ = writeln!(out, "verdict {}", self.verdict());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cells_sort_numerically() {
        let mut v = vec![Cell::N(10), Cell::S("a".into()), Cell::N(2)];
        v.sort();
        assert_eq!(v, vec![Cell::N(2), Cell::N(10), Cell::S("a".into())]);
    }

    #[test]
    fn verdict_never_downgrades() {
        let mut s = Section::new("x", &[]);
        s.mark(Verdict::Falsified);
        s.mark(Verdict::Pass);
        assert_eq!(s.verdict, Verdict::Falsified);
    }

    #[test]
    fn csv_quotes_commas() {
        let mut r = Report { command: "t".into(), ..Report::default() };
        let mut s = Section::new("s", &["term"]);
        s.push(row!["{{x},{x}}"]);
        r.sections.push(s);
        assert!(r.csv().contains("\"{{x},{x}}\""));
    }
}
