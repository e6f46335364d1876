use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::homology::{HomologyGroup, HomologyResult};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// A refutation or a failed expectation; exit code 3.
    Refuted(String),
    /// A resource guard stopped the computation; exit code 2.
    Guard(String),
}

impl Status {
    pub fn code(&self) -> u8 {
        match self {
            Status::Ok => 0,
            Status::Guard(_) => 2,
            Status::Refuted(_) => 3,
        }
    }

    fn describe(&self) -> String {
        match self {
            Status::Ok => "ok".into(),
            Status::Refuted(m) => format!("refuted: {m}"),
            Status::Guard(m) => format!("resource guard: {m}"),
        }
    }

    /// The more severe of two statuses, refutations first.
    pub fn worst(self, other: Status) -> Status {
        match (&self, &other) {
            (Status::Refuted(_), _) => self,
            (_, Status::Refuted(_)) => other,
            (Status::Guard(_), _) => self,
            _ => other,
        }
    }
}

/// A human-readable body plus the same content as JSON.
#[derive(Debug, Clone)]
pub struct Report {
    pub title: String,
    pub text: String,
    pub data: Value,
    pub status: Status,
}

impl Report {
    pub fn new(title: impl Into<String>) -> Self {
        Report { title: title.into(), text: String::new(), data: json!({}), status: Status::Ok }
    }

    pub fn line(&mut self, s: impl AsRef<str>) -> &mut Self {
        self.text.push_str(s.as_ref());
        self.text.push('\n');
        self
    }

    pub fn set(&mut self, key: &str, v: Value) -> &mut Self {
        self.data[key] = v;
        self
    }

    pub fn fail(&mut self, status: Status) -> &mut Self {
        let old = std::mem::replace(&mut self.status, Status::Ok);
        self.status = old.worst(status);
        self
    }

    /// Append `other` as a section.
    pub fn absorb(&mut self, other: Report) -> &mut Self {
        let _ = writeln!(self.text, "-- {} --", other.title);
        self.text.push_str(&other.text);
        let _ = writeln!(self.text, "status: {}", other.status.describe());
        let sections = self.data.as_object_mut().expect("object").entry("sections").or_insert_with(|| json!([]));
        sections.as_array_mut().expect("array").push(other.to_json());
        self.fail(other.status);
        self
    }

    pub fn render_text(&self) -> String {
        format!("== {} ==\n{}status: {}\n", self.title, self.text, self.status.describe())
    }

    pub fn to_json(&self) -> Value {
        json!({
            "title": self.title,
            "status": self.status.describe(),
            "exit_code": self.status.code(),
            "data": self.data,
        })
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(&self.to_json()).expect("serializable");
        s.push('\n');
        s
    }
}

/// Left-aligned columns separated by two spaces.
pub fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for r in rows {
        for (w, c) in widths.iter_mut().zip(r) {
            *w = (*w).max(c.chars().count());
        }
    }
    let fmt_row = |cells: Vec<&str>| -> String {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, &w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = fmt_row(header.to_vec());
    out.push('\n');
    for r in rows {
        out.push_str(&fmt_row(r.iter().map(String::as_str).collect()));
        out.push('\n');
    }
    out
}

pub fn group_json(g: &HomologyGroup) -> Value {
    json!({ "betti": g.betti, "torsion": g.torsion.iter().map(|t| t.to_string()).collect::<Vec<_>>(), "group": g.to_string() })
}

pub fn homology_json(h: &HomologyResult) -> Value {
    json!({ "groups": h.groups.iter().map(group_json).collect::<Vec<_>>(), "reliable": h.reliable })
}

/// `(Z, 0, Z)`.
pub fn homology_tuple(h: &HomologyResult) -> String {
    let g: Vec<String> = h.groups.iter().map(ToString::to_string).collect();
    format!("({})", g.join(", "))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn statuses_combine() {
        let mut r = Report::new("t");
        r.fail(Status::Guard("g".into()));
        assert_eq!(r.status.code(), 2);
        r.fail(Status::Refuted("x".into()));
        r.fail(Status::Ok);
        assert_eq!(r.status.code(), 3);
    }

    #[test]
    fn tables_align() {
        let t = table(&["a", "bbb"], &[vec!["xx".into(), "y".into()]]);
        assert_eq!(t, "a   bbb\nxx  y\n");
    }
}
