use std::fmt::Write as _;

use serde::Serialize;

use super::config::Format;

/// Rows with a CSV/table view and a parallel JSON view.
#[derive(Debug, Default)]
pub struct Rows {
    headers: Vec<String>,
    cells: Vec<Vec<String>>,
    json: Vec<String>,
}

impl Rows {
    pub fn new(headers: &[&str]) -> Self {
        Rows {
            headers: headers.iter().map(ToString::to_string).collect(),
            ..Default::default()
        }
    }

    pub fn push<T: Serialize>(&mut self, cells: Vec<String>, record: &T) {
        debug_assert_eq!(cells.len(), self.headers.len());
        self.cells.push(cells);
        self.json
            .push(serde_json::to_string(record).expect("records serialize to JSON"));
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv(),
            Format::JsonLines => self.json.iter().map(|l| format!("{l}\n")).collect(),
            Format::Table => self.table(),
        }
    }

    fn csv(&self) -> String {
        let mut out = String::from("# schema=1\n");
        let line = |cells: &[String]| -> String {
            cells
                .iter()
                .map(|c| {
                    if c.contains(',') || c.contains('"') {
                        format!("\"{}\"", c.replace('"', "\"\""))
                    } else {
                        c.clone()
                    }
                })
                .collect::<Vec<_>>()
                .join(",")
        };
        let _ = writeln!(out, "{}", line(&self.headers));
        for row in &self.cells {
            let _ = writeln!(out, "{}", line(row));
        }
        out
    }

    fn table(&self) -> String {
        let mut widths: Vec<usize> = self.headers.iter().map(|h| h.chars().count()).collect();
        for row in &self.cells {
            for (w, c) in widths.iter_mut().zip(row) {
                *w = (*w).max(c.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            let _ = writeln!(out, "{}", padded.join("  ").trim_end());
        };
        line(&self.headers);
        for row in &self.cells {
            line(row);
        }
        out
    }
}

/// Fixed six decimals, the precision used in tables and CSV summaries.
pub fn f6(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    format!("{v:.6}")
}

/// Shortest round-trip decimal, `inf` for infinity.
pub fn num(v: f64) -> String {
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    v.to_string()
}
