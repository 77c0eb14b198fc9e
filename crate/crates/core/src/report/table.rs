use std::collections::HashMap;
use std::fmt::Write;
use std::path::Path;

use serde::Serialize;

use super::aggregate::MethodSummary;
use crate::error::{Error, Result};
use crate::pipeline::combined_basic;

/// Metric columns in table order. Sub-indicators are percentages.
pub const METRIC_COLUMNS: [&str; 22] = [
    "obj_p", "obj_r", "obj_f1", "attr_p", "attr_r", "attr_f1", "rel_p", "rel_r", "rel_f1", "iou_f",
    "ap_f", "iou_b", "ap_b", "iou_s", "ap_s", "iou_i", "ap_i", "iou_p", "ap_p", "basic_h",
    "basic_l", "basic",
];

/// One table line: a (method, dataset) group with optional metric cells.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub method: String,
    pub dataset: String,
    pub cells: [Option<f64>; 22],
}

fn col(name: &str) -> Option<usize> {
    METRIC_COLUMNS.iter().position(|c| *c == name)
}

impl ReportRow {
    pub fn new(method: impl Into<String>, dataset: impl Into<String>) -> Self {
        ReportRow {
            method: method.into(),
            dataset: dataset.into(),
            cells: [None; 22],
        }
    }

    pub fn get(&self, column: &str) -> Option<f64> {
        col(column).and_then(|i| self.cells[i])
    }

    /// Panics on an unknown column name.
    pub fn set(&mut self, column: &str, v: Option<f64>) {
        let i = col(column).unwrap_or_else(|| panic!("unknown column {column}"));
        self.cells[i] = v;
    }

    pub fn label(&self) -> String {
        if self.dataset.is_empty() {
            self.method.clone()
        } else {
            format!("{}/{}", self.dataset, self.method)
        }
    }
}

impl From<&MethodSummary> for ReportRow {
    fn from(s: &MethodSummary) -> Self {
        let mut row = ReportRow::new(&s.method, &s.dataset);
        if let Some(sem) = &s.semantic {
            for (prefix, p) in [
                ("obj", sem.objects),
                ("attr", sem.attributes),
                ("rel", sem.relations),
            ] {
                row.set(&format!("{prefix}_p"), Some(100.0 * p.precision));
                row.set(&format!("{prefix}_r"), Some(100.0 * p.recall));
                row.set(&format!("{prefix}_f1"), Some(100.0 * p.f1));
            }
        }
        if let Some(g) = &s.structural {
            for (k, v) in [("f", g.f), ("b", g.b), ("s", g.s), ("i", g.i), ("p", g.p)] {
                row.set(&format!("iou_{k}"), Some(100.0 * v.iou));
                row.set(&format!("ap_{k}"), Some(100.0 * v.ap));
            }
        }
        row.set("basic_h", s.basic_h);
        row.set("basic_l", s.basic_l);
        row.set("basic", s.basic);
        row
    }
}

fn cell(v: Option<f64>) -> String {
    v.map(|x| format!("{x:.2}")).unwrap_or_default()
}

pub fn render_csv(rows: &[ReportRow]) -> String {
    write_table(&[], rows.iter().map(|r| (Vec::new(), r)))
}

/// CSV with leading `extra` columns, used for long-form sweep tables.
pub(crate) fn write_table<'a>(
    extra: &[String],
    rows: impl Iterator<Item = (Vec<String>, &'a ReportRow)>,
) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header = extra
        .iter()
        .map(String::as_str)
        .chain(["method", "dataset"])
        .chain(METRIC_COLUMNS);
    w.write_record(header).expect("writing to memory");
    for (lead, r) in rows {
        let record = lead
            .into_iter()
            .chain([r.method.clone(), r.dataset.clone()])
            .chain(r.cells.iter().map(|c| cell(*c)));
        w.write_record(record).expect("writing to memory");
    }
    String::from_utf8(w.into_inner().expect("writing to memory")).expect("utf-8 input")
}

/// Markdown table with the best value of each column bolded within a dataset.
pub fn render_markdown(rows: &[ReportRow]) -> String {
    let mut best: HashMap<(&str, usize), String> = HashMap::new();
    for r in rows {
        for (i, c) in r.cells.iter().enumerate() {
            if let Some(v) = c {
                let s = cell(Some(*v));
                let e = best
                    .entry((r.dataset.as_str(), i))
                    .or_insert_with(|| s.clone());
                if s.parse::<f64>().unwrap() > e.parse::<f64>().unwrap() {
                    *e = s;
                }
            }
        }
    }
    let mut out = format!("| method | dataset | {} |\n", METRIC_COLUMNS.join(" | "));
    let _ = writeln!(out, "|{}", "---|".repeat(METRIC_COLUMNS.len() + 2));
    for r in rows {
        let cells: Vec<String> = r
            .cells
            .iter()
            .enumerate()
            .map(|(i, c)| {
                let s = cell(*c);
                match best.get(&(r.dataset.as_str(), i)) {
                    Some(b) if c.is_some() && *b == s => format!("**{s}**"),
                    _ => s,
                }
            })
            .collect();
        let _ = writeln!(
            out,
            "| {} | {} | {} |",
            r.method,
            r.dataset,
            cells.join(" | ")
        );
    }
    out
}

/// Reads a score table. Only `method` is required; any subset of the metric
/// columns may be present, and blank cells are missing values.
pub fn parse_csv(path: &Path, text: &str) -> Result<Vec<ReportRow>> {
    let mut reader = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let names: Vec<String> = reader
        .headers()
        .map_err(|e| Error::schema(path, "line 1", e.to_string()))?
        .iter()
        .map(String::from)
        .collect();
    if names.iter().all(|n| n.is_empty()) {
        return Err(Error::schema(path, "line 1", "missing header"));
    }
    if let Some(other) = names
        .iter()
        .find(|n| !matches!(n.as_str(), "method" | "dataset") && col(n).is_none())
    {
        return Err(Error::schema(
            path,
            "line 1",
            format!("unknown column `{other}`"),
        ));
    }
    let method_at = names
        .iter()
        .position(|n| n == "method")
        .ok_or_else(|| Error::schema(path, "line 1", "missing `method` column"))?;
    let dataset_at = names.iter().position(|n| n == "dataset");
    reader
        .records()
        .map(|rec| {
            let rec = rec.map_err(|e| {
                let line = e.position().map_or(0, |p| p.line());
                Error::schema(path, format!("line {line}"), e.to_string())
            })?;
            let loc = format!("line {}", rec.position().map_or(0, |p| p.line()));
            let mut row = ReportRow::new(&rec[method_at], dataset_at.map_or("", |i| &rec[i]));
            for (name, f) in names.iter().zip(rec.iter()) {
                if let Some(i) = col(name) {
                    if !f.is_empty() {
                        let v = f.parse::<f64>().map_err(|_| {
                            Error::schema(path, &loc, format!("`{name}` is not a number: {f}"))
                        })?;
                        row.cells[i] = Some(v);
                    }
                }
            }
            Ok(row)
        })
        .collect()
}

/// Recomputes BASIC-H, BASIC-L and BASIC from stored sub-indicators with
/// normalized weights. A score whose inputs are incomplete is left missing.
pub fn combine(rows: &[ReportRow], alpha: [f64; 3], beta: [f64; 4]) -> Vec<ReportRow> {
    rows.iter()
        .map(|r| {
            let mut out = r.clone();
            let weighted = |cols: &[&str], w: &[f64]| -> Option<f64> {
                let vals: Option<Vec<f64>> = cols.iter().map(|c| r.get(c)).collect();
                vals.map(|v| v.iter().zip(w).map(|(x, w)| x * w).sum())
            };
            let h = weighted(&["obj_f1", "attr_f1", "rel_f1"], &alpha);
            let l = weighted(&["iou_f", "iou_s", "iou_i", "iou_p"], &beta);
            out.set("basic_h", h);
            out.set("basic_l", l);
            out.set("basic", h.zip(l).map(|(h, l)| combined_basic(h, l)));
            out
        })
        .collect()
}
