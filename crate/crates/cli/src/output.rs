use serde::ser::{Serialize, SerializeMap, Serializer};
use serde_json::Value;

use crate::args::Format;

/// One output row; fields keep their insertion order in every format.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(&'static str, Value)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn field(mut self, key: &'static str, value: impl Into<Value>) -> Self {
        self.0.push((key, value.into()));
        self
    }

    /// Adds `<prefix>_re` and `<prefix>_im`.
    pub fn complex(
        self,
        re_key: &'static str,
        im_key: &'static str,
        z: num_complex::Complex64,
    ) -> Self {
        self.field(re_key, z.re).field(im_key, z.im)
    }
}

impl Serialize for Record {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in &self.0 {
            map.serialize_entry(k, v)?;
        }
        map.end()
    }
}

/// Result of a computational subcommand: a single record or a table.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Single(Record),
    Rows(Vec<Record>),
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn csv_cell(v: &Value) -> String {
    let s = cell(v);
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s
    }
}

impl Output {
    fn rows(&self) -> &[Record] {
        match self {
            Output::Single(r) => std::slice::from_ref(r),
            Output::Rows(rows) => rows,
        }
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let text = match self {
                    Output::Single(r) => serde_json::to_string_pretty(r),
                    Output::Rows(rows) => serde_json::to_string_pretty(rows),
                };
                text.expect("records are plain JSON") + "\n"
            }
            Format::Csv => {
                let rows = self.rows();
                let mut out = String::new();
                if let Some(first) = rows.first() {
                    let header: Vec<&str> = first.0.iter().map(|(k, _)| *k).collect();
                    out.push_str(&header.join(","));
                    out.push('\n');
                }
                for r in rows {
                    let cells: Vec<String> = r.0.iter().map(|(_, v)| csv_cell(v)).collect();
                    out.push_str(&cells.join(","));
                    out.push('\n');
                }
                out
            }
            Format::Text => match self {
                Output::Single(r) => {
                    let width = r.0.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
                    r.0.iter()
                        .map(|(k, v)| format!("{k:<width$}  {}\n", cell(v)))
                        .collect()
                }
                Output::Rows(rows) => {
                    let Some(first) = rows.first() else {
                        return "(no rows)\n".into();
                    };
                    let header: Vec<String> = first.0.iter().map(|(k, _)| k.to_string()).collect();
                    let body: Vec<Vec<String>> = rows
                        .iter()
                        .map(|r| r.0.iter().map(|(_, v)| cell(v)).collect())
                        .collect();
                    let widths: Vec<usize> = (0..header.len())
                        .map(|i| {
                            body.iter()
                                .map(|row| row.get(i).map_or(0, String::len))
                                .chain([header[i].len()])
                                .max()
                                .unwrap_or(0)
                        })
                        .collect();
                    let line = |cells: &[String]| {
                        let padded: Vec<String> = cells
                            .iter()
                            .zip(&widths)
                            .map(|(c, w)| format!("{c:<w$}"))
                            .collect();
                        padded.join("  ").trim_end().to_string() + "\n"
                    };
                    let mut out = line(&header);
                    for row in &body {
                        out.push_str(&line(row));
                    }
                    out
                }
            },
        }
    }
}
