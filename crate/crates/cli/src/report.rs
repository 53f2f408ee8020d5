use std::fmt::Display;

use clap::ValueEnum;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Human,
    Records,
}

/// Key/value fields grouped into lines. Human output keeps the grouping and
/// insertion order; records put one field per line, sorted by key.
#[derive(Debug, Default)]
pub struct Report {
    lines: Vec<Vec<(String, String)>>,
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn line(&mut self) -> Line<'_> {
        self.lines.push(Vec::new());
        Line(self.lines.last_mut().unwrap())
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        match format {
            Format::Human => {
                for fields in self.lines.iter().filter(|l| !l.is_empty()) {
                    let parts: Vec<String> = fields.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    out.push_str(&parts.join(" "));
                    out.push('\n');
                }
            }
            Format::Records => {
                let mut all: Vec<&(String, String)> = self.lines.iter().flatten().collect();
                all.sort_by(|a, b| a.0.cmp(&b.0));
                for (k, v) in all {
                    out.push_str(&format!("{k}={v}\n"));
                }
            }
        }
        out
    }
}

pub struct Line<'a>(&'a mut Vec<(String, String)>);

impl Line<'_> {
    pub fn field(&mut self, key: impl Into<String>, value: impl Display) -> &mut Self {
        let value = value.to_string().replace(char::is_whitespace, "_");
        self.0.push((key.into(), value));
        self
    }
}
