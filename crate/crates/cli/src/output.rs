//! Rendering of reports as JSON, CSV or Markdown.

use std::fmt::Write;

use clap::ValueEnum;
use evsc_core::fixtures::Report;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

/// Classes that occur anywhere in the report, ascending.
fn classes(report: &Report) -> Vec<u32> {
    let mut cs: Vec<u32> = report
        .results
        .iter()
        .flat_map(|r| r.insertions.pairs().into_iter().map(|(p, _)| p))
        .collect();
    cs.sort_unstable();
    cs.dedup();
    cs
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("reports always serialize");
            s.push('\n');
            s
        }
        Format::Csv => table(report, ",", "", ""),
        Format::Markdown => {
            let mut out = format!("**{}**, genus {}\n\n", report.space, report.genus);
            out.push_str(&table(report, " | ", "| ", " |"));
            out
        }
    }
}

fn table(report: &Report, sep: &str, open: &str, close: &str) -> String {
    let cs = classes(report);
    let mut header = vec!["d".to_string()];
    header.extend(cs.iter().map(|p| format!("n{p}")));
    header.push("kind".into());
    header.push("value".into());
    let mut out = String::new();
    let _ = writeln!(out, "{open}{}{close}", header.join(sep));
    if !open.is_empty() {
        let rule: Vec<&str> = header.iter().map(|_| "---").collect();
        let _ = writeln!(out, "{open}{}{close}", rule.join(sep));
    }
    for r in &report.results {
        let mut cells = vec![r.d.to_string()];
        cells.extend(cs.iter().map(|&p| r.insertions.count(p).to_string()));
        cells.push(r.kind.to_string());
        cells.push(r.value.clone());
        let _ = writeln!(out, "{open}{}{close}", cells.join(sep));
    }
    out
}
