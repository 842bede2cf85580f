use serde::Serialize;
use serde_json::Value;

use crate::{CliError, Format, RunConfig, VERSION};

/// Tabular view of a result, used for CSV output.
#[derive(Debug, Default)]
pub(crate) struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Debug)]
pub(crate) struct Report {
    pub result: Value,
    pub table: Table,
    /// Extra JSON summaries appended to CSV output as comment lines.
    pub trailers: Vec<(&'static str, Value)>,
    /// Set when an invariant check failed.
    pub violation: bool,
}

/// The JSON envelope shared by every command.
#[derive(Serialize)]
pub struct Document<'a> {
    pub tool: &'static str,
    pub version: &'static str,
    pub config: &'a RunConfig,
    pub result: &'a Value,
}

fn csv_cell(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub(crate) fn render(config: &RunConfig, report: &Report) -> Result<String, CliError> {
    let to_io = |e: serde_json::Error| CliError::Io(e.into());
    match config.format {
        Format::Json => {
            let doc = Document {
                tool: "nbrw",
                version: VERSION,
                config,
                result: &report.result,
            };
            let mut s = serde_json::to_string_pretty(&doc).map_err(to_io)?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let mut s = format!(
                "# nbrw {VERSION} numeric_mode={} config={}\n",
                config.numeric_mode,
                serde_json::to_string(config).map_err(to_io)?
            );
            s.push_str(&report.table.columns.join(","));
            s.push('\n');
            for row in &report.table.rows {
                let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            for (name, value) in &report.trailers {
                s.push_str(&format!("# {name} {}\n", serde_json::to_string(value).map_err(to_io)?));
            }
            Ok(s)
        }
    }
}
