use super::{Multigraph, MultigraphBuilder};
use crate::error::{NbrwError, Result};

/// Parse the line-oriented edge-list format.
///
/// ```text
/// # comment
/// edge <u> <v> [mult]
/// loop <u> [count]
/// ```
///
/// Vertex ids are assigned in order of first appearance.
pub fn load_multigraph(text: &str) -> Result<Multigraph> {
    let mut builder = MultigraphBuilder::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = match raw.find('#') {
            Some(p) => &raw[..p],
            None => raw,
        };
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let err = |message: String| NbrwError::Parse { line: line_no, message };
        match tokens.as_slice() {
            [] => {}
            ["edge", u, v] => {
                builder.edge(u, v, 1);
            }
            ["edge", u, v, m] => {
                builder.edge(u, v, count(m).map_err(err)?);
            }
            ["loop", u] => {
                builder.add_loop(u, 1);
            }
            ["loop", u, c] => {
                builder.add_loop(u, count(c).map_err(err)?);
            }
            [kw @ ("edge" | "loop"), ..] => {
                return Err(err(format!("wrong number of fields for `{kw}`")));
            }
            [other, ..] => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    builder.build()
}

fn count(tok: &str) -> std::result::Result<usize, String> {
    match tok.parse::<usize>() {
        Ok(0) => Err("multiplicity must be at least 1".into()),
        Ok(m) => Ok(m),
        Err(_) => Err(format!("`{tok}` is not a positive integer")),
    }
}
