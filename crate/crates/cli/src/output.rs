//! Rendering of documents. JSON keeps the row objects as built; CSV and the
//! plain table flatten each value with [`cell_text`].

use serde_json::{json, Value};

use crate::args::Format;
use crate::commands::Document;
use crate::CliError;

/// Text of one table cell. Lists become space-separated, missing values empty.
pub fn cell_text(v: &Value) -> String {
    match v {
        Value::Null => String::new(),
        Value::String(s) => s.clone(),
        Value::Array(items) => items.iter().map(cell_text).collect::<Vec<_>>().join(" "),
        other => other.to_string(),
    }
}

fn header(doc: &Document) -> Vec<&str> {
    let mut cols = doc.columns.clone();
    if doc.rows.iter().any(|r| r.contains_key("skipped")) {
        cols.push("skipped");
    }
    cols
}

fn table(doc: &Document) -> (Vec<&str>, Vec<Vec<String>>) {
    let cols = header(doc);
    let cells = doc
        .rows
        .iter()
        .map(|r| {
            cols.iter()
                .map(|c| r.get(*c).map(cell_text).unwrap_or_default())
                .collect()
        })
        .collect();
    (cols, cells)
}

pub fn to_json(doc: &Document) -> String {
    let value = json!({
        "family": doc.family,
        "command": doc.command.name(),
        "rows": doc.rows,
    });
    let mut s = serde_json::to_string_pretty(&value).expect("documents are plain JSON");
    s.push('\n');
    s
}

pub fn to_csv(doc: &Document) -> Result<String, CliError> {
    let (cols, cells) = table(doc);
    let mut w = csv::Writer::from_writer(Vec::new());
    let fail = |e: csv::Error| CliError::usage(format!("csv output failed: {e}"));
    w.write_record(&cols).map_err(fail)?;
    for r in &cells {
        w.write_record(r).map_err(fail)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| CliError::usage(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("cells are UTF-8"))
}

pub fn to_plain(doc: &Document) -> String {
    let (cols, cells) = table(doc);
    let widths: Vec<usize> = (0..cols.len())
        .map(|i| {
            cells
                .iter()
                .map(|r| r[i].chars().count())
                .chain([cols[i].len()])
                .max()
                .unwrap_or(0)
        })
        .collect();
    let line = |items: Vec<&str>| {
        let padded: Vec<String> = items
            .iter()
            .zip(&widths)
            .map(|(s, w)| format!("{s:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = format!("# {} {}\n", doc.command.name(), doc.family);
    out += &line(cols.clone());
    for r in &cells {
        out += &line(r.iter().map(String::as_str).collect());
    }
    out
}

pub fn render(doc: &Document, format: Format) -> Result<String, CliError> {
    let graph = || {
        doc.graph
            .as_ref()
            .ok_or_else(|| CliError::usage("graph formats are only available for expand".into()))
    };
    match format {
        Format::Json => Ok(to_json(doc)),
        Format::Csv => to_csv(doc),
        Format::Plain => Ok(to_plain(doc)),
        Format::EdgeList => Ok(graph()?.edge_list.clone()),
        Format::GraphText => Ok(graph()?.graph_text.clone()),
    }
}
