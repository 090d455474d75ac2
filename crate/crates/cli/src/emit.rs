//! Report rendering: a json-lines stream with a fixed field set, or an
//! aligned human-readable table.

use crate::tasks::{Report, Status};
use dualis_core::Witness;
use serde_json::{json, Map, Value};

fn witness_to_json(w: &Witness) -> Value {
    match w {
        Witness::Null => Value::Null,
        Witness::Str(s) => Value::String(s.clone()),
        Witness::Matrix(rows) => Value::Array(
            rows.iter()
                .map(|r| Value::Array(r.iter().map(|e| Value::String(e.clone())).collect()))
                .collect(),
        ),
        Witness::List(items) => Value::Array(items.iter().map(witness_to_json).collect()),
        Witness::Map(entries) => {
            let mut m = Map::new();
            for (k, v) in entries {
                m.insert(k.clone(), witness_to_json(v));
            }
            Value::Object(m)
        }
    }
}

/// One JSON object per report, fields exactly
/// `{scenario, task, status, witness, ms}`; `witness` is null on
/// error status.
pub fn emit_json_lines(reports: &[Report]) -> String {
    let mut out = String::new();
    for r in reports {
        let witness = match (&r.status, &r.witness) {
            (Status::Error, _) | (_, None) => Value::Null,
            (_, Some(w)) => witness_to_json(w),
        };
        let obj = json!({
            "scenario": r.scenario,
            "task": r.task,
            "status": r.status.as_str(),
            "witness": witness,
            "ms": r.ms as u64,
        });
        out.push_str(&obj.to_string());
        out.push('\n');
    }
    out
}

/// Aligned table with a trailing tally line.
pub fn emit_text(reports: &[Report]) -> String {
    let headers = ["SCENARIO", "TASK", "STATUS", "MS", "NOTE"];
    let rows: Vec<[String; 5]> = reports
        .iter()
        .map(|r| {
            [
                r.scenario.clone(),
                r.task.clone(),
                r.status.as_str().to_string(),
                r.ms.to_string(),
                r.note.clone(),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in &rows {
        for (i, cell) in row.iter().enumerate().take(4) {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let mut out = String::new();
    let push_row = |cells: [&str; 5], out: &mut String| {
        for (i, cell) in cells.iter().enumerate() {
            if i == 4 {
                out.push_str(cell);
            } else {
                out.push_str(&format!("{cell:<width$}  ", width = widths[i]));
            }
        }
        while out.ends_with(' ') {
            out.pop();
        }
        out.push('\n');
    };
    push_row(headers.map(|h| h), &mut out);
    for row in &rows {
        push_row(
            [
                row[0].as_str(),
                row[1].as_str(),
                row[2].as_str(),
                row[3].as_str(),
                row[4].as_str(),
            ],
            &mut out,
        );
    }
    let pass = reports.iter().filter(|r| r.status == Status::Pass).count();
    let fail = reports.iter().filter(|r| r.status == Status::Fail).count();
    let error = reports.iter().filter(|r| r.status == Status::Error).count();
    out.push_str(&format!(
        "{} tasks: {pass} pass, {fail} fail, {error} error\n",
        reports.len()
    ));
    out
}
