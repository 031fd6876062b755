use csm_core::csm::Csm;
use csm_core::harness::SweepReport;
use csm_core::{WeylElem, WeylGroup};
use serde_json::{json, Map, Value};

use crate::args::Format;

/// `(v, coefficient)` rows ordered by length, then by canonical word.
pub fn csm_table(group: &WeylGroup, w: WeylElem, v: Option<WeylElem>, equivariant: bool) -> Vec<(String, Value)> {
    let csm = Csm::new(group);
    let mut keys: Vec<WeylElem> = match v {
        Some(v) => vec![v],
        None => group.elements().collect(),
    };
    keys.sort_by(|&a, &b| {
        (group.length(a), group.canonical_word(a)).cmp(&(group.length(b), group.canonical_word(b)))
    });
    let show_zero = v.is_some();
    let mut rows = Vec::new();
    for v in keys {
        let value = if equivariant {
            let c = csm.ct_coeff(w, v);
            if c.is_zero() && !show_zero {
                continue;
            }
            json!(c.to_text("a"))
        } else {
            let text = csm.csm_coeff(w, v).to_string();
            if text == "0" && !show_zero {
                continue;
            }
            text.parse::<i64>().map(|k| json!(k)).unwrap_or(json!(text))
        };
        rows.push((group.name(v), value));
    }
    rows
}

pub fn table_text(rows: &[(String, Value)], format: Format, equivariant: bool) -> String {
    let header = if equivariant { "c_T(w;v)" } else { "c(w;v)" };
    match format {
        Format::Json => {
            let map: Map<String, Value> = rows.iter().cloned().collect();
            let mut s = serde_json::to_string_pretty(&Value::Object(map)).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut s = format!("v,{header}\n");
            for (k, v) in rows {
                s.push_str(&format!("{k},{}\n", plain(v)));
            }
            s
        }
        Format::Markdown => {
            let mut s = format!("| v | {header} |\n|---|---|\n");
            for (k, v) in rows {
                s.push_str(&format!("| {k} | {} |\n", plain(v)));
            }
            s
        }
    }
}

fn plain(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn report_text(report: &SweepReport, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("serializable");
            s.push('\n');
            s
        }
        Format::Csv => format!(
            "identity,status,checked,violations,elapsed_ms,version\n{},{},{},{},{},{}\n",
            report.identity,
            report.status,
            report.checked,
            report.violations.len(),
            report.elapsed_ms,
            report.version
        ),
        Format::Markdown => {
            let mut s = format!(
                "## {}\n\n| field | value |\n|---|---|\n| status | {} |\n| scope | `{}` |\n| checked | {} |\n| violations | {} |\n| elapsed_ms | {} |\n| version | {} |\n",
                report.identity,
                report.status,
                report.scope,
                report.checked,
                report.violations.len(),
                report.elapsed_ms,
                report.version
            );
            for v in &report.violations {
                s.push_str(&format!("\n- `{v}`"));
            }
            if !report.violations.is_empty() {
                s.push('\n');
            }
            s
        }
    }
}
