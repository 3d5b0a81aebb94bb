//! Human-readable tables rendered from a JSON report.

use serde_json::Value;

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".to_string(),
        Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
            let parts: Vec<String> = items.iter().map(cell).collect();
            format!("[{}]", parts.join(", "))
        }
        other => other.to_string(),
    }
}

fn table(headers: &[String], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, c) in widths.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: &[String]| -> String {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string()
    };
    let mut out = vec![line(headers)];
    out.push(line(&widths.iter().map(|&w| "-".repeat(w)).collect::<Vec<_>>()));
    out.extend(rows.iter().map(|r| line(r)));
    out.join("\n")
}

/// Scalars and flat lists become `key  value` lines; lists of objects
/// become column tables; nested objects are rendered as their own blocks.
pub fn render(report: &Value) -> String {
    let Value::Object(map) = report else {
        return cell(report);
    };
    let mut scalars = Vec::new();
    let mut blocks = Vec::new();
    for (key, v) in map {
        match v {
            Value::Array(items) if !items.is_empty() && items.iter().all(Value::is_object) => {
                let mut headers: Vec<String> = Vec::new();
                for item in items {
                    for k in item.as_object().expect("object").keys() {
                        if !headers.contains(k) {
                            headers.push(k.clone());
                        }
                    }
                }
                let rows: Vec<Vec<String>> = items
                    .iter()
                    .map(|item| headers.iter().map(|h| cell(item.get(h).unwrap_or(&Value::Null))).collect())
                    .collect();
                blocks.push(format!("{key}\n{}", table(&headers, &rows)));
            }
            Value::Object(_) => {
                let inner = render(v);
                let indented: Vec<String> = inner.lines().map(|l| if l.is_empty() { String::new() } else { format!("  {l}") }).collect();
                blocks.push(format!("{key}\n{}", indented.join("\n")));
            }
            _ => scalars.push(vec![key.clone(), cell(v)]),
        }
    }
    let mut parts = Vec::new();
    if !scalars.is_empty() {
        let w = scalars.iter().map(|r| r[0].chars().count()).max().unwrap_or(0);
        parts.push(
            scalars
                .iter()
                .map(|r| format!("{:<w$}  {}", r[0], r[1]).trim_end().to_string())
                .collect::<Vec<_>>()
                .join("\n"),
        );
    }
    parts.extend(blocks);
    parts.join("\n\n")
}
