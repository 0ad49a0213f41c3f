//! Key-value reports rendered as aligned text or JSON.

use serde_json::{json, Map, Number, Value as Json};

#[derive(Debug, Clone, PartialEq)]
pub enum Value {
    /// Printed with six decimals in both renderings.
    Num(f64),
    Int(usize),
    Text(String),
    Flag(bool),
    /// Pass/fail marker, colored in text mode.
    Status(bool),
    /// Degeneracy pattern; runs longer than two collapse to `v×n` in text.
    Pattern(Vec<usize>),
    List(Vec<Value>),
    Table(Vec<Report>),
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Report {
    fields: Vec<(String, Value)>,
}

pub fn six(v: f64) -> String {
    format!("{v:.6}")
}

pub fn pattern_text(p: &[usize]) -> String {
    let mut parts = Vec::new();
    let mut i = 0;
    while i < p.len() {
        let run = p[i..].iter().take_while(|&&x| x == p[i]).count();
        if run > 2 {
            parts.push(format!("{}×{run}", p[i]));
        } else {
            parts.extend(std::iter::repeat_n(p[i].to_string(), run));
        }
        i += run;
    }
    parts.join(" ")
}

impl Value {
    fn text(&self, color: bool) -> String {
        match self {
            Value::Num(v) => six(*v),
            Value::Int(n) => n.to_string(),
            Value::Text(s) => s.clone(),
            Value::Flag(b) => if *b { "yes" } else { "no" }.to_string(),
            Value::Status(ok) => {
                let word = if *ok { "PASS" } else { "FAIL" };
                match (color, ok) {
                    (false, _) => word.to_string(),
                    (true, true) => format!("\x1b[32m{word}\x1b[0m"),
                    (true, false) => format!("\x1b[31m{word}\x1b[0m"),
                }
            }
            Value::Pattern(p) => pattern_text(p),
            Value::List(items) if items.is_empty() => "none".to_string(),
            Value::List(items) => {
                let sep = if items.iter().all(|v| matches!(v, Value::Text(_))) { ", " } else { " " };
                items.iter().map(|v| v.text(color)).collect::<Vec<_>>().join(sep)
            }
            Value::Table(rows) => render_table(rows, color),
        }
    }

    fn json(&self) -> Json {
        match self {
            Value::Num(v) => six(*v)
                .parse::<f64>()
                .ok()
                .and_then(Number::from_f64)
                .map_or(Json::Null, Json::Number),
            Value::Int(n) => json!(n),
            Value::Text(s) => json!(s),
            Value::Flag(b) | Value::Status(b) => json!(b),
            Value::Pattern(p) => json!(p),
            Value::List(items) => Json::Array(items.iter().map(Value::json).collect()),
            Value::Table(rows) => Json::Array(rows.iter().map(Report::to_json).collect()),
        }
    }
}

fn render_table(rows: &[Report], color: bool) -> String {
    let Some(first) = rows.first() else {
        return "none".to_string();
    };
    let keys: Vec<&str> = first.fields.iter().map(|(k, _)| k.as_str()).collect();
    let cells: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.fields.iter().map(|(_, v)| v.text(color)).collect())
        .collect();
    let width = |j: usize| {
        cells
            .iter()
            .map(|row| visible_len(&row[j]))
            .chain(std::iter::once(keys[j].len()))
            .max()
            .unwrap_or(0)
    };
    let widths: Vec<usize> = (0..keys.len()).map(width).collect();
    let line = |row: Vec<String>| {
        let padded: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - visible_len(c))))
            .collect();
        format!("  {}", padded.join("  ").trim_end())
    };
    let mut out = vec![line(keys.iter().map(|k| k.to_string()).collect())];
    out.extend(cells.into_iter().map(line));
    format!("\n{}", out.join("\n"))
}

fn visible_len(s: &str) -> usize {
    let mut n = 0;
    let mut escape = false;
    for c in s.chars() {
        match (escape, c) {
            (false, '\x1b') => escape = true,
            (true, 'm') => escape = false,
            (true, _) => {}
            (false, _) => n += 1,
        }
    }
    n
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: Value) -> Self {
        self.fields.push((key.to_string(), value));
        self
    }

    pub fn push(&mut self, key: &str, value: Value) {
        self.fields.push((key.to_string(), value));
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.fields.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn render_text(&self, color: bool) -> String {
        let width = self.fields.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
        let mut out = String::new();
        for (k, v) in &self.fields {
            let pad = " ".repeat(width - k.len());
            match v {
                Value::Table(_) => out.push_str(&format!("{k}:{}\n", v.text(color))),
                _ => out.push_str(&format!("{k}: {pad}{}\n", v.text(color))),
            }
        }
        out
    }

    pub fn to_json(&self) -> Json {
        let mut map = Map::new();
        for (k, v) in &self.fields {
            map.insert(k.clone(), v.json());
        }
        Json::Object(map)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn numbers_carry_six_decimals() {
        let r = Report::new().with("delta", Value::Num(1.0 / 5f64.sqrt()));
        assert_eq!(r.render_text(false), "delta: 0.447214\n");
        assert_eq!(r.to_json()["delta"], json!(0.447214));
    }

    #[test]
    fn keys_align() {
        let r = Report::new().with("a", Value::Int(1)).with("long", Value::Int(2));
        assert_eq!(r.render_text(false), "a:    1\nlong: 2\n");
    }

    #[test]
    fn pattern_collapses_long_runs() {
        assert_eq!(pattern_text(&[1, 1, 2, 4, 8, 16]), "1 1 2 4 8 16");
        let mut p = vec![1];
        p.extend(std::iter::repeat_n(2, 31));
        p.push(1);
        assert_eq!(pattern_text(&p), "1 2×31 1");
    }

    #[test]
    fn empty_list_reads_none() {
        let r = Report::new().with("generators", Value::List(vec![]));
        assert_eq!(r.render_text(false), "generators: none\n");
        assert_eq!(r.to_json()["generators"], json!([]));
    }

    #[test]
    fn color_only_on_request() {
        let r = Report::new().with("status", Value::Status(false));
        assert!(!r.render_text(false).contains('\x1b'));
        assert!(r.render_text(true).contains("\x1b[31m"));
    }

    #[test]
    fn tables_align_columns() {
        let rows = vec![
            Report::new().with("group", Value::Text("cyclic:8".into())).with("score", Value::Num(0.0)),
            Report::new().with("group", Value::Text("trivial:8".into())).with("score", Value::Num(0.5)),
        ];
        let text = Report::new().with("ranking", Value::Table(rows)).render_text(false);
        assert_eq!(
            text,
            "ranking:\n  group      score\n  cyclic:8   0.000000\n  trivial:8  0.500000\n"
        );
    }
}
