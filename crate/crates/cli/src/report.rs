use serde::Serialize;
use serde_json::{Map, Number, Value};
use sha2::{Digest, Sha256};

pub const SCHEMA: &str = "v1";
const SIG_DIGITS: usize = 12;

#[derive(Serialize)]
struct Envelope<'a, T: Serialize> {
    tool_version: &'static str,
    schema: &'static str,
    input_digest: &'a str,
    command: &'a str,
    payload: &'a T,
}

pub fn digest(canonical: &str) -> String {
    hex::encode(Sha256::digest(canonical.as_bytes()))
}

/// Rounds `x` to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x;
    }
    format!("{:.*e}", SIG_DIGITS - 1, x).parse().unwrap_or(x)
}

fn normalize(v: Value) -> Value {
    match v {
        Value::Number(n) if n.is_f64() => n
            .as_f64()
            .and_then(|x| Number::from_f64(round_sig(x)))
            .map_or(Value::Null, Value::Number),
        Value::Array(items) => Value::Array(items.into_iter().map(normalize).collect()),
        // serde_json's default map is ordered by key
        Value::Object(m) => Value::Object(m.into_iter().map(|(k, v)| (k, normalize(v))).collect::<Map<_, _>>()),
        other => other,
    }
}

/// Deterministic JSON report: sorted keys, rounded floats, trailing newline.
pub fn envelope_json<T: Serialize>(command: &str, input_digest: &str, payload: &T) -> String {
    let env = Envelope {
        tool_version: env!("CARGO_PKG_VERSION"),
        schema: SCHEMA,
        input_digest,
        command,
        payload,
    };
    let value = normalize(serde_json::to_value(&env).expect("report types serialize"));
    let mut s = serde_json::to_string_pretty(&value).expect("values serialize");
    s.push('\n');
    s
}

/// Two-column table with a title line.
pub struct Table {
    title: String,
    rows: Vec<(String, String)>,
}

impl Table {
    pub fn new(title: impl Into<String>) -> Self {
        Table {
            title: title.into(),
            rows: Vec::new(),
        }
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl ToString) -> &mut Self {
        self.rows.push((key.into(), value.to_string()));
        self
    }

    pub fn float(&mut self, key: impl Into<String>, x: f64) -> &mut Self {
        self.row(key, fmt_f64(x))
    }

    pub fn render(&self) -> String {
        let width = self.rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
        let mut out = format!("{}\n", self.title);
        for (k, v) in &self.rows {
            let pad = width - k.chars().count();
            out.push_str(&format!("  {k}{}  {v}\n", " ".repeat(pad)));
        }
        out
    }
}

pub fn fmt_f64(x: f64) -> String {
    format!("{:.12}", round_sig(x))
        .trim_end_matches('0')
        .trim_end_matches('.')
        .to_string()
}
