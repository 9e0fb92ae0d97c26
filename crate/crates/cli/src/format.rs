//! Byte-stable text output: `%.17g` numbers, CSV tables, flat JSON objects.

/// Formats like C's `printf("%.17g", x)`.
pub fn g17(x: f64) -> String {
    const PRECISION: i32 = 17;
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf" } else { "-inf" }.into();
    }
    if x == 0.0 {
        return if x.is_sign_negative() { "-0" } else { "0" }.into();
    }
    let sci = format!("{:.*e}", (PRECISION - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent marker");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..PRECISION).contains(&exp) {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let fixed = format!("{:.*}", (PRECISION - 1 - exp) as usize, x);
        trim_zeros(&fixed).to_string()
    }
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum JsonValue {
    Number(f64),
    Integer(i64),
    Bool(bool),
    Str(String),
    Null,
}

impl JsonValue {
    fn render(&self) -> String {
        match self {
            JsonValue::Number(x) if x.is_finite() => g17(*x),
            JsonValue::Number(_) | JsonValue::Null => "null".into(),
            JsonValue::Integer(i) => i.to_string(),
            JsonValue::Bool(b) => b.to_string(),
            JsonValue::Str(s) => serde_json::to_string(s).expect("string serializes"),
        }
    }
}

impl From<f64> for JsonValue {
    fn from(x: f64) -> Self {
        JsonValue::Number(x)
    }
}

impl From<Option<f64>> for JsonValue {
    fn from(x: Option<f64>) -> Self {
        x.map_or(JsonValue::Null, JsonValue::Number)
    }
}

impl From<bool> for JsonValue {
    fn from(b: bool) -> Self {
        JsonValue::Bool(b)
    }
}

/// One-line JSON object with keys in the given order.
pub fn json_object(fields: &[(&str, JsonValue)]) -> String {
    let body = fields
        .iter()
        .map(|(k, v)| format!("{}:{}", serde_json::to_string(k).expect("key"), v.render()))
        .collect::<Vec<_>>()
        .join(",");
    format!("{{{body}}}")
}

/// CSV with a header row and LF line endings.
pub fn csv_table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut writer = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(Vec::new());
    writer.write_record(header).expect("in-memory write");
    for row in rows {
        writer.write_record(row).expect("in-memory write");
    }
    let bytes = writer.into_inner().expect("in-memory flush");
    String::from_utf8(bytes).expect("ascii output")
}
