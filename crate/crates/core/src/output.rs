//! Number formatting and CSV/JSON writers shared by the library exports and
//! the command-line tool.

use std::io::Write;

use serde_json::Value;

/// Rounds to 12 significant digits.
pub fn sig12(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().unwrap_or(x)
}

/// Rounds every floating-point number inside a JSON value to 12 significant
/// digits.
pub fn round_json(value: &mut Value) {
    match value {
        Value::Number(n) if n.is_f64() => {
            if let Some(r) = n.as_f64().map(sig12).and_then(serde_json::Number::from_f64) {
                *n = r;
            }
        }
        Value::Array(items) => items.iter_mut().for_each(round_json),
        Value::Object(map) => map.values_mut().for_each(round_json),
        _ => {}
    }
}

/// Pretty JSON with numbers rounded to 12 significant digits.
pub fn to_json_string<T: serde::Serialize>(value: &T) -> serde_json::Result<String> {
    let mut v = serde_json::to_value(value)?;
    round_json(&mut v);
    serde_json::to_string_pretty(&v)
}

/// 12 significant digits; scientific notation outside `[1e-5, 1e15)`.
pub fn fmt_num(x: f64) -> String {
    let r = sig12(x);
    let mag = r.abs();
    if r == 0.0 || !r.is_finite() || (1e-5..1e15).contains(&mag) {
        format!("{r}")
    } else {
        format!("{r:e}")
    }
}

/// Writes a header row and numeric/text records as CSV.
pub fn write_csv<W: Write>(out: W, header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for row in rows {
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}
