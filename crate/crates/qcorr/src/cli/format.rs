//! Deterministic numeric formatting for CLI output.

/// 12 significant digits in scientific notation; identical inputs always
/// produce byte-identical text.
pub fn sig12(x: f64) -> String {
    format!("{x:.11e}")
}

/// One flat JSON object with fixed key order: numbers via [`sig12`],
/// strings quoted.
pub fn json_object(entries: &[(&str, JsonValue)]) -> String {
    let mut out = String::from("{\n");
    for (i, (key, value)) in entries.iter().enumerate() {
        out.push_str("  \"");
        out.push_str(key);
        out.push_str("\": ");
        match value {
            JsonValue::Number(x) => out.push_str(&sig12(*x)),
            JsonValue::Text(s) => {
                out.push('"');
                out.push_str(s);
                out.push('"');
            }
        }
        if i + 1 < entries.len() {
            out.push(',');
        }
        out.push('\n');
    }
    out.push('}');
    out
}

pub enum JsonValue {
    Number(f64),
    Text(String),
}

pub fn csv_row(values: &[f64]) -> String {
    values
        .iter()
        .map(|&v| sig12(v))
        .collect::<Vec<_>>()
        .join(",")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(sig12(-0.375), "-3.75000000000e-1");
        assert_eq!(sig12(0.0), "0.00000000000e0");
        assert_eq!(sig12(2.0), "2.00000000000e0");
    }

    #[test]
    fn json_objects_are_valid() {
        let s = json_object(&[
            ("a", JsonValue::Number(0.5)),
            ("b", JsonValue::Text("10".into())),
        ]);
        let parsed: serde_json::Value = serde_json::from_str(&s).unwrap();
        assert_eq!(parsed["a"], 0.5);
        assert_eq!(parsed["b"], "10");
    }
}
