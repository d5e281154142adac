//! Number formatting shared by every output: 12 significant digits.

use serde_json::Value;

pub fn fmt12(x: f64) -> String {
    format!("{x:.11e}")
}

/// Round to the value that [`fmt12`] prints, so that written output parses
/// back to exactly the in-memory number.
pub fn sig12(x: f64) -> f64 {
    if x.is_finite() {
        fmt12(x).parse().expect("formatted float parses")
    } else {
        x
    }
}

/// Apply [`sig12`] to every non-integer number in a JSON tree.
pub fn round_json(value: Value) -> Value {
    match value {
        Value::Number(n) if n.is_f64() => {
            let x = sig12(n.as_f64().unwrap_or(f64::NAN));
            serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
        }
        Value::Array(items) => Value::Array(items.into_iter().map(round_json).collect()),
        Value::Object(map) => Value::Object(map.into_iter().map(|(k, v)| (k, round_json(v))).collect()),
        other => other,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rounding_is_idempotent_and_round_trips() {
        for x in [1.0 / 3.0, -2.718281828459045e-7, 6.02214076e23, 0.0, 1e-300] {
            let r = sig12(x);
            assert_eq!(sig12(r), r);
            assert_eq!(fmt12(r).parse::<f64>().unwrap(), r);
        }
        assert_eq!(fmt12(1.0 / 3.0), "3.33333333333e-1");
    }

    #[test]
    fn json_integers_are_left_alone() {
        let v = serde_json::json!({"seed": 18446744073709551615u64, "x": [0.1234567890123456, 2]});
        let r = round_json(v);
        assert_eq!(r["seed"], 18446744073709551615u64);
        assert_eq!(r["x"][0], 0.123456789012);
        assert_eq!(r["x"][1], 2);
    }
}
