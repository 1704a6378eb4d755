//! Report serialization.

use circlag::geom::EllipseFit;
use serde::Serialize;
use serde_json::Value;

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(report: &T) -> String {
    let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
    s.push('\n');
    s
}

/// Full-precision float: 17 significant digits.
pub fn float(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string()
    }
}

/// `key,value` rows with dotted paths for nested fields and indices for
/// array elements. Object keys come out sorted.
pub fn to_csv<T: Serialize>(report: &T) -> String {
    let value = serde_json::to_value(report).expect("reports serialize");
    let mut rows = Vec::new();
    flatten("", &value, &mut rows);
    let mut out = String::from("key,value\n");
    for (k, v) in rows {
        out.push_str(&quote(&k));
        out.push(',');
        out.push_str(&quote(&v));
        out.push('\n');
    }
    out
}

fn flatten(prefix: &str, value: &Value, rows: &mut Vec<(String, String)>) {
    let join = |k: &str| {
        if prefix.is_empty() {
            k.to_string()
        } else {
            format!("{prefix}.{k}")
        }
    };
    match value {
        Value::Object(map) => {
            for (k, v) in map {
                flatten(&join(k), v, rows);
            }
        }
        Value::Array(items) => {
            for (i, v) in items.iter().enumerate() {
                flatten(&join(&i.to_string()), v, rows);
            }
        }
        Value::Number(n) => {
            let text = if n.is_f64() {
                float(n.as_f64().expect("f64 number"))
            } else {
                n.to_string()
            };
            rows.push((prefix.to_string(), text));
        }
        Value::String(s) => rows.push((prefix.to_string(), s.clone())),
        Value::Bool(b) => rows.push((prefix.to_string(), b.to_string())),
        Value::Null => rows.push((prefix.to_string(), String::new())),
    }
}

fn quote(field: &str) -> String {
    if field.contains([',', '"', '\n']) {
        format!("\"{}\"", field.replace('"', "\"\""))
    } else {
        field.to_string()
    }
}

pub const ELLIPSE_HEADER: &str = "theta,x1,x2,h1,h2,residual";

/// One row per tangent direction: angle, the point σ(v, v) and the center
/// H in (Je₁, Je₂) coordinates, and the circle-fit residual.
pub fn ellipse_csv(fit: &EllipseFit) -> String {
    let mut out = String::from(ELLIPSE_HEADER);
    out.push('\n');
    for s in &fit.samples {
        let row = [s.theta, s.point[0], s.point[1], s.center[0], s.center[1], s.residual]
            .map(float)
            .join(",");
        out.push_str(&row);
        out.push('\n');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_keep_seventeen_digits() {
        let x = 0.1f64 + 0.2;
        let s = float(x);
        assert_eq!(s, "3.0000000000000004e-1");
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }

    #[test]
    fn flattening() {
        #[derive(Serialize)]
        struct Inner {
            a: f64,
            b: Vec<u32>,
        }
        #[derive(Serialize)]
        struct Outer {
            name: &'static str,
            inner: Inner,
            flag: bool,
        }
        let csv = to_csv(&Outer {
            name: "x,y",
            inner: Inner { a: 0.5, b: vec![1, 2] },
            flag: true,
        });
        assert_eq!(
            csv,
            "key,value\nflag,true\ninner.a,5.0000000000000000e-1\ninner.b.0,1\ninner.b.1,2\nname,\"x,y\"\n"
        );
    }
}
