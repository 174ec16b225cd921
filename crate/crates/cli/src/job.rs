//! JSON job specifications.
//!
//! A job is an object such as
//!
//! ```json
//! {"subcommand": "mul",
//!  "curve": "x^9+2x^3+x+3 over F5",
//!  "points": [{"u": "x^4+4x^3+x^2+2x+3", "v": [4,2,3,0,1,1], "r": [1,1,1,3]}],
//!  "options": {"k": 16},
//!  "output": "out.json"}
//! ```
//!
//! It is validated and translated into the equivalent command line, so a job
//! and the corresponding invocation produce identical output.

use std::path::PathBuf;

use serde_json::{Map, Value};

use crate::Failure;

const KNOWN_KEYS: &[&str] = &["subcommand", "curve", "point", "points", "coords", "options", "output"];

fn text_of(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

fn option_value(key: &str, v: &Value) -> Result<String, Failure> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        Value::Array(a) if key == "labeling" || key == "places" => Ok(a.iter().map(text_of).collect::<Vec<_>>().join(",")),
        Value::Array(_) => Ok(v.to_string()),
        _ => Err(Failure::schema(format!("option {key:?} must be a string, number or array"))),
    }
}

/// Translates a job document into command-line arguments and an optional
/// output path.
pub fn job_to_argv(text: &str) -> Result<(Vec<String>, Option<PathBuf>), Failure> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Failure::schema(format!("job JSON: {e}")))?;
    let obj: &Map<String, Value> = doc.as_object().ok_or_else(|| Failure::schema("a job must be a JSON object"))?;
    if let Some(k) = obj.keys().find(|k| !KNOWN_KEYS.contains(&k.as_str())) {
        return Err(Failure::schema(format!("unknown job field {k:?}")));
    }
    let sub = obj
        .get("subcommand")
        .and_then(Value::as_str)
        .ok_or_else(|| Failure::schema("job lacks a string \"subcommand\""))?;
    let mut argv = vec!["spinor-kummer".to_string(), sub.to_string()];
    if let Some(c) = obj.get("curve") {
        argv.extend(["--curve".to_string(), text_of(c)]);
    }
    let mut points: Vec<&Value> = Vec::new();
    if let Some(p) = obj.get("point") {
        points.push(p);
    }
    match obj.get("points") {
        None => {}
        Some(Value::Array(a)) => points.extend(a),
        Some(_) => return Err(Failure::schema("\"points\" must be an array")),
    }
    for p in points {
        argv.extend(["--point".to_string(), text_of(p)]);
    }
    if let Some(c) = obj.get("coords") {
        argv.extend(["--coords".to_string(), text_of(c)]);
    }
    match obj.get("options") {
        None => {}
        Some(Value::Object(opts)) => {
            for (k, v) in opts {
                let flag = format!("--{}", k.replace('_', "-"));
                match v {
                    Value::Bool(true) => argv.push(flag),
                    Value::Bool(false) => {}
                    _ => argv.extend([flag, option_value(k, v)?]),
                }
            }
        }
        Some(_) => return Err(Failure::schema("\"options\" must be an object")),
    }
    let output = match obj.get("output") {
        None => None,
        Some(Value::String(s)) => Some(PathBuf::from(s)),
        Some(_) => return Err(Failure::schema("\"output\" must be a path string")),
    };
    Ok((argv, output))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn jobs_become_command_lines() {
        let (argv, out) = job_to_argv(
            r#"{"subcommand": "mul", "curve": "x^3+x+1 over F5", "point": "(0, 1)", "options": {"k": 3}, "output": "o.json"}"#,
        )
        .unwrap_or_else(|f| panic!("{}", f.message));
        assert_eq!(argv, ["spinor-kummer", "mul", "--curve", "x^3+x+1 over F5", "--point", "(0, 1)", "--k", "3"]);
        assert_eq!(out, Some(PathBuf::from("o.json")));
        let (argv, _) = job_to_argv(r#"{"subcommand": "dup-polys", "curve": {"f": "x^3-x", "field": 7}, "options": {"labeling": [2, 0, 1]}}"#)
            .unwrap_or_else(|f| panic!("{}", f.message));
        assert_eq!(argv[3], r#"{"f":"x^3-x","field":7}"#);
        assert_eq!(argv[4..], ["--labeling", "2,0,1"]);
    }

    #[test]
    fn malformed_jobs_are_schema_errors() {
        for bad in ["[]", "{}", r#"{"subcommand": "embed", "bogus": 1}"#, r#"{"subcommand": "embed", "points": 3}"#] {
            assert_eq!(job_to_argv(bad).unwrap_err().code, 2, "{bad}");
        }
    }
}
