use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Map, Value};
use unitri::RootTables;

#[derive(Copy, Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    /// Ran within the caps on part of the input only.
    Partial,
}

impl Status {
    pub fn of(ok: bool) -> Self {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Partial => "partial",
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub details: Value,
}

#[derive(Debug)]
pub struct Report {
    pub command: String,
    pub params: Value,
    pub results: Value,
    pub checks: Vec<Check>,
    /// Seconds per check, recorded only with `--timing`.
    timings: Option<Vec<(String, f64)>>,
    started: Instant,
    /// Command-specific markdown placed before the check list.
    pub markdown: String,
}

impl Report {
    pub fn new(command: &str, params: Value, timing: bool) -> Self {
        Report {
            command: command.to_string(),
            params,
            results: Value::Object(Map::new()),
            checks: Vec::new(),
            timings: timing.then(Vec::new),
            started: Instant::now(),
            markdown: String::new(),
        }
    }

    pub fn check(&mut self, name: impl Into<String>, status: Status, details: Value) {
        self.checks.push(Check { name: name.into(), status, details });
    }

    /// Runs `f` as the check `name`, timing it when asked to.
    pub fn run(&mut self, name: &str, f: impl FnOnce() -> (Status, Value)) {
        let start = Instant::now();
        let (status, details) = f();
        if let Some(t) = &mut self.timings {
            t.push((name.to_string(), start.elapsed().as_secs_f64()));
        }
        self.check(name, status, details);
    }

    /// Records `secs` under `name` when timing is on.
    pub fn record_time(&mut self, name: &str, secs: f64) {
        if let Some(t) = &mut self.timings {
            t.push((name.to_string(), secs));
        }
    }

    pub fn set(&mut self, key: &str, value: Value) {
        if let Value::Object(m) = &mut self.results {
            m.insert(key.to_string(), value);
        }
    }

    pub fn failed(&self) -> bool {
        self.checks.iter().any(|c| c.status == Status::Fail)
    }

    pub fn exit_code(&self) -> i32 {
        i32::from(self.failed())
    }

    fn timing_value(&self) -> Value {
        match &self.timings {
            None => Value::Null,
            Some(t) => {
                let checks: Map<String, Value> = t.iter().map(|(k, v)| (k.clone(), json!(v))).collect();
                json!({ "total_s": self.started.elapsed().as_secs_f64(), "checks": checks })
            }
        }
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "params": self.params,
            "results": self.results,
            "checks": self.checks,
            "timing": self.timing_value(),
            "versions": versions(),
        })
    }

    pub fn to_markdown(&self) -> String {
        let mut out = format!("# unitri {}\n\n", self.command);
        if let Value::Object(m) = &self.params {
            for (k, v) in m {
                if k != "root_order" {
                    out.push_str(&format!("- {}: {}\n", k, inline(v)));
                }
            }
            out.push('\n');
        }
        if !self.markdown.is_empty() {
            out.push_str(&self.markdown);
            if !self.markdown.ends_with('\n') {
                out.push('\n');
            }
            out.push('\n');
        }
        out.push_str("## Checks\n\n| check | status | details |\n|---|---|---|\n");
        for c in &self.checks {
            out.push_str(&format!(
                "| {} | {} | {} |\n",
                c.name,
                c.status.as_str(),
                inline(&c.details).replace('|', "\\|")
            ));
        }
        let failed = self.checks.iter().filter(|c| c.status == Status::Fail).count();
        out.push_str(&format!("\n{} checks, {} failed\n", self.checks.len(), failed));
        if let Value::Object(t) = self.timing_value() {
            if let Some(total) = t.get("total_s") {
                out.push_str(&format!("\nTotal time: {} s\n", total));
            }
        }
        out
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        other => other.to_string(),
    }
}

pub fn versions() -> Value {
    json!({ "unitri": env!("CARGO_PKG_VERSION"), "report_schema": 1 })
}

/// Roots as `[i, j]` pairs.
pub fn roots_json(roots: &[unitri::Root]) -> Value {
    Value::Array(roots.iter().map(|r| json!([r.i, r.j])).collect())
}

pub fn root_order(t: &RootTables) -> Value {
    roots_json(&t.roots)
}

pub fn error_details(e: &impl std::fmt::Display) -> Value {
    json!({ "error": e.to_string() })
}
