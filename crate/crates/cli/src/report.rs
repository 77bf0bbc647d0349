//! Command output: one entry per degree plus a summary, rendered as text or JSON.

use std::fmt::Write as _;

use liederiv::evsub::{SubspaceReport, LOW_DEGREE_CAVEAT};
use serde_json::{json, Map, Value};

pub const UNTRUSTED: &str = "untrusted: the truncation degree cuts into the groups used here";
pub const LOW_DEGREE: &str = "low degree: the algebraic subgroup may differ from the topological one";

#[derive(Clone, Debug)]
pub struct DegreeEntry {
    pub topological: Option<i32>,
    pub internal: i32,
    pub dimension: usize,
    pub representatives: Vec<String>,
    pub trusted: bool,
    pub caveats: Vec<String>,
    pub extra: Map<String, Value>,
}

impl DegreeEntry {
    pub fn new(topological: Option<i32>, internal: i32, dimension: usize, trusted: bool) -> Self {
        let mut caveats = Vec::new();
        if !trusted {
            caveats.push(UNTRUSTED.to_string());
        }
        DegreeEntry {
            topological,
            internal,
            dimension,
            representatives: Vec::new(),
            trusted,
            caveats,
            extra: Map::new(),
        }
    }

    /// Entry for a subgroup; flags low internal degrees.
    pub fn subspace(s: &SubspaceReport) -> Self {
        let mut e = DegreeEntry::new(Some(s.topological), s.internal, s.dim, s.trusted);
        e.representatives = s.representatives.clone();
        e.low_degree_caveat();
        e.set("ambient_dimension", s.ambient_dim);
        e
    }

    pub fn low_degree_caveat(&mut self) {
        if self.internal <= LOW_DEGREE_CAVEAT {
            self.caveats.push(LOW_DEGREE.to_string());
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.extra.insert(key.to_string(), value.into());
    }

    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("topological".into(), json!(self.topological));
        m.insert("internal".into(), json!(self.internal));
        m.insert("dimension".into(), json!(self.dimension));
        m.insert("representatives".into(), json!(self.representatives));
        m.insert("trusted".into(), json!(self.trusted));
        m.insert("caveats".into(), json!(self.caveats));
        for (k, v) in &self.extra {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<String>,
    pub degrees: Vec<DegreeEntry>,
    /// Object-valued entries appear only in JSON.
    pub summary: Map<String, Value>,
    /// Free-form lines printed after the degrees in text mode.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, inputs: Vec<String>) -> Self {
        Report {
            command: command.to_string(),
            inputs,
            ..Report::default()
        }
    }

    pub fn set(&mut self, key: &str, value: impl Into<Value>) {
        self.summary.insert(key.to_string(), value.into());
    }

    pub fn to_json(&self) -> String {
        let v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "degrees": self.degrees.iter().map(DegreeEntry::to_json).collect::<Vec<_>>(),
            "summary": Value::Object(self.summary.clone()),
        });
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }

    /// `internal_first` lists internal degrees before topological ones.
    pub fn to_text(&self, internal_first: bool) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, self.inputs.join(" "));
        for d in &self.degrees {
            let label = match (d.topological, internal_first) {
                (None, _) => format!("degree {}", d.internal),
                (Some(t), false) => format!("degree {t} (internal {})", d.internal),
                (Some(t), true) => format!("internal degree {} (topological {t})", d.internal),
            };
            let _ = writeln!(out, "{label}: dim {}", d.dimension);
            for r in &d.representatives {
                let _ = writeln!(out, "  rep {r}");
            }
            for (k, v) in &d.extra {
                let _ = writeln!(out, "  {k}: {}", text_value(v));
            }
            for c in &d.caveats {
                let _ = writeln!(out, "  caveat {c}");
            }
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        for (k, v) in &self.summary {
            if v.is_object() {
                continue;
            }
            if let Value::String(s) = v {
                if s.contains('\n') {
                    let _ = writeln!(out, "{k}:");
                    out.push_str(s);
                    if !s.ends_with('\n') {
                        out.push('\n');
                    }
                    continue;
                }
            }
            let _ = writeln!(out, "{k}: {}", text_value(v));
        }
        out
    }
}

fn text_value(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(text_value).collect::<Vec<_>>().join(", ")),
        Value::Null => "-".to_string(),
        other => other.to_string(),
    }
}
