//! JSON encodings of algebraic objects and the report envelope.

use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};
use stiff_core::audit::FreeComplex;
use stiff_core::module::{Dim, ModMatrix};
use stiff_core::poly::Poly;
use stiff_core::quotient::{Grade, IdealA, QuotientRing, RingElem};

use crate::jobspec::{to_json, JobSpec, SCHEMA_VERSION};

pub const TOOL: &str = "stiff";

/// Process exit statuses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Exit {
    Ran = 0,
    Negative = 1,
    InputError = 2,
    Inconclusive = 3,
}

impl Exit {
    pub fn code(self) -> i32 {
        self as i32
    }
}

pub fn poly(ring: &QuotientRing, p: &Poly) -> Value {
    Value::String(ring.poly().format(p))
}

pub fn polys(ring: &QuotientRing, ps: &[Poly]) -> Value {
    Value::Array(ps.iter().map(|p| poly(ring, p)).collect())
}

pub fn elems(es: &[RingElem]) -> Value {
    Value::Array(es.iter().map(|e| Value::String(e.to_string())).collect())
}

pub fn ideal(i: &IdealA) -> Value {
    json!(i.display_gens())
}

pub fn grade(g: Grade) -> Value {
    match g {
        Grade::Finite(n) => json!(n),
        Grade::Infinite => json!("inf"),
    }
}

pub fn dim(d: Dim) -> Value {
    match d {
        Dim::Finite(n) => json!({ "exact": n }),
        Dim::AtLeast { count, cap } => json!({ "at_least": count, "degree_cap": cap }),
    }
}

/// Row-major entries.
pub fn matrix(m: &ModMatrix) -> Value {
    let ring = m.ring();
    Value::Array((0..m.rows()).map(|r| polys(ring, &m.row(r))).collect())
}

pub fn complex(f: &FreeComplex) -> Value {
    json!({
        "ranks": f.ranks(),
        "degrees": (0..=f.len()).map(|i| f.free_module(i).unwrap().degrees().to_vec()).collect::<Vec<_>>(),
        "maps": f.maps().iter().map(matrix).collect::<Vec<_>>(),
    })
}

/// Hex SHA-256 of the canonical job JSON.
pub fn digest(spec: &JobSpec) -> String {
    hex::encode(Sha256::digest(to_json(spec).as_bytes()))
}

/// What a command produced, before it is wrapped.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub verdict: String,
    pub exit: Exit,
    pub result: Value,
}

impl Outcome {
    pub fn new(verdict: impl Into<String>, exit: Exit, result: Value) -> Outcome {
        Outcome { verdict: verdict.into(), exit, result }
    }
}

/// `payload` is a pure function of the job; `wall_time_ms` is not.
#[derive(Clone, Debug)]
pub struct Envelope {
    pub payload: Value,
    pub wall_time_ms: u64,
}

impl Envelope {
    pub fn new(spec: &JobSpec, digest: &str, outcome: Outcome, wall_time_ms: u64) -> Envelope {
        let payload = json!({
            "schema": SCHEMA_VERSION,
            "tool": TOOL,
            "version": env!("CARGO_PKG_VERSION"),
            "job": spec.name,
            "command": spec.command,
            "target": spec.target,
            "input_digest": digest,
            "seeds": spec.params.seeds(),
            "params": serde_json::to_value(&spec.params).expect("params serialize"),
            "verdict": outcome.verdict,
            "exit_status": outcome.exit.code(),
            "result": outcome.result,
        });
        Envelope { payload, wall_time_ms }
    }

    pub fn exit(&self) -> i32 {
        self.payload["exit_status"].as_i64().unwrap_or(2) as i32
    }

    pub fn verdict(&self) -> &str {
        self.payload["verdict"].as_str().unwrap_or("")
    }

    pub fn to_value(&self) -> Value {
        json!({ "payload": self.payload, "wall_time_ms": self.wall_time_ms })
    }

    /// One header line, then `key: value` for each scalar result field.
    pub fn to_table(&self) -> String {
        let p = &self.payload;
        let mut out = format!(
            "{:<40} {:<12} {:<16} {:<24} exit {}\n",
            p["job"].as_str().unwrap_or(""),
            p["command"].as_str().unwrap_or(""),
            p["target"].as_str().unwrap_or(""),
            self.verdict(),
            self.exit()
        );
        if let Some(result) = p["result"].as_object() {
            for (k, v) in result {
                if !v.is_array() && !v.is_object() {
                    out.push_str(&format!("    {k}: {v}\n"));
                }
            }
        }
        out
    }
}

/// Input errors get an envelope too, with no digest when the text did not
/// parse.
pub fn error_payload(job: &str, command: &str, message: &str) -> Value {
    let mut m = Map::new();
    m.insert("schema".into(), json!(SCHEMA_VERSION));
    m.insert("tool".into(), json!(TOOL));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.insert("job".into(), json!(job));
    m.insert("command".into(), json!(command));
    m.insert("verdict".into(), json!("INPUT_ERROR"));
    m.insert("exit_status".into(), json!(Exit::InputError.code()));
    m.insert("result".into(), json!({ "error": message }));
    Value::Object(m)
}
