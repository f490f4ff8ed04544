//! Job files: a ring, named objects over it, and a command.
//!
//! Everything is JSON; polynomials are strings in the core grammar and
//! matrices are row-major lists of rows. Parsing only checks syntax and shape;
//! [`crate::build`] constructs the algebraic objects.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

/// Every subcommand a job can name.
pub const COMMANDS: &[&str] = &[
    "resolve",
    "grade",
    "stiffness",
    "be-check",
    "minors",
    "split",
    "thm14",
    "order-ideal",
    "cec-probe",
    "delta",
    "th9-audit",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InputError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("at {path}: {message}")]
    Invalid { path: String, message: String },
    #[error("at {path}: undefined {kind} '{name}'")]
    Undefined { path: String, kind: &'static str, name: String },
}

impl InputError {
    pub fn invalid(path: impl Into<String>, message: impl Into<String>) -> InputError {
        InputError::Invalid { path: path.into(), message: message.into() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    /// `"Q"` or `"F<p>"`.
    pub field: String,
    pub vars: Vec<String>,
    #[serde(default)]
    pub ideal: Vec<String>,
    #[serde(default = "default_order", skip_serializing_if = "is_default_order")]
    pub order: String,
}

fn default_order() -> String {
    "degrevlex".into()
}

fn is_default_order(o: &String) -> bool {
    o == "degrevlex"
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ModuleSpec {
    /// Cokernel of a named matrix.
    Cokernel(String),
    /// `A/b` for a named ideal.
    Quotient(String),
    Free(usize),
    ResidueField {},
    Sum(Vec<String>),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ComplexSpec {
    /// `ranks` are `f_0..f_s`; `maps[i-1]` is `d_i` with `f_{i-1}` rows.
    Explicit { ranks: Vec<usize>, maps: Vec<Vec<Vec<String>>> },
    Koszul(Vec<String>),
    /// Minimal resolution of a named module, computed to `max_len` maps.
    Resolution { module: String, max_len: usize },
    /// Multiplies the last differential by an element.
    ScaleTop { complex: String, by: String },
    /// Keeps the first `len` differentials.
    Truncate { complex: String, len: usize },
    /// Adds `A --1--> A` at spots `spot, spot-1` and applies a seeded random
    /// base change.
    Perturb { complex: String, spot: usize, seed: u64 },
    Sum(Vec<String>),
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Objects {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ideals: BTreeMap<String, Vec<String>>,
    /// Element lists, used as systems of parameters.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sops: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub matrices: BTreeMap<String, Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub complexes: BTreeMap<String, ComplexSpec>,
}

impl Objects {
    pub fn is_empty(&self) -> bool {
        self.ideals.is_empty()
            && self.sops.is_empty()
            && self.matrices.is_empty()
            && self.modules.is_empty()
            && self.complexes.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seeds: Option<Vec<u64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trials: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_len: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree_cap: Option<u32>,
    /// Differential index for `order-ideal` and `thm14`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spot: Option<usize>,
    /// Minor size for `minors`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub size: Option<usize>,
}

impl Params {
    pub fn seeds(&self) -> Vec<u64> {
        self.seeds.clone().unwrap_or_else(|| vec![0])
    }

    pub fn seed(&self) -> u64 {
        self.seeds().first().copied().unwrap_or(0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Expectation {
    Positive,
    Negative,
}

/// One command against one named object.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobEntry {
    pub name: String,
    pub command: String,
    pub target: String,
    #[serde(default, skip_serializing_if = "is_default_params")]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
}

fn is_default_params(p: &Params) -> bool {
    *p == Params::default()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub name: String,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Objects::is_empty")]
    pub objects: Objects,
    /// Optional in files run through a subcommand, which supplies it.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub command: Option<String>,
    pub target: String,
    #[serde(default, skip_serializing_if = "is_default_params")]
    pub params: Params,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expect: Option<Expectation>,
}

/// A ring with its objects and several jobs; the corpus format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Bundle {
    #[serde(default = "schema_version")]
    pub schema: u32,
    pub name: String,
    pub ring: RingSpec,
    #[serde(default, skip_serializing_if = "Objects::is_empty")]
    pub objects: Objects,
    pub jobs: Vec<JobEntry>,
}

fn schema_version() -> u32 {
    SCHEMA_VERSION
}

impl Bundle {
    /// One job spec per entry, named `bundle/job`.
    pub fn job_specs(&self) -> Vec<JobSpec> {
        self.jobs
            .iter()
            .map(|j| JobSpec {
                schema: self.schema,
                name: format!("{}/{}", self.name, j.name),
                ring: self.ring.clone(),
                objects: self.objects.clone(),
                command: Some(j.command.clone()),
                target: j.target.clone(),
                params: j.params.clone(),
                expect: j.expect,
            })
            .collect()
    }
}

fn syntax(e: serde_json::Error) -> InputError {
    InputError::Syntax { line: e.line(), column: e.column(), message: e.to_string() }
}

fn check_schema(schema: u32) -> Result<(), InputError> {
    if schema != SCHEMA_VERSION {
        return Err(InputError::invalid("schema", format!("unsupported schema version {schema}")));
    }
    Ok(())
}

pub(crate) fn check_command(path: &str, command: &str) -> Result<(), InputError> {
    if !COMMANDS.contains(&command) {
        return Err(InputError::invalid(path, format!("unknown command '{command}'")));
    }
    Ok(())
}

/// Parses a single job; polynomial syntax and references are checked by
/// [`crate::build::Workspace::new`].
pub fn parse_jobspec(text: &str) -> Result<JobSpec, InputError> {
    let spec: JobSpec = serde_json::from_str(text).map_err(syntax)?;
    check_schema(spec.schema)?;
    if let Some(c) = &spec.command {
        check_command("command", c)?;
    }
    Ok(spec)
}

pub fn parse_bundle(text: &str) -> Result<Bundle, InputError> {
    let bundle: Bundle = serde_json::from_str(text).map_err(syntax)?;
    check_schema(bundle.schema)?;
    for (i, j) in bundle.jobs.iter().enumerate() {
        check_command(&format!("jobs[{i}].command"), &j.command)?;
    }
    Ok(bundle)
}

/// Pretty JSON with sorted object keys.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("job specs serialize");
    serde_json::to_string_pretty(&v).expect("values serialize")
}
