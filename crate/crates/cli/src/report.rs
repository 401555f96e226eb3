//! JSON report and document shapes. Field order is declaration order.

use matgeo::preserver::StandardPreserver;
use matgeo::Matrix;
use serde::Serialize;
use serde_json::{json, Value};

#[derive(Serialize, Default)]
pub struct Parameters {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub q: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub samples: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub budget: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub input: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub allow_transpose: Option<bool>,
}

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Error,
}

impl Outcome {
    pub fn exit_code(self) -> i32 {
        match self {
            Outcome::Pass => 0,
            Outcome::Fail => 1,
            Outcome::Error => 2,
        }
    }
}

/// One property checked by a command.
#[derive(Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    /// How the cases were chosen: `exhaustive` or `sampled`.
    pub coverage: String,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Value>,
}

impl Check {
    pub fn new(name: &str, coverage: &str, cases: u64, counterexample: Option<Value>) -> Self {
        Self {
            name: name.to_string(),
            passed: counterexample.is_none(),
            coverage: coverage.to_string(),
            cases,
            counterexample,
        }
    }
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub parameters: Parameters,
    pub outcome: Outcome,
    pub checks: Vec<Check>,
    #[serde(skip_serializing_if = "Value::is_null")]
    pub results: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
    pub elapsed_ms: u64,
}

impl Report {
    pub fn new(command: &str, parameters: Parameters) -> Self {
        Self {
            command: command.to_string(),
            parameters,
            outcome: Outcome::Pass,
            checks: Vec::new(),
            results: Value::Null,
            error: None,
            elapsed_ms: 0,
        }
    }

    pub fn push(&mut self, check: Check) {
        if !check.passed {
            self.outcome = Outcome::Fail;
        }
        self.checks.push(check);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes") + "\n"
    }
}

pub fn matrix_json(a: &Matrix) -> Value {
    let rows: Vec<Vec<u8>> = (0..a.rows())
        .map(|r| (0..a.cols()).map(|c| a.get(r, c)).collect())
        .collect();
    json!({ "index": a.index(), "rows": rows })
}

/// The standard-form parameters of a preserver, with enough context to
/// rebuild it.
pub fn decomposition_json(f: &StandardPreserver) -> Value {
    let field = f.field();
    json!({
        "q": field.q(),
        "m": f.r().rows(),
        "n": f.r().cols(),
        "modulus": field.modulus(),
        "T": matrix_json(f.t()),
        "S": matrix_json(f.s()),
        "R": matrix_json(f.r()),
        "sigma": f.sigma().frobenius_power(),
        "transposed": f.transposed(),
    })
}
