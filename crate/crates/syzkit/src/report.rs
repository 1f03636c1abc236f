//! Verification reports and their text and JSON renderings.

use serde::Serialize;
use serde_json::{json, Value};
use syzkit_core::rational::{self, Q};
use syzkit_core::RationalMatrix;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub witness: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub command: String,
    pub pass: bool,
    pub checks: Vec<Check>,
    pub version: String,
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Self { command: command.into(), pass: true, checks: Vec::new(), version: env!("CARGO_PKG_VERSION").to_string() }
    }

    pub fn push(&mut self, name: impl Into<String>, pass: bool, witness: Value) {
        self.pass &= pass;
        self.checks.push(Check { name: name.into(), pass, witness });
    }

    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn exit_code(&self) -> i32 {
        if self.pass {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("syzkit {} :: {}\n", self.version, self.command);
        for c in &self.checks {
            let w = serde_json::to_string(&c.witness).expect("witness serializes");
            out.push_str(&format!("{} {}  {}\n", if c.pass { "PASS" } else { "FAIL" }, c.name, w));
        }
        out.push_str(&format!("overall: {}\n", if self.pass { "PASS" } else { "FAIL" }));
        out
    }
}

pub fn q(x: &Q) -> Value {
    Value::String(rational::to_string(x))
}

pub fn qs(xs: &[Q]) -> Value {
    Value::Array(xs.iter().map(q).collect())
}

pub fn matrix(m: &RationalMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| qs(r)).collect())
}

/// Decimal float with 17 significant digits.
pub fn float(x: f64) -> Value {
    Value::String(format!("{x:.16e}"))
}

pub fn floats(xs: &[f64]) -> Value {
    Value::Array(xs.iter().map(|x| float(*x)).collect())
}

/// Per-trial outcomes of one named check, folded in trial order.
#[derive(Clone, Debug, Default)]
pub struct TrialTally {
    pub trials: usize,
    pub failures: usize,
    pub first: Option<Value>,
    pub first_failure: Option<Value>,
}

impl TrialTally {
    pub fn record(&mut self, pass: bool, witness: Value) {
        self.trials += 1;
        if self.first.is_none() {
            self.first = Some(witness.clone());
        }
        if !pass {
            self.failures += 1;
            if self.first_failure.is_none() {
                self.first_failure = Some(witness);
            }
        }
    }

    pub fn witness(&self) -> Value {
        match &self.first_failure {
            Some(w) => json!({"trials": self.trials, "failures": self.failures, "first_failure": w}),
            None => json!({"trials": self.trials, "failures": 0, "example": self.first.clone().unwrap_or(Value::Null)}),
        }
    }

    pub fn pass(&self) -> bool {
        self.failures == 0
    }
}
