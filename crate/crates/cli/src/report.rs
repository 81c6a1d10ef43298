use std::fmt::Write as _;

use semiact::formats::{poly_to_json, rat_poly_to_json};
use semiact::polyshape::{shape_report, IntPolynomial, RatPolynomial, ShapeReport};
use serde::Serialize;
use serde_json::{Map, Value};
use sha2::{Digest, Sha256};

#[derive(Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub command: String,
    /// SHA-256 of the canonical JSON of every parsed input, in order
    pub inputs: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub result_poly: Option<Value>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub shape: Option<ShapeReport>,
    pub checks: Vec<Check>,
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub details: Map<String, Value>,
    #[serde(skip)]
    poly_text: Option<String>,
}

/// Running hash of the inputs a command consumed.
#[derive(Default)]
pub struct InputDigest {
    hasher: Sha256,
}

impl InputDigest {
    pub fn add(&mut self, v: &Value) {
        self.hasher.update(v.to_string().as_bytes());
        self.hasher.update(b"\n");
    }

    pub fn finish(self) -> String {
        hex::encode(self.hasher.finalize())
    }
}

impl RunReport {
    pub fn new(command: &str, inputs: InputDigest, seed: Option<u64>) -> Self {
        RunReport {
            command: command.to_string(),
            inputs: inputs.finish(),
            result_poly: None,
            shape: None,
            checks: Vec::new(),
            seed,
            details: Map::new(),
            poly_text: None,
        }
    }

    pub fn set_poly(&mut self, p: &IntPolynomial) {
        self.result_poly = Some(poly_to_json(p));
        self.shape = Some(shape_report(p));
        self.poly_text = Some(p.to_string());
    }

    pub fn set_rat_poly(&mut self, p: &RatPolynomial) {
        self.result_poly = Some(rat_poly_to_json(p));
        self.shape = Some(shape_report(p));
        self.poly_text = Some(p.to_string());
    }

    pub fn check(&mut self, name: impl Into<String>, pass: bool, detail: impl Into<String>) {
        self.checks.push(Check { name: name.into(), pass, detail: detail.into() });
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details.insert(key.to_string(), serde_json::to_value(value).expect("serializable detail"));
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("serializable report")
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("{}  (inputs {})\n", self.command, &self.inputs[..12]);
        if let Some(seed) = self.seed {
            let _ = writeln!(s, "seed: {seed}");
        }
        if let Some(p) = &self.poly_text {
            let _ = writeln!(s, "polynomial: {p}");
        }
        if let Some(sh) = &self.shape {
            let flags = [
                ("palindromic", sh.palindromic),
                ("nonnegative", sh.nonnegative),
                ("no internal zeros", sh.no_internal_zeros),
                ("log-concave", sh.log_concave),
                ("trapezoidal", sh.trapezoidal),
            ];
            let on: Vec<&str> = flags.iter().filter(|f| f.1).map(|f| f.0).collect();
            let _ = writeln!(s, "shape: {}", if on.is_empty() { "-".to_string() } else { on.join(", ") });
        }
        for (k, v) in &self.details {
            let _ = writeln!(s, "{k}: {v}");
        }
        for c in &self.checks {
            let _ = writeln!(s, "[{}] {}: {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
        }
        s
    }
}
