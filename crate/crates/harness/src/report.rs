use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PropertyResult {
    pub name: String,
    pub pass: bool,
    /// Worst value seen for the checked quantity.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub worst: Option<f64>,
    /// Inputs and seed reproducing the worst case; always present on failure.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub properties: Vec<PropertyResult>,
    /// Wall-clock time; left empty unless asked for so reports stay reproducible.
    pub timing_ms: Option<u64>,
}

impl SuiteReport {
    pub fn new(suite: &str, seed: u64) -> Self {
        Self { suite: suite.into(), seed, properties: Vec::new(), timing_ms: None }
    }

    pub fn passed(&self) -> bool {
        self.properties.iter().all(|p| p.pass)
    }

    pub fn property(&self, name: &str) -> Option<&PropertyResult> {
        self.properties.iter().find(|p| p.name == name)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Tracks the worst case of one property over many trials.
#[derive(Debug)]
pub struct Check {
    name: String,
    /// Larger is worse when true; smaller is worse otherwise.
    upper: bool,
    limit: f64,
    worst: Option<f64>,
    worst_witness: Option<Value>,
    failed: bool,
}

impl Check {
    /// Passes while every observed value is `<= limit`.
    pub fn at_most(name: &str, limit: f64) -> Self {
        Self { name: name.into(), upper: true, limit, worst: None, worst_witness: None, failed: false }
    }

    /// Passes while every observed value is `>= limit`.
    pub fn at_least(name: &str, limit: f64) -> Self {
        Self { name: name.into(), upper: false, limit, worst: None, worst_witness: None, failed: false }
    }

    pub fn observe(&mut self, value: f64, witness: impl FnOnce() -> Value) {
        let worse = match self.worst {
            None => true,
            Some(w) => {
                if self.upper {
                    value > w || value.is_nan()
                } else {
                    value < w || value.is_nan()
                }
            }
        };
        let bad = value.is_nan() || if self.upper { value > self.limit } else { value < self.limit };
        if worse {
            self.worst = Some(value);
            if bad || !self.failed {
                self.worst_witness = Some(witness());
            }
        }
        self.failed |= bad;
    }

    /// Records a yes/no outcome; `false` counts as a failure.
    pub fn observe_bool(&mut self, ok: bool, witness: impl FnOnce() -> Value) {
        self.observe(if ok { 0.0 } else { 1.0 }, witness);
    }

    pub fn finish(self) -> PropertyResult {
        PropertyResult {
            name: self.name,
            pass: !self.failed && self.worst.is_some(),
            worst: self.worst.filter(|w| w.is_finite()),
            witness: if self.failed {
                self.worst_witness
            } else if self.worst.is_none() {
                Some(serde_json::json!({ "reason": "no trials were run" }))
            } else {
                None
            },
        }
    }
}

pub fn flag(name: &str, pass: bool, witness: Option<Value>) -> PropertyResult {
    PropertyResult { name: name.into(), pass, worst: None, witness: if pass { None } else { witness } }
}
