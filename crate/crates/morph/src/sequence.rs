//! Sampled morph sequences and their event log.

use serde::{Deserialize, Serialize};

use frechet_core::{ClassLabel, Shape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EventKind {
    Pause,
    EndpointPause,
    SingletonCollapse,
    Backtrack,
    SelfCross,
    VertexViolation,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Maneuver {
    Reroute,
    Trim,
    RotatePi,
    Qtip,
    #[serde(rename = "lift_4d")]
    Lift4d,
    None,
}

/// Where on a frame an event happens.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Location {
    Param(f64),
    Id(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphEvent {
    pub t: f64,
    pub kind: EventKind,
    pub maneuver_applied: Maneuver,
    pub location: Location,
    /// Size of the applied change: cap radius, lift height, dodge scale.
    pub magnitude: f64,
    /// Time window `[t - w, t + w]` the maneuver acts on; zero for single-frame edits.
    #[serde(default)]
    pub window: f64,
}

impl MorphEvent {
    pub fn overlaps(&self, a: f64, b: f64) -> bool {
        self.t + self.window >= a && self.t - self.window <= b
    }
}

/// A constraint the engine could not satisfy, reported as a result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Obstruction {
    /// Which requirement failed: `"class"`, `"ball"`, `"dimension"`.
    pub constraint: String,
    pub t: f64,
    /// How far the constraint is from holding (0 when it is a hard impossibility).
    pub margin: f64,
    pub kind: EventKind,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Frame {
    pub t: f64,
    pub shape: Shape,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MorphSequence {
    pub strategy: String,
    pub target_class: ClassLabel,
    pub frames: Vec<Frame>,
    pub events: Vec<MorphEvent>,
    /// Certified bound on `d(frame i, frame i+1)` before maneuver allowances.
    pub step_bounds: Vec<f64>,
    /// Distance realized by the underlying coupling of source and target.
    pub d0: f64,
    pub obstruction: Option<Obstruction>,
}

impl MorphSequence {
    pub fn is_obstructed(&self) -> bool {
        self.obstruction.is_some()
    }

    /// Events whose window meets `[a, b]`.
    pub fn events_in(&self, a: f64, b: f64) -> impl Iterator<Item = &MorphEvent> {
        self.events.iter().filter(move |e| e.overlaps(a, b))
    }

    /// One JSON object per frame: `{"t", "curve", "events"}`.
    pub fn to_jsonl(&self) -> String {
        // each event goes to the frame nearest its time
        let mut per_frame: Vec<Vec<&MorphEvent>> = vec![Vec::new(); self.frames.len()];
        for e in &self.events {
            let mut best = 0;
            for (i, f) in self.frames.iter().enumerate() {
                if (f.t - e.t).abs() < (self.frames[best].t - e.t).abs() {
                    best = i;
                }
            }
            if !per_frame.is_empty() {
                per_frame[best].push(e);
            }
        }
        let mut out = String::new();
        for (f, evs) in self.frames.iter().zip(&per_frame) {
            let line = serde_json::json!({ "t": f.t, "curve": f.shape.to_json_value(), "events": evs });
            out.push_str(&serde_json::to_string(&line).expect("frame serializes"));
            out.push('\n');
        }
        out
    }
}
