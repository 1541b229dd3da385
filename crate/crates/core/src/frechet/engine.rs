//! Named distance engines selectable at runtime.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::{continuous_frechet, discrete_frechet, graph_frechet, path_frechet, Enclosure};
use crate::error::FrechetError;
use crate::graph::{GraphJson, GraphMap, DEFAULT_ISO_CAP};
use crate::polyline::{CurveJson, Polyline, Tolerances};

/// Either kind of input a distance can be taken between.
#[derive(Clone, Debug, PartialEq)]
pub enum Shape {
    Path(Polyline),
    Graph(GraphMap),
}

impl Shape {
    pub fn kind(&self) -> &'static str {
        match self {
            Shape::Path(_) => "path",
            Shape::Graph(_) => "graph",
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Shape::Path(p) => p.dim(),
            Shape::Graph(g) => g.dim(),
        }
    }

    /// Parses curve or graph JSON; objects with an `edges` field are graphs.
    pub fn from_json_value(v: &serde_json::Value, eps_dist: f64) -> Result<Self, FrechetError> {
        let bad = |e: serde_json::Error| FrechetError::Geometry(crate::error::GeometryError::BadParams(e.to_string()));
        if v.get("edges").is_some() {
            let g: GraphJson = serde_json::from_value(v.clone()).map_err(bad)?;
            Ok(Shape::Graph(GraphMap::from_json(&g, eps_dist)?))
        } else {
            let c: CurveJson = serde_json::from_value(v.clone()).map_err(bad)?;
            Ok(Shape::Path(Polyline::from_json(&c)?))
        }
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        match self {
            Shape::Path(p) => serde_json::to_value(p.to_json()).expect("curve serializes"),
            Shape::Graph(g) => serde_json::to_value(g.to_json()).expect("graph serializes"),
        }
    }

    /// Views a path as an interval graph-map.
    pub fn as_graph(&self) -> GraphMap {
        match self {
            Shape::Path(p) => GraphMap::interval(p),
            Shape::Graph(g) => g.clone(),
        }
    }
}

impl Serialize for Shape {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json_value().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Shape {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        Shape::from_json_value(&v, Tolerances::default().eps_dist).map_err(serde::de::Error::custom)
    }
}

/// Result of one distance evaluation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DistanceReport {
    pub engine: String,
    #[serde(with = "inf_as_string")]
    pub value: f64,
    #[serde(with = "inf_as_string")]
    pub lo: f64,
    #[serde(with = "inf_as_string")]
    pub hi: f64,
}

impl DistanceReport {
    fn new(engine: &str, e: Enclosure) -> Self {
        Self { engine: engine.to_string(), value: e.value(), lo: e.lo, hi: e.hi }
    }
}

/// Serializes `+∞` as the string `"inf"`, finite values as numbers.
pub mod inf_as_string {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &f64, s: S) -> Result<S::Ok, S::Error> {
        if v.is_infinite() && *v > 0.0 {
            s.serialize_str("inf")
        } else {
            s.serialize_f64(*v)
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<f64, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(f64),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(x) => Ok(x),
            Raw::S(s) if s == "inf" => Ok(f64::INFINITY),
            Raw::S(s) => Err(serde::de::Error::custom(format!("expected number or \"inf\", got {s:?}"))),
        }
    }
}

/// Knobs shared by all engines.
#[derive(Clone, Debug)]
pub struct EngineOptions {
    pub tol: Tolerances,
    pub oriented: bool,
    pub iso_cap: usize,
}

impl Default for EngineOptions {
    fn default() -> Self {
        Self { tol: Tolerances::default(), oriented: true, iso_cap: DEFAULT_ISO_CAP }
    }
}

pub trait DistanceEngine: Send + Sync {
    fn name(&self) -> &str;
    fn distance(&self, a: &Shape, b: &Shape, opts: &EngineOptions) -> Result<DistanceReport, FrechetError>;
}

fn paths<'a>(engine: &str, a: &'a Shape, b: &'a Shape) -> Result<(&'a Polyline, &'a Polyline), FrechetError> {
    match (a, b) {
        (Shape::Path(p), Shape::Path(q)) => Ok((p, q)),
        _ => Err(FrechetError::WrongInput { engine: engine.to_string(), input: "graph" }),
    }
}

struct Discrete;
struct Continuous;
struct PathEngine;
struct GraphEngine;

impl DistanceEngine for Discrete {
    fn name(&self) -> &str {
        "discrete"
    }
    fn distance(&self, a: &Shape, b: &Shape, _: &EngineOptions) -> Result<DistanceReport, FrechetError> {
        let (p, q) = paths(self.name(), a, b)?;
        Ok(DistanceReport::new(self.name(), Enclosure::exact(discrete_frechet(p, q)?)))
    }
}

impl DistanceEngine for Continuous {
    fn name(&self) -> &str {
        "continuous"
    }
    fn distance(&self, a: &Shape, b: &Shape, opts: &EngineOptions) -> Result<DistanceReport, FrechetError> {
        let (p, q) = paths(self.name(), a, b)?;
        Ok(DistanceReport::new(self.name(), continuous_frechet(p, q, &opts.tol)?))
    }
}

impl DistanceEngine for PathEngine {
    fn name(&self) -> &str {
        "path"
    }
    fn distance(&self, a: &Shape, b: &Shape, opts: &EngineOptions) -> Result<DistanceReport, FrechetError> {
        let (p, q) = paths(self.name(), a, b)?;
        Ok(DistanceReport::new(self.name(), path_frechet(p, q, opts.oriented, &opts.tol)?))
    }
}

impl DistanceEngine for GraphEngine {
    fn name(&self) -> &str {
        "graph"
    }
    fn distance(&self, a: &Shape, b: &Shape, opts: &EngineOptions) -> Result<DistanceReport, FrechetError> {
        let d = graph_frechet(&a.as_graph(), &b.as_graph(), &opts.tol, opts.iso_cap)?;
        Ok(DistanceReport::new(self.name(), d.enclosure))
    }
}

/// Engines by name.
pub struct EngineRegistry {
    engines: BTreeMap<String, Box<dyn DistanceEngine>>,
}

impl EngineRegistry {
    pub fn empty() -> Self {
        Self { engines: BTreeMap::new() }
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Discrete));
        r.register(Box::new(Continuous));
        r.register(Box::new(PathEngine));
        r.register(Box::new(GraphEngine));
        r
    }

    pub fn register(&mut self, engine: Box<dyn DistanceEngine>) {
        self.engines.insert(engine.name().to_string(), engine);
    }

    pub fn get(&self, name: &str) -> Result<&dyn DistanceEngine, FrechetError> {
        self.engines.get(name).map(|b| b.as_ref()).ok_or_else(|| FrechetError::UnknownEngine(name.to_string()))
    }

    pub fn names(&self) -> Vec<&str> {
        self.engines.keys().map(|s| s.as_str()).collect()
    }
}

impl Default for EngineRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = EngineRegistry::with_defaults();
        assert_eq!(r.names(), vec!["continuous", "discrete", "graph", "path"]);
        assert!(matches!(r.get("nope"), Err(FrechetError::UnknownEngine(_))));
    }

    #[test]
    fn infinity_serializes_as_string() {
        let rep = DistanceReport { engine: "graph".into(), value: f64::INFINITY, lo: f64::INFINITY, hi: f64::INFINITY };
        let s = serde_json::to_string(&rep).unwrap();
        assert!(s.contains("\"value\":\"inf\""));
        let back: DistanceReport = serde_json::from_str(&s).unwrap();
        assert!(back.value.is_infinite());
    }

    #[test]
    fn path_engine_rejects_graphs() {
        let r = EngineRegistry::with_defaults();
        let p = Polyline::from_coords(&[&[0.0], &[1.0]]).unwrap();
        let g = Shape::Graph(GraphMap::interval(&p));
        let e = r.get("path").unwrap().distance(&g, &Shape::Path(p), &EngineOptions::default());
        assert!(matches!(e, Err(FrechetError::WrongInput { .. })));
    }
}
