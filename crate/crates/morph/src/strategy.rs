//! Named morph strategies selectable at runtime.

use frechet_core::{ClassLabel, Shape};

use crate::alexander::embed_morph;
use crate::engine::{embedding_morph, graph_morph, immersion_morph, linear_morph, MorphContext};
use crate::error::MorphError;
use crate::sequence::MorphSequence;

pub trait MorphStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    /// Class every frame of a successful morph belongs to.
    fn target_class(&self) -> ClassLabel;
    fn morph(&self, a: &Shape, b: &Shape, ctx: &MorphContext) -> Result<MorphSequence, MorphError>;
}

fn paths<'a>(a: &'a Shape, b: &'a Shape) -> Option<(&'a frechet_core::Polyline, &'a frechet_core::Polyline)> {
    match (a, b) {
        (Shape::Path(p), Shape::Path(q)) => Some((p, q)),
        _ => None,
    }
}

pub struct Linear;
pub struct Immersion;
pub struct Embedding;
pub struct Alexander;

impl MorphStrategy for Linear {
    fn name(&self) -> &'static str {
        "linear"
    }
    fn target_class(&self) -> ClassLabel {
        ClassLabel::C
    }
    fn morph(&self, a: &Shape, b: &Shape, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
        match paths(a, b) {
            Some((p, q)) => linear_morph(p, q, ctx),
            None => graph_morph(&a.as_graph(), &b.as_graph(), ClassLabel::C, ctx),
        }
    }
}

impl MorphStrategy for Immersion {
    fn name(&self) -> &'static str {
        "immersion"
    }
    fn target_class(&self) -> ClassLabel {
        ClassLabel::I
    }
    fn morph(&self, a: &Shape, b: &Shape, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
        match paths(a, b) {
            Some((p, q)) => immersion_morph(p, q, ctx),
            None => graph_morph(&a.as_graph(), &b.as_graph(), ClassLabel::I, ctx),
        }
    }
}

impl MorphStrategy for Embedding {
    fn name(&self) -> &'static str {
        "embedding"
    }
    fn target_class(&self) -> ClassLabel {
        ClassLabel::E
    }
    fn morph(&self, a: &Shape, b: &Shape, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
        match paths(a, b) {
            Some((p, q)) => embedding_morph(p, q, ctx),
            None => graph_morph(&a.as_graph(), &b.as_graph(), ClassLabel::E, ctx),
        }
    }
}

impl MorphStrategy for Alexander {
    fn name(&self) -> &'static str {
        "alexander"
    }
    fn target_class(&self) -> ClassLabel {
        ClassLabel::E
    }
    fn morph(&self, a: &Shape, b: &Shape, ctx: &MorphContext) -> Result<MorphSequence, MorphError> {
        let (p, q) = paths(a, b).ok_or_else(|| MorphError::Unsupported("the shrink-and-slide morph is defined for paths only".into()))?;
        embed_morph(p, q, ctx)
    }
}

pub struct StrategyRegistry {
    strategies: Vec<Box<dyn MorphStrategy>>,
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self { strategies: Vec::new() }
    }

    pub fn with_defaults() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(Linear));
        r.register(Box::new(Immersion));
        r.register(Box::new(Embedding));
        r.register(Box::new(Alexander));
        r
    }

    /// Adds a strategy, replacing any existing one of the same name.
    pub fn register(&mut self, s: Box<dyn MorphStrategy>) {
        self.strategies.retain(|x| x.name() != s.name());
        self.strategies.push(s);
    }

    pub fn get(&self, name: &str) -> Result<&dyn MorphStrategy, MorphError> {
        self.strategies.iter().find(|s| s.name() == name).map(|s| s.as_ref()).ok_or_else(|| MorphError::UnknownStrategy(name.into()))
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.strategies.iter().map(|s| s.name()).collect()
    }

    /// Default strategy for a class name: `continuous`, `immersion`,
    /// `embedding`, or a class letter.
    pub fn for_class(&self, class: &str) -> Result<&dyn MorphStrategy, MorphError> {
        let name = match class {
            "continuous" | "C" | "c" => "linear",
            "immersion" | "I" | "i" => "immersion",
            "embedding" | "E" | "e" => "embedding",
            other => other,
        };
        self.get(name)
    }
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        Self::with_defaults()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn registry_lookup() {
        let r = StrategyRegistry::with_defaults();
        assert_eq!(r.names(), vec!["linear", "immersion", "embedding", "alexander"]);
        assert_eq!(r.for_class("immersion").unwrap().target_class(), ClassLabel::I);
        assert_eq!(r.for_class("continuous").unwrap().name(), "linear");
        assert!(matches!(r.get("spline"), Err(MorphError::UnknownStrategy(_))));
    }
}
