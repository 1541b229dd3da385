//! Morphing one curve or graph-map into another inside a chosen class.

pub mod alexander;
pub mod engine;
pub mod error;
pub mod events;
pub mod family;
pub mod maneuvers;
pub mod sequence;
pub mod strategy;
pub mod verify;

pub use alexander::embed_morph;
pub use engine::{
    chain_morphs, classify_shape, embedding_morph, extend_shape, graph_morph, immersion_morph, linear_morph, morph_family, shape_distance, Ball,
    MorphContext,
};
pub use error::MorphError;
pub use family::{common_reparameterize, Family};
pub use maneuvers::{qtip_inflate, reroute_pauses};
pub use sequence::{EventKind, Frame, Location, Maneuver, MorphEvent, MorphSequence, Obstruction};
pub use strategy::{MorphStrategy, StrategyRegistry};
pub use verify::{verify_morph, VerificationReport};
