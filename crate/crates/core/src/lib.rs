//! Geometry, graph and Fréchet-distance primitives for polygonal curves and graph-maps.

pub mod classify;
pub mod contacts;
pub mod error;
pub mod frechet;
pub mod graph;
pub mod point;
pub mod polyline;
pub mod segment;

pub use classify::{classify_graph_map, classify_path, detect_backtracking, detect_pauses, ClassLabel, ClassReport};
pub use contacts::{hausdorff_distance, point_curve_distance, self_intersections, HausdorffEstimate, SelfContact};
pub use error::{FrechetError, GeometryError, GraphError};
pub use frechet::{
    align_circle, continuous_frechet, discrete_frechet, extract_matching, free_space_decision, frechet_at_most, frechet_with_matching, graph_frechet,
    path_frechet, DistanceEngine, DistanceReport, Enclosure, EngineOptions, EngineRegistry, FreeSpaceDiagram, GraphDistance, Matching, Shape,
};
pub use graph::{enumerate_isomorphisms, homeomorphic, smooth, GraphMap, Isomorphism, MultiGraph, SmoothedGraph, DEFAULT_ISO_CAP};
pub use point::Point;
pub use polyline::{Polyline, Tolerances};
