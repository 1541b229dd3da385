//! Finite multigraphs, their geometric realizations, and homeomorphism
//! testing by isomorphism of the smoothed (degree-2-free) multigraphs.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{GeometryError, GraphError};
use crate::point::Point;
use crate::polyline::Polyline;

/// Default cap on candidate maps explored during isomorphism enumeration.
pub const DEFAULT_ISO_CAP: usize = 1_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Edge {
    pub id: String,
    pub from: String,
    pub to: String,
}

/// A finite multigraph; self-loops and parallel edges are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new(vertices: Vec<String>, edges: Vec<Edge>) -> Result<Self, GraphError> {
        let mut vset = BTreeSet::new();
        for v in &vertices {
            if !vset.insert(v.clone()) {
                return Err(GraphError::DuplicateVertex(v.clone()));
            }
        }
        let mut eset = BTreeSet::new();
        for e in &edges {
            if !eset.insert(e.id.clone()) {
                return Err(GraphError::DuplicateEdge(e.id.clone()));
            }
            for end in [&e.from, &e.to] {
                if !vset.contains(end) {
                    return Err(GraphError::UnknownVertex { edge: e.id.clone(), vertex: end.clone() });
                }
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Shorthand for tests and fixtures: edges named `e0, e1, ...`.
    pub fn from_pairs(vertices: &[&str], pairs: &[(&str, &str)]) -> Result<Self, GraphError> {
        let edges = pairs
            .iter()
            .enumerate()
            .map(|(k, (a, b))| Edge { id: format!("e{k}"), from: a.to_string(), to: b.to_string() })
            .collect();
        Self::new(vertices.iter().map(|s| s.to_string()).collect(), edges)
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().map(|e| (e.from == v) as usize + (e.to == v) as usize).sum()
    }
}

/// One step of a chain: an original edge, traversed forward (`from → to`) or not.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainStep {
    pub edge: String,
    pub forward: bool,
}

/// A maximal chain of original edges between two branch vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TopoEdge {
    pub from: String,
    pub to: String,
    pub chain: Vec<ChainStep>,
}

impl TopoEdge {
    pub fn is_loop(&self) -> bool {
        self.from == self.to
    }
}

/// A component without branch vertices: a cycle of degree-2 vertices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircleComponent {
    pub chain: Vec<ChainStep>,
    /// The vertex the chain starts (and ends) at.
    pub base: String,
}

/// A multigraph with every degree-2 vertex suppressed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SmoothedGraph {
    pub branch_vertices: Vec<String>,
    pub edges: Vec<TopoEdge>,
    pub circles: Vec<CircleComponent>,
}

impl SmoothedGraph {
    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().map(|e| (e.from == v) as usize + (e.to == v) as usize).sum()
    }

    fn multiplicity(&self, a: &str, b: &str) -> usize {
        self.edges
            .iter()
            .filter(|e| (e.from == a && e.to == b) || (e.from == b && e.to == a))
            .count()
    }

    /// Topological edges between `a` and `b` (either orientation), by index.
    fn between(&self, a: &str, b: &str) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&k| {
                let e = &self.edges[k];
                (e.from == a && e.to == b) || (e.from == b && e.to == a)
            })
            .collect()
    }

    /// Rebuilds a plain multigraph: circles become a vertex with a self-loop.
    pub fn to_multigraph(&self) -> MultiGraph {
        let mut vertices = self.branch_vertices.clone();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .enumerate()
            .map(|(k, e)| Edge { id: format!("t{k}"), from: e.from.clone(), to: e.to.clone() })
            .collect();
        for k in 0..self.circles.len() {
            let v = format!("circle{k}");
            edges.push(Edge { id: format!("c{k}"), from: v.clone(), to: v.clone() });
            vertices.push(v);
        }
        MultiGraph::new(vertices, edges).expect("smoothed graph is well formed")
    }

    /// Structural summary, independent of edge ids and chain contents.
    pub fn signature(&self) -> (Vec<String>, Vec<(String, String)>, usize) {
        let mut pairs: Vec<(String, String)> = self
            .edges
            .iter()
            .map(|e| if e.from <= e.to { (e.from.clone(), e.to.clone()) } else { (e.to.clone(), e.from.clone()) })
            .collect();
        pairs.sort();
        let mut vs = self.branch_vertices.clone();
        vs.sort();
        (vs, pairs, self.circles.len())
    }
}

/// Suppresses all degree-2 vertices; cycles without branch vertices become
/// circle components.
pub fn smooth(g: &MultiGraph) -> SmoothedGraph {
    // incidence: vertex -> [(edge index, end)] where end 0 = from, 1 = to
    let mut inc: BTreeMap<&str, Vec<(usize, u8)>> = g.vertices.iter().map(|v| (v.as_str(), Vec::new())).collect();
    for (k, e) in g.edges.iter().enumerate() {
        inc.get_mut(e.from.as_str()).unwrap().push((k, 0));
        inc.get_mut(e.to.as_str()).unwrap().push((k, 1));
    }
    let is_branch = |v: &str| inc[v].len() != 2;
    let mut visited = vec![false; g.edges.len()];

    // Walks from vertex `v` leaving through end `end` of edge `k`.
    let walk = |mut k: usize, mut end: u8, visited: &mut Vec<bool>| -> (Vec<ChainStep>, String) {
        let mut chain = Vec::new();
        loop {
            visited[k] = true;
            let e = &g.edges[k];
            chain.push(ChainStep { edge: e.id.clone(), forward: end == 0 });
            let (next, arrive_end) = if end == 0 { (&e.to, 1u8) } else { (&e.from, 0u8) };
            if is_branch(next) {
                return (chain, next.clone());
            }
            let ends = &inc[next.as_str()];
            let other = if ends[0] == (k, arrive_end) { ends[1] } else { ends[0] };
            if visited[other.0] {
                return (chain, next.clone());
            }
            k = other.0;
            end = other.1;
        }
    };

    let mut branch_vertices = Vec::new();
    let mut edges = Vec::new();
    for v in &g.vertices {
        if !is_branch(v) {
            continue;
        }
        branch_vertices.push(v.clone());
        for &(k, end) in &inc[v.as_str()] {
            if visited[k] {
                continue;
            }
            let (chain, to) = walk(k, end, &mut visited);
            edges.push(TopoEdge { from: v.clone(), to, chain });
        }
    }
    let mut circles = Vec::new();
    for k in 0..g.edges.len() {
        if visited[k] {
            continue;
        }
        let base = g.edges[k].from.clone();
        let (chain, _) = walk(k, 0, &mut visited);
        circles.push(CircleComponent { chain, base });
    }
    SmoothedGraph { branch_vertices, edges, circles }
}

/// Image of one topological edge under an isomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgePairing {
    pub source: usize,
    pub target: usize,
    /// Whether the target edge is traversed against its stored orientation.
    pub reversed: bool,
}

/// A combinatorial homeomorphism skeleton between two smoothed graphs.
///
/// Circle components are paired only; any rotation or reflection of the
/// circle is admissible and left to the distance minimization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Isomorphism {
    pub vertex_map: Vec<(String, String)>,
    pub edge_map: Vec<EdgePairing>,
    pub circle_map: Vec<(usize, usize)>,
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

struct Enumerator<'a> {
    g: &'a SmoothedGraph,
    h: &'a SmoothedGraph,
    cap: usize,
    limit: usize,
    explored: usize,
    out: Vec<Isomorphism>,
}

impl<'a> Enumerator<'a> {
    fn bump(&mut self) -> Result<(), GraphError> {
        self.explored += 1;
        if self.explored > self.cap {
            Err(GraphError::CapExceeded { cap: self.cap })
        } else {
            Ok(())
        }
    }

    fn vertices(&mut self, assigned: &mut Vec<usize>, used: &mut Vec<bool>) -> Result<(), GraphError> {
        if self.out.len() >= self.limit {
            return Ok(());
        }
        let (g, h) = (self.g, self.h);
        let gv = &g.branch_vertices;
        let hv = &h.branch_vertices;
        if assigned.len() == gv.len() {
            return self.edges(assigned);
        }
        let u = &gv[assigned.len()];
        for j in 0..hv.len() {
            if used[j] || g.degree(u) != h.degree(&hv[j]) {
                continue;
            }
            self.bump()?;
            // multiplicities towards already assigned vertices (and self-loops)
            let ok = assigned.iter().enumerate().all(|(i, &fj)| g.multiplicity(u, &gv[i]) == h.multiplicity(&hv[j], &hv[fj]))
                && g.multiplicity(u, u) == h.multiplicity(&hv[j], &hv[j]);
            if !ok {
                continue;
            }
            used[j] = true;
            assigned.push(j);
            self.vertices(assigned, used)?;
            assigned.pop();
            used[j] = false;
        }
        Ok(())
    }

    fn edges(&mut self, assigned: &[usize]) -> Result<(), GraphError> {
        let (g, h) = (self.g, self.h);
        let gv = &g.branch_vertices;
        let hv = &h.branch_vertices;
        let image = |v: &str| -> &str {
            let i = gv.iter().position(|x| x == v).unwrap();
            &hv[assigned[i]]
        };
        // Group source edges by unordered endpoint pair; each group maps onto
        // the parallel class between the image vertices.
        let mut groups: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        let mut seen = BTreeSet::new();
        for e in &g.edges {
            let key = if e.from <= e.to { (e.from.clone(), e.to.clone()) } else { (e.to.clone(), e.from.clone()) };
            if !seen.insert(key.clone()) {
                continue;
            }
            groups.push((g.between(&key.0, &key.1), h.between(image(&key.0), image(&key.1))));
        }
        // choices per group: (permutation, loop orientation bits)
        let mut per_group: Vec<Vec<Vec<EdgePairing>>> = Vec::new();
        for (src, dst) in &groups {
            let mut options = Vec::new();
            let loops = g.edges[src[0]].is_loop();
            for perm in permutations(src.len()) {
                let flips = if loops { 1usize << src.len() } else { 1 };
                for bits in 0..flips {
                    let pairing = src
                        .iter()
                        .zip(&perm)
                        .enumerate()
                        .map(|(k, (&s, &pi))| {
                            let t = dst[pi];
                            let reversed = if loops {
                                bits >> k & 1 == 1
                            } else {
                                image(&g.edges[s].from) != h.edges[t].from
                            };
                            EdgePairing { source: s, target: t, reversed }
                        })
                        .collect();
                    options.push(pairing);
                }
            }
            per_group.push(options);
        }
        let vertex_map: Vec<(String, String)> = gv.iter().zip(assigned).map(|(u, &j)| (u.clone(), hv[j].clone())).collect();
        let circle_perms = permutations(g.circles.len());
        let mut idx = vec![0usize; per_group.len()];
        loop {
            for cp in &circle_perms {
                if self.out.len() >= self.limit {
                    return Ok(());
                }
                self.bump()?;
                let mut edge_map: Vec<EdgePairing> = idx.iter().enumerate().flat_map(|(g, &i)| per_group[g][i].clone()).collect();
                edge_map.sort_by_key(|p| p.source);
                self.out.push(Isomorphism {
                    vertex_map: vertex_map.clone(),
                    edge_map,
                    circle_map: cp.iter().enumerate().map(|(a, &b)| (a, b)).collect(),
                });
            }
            // odometer over group choices
            let mut k = 0;
            loop {
                if k == idx.len() {
                    return Ok(());
                }
                idx[k] += 1;
                if idx[k] < per_group[k].len() {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
        }
    }
}

fn quick_reject(g: &SmoothedGraph, h: &SmoothedGraph) -> bool {
    if g.branch_vertices.len() != h.branch_vertices.len() || g.edges.len() != h.edges.len() || g.circles.len() != h.circles.len() {
        return true;
    }
    let degs = |s: &SmoothedGraph| {
        let mut d: Vec<usize> = s.branch_vertices.iter().map(|v| s.degree(v)).collect();
        d.sort();
        d
    };
    degs(g) != degs(h)
}

fn run(g: &SmoothedGraph, h: &SmoothedGraph, cap: usize, limit: usize) -> Result<Vec<Isomorphism>, GraphError> {
    if quick_reject(g, h) {
        return Ok(Vec::new());
    }
    let mut en = Enumerator { g, h, cap, limit, explored: 0, out: Vec::new() };
    let n = g.branch_vertices.len();
    en.vertices(&mut Vec::with_capacity(n), &mut vec![false; n])?;
    Ok(en.out)
}

/// Every isomorphism between the smoothed graphs, in a canonical order.
pub fn enumerate_isomorphisms(g: &SmoothedGraph, h: &SmoothedGraph, cap: usize) -> Result<Vec<Isomorphism>, GraphError> {
    run(g, h, cap, usize::MAX)
}

/// Whether two multigraphs are homeomorphic. Errors only when the search
/// exceeds `cap` before deciding.
pub fn homeomorphic(g: &MultiGraph, h: &MultiGraph, cap: usize) -> Result<bool, GraphError> {
    Ok(!run(&smooth(g), &smooth(h), cap, 1)?.is_empty())
}

/// A multigraph with a geometric realization in ℝⁿ.
#[derive(Clone, Debug, PartialEq)]
pub struct GraphMap {
    graph: MultiGraph,
    dim: usize,
    vertex_points: BTreeMap<String, Point>,
    edge_curves: BTreeMap<String, Polyline>,
}

/// Wire format for graph-maps.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub dim: usize,
    pub vertices: BTreeMap<String, Vec<f64>>,
    pub edges: Vec<EdgeJson>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub id: String,
    pub from: String,
    pub to: String,
    pub polyline: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
}

impl GraphMap {
    /// Edge curves run from the image of `from` to the image of `to`.
    pub fn new(
        graph: MultiGraph,
        vertex_points: BTreeMap<String, Point>,
        edge_curves: BTreeMap<String, Polyline>,
        eps_dist: f64,
    ) -> Result<Self, GraphError> {
        let dim = vertex_points.values().next().map(|p| p.dim()).or_else(|| edge_curves.values().next().map(|c| c.dim())).unwrap_or(1);
        for v in graph.vertices() {
            let p = vertex_points.get(v).ok_or_else(|| GraphError::MissingGeometry(v.clone()))?;
            if p.dim() != dim {
                return Err(GeometryError::DimensionMismatch { left: dim, right: p.dim() }.into());
            }
        }
        for e in graph.edges() {
            let c = edge_curves.get(&e.id).ok_or_else(|| GraphError::MissingGeometry(e.id.clone()))?;
            if c.dim() != dim {
                return Err(GeometryError::DimensionMismatch { left: dim, right: c.dim() }.into());
            }
            let gap = c.start().distance(&vertex_points[&e.from]).max(c.end().distance(&vertex_points[&e.to]));
            if gap > eps_dist {
                return Err(GraphError::EdgeEndpointMismatch { edge: e.id.clone(), gap });
            }
        }
        Ok(Self { graph, dim, vertex_points, edge_curves })
    }

    /// Straight-line realization: every edge is the segment between its endpoints.
    pub fn straight(graph: MultiGraph, vertex_points: BTreeMap<String, Point>) -> Result<Self, GraphError> {
        let mut curves = BTreeMap::new();
        for e in graph.edges() {
            let a = vertex_points.get(&e.from).ok_or_else(|| GraphError::MissingGeometry(e.from.clone()))?;
            let b = vertex_points.get(&e.to).ok_or_else(|| GraphError::MissingGeometry(e.to.clone()))?;
            curves.insert(e.id.clone(), Polyline::new(vec![a.clone(), b.clone()])?);
        }
        Self::new(graph, vertex_points, curves, 0.0)
    }

    /// A single polyline as a graph-map on the interval graph `a - b`.
    pub fn interval(curve: &Polyline) -> Self {
        let graph = MultiGraph::from_pairs(&["a", "b"], &[("a", "b")]).unwrap();
        let points = BTreeMap::from([("a".to_string(), curve.start().clone()), ("b".to_string(), curve.end().clone())]);
        let curves = BTreeMap::from([("e0".to_string(), curve.clone())]);
        Self { graph, dim: curve.dim(), vertex_points: points, edge_curves: curves }
    }

    pub fn from_json(json: &GraphJson, eps_dist: f64) -> Result<Self, GraphError> {
        let mut points = BTreeMap::new();
        for (id, c) in &json.vertices {
            if c.len() != json.dim {
                return Err(GeometryError::DimensionMismatch { left: json.dim, right: c.len() }.into());
            }
            points.insert(id.clone(), Point::new(c.clone())?);
        }
        let mut edges = Vec::new();
        let mut curves = BTreeMap::new();
        for e in &json.edges {
            edges.push(Edge { id: e.id.clone(), from: e.from.clone(), to: e.to.clone() });
            let curve = Polyline::from_json(&crate::polyline::CurveJson { dim: json.dim, vertices: e.polyline.clone(), params: e.params.clone() })?;
            curves.insert(e.id.clone(), curve);
        }
        let graph = MultiGraph::new(json.vertices.keys().cloned().collect(), edges)?;
        Self::new(graph, points, curves, eps_dist)
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            dim: self.dim,
            vertices: self.vertex_points.iter().map(|(k, p)| (k.clone(), p.coords().to_vec())).collect(),
            edges: self
                .graph
                .edges()
                .iter()
                .map(|e| {
                    let c = &self.edge_curves[&e.id];
                    EdgeJson {
                        id: e.id.clone(),
                        from: e.from.clone(),
                        to: e.to.clone(),
                        polyline: c.vertices().iter().map(|p| p.coords().to_vec()).collect(),
                        params: Some(c.params().to_vec()),
                    }
                })
                .collect(),
        }
    }

    pub fn graph(&self) -> &MultiGraph {
        &self.graph
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_point(&self, v: &str) -> &Point {
        &self.vertex_points[v]
    }

    pub fn vertex_points(&self) -> &BTreeMap<String, Point> {
        &self.vertex_points
    }

    pub fn edge_curve(&self, e: &str) -> &Polyline {
        &self.edge_curves[e]
    }

    pub fn edge_curves(&self) -> &BTreeMap<String, Polyline> {
        &self.edge_curves
    }

    /// Applies `f` to every vertex and edge point.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> GraphMap {
        GraphMap {
            graph: self.graph.clone(),
            dim: self.dim,
            vertex_points: self.vertex_points.iter().map(|(k, p)| (k.clone(), f(p))).collect(),
            edge_curves: self.edge_curves.iter().map(|(k, c)| (k.clone(), c.map_points(&f))).collect(),
        }
    }

    /// Replaces edge curves (e.g. by reparameterizations); endpoints must still match.
    pub fn with_edge_curves(&self, curves: BTreeMap<String, Polyline>, eps_dist: f64) -> Result<GraphMap, GraphError> {
        GraphMap::new(self.graph.clone(), self.vertex_points.clone(), curves, eps_dist)
    }

    /// The polyline traced by a chain of edges, starting at `start` vertex.
    pub fn chain_curve(&self, chain: &[ChainStep]) -> Polyline {
        let mut pts: Vec<Point> = Vec::new();
        for step in chain {
            let c = &self.edge_curves[&step.edge];
            let c = if step.forward { c.clone() } else { c.reverse() };
            let skip = usize::from(!pts.is_empty());
            pts.extend(c.vertices().iter().skip(skip).cloned());
        }
        Polyline::new(pts).expect("chain of valid edges")
    }
}

impl Serialize for GraphMap {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for GraphMap {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = GraphJson::deserialize(d)?;
        GraphMap::from_json(&json, 1e-6).map_err(serde::de::Error::custom)
    }
}
