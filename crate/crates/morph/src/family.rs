//! Linear families of polylines on a shared vertex structure, plus the
//! time-windowed edits that maneuvers install on them.

use std::collections::BTreeMap;

use frechet_core::graph::{Edge, MultiGraph};
use frechet_core::point::rotate_in_plane;
use frechet_core::{align_circle, frechet_with_matching, graph_frechet, smooth, GraphMap, Matching, Point, Polyline, Shape, Tolerances};

use crate::error::MorphError;
use crate::maneuvers::{qtip_loop, reroute_pauses, Reroute};
use crate::sequence::{EventKind, Location, Maneuver, MorphEvent};

/// Resamples `p` and `q` on the breakpoints of an optimal matching so that
/// vertex `k` of one corresponds to vertex `k` of the other.
pub fn common_reparameterize(p: &Polyline, q: &Polyline, tol: &Tolerances) -> Result<(Polyline, Polyline, Matching), MorphError> {
    let (_, m) = frechet_with_matching(p, q, tol)?;
    let mut pv = Vec::new();
    let mut qv = Vec::new();
    let mut us: Vec<f64> = Vec::new();
    let last_k = m.breakpoints.len().saturating_sub(1);
    for (k, &(s, t)) in m.breakpoints.iter().enumerate() {
        let u = 0.5 * (s + t);
        let (a, b) = (p.eval(s), q.eval(t));
        if let Some(&prev) = us.last() {
            let same = a.distance(&pv[pv.len() - 1]) <= tol.eps_dist && b.distance(&qv[qv.len() - 1]) <= tol.eps_dist;
            if u <= prev + tol.eps_param || same {
                if k == last_k && us.len() > 1 {
                    // keep the exact end point
                    us.pop();
                    pv.pop();
                    qv.pop();
                } else {
                    continue;
                }
            }
        }
        us.push(u);
        pv.push(a);
        qv.push(b);
    }
    if us.len() < 2 {
        // both curves are single points
        us = vec![0.0, 1.0];
        pv = vec![p.start().clone(), p.end().clone()];
        qv = vec![q.start().clone(), q.end().clone()];
    }
    *us.last_mut().unwrap() = 1.0;
    Ok((Polyline::with_params(pv, us.clone())?, Polyline::with_params(qv, us)?, m))
}

/// One polyline moving linearly from `p` to `q`, vertex by vertex.
#[derive(Clone, Debug)]
pub struct Strand {
    pub p: Vec<Point>,
    pub q: Vec<Point>,
    pub params: Vec<f64>,
    /// Graph vertex ids at the two ends (graph families only).
    pub ends: Option<(String, String)>,
    pub id: String,
}

impl Strand {
    pub fn at(&self, t: f64) -> Vec<Point> {
        self.p.iter().zip(&self.q).map(|(a, b)| a.lerp(b, t)).collect()
    }

    pub fn speed(&self, k: usize) -> f64 {
        self.p[k].distance(&self.q[k])
    }

    pub fn segments(&self) -> usize {
        self.p.len() - 1
    }

    pub fn is_closed(&self) -> bool {
        matches!(&self.ends, Some((a, b)) if a == b)
    }
}

#[derive(Clone, Debug)]
pub enum Layout {
    Path,
    /// Frames are graph-maps on `graph`; strand `k` realizes edge `t{k}`.
    Graph { graph: MultiGraph, isolated: Vec<(String, Point, Point)> },
}

/// Maneuvers installed on a family, each active on `[t0 - w, t0 + w]`.
#[derive(Clone, Debug)]
pub enum Edit {
    /// Replace the window by rotations of the frame at `t0 - w` about `center`
    /// through `π·s`, simultaneously in each plane of `planes`.
    Dodge { center: Point, t0: f64, w: f64, planes: Vec<(Point, Point)> },
    /// Insert a loop of radius `radius·(1 - |t-t0|/w)` after vertex `vertex`.
    Qtip { strand: usize, vertex: usize, t0: f64, w: f64, radius: f64, normal: Point },
    /// Displace `vertices` along `dir` by a tent of peak `height`.
    Lift { strand: usize, vertices: Vec<usize>, t0: f64, w: f64, height: f64, dir: Point },
}

impl Edit {
    fn window(&self) -> (f64, f64) {
        match self {
            Edit::Dodge { t0, w, .. } | Edit::Qtip { t0, w, .. } | Edit::Lift { t0, w, .. } => (*t0, *w),
        }
    }

    fn tent(&self, t: f64) -> f64 {
        let (t0, w) = self.window();
        if w <= 0.0 {
            return 0.0;
        }
        (1.0 - (t - t0).abs() / w).max(0.0)
    }
}

#[derive(Clone, Debug)]
pub struct Family {
    pub strands: Vec<Strand>,
    pub layout: Layout,
    pub dim: usize,
    pub edits: Vec<Edit>,
}

impl Family {
    pub fn path(p: &Polyline, q: &Polyline, tol: &Tolerances) -> Result<(Self, Matching), MorphError> {
        let (pp, qq, m) = common_reparameterize(p, q, tol)?;
        let strand = Strand { p: pp.vertices().to_vec(), q: qq.vertices().to_vec(), params: pp.params().to_vec(), ends: None, id: "path".into() };
        Ok((Family { strands: vec![strand], layout: Layout::Path, dim: p.dim(), edits: Vec::new() }, m))
    }

    /// Family over the minimizing homeomorphism between two graph-maps.
    ///
    /// Returns the family and the graph distance realized by the pairing.
    pub fn graph(a: &GraphMap, b: &GraphMap, tol: &Tolerances, iso_cap: usize) -> Result<(Self, f64), MorphError> {
        let gd = graph_frechet(a, b, tol, iso_cap)?;
        let iso = gd.isomorphism.clone().ok_or(MorphError::NotHomeomorphic)?;
        let (sa, sb) = (smooth(a.graph()), smooth(b.graph()));
        let mut strands = Vec::new();
        let mut ends = Vec::new();
        for (k, pair) in iso.edge_map.iter().enumerate() {
            let te = &sa.edges[pair.source];
            let ca = a.chain_curve(&te.chain);
            let mut cb = b.chain_curve(&sb.edges[pair.target].chain);
            if pair.reversed {
                cb = cb.reverse();
            }
            let (pp, qq, _) = common_reparameterize(&ca, &cb, tol)?;
            ends.push((te.from.clone(), te.to.clone()));
            strands.push(Strand {
                p: pp.vertices().to_vec(),
                q: qq.vertices().to_vec(),
                params: pp.params().to_vec(),
                ends: Some((te.from.clone(), te.to.clone())),
                id: format!("t{k}"),
            });
        }
        for (k, &(i, j)) in iso.circle_map.iter().enumerate() {
            let ca = a.chain_curve(&sa.circles[i].chain);
            let cb = b.chain_curve(&sb.circles[j].chain);
            let (cb, _, _) = align_circle(&ca, &cb, tol)?;
            let (pp, qq, _) = common_reparameterize(&ca, &cb, tol)?;
            let v = format!("circle{k}");
            strands.push(Strand {
                p: pp.vertices().to_vec(),
                q: qq.vertices().to_vec(),
                params: pp.params().to_vec(),
                ends: Some((v.clone(), v)),
                id: format!("c{k}"),
            });
        }
        let vmap: BTreeMap<&String, &String> = iso.vertex_map.iter().map(|(x, y)| (x, y)).collect();
        let isolated = sa
            .branch_vertices
            .iter()
            .filter(|v| sa.degree(v) == 0)
            .map(|v| (v.clone(), a.vertex_point(v).clone(), b.vertex_point(vmap[v]).clone()))
            .collect();
        let graph = frame_graph(&sa.branch_vertices, &ends, iso.circle_map.len());
        Ok((Family { strands, layout: Layout::Graph { graph, isolated }, dim: a.dim(), edits: Vec::new() }, gd.value()))
    }

    /// Largest vertex movement between the positioned frames at `s` and `t`.
    ///
    /// Frames share a parameterization, so this bounds their distance.
    pub fn max_displacement(&self, s: f64, t: f64) -> f64 {
        let (a, b) = (self.positioned(s), self.positioned(t));
        let mut m = a.iter().flatten().zip(b.iter().flatten()).map(|(x, y)| x.distance(y)).fold(0.0, f64::max);
        if let Layout::Graph { isolated, .. } = &self.layout {
            for (_, p, q) in isolated {
                m = m.max(p.distance(q) * (t - s).abs());
            }
        }
        m
    }

    /// Largest vertex displacement between source and target.
    pub fn d0(&self) -> f64 {
        let s = self.strands.iter().flat_map(|s| (0..s.p.len()).map(move |k| s.speed(k))).fold(0.0, f64::max);
        match &self.layout {
            Layout::Graph { isolated, .. } => isolated.iter().map(|(_, a, b)| a.distance(b)).fold(s, f64::max),
            Layout::Path => s,
        }
    }

    /// Vertices of every strand at time `t` with lifts and dodges applied.
    fn positioned(&self, t: f64) -> Vec<Vec<Point>> {
        for e in &self.edits {
            if let Edit::Dodge { center, t0, w, planes } = e {
                if (t - t0).abs() <= *w && *w > 0.0 {
                    let s = (t - (t0 - w)) / (2.0 * w);
                    return self
                        .strands
                        .iter()
                        .map(|st| {
                            st.at(t0 - w)
                                .iter()
                                .map(|v| {
                                    let mut r = v.sub(center);
                                    for (e1, e2) in planes {
                                        r = rotate_in_plane(&r, e1, e2, std::f64::consts::PI * s);
                                    }
                                    center.add(&r)
                                })
                                .collect()
                        })
                        .collect();
                }
            }
        }
        let mut out: Vec<Vec<Point>> = self.strands.iter().map(|s| s.at(t)).collect();
        for e in &self.edits {
            if let Edit::Lift { strand, vertices, height, dir, .. } = e {
                let h = height * e.tent(t);
                if h > 0.0 {
                    for &k in vertices {
                        out[*strand][k] = out[*strand][k].offset(dir, h);
                    }
                }
            }
        }
        out
    }

    /// Raw frame polylines (no loops, no pause removal).
    pub fn raw_curves(&self, t: f64) -> Vec<Polyline> {
        self.positioned(t)
            .into_iter()
            .zip(&self.strands)
            .map(|(vs, s)| Polyline::with_params(vs, s.params.clone()).expect("family params are valid"))
            .collect()
    }

    /// Frame at `t`. With `clean`, loops are inserted and pauses rerouted;
    /// reroutes are reported as events.
    pub fn frame(&self, t: f64, clean: bool, tol: &Tolerances) -> Result<(Shape, Vec<MorphEvent>), MorphError> {
        let mut curves: Vec<(Vec<Point>, Vec<f64>)> =
            self.positioned(t).into_iter().zip(&self.strands).map(|(vs, s)| (vs, s.params.clone())).collect();
        let mut events = Vec::new();
        if clean {
            let mut qtips: Vec<&Edit> = self.edits.iter().filter(|e| matches!(e, Edit::Qtip { .. })).collect();
            qtips.sort_by(|a, b| match (a, b) {
                (Edit::Qtip { vertex: x, .. }, Edit::Qtip { vertex: y, .. }) => y.cmp(x),
                _ => std::cmp::Ordering::Equal,
            });
            for e in qtips {
                if let Edit::Qtip { strand, vertex, radius, normal, .. } = e {
                    let rho = radius * e.tent(t);
                    if rho <= 0.0 {
                        continue;
                    }
                    let (vs, ps) = &mut curves[*strand];
                    let k = *vertex;
                    if k == 0 || k + 1 >= vs.len() {
                        continue;
                    }
                    if let Some(a) = vs[k].sub(&vs[k - 1]).normalized() {
                        let pts = qtip_loop(&vs[k], &a, normal, rho);
                        let (u0, u1) = (ps[k], ps[k + 1]);
                        let n = pts.len();
                        for (j, pt) in pts.into_iter().enumerate().rev() {
                            vs.insert(k + 1, pt);
                            ps.insert(k + 1, u0 + (u1 - u0) * 0.5 * (j + 1) as f64 / (n + 1) as f64);
                        }
                    }
                }
            }
        }
        let mut polys = Vec::with_capacity(curves.len());
        for (si, (vs, ps)) in curves.into_iter().enumerate() {
            let c = Polyline::with_params(vs, ps)?;
            if !clean {
                polys.push(c);
                continue;
            }
            let (c, rr) = match reroute_pauses(&c, tol) {
                Ok(v) => v,
                // a constant frame cannot be rerouted; classification reports it
                Err(_) => (c, Vec::new()),
            };
            for r in rr {
                let Reroute { kind, maneuver, at } = r;
                let location = match &self.layout {
                    Layout::Path => Location::Param(at),
                    Layout::Graph { .. } => Location::Id(format!("{}@{at}", self.strands[si].id)),
                };
                events.push(MorphEvent { t, kind, maneuver_applied: maneuver, location, magnitude: 0.0, window: 0.0 });
            }
            polys.push(c);
        }
        let shape = match &self.layout {
            Layout::Path => Shape::Path(polys.pop().expect("one strand")),
            Layout::Graph { graph, isolated } => {
                let mut vp: BTreeMap<String, Point> = BTreeMap::new();
                for (s, c) in self.strands.iter().zip(&polys) {
                    let (a, b) = s.ends.as_ref().expect("graph strands carry ends");
                    vp.insert(a.clone(), c.start().clone());
                    vp.insert(b.clone(), c.end().clone());
                }
                for (v, a, b) in isolated {
                    vp.insert(v.clone(), a.lerp(b, t));
                }
                let ec: BTreeMap<String, Polyline> = self.strands.iter().map(|s| s.id.clone()).zip(polys).collect();
                Shape::Graph(GraphMap::new(graph.clone(), vp, ec, 1e3 * tol.eps_dist.max(1e-9))?)
            }
        };
        Ok((shape, events))
    }
}

/// Builds the frame graph: branch vertices keep their names, topological edges
/// become `t{k}`, circles become loops `c{k}` at vertex `circle{k}`.
pub fn frame_graph(branch: &[String], ends: &[(String, String)], circles: usize) -> MultiGraph {
    let mut vs: Vec<String> = branch.to_vec();
    let mut es: Vec<Edge> = ends.iter().enumerate().map(|(k, (a, b))| Edge { id: format!("t{k}"), from: a.clone(), to: b.clone() }).collect();
    for k in 0..circles {
        let v = format!("circle{k}");
        es.push(Edge { id: format!("c{k}"), from: v.clone(), to: v.clone() });
        vs.push(v);
    }
    MultiGraph::new(vs, es).expect("frame graph is well formed")
}

pub(crate) fn no_maneuver(t: f64, kind: EventKind, location: Location) -> MorphEvent {
    MorphEvent { t, kind, maneuver_applied: Maneuver::None, location, magnitude: 0.0, window: 0.0 }
}
