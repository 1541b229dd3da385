//! Membership tests for the continuous (C), immersion (I) and embedding (E) classes.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::contacts::{self_intersections, strands, SelfContact};
use crate::graph::GraphMap;
use crate::point::Point;
use crate::polyline::{Polyline, Tolerances};
use crate::segment::segment_segment;

/// Sum of unit directions below which a turn is reported as a near-reversal warning.
const NEAR_REVERSAL_WARN: f64 = 1e-3;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ClassLabel {
    E,
    I,
    C,
}

impl ClassLabel {
    /// Whether a shape of class `self` also belongs to `target`.
    pub fn satisfies(self, target: ClassLabel) -> bool {
        self <= target
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "C" | "c" => Some(ClassLabel::C),
            "I" | "i" => Some(ClassLabel::I),
            "E" | "e" => Some(ClassLabel::E),
            _ => None,
        }
    }
}

impl fmt::Display for ClassLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ClassLabel::C => "C",
            ClassLabel::I => "I",
            ClassLabel::E => "E",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ClassReport {
    pub class_label: ClassLabel,
    pub pauses: Vec<(f64, f64)>,
    pub backtracks: Vec<f64>,
    pub self_contacts: Vec<SelfContact>,
    pub vertex_violations: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl ClassReport {
    fn assemble(pauses: Vec<(f64, f64)>, backtracks: Vec<f64>, self_contacts: Vec<SelfContact>, vertex_violations: Vec<String>, warnings: Vec<String>) -> Self {
        let class_label = if !pauses.is_empty() || !backtracks.is_empty() || !vertex_violations.is_empty() {
            ClassLabel::C
        } else if !self_contacts.is_empty() {
            ClassLabel::I
        } else {
            ClassLabel::E
        };
        Self { class_label, pauses, backtracks, self_contacts, vertex_violations, warnings }
    }
}

/// Maximal parameter intervals of positive width on which the curve stays put.
pub fn detect_pauses(c: &Polyline, tol: &Tolerances) -> Vec<(f64, f64)> {
    let vs = c.vertices();
    let ps = c.params();
    if vs.len() == 1 {
        return vec![(0.0, 1.0)];
    }
    let mut out = Vec::new();
    let mut k = 0;
    while k < vs.len() {
        let mut e = k;
        while e + 1 < vs.len() && vs[e + 1].distance(&vs[k]) <= tol.eps_dist {
            e += 1;
        }
        if e > k && ps[e] - ps[k] > tol.eps_param {
            out.push((ps[k], ps[e]));
        }
        k = e + 1;
    }
    out
}

fn backtracks_with_warnings(c: &Polyline, tol: &Tolerances) -> (Vec<f64>, Vec<String>) {
    let vs = c.vertices();
    let ps = c.params();
    let segs = strands(c, tol.eps_dist);
    let limit = 2.0 * (0.5 * tol.theta_tol).sin();
    let mut found = Vec::new();
    let mut warnings = Vec::new();
    for w in segs.windows(2) {
        let a = vs[w[0].end].sub(&vs[w[0].start]).normalized();
        let b = vs[w[1].end].sub(&vs[w[1].start]).normalized();
        if let (Some(a), Some(b)) = (a, b) {
            let gap = a.add(&b).norm();
            let at = ps[w[0].end];
            if gap <= limit {
                found.push(at);
            } else if gap <= NEAR_REVERSAL_WARN {
                warnings.push(format!("near-reversal at parameter {at} (direction gap {gap:.3e})"));
            }
        }
    }
    (found, warnings)
}

/// Interior vertices at which the curve turns straight back on itself.
pub fn detect_backtracking(c: &Polyline, tol: &Tolerances) -> Vec<f64> {
    backtracks_with_warnings(c, tol).0
}

pub fn classify_path(c: &Polyline, tol: &Tolerances) -> ClassReport {
    let pauses = detect_pauses(c, tol);
    let (backtracks, warnings) = backtracks_with_warnings(c, tol);
    let contacts = self_intersections(c, tol);
    ClassReport::assemble(pauses, backtracks, contacts, Vec::new(), warnings)
}

/// Contacts between two distinct curves, ignoring touches of shared endpoints.
///
/// `shared` lists pairs `(param on a, param on b)` in `{0,1}²` where the two
/// curves are glued at a common vertex.
fn cross_contacts(a: &Polyline, b: &Polyline, shared: &[(f64, f64)], tol: &Tolerances) -> Vec<SelfContact> {
    let sin_tol = tol.theta_tol.sin().max(1e-15);
    let (va, vb) = (a.vertices(), b.vertices());
    let (pa, pb) = (a.params(), b.params());
    let mut out = Vec::new();
    for sa in strands(a, tol.eps_dist) {
        for sb in strands(b, tol.eps_dist) {
            let hit = segment_segment(va[sa.start].coords(), va[sa.end].coords(), vb[sb.start].coords(), vb[sb.end].coords(), sin_tol);
            if hit.distance > tol.eps_dist {
                continue;
            }
            let u = pa[sa.start] + hit.s * (pa[sa.end] - pa[sa.start]);
            let v = pb[sb.start] + hit.t * (pb[sb.end] - pb[sb.start]);
            let overlap = hit.overlap.filter(|(lo, hi)| hi - lo > 0.0).map(|(lo, hi)| (va[sa.start].lerp(&va[sa.end], lo), va[sa.start].lerp(&va[sa.end], hi)));
            let at_shared = overlap.is_none()
                && shared.iter().any(|&(x, y)| {
                    let px = a.eval(x);
                    va[sa.start].lerp(&va[sa.end], hit.s).distance(&px) <= tol.eps_dist && b.eval(y).distance(&px) <= tol.eps_dist
                });
            if at_shared {
                continue;
            }
            out.push(SelfContact { params: (u, v), point: va[sa.start].lerp(&va[sa.end], hit.s), overlap, edges: None });
        }
    }
    out
}

/// First direction leaving the start of `c`, or `None` if the first segment is degenerate.
fn leaving_direction(c: &Polyline, tol: &Tolerances) -> Option<Point> {
    let vs = c.vertices();
    if vs.len() < 2 || vs[1].distance(&vs[0]) <= tol.eps_dist {
        return None;
    }
    vs[1].sub(&vs[0]).normalized()
}

pub fn classify_graph_map(m: &GraphMap, tol: &Tolerances) -> ClassReport {
    let g = m.graph();
    let edges = g.edges();
    let mut pauses = Vec::new();
    let mut backtracks = Vec::new();
    let mut contacts = Vec::new();
    let mut warnings = Vec::new();
    for e in edges {
        let c = m.edge_curve(&e.id);
        pauses.extend(detect_pauses(c, tol));
        let (bt, w) = backtracks_with_warnings(c, tol);
        backtracks.extend(bt);
        warnings.extend(w.into_iter().map(|s| format!("edge {}: {s}", e.id)));
        for mut sc in self_intersections(c, tol) {
            let closes = e.from == e.to && sc.overlap.is_none() && sc.params.0 <= tol.eps_param && sc.params.1 >= 1.0 - tol.eps_param;
            if !closes {
                sc.edges = Some((e.id.clone(), e.id.clone()));
                contacts.push(sc);
            }
        }
    }
    for i in 0..edges.len() {
        for j in (i + 1)..edges.len() {
            let (ei, ej) = (&edges[i], &edges[j]);
            let mut shared = Vec::new();
            for (x, vx) in [(0.0, &ei.from), (1.0, &ei.to)] {
                for (y, vy) in [(0.0, &ej.from), (1.0, &ej.to)] {
                    if vx == vy {
                        shared.push((x, y));
                    }
                }
            }
            for mut sc in cross_contacts(m.edge_curve(&ei.id), m.edge_curve(&ej.id), &shared, tol) {
                sc.edges = Some((ei.id.clone(), ej.id.clone()));
                contacts.push(sc);
            }
        }
    }
    let limit = 2.0 * (0.5 * tol.theta_tol).sin();
    let mut violations = Vec::new();
    for v in g.vertices() {
        let mut dirs: Vec<Option<Point>> = Vec::new();
        for e in edges {
            let c = m.edge_curve(&e.id);
            if &e.from == v {
                dirs.push(leaving_direction(c, tol));
            }
            if &e.to == v {
                dirs.push(leaving_direction(&c.reverse(), tol));
            }
        }
        let degenerate = dirs.iter().any(|d| d.is_none());
        let mut repeated = false;
        for a in 0..dirs.len() {
            for b in (a + 1)..dirs.len() {
                if let (Some(x), Some(y)) = (&dirs[a], &dirs[b]) {
                    if x.sub(y).norm() <= limit {
                        repeated = true;
                    }
                }
            }
        }
        if degenerate || repeated {
            violations.push(v.clone());
        }
    }
    ClassReport::assemble(pauses, backtracks, contacts, violations, warnings)
}
