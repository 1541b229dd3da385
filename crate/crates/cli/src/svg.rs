//! Deterministic SVG strip: one thumbnail per frame, events marked.

use std::fmt::Write;

use frechet_core::{Point, Polyline, Shape};
use frechet_morph::{Location, Maneuver, MorphSequence};

use crate::error::CliError;

const THUMB: f64 = 96.0;
const PAD: f64 = 8.0;
const LABEL: f64 = 14.0;

fn curves(s: &Shape) -> Vec<&Polyline> {
    match s {
        Shape::Path(p) => vec![p],
        Shape::Graph(g) => g.edge_curves().values().collect(),
    }
}

/// Coordinates are printed with fixed precision so output bytes depend only
/// on the input.
fn fmt(x: f64) -> String {
    format!("{x:.3}")
}

fn nearest_frame(seq: &MorphSequence, t: f64) -> usize {
    let mut best = 0;
    for (i, f) in seq.frames.iter().enumerate() {
        if (f.t - t).abs() < (seq.frames[best].t - t).abs() {
            best = i;
        }
    }
    best
}

pub fn emit_svg(seq: &MorphSequence) -> Result<String, CliError> {
    if seq.frames.is_empty() {
        return Err(CliError::Usage("morph has no frames to draw".into()));
    }
    if let Some(f) = seq.frames.iter().find(|f| f.shape.dim() != 2) {
        return Err(CliError::Usage(format!("SVG output needs planar frames, got dimension {}", f.shape.dim())));
    }
    let pts: Vec<&Point> = seq.frames.iter().flat_map(|f| curves(&f.shape).into_iter().flat_map(|c| c.vertices())).collect();
    let (mut x0, mut y0, mut x1, mut y1) = (f64::INFINITY, f64::INFINITY, f64::NEG_INFINITY, f64::NEG_INFINITY);
    for p in &pts {
        let c = p.coords();
        x0 = x0.min(c[0]);
        x1 = x1.max(c[0]);
        y0 = y0.min(c[1]);
        y1 = y1.max(c[1]);
    }
    let span = (x1 - x0).max(y1 - y0).max(1e-12);
    let k = (THUMB - 2.0 * PAD) / span;
    let to_px = |p: &Point, col: usize| {
        let c = p.coords();
        let x = col as f64 * THUMB + PAD + (c[0] - x0) * k;
        let y = LABEL + PAD + (y1 - c[1]) * k;
        (x, y)
    };

    let width = THUMB * seq.frames.len() as f64;
    let height = THUMB + LABEL;
    let mut out = String::new();
    writeln!(out, r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#, fmt(width), fmt(height), fmt(width), fmt(height)).unwrap();
    writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#).unwrap();
    for (i, f) in seq.frames.iter().enumerate() {
        let left = i as f64 * THUMB;
        writeln!(out, r##"<g id="frame-{i}"><rect x="{}" y="{}" width="{}" height="{}" fill="none" stroke="#ccc"/>"##, fmt(left), fmt(LABEL), fmt(THUMB), fmt(THUMB)).unwrap();
        writeln!(out, r#"<text x="{}" y="11" font-size="10" font-family="monospace">t={:.3}</text>"#, fmt(left + 2.0), f.t).unwrap();
        for c in curves(&f.shape) {
            let coords: Vec<String> = c.vertices().iter().map(|v| {
                let (x, y) = to_px(v, i);
                format!("{},{}", fmt(x), fmt(y))
            }).collect();
            writeln!(out, r#"<polyline points="{}" fill="none" stroke="black" stroke-width="1"/>"#, coords.join(" ")).unwrap();
        }
        writeln!(out, "</g>").unwrap();
    }
    for e in &seq.events {
        let i = nearest_frame(seq, e.t);
        let shape = &seq.frames[i].shape;
        let spot = match (&e.location, shape) {
            (Location::Param(u), Shape::Path(p)) => to_px(&p.eval(u.clamp(0.0, 1.0)), i),
            // no single point to mark: pin it to the frame corner
            _ => (i as f64 * THUMB + THUMB - PAD, LABEL + PAD),
        };
        let color = if e.maneuver_applied == Maneuver::None { "red" } else { "blue" };
        writeln!(
            out,
            r#"<circle cx="{}" cy="{}" r="3" fill="none" stroke="{color}" class="event"><title>{:?} {:?} t={:.4}</title></circle>"#,
            fmt(spot.0),
            fmt(spot.1),
            e.kind,
            e.maneuver_applied,
            e.t
        )
        .unwrap();
    }
    out.push_str("</svg>\n");
    Ok(out)
}
