use serde::{Deserialize, Serialize};

use crate::error::GeometryError;
use crate::point::Point;

/// Numerical tolerances shared by every engine.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    /// Distance-query tolerance.
    pub eps_dist: f64,
    /// Parameter tolerance.
    pub eps_param: f64,
    /// Collinearity tolerance in radians.
    pub theta_tol: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self { eps_dist: 1e-6, eps_param: 1e-9, theta_tol: 1e-9 }
    }
}

impl Tolerances {
    pub fn with_eps_dist(eps_dist: f64) -> Self {
        Self { eps_dist, ..Self::default() }
    }

    pub fn validate(&self) -> Result<(), GeometryError> {
        for (name, v) in [("eps_dist", self.eps_dist), ("eps_param", self.eps_param), ("theta_tol", self.theta_tol)] {
            if !v.is_finite() || v < 0.0 {
                return Err(GeometryError::BadTolerance(format!("{name} = {v}")));
            }
        }
        Ok(())
    }
}

/// A parameterized polygonal curve `[0,1] → ℝⁿ`.
///
/// `params[k]` is the parameter at which the curve passes `vertices[k]`. A
/// single-vertex polyline is the constant map and carries `params == [0.0]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    vertices: Vec<Point>,
    params: Vec<f64>,
}

/// Wire format: `{"dim": n, "vertices": [[..], ..], "params": [..]}`.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveJson {
    pub dim: usize,
    pub vertices: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub params: Option<Vec<f64>>,
}

impl Polyline {
    /// Chord-length parameterization, with a uniform fallback when the curve
    /// has zero total length.
    pub fn new(vertices: Vec<Point>) -> Result<Self, GeometryError> {
        check_vertices(&vertices)?;
        let params = chord_params(&vertices);
        Ok(Self { vertices, params })
    }

    pub fn with_params(vertices: Vec<Point>, params: Vec<f64>) -> Result<Self, GeometryError> {
        check_vertices(&vertices)?;
        if params.len() != vertices.len() {
            return Err(GeometryError::BadParams(format!(
                "{} params for {} vertices",
                params.len(),
                vertices.len()
            )));
        }
        if params.iter().any(|t| !t.is_finite()) {
            return Err(GeometryError::BadParams("non-finite parameter".into()));
        }
        if vertices.len() == 1 {
            if params[0] != 0.0 {
                return Err(GeometryError::BadParams("single vertex must sit at 0".into()));
            }
        } else {
            if params[0] != 0.0 || *params.last().unwrap() != 1.0 {
                return Err(GeometryError::BadParams("params must run from 0 to 1".into()));
            }
            if params.windows(2).any(|w| w[1] <= w[0]) {
                return Err(GeometryError::BadParams("params must be strictly increasing".into()));
            }
        }
        Ok(Self { vertices, params })
    }

    /// Convenience constructor from raw coordinate rows.
    pub fn from_coords(rows: &[&[f64]]) -> Result<Self, GeometryError> {
        let pts = rows.iter().map(|r| Point::new(r.to_vec())).collect::<Result<Vec<_>, _>>()?;
        Self::new(pts)
    }

    pub fn from_json(json: &CurveJson) -> Result<Self, GeometryError> {
        let mut pts = Vec::with_capacity(json.vertices.len());
        for row in &json.vertices {
            if row.len() != json.dim {
                return Err(GeometryError::DimensionMismatch { left: json.dim, right: row.len() });
            }
            pts.push(Point::new(row.clone())?);
        }
        match &json.params {
            Some(ps) => Self::with_params(pts, ps.clone()),
            None => Self::new(pts),
        }
    }

    pub fn to_json(&self) -> CurveJson {
        CurveJson {
            dim: self.dim(),
            vertices: self.vertices.iter().map(|p| p.coords().to_vec()).collect(),
            params: Some(self.params.clone()),
        }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.vertices[0].dim()
    }

    pub fn start(&self) -> &Point {
        &self.vertices[0]
    }

    pub fn end(&self) -> &Point {
        self.vertices.last().unwrap()
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn segment_length(&self, i: usize) -> f64 {
        self.vertices[i].distance(&self.vertices[i + 1])
    }

    pub fn max_segment_length(&self) -> f64 {
        (0..self.segment_count()).map(|i| self.segment_length(i)).fold(0.0, f64::max)
    }

    pub fn length(&self) -> f64 {
        (0..self.segment_count()).map(|i| self.segment_length(i)).sum()
    }

    /// Largest distance between any two vertices (the image diameter).
    pub fn diameter(&self) -> f64 {
        let mut d: f64 = 0.0;
        for (i, a) in self.vertices.iter().enumerate() {
            for b in &self.vertices[i + 1..] {
                d = d.max(a.distance(b));
            }
        }
        d
    }

    /// Segment index `i` and local coordinate in `[0,1]` for parameter `u`.
    pub fn locate(&self, u: f64) -> (usize, f64) {
        if self.vertices.len() == 1 {
            return (0, 0.0);
        }
        let u = u.clamp(0.0, 1.0);
        let i = match self.params.binary_search_by(|p| p.partial_cmp(&u).unwrap()) {
            Ok(k) => k.min(self.segment_count() - 1),
            Err(k) => k.saturating_sub(1).min(self.segment_count() - 1),
        };
        let (a, b) = (self.params[i], self.params[i + 1]);
        (i, ((u - a) / (b - a)).clamp(0.0, 1.0))
    }

    /// The curve point at parameter `u`.
    pub fn eval(&self, u: f64) -> Point {
        if self.vertices.len() == 1 {
            return self.vertices[0].clone();
        }
        let (i, s) = self.locate(u);
        self.vertices[i].lerp(&self.vertices[i + 1], s)
    }

    /// Global parameter of local coordinate `s` on segment `i`.
    pub fn global_param(&self, i: usize, s: f64) -> f64 {
        if self.vertices.len() == 1 {
            return 0.0;
        }
        let (a, b) = (self.params[i], self.params[i + 1]);
        a + s * (b - a)
    }

    pub fn reverse(&self) -> Polyline {
        let vertices: Vec<Point> = self.vertices.iter().rev().cloned().collect();
        let params: Vec<f64> = if self.vertices.len() == 1 {
            vec![0.0]
        } else {
            self.params.iter().rev().map(|t| 1.0 - t).collect()
        };
        Polyline { vertices, params }
    }

    /// Sub-curve on `[a, b]`, renormalized to `[0,1]`.
    pub fn restrict(&self, a: f64, b: f64) -> Result<Polyline, GeometryError> {
        if !(a.is_finite() && b.is_finite()) || a < 0.0 || b > 1.0 || a >= b {
            return Err(GeometryError::InvalidInterval { a, b });
        }
        if self.vertices.len() == 1 {
            return Ok(self.clone());
        }
        let mut vs = vec![self.eval(a)];
        let mut ps = vec![a];
        for (v, &t) in self.vertices.iter().zip(&self.params) {
            if t > a && t < b {
                vs.push(v.clone());
                ps.push(t);
            }
        }
        vs.push(self.eval(b));
        ps.push(b);
        let span = b - a;
        let mut params: Vec<f64> = ps.iter().map(|t| (t - a) / span).collect();
        params[0] = 0.0;
        *params.last_mut().unwrap() = 1.0;
        dedupe_params(&mut vs, &mut params);
        Polyline::with_params(vs, params)
    }

    /// Double-speed concatenation `self # other`.
    pub fn concat(&self, other: &Polyline, eps_dist: f64) -> Result<Polyline, GeometryError> {
        check_dims(self, other)?;
        let gap = self.end().distance(other.start());
        if gap > eps_dist {
            return Err(GeometryError::EndpointMismatch { gap });
        }
        let mut vs = Vec::with_capacity(self.len() + other.len());
        let mut ps = Vec::with_capacity(self.len() + other.len());
        if self.len() == 1 {
            vs.push(self.vertices[0].clone());
            ps.push(0.0);
        } else {
            for (v, t) in self.vertices.iter().zip(&self.params) {
                vs.push(v.clone());
                ps.push(0.5 * t);
            }
        }
        if other.len() == 1 {
            vs.push(other.vertices[0].clone());
            ps.push(1.0);
        } else {
            if self.len() == 1 {
                vs.push(other.vertices[0].clone());
                ps.push(0.5);
            }
            // The joint vertex is shared.
            for (v, t) in other.vertices.iter().zip(&other.params).skip(1) {
                vs.push(v.clone());
                ps.push(0.5 + 0.5 * t);
            }
        }
        Polyline::with_params(vs, ps)
    }

    /// Applies `f` to every vertex, keeping parameters.
    pub fn map_points(&self, f: impl Fn(&Point) -> Point) -> Polyline {
        Polyline { vertices: self.vertices.iter().map(f).collect(), params: self.params.clone() }
    }

    /// Zero-extends every vertex to dimension `dim`.
    pub fn extended(&self, dim: usize) -> Polyline {
        self.map_points(|p| p.extended(dim))
    }

    /// Same vertices with the chord-length parameterization.
    pub fn canonical(&self) -> Polyline {
        Polyline { vertices: self.vertices.clone(), params: chord_params(&self.vertices) }
    }

    /// Reparameterizes by a monotone piecewise-linear homeomorphism of `[0,1]`
    /// given by its breakpoints `(x_k, h(x_k))`; the result is `self ∘ h`.
    pub fn compose(&self, h: &[(f64, f64)]) -> Result<Polyline, GeometryError> {
        if h.len() < 2 || h[0] != (0.0, 0.0) || *h.last().unwrap() != (1.0, 1.0) {
            return Err(GeometryError::BadParams("h must run from (0,0) to (1,1)".into()));
        }
        if h.windows(2).any(|w| w[1].0 <= w[0].0 || w[1].1 <= w[0].1) {
            return Err(GeometryError::BadParams("h must be strictly increasing".into()));
        }
        if self.len() == 1 {
            return Ok(self.clone());
        }
        // Vertices of self∘h sit at h⁻¹(params) plus the breakpoints of h.
        let inv = |y: f64| -> f64 {
            let k = h.windows(2).position(|w| y <= w[1].1).unwrap_or(h.len() - 2);
            let (x0, y0) = h[k];
            let (x1, y1) = h[k + 1];
            x0 + (y - y0) * (x1 - x0) / (y1 - y0)
        };
        let mut xs: Vec<f64> = h.iter().map(|&(x, _)| x).collect();
        xs.extend(self.params.iter().map(|&t| inv(t)));
        xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        xs.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
        let fwd = |x: f64| -> f64 {
            let k = h.windows(2).position(|w| x <= w[1].0).unwrap_or(h.len() - 2);
            let (x0, y0) = h[k];
            let (x1, y1) = h[k + 1];
            y0 + (x - x0) * (y1 - y0) / (x1 - x0)
        };
        let mut vs: Vec<Point> = xs.iter().map(|&x| self.eval(fwd(x))).collect();
        let mut ps = xs;
        ps[0] = 0.0;
        *ps.last_mut().unwrap() = 1.0;
        dedupe_params(&mut vs, &mut ps);
        Polyline::with_params(vs, ps)
    }

    /// Resamples so that no segment is longer than `max_len` (vertices kept).
    pub fn refined(&self, max_len: f64) -> Polyline {
        if self.len() < 2 || max_len <= 0.0 {
            return self.clone();
        }
        let mut vs = vec![self.vertices[0].clone()];
        let mut ps = vec![0.0];
        for i in 0..self.segment_count() {
            let len = self.segment_length(i);
            let pieces = ((len / max_len).ceil() as usize).clamp(1, 1 << 16);
            for k in 1..=pieces {
                let s = k as f64 / pieces as f64;
                vs.push(self.vertices[i].lerp(&self.vertices[i + 1], s));
                ps.push(self.global_param(i, s));
            }
        }
        *ps.last_mut().unwrap() = 1.0;
        dedupe_params(&mut vs, &mut ps);
        Polyline { vertices: vs, params: ps }
    }
}

impl Serialize for Polyline {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Polyline {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let json = CurveJson::deserialize(d)?;
        Polyline::from_json(&json).map_err(serde::de::Error::custom)
    }
}

pub(crate) fn check_dims(a: &Polyline, b: &Polyline) -> Result<(), GeometryError> {
    if a.dim() != b.dim() {
        Err(GeometryError::DimensionMismatch { left: a.dim(), right: b.dim() })
    } else {
        Ok(())
    }
}

fn check_vertices(vertices: &[Point]) -> Result<(), GeometryError> {
    let first = vertices.first().ok_or(GeometryError::Empty)?;
    for v in vertices {
        if v.dim() != first.dim() {
            return Err(GeometryError::DimensionMismatch { left: first.dim(), right: v.dim() });
        }
    }
    Ok(())
}

fn chord_params(vertices: &[Point]) -> Vec<f64> {
    let n = vertices.len();
    if n == 1 {
        return vec![0.0];
    }
    let mut acc = vec![0.0; n];
    for i in 1..n {
        acc[i] = acc[i - 1] + vertices[i - 1].distance(&vertices[i]);
    }
    let total = acc[n - 1];
    let strictly = acc.windows(2).all(|w| w[1] > w[0]);
    if total > 0.0 && strictly {
        let mut ps: Vec<f64> = acc.iter().map(|a| a / total).collect();
        ps[n - 1] = 1.0;
        ps
    } else {
        // Repeated vertices would give zero-width parameter spans; fall back
        // to a blend of chord length and uniform spacing.
        let uni: Vec<f64> = (0..n).map(|k| k as f64 / (n - 1) as f64).collect();
        if total > 0.0 {
            let mut ps: Vec<f64> = acc.iter().zip(&uni).map(|(a, u)| 0.5 * a / total + 0.5 * u).collect();
            ps[n - 1] = 1.0;
            ps
        } else {
            uni
        }
    }
}

/// Removes entries whose parameter repeats (zero-width spans), keeping the last.
fn dedupe_params(vs: &mut Vec<Point>, ps: &mut Vec<f64>) {
    let mut k = 1;
    while k < ps.len() {
        if ps[k] <= ps[k - 1] {
            if k == ps.len() - 1 {
                ps.remove(k - 1);
                vs.remove(k - 1);
            } else {
                ps.remove(k);
                vs.remove(k);
            }
        } else {
            k += 1;
        }
    }
    if ps.len() == 1 {
        ps[0] = 0.0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pl(rows: &[&[f64]]) -> Polyline {
        Polyline::from_coords(rows).unwrap()
    }

    #[test]
    fn length_examples() {
        assert_eq!(pl(&[&[0.0, 0.0], &[3.0, 4.0]]).length(), 5.0);
        assert_eq!(pl(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]).length(), 2.0);
        assert_eq!(pl(&[&[0.0, 0.0]]).length(), 0.0);
    }

    #[test]
    fn reverse_examples() {
        let c = pl(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let r = c.reverse();
        assert_eq!(r.vertices()[0].coords(), &[1.0, 0.0]);
        assert_eq!(r.vertices()[1].coords(), &[0.0, 0.0]);
        let c3 = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 3.0]]);
        assert_eq!(c3.reverse().reverse(), c3);
        let single = pl(&[&[2.0, 2.0]]);
        assert_eq!(single.reverse(), single);
    }

    #[test]
    fn restrict_examples() {
        let c = pl(&[&[0.0, 0.0], &[2.0, 0.0]]);
        let r = c.restrict(0.5, 1.0).unwrap();
        assert_eq!(r.len(), 2);
        assert!(r.start().distance(&Point::new(vec![1.0, 0.0]).unwrap()) < 1e-15);
        assert_eq!(c.restrict(0.0, 1.0).unwrap(), c);
        assert!(c.restrict(0.6, 0.6).is_err());
        assert!(c.restrict(0.7, 0.2).is_err());
    }

    #[test]
    fn restrict_across_vertex_matches_dense_sampling() {
        let c = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 2.0]]);
        let (a, b) = (0.1, 0.8);
        let r = c.restrict(a, b).unwrap();
        assert_eq!(r.len(), 3, "interior vertex kept");
        // oracle: dense sampling of the original parameterization
        for k in 0..=200 {
            let x = k as f64 / 200.0;
            let expect = c.eval(a + x * (b - a));
            assert!(r.eval(x).distance(&expect) < 1e-12);
        }
    }

    #[test]
    fn concat_examples() {
        let a = pl(&[&[0.0, 0.0], &[1.0, 0.0]]);
        let b = pl(&[&[1.0, 0.0], &[1.0, 1.0]]);
        let c = a.concat(&b, 1e-9).unwrap();
        assert_eq!(c.len(), 3);
        assert_eq!(c.params(), &[0.0, 0.5, 1.0]);
        assert_eq!(c.length(), a.length() + b.length());
        let loop_ = a.concat(&a.reverse(), 1e-9).unwrap();
        assert_eq!(loop_.start(), loop_.end());
        assert!(matches!(b.concat(&b, 1e-9), Err(GeometryError::EndpointMismatch { .. })));
    }

    #[test]
    fn params_validation() {
        let v = vec![Point::new(vec![0.0]).unwrap(), Point::new(vec![1.0]).unwrap()];
        assert!(Polyline::with_params(v.clone(), vec![0.0, 0.5]).is_err());
        assert!(Polyline::with_params(v.clone(), vec![0.0, 1.0]).is_ok());
        // pause: repeated vertex over a positive parameter span
        let pause = vec![v[0].clone(), v[0].clone(), v[1].clone()];
        assert!(Polyline::with_params(pause, vec![0.0, 0.5, 1.0]).is_ok());
    }

    #[test]
    fn degenerate_curve_gets_uniform_params() {
        let c = pl(&[&[1.0, 1.0], &[1.0, 1.0], &[1.0, 1.0]]);
        assert_eq!(c.params(), &[0.0, 0.5, 1.0]);
    }

    #[test]
    fn compose_keeps_image() {
        let c = pl(&[&[0.0, 0.0], &[1.0, 0.0], &[1.0, 1.0]]);
        let h = [(0.0, 0.0), (0.3, 0.7), (1.0, 1.0)];
        let ch = c.compose(&h).unwrap();
        for k in 0..=50 {
            let x = k as f64 / 50.0;
            let y = if x <= 0.3 { x * 0.7 / 0.3 } else { 0.7 + (x - 0.3) * 0.3 / 0.7 };
            assert!(ch.eval(x).distance(&c.eval(y)) < 1e-12);
        }
    }

    #[test]
    fn json_roundtrip() {
        let c = pl(&[&[0.0, 0.0], &[1.0, 2.0]]);
        let s = serde_json::to_string(&c).unwrap();
        let back: Polyline = serde_json::from_str(&s).unwrap();
        assert_eq!(back, c);
        let bad = r#"{"dim": 2, "vertices": [[0, 0], [1]]}"#;
        assert!(serde_json::from_str::<Polyline>(bad).is_err());
    }
}
