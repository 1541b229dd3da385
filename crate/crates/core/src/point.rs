use serde::{Deserialize, Serialize};

use crate::error::GeometryError;

/// A point in ℝⁿ.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Point {
    coords: Vec<f64>,
}

impl Point {
    pub fn new(coords: Vec<f64>) -> Result<Self, GeometryError> {
        if coords.is_empty() {
            return Err(GeometryError::ZeroDimension);
        }
        if coords.iter().any(|c| !c.is_finite()) {
            return Err(GeometryError::NonFinite);
        }
        Ok(Self { coords })
    }

    /// Builds a point without validation. Callers guarantee finiteness.
    pub(crate) fn from_vec(coords: Vec<f64>) -> Self {
        Self { coords }
    }

    pub fn origin(dim: usize) -> Self {
        Self { coords: vec![0.0; dim] }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn distance(&self, other: &Point) -> f64 {
        dist(&self.coords, &other.coords)
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::from_vec(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::from_vec(self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect())
    }

    pub fn scale(&self, k: f64) -> Point {
        Point::from_vec(self.coords.iter().map(|a| a * k).collect())
    }

    /// `self + k * dir`
    pub fn offset(&self, dir: &Point, k: f64) -> Point {
        Point::from_vec(self.coords.iter().zip(&dir.coords).map(|(a, d)| a + k * d).collect())
    }

    pub fn lerp(&self, other: &Point, t: f64) -> Point {
        Point::from_vec(lerp(&self.coords, &other.coords, t))
    }

    pub fn dot(&self, other: &Point) -> f64 {
        dot(&self.coords, &other.coords)
    }

    pub fn norm(&self) -> f64 {
        dot(&self.coords, &self.coords).sqrt()
    }

    /// Unit vector in the same direction, or `None` for a (near) zero vector.
    pub fn normalized(&self) -> Option<Point> {
        let n = self.norm();
        if n <= f64::MIN_POSITIVE {
            None
        } else {
            Some(self.scale(1.0 / n))
        }
    }

    /// Zero-pads (or keeps) the coordinates to `dim` entries.
    pub fn extended(&self, dim: usize) -> Point {
        let mut c = self.coords.clone();
        c.resize(dim.max(c.len()), 0.0);
        Point::from_vec(c)
    }

    pub fn basis(dim: usize, axis: usize) -> Point {
        let mut c = vec![0.0; dim];
        c[axis] = 1.0;
        Point::from_vec(c)
    }
}

impl From<Point> for Vec<f64> {
    fn from(p: Point) -> Self {
        p.coords
    }
}

pub(crate) fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

pub(crate) fn lerp(a: &[f64], b: &[f64], t: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect()
}

/// Some unit vector orthogonal to `dir` (which need not be normalized).
///
/// Deterministic: Gram-Schmidt of the coordinate axes against `dir`, taking the
/// axis with the largest residual. Returns `None` in dimension 1.
pub fn perpendicular(dir: &Point) -> Option<Point> {
    let n = dir.dim();
    if n < 2 {
        return None;
    }
    let d = dir.normalized()?;
    let mut best: Option<(f64, Point)> = None;
    for axis in 0..n {
        let e = Point::basis(n, axis);
        let r = e.offset(&d, -e.dot(&d));
        let len = r.norm();
        if best.as_ref().is_none_or(|(b, _)| len > *b + 1e-12) {
            best = Some((len, r));
        }
    }
    best.and_then(|(_, r)| r.normalized())
}

/// Rotation of `v` by `angle` inside the plane spanned by the orthonormal pair
/// `(e1, e2)`. Components orthogonal to the plane are untouched.
pub fn rotate_in_plane(v: &Point, e1: &Point, e2: &Point, angle: f64) -> Point {
    let a = v.dot(e1);
    let b = v.dot(e2);
    let (s, c) = angle.sin_cos();
    let na = c * a - s * b;
    let nb = s * a + c * b;
    v.offset(e1, na - a).offset(e2, nb - b)
}
