//! Small helpers on `[T; 3]`.

use crate::precision::Real;

pub type Point3 = [f64; 3];

#[inline]
pub fn to_real<T: Real>(p: &Point3) -> [T; 3] {
    [T::from_f64(p[0]), T::from_f64(p[1]), T::from_f64(p[2])]
}

#[inline]
pub fn sub<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn add<T: Real>(a: [T; 3], b: [T; 3]) -> [T; 3] {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn scale<T: Real>(s: T, a: [T; 3]) -> [T; 3] {
    [s * a[0], s * a[1], s * a[2]]
}

#[inline]
pub fn dot<T: Real>(a: [T; 3], b: [T; 3]) -> T {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn norm<T: Real>(a: [T; 3]) -> T {
    dot(a, a).sqrt()
}

pub fn cross(a: Point3, b: Point3) -> Point3 {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

/// Max-norm distance, the metric used for the coincidence test.
pub fn max_dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

pub fn is_finite(p: &Point3) -> bool {
    p.iter().all(|x| x.is_finite())
}

/// Largest pairwise Euclidean distance.
pub fn diameter(points: &[Point3]) -> f64 {
    let mut d: f64 = 0.0;
    for (i, a) in points.iter().enumerate() {
        for b in &points[i + 1..] {
            d = d.max(norm(sub(*a, *b)));
        }
    }
    d
}

pub fn max_norm(points: &[Point3]) -> f64 {
    points.iter().map(|p| norm(*p)).fold(0.0, f64::max)
}

/// Applies a 3×3 matrix (row-major) to a point.
pub fn mat_apply(m: &[[f64; 3]; 3], p: Point3) -> Point3 {
    [dot(m[0], p), dot(m[1], p), dot(m[2], p)]
}
