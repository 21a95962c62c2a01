//! Small fixed-size vector helpers on `[f64; 3]` and complex counterparts.

use num_complex::Complex64 as C64;

pub type Point = [f64; 3];
pub type CVec = [C64; 3];

#[inline]
pub fn add(a: Point, b: Point) -> Point {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn sub(a: Point, b: Point) -> Point {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn scale(s: f64, a: Point) -> Point {
    [s * a[0], s * a[1], s * a[2]]
}

#[inline]
pub fn dot(a: Point, b: Point) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cross(a: Point, b: Point) -> Point {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn norm(a: Point) -> f64 {
    dot(a, a).sqrt()
}

#[inline]
pub fn normalize(a: Point) -> Point {
    scale(1.0 / norm(a), a)
}

#[inline]
pub fn dist(a: Point, b: Point) -> f64 {
    norm(sub(a, b))
}

/// Unit normal `(b-a)x(c-a)/|..|` and area of triangle `abc`.
pub fn triangle_normal_area(a: Point, b: Point, c: Point) -> (Point, f64) {
    let n = cross(sub(b, a), sub(c, a));
    let len = norm(n);
    (scale(1.0 / len, n), 0.5 * len)
}

pub fn centroid(a: Point, b: Point, c: Point) -> Point {
    scale(1.0 / 3.0, add(add(a, b), c))
}

#[inline]
pub fn cdot(a: &CVec, b: &CVec) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn cdot_real(a: &CVec, b: Point) -> C64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

#[inline]
pub fn ccross(a: &CVec, b: &CVec) -> CVec {
    [
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    ]
}

#[inline]
pub fn to_c(a: Point) -> CVec {
    [C64::new(a[0], 0.0), C64::new(a[1], 0.0), C64::new(a[2], 0.0)]
}

#[inline]
pub fn cscale(s: C64, a: &CVec) -> CVec {
    [s * a[0], s * a[1], s * a[2]]
}

#[inline]
pub fn cadd(a: &CVec, b: &CVec) -> CVec {
    [a[0] + b[0], a[1] + b[1], a[2] + b[2]]
}

#[inline]
pub fn csub(a: &CVec, b: &CVec) -> CVec {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}

#[inline]
pub fn cnorm_sqr(a: &CVec) -> f64 {
    a[0].norm_sqr() + a[1].norm_sqr() + a[2].norm_sqr()
}

pub const CZERO3: CVec = [C64 { re: 0.0, im: 0.0 }; 3];
