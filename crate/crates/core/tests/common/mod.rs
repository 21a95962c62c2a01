//! Independent oracles shared by integration tests.
#![allow(dead_code)]

use num_complex::Complex64 as C64;

pub type P = [f64; 3];

fn sub(a: P, b: P) -> P {
    [a[0] - b[0], a[1] - b[1], a[2] - b[2]]
}
fn mid(a: P, b: P) -> P {
    [(a[0] + b[0]) / 2.0, (a[1] + b[1]) / 2.0, (a[2] + b[2]) / 2.0]
}
fn norm(a: P) -> f64 {
    (a[0] * a[0] + a[1] * a[1] + a[2] * a[2]).sqrt()
}
fn area(t: &[P; 3]) -> f64 {
    let u = sub(t[1], t[0]);
    let v = sub(t[2], t[0]);
    let c = [u[1] * v[2] - u[2] * v[1], u[2] * v[0] - u[0] * v[2], u[0] * v[1] - u[1] * v[0]];
    0.5 * norm(c)
}

/// Tabulated 6-point Gauss–Legendre rule on `[-1, 1]`.
fn legendre6() -> ([f64; 6], [f64; 6]) {
    let x = [
        -0.932_469_514_203_152_0,
        -0.661_209_386_466_264_5,
        -0.238_619_186_083_196_9,
        0.238_619_186_083_196_9,
        0.661_209_386_466_264_5,
        0.932_469_514_203_152_0,
    ];
    let w = [
        0.171_324_492_379_170_3,
        0.360_761_573_048_138_6,
        0.467_913_934_572_691_0,
        0.467_913_934_572_691_0,
        0.360_761_573_048_138_6,
        0.171_324_492_379_170_3,
    ];
    (x, w)
}

/// Physical points and weights of a product rule on triangle `t`.
pub fn triangle_points(t: &[P; 3]) -> Vec<(P, f64)> {
    let (x, w) = legendre6();
    let a = area(t);
    let mut out = Vec::with_capacity(36);
    for i in 0..6 {
        let u = 0.5 * (x[i] + 1.0);
        for j in 0..6 {
            let v = 0.5 * (x[j] + 1.0) * (1.0 - u);
            let weight = 0.25 * w[i] * w[j] * (1.0 - u) * 2.0 * a;
            let p = [
                t[0][0] + u * (t[1][0] - t[0][0]) + v * (t[2][0] - t[0][0]),
                t[0][1] + u * (t[1][1] - t[0][1]) + v * (t[2][1] - t[0][1]),
                t[0][2] + u * (t[1][2] - t[0][2]) + v * (t[2][2] - t[0][2]),
            ];
            out.push((p, weight));
        }
    }
    out
}


fn children(t: &[P; 3]) -> [[P; 3]; 4] {
    let m01 = mid(t[0], t[1]);
    let m12 = mid(t[1], t[2]);
    let m20 = mid(t[2], t[0]);
    [[t[0], m01, m20], [m01, t[1], m12], [m20, m12, t[2]], [m01, m12, m20]]
}

fn dot(a: P, b: P) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}
fn cross(a: P, b: P) -> P {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Composite Gauss–Legendre points on `[0, 1]` graded geometrically towards 0.
fn graded_01(levels: usize) -> Vec<(f64, f64)> {
    let (x, w) = legendre6();
    let mut out = Vec::new();
    let mut hi = 1.0;
    for l in 0..=levels {
        let lo = if l == levels { 0.0 } else { hi * 0.25 };
        for i in 0..6 {
            out.push((lo + (hi - lo) * 0.5 * (x[i] + 1.0), 0.5 * (hi - lo) * w[i]));
        }
        hi = lo;
    }
    out
}

/// `∫_t s(x, y) / |x - y| dy` by splitting `t` into three signed triangles with
/// apex at the projection of `x` and integrating in collapsed polar coordinates.
pub fn inner_singular<F: Fn(P, P) -> C64>(x: P, t: &[P; 3], s: &F) -> C64 {
    let n = cross(sub(t[1], t[0]), sub(t[2], t[0]));
    let nn = norm(n);
    let n = [n[0] / nn, n[1] / nn, n[2] / nn];
    let d = dot(sub(x, t[0]), n);
    let xp = sub(x, [d * n[0], d * n[1], d * n[2]]);
    let us = graded_01(14);
    let mut total = C64::new(0.0, 0.0);
    for e in 0..3 {
        let a = sub(t[e], xp);
        let b = sub(t[(e + 1) % 3], xp);
        let jac = dot(cross(a, b), n);
        if jac.abs() < 1e-14 * nn {
            continue;
        }
        // Grade the edge parameter towards the foot of the perpendicular from xp.
        let ab = sub(b, a);
        let foot = (-dot(a, ab) / dot(ab, ab)).clamp(0.0, 1.0);
        let mut vs = Vec::new();
        for (v, w) in graded_01(14) {
            if foot > 0.0 {
                vs.push((foot - foot * v, foot * w));
            }
            if foot < 1.0 {
                vs.push((foot + (1.0 - foot) * v, (1.0 - foot) * w));
            }
        }
        for &(v, wv) in &vs {
            let wdir = [a[0] + v * (b[0] - a[0]), a[1] + v * (b[1] - a[1]), a[2] + v * (b[2] - a[2])];
            for &(u, wu) in &us {
                let y = [xp[0] + u * wdir[0], xp[1] + u * wdir[1], xp[2] + u * wdir[2]];
                let r = norm(sub(x, y));
                total += s(x, y) * (wu * wv * u * jac / r);
            }
        }
    }
    total
}

/// `∫_a ∫_b s(x, y) / |x - y| dy dx` for touching or overlapping triangles:
/// polar inner integration, uniform outer subdivision at `outer_levels` and
/// one level finer, Richardson-extrapolated (the outer error is O(h^2)).
pub fn singular_pair_oracle<F: Fn(P, P) -> C64>(a: &[P; 3], b: &[P; 3], s: F, outer_levels: usize) -> C64 {
    let coarse = outer_sum(a, b, &s, outer_levels);
    let fine = outer_sum(a, b, &s, outer_levels + 1);
    (fine * 4.0 - coarse) / 3.0
}

fn outer_sum<F: Fn(P, P) -> C64>(a: &[P; 3], b: &[P; 3], s: &F, outer_levels: usize) -> C64 {
    let mut tris = vec![*a];
    for _ in 0..outer_levels {
        tris = tris.iter().flat_map(|t| children(t)).collect();
    }
    let mut total = C64::new(0.0, 0.0);
    for t in &tris {
        for (x, wx) in triangle_points(t) {
            total += inner_singular(x, b, s) * wx;
        }
    }
    total
}

/// Plain product-rule double integral for well-separated triangles, refined
/// uniformly `levels` times on both sides.
pub fn regular_pair<F: Fn(P, P) -> C64>(a: &[P; 3], b: &[P; 3], f: F, levels: usize) -> C64 {
    let mut ta = vec![*a];
    let mut tb = vec![*b];
    for _ in 0..levels {
        ta = ta.iter().flat_map(|t| children(t)).collect();
        tb = tb.iter().flat_map(|t| children(t)).collect();
    }
    let pb: Vec<(P, f64)> = tb.iter().flat_map(|t| triangle_points(t)).collect();
    let mut total = C64::new(0.0, 0.0);
    for t in &ta {
        for (x, wx) in triangle_points(t) {
            for (y, wy) in &pb {
                total += f(x, *y) * (wx * wy);
            }
        }
    }
    total
}

/// 6-point Gauss–Legendre rule mapped to `[0, 1]`.
pub fn legendre6_01() -> (Vec<f64>, Vec<f64>) {
    let (x, w) = legendre6();
    (x.iter().map(|x| 0.5 * (x + 1.0)).collect(), w.iter().map(|w| 0.5 * w).collect())
}
