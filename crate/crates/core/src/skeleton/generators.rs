//! Skeleton meshes for spheres (optionally split at `x = 0`) and for
//! box-partitioned geometries (halved cuboid, concentric cuboids, block grids).

use std::collections::HashMap;
use std::f64::consts::PI;

use super::{InterfaceTag, SkeletonError, SkeletonMesh};
use crate::geom::{self, Point};

/// Sphere mesh with maximum edge length at most `1.3 h`.
///
/// Uses the coarsest subdivided-octahedron mesh meeting the bound. With
/// `split`, the plane `x = 0` divides the ball into `Ω_1 = {x < 0}` and
/// `Ω_2 = {x > 0}` with a triangulated disk as interface `(1, 2)`.
pub fn gen_sphere(radius: f64, h: f64, split: bool) -> Result<SkeletonMesh, SkeletonError> {
    if !(radius > 0.0 && h > 0.0) {
        return Err(SkeletonError::InvalidParameter("radius and h must be positive".into()));
    }
    if h > radius {
        return Err(SkeletonError::InvalidParameter(format!(
            "mesh size {h} exceeds radius {radius}"
        )));
    }
    let bound = 1.3 * h;
    let mut n = ((PI * radius / (2.0 * bound)).ceil() as usize).max(1);
    loop {
        let mesh = gen_octasphere(radius, n, split);
        if mesh.max_edge_length() <= bound {
            return Ok(mesh);
        }
        n += 1;
    }
}

/// Octahedron subdivided `n` times per edge, projected to the sphere and smoothed.
/// The great circle `x = 0` is a chain of `4n` uniformly spaced vertices.
pub fn gen_octasphere(radius: f64, n: usize, split: bool) -> SkeletonMesh {
    assert!(n >= 1);
    let ni = n as i64;
    let mut index: HashMap<[i64; 3], usize> = HashMap::new();
    let mut keys: Vec<[i64; 3]> = Vec::new();
    let mut triangles = Vec::new();
    let mut id = |k: [i64; 3], keys: &mut Vec<[i64; 3]>| {
        *index.entry(k).or_insert_with(|| {
            keys.push(k);
            keys.len() - 1
        })
    };
    for sx in [-1i64, 1] {
        for sy in [-1i64, 1] {
            for sz in [-1i64, 1] {
                let p = |a: i64, b: i64| [sx * a, sy * b, sz * (ni - a - b)];
                for a in 0..ni {
                    for b in 0..(ni - a) {
                        let t = [
                            id(p(a, b), &mut keys),
                            id(p(a + 1, b), &mut keys),
                            id(p(a, b + 1), &mut keys),
                        ];
                        triangles.push(t);
                        if a + b + 2 <= ni {
                            triangles.push([
                                id(p(a + 1, b), &mut keys),
                                id(p(a + 1, b + 1), &mut keys),
                                id(p(a, b + 1), &mut keys),
                            ]);
                        }
                    }
                }
            }
        }
    }
    let mut vertices: Vec<Point> = keys
        .iter()
        .map(|k| geom::normalize([k[0] as f64, k[1] as f64, k[2] as f64]))
        .collect();
    // Uniform angular spacing on the x = 0 circle.
    let mut fixed = vec![false; vertices.len()];
    let mut equator: Vec<(usize, usize)> = Vec::new();
    for (v, k) in keys.iter().enumerate() {
        if k[0] == 0 {
            let (y, z) = (k[1], k[2]);
            let s = if y > 0 && z >= 0 {
                z
            } else if y <= 0 && z > 0 {
                ni - y
            } else if y < 0 && z <= 0 {
                2 * ni - z
            } else {
                3 * ni + y
            } as usize;
            let phi = 2.0 * PI * s as f64 / (4 * n) as f64;
            vertices[v] = [0.0, phi.cos(), phi.sin()];
            fixed[v] = true;
            equator.push((s, v));
        }
    }
    equator.sort_unstable();
    smooth(&mut vertices, &triangles, &fixed, 60, true);
    for v in &mut vertices {
        *v = geom::scale(radius, *v);
    }
    let mut tags = Vec::with_capacity(triangles.len());
    let lower = InterfaceTag { lo: 0, hi: 1 };
    let upper = InterfaceTag { lo: 0, hi: 2 };
    for t in &mut triangles {
        let c = geom::centroid(vertices[t[0]], vertices[t[1]], vertices[t[2]]);
        // Normal from the exterior into the ball, i.e. inward.
        orient(t, &vertices, geom::scale(-1.0, c));
        tags.push(if split && c[0] > 0.0 { upper } else { lower });
    }
    if split {
        let ring: Vec<usize> = equator.iter().map(|&(_, v)| v).collect();
        add_disk(&mut vertices, &mut triangles, &mut tags, &ring, radius);
    }
    SkeletonMesh { vertices, triangles, tags }
}

/// Triangulates the disk bounded by `ring` (ordered vertices on the circle
/// `x = 0`, `|y, z| = radius`) with concentric rings and tags it `(1, 2)`.
fn add_disk(
    vertices: &mut Vec<Point>,
    triangles: &mut Vec<[usize; 3]>,
    tags: &mut Vec<InterfaceTag>,
    ring: &[usize],
    radius: f64,
) {
    let m = ring.len();
    // Radial spacing of an equilateral layer with the boundary spacing.
    let rings = ((m as f64 / (2.0 * PI * 0.866)).round() as usize).max(1);
    let first = vertices.len();
    let center = vertices.len();
    vertices.push([0.0, 0.0, 0.0]);
    let mut prev: Vec<usize> = vec![center];
    let mut prev_angles: Vec<f64> = vec![0.0];
    let mut new_tris = Vec::new();
    for k in 1..=rings {
        let (cur, angles): (Vec<usize>, Vec<f64>) = if k == rings {
            (ring.to_vec(), (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect())
        } else {
            let count = ((m * k) as f64 / rings as f64).round().max(3.0) as usize;
            let rho = radius * k as f64 / rings as f64;
            let offset = if k % 2 == 1 { PI / count as f64 } else { 0.0 };
            let mut ids = Vec::with_capacity(count);
            let mut angles = Vec::with_capacity(count);
            for j in 0..count {
                let a = offset + 2.0 * PI * j as f64 / count as f64;
                ids.push(vertices.len());
                vertices.push([0.0, rho * a.cos(), rho * a.sin()]);
                angles.push(a);
            }
            (ids, angles)
        };
        if prev.len() == 1 {
            for j in 0..cur.len() {
                new_tris.push([prev[0], cur[j], cur[(j + 1) % cur.len()]]);
            }
        } else {
            zipper(&prev, &prev_angles, &cur, &angles, &mut new_tris);
        }
        prev = cur;
        prev_angles = angles;
    }
    let mut fixed = vec![true; vertices.len()];
    for f in fixed.iter_mut().skip(first) {
        *f = false;
    }
    smooth(vertices, &new_tris, &fixed, 40, false);
    let tag = InterfaceTag { lo: 1, hi: 2 };
    for mut t in new_tris {
        orient(&mut t, vertices, [1.0, 0.0, 0.0]);
        triangles.push(t);
        tags.push(tag);
    }
}

/// Strip of triangles between two closed rings with increasing angles.
fn zipper(a: &[usize], aa: &[f64], b: &[usize], ba: &[f64], out: &mut Vec<[usize; 3]>) {
    let (na, nb) = (a.len(), b.len());
    let unwrap = |angles: &[f64], i: usize| {
        let n = angles.len();
        angles[i % n] + 2.0 * PI * (i / n) as f64
    };
    let (mut i, mut j) = (0, 0);
    while i < na || j < nb {
        let advance_a = if i == na {
            false
        } else if j == nb {
            true
        } else {
            unwrap(aa, i + 1) <= unwrap(ba, j + 1)
        };
        if advance_a {
            out.push([a[i % na], a[(i + 1) % na], b[j % nb]]);
            i += 1;
        } else {
            out.push([a[i % na], b[(j + 1) % nb], b[j % nb]]);
            j += 1;
        }
    }
}

/// Umbrella smoothing of free vertices, optionally re-projected onto the unit sphere.
fn smooth(vertices: &mut [Point], triangles: &[[usize; 3]], fixed: &[bool], iterations: usize, sphere: bool) {
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); vertices.len()];
    for t in triangles {
        for k in 0..3 {
            let (a, b) = (t[k], t[(k + 1) % 3]);
            adj[a].push(b);
            adj[b].push(a);
        }
    }
    for list in &mut adj {
        list.sort_unstable();
        list.dedup();
    }
    for _ in 0..iterations {
        let snapshot = vertices.to_vec();
        for v in 0..vertices.len() {
            if v >= fixed.len() || fixed[v] || adj[v].is_empty() {
                continue;
            }
            let mut c = [0.0; 3];
            for &w in &adj[v] {
                c = geom::add(c, snapshot[w]);
            }
            c = geom::scale(1.0 / adj[v].len() as f64, c);
            if sphere {
                // The neighbour average of an octahedron apex is the origin.
                if geom::norm(c) > 1e-3 {
                    vertices[v] = geom::normalize(c);
                }
            } else {
                vertices[v] = c;
            }
        }
    }
}

fn orient(t: &mut [usize; 3], vertices: &[Point], direction: Point) {
    let n = geom::cross(
        geom::sub(vertices[t[1]], vertices[t[0]]),
        geom::sub(vertices[t[2]], vertices[t[0]]),
    );
    if geom::dot(n, direction) < 0.0 {
        t.swap(1, 2);
    }
}

/// Splits each interval between consecutive breakpoints into pieces of at most
/// `0.9 h`, so that quad diagonals stay below `1.3 h`.
pub fn subdivide(breaks: &[f64], h: f64) -> Vec<f64> {
    let mut out = vec![breaks[0]];
    for w in breaks.windows(2) {
        let pieces = ((w[1] - w[0]) / (0.9 * h)).ceil().max(1.0) as usize;
        for p in 1..=pieces {
            out.push(w[0] + (w[1] - w[0]) * p as f64 / pieces as f64);
        }
    }
    out
}

/// Skeleton of a partition of a tensor-product box grid.
///
/// `label(i, j, k)` gives the subdomain of cell `(i, j, k)`; 0 marks exterior
/// cells. Every face between differently labelled cells (or between a
/// labelled cell and the outside of the grid) becomes two triangles.
pub fn gen_box_partition(
    xs: &[f64],
    ys: &[f64],
    zs: &[f64],
    label: impl Fn(usize, usize, usize) -> usize,
) -> Result<SkeletonMesh, SkeletonError> {
    let dims = [xs.len() - 1, ys.len() - 1, zs.len() - 1];
    let cell = |c: [i64; 3]| -> usize {
        if (0..3).all(|a| c[a] >= 0 && (c[a] as usize) < dims[a]) {
            label(c[0] as usize, c[1] as usize, c[2] as usize)
        } else {
            0
        }
    };
    let mut index: HashMap<[usize; 3], usize> = HashMap::new();
    let mut vertices: Vec<Point> = Vec::new();
    let mut vid = |g: [usize; 3], vertices: &mut Vec<Point>| {
        *index.entry(g).or_insert_with(|| {
            vertices.push([xs[g[0]], ys[g[1]], zs[g[2]]]);
            vertices.len() - 1
        })
    };
    let mut triangles = Vec::new();
    let mut tags = Vec::new();
    for axis in 0..3 {
        let (u, v) = ((axis + 1) % 3, (axis + 2) % 3);
        // Face planes perpendicular to `axis` at grid index p.
        for p in 0..=dims[axis] {
            for a in 0..dims[u] {
                for b in 0..dims[v] {
                    let mut below = [0i64; 3];
                    below[axis] = p as i64 - 1;
                    below[u] = a as i64;
                    below[v] = b as i64;
                    let mut above = below;
                    above[axis] = p as i64;
                    let (lb, la) = (cell(below), cell(above));
                    if lb == la {
                        continue;
                    }
                    let tag = InterfaceTag::new(lb.min(la), lb.max(la))?;
                    let corner = |da: usize, db: usize| {
                        let mut g = [0usize; 3];
                        g[axis] = p;
                        g[u] = a + da;
                        g[v] = b + db;
                        g
                    };
                    let q = [corner(0, 0), corner(1, 0), corner(1, 1), corner(0, 1)];
                    let ids: Vec<usize> = q.iter().map(|g| vid(*g, &mut vertices)).collect();
                    // Normal from the lower label into the higher one.
                    let mut dir = [0.0; 3];
                    dir[axis] = if lb < la { 1.0 } else { -1.0 };
                    for mut t in [[ids[0], ids[1], ids[2]], [ids[0], ids[2], ids[3]]] {
                        orient(&mut t, &vertices, dir);
                        triangles.push(t);
                        tags.push(tag);
                    }
                }
            }
        }
    }
    if triangles.is_empty() {
        return Err(SkeletonError::InvalidParameter("partition has no interfaces".into()));
    }
    Ok(SkeletonMesh { vertices, triangles, tags })
}

/// Box `(0,a) x (0,b) x (0,c)` split at `z = c/2` into `Ω_1` (below) and `Ω_2`.
pub fn gen_halved_cuboid(extents: [f64; 3], h: f64) -> Result<SkeletonMesh, SkeletonError> {
    if extents.iter().any(|e| !(*e > 0.0)) || !(h > 0.0) {
        return Err(SkeletonError::InvalidParameter("extents and h must be positive".into()));
    }
    if h > extents.iter().cloned().fold(f64::INFINITY, f64::min) {
        return Err(SkeletonError::InvalidParameter(format!(
            "mesh size {h} exceeds the smallest extent"
        )));
    }
    let [a, b, c] = extents;
    let xs = subdivide(&[0.0, a], h);
    let ys = subdivide(&[0.0, b], h);
    let zs = subdivide(&[0.0, 0.5 * c, c], h);
    let mid = zs.iter().position(|&z| z == 0.5 * c).expect("split plane is a breakpoint");
    gen_box_partition(&xs, &ys, &zs, |_, _, k| if k < mid { 1 } else { 2 })
}

/// Nested square shells of height `height`: subdomain `i` (1-based) occupies
/// `r_{i-1} < max(|x|, |y|) < r_i`, `0 < z < height`. A positive first radius
/// leaves an exterior hole through the centre.
pub fn gen_concentric_cuboids(radii: &[f64], height: f64, h: f64) -> Result<SkeletonMesh, SkeletonError> {
    if radii.len() < 2 || radii[0] < 0.0 || radii.windows(2).any(|w| w[1] <= w[0]) {
        return Err(SkeletonError::InvalidParameter(
            "radius vector must have at least two strictly increasing, non-negative entries".into(),
        ));
    }
    if !(height > 0.0 && h > 0.0) {
        return Err(SkeletonError::InvalidParameter("height and h must be positive".into()));
    }
    let mut breaks: Vec<f64> = radii.iter().rev().map(|r| -r).collect();
    if radii[0] == 0.0 {
        breaks.pop();
    }
    breaks.extend(radii.iter().copied().filter(|r| *r > 0.0));
    let xy = subdivide(&breaks, h);
    let zs = subdivide(&[0.0, height], h);
    let label = |i: usize, j: usize, _k: usize| {
        let cx = 0.5 * (xy[i] + xy[i + 1]);
        let cy = 0.5 * (xy[j] + xy[j + 1]);
        let m = cx.abs().max(cy.abs());
        radii.windows(2).position(|w| w[0] < m && m < w[1]).map_or(0, |p| p + 1)
    };
    gen_box_partition(&xy, &xy, &zs, label)
}
