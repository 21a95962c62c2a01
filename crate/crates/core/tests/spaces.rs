mod common;

use common::triangle_points;
use mtf::geom;
use mtf::skeleton::*;
use mtf::spaces::*;
use mtf::system::build_spaces;
use num_complex::Complex64 as C64;

fn octahedron_space() -> TraceSpace {
    let mesh = gen_octasphere(1.0, 1, false);
    build_trace_space(&mesh, &subdomain_boundary(&mesh, 0).unwrap()).unwrap()
}

fn sphere_space(n: usize) -> (SkeletonMesh, TraceSpace) {
    let mesh = gen_octasphere(1.0, n, false);
    let space = build_trace_space(&mesh, &subdomain_boundary(&mesh, 0).unwrap()).unwrap();
    (mesh, space)
}

#[test]
fn octahedron_has_twelve_dofs() {
    let s = octahedron_space();
    assert_eq!(s.dim(), 12);
    assert_eq!(s.triangles.len(), 8);
    for d in &s.dofs {
        assert!((d.length - 2f64.sqrt()).abs() < 1e-14);
    }
}

#[test]
fn rebuilding_is_deterministic() {
    let (mesh, a) = sphere_space(3);
    let b = build_trace_space(&mesh, &subdomain_boundary(&mesh, 0).unwrap()).unwrap();
    assert_eq!(a.dofs.len(), b.dofs.len());
    for (x, y) in a.dofs.iter().zip(&b.dofs) {
        assert_eq!(x.edge, y.edge);
        assert_eq!(x.support, y.support);
    }
    assert_eq!(a.triangles, b.triangles);
}

#[test]
fn basis_vanishes_at_opposite_vertex() {
    let (_, s) = sphere_space(2);
    for tri in &s.triangles {
        for k in 0..3 {
            let v = tri.basis(k, tri.vertices[k]);
            assert!(geom::norm(v) < 1e-14);
        }
    }
}

#[test]
fn divergence_integrates_to_zero_over_support() {
    let (_, s) = sphere_space(3);
    let mut total = vec![0.0; s.dim()];
    let mut scale = vec![0.0; s.dim()];
    for tri in &s.triangles {
        for k in 0..3 {
            total[tri.dofs[k]] += tri.divergence(k) * tri.area;
            scale[tri.dofs[k]] += (tri.divergence(k) * tri.area).abs();
        }
    }
    for (t, s) in total.iter().zip(&scale) {
        assert!(t.abs() < 1e-13 * s);
    }
}

/// Flux of basis `k` of `tri` through its own edge, by 6-point Gauss–Legendre.
fn edge_flux(tri: &SurfaceTriangle, k: usize) -> f64 {
    let a = tri.vertices[(k + 1) % 3];
    let b = tri.vertices[(k + 2) % 3];
    let edge = geom::sub(b, a);
    let len = geom::norm(edge);
    // In-plane unit normal to the edge pointing away from the opposite vertex.
    let mut nu = geom::normalize(geom::cross(edge, tri.normal));
    if geom::dot(nu, geom::sub(a, tri.vertices[k])) < 0.0 {
        nu = geom::scale(-1.0, nu);
    }
    let (x, w) = common::legendre6_01();
    x.iter()
        .zip(&w)
        .map(|(t, w)| w * len * geom::dot(tri.basis(k, geom::add(a, geom::scale(*t, edge))), nu))
        .sum()
}

#[test]
fn edge_flux_is_continuous_and_equals_length() {
    let (_, s) = sphere_space(3);
    for (d, dof) in s.dofs.iter().enumerate() {
        let mut flux = [0.0; 2];
        for (side, &(t, k)) in dof.support.iter().enumerate() {
            let tri = &s.triangles[t];
            assert_eq!(tri.dofs[k], d);
            flux[side] = edge_flux(tri, k);
        }
        // Outflow from the plus triangle is inflow to the minus triangle.
        assert!((flux[0] + flux[1]).abs() < 1e-12 * dof.length, "{flux:?}");
        assert!((flux[0].abs() - dof.length).abs() < 1e-12 * dof.length);
    }
}

#[test]
fn pairing_is_antisymmetric() {
    let (_, s) = sphere_space(4);
    let g = build_pairing(&s);
    let scale = g.max_abs();
    for (i, j, v) in g.triplets() {
        assert!((v + g.get(j, i)).abs() <= 1e-13 * scale);
    }
    let zero = vec![C64::new(0.0, 0.0); s.dim()];
    assert!(g.matvec(&zero).iter().all(|v| v.norm() == 0.0));
}

#[test]
fn negated_swaps_negate_pairing() {
    let (mesh, s) = sphere_space(3);
    let flipped = build_trace_space(&mesh, &subdomain_boundary(&mesh, 0).unwrap().negated()).unwrap();
    let g = build_pairing(&s);
    let h = build_pairing(&flipped);
    assert_eq!(g.nnz(), h.nnz());
    for (i, j, v) in g.triplets() {
        assert!((v + h.get(i, j)).abs() <= 1e-15 * g.max_abs());
    }
}

#[test]
fn pairing_entry_matches_quadrature_oracle() {
    let s = octahedron_space();
    let g = build_pairing(&s);
    // Two dofs on the same triangle.
    let tri = &s.triangles[0];
    let (m, n) = (tri.dofs[0], tri.dofs[1]);
    let mut want = 0.0;
    for t in &s.triangles {
        let km = t.dofs.iter().position(|&d| d == m);
        let kn = t.dofs.iter().position(|&d| d == n);
        if let (Some(km), Some(kn)) = (km, kn) {
            for (x, w) in triangle_points(&t.vertices) {
                want += w * geom::dot(t.basis(kn, x), geom::cross(t.normal, t.basis(km, x)));
            }
        }
    }
    assert!(want.abs() > 0.1);
    assert!((g.get(m, n) - want).abs() < 1e-10 * want.abs());
}

#[test]
fn mass_matrix_is_symmetric_positive() {
    let (_, s) = sphere_space(3);
    let m = build_mass(&s);
    for (i, j, v) in m.triplets() {
        assert!((v - m.get(j, i)).abs() < 1e-15 * m.max_abs());
        if i == j {
            assert!(v > 0.0);
        }
    }
}

#[test]
fn projection_of_basis_function_recovers_coefficient() {
    let (_, s) = sphere_space(2);
    let tri = &s.triangles[3];
    let target = tri.dofs[1];
    // Moments of φ_target against the L2 test equal the mass-matrix column.
    let m = build_mass(&s);
    let field = |x: [f64; 3], _n: [f64; 3]| -> [C64; 3] {
        let mut v = [C64::new(0.0, 0.0); 3];
        for t in &s.triangles {
            if let Some(k) = t.dofs.iter().position(|&d| d == target) {
                if point_in_triangle(t, x) {
                    let b = t.basis(k, x);
                    v = [b[0].into(), b[1].into(), b[2].into()];
                }
            }
        }
        v
    };
    let mom = field_moments(&s, 4, Testing::L2, &field).unwrap();
    for i in 0..s.dim() {
        assert!((mom[i].re - m.get(i, target)).abs() < 1e-12, "{i}");
    }
}

fn point_in_triangle(t: &SurfaceTriangle, x: [f64; 3]) -> bool {
    let [a, b, c] = t.vertices;
    let total = geom::triangle_normal_area(a, b, c).1;
    let parts = geom::triangle_normal_area(x, b, c).1 + geom::triangle_normal_area(a, x, c).1 + geom::triangle_normal_area(a, b, x).1;
    (parts - total).abs() < 1e-12 * total && geom::dot(geom::sub(x, a), t.normal).abs() < 1e-12
}

#[test]
fn split_sphere_block_sizes() {
    let mats = MaterialTable::case_a(2);
    let mesh = gen_sphere(1.0, mats.mesh_size(10.0), true).unwrap();
    let spaces = build_spaces(&mesh).unwrap();
    let total: usize = spaces.iter().map(|s| 2 * s.dim()).sum();
    // Same order of magnitude as the reference discretization (6360 unknowns).
    assert!(total > 3000 && total < 20000, "{total}");
    // Both halves carry the cut disk as well as their share of the sphere.
    assert!(spaces[1].dim() + spaces[2].dim() > spaces[0].dim());
}
