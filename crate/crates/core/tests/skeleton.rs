use std::f64::consts::PI;

use mtf::skeleton::*;
use proptest::prelude::*;

fn labels(mesh: &SkeletonMesh) -> Vec<String> {
    (0..mesh.num_subdomains()).map(|i| subdomain_boundary(mesh, i).unwrap().label()).collect()
}

fn dielectric() -> SkeletonMesh {
    // Two unit boxes separated by a gap of one cell.
    let xs = [0.0, 1.0, 2.0, 3.0];
    gen_box_partition(&xs, &[0.0, 1.0], &[0.0, 1.0], |i, _, _| [1, 0, 2][i]).unwrap()
}

fn grid() -> SkeletonMesh {
    let b = [0.0, 0.5, 1.0];
    gen_box_partition(&b, &b, &[0.0, 1.0], |i, j, _| [[1, 4], [2, 3]][i][j]).unwrap()
}

#[test]
fn domain_configuration_table() {
    let d = dielectric();
    assert!(validate_mesh(&d).is_valid(), "{:?}", validate_mesh(&d));
    assert_eq!(labels(&d), ["[01, 02]", "[-01]", "[-02]"]);
    let g = interface_graph(&d);
    assert_eq!(g.neighbors_of(0), [1, 2]);
    assert_eq!(g.neighbors_of(1), [0]);
    assert_eq!(g.neighbors_of(2), [0]);

    let s = gen_sphere(1.0, 0.5, true).unwrap();
    assert_eq!(labels(&s), ["[01, 02]", "[-01, 12]", "[-02, -12]"]);
    assert_eq!(interface_graph(&s).neighbors_of(1), [0, 2]);

    let q = grid();
    assert!(validate_mesh(&q).is_valid(), "{:?}", validate_mesh(&q));
    assert_eq!(
        labels(&q),
        ["[01, 02, 03, 04]", "[-01, 12, 14]", "[-02, -12, 23]", "[-03, -23, 34]", "[-04, -14, -34]"]
    );
    assert_eq!(interface_graph(&q).neighbors_of(4), [0, 1, 3]);
}

#[test]
fn exterior_swaps_all_positive() {
    for mesh in [dielectric(), grid(), gen_sphere(1.0, 0.6, true).unwrap()] {
        let s0 = subdomain_boundary(&mesh, 0).unwrap();
        assert!(s0.interfaces.iter().all(|(_, s)| *s == 1));
        assert!(s0.swaps.iter().all(|s| *s == 1));
    }
}

#[test]
fn every_triangle_counted_twice() {
    for mesh in [dielectric(), grid(), gen_sphere(1.0, 0.4, true).unwrap()] {
        let mut count = vec![0; mesh.triangles.len()];
        for i in 0..mesh.num_subdomains() {
            for &t in &subdomain_boundary(&mesh, i).unwrap().triangles {
                count[t] += 1;
            }
        }
        assert!(count.iter().all(|c| *c == 2));
    }
}

#[test]
fn effective_normals_point_outward() {
    let mesh = gen_sphere(1.0, 0.3, true).unwrap();
    let disk = InterfaceTag { lo: 1, hi: 2 };
    for i in 0..3 {
        let s = subdomain_boundary(&mesh, i).unwrap();
        for l in 0..s.len() {
            let t = s.triangles[l];
            let [a, b, c] = mesh.corners(t);
            let centroid = mtf::geom::centroid(a, b, c);
            let n = s.effective_normal(&mesh, l);
            let outward = if mesh.tags[t] == disk {
                if i == 1 { n[0] > 0.0 } else { n[0] < 0.0 }
            } else {
                let radial = mtf::geom::dot(n, centroid);
                if i == 0 { radial < 0.0 } else { radial > 0.0 }
            };
            assert!(outward, "subdomain {i}, local triangle {l}");
        }
    }
}

#[test]
fn octahedron_counts() {
    let m = gen_octasphere(1.0, 1, false);
    assert_eq!(m.vertices.len(), 6);
    assert_eq!(m.triangles.len(), 8);
    assert_eq!(m.edges().len(), 12);
    assert!(validate_mesh(&m).is_valid());
    assert_eq!(interface_graph(&m).neighbors_of(0), [1]);
}

#[test]
fn sphere_topology_and_size() {
    let m = gen_sphere(1.0, 0.5, false).unwrap();
    let euler = m.vertices.len() as i64 - m.edges().len() as i64 + m.triangles.len() as i64;
    assert_eq!(euler, 2);
    assert!(m.max_edge_length() <= 1.3 * 0.5);
    assert!(validate_mesh(&m).is_valid());

    let h = MaterialTable::case_a(1).mesh_size(10.0);
    let m = gen_sphere(1.0, h, false).unwrap();
    assert!(m.max_edge_length() <= 1.3 * h);
    assert!((m.total_area() - 4.0 * PI).abs() / (4.0 * PI) < 0.02, "area {}", m.total_area());
}

#[test]
fn split_sphere_is_valid_with_three_tags() {
    let h = MaterialTable::case_a(2).mesh_size(10.0);
    let m = gen_sphere(1.0, h, true).unwrap();
    let report = validate_mesh(&m);
    assert!(report.is_valid(), "{:?}", &report.violations[..report.violations.len().min(5)]);
    assert_eq!(m.interface_tags().len(), 3);
    assert!(m.max_edge_length() <= 1.3 * h, "max edge {} vs h {h}", m.max_edge_length());
    assert!((m.interface_area(InterfaceTag { lo: 1, hi: 2 }) - PI).abs() < 0.03 * PI);
    assert_eq!(interface_graph(&m).neighbors_of(0), [1, 2]);
}

#[test]
fn sphere_rejects_coarse_h() {
    assert!(gen_sphere(1.0, 1.5, false).is_err());
    assert!(gen_sphere(1.0, -0.1, false).is_err());
}

#[test]
fn halved_cuboid_geometry() {
    let m = gen_halved_cuboid([1.0, 1.0, 1.0], 0.2).unwrap();
    assert!(validate_mesh(&m).is_valid());
    let s1 = subdomain_boundary(&m, 1).unwrap();
    let mut lo = [f64::INFINITY; 3];
    let mut hi = [f64::NEG_INFINITY; 3];
    for &t in &s1.triangles {
        for p in m.corners(t) {
            for c in 0..3 {
                lo[c] = lo[c].min(p[c]);
                hi[c] = hi[c].max(p[c]);
            }
        }
    }
    assert_eq!(lo, [0.0, 0.0, 0.0]);
    assert_eq!(hi, [1.0, 1.0, 0.5]);
    let tag = InterfaceTag { lo: 1, hi: 2 };
    let count = m.tags.iter().filter(|t| **t == tag).count() as f64;
    let mean_area = m.total_area() / m.triangles.len() as f64;
    let expected = m.interface_area(tag) / mean_area;
    assert!((count - expected).abs() <= 0.3 * expected);
    // Coarse mesh is still closed.
    assert!(validate_mesh(&gen_halved_cuboid([2.0, 1.0, 0.7], 0.7).unwrap()).is_valid());
}

#[test]
fn concentric_cuboids() {
    let m = gen_concentric_cuboids(&[0.0, 0.5, 1.7], 1.0, 0.25).unwrap();
    assert!(validate_mesh(&m).is_valid());
    assert_eq!(m.max_subdomain(), 2);
    assert_eq!(interface_graph(&m).neighbors_of(1), [0, 2]);

    let single = gen_concentric_cuboids(&[0.0, 1.7], 1.0, 0.4).unwrap();
    assert_eq!(single.max_subdomain(), 1);
    let (mut lo, mut hi) = ([f64::INFINITY; 3], [f64::NEG_INFINITY; 3]);
    for p in &single.vertices {
        for c in 0..3 {
            lo[c] = lo[c].min(p[c]);
            hi[c] = hi[c].max(p[c]);
        }
    }
    assert_eq!(lo, [-1.7, -1.7, 0.0]);
    assert_eq!(hi, [1.7, 1.7, 1.0]);
    let area = 2.0 * 3.4 * 3.4 + 4.0 * 3.4;
    assert!((single.total_area() - area).abs() < 1e-10);

    let three = gen_concentric_cuboids(&[0.0, 0.5, 1.0, 1.7], 1.0, 0.3).unwrap();
    assert!(validate_mesh(&three).is_valid());
    assert_eq!(interface_graph(&three).neighbors_of(2), [0, 1, 3]);

    assert!(gen_concentric_cuboids(&[0.0, 1.0, 1.0], 1.0, 0.3).is_err());
}

#[test]
fn duplicated_triangle_is_non_manifold() {
    let mut m = gen_octasphere(1.0, 2, false);
    m.triangles.push(m.triangles[0]);
    m.tags.push(m.tags[0]);
    let r = validate_mesh(&m);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::NonManifoldEdge { .. })));
}

#[test]
fn flipped_triangle_detected() {
    let mut m = gen_sphere(1.0, 0.5, true).unwrap();
    m.flip(3);
    let r = validate_mesh(&m);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::OrientationInconsistency { .. })));
    assert!(r.violations.iter().any(|v| v.to_string().contains("orientation inconsistency")));

    let mut all = gen_octasphere(1.0, 2, false);
    for t in 0..all.triangles.len() {
        all.flip(t);
    }
    let r = validate_mesh(&all);
    assert!(r.violations.iter().any(|v| matches!(v, Violation::InwardBoundary { .. })));
}

#[test]
fn open_boundary_error() {
    let mut m = gen_octasphere(1.0, 1, false);
    m.triangles.pop();
    m.tags.pop();
    assert!(matches!(subdomain_boundary(&m, 1), Err(SkeletonError::OpenBoundary { .. })));
}

#[test]
fn msh_round_trip() {
    let m = gen_sphere(1.0, 0.5, true).unwrap();
    let (text, map) = format_msh(&m);
    let back = parse_msh(&text, &map).unwrap();
    assert_eq!(back.triangles, m.triangles);
    assert_eq!(back.tags, m.tags);
    for (a, b) in back.vertices.iter().zip(&m.vertices) {
        assert_eq!(a, b);
    }
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s.msh");
    let map = write_msh(&m, &path).unwrap();
    assert_eq!(read_msh(&path, &map).unwrap().triangles.len(), m.triangles.len());
}

const OCTAHEDRON_MSH: &str = "$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$Nodes\n6\n\
1 1 0 0\n2 -1 0 0\n3 0 1 0\n4 0 -1 0\n5 0 0 1\n6 0 0 -1\n$EndNodes\n$Elements\n8\n\
1 2 2 7 1 1 3 5\n2 2 2 7 1 3 2 5\n3 2 2 7 1 2 4 5\n4 2 2 7 1 4 1 5\n\
5 2 2 7 1 3 1 6\n6 2 2 7 1 2 3 6\n7 2 2 7 1 4 2 6\n8 2 2 7 1 1 4 6\n$EndElements\n";

#[test]
fn msh_orientation_from_label() {
    // The file winds outward, i.e. from subdomain 1 into 0: label "-01".
    let map: TagMap = [(7, "-01".parse().unwrap())].into_iter().collect();
    let m = parse_msh(OCTAHEDRON_MSH, &map).unwrap();
    assert_eq!(m.max_subdomain(), 1);
    assert_eq!(interface_graph(&m).neighbors_of(0), [1]);
    // Declaring it "01" contradicts the winding and is rejected.
    let wrong: TagMap = [(7, "01".parse().unwrap())].into_iter().collect();
    assert!(parse_msh(OCTAHEDRON_MSH, &wrong).is_err());
}

#[test]
fn msh_errors() {
    let map: TagMap = [(7, "-01".parse().unwrap())].into_iter().collect();
    let v4 = OCTAHEDRON_MSH.replace("2.2 0 8", "4.1 0 8");
    assert!(matches!(parse_msh(&v4, &map), Err(SkeletonError::UnsupportedFormat(_))));
    let unmapped: TagMap = [(8, "01".parse().unwrap())].into_iter().collect();
    assert!(matches!(
        parse_msh(OCTAHEDRON_MSH, &unmapped),
        Err(SkeletonError::UnmappedPhysicalTag { tag: 7, element: 1 })
    ));
    let open = OCTAHEDRON_MSH.replace("$Elements\n8\n", "$Elements\n7\n").replace("8 2 2 7 1 1 4 6\n", "");
    assert!(matches!(parse_msh(&open, &map), Err(SkeletonError::OpenBoundary { .. })));
    assert!(matches!(
        read_msh(std::path::Path::new("/nonexistent/x.msh"), &map),
        Err(SkeletonError::Io { .. })
    ));
}

#[test]
fn label_parsing() {
    let l: InterfaceLabel = "-12".parse().unwrap();
    assert_eq!((l.from, l.to), (2, 1));
    assert!(l.reversed());
    let l: InterfaceLabel = "3,11".parse().unwrap();
    assert_eq!((l.from, l.to), (3, 11));
    assert!("11".parse::<InterfaceLabel>().is_err());
    assert!("x".parse::<InterfaceLabel>().is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_partitions_obey_graph_invariants(cells in proptest::collection::vec(0usize..4, 8)) {
        let b = [0.0, 1.0, 2.0];
        let label = |i: usize, j: usize, k: usize| cells[i * 4 + j * 2 + k];
        let Ok(mesh) = gen_box_partition(&b, &b, &b, label) else { return Ok(()); };
        let g = interface_graph(&mesh);
        for i in 0..g.neighbors.len() {
            prop_assert!(!g.are_adjacent(i, i));
            for j in g.neighbors_of(i) {
                prop_assert!(g.are_adjacent(j, i));
            }
        }
        let mut count = vec![0; mesh.triangles.len()];
        for i in 0..mesh.num_subdomains() {
            let tris: Vec<usize> = (0..mesh.triangles.len()).filter(|&t| mesh.tags[t].contains(i)).collect();
            for t in &tris { count[*t] += 1; }
            if let Ok(s) = subdomain_boundary(&mesh, i) {
                for (tag, sign) in &s.interfaces {
                    prop_assert_eq!(*sign, if tag.lo == i { 1 } else { -1 });
                }
            }
        }
        prop_assert!(count.iter().all(|c| *c == 2));
    }
}
