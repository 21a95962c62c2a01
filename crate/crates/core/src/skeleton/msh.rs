//! ASCII Gmsh 2.2 reader/writer for skeleton meshes.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{validate_mesh, InterfaceTag, SkeletonError, SkeletonMesh, Violation};

/// Orientation of a physical surface as meshed: normals point from `from` into `to`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InterfaceLabel {
    pub from: usize,
    pub to: usize,
}

impl InterfaceLabel {
    pub fn tag(&self) -> Result<InterfaceTag, SkeletonError> {
        InterfaceTag::new(self.from.min(self.to), self.from.max(self.to))
    }

    /// Winding must be reversed to point from the lower to the higher index.
    pub fn reversed(&self) -> bool {
        self.from > self.to
    }
}

impl FromStr for InterfaceLabel {
    type Err = SkeletonError;

    /// Accepts `"ij"` / `"-ij"` (single-digit indices, a leading minus reverses
    /// the orientation) and `"i-j"` / `"i,j"` for arbitrary indices.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || SkeletonError::Parse { line: 0, message: format!("bad interface label '{s}'") };
        let s = s.trim();
        let (negated, body) = match s.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, s),
        };
        let (a, b) = if let Some((a, b)) = body.split_once([',', '-']) {
            (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?)
        } else if body.len() == 2 && body.chars().all(|c| c.is_ascii_digit()) {
            let d: Vec<usize> = body.chars().map(|c| c.to_digit(10).unwrap() as usize).collect();
            (d[0], d[1])
        } else {
            return Err(bad());
        };
        if a == b {
            return Err(bad());
        }
        Ok(if negated { InterfaceLabel { from: b, to: a } } else { InterfaceLabel { from: a, to: b } })
    }
}

/// Physical surface tag -> interface label.
pub type TagMap = BTreeMap<i64, InterfaceLabel>;

/// Reads a skeleton from an ASCII `.msh` 2.2 file and validates it.
pub fn read_msh(path: &Path, map: &TagMap) -> Result<SkeletonMesh, SkeletonError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| SkeletonError::Io { path: path.display().to_string(), message: e.to_string() })?;
    parse_msh(&text, map)
}

pub fn parse_msh(text: &str, map: &TagMap) -> Result<SkeletonMesh, SkeletonError> {
    let lines: Vec<&str> = text.lines().collect();
    let section = |name: &str| lines.iter().position(|l| l.trim() == name);
    let perr = |line: usize, message: &str| SkeletonError::Parse { line: line + 1, message: message.into() };

    let fmt = section("$MeshFormat").ok_or_else(|| perr(0, "missing $MeshFormat"))?;
    let version = lines.get(fmt + 1).and_then(|l| l.split_whitespace().next()).unwrap_or("");
    if !version.starts_with("2.2") {
        return Err(SkeletonError::UnsupportedFormat(version.to_string()));
    }
    if lines.get(fmt + 1).and_then(|l| l.split_whitespace().nth(1)) != Some("0") {
        return Err(SkeletonError::UnsupportedFormat(format!("{version} (binary)")));
    }

    let nodes_at = section("$Nodes").ok_or_else(|| perr(0, "missing $Nodes"))?;
    let count: usize = lines
        .get(nodes_at + 1)
        .and_then(|l| l.trim().parse().ok())
        .ok_or_else(|| perr(nodes_at + 1, "bad node count"))?;
    let mut nodes: HashMap<i64, [f64; 3]> = HashMap::with_capacity(count);
    for l in 0..count {
        let ln = nodes_at + 2 + l;
        let f: Vec<&str> = lines.get(ln).ok_or_else(|| perr(ln, "truncated $Nodes"))?.split_whitespace().collect();
        if f.len() < 4 {
            return Err(perr(ln, "node needs id and three coordinates"));
        }
        let id: i64 = f[0].parse().map_err(|_| perr(ln, "bad node id"))?;
        let mut p = [0.0; 3];
        for c in 0..3 {
            p[c] = f[1 + c].parse().map_err(|_| perr(ln, "bad coordinate"))?;
        }
        nodes.insert(id, p);
    }

    let el_at = section("$Elements").ok_or_else(|| perr(0, "missing $Elements"))?;
    let count: usize = lines
        .get(el_at + 1)
        .and_then(|l| l.trim().parse().ok())
        .ok_or_else(|| perr(el_at + 1, "bad element count"))?;
    let mut node_tris: Vec<[i64; 3]> = Vec::new();
    let mut triangles = Vec::new();
    let mut tags = Vec::new();
    for l in 0..count {
        let ln = el_at + 2 + l;
        let f: Vec<i64> = lines
            .get(ln)
            .ok_or_else(|| perr(ln, "truncated $Elements"))?
            .split_whitespace()
            .map(|s| s.parse::<i64>())
            .collect::<Result<_, _>>()
            .map_err(|_| perr(ln, "bad integer in element"))?;
        if f.len() < 3 {
            return Err(perr(ln, "short element record"));
        }
        let (id, kind, ntags) = (f[0], f[1], f[2] as usize);
        if kind != 2 {
            continue;
        }
        if ntags < 1 || f.len() < 3 + ntags + 3 {
            return Err(perr(ln, "triangle without physical tag or nodes"));
        }
        let physical = f[3];
        let label = map.get(&physical).ok_or(SkeletonError::UnmappedPhysicalTag { tag: physical, element: id })?;
        let mut tri = [f[3 + ntags], f[4 + ntags], f[5 + ntags]];
        for node in tri {
            if !nodes.contains_key(&node) {
                return Err(perr(ln, &format!("unknown node {node}")));
            }
        }
        if label.reversed() {
            tri.swap(1, 2);
        }
        node_tris.push(tri);
        tags.push(label.tag()?);
    }
    // Keep referenced nodes only, in ascending id order.
    let mut used: Vec<i64> = node_tris.iter().flatten().copied().collect();
    used.sort_unstable();
    used.dedup();
    let vertex_index: HashMap<i64, usize> = used.iter().enumerate().map(|(i, id)| (*id, i)).collect();
    let vertices: Vec<[f64; 3]> = used.iter().map(|id| nodes[id]).collect();
    for t in &node_tris {
        triangles.push([vertex_index[&t[0]], vertex_index[&t[1]], vertex_index[&t[2]]]);
    }
    let mesh = SkeletonMesh::new(vertices, triangles, tags)?;
    let report = validate_mesh(&mesh);
    for v in report.violations {
        match v {
            Violation::OpenBoundary { subdomain, edge } => {
                return Err(SkeletonError::OpenBoundary { subdomain, edge, count: 1 })
            }
            Violation::NonConforming { vertex, edge } => return Err(SkeletonError::NonConforming { vertex, edge }),
            other => return Err(SkeletonError::Invalid(other.to_string())),
        }
    }
    Ok(mesh)
}

/// Writes the skeleton as `.msh` 2.2 with one physical tag per interface
/// (numbered from 1 in ascending tag order) and returns the matching tag map.
pub fn write_msh(mesh: &SkeletonMesh, path: &Path) -> Result<TagMap, SkeletonError> {
    let (text, map) = format_msh(mesh);
    std::fs::write(path, text)
        .map_err(|e| SkeletonError::Io { path: path.display().to_string(), message: e.to_string() })?;
    Ok(map)
}

pub fn format_msh(mesh: &SkeletonMesh) -> (String, TagMap) {
    let tags = mesh.interface_tags();
    let physical: HashMap<InterfaceTag, i64> = tags.iter().enumerate().map(|(i, t)| (*t, i as i64 + 1)).collect();
    let mut map = TagMap::new();
    let mut out = String::new();
    out.push_str("$MeshFormat\n2.2 0 8\n$EndMeshFormat\n$PhysicalNames\n");
    let _ = writeln!(out, "{}", tags.len());
    for t in &tags {
        let _ = writeln!(out, "2 {} \"Gamma_{}\"", physical[t], t);
        map.insert(physical[t], InterfaceLabel { from: t.lo, to: t.hi });
    }
    out.push_str("$EndPhysicalNames\n$Nodes\n");
    let _ = writeln!(out, "{}", mesh.vertices.len());
    for (i, p) in mesh.vertices.iter().enumerate() {
        let _ = writeln!(out, "{} {:.17e} {:.17e} {:.17e}", i + 1, p[0], p[1], p[2]);
    }
    out.push_str("$EndNodes\n$Elements\n");
    let _ = writeln!(out, "{}", mesh.triangles.len());
    for (i, t) in mesh.triangles.iter().enumerate() {
        let ph = physical[&mesh.tags[i]];
        let _ = writeln!(out, "{} 2 2 {} {} {} {} {}", i + 1, ph, ph, t[0] + 1, t[1] + 1, t[2] + 1);
    }
    out.push_str("$EndElements\n");
    (out, map)
}
