//! Declarative run configuration, read from TOML.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use mtf::bio::Precision;
use mtf::geom::CVec;
use mtf::precond::{OsrcParams, PrecondKind};
use mtf::skeleton::{
    gen_concentric_cuboids, gen_halved_cuboid, gen_sphere, read_msh, InterfaceLabel, Material, MaterialTable, SkeletonMesh,
    TagMap,
};
use mtf::system::IncidentField;
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, Stage, StageExt};

/// Speed of light in vacuum (m/s), for configs given by frequency.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Default cap on the total number of unknowns of one run.
pub const DEFAULT_MAX_UNKNOWNS: usize = 8000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Formulation {
    Stf,
    Mtf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolverKind {
    Lu,
    Gmres,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum GeometrySpec {
    /// Ball as a single inclusion.
    Sphere { radius: f64 },
    /// Ball cut by the plane `x = 0` into two inclusions.
    SplitSphere { radius: f64 },
    /// Box `(0,a) x (0,b) x (0,c)` cut at half height.
    HalfCube { extents: [f64; 3] },
    /// Nested square shells; `radii` has one more entry than there are shells.
    ConcentricCuboids { radii: Vec<f64>, height: f64 },
    /// Gmsh file; `tags` maps physical tags to `"from,to"` subdomain pairs.
    Msh { path: PathBuf, tags: BTreeMap<String, String> },
}

impl GeometrySpec {
    pub fn name(&self) -> &'static str {
        match self {
            GeometrySpec::Sphere { .. } => "sphere",
            GeometrySpec::SplitSphere { .. } => "split-sphere",
            GeometrySpec::HalfCube { .. } => "half-cube",
            GeometrySpec::ConcentricCuboids { .. } => "concentric-cuboids",
            GeometrySpec::Msh { .. } => "msh",
        }
    }

    /// Number of inclusions when it is known without reading a file.
    pub fn inclusions(&self) -> Option<usize> {
        match self {
            GeometrySpec::Sphere { .. } => Some(1),
            GeometrySpec::SplitSphere { .. } | GeometrySpec::HalfCube { .. } => Some(2),
            GeometrySpec::ConcentricCuboids { radii, .. } => Some(radii.len().saturating_sub(1)),
            GeometrySpec::Msh { .. } => None,
        }
    }

    /// Radius of the ball, for geometries with a Mie reference.
    pub fn sphere_radius(&self) -> Option<f64> {
        match self {
            GeometrySpec::Sphere { radius } | GeometrySpec::SplitSphere { radius } => Some(*radius),
            _ => None,
        }
    }

    pub fn build(&self, h: f64) -> Result<SkeletonMesh, CliError> {
        match self {
            GeometrySpec::Sphere { radius } => gen_sphere(*radius, h, false).stage(Stage::Mesh),
            GeometrySpec::SplitSphere { radius } => gen_sphere(*radius, h, true).stage(Stage::Mesh),
            GeometrySpec::HalfCube { extents } => gen_halved_cuboid(*extents, h).stage(Stage::Mesh),
            GeometrySpec::ConcentricCuboids { radii, height } => gen_concentric_cuboids(radii, *height, h).stage(Stage::Mesh),
            GeometrySpec::Msh { path, tags } => read_msh(path, &parse_tags(tags)?).stage(Stage::Mesh),
        }
    }
}

fn parse_tags(tags: &BTreeMap<String, String>) -> Result<TagMap, CliError> {
    let mut map = TagMap::new();
    for (tag, pair) in tags {
        let bad = || CliError::new(Stage::Config, format!("tag map entry {tag} = \"{pair}\" must be \"from,to\""));
        let tag: i64 = tag.trim().parse().map_err(|_| bad())?;
        let (from, to) = pair.split_once(',').ok_or_else(bad)?;
        let from = from.trim().parse().map_err(|_| bad())?;
        let to = to.trim().parse().map_err(|_| bad())?;
        map.insert(tag, InterfaceLabel { from, to });
    }
    Ok(map)
}

/// Plane wave given by real or complex components; complex entries are
/// written `[re, im]`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IncidentSpec {
    pub polarization: [Component; 3],
    pub direction: [f64; 3],
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Component {
    Real(f64),
    Complex([f64; 2]),
}

impl Component {
    fn value(self) -> C64 {
        match self {
            Component::Real(re) => C64::new(re, 0.0),
            Component::Complex([re, im]) => C64::new(re, im),
        }
    }
}

impl Default for IncidentSpec {
    /// `z`-polarized wave travelling along `+x`, the frame of the Mie reference.
    fn default() -> Self {
        IncidentSpec { polarization: [Component::Real(0.0), Component::Real(0.0), Component::Real(1.0)], direction: [1.0, 0.0, 0.0] }
    }
}

impl IncidentSpec {
    /// Oblique excitation used by the preconditioner studies.
    pub fn oblique() -> Self {
        IncidentSpec {
            polarization: [Component::Complex([1.0, 1.0]), Component::Real(2.0), Component::Complex([-1.0, -1.0 / 3.0])],
            direction: [1.0, 2.0, 3.0],
        }
    }

    pub fn polarization(&self) -> CVec {
        self.polarization.map(Component::value)
    }

    pub fn field(&self, k0: f64) -> IncidentField {
        IncidentField::with_real_direction(self.polarization(), self.direction, k0)
    }

    /// True for the unit `z`-polarized wave along `+x`.
    pub fn is_mie_frame(&self) -> bool {
        let p = self.polarization();
        let d = mtf::geom::normalize(self.direction);
        p == [C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(1.0, 0.0)] && (d[0] - 1.0).abs() < 1e-14
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct OsrcSpec {
    pub np: usize,
    /// Branch rotation in radians.
    pub theta: f64,
    pub damping: f64,
}

impl Default for OsrcSpec {
    fn default() -> Self {
        let p = OsrcParams::default();
        OsrcSpec { np: p.np, theta: p.theta, damping: p.damping }
    }
}

impl From<OsrcSpec> for OsrcParams {
    fn from(s: OsrcSpec) -> Self {
        OsrcParams { np: s.np, theta: s.theta, damping: s.damping }
    }
}

/// Parameter lists of the multi-run studies.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct StudySpec {
    /// Points per wavelength for `convergence` and `precond-study`.
    pub precisions: Vec<f64>,
    pub kinds: Vec<PrecondKind>,
    /// Inclusion counts for `scaling`.
    pub counts: Vec<usize>,
    /// Outer half-width and height of the cuboid family used by `scaling`.
    pub outer: f64,
    pub height: f64,
}

impl Default for StudySpec {
    fn default() -> Self {
        StudySpec {
            precisions: vec![4.0, 6.0, 10.0],
            kinds: vec![PrecondKind::None, PrecondKind::BlockOsrc],
            counts: vec![1, 2, 3],
            outer: 1.7,
            height: 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub name: String,
    /// Exterior wavenumber; alternatively give `frequency` in Hz.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k0: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub frequency: Option<f64>,
    pub geometry: GeometrySpec,
    /// Subdomain materials in index order; entry 0 is the exterior.
    pub materials: Vec<Material>,
    #[serde(default)]
    pub incident: IncidentSpec,
    /// Points per shortest material wavelength.
    pub r: f64,
    pub formulation: Formulation,
    pub solver: SolverKind,
    #[serde(default = "default_tol")]
    pub tol: f64,
    #[serde(default = "default_maxit")]
    pub maxit: usize,
    #[serde(default = "default_kind")]
    pub preconditioner: PrecondKind,
    #[serde(default)]
    pub osrc: OsrcSpec,
    #[serde(default)]
    pub precision: Precision,
    #[serde(default = "default_max_unknowns")]
    pub max_unknowns: usize,
    /// Number of far-field samples on `[0, π]`.
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Optional near-field grid on `[-extent, extent]^2` in a plane `z = const`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub near_field: Option<NearFieldSpec>,
    #[serde(default)]
    pub study: StudySpec,
    #[serde(default = "default_output")]
    pub output: PathBuf,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NearFieldSpec {
    /// Points per axis.
    pub points: usize,
    pub extent: f64,
    #[serde(default)]
    pub plane_z: f64,
}

fn default_tol() -> f64 {
    1e-5
}
fn default_maxit() -> usize {
    2000
}
fn default_kind() -> PrecondKind {
    PrecondKind::BlockOsrc
}
fn default_max_unknowns() -> usize {
    DEFAULT_MAX_UNKNOWNS
}
fn default_samples() -> usize {
    181
}
fn default_output() -> PathBuf {
    PathBuf::from("out")
}

/// Named parameter sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `k0 = 3`, `eps_r = 2.1`.
    CaseA,
    /// `k0 = 5`, `eps_r = 1.9`.
    CaseB,
}

impl std::str::FromStr for Preset {
    type Err = CliError;
    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "case-a" | "a" => Ok(Preset::CaseA),
            "case-b" | "b" => Ok(Preset::CaseB),
            other => Err(CliError::new(Stage::Config, format!("unknown preset `{other}` (expected case-a or case-b)"))),
        }
    }
}

impl RunConfig {
    /// Preset on the given geometry with MTF, GMRES and block OSRC at `r = 10`.
    pub fn preset(preset: Preset, geometry: GeometrySpec) -> Self {
        let count = geometry.inclusions().unwrap_or(1);
        let table = match preset {
            Preset::CaseA => MaterialTable::case_a(count),
            Preset::CaseB => MaterialTable::case_b(count),
        };
        RunConfig {
            name: format!("{}-{}", if preset == Preset::CaseA { "case-a" } else { "case-b" }, geometry.name()),
            k0: Some(table.k0),
            frequency: None,
            geometry,
            materials: table.materials,
            incident: IncidentSpec::default(),
            r: 10.0,
            formulation: Formulation::Mtf,
            solver: SolverKind::Gmres,
            tol: default_tol(),
            maxit: default_maxit(),
            preconditioner: default_kind(),
            osrc: OsrcSpec::default(),
            precision: Precision::Double,
            max_unknowns: DEFAULT_MAX_UNKNOWNS,
            samples: default_samples(),
            near_field: None,
            study: StudySpec::default(),
            output: default_output(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self, CliError> {
        let cfg: RunConfig = toml::from_str(text).map_err(|e| CliError::new(Stage::Config, e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::new(Stage::Config, format!("{}: {e}", path.display())))?;
        Self::from_toml(&text)
    }

    pub fn to_toml(&self) -> String {
        toml::to_string_pretty(self).expect("config is serializable")
    }

    pub fn k0(&self) -> Result<f64, CliError> {
        match (self.k0, self.frequency) {
            (Some(k), None) => Ok(k),
            (None, Some(f)) => Ok(2.0 * std::f64::consts::PI * f / SPEED_OF_LIGHT),
            (Some(_), Some(_)) => Err(CliError::new(Stage::Config, "give either k0 or frequency, not both")),
            (None, None) => Err(CliError::new(Stage::Config, "missing k0 or frequency")),
        }
    }

    pub fn material_table(&self) -> Result<MaterialTable, CliError> {
        MaterialTable::new(self.k0()?, self.materials.clone()).stage(Stage::Config)
    }

    /// Target edge length from the points-per-wavelength setting.
    pub fn mesh_size(&self) -> Result<f64, CliError> {
        Ok(self.material_table()?.mesh_size(self.r))
    }

    /// Checks everything that can be checked without meshing.
    pub fn validate(&self) -> Result<(), CliError> {
        let err = |m: String| Err(CliError::new(Stage::Config, m));
        self.material_table()?;
        if !(self.r > 0.0 && self.r.is_finite()) {
            return err(format!("points per wavelength must be positive, got {}", self.r));
        }
        if !(self.tol > 0.0) {
            return err(format!("tolerance must be positive, got {}", self.tol));
        }
        if self.maxit == 0 {
            return err("maxit must be at least 1".into());
        }
        if self.samples < 2 {
            return err("need at least two far-field samples".into());
        }
        if let Some(n) = self.geometry.inclusions() {
            if self.materials.len() != n + 1 {
                return err(format!(
                    "geometry {} has {} subdomains but {} materials are given",
                    self.geometry.name(),
                    n + 1,
                    self.materials.len()
                ));
            }
        }
        if self.formulation == Formulation::Stf && self.materials.len() != 2 {
            return err("the single-trace formulation needs exactly one inclusion".into());
        }
        Ok(())
    }

    /// Whether the Mie series is a valid reference for this run.
    pub fn mie_applies(&self) -> bool {
        let uniform = self.materials.iter().skip(1).all(|m| *m == self.materials[1]);
        self.geometry.sphere_radius().is_some() && uniform && self.incident.is_mie_frame()
    }
}
