use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use super::SkeletonError;

/// Relative material parameters of one subdomain.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Material {
    pub eps_r: f64,
    pub mu_r: f64,
}

impl Material {
    pub const VACUUM: Material = Material { eps_r: 1.0, mu_r: 1.0 };
}

/// Per-subdomain materials and the exterior wavenumber.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MaterialTable {
    pub k0: f64,
    pub materials: Vec<Material>,
}

impl MaterialTable {
    /// Index 0 must be vacuum; all parameters positive.
    pub fn new(k0: f64, materials: Vec<Material>) -> Result<Self, SkeletonError> {
        if !(k0 > 0.0 && k0.is_finite()) {
            return Err(SkeletonError::InvalidParameter(format!("k0 must be positive, got {k0}")));
        }
        match materials.first() {
            Some(m) if *m == Material::VACUUM => {}
            _ => {
                return Err(SkeletonError::InvalidParameter(
                    "subdomain 0 must have eps_r = mu_r = 1".into(),
                ))
            }
        }
        for (i, m) in materials.iter().enumerate() {
            if !(m.eps_r > 0.0 && m.mu_r > 0.0) {
                return Err(SkeletonError::InvalidParameter(format!(
                    "subdomain {i}: eps_r and mu_r must be positive"
                )));
            }
        }
        Ok(MaterialTable { k0, materials })
    }

    /// Exterior vacuum plus `count` inclusions of the same material.
    pub fn uniform(k0: f64, inclusion: Material, count: usize) -> Result<Self, SkeletonError> {
        let mut materials = vec![Material::VACUUM];
        materials.extend(std::iter::repeat(inclusion).take(count));
        Self::new(k0, materials)
    }

    /// Dielectric case A: `eps_r = 2.1`, `k0 = 3`.
    pub fn case_a(count: usize) -> Self {
        Self::uniform(3.0, Material { eps_r: 2.1, mu_r: 1.0 }, count).expect("valid preset")
    }

    /// Dielectric case B: `eps_r = 1.9`, `k0 = 5`.
    pub fn case_b(count: usize) -> Self {
        Self::uniform(5.0, Material { eps_r: 1.9, mu_r: 1.0 }, count).expect("valid preset")
    }

    pub fn len(&self) -> usize {
        self.materials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.materials.is_empty()
    }

    pub fn k(&self, i: usize) -> f64 {
        let m = self.materials[i];
        self.k0 * (m.mu_r * m.eps_r).sqrt()
    }

    pub fn eta(&self, i: usize) -> f64 {
        let m = self.materials[i];
        (m.mu_r / m.eps_r).sqrt()
    }

    pub fn rho(&self, i: usize) -> f64 {
        1.0 / self.eta(i)
    }

    pub fn wavelength(&self) -> f64 {
        2.0 * PI / self.k0
    }

    pub fn max_k(&self) -> f64 {
        (0..self.len()).map(|i| self.k(i)).fold(0.0, f64::max)
    }

    /// Target edge length for `r` points per shortest material wavelength.
    pub fn mesh_size(&self, points_per_wavelength: f64) -> f64 {
        2.0 * PI / (points_per_wavelength * self.max_k())
    }
}
