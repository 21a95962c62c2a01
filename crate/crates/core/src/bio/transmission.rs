//! Sparse transmission blocks between neighbouring subdomain spaces.

use super::BioError;
use crate::spaces::{local_twisted, TraceSpace};
use crate::sparse::CsrMatrix;

/// Twisted identity with trial space `from` (columns) and test space `to`
/// (rows), integrated over the triangles the two surfaces share, using the
/// outward normal of `from`:
/// `I_mn = ∫ φ_n^from · (n_from × φ_m^to)`.
pub fn assemble_transmission(from: &TraceSpace, to: &TraceSpace) -> Result<CsrMatrix, BioError> {
    if from.subdomain() == to.subdomain() {
        return Err(BioError::SameSubdomain(from.subdomain()));
    }
    let mut trip = Vec::new();
    for tri in &from.triangles {
        let Some(lt) = to.local_triangle(tri.skeleton) else { continue };
        let other = &to.triangles[lt];
        let a = local_twisted(tri, tri.normal);
        for m in 0..3 {
            // Basis functions of `from` on this triangle, re-signed to those of `to`.
            let s = other.signs[m] * tri.signs[m];
            for n in 0..3 {
                if m != n {
                    trip.push((other.dofs[m], tri.dofs[n], s * a[m][n]));
                }
            }
        }
    }
    Ok(CsrMatrix::from_triplets(to.dim(), from.dim(), trip))
}
