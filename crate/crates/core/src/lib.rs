//! Local multiple-traces boundary element solver for time-harmonic Maxwell
//! transmission problems on composite scatterers.

pub mod bio;
pub mod geom;
pub mod krylov;
pub mod post;
pub mod precond;
pub mod quadrature;
pub mod skeleton;
pub mod sparse;
pub mod spaces;
pub mod system;
