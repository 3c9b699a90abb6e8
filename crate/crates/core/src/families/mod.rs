//! Constructors for the example families, each with a weight certificate
//! where one is available.

mod catalog;
mod classes;
pub mod local;
pub mod ops;
pub mod polar;
pub mod spread;
pub mod trivial;

pub use classes::{class_certificate, indicator_certificate, line_weight_certificate, meet_signature};
pub use catalog::builtin_632;
pub use local::{
    line_solid_completions, line_solid_partition,
    incident_pph, line_plus_spread, line_solid_expansion, pph_line_classes, pplh_triangle_juntas, sporadic_line_solid,
    sporadic_pplh, LineSolidVariant, LocalFamily,
};
pub use ops::{quotient_family, random_invertible, restrict_family, transform_family};
pub use polar::{
    elliptic_solids, f1_coefficients, f2_coefficients, quadric_planes, solid_coefficients, symplectic_planes,
    symplectic_coefficients, QuadricWhich, SymplecticWhich,
};
pub use spread::{field_reduction_spread, spread_family};
pub use trivial::{hypercube_lift, trivial_family, TrivialSpec};

use crate::family::{Family, WeightCertificate};

/// A constructed family together with its certificate.
#[derive(Clone, Debug)]
pub struct Certified {
    pub family: Family,
    pub certificate: Option<WeightCertificate>,
}
