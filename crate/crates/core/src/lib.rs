pub mod certify;
pub mod enumerate;
pub mod error;
pub mod families;
pub mod family;
pub mod field;
pub mod forms;
pub mod gauss;
pub mod grassmann;
pub mod linalg;
pub mod orbits;
pub mod setdomains;
pub mod subspace;

pub use enumerate::SubspaceIndex;
pub use error::{GdlError, Result};
pub use family::{Family, FamilyJson, WeightCertificate, FORMAT_VERSION};
pub use field::{Elem, Field, FieldSpec};
pub use forms::{ClassicalForm, FormKind, FormSubtype, LineType, TypeTag};
pub use linalg::Rational;
pub use subspace::{Space, Subspace, SubspaceJson};
