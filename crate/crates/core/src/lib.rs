pub mod catalog;
pub mod cli;
pub mod error;
pub mod exact;
pub mod format;
pub mod harness;
pub mod jet;
pub mod model;
pub mod nondegeneracy;
pub mod random;
pub mod relations;

pub use error::{Error, Result};
pub use model::{HermitianMatrix, LeviValue, QuadricModel, SesquiValue};
pub use nondegeneracy::{classify, ClassificationReport, ClassifyOptions, DegeneracyWitness};
pub use relations::{RelationCertificate, SesquiStatus};
