//! Lerch zeta values from Riemann-Liouville differintegrals of an elementary kernel,
//! with a series oracle and the machinery to cross-check the two.

pub mod complexfn;
pub mod differintegral;
pub mod error;
pub mod extrapolate;
pub mod fracrep;
pub mod harness;
pub mod lerch_ref;
pub mod literal;
pub mod method;
pub mod quadrature;

pub use complexfn::ComplexValue;
pub use differintegral::{Base, Contour, DifferintegralSpec, KernelDescriptor};
pub use error::{Error, Result};
pub use fracrep::{InterchangeTestConfig, LimitContourConfig, LimitSequenceConfig};
pub use lerch_ref::EvaluationPoint;
pub use method::{EvalSettings, Method};
pub use quadrature::{Estimate, QuadratureConfig};
