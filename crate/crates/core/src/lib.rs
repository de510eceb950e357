pub mod algebra;
pub mod avf;
pub mod envelope;
pub mod error;
pub mod exterior;
pub mod identity;
pub mod named;
pub mod normal_form;
pub mod poly;
pub mod scalar;
pub mod terms;
pub mod vector_type;

pub use error::{Error, Result};
pub use scalar::{rat, Q64, Rational, Scalar};

pub type Poly = poly::Polynomial<Rational>;
