pub mod algebra;
pub mod error;
pub mod fock;
pub mod identities;
pub mod localization;
pub mod partition;

pub use algebra::{BiPoly, RatFunc, Rational};
pub use error::{Error, Result};
pub use fock::{FockClass, FockSpace, Operator, Truncation};
pub use partition::{Cell, Partition};
