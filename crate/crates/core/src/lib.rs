pub mod coeff;
pub mod env;
pub mod error;
pub mod expr;
pub mod liealg;
pub mod linalg;
pub mod modules;
pub mod report;
pub mod suite;
pub mod twist;
pub mod verify;

pub use coeff::{Param, Rational, Scalar};
pub use env::{EnvElement, EnvFlavor, Strategy};
pub use error::{Error, Result};
pub use expr::{parse, Context, Expr};
pub use liealg::{Flavor, Generator, LieElement, Parity};
pub use modules::{GammaModule, GammaVector, VermaModule, VermaVector, Window};
pub use report::Report;
pub use suite::{run_suite, Suite};
pub use twist::{TwistElement, TwistKind};
