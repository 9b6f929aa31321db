pub mod cli;
pub mod codes;
pub mod context;
pub mod dual;
pub mod error;
pub mod evalmap;
pub mod fields;
pub mod linalg;
pub mod orepoly;
pub mod suites;
pub mod taylor;
pub mod trd;

#[cfg(test)]
pub(crate) mod testutil;

pub use context::{Ctx, Kind, OreContext};
pub use error::{Error, Result};
pub use fields::Elem;
pub use orepoly::{CentralPoly, LaurentOre, OreFraction, OrePoly};
