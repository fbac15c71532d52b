pub mod cli;
pub mod codes;
pub mod digits;
pub mod error;
pub mod families;
pub mod gf;
pub mod hws;
pub mod linpoly;
pub mod presemifield;

pub use error::{Error, Result};
pub use gf::{FieldBuilder, FieldCtx, FieldElem, FieldSpec};
pub use linpoly::{LinearizedPoly, SearchMode};
