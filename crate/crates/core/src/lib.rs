pub mod algebra;
pub mod error;
pub mod functors;
pub mod gspaces;
pub mod kan;
pub mod report;
pub mod schema;
pub mod site;
pub mod spectra;
pub mod suite;
pub mod union_find;

pub use error::{Error, Result};
