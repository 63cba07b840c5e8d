pub(crate) mod dense;
pub mod dynatomic;
pub mod error;
pub mod families;
pub mod fixtures;
pub mod exactalg;
pub mod form;
pub mod htuned;
pub mod mpoly;
pub mod numfield;
pub mod powermaps;
pub mod ratmap;
pub mod ring;

pub use error::{Error, Result};
