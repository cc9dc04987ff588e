pub mod error;
pub mod exactfield;

pub use error::{Error, Result};
pub mod quiver;
pub mod rep;
pub mod functors;
pub mod tubes;
pub mod canon;
pub mod hallalg;
