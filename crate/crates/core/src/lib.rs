pub mod congruence;
pub mod cyclo;
pub mod error;
pub mod heisenberg;
pub mod linalg;
pub mod metaplectic;
pub mod schrodinger;
pub mod suite;
pub mod symplectic4;
pub mod thetanum;
pub mod weilrep;

pub use error::{Error, Result};
