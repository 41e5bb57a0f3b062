pub mod cli;
pub mod combinat;
pub mod config;
pub mod congruence;
pub mod error;
pub mod fixtures;
pub mod io;
pub mod linalg;
pub mod miner;
pub mod permact;
pub mod recon;
pub mod relideal;
pub mod scalar;
pub mod volrel;

pub use config::{DistanceTable, Histogram, PointConfiguration, RelationMatrix, Spectrum, SpectrumKind};
pub use error::{Error, Result};
pub use scalar::QuadScalar;
