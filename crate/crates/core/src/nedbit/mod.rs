//! The four network features: heat diffusion, balanced diffusion, NetShort
//! and NetRing, plus their assembly into a normalized feature matrix.

pub mod diffusion;
mod features;
pub mod netring;
pub mod netshort;

pub use diffusion::{balanced_diffusion, diffuse, heat_diffusion, Laplacian};
pub use features::{
    assemble_features, normalize_columns, ColumnBounds, NedbitConfig, NedbitFeatures,
    FEATURE_NAMES,
};
pub use netring::{netring, ring_partition, RingPartition};
pub use netshort::netshort;
