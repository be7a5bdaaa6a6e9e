//! Network-diffusion and topology features over a protein interaction
//! network, adaptive positive-unlabeled relabeling of genes into five
//! classes, and the evaluation protocols used to score candidate-gene
//! discovery.
//!
//! The pipeline runs in stages, each usable on its own:
//!
//! 1. [`graph`]: build the interactome and keep its largest component.
//! 2. [`ingest`]: load scored seed genes and mask folds of them.
//! 3. [`nedbit`]: heat diffusion, balanced diffusion, NetShort and NetRing.
//! 4. [`apu`]: similarity graph, reliable negatives, propagation with
//!    restart and the P/LP/WN/LN/RN assignment.
//! 5. [`classify`]: a softmax classifier trained on the relabeled genes.
//! 6. [`eval`]: classification metrics, masked-seed recovery and
//!    discovery F1 curves.

pub mod apu;
pub mod classify;
pub mod cli;
mod error;
pub mod eval;
pub mod graph;
pub mod ingest;
pub mod matrix;
pub mod nedbit;
pub mod pipeline;
pub mod synthetic;

pub use error::{Error, Result};
pub use graph::Graph;
pub use ingest::SeedSet;
pub use matrix::FeatureMatrix;

/// `ceil(x)` that ignores floating-point noise just above an integer,
/// so `(1/3) * 9` counts as 3 rather than 4.
pub(crate) fn fuzzy_ceil(x: f64) -> usize {
    let r = x.round();
    if (x - r).abs() <= 1e-9 * r.abs().max(1.0) {
        r.max(0.0) as usize
    } else {
        x.ceil().max(0.0) as usize
    }
}
