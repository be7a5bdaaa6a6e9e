//! Command-line front end: configuration resolution and the subcommands.

mod commands;
pub mod config;

pub use commands::{cmd_classify, cmd_discover, cmd_features, cmd_label, cmd_validate, load_inputs, Inputs};
pub use config::{ConfigArgs, EdgesFormat, PipelineConfig};
