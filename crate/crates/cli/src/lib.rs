//! Configuration loading, mesh/CSV/JSON output and the `flatfront` command line.

pub mod cli;
pub mod config;
pub mod error;
pub mod mesh;
pub mod report;

pub use cli::{run, run_with};
pub use config::{load_config, parse_config, Config, Loaded};
pub use error::{CliError, Result};
pub use mesh::{build_mesh, export_obj, obj_string, MeshGrid};
pub use report::{analyze, RunReport};
