//! Command-line front end for the `bosegas-core` solvers: parameter sweeps,
//! figure data and CSV/JSON output.

pub mod commands;
pub mod config;
pub mod table;

pub use commands::{cmd_excitations, cmd_figures, cmd_gaussian_detail, cmd_ground, cmd_sound, Output};
pub use config::{GammaSet, Method, PartialConfig, RunConfig};
pub use table::{Cell, Format, Table};

/// First metadata lines of every output: program version and the
/// arguments after the program name.
pub fn provenance(args: &[String]) -> Vec<String> {
    let mut cmd = vec!["bosegas"];
    cmd.extend(args.iter().skip(1).map(String::as_str));
    vec![
        format!("bosegas {}", env!("CARGO_PKG_VERSION")),
        format!("command: {}", cmd.join(" ")),
    ]
}
