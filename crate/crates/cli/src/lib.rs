//! Scene files, report and figure output, and the command drivers behind the
//! `porism` binary.

pub mod commands;
pub mod error;
pub mod figure;
pub mod report;
pub mod scene_file;

pub use commands::{run, Cli, Command, ExitCode};
pub use error::CliError;
pub use figure::{render_svg, FigureSpec};
pub use report::write_csv;
pub use scene_file::{emit_scene, parse_scene, parse_scene_str, SceneFile};
