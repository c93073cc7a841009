//! Text formats and SVG output.

pub mod msd;
pub mod svg;

pub use msd::{parse, parse_valid, serialize, serialize_numbered, FormatError};
pub use svg::{render_diagram, render_scheme};
