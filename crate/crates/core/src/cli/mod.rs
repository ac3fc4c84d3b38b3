//! Input grammars and the command-line front end.

mod commands;
mod parse;

pub use parse::{
    parse_poly_file, parse_poly_file_with, parse_triple_file, ParseError, ParseOptions, PolyFile,
    TripleFile,
};
pub use commands::{run, EXIT_CAP, EXIT_CHECK_FAILED, EXIT_INPUT, EXIT_PASS};
