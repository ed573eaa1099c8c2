//! File formats and command-line front end for `tcat-core`.

pub mod cli;
pub mod io;

pub use io::{
    available_names, load_category_file, parse_category, resolve_category, serialize_category,
    write_atomic, CategoryDoc, IoError,
};
