//! Parity-check matrices, their text formats, and the edge address-iterator
//! tables derived from them.

mod gallager;
mod io;
mod matrix;
mod tables;

pub use gallager::generate_gallager_code;
pub use io::{parse_alist, parse_dense, to_alist, to_dense};
pub use matrix::{CodeInfo, ParityCheckMatrix};
pub use tables::{build_check_tables, build_variable_tables, EdgeTables, Orientation, TannerTables};
