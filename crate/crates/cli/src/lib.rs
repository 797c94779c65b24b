//! Library side of the `bdtw` command-line tool.

pub mod play;
