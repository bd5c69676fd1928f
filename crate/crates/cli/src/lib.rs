//! Library side of the `paramodular` command: argument types, command
//! implementations and the coefficient-table file format.

pub mod commands;
pub mod point;
pub mod report;
pub mod table_file;
