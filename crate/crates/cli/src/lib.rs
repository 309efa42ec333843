//! Library half of the `conepoly` command-line tool.

pub mod complex;
pub mod json;
pub mod report;
pub mod svg;
pub mod verify;
