//! Cache persistence, report assembly, and the verification driver behind
//! the `holocoh` command-line tool.

pub mod cache;
pub mod driver;
pub mod report;
