//! Input formats, named fixtures, random instances and report output.

pub mod corpus;
pub mod fixtures;
pub mod parse;
pub mod report;
