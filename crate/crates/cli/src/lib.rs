//! Job files, the report envelope, and the bundled corpus for the `stiff` tool.

pub mod build;
pub mod corpus;
pub mod jobspec;
pub mod report;
pub mod run;
pub mod witness;
