//! Library side of the workbench binary: the subcommand operations and the
//! record renderers, exposed so integration tests can drive them directly.

pub mod ops;
pub mod render;
