//! Command line front end: the s-expression problem format, instance
//! generators and the `vardec` subcommands.

pub mod commands;
pub mod format;
pub mod gen;
pub mod sexpr;
