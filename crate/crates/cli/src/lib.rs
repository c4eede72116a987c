//! Command-line surface for the exact discrete quantum group engine: model
//! loading, the element expression language, and machine-readable reports.

pub mod commands;
pub mod expr;
pub mod report;
