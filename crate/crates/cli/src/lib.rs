//! Library surface of the `dualis` scenario runner: the scenario
//! grammar (parse, print, compile), task dispatch, and report
//! emitters. The binary in `main.rs` is a thin wrapper over these.

pub mod emit;
pub mod scenario;
pub mod tasks;
