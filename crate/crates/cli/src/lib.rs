//! Report model and batch verification behind the `ktate` binary.

pub mod report;
pub mod verify;

pub use report::{Payload, Report, Request};
pub use verify::{verify_all, Suite, VerifyOptions, VerifyReport};
