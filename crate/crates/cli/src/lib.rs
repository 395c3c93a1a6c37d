//! File-based front end for the crossed-module toolkit.
//!
//! The binary reads a JSON *manifest* naming groups, homomorphisms,
//! crossed modules, ζ-kernels, and pre-prolongations, runs one operation
//! against one named object, and emits a JSON *report*. See the
//! repository README for both schemas.
//!
//! Exit codes: `0` success, `1` semantic failure (an object fails
//! validation; the report carries the witness), `2` parse or reference
//! error (malformed JSON, unresolved or ambiguous names), `3` budget
//! exceeded (an exhaustive search was larger than its configured bound).

pub mod commands;
pub mod error;
pub mod manifest;
pub mod payload;

/// Format version accepted in manifests and stamped into reports.
pub const FORMAT_VERSION: &str = "1";
