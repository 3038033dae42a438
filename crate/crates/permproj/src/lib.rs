//! File formats, exports and bound scans on top of `permproj-core`.

pub mod explorer;
pub mod export;
pub mod format;

pub use format::{parse, serialize, AutomatonFile, ParseError, ParseErrorKind};
