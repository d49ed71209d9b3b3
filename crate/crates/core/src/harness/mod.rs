//! Verification suites, grid sweeps and their report formats.

pub mod report;
pub mod sweep;
pub mod verify;

pub use report::{ComparisonRecord, Measure, ReportHeader, Status, Summary};
pub use sweep::{SweepRow, SweepSpec, TableFormat};
pub use verify::Suite;
