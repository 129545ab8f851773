//! Library side of the `crosscap` binary: run records, table rendering and
//! the verification suite.

pub mod output;
pub mod range;
pub mod record;
pub mod verify;

pub use output::{render_table, TableFormat};
pub use range::InclusiveRange;
pub use record::{run_spec, RunError, RunOptions, RunRecord};
pub use verify::{verify_spec, Check, CheckOutcome, Fault};
