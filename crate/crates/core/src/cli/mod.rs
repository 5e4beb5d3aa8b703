//! Structure-description documents, named tasks and their reports.

mod document;
mod json;
mod report;
mod stream;
mod task;

pub use document::{
    atoms_value, builtin, chain_monoid, graph_body, normalize, original_body, poset_body, quantale_body, set_body,
    weighted_body, Document, DocumentError, Kind, Reason, Structure, BUILTINS, SCHEMA,
};
pub use json::pretty;
pub use report::{CheckLine, Format, Report, Verdict};
pub use stream::{enumerate, magma_names, Family};
pub use task::{run_task, Task, TaskSpec, TASKS};
