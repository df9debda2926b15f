//! Word engine: specifications, lazy prefixes and scan-based statistics.

mod analysis;
mod infinite;
mod letter;
mod spec;

pub use analysis::{
    check_balanced, class_table, detect_period, factor_set, recurrence_window, run_parameters,
    ClassScheme, ClassTable, FactorSetReport, RecurrenceWindow, RunParameters,
};
pub use infinite::{InfiniteWord, DEFAULT_HARD_CAP, DEFAULT_HORIZON};
pub use letter::{letters_to_string, parse_letters, Letter, Letters};
pub use spec::{NamedWord, WordSpec};
