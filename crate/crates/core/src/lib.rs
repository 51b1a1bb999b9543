//! k-sections of bounded cut width in trees and tree-decomposed graphs.

pub mod bounds;
pub mod error;
pub mod graph;
pub mod instances;
pub mod io;
pub mod ksection;
pub mod labeling;
pub mod oracle;
pub mod report;
pub mod td_cuts;
pub mod tree_cuts;
pub mod treedec;

pub use error::{Error, Result, TdViolation};
pub use graph::{Cut, Graph, KSection, Rational};
