//! Classes of finite structures with amalgamation, their limits built as
//! fair chains, and back-and-forth comparison of two limits.

mod backforth;
mod chain;
mod classes;
mod structure;

pub use backforth::{back_and_forth, is_partial_iso, PartialIso, DEFAULT_NODE_LIMIT};
pub use chain::{
    build_limit, build_limit_with, check_limit_extension, extensions,
    ChainConfig, ExtensionFailure, ExtensionReport, LimitChain, Scheduler, TaskRecord,
};
pub use classes::{
    is_graph, is_linear_order, search_amalgam, truncation_category, verify_class_properties,
    Amalgam, AmalgamationClass, BoundedLinearOrders, ClassReport, Graphs, InitialSegmentOrders,
    LinearOrders, Span,
};
pub use structure::Structure;

/// Built-in class by command-line name.
pub fn class_by_name(name: &str) -> Option<Box<dyn AmalgamationClass>> {
    match name {
        "linord" => Some(Box::new(LinearOrders)),
        "graph" => Some(Box::new(Graphs::default())),
        "initial-segment-linord" => Some(Box::new(InitialSegmentOrders)),
        "bounded-linord" => Some(Box::new(BoundedLinearOrders { max_size: 2 })),
        _ => None,
    }
}
