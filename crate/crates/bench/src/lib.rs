//! Shared inputs for the engine benchmarks.

use std::sync::Arc;

use sitekit_core::corpus::corpus;
use sitekit_core::{Budget, SieveUniverse};

/// Sieve universes for every corpus category, by name.
pub fn corpus_universes() -> Vec<(&'static str, Arc<SieveUniverse>)> {
    corpus()
        .into_iter()
        .map(|(name, spec)| {
            let cat = Arc::new(spec.build().expect("corpus category builds"));
            let u = SieveUniverse::new(cat, &Budget::default()).expect("corpus fits the budget");
            (name, u)
        })
        .collect()
}

pub fn universe(name: &str) -> Arc<SieveUniverse> {
    corpus_universes()
        .into_iter()
        .find(|(n, _)| *n == name)
        .map(|(_, u)| u)
        .unwrap_or_else(|| panic!("no corpus category named {name}"))
}
