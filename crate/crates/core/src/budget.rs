//! Size guards for the exponential parts of the engine.

use std::str::FromStr;

use crate::error::{Error, Result};

/// Hard ceiling on arrows: sieves are single-word bitsets.
pub const ARROW_CAPACITY: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Budget {
    pub max_objects: usize,
    pub max_arrows: usize,
    /// Arrows into a single object; sieve enumeration is `2^n` in this.
    pub max_arrows_per_object: usize,
    /// Total number of sieves on a category.
    pub max_sieves: usize,
    /// Number of topologies an enumeration may produce.
    pub max_topologies: usize,
    /// Total elements of a presheaf/functor for subobject enumeration.
    pub max_elements: usize,
    /// Candidate count for brute-force searches (action tables, maps).
    pub max_search: usize,
    /// Pending tasks in a Fraisse chain.
    pub max_tasks: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_objects: 16,
            max_arrows: 64,
            max_arrows_per_object: 16,
            max_sieves: 4096,
            max_topologies: 200_000,
            max_elements: 24,
            max_search: 50_000_000,
            max_tasks: 2_000_000,
        }
    }
}

impl Budget {
    pub fn guard(what: &'static str, count: usize, limit: usize) -> Result<()> {
        if count > limit {
            Err(Error::SizeGuard { what, count, limit })
        } else {
            Ok(())
        }
    }

    pub fn check_category(&self, objects: usize, arrows: usize) -> Result<()> {
        Self::guard("object count", objects, self.max_objects)?;
        Self::guard("arrow count", arrows, self.max_arrows.min(ARROW_CAPACITY))
    }
}

/// Parses `key=value` pairs separated by commas, e.g. `objects=8,sieves=512`.
/// Unspecified keys keep their defaults.
impl FromStr for Budget {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut b = Budget::default();
        for part in s.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| format!("expected key=value, got `{part}`"))?;
            let v: usize = value
                .trim()
                .parse()
                .map_err(|_| format!("`{value}` is not a non-negative integer"))?;
            match key.trim() {
                "objects" => b.max_objects = v,
                "arrows" => b.max_arrows = v,
                "arrows_per_object" => b.max_arrows_per_object = v,
                "sieves" => b.max_sieves = v,
                "topologies" => b.max_topologies = v,
                "elements" => b.max_elements = v,
                "search" => b.max_search = v,
                "tasks" => b.max_tasks = v,
                other => return Err(format!("unknown budget key `{other}`")),
            }
        }
        Ok(b)
    }
}
