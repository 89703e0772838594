//! The bundled claims registry: every certificate names one of these claims.
//!
//! ```
//! use coble_cli::claims::{lookup, registry, SUITES};
//!
//! for claim in registry() {
//!     assert!(SUITES.contains(&claim.suite.as_str()), "{}", claim.id);
//! }
//! for suite in SUITES {
//!     for id in coble_cli::suites::claim_ids(suite) {
//!         assert!(lookup(id).is_some(), "{id} is missing from the registry");
//!     }
//! }
//! ```

use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

/// Suites accepted by `verify`, in the order `verify all` runs them.
pub const SUITES: [&str; 8] = ["cartan", "moduli", "quadric-duality", "quartic-duality", "ruling", "cohomology", "enumerative", "covariants"];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Claim {
    pub id: String,
    pub suite: String,
    pub statement: String,
    /// The library operations the claim is checked with.
    pub op: String,
    /// Whether one fresh draw of the form is allowed after a failure.
    pub resample: bool,
}

const REGISTRY: &str = include_str!("../claims.json");

pub fn registry() -> &'static [Claim] {
    static CLAIMS: OnceLock<Vec<Claim>> = OnceLock::new();
    CLAIMS.get_or_init(|| serde_json::from_str(REGISTRY).expect("bundled claims registry is valid JSON"))
}

pub fn lookup(id: &str) -> Option<&'static Claim> {
    registry().iter().find(|c| c.id == id)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ids_are_unique() {
        let mut ids: Vec<&str> = registry().iter().map(|c| c.id.as_str()).collect();
        let n = ids.len();
        ids.sort_unstable();
        ids.dedup();
        assert_eq!(ids.len(), n);
    }

    #[test]
    fn every_suite_has_claims() {
        for suite in SUITES {
            assert!(registry().iter().any(|c| c.suite == suite), "{suite}");
        }
    }
}
