//! Shared helpers for the benchmark targets.

use iqaoa::fixtures::load_fixture;
use iqaoa::instance::JsspInstance;

/// Loads a bundled instance, panicking on unknown names so benches fail loud.
pub fn instance(name: &str) -> JsspInstance {
    load_fixture(name).unwrap_or_else(|| panic!("unknown bundled instance {name}"))
}
