//! Bundled benchmark instances.

use crate::instance::JsspInstance;
use crate::sim::MixerVariant;

/// Names of the bundled instances, from the 3x3 worked example up to the
/// 4x4 instance with 63 063 000 vectors.
pub const FIXTURE_NAMES: [&str; 6] = [
    "jssp-3x3-a",
    "jssp-3x3-b",
    "jssp-4x3",
    "jssp-5x2",
    "jssp-3x4",
    "jssp-4x4",
];

/// Raw file content of a bundled instance.
pub fn fixture_source(name: &str) -> Option<&'static str> {
    match name {
        "jssp-3x3-a" => Some(include_str!("../fixtures/jssp-3x3-a.txt")),
        "jssp-3x3-b" => Some(include_str!("../fixtures/jssp-3x3-b.txt")),
        "jssp-4x3" => Some(include_str!("../fixtures/jssp-4x3.txt")),
        "jssp-5x2" => Some(include_str!("../fixtures/jssp-5x2.txt")),
        "jssp-3x4" => Some(include_str!("../fixtures/jssp-3x4.txt")),
        "jssp-4x4" => Some(include_str!("../fixtures/jssp-4x4.txt")),
        _ => None,
    }
}

/// Parses a bundled instance.
pub fn load_fixture(name: &str) -> Option<JsspInstance> {
    fixture_source(name)
        .map(|text| JsspInstance::parse(text).expect("bundled fixtures are valid instance files"))
}

/// Mixer that performed best on each bundled instance.
pub fn default_mixer(name: &str) -> Option<MixerVariant> {
    match name {
        "jssp-3x3-a" | "jssp-3x3-b" => Some(MixerVariant::CxThenRy),
        "jssp-4x3" => Some(MixerVariant::RyThenCx),
        "jssp-5x2" | "jssp-4x4" => Some(MixerVariant::CxThenRx),
        "jssp-3x4" => Some(MixerVariant::CxThenRxRy),
        _ => None,
    }
}
