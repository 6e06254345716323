//! Worked examples shipped with the crate as JSON, embedded at compile time.

use serde_json::Value;

use crate::error::{HeisError, Result};

macro_rules! fixture {
    ($name:literal) => {
        ($name, include_str!(concat!("../fixtures/paper/", $name)))
    };
}

pub const FIXTURES: &[(&str, &str)] = &[
    fixture!("kernel_8pt.json"),
    fixture!("empty.json"),
    fixture!("bigon_genus2.json"),
    fixture!("mixed_points.json"),
    fixture!("npoint_bigon.json"),
    fixture!("npoint_linked.json"),
    fixture!("kernel_pair_k1.json"),
    fixture!("kernel_pair_k2.json"),
    fixture!("kernel_pair_k3.json"),
    fixture!("boundary_g2.json"),
    fixture!("subgroup_g3.json"),
];

pub fn text(name: &str) -> Option<&'static str> {
    FIXTURES.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

pub fn json(name: &str) -> Result<Value> {
    let t = text(name).ok_or_else(|| HeisError::Unresolved(format!("fixture {name:?}")))?;
    serde_json::from_str(t).map_err(|e| HeisError::Invalid(format!("fixture {name}: {e}")))
}

/// Fixtures whose `type` is `one_point`.
pub fn one_point_names() -> Vec<&'static str> {
    FIXTURES
        .iter()
        .filter(|(_, t)| serde_json::from_str::<Value>(t).ok().and_then(|v| v.get("type").cloned()) == Some("one_point".into()))
        .map(|(n, _)| *n)
        .collect()
}
