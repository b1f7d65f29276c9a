//! Flat JSON run configuration, merged with command-line flags.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::path::Path;

/// Every payload key a command may read. Flags override values read from a
/// config document; keys not listed here are rejected.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gamma: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub kappa: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub length: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub engine: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub step_tolerance: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis1: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis1_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis1_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis1_count: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub axis2_count: Option<usize>,

    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_min: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_max: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_count: Option<usize>,
}

macro_rules! overlay {
    ($base:ident, $top:ident, $($field:ident),* $(,)?) => {
        $( if $top.$field.is_some() { $base.$field = $top.$field.clone(); } )*
    };
}

impl RunConfig {
    /// Parses a config document. Output documents of the form
    /// `{"config": {...}, "result": {...}}` are accepted too, so results can be
    /// fed back in.
    pub fn from_json(text: &str) -> anyhow::Result<Self> {
        let value: Value = serde_json::from_str(text)?;
        let payload = match value {
            Value::Object(mut map) if map.contains_key("config") => {
                for key in map.keys() {
                    if key != "config" && key != "result" && key != "command" {
                        anyhow::bail!("unknown top-level key `{key}` in output document");
                    }
                }
                map.remove("config").unwrap_or(Value::Null)
            }
            other => other,
        };
        Ok(serde_json::from_value(payload)?)
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| anyhow::anyhow!("cannot read config {}: {e}", path.display()))?;
        Self::from_json(&text)
            .map_err(|e| anyhow::anyhow!("invalid config {}: {e}", path.display()))
    }

    /// Returns `self` with every value present in `flags` replaced.
    pub fn overridden_by(mut self, flags: &RunConfig) -> Self {
        overlay!(
            self,
            flags,
            gamma,
            kappa,
            delta,
            length,
            engine,
            step_tolerance,
            seed,
            axis1,
            axis1_min,
            axis1_max,
            axis1_count,
            axis2,
            axis2_min,
            axis2_max,
            axis2_count,
            delta_min,
            delta_max,
            delta_count,
        );
        self
    }
}
