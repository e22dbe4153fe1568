//! Optional campaign configuration, read from `--config` by `verify`.

use serde::Deserialize;
use serde_json::Value;

use super::campaigns::EndpointMode;
use super::spec::{parse_json, RotationSpec, SystemSpec};
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CampaignConfig {
    pub max_order: Option<u64>,
    pub window: Option<i64>,
    /// Rotation systems for `thm3`; generated when absent.
    pub systems: Option<Vec<Value>>,
    /// Endpoint placement for generated `thm3` cases.
    pub endpoints: Option<EndpointMode>,
}

impl CampaignConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: CampaignConfig = parse_json(text)?;
        if let Some(n) = cfg.max_order {
            if n < 2 {
                return Err(Error::config("max_order", "need max_order >= 2"));
            }
        }
        if let Some(w) = cfg.window {
            if w < 1 {
                return Err(Error::config("window", "need window >= 1"));
            }
        }
        cfg.rotation_systems()?;
        Ok(cfg)
    }

    pub fn rotation_systems(&self) -> Result<Option<Vec<RotationSpec>>> {
        let Some(list) = &self.systems else { return Ok(None) };
        let mut out = Vec::with_capacity(list.len());
        for (i, v) in list.iter().enumerate() {
            let nest = |e| match e {
                Error::Config { path, message } => Error::config(format!("systems[{i}].{path}"), message),
                other => other,
            };
            match SystemSpec::from_value(v.clone()).map_err(nest)? {
                SystemSpec::Rotation(r) => {
                    r.build().map_err(nest)?;
                    out.push(r);
                }
                _ => return Err(Error::config(format!("systems[{i}].kind"), "thm3 takes rotation systems")),
            }
        }
        Ok(Some(out))
    }
}
