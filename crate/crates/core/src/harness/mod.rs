//! Verification harness: system specs, reports, campaigns and probes.

pub mod campaigns;
pub mod config;
pub mod doubling;
pub mod report;
pub mod seed;
pub mod spec;
pub mod transfer;

pub use campaigns::{
    thm3_cases, verify_connected, verify_kneser, verify_max_bound, verify_overshoot, verify_return_identity, verify_thm1, verify_thm2, verify_thm3,
    CampaignParams, CampaignReport,
};
pub use config::CampaignConfig;
pub use doubling::{doubling_probe, CandidateFamily, DoublingReport};
pub use report::{to_json, Check, CheckDetail, Relation, SCHEMA_VERSION};
pub use seed::{trial_rng, trial_seed};
pub use spec::{parse_json, Action, PrimeMixture, RotationSpec, System, SystemSpec};
pub use transfer::{run_transfer, TransferOptions, TransferReport};
