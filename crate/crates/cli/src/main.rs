//! `transfer-times`: transfer sets, structure verdicts and verification
//! campaigns from the command line.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! usage or configuration errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use transfer_core::classify::{classify, ClassifyParams};
use transfer_core::density::FamilyKind;
use transfer_core::finite_abelian::{difference_set, kneser_decompose};
use transfer_core::harness::campaigns::{self, CampaignParams, CampaignReport};
use transfer_core::harness::spec::System;
use transfer_core::harness::{
    doubling_probe, run_transfer, thm3_cases, to_json, CampaignConfig, CandidateFamily, SystemSpec, TransferOptions,
};
use transfer_core::rational::parse_rational;
use transfer_core::window::IntegerWindowSet;
use transfer_core::Error;

#[derive(Parser)]
#[command(name = "transfer-times", version, about = "Sets of transfer times in finite and circle systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Common {
    /// JSON file: a system spec, or campaign settings for `verify`.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Window radius W; integers in [-W, W] are examined.
    #[arg(long)]
    window: Option<i64>,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    trials: Option<usize>,
    /// Directory for the JSON report and CSV traces.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Transfer set, densities, verdict and checks for one system.
    Transfer {
        #[command(flatten)]
        common: Common,
        /// Sampling families: initial_segments, squares, sparse_sqrt2.
        #[arg(long = "family", value_delimiter = ',')]
        families: Vec<String>,
    },
    /// Kneser decomposition of a finite-group pair.
    Kneser {
        #[command(flatten)]
        common: Common,
    },
    /// Structure verdict for a membership file (one integer per line).
    Classify {
        file: PathBuf,
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        d_max: Option<usize>,
        #[arg(long)]
        max_len: Option<usize>,
        #[arg(long)]
        balance_tolerance: Option<usize>,
    },
    /// Seeded verification campaign.
    Verify {
        campaign: Campaign,
        #[command(flatten)]
        common: Common,
    },
    /// Estimate the doubling constant over small candidate sets.
    DoublingProbe {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value = "subgroup_pullbacks")]
        family: String,
        #[arg(long, default_value = "1/100")]
        delta: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Campaign {
    Thm1,
    Thm2,
    Thm3,
    Max,
    Overshoot,
    Kneser,
    Connected,
    ReturnIdentity,
}

enum Failure {
    Usage(String),
    Violation,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn load_spec(common: &Common) -> Result<SystemSpec, Failure> {
    let path = common.config.as_ref().ok_or_else(|| Failure::Usage("--config <file> is required".into()))?;
    Ok(SystemSpec::from_json(&read(path)?)?)
}

fn window(common: &Common, default: i64) -> Result<i64, Failure> {
    match common.window.unwrap_or(default) {
        w if w >= 1 => Ok(w),
        w => Err(Failure::Usage(format!("--window must be positive, got {w}"))),
    }
}

/// Prints the report and, with `--out`, writes it and any extra files.
fn emit(common: &Common, name: &str, json: String, extra: &[(String, String)]) -> Outcome {
    print!("{json}");
    if let Some(dir) = &common.out {
        let io = |e: std::io::Error| Failure::Usage(format!("cannot write to {}: {e}", dir.display()));
        fs::create_dir_all(dir).map_err(io)?;
        fs::write(dir.join(format!("{name}.json")), &json).map_err(io)?;
        for (file, body) in extra {
            fs::write(dir.join(file), body).map_err(io)?;
        }
    }
    Ok(())
}

fn verdict(passed: bool) -> Outcome {
    if passed {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn transfer(common: &Common, families: &[String]) -> Outcome {
    let spec = load_spec(common)?;
    let mut opts = TransferOptions { window: window(common, 100_000)?, ..Default::default() };
    if !families.is_empty() {
        opts.families = families.iter().map(|f| FamilyKind::parse(f)).collect::<Result<_, _>>()?;
    }
    let rep = run_transfer(&spec, &opts)?;
    let traces: Vec<_> = rep.traces.iter().map(|t| (format!("trace_{}.csv", t.family), t.to_csv())).collect();
    emit(common, "transfer", to_json(&rep), &traces)?;
    verdict(rep.passed)
}

fn kneser(common: &Common) -> Outcome {
    let spec = load_spec(common)?;
    let System::Finite(f) = spec.build()? else {
        return Err(Failure::Usage("kneser needs a finite_translation system".into()));
    };
    let d = difference_set(&f.a, &f.b)?;
    let outcome = kneser_decompose(&f.a, &f.b)?;
    let holds = outcome.reduction().is_none_or(|r| r.identity_holds);
    let body = json!({
        "schema_version": transfer_core::harness::SCHEMA_VERSION,
        "group": f.group.to_string(),
        "a": f.a.to_vec(),
        "b": f.b.to_vec(),
        "difference": d.to_vec(),
        "decomposition": outcome,
        "passed": holds,
    });
    emit(common, "kneser", to_json(&body), &[])?;
    verdict(holds)
}

fn classify_file(common: &Common, file: &Path, d_max: Option<usize>, max_len: Option<usize>, tol: Option<usize>) -> Outcome {
    let set = IntegerWindowSet::parse_membership(&read(file)?, common.window)?;
    let mut params = ClassifyParams::fitted(set.window_len());
    params.d_max = d_max.unwrap_or(params.d_max);
    params.max_len = max_len.unwrap_or(params.max_len);
    params.balance_tolerance = tol.unwrap_or(params.balance_tolerance);
    let v = classify(&set, &params)?;
    emit(common, "classify", to_json(&v), &[])
}

fn campaign(which: Campaign, common: &Common) -> Outcome {
    let cfg = match &common.config {
        Some(p) => CampaignConfig::from_json(&read(p)?)?,
        None => CampaignConfig::default(),
    };
    let default_trials = match which {
        Campaign::Thm3 => 24,
        Campaign::ReturnIdentity => 200,
        Campaign::Connected => 500,
        _ => 1000,
    };
    let trials = common.trials.unwrap_or(default_trials);
    let max_order = cfg.max_order.unwrap_or(match which {
        Campaign::Kneser => 200,
        _ => 128,
    });
    let params = CampaignParams::new(common.seed, trials, max_order);
    let win = |default| match common.window.or(cfg.window) {
        Some(w) if w < 1 => Err(Failure::Usage(format!("--window must be positive, got {w}"))),
        w => Ok(w.unwrap_or(default)),
    };
    let report: CampaignReport = match which {
        Campaign::Thm1 => campaigns::verify_thm1(&params)?,
        Campaign::Thm2 => campaigns::verify_thm2(&params)?,
        Campaign::Max => campaigns::verify_max_bound(&params)?,
        Campaign::Overshoot => campaigns::verify_overshoot(&params)?,
        Campaign::Kneser => campaigns::verify_kneser(&params)?,
        Campaign::Connected => campaigns::verify_connected(&params)?,
        Campaign::ReturnIdentity => campaigns::verify_return_identity(&params, win(400)?)?,
        Campaign::Thm3 => {
            let cases = match cfg.rotation_systems()? {
                Some(list) => list,
                None => thm3_cases(common.seed, trials, cfg.endpoints),
            };
            campaigns::verify_thm3(&cases, win(100_000)?, common.seed)?
        }
    };
    emit(common, &format!("verify_{}", report.campaign), to_json(&report), &[])?;
    verdict(report.passed)
}

fn doubling(common: &Common, family: &str, delta: &str) -> Outcome {
    let family = CandidateFamily::parse(family)?;
    let delta = parse_rational(delta).map_err(|e| Failure::Usage(format!("--delta: {e}")))?;
    if delta <= 0.into() {
        return Err(Failure::Usage("--delta must be positive".into()));
    }
    let spec = match &common.config {
        Some(_) => load_spec(common)?,
        None => SystemSpec::from_json(match family {
            CandidateFamily::SubgroupPullbacks => r#"{"kind":"finite_translation","factors":[1024],"a":[0]}"#,
            CandidateFamily::Intervals => r#"{"kind":"rotation","alpha":"sqrt(2)-1","a":[["0","1/2"]]}"#,
        })?,
    };
    let rep = doubling_probe(&spec, delta, family, window(common, 1_000_000)?)?;
    emit(common, "doubling_probe", to_json(&rep), &[])?;
    verdict(rep.passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Transfer { common, families } => transfer(common, families),
        Command::Kneser { common } => kneser(common),
        Command::Classify { file, common, d_max, max_len, balance_tolerance } => {
            classify_file(common, file, *d_max, *max_len, *balance_tolerance)
        }
        Command::Verify { campaign: c, common } => campaign(*c, common),
        Command::DoublingProbe { common, family, delta } => doubling(common, family, delta),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => {
            eprintln!("check failed; see report");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
