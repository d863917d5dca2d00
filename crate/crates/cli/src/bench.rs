use std::time::Instant;

use ecbasis::ecspace::{families, EcSpace, SpaceError, SpaceOptions};

use crate::config::SweepConfig;
use crate::stats::{confidence_interval, ConfidenceInterval};
use crate::CliError;

/// Wall-clock milliseconds of `trials` runs of `f`, after one discarded warm-up run.
pub fn time_trials<T, E>(
    trials: usize,
    mut f: impl FnMut() -> Result<T, E>,
) -> Result<Vec<f64>, E> {
    f()?;
    (0..trials)
        .map(|_| {
            let start = Instant::now();
            let out = f();
            let ms = start.elapsed().as_secs_f64() * 1e3;
            out.map(|value| {
                std::hint::black_box(value);
                ms
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct StageTiming {
    pub stage: String,
    pub interval: ConfidenceInterval,
}

pub fn summarize(stage: &str, samples: &[f64], significance: f64) -> Result<StageTiming, CliError> {
    Ok(StageTiming {
        stage: stage.to_string(),
        interval: confidence_interval(samples, significance)?,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub enum SweepOutcome {
    Built { partition_error: f64 },
    IllConditioned { stage: String },
    Failed(String),
}

/// Conditioning of `P_n` for one order.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepRow {
    pub order: usize,
    /// Largest condition number over the construction stages that were reached.
    pub condition_number: f64,
    pub estimated_digits: u32,
    pub outcome: SweepOutcome,
}

fn partition_error(space: &EcSpace, samples: usize) -> f64 {
    let (a, b) = (space.alpha(), space.beta());
    (0..samples)
        .map(|k| {
            let u = a + (b - a) * k as f64 / (samples - 1) as f64;
            let sum: f64 = space.b_values(0, u).map_or(f64::NAN, |v| v.iter().sum());
            (sum - 1.0).abs()
        })
        .fold(0.0, f64::max)
}

/// Builds `P_1 .. P_max_order` and records condition numbers and how each build ended.
pub fn conditioning_sweep(config: &SweepConfig, options: &SpaceOptions) -> Vec<SweepRow> {
    (1..=config.max_order)
        .map(|n| {
            let p = families::polynomial(n);
            match EcSpace::build(&p, config.alpha, config.beta, options) {
                Ok(space) => {
                    let worst = space
                        .condition_reports()
                        .iter()
                        .max_by(|a, b| a.condition_number.total_cmp(&b.condition_number))
                        .cloned();
                    SweepRow {
                        order: n,
                        condition_number: space.max_condition_number(),
                        estimated_digits: worst.map_or(16, |r| r.estimated_correct_digits),
                        outcome: SweepOutcome::Built {
                            partition_error: partition_error(&space, 1001),
                        },
                    }
                }
                Err(SpaceError::IllConditioned { stage, report }) => SweepRow {
                    order: n,
                    condition_number: report.condition_number,
                    estimated_digits: report.estimated_correct_digits,
                    outcome: SweepOutcome::IllConditioned { stage },
                },
                Err(e) => SweepRow {
                    order: n,
                    condition_number: f64::NAN,
                    estimated_digits: 0,
                    outcome: SweepOutcome::Failed(e.to_string()),
                },
            }
        })
        .collect()
}
