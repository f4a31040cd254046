//! Sweeps over scheme × I_max × seed.
//!
//! The scene for a seed is built once and shared by every scheme and I_max
//! run with that seed, so the schemes see the same UEs and beams.

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::engine::{MetricsReport, Simulation};
use crate::error::Result;
use crate::parallel::{map_indices, with_workers, ExecMode};
use crate::scenario::{build_scene, Scene};
use crate::scheduler::Scheme;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RunJob {
    pub scheme: Scheme,
    pub i_max: usize,
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub job: RunJob,
    pub scene_hash: String,
    pub report: MetricsReport,
}

#[derive(Debug, Clone)]
pub struct SeedScene {
    pub seed: u64,
    pub scene: Scene,
    pub hash: String,
}

#[derive(Debug, Clone)]
pub struct ExperimentResult {
    pub config: ExperimentConfig,
    pub scenes: Vec<SeedScene>,
    /// In plan order.
    pub runs: Vec<RunOutcome>,
}

impl ExperimentResult {
    pub fn runs_for_seed(&self, seed: u64) -> impl Iterator<Item = &RunOutcome> {
        self.runs.iter().filter(move |r| r.job.seed == seed)
    }

    pub fn find(&self, scheme: Scheme, i_max: usize, seed: u64) -> Option<&RunOutcome> {
        self.runs
            .iter()
            .find(|r| r.job == RunJob { scheme, i_max, seed })
    }
}

/// Seed-major, then I_max, then scheme, each in config order.
pub fn plan(cfg: &ExperimentConfig) -> Vec<RunJob> {
    let mut jobs = Vec::new();
    for &seed in &cfg.seed {
        for &i_max in &cfg.i_max {
            for &scheme in &cfg.scheduler {
                jobs.push(RunJob { scheme, i_max, seed });
            }
        }
    }
    jobs
}

pub fn run_job(cfg: &ExperimentConfig, scene: &Scene, job: RunJob, mode: ExecMode) -> Result<MetricsReport> {
    let sim = Simulation::new(scene, cfg.sim_config(job.scheme, job.i_max, job.seed, mode))?;
    sim.run()
}

/// Runs the whole plan. `workers == 0` uses the global pool.
pub fn run_experiment(cfg: &ExperimentConfig, mode: ExecMode, workers: usize) -> Result<ExperimentResult> {
    cfg.validate()?;
    let scenario = cfg.scenario()?;
    with_workers(workers, || {
        let scenes = map_indices(mode, cfg.seed.len(), |i| {
            let seed = cfg.seed[i];
            build_scene(&scenario, seed, mode).map(|scene| SeedScene {
                seed,
                hash: scene.hash(),
                scene,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

        let jobs = plan(cfg);
        let runs = map_indices(mode, jobs.len(), |i| {
            let job = jobs[i];
            let s = scenes.iter().find(|s| s.seed == job.seed).expect("scene per seed");
            run_job(cfg, &s.scene, job, mode).map(|report| RunOutcome {
                job,
                scene_hash: s.hash.clone(),
                report,
            })
        })
        .into_iter()
        .collect::<Result<Vec<_>>>()?;

        Ok(ExperimentResult {
            config: cfg.clone(),
            scenes,
            runs,
        })
    })
}
