//! Per-slot beam illumination and power allocation.
//!
//! Three schemes share the same output type:
//! - distance limit: greedy by demand, a beam is lit only if its center is
//!   strictly farther than `D` from every beam already lit this slot;
//! - no limit: the same greedy without the distance test;
//! - round robin: demand-blind cyclic sweep over the beam ids.
//!
//! Every scheme splits `P_max` evenly over the lit beams.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::orbits::{great_circle_km, GeodeticPoint};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Scheme {
    DistanceLimit,
    NoLimit,
    RoundRobin,
}

impl Scheme {
    pub const ALL: [Scheme; 3] = [Scheme::DistanceLimit, Scheme::NoLimit, Scheme::RoundRobin];

    pub fn name(self) -> &'static str {
        match self {
            Scheme::DistanceLimit => "distance_limit",
            Scheme::NoLimit => "no_limit",
            Scheme::RoundRobin => "round_robin",
        }
    }
}

impl std::fmt::Display for Scheme {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Scheme::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::config("scheduler", format!("unknown scheme `{s}`")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SchedulerParams {
    pub i_max: usize,
    pub distance_limit_km: f64,
    pub p_max_w: f64,
}

/// Beam priority: the largest queued backlog, in bits, among the UEs it serves.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct BeamDemand {
    pub beam_id: usize,
    pub priority: u64,
}

/// One schedulable beam: where it points and how much it is owed.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub center: GeodeticPoint,
    pub demand: BeamDemand,
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct ScheduleDecision {
    pub satellite_id: usize,
    pub slot: u64,
    pub illuminated: BTreeSet<usize>,
    /// Transmit power per lit beam, W.
    pub power: BTreeMap<usize, f64>,
}

impl ScheduleDecision {
    pub fn empty(satellite_id: usize, slot: u64) -> Self {
        Self {
            satellite_id,
            slot,
            ..Default::default()
        }
    }

    pub fn total_power(&self) -> f64 {
        self.power.values().sum()
    }

    /// Checks the beam-count and power budgets plus power/illumination agreement.
    pub fn check_budget(&self, i_max: usize, p_max_w: f64) -> Result<()> {
        let who = format!("satellite {} slot {}", self.satellite_id, self.slot);
        if self.illuminated.len() > i_max {
            return Err(Error::Invariant(format!(
                "beam budget: {who} lit {} beams with I_max = {i_max}",
                self.illuminated.len()
            )));
        }
        if self.total_power() > p_max_w * (1.0 + 1e-12) {
            return Err(Error::Invariant(format!(
                "power budget: {who} spends {} W of {p_max_w} W",
                self.total_power()
            )));
        }
        let keys: BTreeSet<usize> = self.power.keys().copied().collect();
        if keys != self.illuminated || self.power.values().any(|p| !(*p > 0.0)) {
            return Err(Error::Invariant(format!(
                "power map: {who} must assign positive power exactly to lit beams"
            )));
        }
        Ok(())
    }

    /// Checks that lit beam centers are pairwise strictly farther apart than `d_km`.
    pub fn check_separation(&self, centers: &BTreeMap<usize, GeodeticPoint>, d_km: f64) -> Result<()> {
        let lit: Vec<usize> = self.illuminated.iter().copied().collect();
        for (i, a) in lit.iter().enumerate() {
            for b in &lit[i + 1..] {
                let d = great_circle_km(&centers[a], &centers[b]);
                if !(d > d_km) {
                    return Err(Error::Invariant(format!(
                        "distance limit: satellite {} slot {} lit beams {a} and {b} only {d:.3} km apart",
                        self.satellite_id, self.slot
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Splits `p_max_w` evenly over the lit beams; an empty set stays empty.
pub fn allocate_power(mut decision: ScheduleDecision, p_max_w: f64) -> ScheduleDecision {
    decision.power.clear();
    let n = decision.illuminated.len();
    if n == 0 {
        return decision;
    }
    let share = p_max_w / n as f64;
    decision.power = decision.illuminated.iter().map(|&k| (k, share)).collect();
    decision
}

/// Positive-demand candidates, highest priority first, lower beam id on ties.
fn by_priority(beams: &[Candidate]) -> Vec<&Candidate> {
    let mut order: Vec<&Candidate> = beams.iter().filter(|c| c.demand.priority > 0).collect();
    order.sort_by(|a, b| {
        b.demand
            .priority
            .cmp(&a.demand.priority)
            .then(a.demand.beam_id.cmp(&b.demand.beam_id))
    });
    order
}

pub fn schedule_distance_limit(
    satellite_id: usize,
    slot: u64,
    beams: &[Candidate],
    params: &SchedulerParams,
) -> ScheduleDecision {
    let mut decision = ScheduleDecision::empty(satellite_id, slot);
    if params.i_max == 0 {
        return decision;
    }
    let mut lit: Vec<&GeodeticPoint> = Vec::new();
    for c in by_priority(beams) {
        if lit.iter().all(|p| great_circle_km(p, &c.center) > params.distance_limit_km) {
            lit.push(&c.center);
            decision.illuminated.insert(c.demand.beam_id);
            if decision.illuminated.len() == params.i_max {
                break;
            }
        }
    }
    allocate_power(decision, params.p_max_w)
}

pub fn schedule_no_limit(
    satellite_id: usize,
    slot: u64,
    beams: &[Candidate],
    params: &SchedulerParams,
) -> ScheduleDecision {
    let mut decision = ScheduleDecision::empty(satellite_id, slot);
    decision.illuminated = by_priority(beams)
        .into_iter()
        .take(params.i_max)
        .map(|c| c.demand.beam_id)
        .collect();
    allocate_power(decision, params.p_max_w)
}

/// Lights the next `I_max` beams in cyclic id order from `cursor`, then
/// advances `cursor` by `I_max` modulo the beam count.
///
/// `beam_ids` is the satellite's full beam set, ascending.
pub fn schedule_round_robin(
    satellite_id: usize,
    slot: u64,
    beam_ids: &[usize],
    params: &SchedulerParams,
    cursor: &mut usize,
) -> ScheduleDecision {
    let mut decision = ScheduleDecision::empty(satellite_id, slot);
    let n = beam_ids.len();
    if n == 0 {
        return decision;
    }
    let start = *cursor % n;
    decision.illuminated = (0..params.i_max.min(n)).map(|i| beam_ids[(start + i) % n]).collect();
    *cursor = (start + params.i_max) % n;
    allocate_power(decision, params.p_max_w)
}
