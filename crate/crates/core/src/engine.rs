//! Slotted simulation loop.
//!
//! Each slot runs five phases in order:
//! 1. traffic arrivals,
//! 2. per-satellite scheduling from the post-arrival backlogs,
//! 3. SINR for every UE whose serving beam is lit, against all satellites' decisions,
//! 4. PHY service and FIFO drain (one UE per lit beam),
//! 5. metric accumulation.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{served_by_beam, UeRecord};
use crate::link::{compute_sinr, linear_to_db, noise_power, ArrayGeometry, BandProfile, GainTable, LinkSample};
use crate::orbits::{propagate, GeodeticPoint, SatelliteState};
use crate::parallel::{self, ExecMode};
use crate::scenario::Scene;
use crate::scheduler::{
    schedule_distance_limit, schedule_no_limit, schedule_round_robin, BeamDemand, Candidate, ScheduleDecision,
    SchedulerParams, Scheme,
};
use crate::traffic::{full_buffer_step, ftp3_step, ArrivalStreams, TrafficModel, UeQueue};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SlotClock {
    pub horizon_s: f64,
    pub slot_length_s: f64,
    pub slot_count: u64,
    /// Last slot run; 0 before the first.
    pub current: u64,
}

impl SlotClock {
    pub fn new(horizon_s: f64, slot_length_s: f64) -> Result<Self> {
        if !(slot_length_s > 0.0) {
            return Err(Error::config("slot_length_s", "must be positive"));
        }
        if !(horizon_s > 0.0) {
            return Err(Error::config("horizon_s", "must be positive"));
        }
        let n = (horizon_s / slot_length_s).round();
        if n < 1.0 || ((n * slot_length_s - horizon_s) / horizon_s).abs() > 1e-9 {
            return Err(Error::config(
                "horizon_s",
                format!("{horizon_s} s is not a whole number of {slot_length_s} s slots"),
            ));
        }
        Ok(Self {
            horizon_s,
            slot_length_s,
            slot_count: n as u64,
            current: 0,
        })
    }

    pub fn is_done(&self) -> bool {
        self.current >= self.slot_count
    }
}

/// Capped-Shannon PHY abstraction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhyParams {
    pub efficiency: f64,
    /// Spectral-efficiency ceiling, bit/s/Hz.
    pub se_cap: f64,
}

impl Default for PhyParams {
    fn default() -> Self {
        Self {
            efficiency: 0.75,
            se_cap: 7.4,
        }
    }
}

/// Bits deliverable in one slot: δ · share · η · B · min(log2(1+γ), SE_cap).
pub fn serve_bits(sinr: f64, band: &BandProfile, slot_length_s: f64, share: f64, phy: &PhyParams) -> f64 {
    if !(sinr > 0.0) {
        return 0.0;
    }
    slot_length_s * share * phy.efficiency * band.bandwidth_hz() * (1.0 + sinr).log2().min(phy.se_cap)
}

/// Round-robin position inside one beam: the last UE served.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct IntraBeamCursor {
    pub last: Option<usize>,
}

/// Picks the next backlogged member after the cursor (cycling by id) and
/// gives it the whole beam for the slot.
///
/// `members` must be ascending. Returns an empty vector if nobody is backlogged.
pub fn intra_beam_share<F>(members: &[usize], backlog: F, cursor: &mut IntraBeamCursor) -> Vec<(usize, f64)>
where
    F: Fn(usize) -> u64,
{
    let start = match cursor.last {
        Some(last) => members.partition_point(|&u| u <= last),
        None => 0,
    };
    let n = members.len();
    let pick = (0..n).map(|i| members[(start + i) % n]).find(|&u| backlog(u) > 0);
    match pick {
        Some(u) => {
            cursor.last = Some(u);
            vec![(u, 1.0)]
        }
        None => Vec::new(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub band: BandProfile,
    pub geometry: ArrayGeometry,
    pub phy: PhyParams,
    pub scheme: Scheme,
    pub scheduler: SchedulerParams,
    pub traffic: TrafficModel,
    pub packet_size_bits: u64,
    pub arrival_rate: f64,
    pub horizon_s: f64,
    pub slot_length_s: f64,
    pub seed: u64,
    pub exec_mode: ExecMode,
    pub live_propagation: bool,
    /// Record SINR of every UE in a lit beam (not only the one served).
    pub record_all_sinr: bool,
}

/// Running totals. Indices follow the simulation's active-UE order.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct MetricsAccumulator {
    /// `[satellite][slot]` bits served.
    pub served_bits: Vec<Vec<u64>>,
    /// `[satellite][slot]` number of lit beams.
    pub illuminated: Vec<Vec<usize>>,
    pub lifetimes_s: Vec<f64>,
    pub offered_bits: Vec<u64>,
    pub demanded_bits: Vec<u64>,
    pub sinr_samples: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeSatisfaction {
    pub ue_id: usize,
    pub offered_bits: u64,
    pub demanded_bits: u64,
    pub satisfaction: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsReport {
    pub scheme: Scheme,
    pub i_max: usize,
    pub seed: u64,
    pub horizon_s: f64,
    pub slot_count: u64,
    pub satellite_throughput_mbps: Vec<f64>,
    pub mean_satellite_throughput_mbps: f64,
    /// Mean lit beams per satellite per slot.
    pub mean_illuminated: Vec<f64>,
    /// Ascending.
    pub sinr_db: Vec<f64>,
    /// Life times of completed packets, ascending.
    pub lifetimes_s: Vec<f64>,
    pub incomplete_packets: usize,
    pub ue_satisfaction: Vec<UeSatisfaction>,
    pub system_satisfaction: Option<f64>,
    pub conserved: bool,
}

impl MetricsReport {
    pub fn median_sinr_db(&self) -> Option<f64> {
        quantile(&self.sinr_db, 0.5)
    }

    pub fn mean_illuminated_all(&self) -> f64 {
        if self.mean_illuminated.is_empty() {
            return 0.0;
        }
        self.mean_illuminated.iter().sum::<f64>() / self.mean_illuminated.len() as f64
    }
}

/// Nearest-rank quantile of an ascending sample.
pub fn quantile(sorted: &[f64], q: f64) -> Option<f64> {
    if sorted.is_empty() {
        return None;
    }
    let rank = ((q * sorted.len() as f64).ceil() as usize).clamp(1, sorted.len());
    Some(sorted[rank - 1])
}

pub fn finalize_metrics(
    acc: &MetricsAccumulator,
    ue_ids: &[usize],
    horizon_s: f64,
    incomplete_packets: usize,
    conserved: bool,
    meta: (Scheme, usize, u64),
) -> MetricsReport {
    let satellite_throughput_mbps: Vec<f64> = acc
        .served_bits
        .iter()
        .map(|s| s.iter().sum::<u64>() as f64 / horizon_s / 1e6)
        .collect();
    let mean_satellite_throughput_mbps = if satellite_throughput_mbps.is_empty() {
        0.0
    } else {
        satellite_throughput_mbps.iter().sum::<f64>() / satellite_throughput_mbps.len() as f64
    };
    let mean_illuminated = acc
        .illuminated
        .iter()
        .map(|s| if s.is_empty() { 0.0 } else { s.iter().sum::<usize>() as f64 / s.len() as f64 })
        .collect();

    let mut sinr_db: Vec<f64> = acc.sinr_samples.iter().map(|&g| linear_to_db(g)).collect();
    sinr_db.sort_by(f64::total_cmp);
    let mut lifetimes_s = acc.lifetimes_s.clone();
    lifetimes_s.sort_by(f64::total_cmp);

    let ue_satisfaction: Vec<UeSatisfaction> = ue_ids
        .iter()
        .enumerate()
        .map(|(i, &ue_id)| {
            let (offered, demanded) = (acc.offered_bits[i], acc.demanded_bits[i]);
            UeSatisfaction {
                ue_id,
                offered_bits: offered,
                demanded_bits: demanded,
                satisfaction: if demanded == 0 { 1.0 } else { offered as f64 / demanded as f64 },
            }
        })
        .collect();
    let offered: u64 = acc.offered_bits.iter().sum();
    let demanded: u64 = acc.demanded_bits.iter().sum();
    let system_satisfaction = (demanded > 0).then(|| offered as f64 / demanded as f64);

    MetricsReport {
        scheme: meta.0,
        i_max: meta.1,
        seed: meta.2,
        horizon_s,
        slot_count: acc.served_bits.first().map_or(0, |s| s.len() as u64),
        satellite_throughput_mbps,
        mean_satellite_throughput_mbps,
        mean_illuminated,
        sinr_db,
        lifetimes_s,
        incomplete_packets,
        ue_satisfaction,
        system_satisfaction,
        conserved,
    }
}

/// One slot's observable output, kept for inspection and replay checks.
#[derive(Debug, Clone, Default)]
pub struct SlotRecord {
    pub slot: u64,
    pub decisions: Vec<ScheduleDecision>,
    pub samples: Vec<LinkSample>,
    /// `(ue_id, bits)` actually drained this slot.
    pub served: Vec<(usize, u64)>,
}

pub struct Simulation {
    config: SimConfig,
    clock: SlotClock,
    epoch_satellites: Vec<SatelliteState>,
    satellites: Vec<SatelliteState>,
    centers: Vec<BTreeMap<usize, GeodeticPoint>>,
    /// Covered UEs only, indexed by active position.
    active: Vec<UeRecord>,
    /// `[satellite][beam]` active indices served by that beam.
    beam_members: Vec<Vec<Vec<usize>>>,
    gains: GainTable,
    noise_mw: f64,
    queues: Vec<UeQueue>,
    streams: ArrivalStreams,
    rr_cursors: Vec<usize>,
    beam_cursors: Vec<Vec<IntraBeamCursor>>,
    acc: MetricsAccumulator,
    last: SlotRecord,
}

impl Simulation {
    pub fn new(scene: &Scene, config: SimConfig) -> Result<Self> {
        let clock = SlotClock::new(config.horizon_s, config.slot_length_s)?;
        config.band.validate()?;
        config.geometry.validate()?;
        if config.scheduler.i_max == 0 {
            return Err(Error::config("I_max", "must be at least 1"));
        }
        if !(config.scheduler.p_max_w > 0.0) {
            return Err(Error::config("P_max_W", "must be positive"));
        }
        if !(config.scheduler.distance_limit_km >= 0.0) {
            return Err(Error::config("D_km", "must be non-negative"));
        }

        let active: Vec<UeRecord> = scene
            .ues
            .iter()
            .filter(|u| u.serving_satellite.is_some() && u.serving_beam.is_some())
            .cloned()
            .collect();
        let index_of: BTreeMap<usize, usize> = active.iter().enumerate().map(|(i, u)| (u.ue_id, i)).collect();
        let beam_members: Vec<Vec<Vec<usize>>> = served_by_beam(&scene.beams, &active)
            .into_iter()
            .map(|beams| {
                beams
                    .into_iter()
                    .map(|ids| ids.iter().map(|id| index_of[id]).collect())
                    .collect()
            })
            .collect();
        let gains = GainTable::build(
            config.exec_mode,
            &active,
            &scene.satellites,
            &scene.beams,
            &config.band,
            &config.geometry,
        )?;
        let sats = scene.satellites.len();
        let slots = clock.slot_count as usize;

        Ok(Self {
            noise_mw: noise_power(&config.band),
            queues: active.iter().map(|u| UeQueue::new(u.ue_id)).collect(),
            streams: ArrivalStreams::new(config.seed, active.iter().map(|u| u.ue_id)),
            rr_cursors: vec![0; sats],
            beam_cursors: scene.beams.iter().map(|b| vec![IntraBeamCursor::default(); b.len()]).collect(),
            acc: MetricsAccumulator {
                served_bits: vec![Vec::with_capacity(slots); sats],
                illuminated: vec![Vec::with_capacity(slots); sats],
                offered_bits: vec![0; active.len()],
                demanded_bits: vec![0; active.len()],
                ..Default::default()
            },
            centers: scene
                .beams
                .iter()
                .map(|bs| bs.iter().map(|b| (b.beam_id, b.center)).collect())
                .collect(),
            epoch_satellites: scene.satellites.clone(),
            satellites: scene.satellites.clone(),
            beam_members,
            gains,
            active,
            clock,
            config,
            last: SlotRecord::default(),
        })
    }

    pub fn clock(&self) -> &SlotClock {
        &self.clock
    }

    pub fn queues(&self) -> &[UeQueue] {
        &self.queues
    }

    pub fn active_ues(&self) -> &[UeRecord] {
        &self.active
    }

    pub fn gains(&self) -> &GainTable {
        &self.gains
    }

    pub fn noise_mw(&self) -> f64 {
        self.noise_mw
    }

    pub fn last_slot(&self) -> &SlotRecord {
        &self.last
    }

    pub fn accumulator(&self) -> &MetricsAccumulator {
        &self.acc
    }

    /// Runs the next slot.
    pub fn step(&mut self) -> Result<()> {
        if self.clock.is_done() {
            return Err(Error::State("horizon already reached".into()));
        }
        let slot = self.clock.current + 1;
        self.clock.current = slot;
        let mode = self.config.exec_mode;

        if self.config.live_propagation && slot > 1 {
            let dt = (slot - 1) as f64 * self.clock.slot_length_s;
            self.satellites = self.epoch_satellites.iter().map(|s| propagate(s, dt)).collect();
            let beams: Vec<Vec<_>> = self.rebuild_beams();
            self.gains = GainTable::build(mode, &self.active, &self.satellites, &beams, &self.config.band, &self.config.geometry)?;
        }

        // 1. arrivals
        let before: Vec<u64> = self.queues.iter().map(|q| q.arrived_bits()).collect();
        match self.config.traffic {
            TrafficModel::FullBuffer => full_buffer_step(&mut self.queues, slot, self.config.packet_size_bits),
            TrafficModel::Ftp3 => ftp3_step(
                &mut self.queues,
                slot,
                self.config.arrival_rate,
                self.config.packet_size_bits,
                self.clock.slot_length_s,
                &mut self.streams,
            ),
        }
        for (i, q) in self.queues.iter().enumerate() {
            self.acc.demanded_bits[i] += q.arrived_bits() - before[i];
        }

        // 2. scheduling
        let decisions = self.schedule(slot)?;

        // 3. SINR for every UE under a lit serving beam
        let lit_ues: Vec<usize> = (0..self.active.len())
            .filter(|&a| {
                let u = &self.active[a];
                decisions[u.serving_satellite.unwrap()]
                    .illuminated
                    .contains(&u.serving_beam.unwrap())
            })
            .collect();
        let gains = &self.gains;
        let active = &self.active;
        let noise = self.noise_mw;
        let samples: Vec<Result<LinkSample>> = parallel::map_indices(mode, lit_ues.len(), |i| {
            let a = lit_ues[i];
            compute_sinr(&active[a], &decisions, |m, k| gains.get(a, m, k), noise)
        });
        let samples: Vec<LinkSample> = samples.into_iter().collect::<Result<_>>()?;
        let sinr_of: BTreeMap<usize, f64> = lit_ues.iter().zip(&samples).map(|(&a, s)| (a, s.sinr)).collect();

        // 4. service: one backlogged UE per lit beam
        let mut grant = vec![0u64; self.active.len()];
        let mut served_by_sat = vec![0u64; self.satellites.len()];
        let mut record_sinr = Vec::new();
        for (m, decision) in decisions.iter().enumerate() {
            for &k in &decision.illuminated {
                let queues = &self.queues;
                let shares = intra_beam_share(&self.beam_members[m][k], |a| queues[a].backlog(), &mut self.beam_cursors[m][k]);
                for (a, share) in shares {
                    let gamma = sinr_of[&a];
                    let bits = serve_bits(gamma, &self.config.band, self.clock.slot_length_s, share, &self.config.phy);
                    grant[a] = bits.floor() as u64;
                    if !self.config.record_all_sinr {
                        record_sinr.push(gamma);
                    }
                }
            }
        }
        let mut outcomes: Vec<(u64, Vec<u64>)> = vec![(0, Vec::new()); self.queues.len()];
        {
            let mut pairs: Vec<(&mut UeQueue, &mut (u64, Vec<u64>))> = self.queues.iter_mut().zip(outcomes.iter_mut()).collect();
            parallel::for_each_mut(mode, &mut pairs, |a, (q, out)| {
                if grant[a] > 0 {
                    let o = q.drain(grant[a], slot);
                    out.0 = o.applied_bits;
                    out.1 = o.completed.iter().map(|p| p.arrival_slot).collect();
                }
            });
        }

        // 5. metrics
        let delta = self.clock.slot_length_s;
        let mut served = Vec::new();
        for (a, (applied, arrivals)) in outcomes.into_iter().enumerate() {
            if applied > 0 {
                self.acc.offered_bits[a] += applied;
                served_by_sat[self.active[a].serving_satellite.unwrap()] += applied;
                served.push((self.active[a].ue_id, applied));
            }
            for arrival in arrivals {
                self.acc.lifetimes_s.push((slot - arrival + 1) as f64 * delta);
            }
            let q = &self.queues[a];
            if q.arrived_bits() != q.served_bits() + q.backlog() || self.acc.offered_bits[a] != q.served_bits() {
                return Err(Error::Invariant(format!("bit conservation: UE {} at slot {slot}", q.ue_id)));
            }
        }
        for (m, d) in decisions.iter().enumerate() {
            self.acc.served_bits[m].push(served_by_sat[m]);
            self.acc.illuminated[m].push(d.illuminated.len());
        }
        if self.config.record_all_sinr {
            self.acc.sinr_samples.extend(samples.iter().map(|s| s.sinr));
        } else {
            self.acc.sinr_samples.extend(record_sinr);
        }

        self.last = SlotRecord {
            slot,
            decisions,
            samples,
            served,
        };
        Ok(())
    }

    fn rebuild_beams(&self) -> Vec<Vec<crate::layout::Spotbeam>> {
        self.centers
            .iter()
            .enumerate()
            .map(|(m, cs)| {
                cs.iter()
                    .map(|(&k, c)| crate::layout::Spotbeam {
                        beam_id: k,
                        satellite_id: m,
                        center: *c,
                        diameter_km: 0.0,
                        member_ues: Vec::new(),
                    })
                    .collect()
            })
            .collect()
    }

    fn schedule(&mut self, slot: u64) -> Result<Vec<ScheduleDecision>> {
        let params = self.config.scheduler;
        let scheme = self.config.scheme;
        let queues = &self.queues;
        let members = &self.beam_members;
        let centers = &self.centers;

        let mut per_sat: Vec<(usize, Option<ScheduleDecision>)> = self.rr_cursors.iter().map(|&c| (c, None)).collect();
        parallel::for_each_mut(self.config.exec_mode, &mut per_sat, |m, (cursor, out)| {
            let decision = match scheme {
                Scheme::RoundRobin => {
                    let ids: Vec<usize> = centers[m].keys().copied().collect();
                    schedule_round_robin(m, slot, &ids, &params, cursor)
                }
                Scheme::DistanceLimit | Scheme::NoLimit => {
                    let candidates: Vec<Candidate> = centers[m]
                        .iter()
                        .map(|(&k, c)| Candidate {
                            center: *c,
                            demand: BeamDemand {
                                beam_id: k,
                                priority: members[m][k].iter().map(|&a| queues[a].backlog()).max().unwrap_or(0),
                            },
                        })
                        .collect();
                    if scheme == Scheme::DistanceLimit {
                        schedule_distance_limit(m, slot, &candidates, &params)
                    } else {
                        schedule_no_limit(m, slot, &candidates, &params)
                    }
                }
            };
            *out = Some(decision);
        });

        let mut decisions = Vec::with_capacity(per_sat.len());
        for (m, (cursor, d)) in per_sat.into_iter().enumerate() {
            self.rr_cursors[m] = cursor;
            let d = d.expect("every satellite scheduled");
            d.check_budget(params.i_max, params.p_max_w)?;
            if scheme == Scheme::DistanceLimit {
                d.check_separation(&self.centers[m], params.distance_limit_km)?;
            }
            decisions.push(d);
        }
        Ok(decisions)
    }

    fn incomplete_packets(&self) -> usize {
        self.queues.iter().map(|q| q.packets.len()).sum()
    }

    /// Runs every remaining slot and returns the final report.
    pub fn run(mut self) -> Result<MetricsReport> {
        while !self.clock.is_done() {
            self.step()?;
        }
        Ok(self.finish())
    }

    pub fn finish(self) -> MetricsReport {
        let conserved = self.queues.iter().all(UeQueue::is_conserved)
            && self
                .queues
                .iter()
                .zip(&self.acc.offered_bits)
                .all(|(q, &o)| o == q.served_bits());
        let ids: Vec<usize> = self.active.iter().map(|u| u.ue_id).collect();
        finalize_metrics(
            &self.acc,
            &ids,
            self.clock.horizon_s,
            self.incomplete_packets(),
            conserved,
            (self.config.scheme, self.config.scheduler.i_max, self.config.seed),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn clock_slot_count() {
        let c = SlotClock::new(1.0, 1e-3).unwrap();
        assert_eq!(c.slot_count, 1000);
        assert!(SlotClock::new(1.0, 0.3).is_err());
        assert!(SlotClock::new(1.0, 0.0).is_err());
    }

    #[test]
    fn serve_bits_cases() {
        let band = BandProfile::s_band();
        let phy = PhyParams::default();
        assert_eq!(serve_bits(0.0, &band, 1e-3, 1.0, &phy), 0.0);
        assert!((serve_bits(1.0, &band, 1e-3, 1.0, &phy) - 22_500.0).abs() < 1e-6);
        let capped = serve_bits(1e6, &band, 1e-3, 1.0, &phy);
        assert!((capped - 0.75 * 30e6 * 1e-3 * 7.4).abs() < 1e-6);
    }

    #[test]
    fn share_single_member() {
        let mut c = IntraBeamCursor::default();
        assert_eq!(intra_beam_share(&[4], |_| 10, &mut c), vec![(4, 1.0)]);
    }

    #[test]
    fn share_alternates() {
        let mut c = IntraBeamCursor::default();
        let a = intra_beam_share(&[1, 2], |_| 10, &mut c);
        let b = intra_beam_share(&[1, 2], |_| 10, &mut c);
        assert_eq!((a[0].0, b[0].0), (1, 2));
    }

    #[test]
    fn share_skips_emptied_member() {
        // cursor trace: 0,1,2,0 then UE 1 empties → 2,0,2,0
        let mut c = IntraBeamCursor::default();
        let members = [0, 1, 2];
        let mut picks = Vec::new();
        for slot in 0..8 {
            let empty_one = slot >= 4;
            let s = intra_beam_share(&members, |u| if empty_one && u == 1 { 0 } else { 5 }, &mut c);
            picks.push(s[0].0);
        }
        assert_eq!(picks, vec![0, 1, 2, 0, 2, 0, 2, 0]);
        assert!(intra_beam_share(&members, |_| 0, &mut c).is_empty());
    }

    #[test]
    fn quantile_nearest_rank() {
        let v = [1.0, 2.0, 3.0, 4.0];
        assert_eq!(quantile(&v, 0.5), Some(2.0));
        assert_eq!(quantile(&v, 1.0), Some(4.0));
        assert_eq!(quantile(&v, 0.0), Some(1.0));
        assert_eq!(quantile(&[], 0.5), None);
    }

    #[test]
    fn satisfaction_definitions() {
        let acc = MetricsAccumulator {
            served_bits: vec![vec![0]],
            illuminated: vec![vec![0]],
            offered_bits: vec![700_000, 5],
            demanded_bits: vec![1_000_000, 5],
            ..Default::default()
        };
        let r = finalize_metrics(&acc, &[0, 1], 1.0, 0, true, (Scheme::NoLimit, 1, 0));
        assert!((r.ue_satisfaction[0].satisfaction - 0.7).abs() < 1e-12);
        assert_eq!(r.ue_satisfaction[1].satisfaction, 1.0);
        let full = MetricsAccumulator {
            offered_bits: vec![3, 4],
            demanded_bits: vec![3, 4],
            ..acc.clone()
        };
        let r = finalize_metrics(&full, &[0, 1], 1.0, 0, true, (Scheme::NoLimit, 1, 0));
        assert_eq!(r.system_satisfaction, Some(1.0));
        let idle = MetricsAccumulator {
            offered_bits: vec![0, 0],
            demanded_bits: vec![0, 0],
            ..acc
        };
        let r = finalize_metrics(&idle, &[0, 1], 1.0, 0, true, (Scheme::NoLimit, 1, 0));
        assert_eq!(r.system_satisfaction, None);
        assert!(r.ue_satisfaction.iter().all(|u| u.satisfaction == 1.0));
    }
}
