//! Downlink traffic: per-UE FIFO packet queues fed by either a full-buffer
//! source or FTP model 3 (Poisson arrivals of fixed-size files).
//!
//! Arrivals happen at slot boundaries. Each UE draws from its own ChaCha
//! stream so generation order never affects the sampled sequence.

use std::collections::VecDeque;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TrafficModel {
    FullBuffer,
    Ftp3,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Packet {
    pub packet_id: u64,
    pub ue_id: usize,
    pub size: u64,
    pub arrival_slot: u64,
    pub bits_remaining: u64,
    pub completion_slot: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct UeQueue {
    pub ue_id: usize,
    pub packets: VecDeque<Packet>,
    backlog: u64,
    next_packet_id: u64,
    arrived_bits: u64,
    served_bits: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DrainOutcome {
    /// Bits actually removed from the queue (never more than the backlog).
    pub applied_bits: u64,
    pub completed: Vec<Packet>,
}

impl UeQueue {
    pub fn new(ue_id: usize) -> Self {
        Self {
            ue_id,
            ..Default::default()
        }
    }

    /// Queued demand d_j[n], bits.
    pub fn backlog(&self) -> u64 {
        self.backlog
    }

    pub fn arrived_bits(&self) -> u64 {
        self.arrived_bits
    }

    pub fn served_bits(&self) -> u64 {
        self.served_bits
    }

    pub fn push(&mut self, size: u64, slot: u64) {
        if size == 0 {
            return;
        }
        self.packets.push_back(Packet {
            packet_id: self.next_packet_id,
            ue_id: self.ue_id,
            size,
            arrival_slot: slot,
            bits_remaining: size,
            completion_slot: None,
        });
        self.next_packet_id += 1;
        self.backlog += size;
        self.arrived_bits += size;
    }

    /// Removes up to `served_bits` FIFO; surplus service is discarded.
    pub fn drain(&mut self, served_bits: u64, slot: u64) -> DrainOutcome {
        let mut budget = served_bits;
        let mut out = DrainOutcome::default();
        while budget > 0 {
            let Some(head) = self.packets.front_mut() else {
                break;
            };
            let take = budget.min(head.bits_remaining);
            head.bits_remaining -= take;
            budget -= take;
            out.applied_bits += take;
            if head.bits_remaining == 0 {
                let mut done = self.packets.pop_front().expect("head exists");
                done.completion_slot = Some(slot);
                out.completed.push(done);
            }
        }
        self.backlog -= out.applied_bits;
        self.served_bits += out.applied_bits;
        out
    }

    /// arrived = served + backlog, and the backlog matches the queued packets.
    pub fn is_conserved(&self) -> bool {
        let queued: u64 = self.packets.iter().map(|p| p.bits_remaining).sum();
        queued == self.backlog && self.arrived_bits == self.served_bits + self.backlog
    }
}

/// Appends one `packet_size`-bit packet to every queue.
pub fn full_buffer_step(queues: &mut [UeQueue], slot: u64, packet_size: u64) {
    for q in queues {
        q.push(packet_size, slot);
    }
}

/// Independent per-UE random streams derived from one seed.
#[derive(Debug, Clone)]
pub struct ArrivalStreams {
    rngs: Vec<ChaCha8Rng>,
}

impl ArrivalStreams {
    pub fn new(seed: u64, ue_ids: impl IntoIterator<Item = usize>) -> Self {
        let rngs = ue_ids
            .into_iter()
            .map(|id| {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                rng.set_stream(id as u64);
                rng
            })
            .collect();
        Self { rngs }
    }

    pub fn len(&self) -> usize {
        self.rngs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rngs.is_empty()
    }
}

/// Poisson(λ·δ) arrivals of `packet_size` bits per queue for one slot.
///
/// `streams` must be aligned with `queues`.
pub fn ftp3_step(
    queues: &mut [UeQueue],
    slot: u64,
    rate_per_s: f64,
    packet_size: u64,
    slot_length_s: f64,
    streams: &mut ArrivalStreams,
) {
    let mean = rate_per_s * slot_length_s;
    if !(mean > 0.0) {
        return;
    }
    let dist = Poisson::new(mean).expect("positive finite mean");
    for (q, rng) in queues.iter_mut().zip(streams.rngs.iter_mut()) {
        let arrivals = dist.sample(rng) as u64;
        for _ in 0..arrivals {
            q.push(packet_size, slot);
        }
    }
}
