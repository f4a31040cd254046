//! Reference implementations shared by the integration tests.
#![allow(dead_code)]

use std::collections::BTreeSet;

use beamhop::orbits::{geodetic_to_ecef, GeodeticPoint, EARTH_RADIUS_KM};
use beamhop::scheduler::{BeamDemand, Candidate};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Surface distance from the chord between the two ECEF points.
pub fn arc_km(a: &GeodeticPoint, b: &GeodeticPoint) -> f64 {
    let chord = geodetic_to_ecef(a).distance(geodetic_to_ecef(b));
    2.0 * EARTH_RADIUS_KM * (chord / (2.0 * EARTH_RADIUS_KM)).min(1.0).asin()
}

/// Literal greedy loop: repeatedly pull the remaining beam with the largest
/// demand (lowest id on ties), light it if it clears every lit beam by more
/// than `d_km`, drop it otherwise. Zero-demand beams are never candidates.
pub fn greedy_trace(beams: &[Candidate], i_max: usize, d_km: f64) -> BTreeSet<usize> {
    let mut remaining: Vec<&Candidate> = beams.iter().filter(|c| c.demand.priority > 0).collect();
    let mut lit: Vec<&Candidate> = Vec::new();
    while !remaining.is_empty() && lit.len() < i_max {
        let mut best = 0;
        for (i, c) in remaining.iter().enumerate() {
            let b = remaining[best];
            if c.demand.priority > b.demand.priority
                || (c.demand.priority == b.demand.priority && c.demand.beam_id < b.demand.beam_id)
            {
                best = i;
            }
        }
        let k = remaining.remove(best);
        if lit.iter().all(|l| arc_km(&l.center, &k.center) > d_km) {
            lit.push(k);
        }
    }
    lit.iter().map(|c| c.demand.beam_id).collect()
}

/// The `i_max` positive-demand beams with the largest demand, ties by id.
pub fn top_k(beams: &[Candidate], i_max: usize) -> BTreeSet<usize> {
    let mut out = BTreeSet::new();
    let mut taken = vec![false; beams.len()];
    for _ in 0..i_max {
        let mut best: Option<usize> = None;
        for (i, c) in beams.iter().enumerate() {
            if taken[i] || c.demand.priority == 0 {
                continue;
            }
            best = match best {
                None => Some(i),
                Some(b) => {
                    let bb = &beams[b].demand;
                    if (c.demand.priority, std::cmp::Reverse(c.demand.beam_id)) > (bb.priority, std::cmp::Reverse(bb.beam_id)) {
                        Some(i)
                    } else {
                        Some(b)
                    }
                }
            };
        }
        match best {
            Some(b) => {
                taken[b] = true;
                out.insert(beams[b].demand.beam_id);
            }
            None => break,
        }
    }
    out
}

/// Random scheduling instance: up to 20 beams in a 0.6° box, some with zero
/// demand, demands drawn from a small set so ties happen.
pub fn random_instance(rng: &mut ChaCha8Rng) -> (Vec<Candidate>, usize, f64) {
    let n = rng.random_range(0..=20);
    let beams = (0..n)
        .map(|id| Candidate {
            center: GeodeticPoint::new(30.0 + rng.random_range(0.0..0.6), 108.0 + rng.random_range(0.0..0.6)),
            demand: BeamDemand {
                beam_id: id,
                priority: if rng.random_bool(0.15) { 0 } else { rng.random_range(1..8u64) * 4_000_000 },
            },
        })
        .collect();
    let i_max = rng.random_range(1..=24);
    let d = rng.random_range(0.0..60.0);
    (beams, i_max, d)
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
