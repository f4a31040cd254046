//! Earth-fixed spotbeam placement and UE association.
//!
//! Each satellite places beams on its reporting UEs nearest first, skipping
//! UEs an existing beam already covers, until `K` beams exist or every UE is
//! covered. A UE is then served by its closest visible satellite through the
//! covering beam whose center is nearest.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::orbits::{great_circle_km, slant_distance, visible_satellites, GeodeticPoint, SatelliteState};
use crate::parallel::{self, ExecMode};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Spotbeam {
    pub beam_id: usize,
    pub satellite_id: usize,
    pub center: GeodeticPoint,
    pub diameter_km: f64,
    /// Reporting UEs within `diameter_km / 2` of the center, ascending.
    pub member_ues: Vec<usize>,
}

impl Spotbeam {
    pub fn covers(&self, p: &GeodeticPoint) -> bool {
        great_circle_km(&self.center, p) <= self.diameter_km / 2.0
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UeRecord {
    pub ue_id: usize,
    pub position: GeodeticPoint,
    pub serving_satellite: Option<usize>,
    pub serving_beam: Option<usize>,
}

impl UeRecord {
    pub fn new(ue_id: usize, position: GeodeticPoint) -> Self {
        Self {
            ue_id,
            position,
            serving_satellite: None,
            serving_beam: None,
        }
    }
}

/// Places up to `max_beams` beams of `sat` over `reporting` UEs.
pub fn assign_spotbeams(
    sat: &SatelliteState,
    reporting: &[UeRecord],
    max_beams: usize,
    diameter_km: f64,
) -> Vec<Spotbeam> {
    let radius = diameter_km / 2.0;
    let mut order: Vec<(f64, &UeRecord)> = reporting.iter().map(|u| (slant_distance(&u.position, sat), u)).collect();
    order.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.ue_id.cmp(&b.1.ue_id)));

    let mut centers: Vec<GeodeticPoint> = Vec::new();
    for (_, ue) in order {
        if centers.len() >= max_beams {
            break;
        }
        if centers.iter().any(|c| great_circle_km(c, &ue.position) <= radius) {
            continue;
        }
        centers.push(ue.position);
    }

    centers
        .into_iter()
        .enumerate()
        .map(|(beam_id, center)| {
            let mut member_ues: Vec<usize> = reporting
                .iter()
                .filter(|u| great_circle_km(&center, &u.position) <= radius)
                .map(|u| u.ue_id)
                .collect();
            member_ues.sort_unstable();
            Spotbeam {
                beam_id,
                satellite_id: sat.satellite_id,
                center,
                diameter_km,
                member_ues,
            }
        })
        .collect()
}

/// Closest visible satellite per UE; `None` when no satellite clears `min_elevation`.
pub fn closest_satellite(ue: &UeRecord, sats: &[SatelliteState], min_elevation: f64) -> Option<usize> {
    visible_satellites(&ue.position, sats, min_elevation).first().copied()
}

/// Maps each covered UE to `(satellite_id, beam_id)`.
///
/// `layouts[m]` holds the beams of the satellite whose id is `m`.
pub fn associate_ues(
    ues: &[UeRecord],
    sats: &[SatelliteState],
    layouts: &[Vec<Spotbeam>],
    min_elevation: f64,
) -> BTreeMap<usize, (usize, usize)> {
    let mut out = BTreeMap::new();
    for ue in ues {
        let Some(m) = closest_satellite(ue, sats, min_elevation) else {
            continue;
        };
        let Some(beams) = layouts.get(m) else {
            continue;
        };
        let best = beams
            .iter()
            .filter(|b| b.covers(&ue.position))
            .map(|b| (great_circle_km(&b.center, &ue.position), b.beam_id))
            .min_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
        if let Some((_, k)) = best {
            out.insert(ue.ue_id, (m, k));
        }
    }
    out
}

/// Full layout pass: partition UEs by closest satellite, place each
/// satellite's beams, then associate. Writes the assignment into `ues`.
///
/// Satellites must carry ids `0..sats.len()` in order.
pub fn build_layout(
    mode: ExecMode,
    ues: &mut [UeRecord],
    sats: &[SatelliteState],
    max_beams: usize,
    diameter_km: f64,
    min_elevation: f64,
) -> Vec<Vec<Spotbeam>> {
    let closest: Vec<Option<usize>> = parallel::map_indices(mode, ues.len(), |i| closest_satellite(&ues[i], sats, min_elevation));
    let mut reporting: Vec<Vec<UeRecord>> = vec![Vec::new(); sats.len()];
    for (ue, m) in ues.iter().zip(&closest) {
        if let Some(m) = m {
            reporting[*m].push(ue.clone());
        }
    }
    let layouts = parallel::map_indices(mode, sats.len(), |m| {
        assign_spotbeams(&sats[m], &reporting[m], max_beams, diameter_km)
    });
    let mapping = associate_ues(ues, sats, &layouts, min_elevation);
    for ue in ues.iter_mut() {
        let assigned = mapping.get(&ue.ue_id).copied();
        ue.serving_satellite = assigned.map(|a| a.0);
        ue.serving_beam = assigned.map(|a| a.1);
    }
    layouts
}

/// UEs actually served by each beam, ascending; indexed `[satellite][beam]`.
pub fn served_by_beam(layouts: &[Vec<Spotbeam>], ues: &[UeRecord]) -> Vec<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<Vec<usize>>> = layouts.iter().map(|b| vec![Vec::new(); b.len()]).collect();
    for ue in ues {
        if let (Some(m), Some(k)) = (ue.serving_satellite, ue.serving_beam) {
            out[m][k].push(ue.ue_id);
        }
    }
    for beams in &mut out {
        for members in beams.iter_mut() {
            members.sort_unstable();
        }
    }
    out
}
