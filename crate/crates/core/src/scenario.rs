//! Scene construction: pick the serving satellites, drop UEs, lay out beams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::layout::{build_layout, Spotbeam, UeRecord};
use crate::orbits::{build_walker, geodetic_to_ecef, GeodeticPoint, SatelliteState, WalkerConstellation};
use crate::parallel::ExecMode;

/// Stream id reserved for UE placement; per-UE traffic streams use the UE id.
const PLACEMENT_STREAM: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RegionBox {
    pub lon_min: f64,
    pub lon_max: f64,
    pub lat_min: f64,
    pub lat_max: f64,
}

impl Default for RegionBox {
    fn default() -> Self {
        Self {
            lon_min: 103.0,
            lon_max: 113.0,
            lat_min: 28.0,
            lat_max: 33.0,
        }
    }
}

impl RegionBox {
    pub fn center(&self) -> GeodeticPoint {
        GeodeticPoint::new(
            0.5 * (self.lat_min + self.lat_max),
            0.5 * (self.lon_min + self.lon_max),
        )
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.lon_min < self.lon_max) || self.lon_min <= -180.0 || self.lon_max > 180.0 {
            return Err(Error::config("region", "need -180 < lon_min < lon_max <= 180"));
        }
        if !(self.lat_min < self.lat_max) || self.lat_min < -90.0 || self.lat_max > 90.0 {
            return Err(Error::config("region", "need -90 <= lat_min < lat_max <= 90"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    pub constellation: WalkerConstellation,
    pub epoch_s: f64,
    pub serving_satellites: usize,
    pub region: RegionBox,
    pub ue_count: usize,
    pub max_beams: usize,
    pub diameter_km: f64,
    pub min_elevation_deg: f64,
    /// Explicit UE positions; replaces the random drop when present.
    pub ue_positions: Option<Vec<GeodeticPoint>>,
}

/// A frozen scenario shared by every scheme run with the same seed.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Scene {
    /// Serving satellites, re-indexed `0..n`.
    pub satellites: Vec<SatelliteState>,
    /// Original constellation id of each serving satellite.
    pub constellation_ids: Vec<usize>,
    /// `[satellite][beam]`.
    pub beams: Vec<Vec<Spotbeam>>,
    pub ues: Vec<UeRecord>,
}

impl Scene {
    pub fn covered_ues(&self) -> usize {
        self.ues.iter().filter(|u| u.serving_beam.is_some()).count()
    }

    pub fn beam_count(&self) -> usize {
        self.beams.iter().map(Vec::len).sum()
    }

    /// SHA-256 over UE positions, beam layout and satellite positions.
    pub fn hash(&self) -> String {
        let mut h = Sha256::new();
        for u in &self.ues {
            h.update(u.ue_id.to_le_bytes());
            h.update(u.position.latitude.to_le_bytes());
            h.update(u.position.longitude.to_le_bytes());
            h.update(u.serving_satellite.map_or(u64::MAX, |x| x as u64).to_le_bytes());
            h.update(u.serving_beam.map_or(u64::MAX, |x| x as u64).to_le_bytes());
        }
        for (m, beams) in self.beams.iter().enumerate() {
            let p = self.satellites[m].position;
            for c in [p.x, p.y, p.z] {
                h.update(c.to_le_bytes());
            }
            for b in beams {
                h.update(b.beam_id.to_le_bytes());
                h.update(b.center.latitude.to_le_bytes());
                h.update(b.center.longitude.to_le_bytes());
            }
        }
        hex::encode(h.finalize())
    }
}

/// Uniform lon/lat drop of `count` UEs inside `region`.
pub fn drop_ues(region: &RegionBox, count: usize, seed: u64) -> Vec<GeodeticPoint> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(PLACEMENT_STREAM);
    (0..count)
        .map(|_| {
            let lat = rng.random_range(region.lat_min..region.lat_max);
            let lon = rng.random_range(region.lon_min..region.lon_max);
            GeodeticPoint::new(lat, lon)
        })
        .collect()
}

/// Picks `n` serving satellites spread over the region: the box is cut into
/// a near-square grid of at least `n` cells and each of the first `n` cells
/// (row-major from the south-west) takes the nearest satellite not yet picked.
pub fn select_serving(sats: &[SatelliteState], region: &RegionBox, n: usize) -> Vec<SatelliteState> {
    if n == 0 {
        return Vec::new();
    }
    let cols = (n as f64).sqrt().ceil() as usize;
    let rows = n.div_ceil(cols);
    let (dlon, dlat) = (
        (region.lon_max - region.lon_min) / cols as f64,
        (region.lat_max - region.lat_min) / rows as f64,
    );
    let mut picked: Vec<SatelliteState> = Vec::with_capacity(n);
    for cell in 0..n {
        let (r, c) = (cell / cols, cell % cols);
        let target = geodetic_to_ecef(&GeodeticPoint::new(
            region.lat_min + (r as f64 + 0.5) * dlat,
            region.lon_min + (c as f64 + 0.5) * dlon,
        ));
        let best = sats
            .iter()
            .filter(|s| picked.iter().all(|p| p.satellite_id != s.satellite_id))
            .min_by(|a, b| {
                a.position
                    .distance(target)
                    .total_cmp(&b.position.distance(target))
                    .then(a.satellite_id.cmp(&b.satellite_id))
            });
        match best {
            Some(s) => picked.push(*s),
            None => break,
        }
    }
    picked
}

pub fn build_scene(config: &ScenarioConfig, seed: u64, mode: ExecMode) -> Result<Scene> {
    config.region.validate()?;
    if config.serving_satellites == 0 {
        return Err(Error::config("serving_satellites", "must be at least 1"));
    }
    if !(config.diameter_km > 0.0) {
        return Err(Error::config("diameter_km", "must be positive"));
    }
    if !(config.min_elevation_deg >= 0.0) {
        return Err(Error::config("min_elevation_deg", "must be non-negative"));
    }
    let all = build_walker(&config.constellation, config.epoch_s)?;
    let picked = select_serving(&all, &config.region, config.serving_satellites);
    let constellation_ids = picked.iter().map(|s| s.satellite_id).collect();
    let satellites: Vec<SatelliteState> = picked
        .into_iter()
        .enumerate()
        .map(|(i, s)| SatelliteState { satellite_id: i, ..s })
        .collect();

    let positions = match &config.ue_positions {
        Some(p) => p.clone(),
        None => drop_ues(&config.region, config.ue_count, seed),
    };
    if let Some(bad) = positions.iter().position(|p| !p.is_valid()) {
        return Err(Error::config("scene_file", format!("UE {bad} has an invalid position")));
    }
    let mut ues: Vec<UeRecord> = positions.into_iter().enumerate().map(|(i, p)| UeRecord::new(i, p)).collect();
    let beams = build_layout(
        mode,
        &mut ues,
        &satellites,
        config.max_beams,
        config.diameter_km,
        config.min_elevation_deg,
    );
    Ok(Scene {
        satellites,
        constellation_ids,
        beams,
        ues,
    })
}
