//! Experiment configuration files.
//!
//! A config is a TOML document. Only `band` is required; every other key
//! falls back to the reference scenario (1000 UEs over 103–113°E × 28–33°N,
//! four serving satellites of a 2400/60 Walker shell, K = 100 beams of 42 km,
//! D = 42 km, I_max = 40, P_max = 300 W, δ = 1 ms, T = 1 s).
//!
//! `scheduler`, `I_max` and `seed` accept either a single value or a list;
//! the experiment runs every combination. Unknown keys are rejected.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::engine::{PhyParams, SimConfig};
use crate::error::{Error, Result};
use crate::link::{ArrayGeometry, Band, BandProfile};
use crate::orbits::{GeodeticPoint, WalkerConstellation};
use crate::parallel::ExecMode;
use crate::scenario::{RegionBox, ScenarioConfig};
use crate::scheduler::{SchedulerParams, Scheme};
use crate::traffic::TrafficModel;

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(untagged)]
enum OneOrMany<T> {
    One(T),
    Many(Vec<T>),
}

impl<T> OneOrMany<T> {
    fn into_vec(self) -> Vec<T> {
        match self {
            OneOrMany::One(x) => vec![x],
            OneOrMany::Many(v) => v,
        }
    }
}

#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawConfig {
    band: Option<Band>,
    scheduler: Option<OneOrMany<Scheme>>,
    traffic: Option<TrafficModel>,
    packet_size_bytes: Option<u64>,
    arrival_rate: Option<f64>,
    #[serde(rename = "K")]
    k: Option<usize>,
    diameter_km: Option<f64>,
    #[serde(rename = "D_km")]
    d_km: Option<f64>,
    #[serde(rename = "I_max")]
    i_max: Option<OneOrMany<usize>>,
    #[serde(rename = "P_max_W")]
    p_max_w: Option<f64>,
    ue_count: Option<usize>,
    serving_satellites: Option<usize>,
    min_elevation_deg: Option<f64>,
    slot_length_s: Option<f64>,
    horizon_s: Option<f64>,
    seed: Option<OneOrMany<u64>>,
    epoch_s: Option<f64>,
    live_propagation: Option<bool>,
    efficiency: Option<f64>,
    se_cap: Option<f64>,
    noise_figure_db: Option<f64>,
    record_all_sinr: Option<bool>,
    workers: Option<usize>,
    out_dir: Option<String>,
    scene_file: Option<String>,
    region: Option<RegionBox>,
    constellation: Option<WalkerConstellation>,
    array: Option<ArrayGeometry>,
}

/// Fully resolved experiment. Serializes to a config that parses back to itself.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentConfig {
    pub band: Band,
    pub scheduler: Vec<Scheme>,
    pub traffic: TrafficModel,
    pub packet_size_bytes: u64,
    pub arrival_rate: f64,
    #[serde(rename = "K")]
    pub k: usize,
    pub diameter_km: f64,
    #[serde(rename = "D_km")]
    pub d_km: f64,
    #[serde(rename = "I_max")]
    pub i_max: Vec<usize>,
    #[serde(rename = "P_max_W")]
    pub p_max_w: f64,
    pub ue_count: usize,
    pub serving_satellites: usize,
    pub min_elevation_deg: f64,
    pub slot_length_s: f64,
    pub horizon_s: f64,
    pub seed: Vec<u64>,
    pub epoch_s: f64,
    pub live_propagation: bool,
    pub efficiency: f64,
    pub se_cap: f64,
    pub noise_figure_db: f64,
    pub record_all_sinr: bool,
    pub workers: usize,
    pub out_dir: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub scene_file: Option<String>,
    pub region: RegionBox,
    pub constellation: WalkerConstellation,
    pub array: ArrayGeometry,
}

/// Default packet size: 0.5 MB, except FTP3 at S band which uses 0.05 MB.
pub fn default_packet_size_bytes(band: Band, traffic: TrafficModel) -> u64 {
    match (band, traffic) {
        (Band::S, TrafficModel::Ftp3) => 50_000,
        _ => 500_000,
    }
}

fn map_toml_error(path: &Path, err: toml::de::Error) -> Error {
    let msg = err.message().to_string();
    if let Some(rest) = msg.strip_prefix("unknown field `") {
        if let Some(end) = rest.find('`') {
            return Error::config(&rest[..end], "unknown key");
        }
    }
    if msg.starts_with("missing field `") {
        let key = msg.trim_start_matches("missing field `").split('`').next().unwrap_or("");
        return Error::config(key, "required key is missing");
    }
    Error::Syntax {
        path: path.to_path_buf(),
        message: err.to_string(),
    }
}

impl ExperimentConfig {
    pub fn from_file(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_toml_str(&text, path)
    }

    /// Parses `text`; `origin` is only used in diagnostics.
    pub fn from_toml_str(text: &str, origin: &Path) -> Result<Self> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| map_toml_error(origin, e))?;
        Self::resolve(raw)
    }

    pub fn parse_str(text: &str) -> Result<Self> {
        Self::from_toml_str(text, Path::new("<string>"))
    }

    fn resolve(raw: RawConfig) -> Result<Self> {
        let band = raw.band.ok_or_else(|| Error::config("band", "required key is missing"))?;
        let traffic = raw.traffic.unwrap_or(TrafficModel::FullBuffer);
        let profile = BandProfile::for_band(band);
        let cfg = Self {
            band,
            scheduler: raw.scheduler.map_or_else(|| Scheme::ALL.to_vec(), OneOrMany::into_vec),
            traffic,
            packet_size_bytes: raw
                .packet_size_bytes
                .unwrap_or_else(|| default_packet_size_bytes(band, traffic)),
            arrival_rate: raw.arrival_rate.unwrap_or(8.0),
            k: raw.k.unwrap_or(100),
            diameter_km: raw.diameter_km.unwrap_or(42.0),
            d_km: raw.d_km.unwrap_or(42.0),
            i_max: raw.i_max.map_or_else(|| vec![40], OneOrMany::into_vec),
            p_max_w: raw.p_max_w.unwrap_or(300.0),
            ue_count: raw.ue_count.unwrap_or(1000),
            serving_satellites: raw.serving_satellites.unwrap_or(4),
            min_elevation_deg: raw.min_elevation_deg.unwrap_or(10.0),
            slot_length_s: raw.slot_length_s.unwrap_or(1e-3),
            horizon_s: raw.horizon_s.unwrap_or(1.0),
            seed: raw.seed.map_or_else(|| vec![1], OneOrMany::into_vec),
            epoch_s: raw.epoch_s.unwrap_or(0.0),
            live_propagation: raw.live_propagation.unwrap_or(false),
            efficiency: raw.efficiency.unwrap_or(PhyParams::default().efficiency),
            se_cap: raw.se_cap.unwrap_or(PhyParams::default().se_cap),
            noise_figure_db: raw.noise_figure_db.unwrap_or(profile.ue_noise_figure_db),
            record_all_sinr: raw.record_all_sinr.unwrap_or(true),
            workers: raw.workers.unwrap_or(0),
            out_dir: raw.out_dir.unwrap_or_else(|| "results".into()),
            scene_file: raw.scene_file,
            region: raw.region.unwrap_or_default(),
            constellation: raw.constellation.unwrap_or_default(),
            array: raw.array.unwrap_or_default(),
        };
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        fn positive(key: &str, v: f64) -> Result<()> {
            if v > 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(key, format!("must be positive, got {v}")))
            }
        }
        fn non_negative(key: &str, v: f64) -> Result<()> {
            if v >= 0.0 && v.is_finite() {
                Ok(())
            } else {
                Err(Error::config(key, format!("must be non-negative, got {v}")))
            }
        }
        if self.scheduler.is_empty() {
            return Err(Error::config("scheduler", "list must not be empty"));
        }
        if self.i_max.is_empty() {
            return Err(Error::config("I_max", "sweep list must not be empty"));
        }
        if let Some(bad) = self.i_max.iter().find(|&&i| i == 0) {
            return Err(Error::config("I_max", format!("must be at least 1, got {bad}")));
        }
        if self.seed.is_empty() {
            return Err(Error::config("seed", "list must not be empty"));
        }
        if self.k == 0 {
            return Err(Error::config("K", "must be at least 1"));
        }
        if self.serving_satellites == 0 {
            return Err(Error::config("serving_satellites", "must be at least 1"));
        }
        if self.packet_size_bytes == 0 {
            return Err(Error::config("packet_size_bytes", "must be positive"));
        }
        positive("diameter_km", self.diameter_km)?;
        non_negative("D_km", self.d_km)?;
        positive("P_max_W", self.p_max_w)?;
        non_negative("arrival_rate", self.arrival_rate)?;
        non_negative("min_elevation_deg", self.min_elevation_deg)?;
        if self.min_elevation_deg > 90.0 {
            return Err(Error::config("min_elevation_deg", "must not exceed 90"));
        }
        positive("slot_length_s", self.slot_length_s)?;
        positive("horizon_s", self.horizon_s)?;
        non_negative("epoch_s", self.epoch_s)?;
        positive("efficiency", self.efficiency)?;
        if self.efficiency > 1.0 {
            return Err(Error::config("efficiency", "must not exceed 1"));
        }
        positive("se_cap", self.se_cap)?;
        if !self.noise_figure_db.is_finite() {
            return Err(Error::config("noise_figure_db", "must be finite"));
        }
        crate::engine::SlotClock::new(self.horizon_s, self.slot_length_s)?;
        self.region.validate()?;
        self.constellation.validate()?;
        self.array.validate()?;
        Ok(())
    }

    /// The resolved config as TOML, suitable for re-running.
    pub fn to_toml(&self) -> String {
        toml::to_string(self).expect("config serializes")
    }

    pub fn band_profile(&self) -> BandProfile {
        BandProfile {
            ue_noise_figure_db: self.noise_figure_db,
            ..BandProfile::for_band(self.band)
        }
    }

    pub fn scenario(&self) -> Result<ScenarioConfig> {
        let ue_positions = match &self.scene_file {
            Some(path) => Some(load_scene_file(path)?),
            None => None,
        };
        Ok(ScenarioConfig {
            constellation: self.constellation,
            epoch_s: self.epoch_s,
            serving_satellites: self.serving_satellites,
            region: self.region,
            ue_count: self.ue_count,
            max_beams: self.k,
            diameter_km: self.diameter_km,
            min_elevation_deg: self.min_elevation_deg,
            ue_positions,
        })
    }

    pub fn sim_config(&self, scheme: Scheme, i_max: usize, seed: u64, exec_mode: ExecMode) -> SimConfig {
        SimConfig {
            band: self.band_profile(),
            geometry: self.array,
            phy: PhyParams {
                efficiency: self.efficiency,
                se_cap: self.se_cap,
            },
            scheme,
            scheduler: SchedulerParams {
                i_max,
                distance_limit_km: self.d_km,
                p_max_w: self.p_max_w,
            },
            traffic: self.traffic,
            packet_size_bits: self.packet_size_bytes * 8,
            arrival_rate: self.arrival_rate,
            horizon_s: self.horizon_s,
            slot_length_s: self.slot_length_s,
            seed,
            exec_mode,
            live_propagation: self.live_propagation,
            record_all_sinr: self.record_all_sinr,
        }
    }

    pub fn out_path(&self) -> PathBuf {
        PathBuf::from(&self.out_dir)
    }
}

#[derive(Debug, Deserialize, Serialize)]
#[serde(deny_unknown_fields)]
struct SceneFile {
    ue: Vec<GeodeticPoint>,
}

/// Reads a scene file: a TOML document of `[[ue]]` tables with
/// `latitude` and `longitude` in degrees.
pub fn load_scene_file(path: impl AsRef<Path>) -> Result<Vec<GeodeticPoint>> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let scene: SceneFile = toml::from_str(&text).map_err(|e| Error::Syntax {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    Ok(scene.ue)
}

pub fn write_scene_file(path: impl AsRef<Path>, ues: &[GeodeticPoint]) -> Result<()> {
    let path = path.as_ref();
    let text = toml::to_string(&SceneFile { ue: ues.to_vec() }).expect("scene serializes");
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
