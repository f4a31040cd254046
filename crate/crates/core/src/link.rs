//! Radio-link math: planar-array beam gain, free-space path loss, channel
//! gain, thermal noise and downlink SINR with intra- and inter-satellite
//! interference.
//!
//! Gains and losses are carried in dB; every interference sum is done in
//! linear milliwatts.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layout::{Spotbeam, UeRecord};
use crate::orbits::{geodetic_to_ecef, look_angles, GeodeticPoint, SatelliteState, Vec3};
use crate::parallel::{self, ExecMode};
use crate::scheduler::ScheduleDecision;

/// Lowest relative pattern gain returned, dB.
pub const PATTERN_FLOOR_DB: f64 = -60.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Band {
    S,
    Ka,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BandProfile {
    pub carrier_frequency_ghz: f64,
    pub bandwidth_mhz: f64,
    pub subcarrier_spacing_khz: f64,
    pub satellite_tx_gain_dbi: f64,
    pub ue_rx_gain_dbi: f64,
    pub ue_noise_figure_db: f64,
    pub ambient_temperature_k: f64,
}

impl BandProfile {
    /// S band downlink to handheld terminals.
    pub fn s_band() -> Self {
        Self {
            carrier_frequency_ghz: 2.0,
            bandwidth_mhz: 30.0,
            subcarrier_spacing_khz: 15.0,
            satellite_tx_gain_dbi: 24.0,
            ue_rx_gain_dbi: 0.0,
            ue_noise_figure_db: 7.0,
            ambient_temperature_k: 290.0,
        }
    }

    /// Ka band downlink to VSAT terminals.
    pub fn ka_band() -> Self {
        Self {
            carrier_frequency_ghz: 20.0,
            bandwidth_mhz: 200.0,
            subcarrier_spacing_khz: 120.0,
            satellite_tx_gain_dbi: 30.5,
            ue_rx_gain_dbi: 39.7,
            ue_noise_figure_db: 1.2,
            ambient_temperature_k: 290.0,
        }
    }

    pub fn for_band(band: Band) -> Self {
        match band {
            Band::S => Self::s_band(),
            Band::Ka => Self::ka_band(),
        }
    }

    pub fn bandwidth_hz(&self) -> f64 {
        self.bandwidth_mhz * 1e6
    }

    pub fn validate(&self) -> Result<()> {
        let finite = [
            self.satellite_tx_gain_dbi,
            self.ue_rx_gain_dbi,
            self.ue_noise_figure_db,
        ]
        .iter()
        .all(|g| g.is_finite());
        if !finite {
            return Err(Error::Domain("band gains must be finite".into()));
        }
        if !(self.bandwidth_mhz > 0.0) || !(self.carrier_frequency_ghz > 0.0) {
            return Err(Error::Domain("bandwidth and frequency must be positive".into()));
        }
        if !(self.ambient_temperature_k > 0.0) {
            return Err(Error::Domain("temperature must be positive".into()));
        }
        Ok(())
    }
}

/// Square uniform planar array on the satellite.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ArrayGeometry {
    pub elements_per_axis: u32,
    /// Element pitch in wavelengths.
    pub element_spacing: f64,
}

impl Default for ArrayGeometry {
    fn default() -> Self {
        Self {
            elements_per_axis: 28,
            element_spacing: 0.46,
        }
    }
}

impl ArrayGeometry {
    pub fn validate(&self) -> Result<()> {
        if self.elements_per_axis == 0 {
            return Err(Error::config("array.elements_per_axis", "must be at least 1"));
        }
        if !(self.element_spacing > 0.0) {
            return Err(Error::config("array.element_spacing", "must be positive"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSample {
    pub ue_id: usize,
    pub serving_satellite: usize,
    pub serving_beam: usize,
    pub channel_gain_db: f64,
    pub received_power_dbm: f64,
    pub intra_interference_mw: f64,
    pub inter_interference_mw: f64,
    pub noise_mw: f64,
    pub sinr: f64,
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Normalized |Σ e^{jψn}| / N for an N-element line with phase step ψ.
fn line_factor(n: u32, psi: f64) -> f64 {
    let half = 0.5 * psi;
    let den = half.sin();
    if den.abs() < 1e-12 {
        return 1.0;
    }
    ((f64::from(n) * half).sin() / (f64::from(n) * den)).abs()
}

/// Linear relative power of the array pattern, floored at [`PATTERN_FLOOR_DB`].
///
/// Angles in radians; directions behind the aperture plane get the floor.
pub fn pattern_linear(geometry: &ArrayGeometry, theta: f64, phi: f64) -> f64 {
    let floor = db_to_linear(PATTERN_FLOOR_DB);
    if theta > PI / 2.0 {
        return floor;
    }
    let st = theta.sin();
    let k = 2.0 * PI * geometry.element_spacing;
    let n = geometry.elements_per_axis;
    let af = line_factor(n, k * st * phi.cos()) * line_factor(n, k * st * phi.sin());
    (af * af).max(floor)
}

/// Normalized array-factor gain in dB at off-boresight angle `theta_deg`
/// and azimuth `phi_deg`; 0 dB on boresight.
pub fn array_factor_gain(geometry: &ArrayGeometry, theta_deg: f64, phi_deg: f64) -> Result<f64> {
    if !(0.0..=90.0).contains(&theta_deg) {
        return Err(Error::Domain(format!(
            "off-boresight angle {theta_deg}° outside [0, 90]"
        )));
    }
    Ok(linear_to_db(pattern_linear(
        geometry,
        theta_deg.to_radians(),
        phi_deg.to_radians(),
    )))
}

pub fn path_loss_fspl(distance_km: f64, frequency_ghz: f64) -> Result<f64> {
    if !(distance_km > 0.0) || !(frequency_ghz > 0.0) {
        return Err(Error::Domain(format!(
            "path loss needs positive distance and frequency, got {distance_km} km / {frequency_ghz} GHz"
        )));
    }
    Ok(92.45 + 20.0 * distance_km.log10() + 20.0 * frequency_ghz.log10())
}

/// Off-boresight angles (θ, φ) in radians of `target` for a beam from `sat`
/// steered at `boresight_point`.
///
/// The antenna frame has z toward nadir and x toward local east of the
/// sub-satellite point; φ is measured in that x/y sense about the beam axis.
pub fn beam_offset_angles(sat: Vec3, boresight_point: Vec3, target: Vec3) -> (f64, f64) {
    let axis = (boresight_point - sat).unit();
    let nadir = (-sat).unit();
    let mut east = Vec3::new(0.0, 0.0, 1.0).cross(-nadir);
    if east.norm() < 1e-9 {
        east = Vec3::new(1.0, 0.0, 0.0);
    }
    let x_ref = east - axis * east.dot(axis);
    let x_ref = if x_ref.norm() < 1e-12 {
        (nadir.cross(axis)).unit()
    } else {
        x_ref.unit()
    };
    let y_ref = axis.cross(x_ref);

    let w = (target - sat).unit();
    let theta = w.cross(axis).norm().atan2(w.dot(axis));
    let phi = w.dot(y_ref).atan2(w.dot(x_ref));
    (theta, phi)
}

/// h = G_t(θ, φ) + G_T + G_R − PL(d), in dB.
pub fn channel_gain(
    boresight: &GeodeticPoint,
    ue: &GeodeticPoint,
    sat: &SatelliteState,
    band: &BandProfile,
    geometry: &ArrayGeometry,
) -> Result<f64> {
    let ue_pos = geodetic_to_ecef(ue);
    let (theta, phi) = beam_offset_angles(sat.position, geodetic_to_ecef(boresight), ue_pos);
    let pattern_db = linear_to_db(pattern_linear(geometry, theta, phi));
    let pl = path_loss_fspl(ue_pos.distance(sat.position), band.carrier_frequency_ghz)?;
    Ok(pattern_db + band.satellite_tx_gain_dbi + band.ue_rx_gain_dbi - pl)
}

pub fn noise_power_dbm(band: &BandProfile) -> f64 {
    -174.0
        + 10.0 * band.bandwidth_hz().log10()
        + band.ue_noise_figure_db
        + 10.0 * (band.ambient_temperature_k / 290.0).log10()
}

/// Thermal noise power in mW.
pub fn noise_power(band: &BandProfile) -> f64 {
    db_to_linear(noise_power_dbm(band))
}

/// SINR of one UE given every satellite's decision for the slot.
///
/// `decisions[m]` belongs to scene satellite `m`; `gain(m, k)` is the
/// linear channel gain from beam `k` of satellite `m` to this UE.
pub fn compute_sinr<G>(
    ue: &UeRecord,
    decisions: &[ScheduleDecision],
    gain: G,
    noise_mw: f64,
) -> Result<LinkSample>
where
    G: Fn(usize, usize) -> f64,
{
    let (m, k) = match (ue.serving_satellite, ue.serving_beam) {
        (Some(m), Some(k)) => (m, k),
        _ => {
            return Err(Error::State(format!(
                "UE {} has no serving assignment",
                ue.ue_id
            )))
        }
    };
    if m >= decisions.len() {
        return Err(Error::State(format!(
            "UE {} served by satellite {m} with no schedule",
            ue.ue_id
        )));
    }

    let mut signal = 0.0;
    let mut intra = 0.0;
    let mut inter = 0.0;
    for (sat, decision) in decisions.iter().enumerate() {
        for (&beam, &power_w) in &decision.power {
            let rx = power_w * 1e3 * gain(sat, beam);
            if sat == m && beam == k {
                signal = rx;
            } else if sat == m {
                intra += rx;
            } else {
                inter += rx;
            }
        }
    }

    Ok(LinkSample {
        ue_id: ue.ue_id,
        serving_satellite: m,
        serving_beam: k,
        channel_gain_db: linear_to_db(gain(m, k)),
        received_power_dbm: linear_to_db(signal),
        intra_interference_mw: intra,
        inter_interference_mw: inter,
        noise_mw,
        sinr: signal / (noise_mw + intra + inter),
    })
}

/// Linear channel gains from every beam of every scene satellite to every UE.
///
/// Pairs with the satellite below the UE's horizon hold zero.
#[derive(Debug, Clone)]
pub struct GainTable {
    beam_offsets: Vec<usize>,
    beams_total: usize,
    data: Vec<f64>,
}

impl GainTable {
    pub fn build(
        mode: ExecMode,
        ues: &[UeRecord],
        satellites: &[SatelliteState],
        beams: &[Vec<Spotbeam>],
        band: &BandProfile,
        geometry: &ArrayGeometry,
    ) -> Result<Self> {
        band.validate()?;
        let mut beam_offsets = Vec::with_capacity(beams.len());
        let mut total = 0;
        for b in beams {
            beam_offsets.push(total);
            total += b.len();
        }
        let boresights: Vec<Vec<Vec3>> = beams
            .iter()
            .map(|bs| bs.iter().map(|b| geodetic_to_ecef(&b.center)).collect())
            .collect();
        let fixed_db = band.satellite_tx_gain_dbi + band.ue_rx_gain_dbi;
        let freq = band.carrier_frequency_ghz;

        let rows = parallel::map_indices(mode, ues.len(), |u| {
            let ue = &ues[u];
            let ue_pos = geodetic_to_ecef(&ue.position);
            let mut row = Vec::with_capacity(total);
            for (m, sat) in satellites.iter().enumerate() {
                let visible = look_angles(&ue.position, sat.position).0 >= 0.0;
                let pl = 92.45 + 20.0 * ue_pos.distance(sat.position).log10() + 20.0 * freq.log10();
                for bore in &boresights[m] {
                    if !visible {
                        row.push(0.0);
                        continue;
                    }
                    let (theta, phi) = beam_offset_angles(sat.position, *bore, ue_pos);
                    row.push(pattern_linear(geometry, theta, phi) * db_to_linear(fixed_db - pl));
                }
            }
            row
        });

        Ok(Self {
            beam_offsets,
            beams_total: total,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, ue: usize, satellite: usize, beam: usize) -> f64 {
        self.data[ue * self.beams_total + self.beam_offsets[satellite] + beam]
    }

    pub fn ue_count(&self) -> usize {
        self.data.len().checked_div(self.beams_total).unwrap_or(0)
    }
}
