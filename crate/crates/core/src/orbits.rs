//! Walker constellation construction, circular-orbit propagation and
//! spherical-earth geometry.
//!
//! All positions are expressed in an earth-centred frame in kilometres. The
//! earth is a sphere of radius [`EARTH_RADIUS_KM`]; earth rotation is not
//! modelled, so the frame doubles as the earth-fixed frame over the short
//! horizons simulated here.

use std::f64::consts::PI;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const EARTH_RADIUS_KM: f64 = 6371.0;
/// Standard gravitational parameter of the earth, km³/s².
pub const EARTH_MU_KM3_S2: f64 = 398_600.441_8;

#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec3 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Vec3 {
    pub const fn new(x: f64, y: f64, z: f64) -> Self {
        Self { x, y, z }
    }

    pub fn dot(self, o: Vec3) -> f64 {
        self.x * o.x + self.y * o.y + self.z * o.z
    }

    pub fn cross(self, o: Vec3) -> Vec3 {
        Vec3::new(
            self.y * o.z - self.z * o.y,
            self.z * o.x - self.x * o.z,
            self.x * o.y - self.y * o.x,
        )
    }

    pub fn norm(self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn unit(self) -> Vec3 {
        let n = self.norm();
        Vec3::new(self.x / n, self.y / n, self.z / n)
    }

    pub fn distance(self, o: Vec3) -> f64 {
        (self - o).norm()
    }
}

impl Add for Vec3 {
    type Output = Vec3;
    fn add(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Vec3 {
    type Output = Vec3;
    fn sub(self, o: Vec3) -> Vec3 {
        Vec3::new(self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Vec3 {
    type Output = Vec3;
    fn neg(self) -> Vec3 {
        Vec3::new(-self.x, -self.y, -self.z)
    }
}

impl Mul<f64> for Vec3 {
    type Output = Vec3;
    fn mul(self, s: f64) -> Vec3 {
        Vec3::new(self.x * s, self.y * s, self.z * s)
    }
}

/// Walker-delta constellation parameters (total/planes/phasing).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct WalkerConstellation {
    pub total_satellites: u32,
    pub planes: u32,
    pub inclination_deg: f64,
    pub altitude_km: f64,
    #[serde(default = "default_phasing")]
    pub phasing_factor: u32,
}

fn default_phasing() -> u32 {
    1
}

impl Default for WalkerConstellation {
    fn default() -> Self {
        Self {
            total_satellites: 2400,
            planes: 60,
            inclination_deg: 55.0,
            altitude_km: 600.0,
            phasing_factor: 1,
        }
    }
}

impl WalkerConstellation {
    pub fn validate(&self) -> Result<()> {
        if self.total_satellites == 0 {
            return Err(Error::config("constellation.total_satellites", "must be positive"));
        }
        if self.planes == 0 || !self.total_satellites.is_multiple_of(self.planes) {
            return Err(Error::config(
                "constellation.planes",
                format!(
                    "{} satellites cannot be split evenly over {} planes",
                    self.total_satellites, self.planes
                ),
            ));
        }
        if !(0.0..=180.0).contains(&self.inclination_deg) {
            return Err(Error::config("constellation.inclination_deg", "must lie in [0, 180]"));
        }
        if !(self.altitude_km > 0.0) {
            return Err(Error::config("constellation.altitude_km", "must be positive"));
        }
        Ok(())
    }

    pub fn satellites_per_plane(&self) -> u32 {
        self.total_satellites / self.planes
    }
}

/// Orientation of a circular orbit plus the argument of latitude at epoch.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CircularOrbit {
    pub radius_km: f64,
    pub inclination_rad: f64,
    pub raan_rad: f64,
    pub arg_latitude_rad: f64,
}

impl CircularOrbit {
    pub fn mean_motion(&self) -> f64 {
        (EARTH_MU_KM3_S2 / self.radius_km.powi(3)).sqrt()
    }

    pub fn period_s(&self) -> f64 {
        2.0 * PI / self.mean_motion()
    }

    pub fn position(&self) -> Vec3 {
        let (su, cu) = self.arg_latitude_rad.sin_cos();
        let (so, co) = self.raan_rad.sin_cos();
        let (si, ci) = self.inclination_rad.sin_cos();
        Vec3::new(co * cu - so * su * ci, so * cu + co * su * ci, su * si) * self.radius_km
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SatelliteState {
    pub satellite_id: usize,
    pub plane_index: u32,
    pub in_plane_index: u32,
    pub position: Vec3,
    pub epoch_time: f64,
    pub orbit: CircularOrbit,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GeodeticPoint {
    pub latitude: f64,
    pub longitude: f64,
    #[serde(default)]
    pub altitude_above_surface: f64,
}

impl GeodeticPoint {
    pub fn new(latitude: f64, longitude: f64) -> Self {
        Self {
            latitude,
            longitude,
            altitude_above_surface: 0.0,
        }
    }

    pub fn is_valid(&self) -> bool {
        (-90.0..=90.0).contains(&self.latitude)
            && self.longitude > -180.0
            && self.longitude <= 180.0
    }
}

/// Builds every satellite of a Walker-delta constellation at `epoch`.
///
/// Plane `p` has RAAN `p·360°/P`; satellite `s` of that plane sits at
/// argument of latitude `s·360°/S + p·F·360°/M`.
pub fn build_walker(config: &WalkerConstellation, epoch: f64) -> Result<Vec<SatelliteState>> {
    config.validate()?;
    let per_plane = config.satellites_per_plane();
    let radius = EARTH_RADIUS_KM + config.altitude_km;
    let inclination = config.inclination_deg.to_radians();
    let phase_step = 2.0 * PI * f64::from(config.phasing_factor) / f64::from(config.total_satellites);

    let mut out = Vec::with_capacity(config.total_satellites as usize);
    for plane in 0..config.planes {
        let raan = 2.0 * PI * f64::from(plane) / f64::from(config.planes);
        for slot in 0..per_plane {
            let u = 2.0 * PI * f64::from(slot) / f64::from(per_plane) + phase_step * f64::from(plane);
            let orbit = CircularOrbit {
                radius_km: radius,
                inclination_rad: inclination,
                raan_rad: raan,
                arg_latitude_rad: u.rem_euclid(2.0 * PI),
            };
            out.push(SatelliteState {
                satellite_id: out.len(),
                plane_index: plane,
                in_plane_index: slot,
                position: orbit.position(),
                epoch_time: epoch,
                orbit,
            });
        }
    }
    Ok(out)
}

/// Advances a satellite `dt` seconds along its circular orbit.
pub fn propagate(state: &SatelliteState, dt: f64) -> SatelliteState {
    if dt == 0.0 {
        return *state;
    }
    let mut orbit = state.orbit;
    orbit.arg_latitude_rad = (orbit.arg_latitude_rad + orbit.mean_motion() * dt).rem_euclid(2.0 * PI);
    SatelliteState {
        position: orbit.position(),
        epoch_time: state.epoch_time + dt,
        orbit,
        ..*state
    }
}

pub fn geodetic_to_ecef(p: &GeodeticPoint) -> Vec3 {
    let r = EARTH_RADIUS_KM + p.altitude_above_surface;
    let (slat, clat) = p.latitude.to_radians().sin_cos();
    let (slon, clon) = p.longitude.to_radians().sin_cos();
    Vec3::new(r * clat * clon, r * clat * slon, r * slat)
}

/// Inverse of [`geodetic_to_ecef`]; longitude returned in (−180, 180].
pub fn ecef_to_geodetic(v: Vec3) -> GeodeticPoint {
    let r = v.norm();
    let latitude = (v.z / r).clamp(-1.0, 1.0).asin().to_degrees();
    let mut longitude = v.y.atan2(v.x).to_degrees();
    if longitude <= -180.0 {
        longitude += 360.0;
    }
    GeodeticPoint {
        latitude,
        longitude,
        altitude_above_surface: r - EARTH_RADIUS_KM,
    }
}

/// Elevation and azimuth (clockwise from north) of `target` seen from `observer`, degrees.
pub fn look_angles(observer: &GeodeticPoint, target: Vec3) -> (f64, f64) {
    let origin = geodetic_to_ecef(observer);
    let (slat, clat) = observer.latitude.to_radians().sin_cos();
    let (slon, clon) = observer.longitude.to_radians().sin_cos();
    let up = Vec3::new(clat * clon, clat * slon, slat);
    let east = Vec3::new(-slon, clon, 0.0);
    let north = Vec3::new(-slat * clon, -slat * slon, clat);

    let los = target - origin;
    let (e, n, u) = (los.dot(east), los.dot(north), los.dot(up));
    let elevation = u.atan2(e.hypot(n)).to_degrees();
    let azimuth = e.atan2(n).to_degrees().rem_euclid(360.0);
    (elevation, azimuth)
}

pub fn elevation_azimuth(ue: &GeodeticPoint, sat: &SatelliteState) -> (f64, f64) {
    look_angles(ue, sat.position)
}

pub fn slant_distance(ue: &GeodeticPoint, sat: &SatelliteState) -> f64 {
    geodetic_to_ecef(ue).distance(sat.position)
}

/// Closed-form slant range to a satellite at `altitude_km` seen at `elevation_deg`.
pub fn slant_range_at_elevation(elevation_deg: f64, altitude_km: f64) -> f64 {
    let r = EARTH_RADIUS_KM + altitude_km;
    let (se, ce) = elevation_deg.to_radians().sin_cos();
    (r * r - EARTH_RADIUS_KM * EARTH_RADIUS_KM * ce * ce).sqrt() - EARTH_RADIUS_KM * se
}

/// Ids of satellites seen at or above `min_elevation`, nearest first.
pub fn visible_satellites(
    ue: &GeodeticPoint,
    sats: &[SatelliteState],
    min_elevation: f64,
) -> Vec<usize> {
    let origin = geodetic_to_ecef(ue);
    let mut seen: Vec<(f64, usize)> = sats
        .iter()
        .filter(|s| elevation_azimuth(ue, s).0 >= min_elevation)
        .map(|s| (origin.distance(s.position), s.satellite_id))
        .collect();
    seen.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
    seen.into_iter().map(|(_, id)| id).collect()
}

/// Great-circle distance on the earth's surface, km.
pub fn great_circle_km(a: &GeodeticPoint, b: &GeodeticPoint) -> f64 {
    let (la1, la2) = (a.latitude.to_radians(), b.latitude.to_radians());
    let dlat = la2 - la1;
    let dlon = (b.longitude - a.longitude).to_radians();
    let h = (dlat / 2.0).sin().powi(2) + la1.cos() * la2.cos() * (dlon / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * h.sqrt().min(1.0).asin()
}
