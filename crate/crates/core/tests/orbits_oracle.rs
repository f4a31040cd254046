use beamhop::orbits::*;
use proptest::prelude::*;

const MU: f64 = 398_600.441_8;

fn accel(r: Vec3) -> Vec3 {
    let n = r.norm();
    r * (-MU / (n * n * n))
}

/// Fixed-step RK4 on the two-body equations, started from the orbit's
/// epoch position with circular speed along `normal × r`.
fn rk4(orbit: &CircularOrbit, t: f64, dt: f64) -> Vec3 {
    let (si, ci) = orbit.inclination_rad.sin_cos();
    let (so, co) = orbit.raan_rad.sin_cos();
    let normal = Vec3::new(so * si, -co * si, ci);
    let mut r = orbit.position();
    let mut v = normal.cross(r).unit() * (MU / r.norm()).sqrt();
    let steps = (t / dt).round() as usize;
    let h = t / steps as f64;
    for _ in 0..steps {
        let (k1r, k1v) = (v, accel(r));
        let (k2r, k2v) = (v + k1v * (h / 2.0), accel(r + k1r * (h / 2.0)));
        let (k3r, k3v) = (v + k2v * (h / 2.0), accel(r + k2r * (h / 2.0)));
        let (k4r, k4v) = (v + k3v * h, accel(r + k3r * h));
        r = r + (k1r + k2r * 2.0 + k3r * 2.0 + k4r) * (h / 6.0);
        v = v + (k1v + k2v * 2.0 + k3v * 2.0 + k4v) * (h / 6.0);
    }
    r
}

fn walker() -> Vec<SatelliteState> {
    build_walker(&WalkerConstellation::default(), 0.0).unwrap()
}

#[test]
fn propagation_matches_numerical_integration() {
    let sats = walker();
    for id in [0, 37, 1211, 2399] {
        let s = &sats[id];
        let period = s.orbit.period_s();
        for t in [period / 2.0, period, 1234.5] {
            let num = rk4(&s.orbit, t, 0.5);
            let ana = propagate(s, t).position;
            assert!(num.distance(ana) < 1e-3, "sat {id} t {t}: {} km", num.distance(ana));
        }
    }
}

#[test]
fn full_period_returns_and_half_period_opposes() {
    let s = walker()[5];
    let p = s.orbit.period_s();
    assert!((p - 5792.334109593).abs() < 1e-6);
    assert!(propagate(&s, p).position.distance(s.position) < 1e-6);
    let half = propagate(&s, p / 2.0).position;
    assert!((half + s.position).norm() < 1e-6);
}

#[test]
fn walker_layout() {
    let sats = walker();
    assert_eq!(sats.len(), 2400);
    let r = EARTH_RADIUS_KM + 600.0;
    assert!(sats.iter().all(|s| (s.position.norm() - r).abs() < 1e-6));
    // Plane 1 is rotated 6° in RAAN and phased by 360°/2400 in argument of latitude.
    let p1 = sats.iter().find(|s| s.plane_index == 1 && s.in_plane_index == 0).unwrap();
    assert!((p1.orbit.raan_rad.to_degrees() - 6.0).abs() < 1e-9);
    assert!((p1.orbit.arg_latitude_rad.to_degrees() - 0.15).abs() < 1e-9);
    let in_plane = sats.iter().find(|s| s.plane_index == 0 && s.in_plane_index == 1).unwrap();
    assert!((in_plane.orbit.arg_latitude_rad.to_degrees() - 9.0).abs() < 1e-9);
}

#[test]
fn spherical_conversion() {
    let v = geodetic_to_ecef(&GeodeticPoint::new(30.0, 110.0));
    assert!((v.x + 1_887.078_303_597).abs() < 1e-6);
    assert!((v.y - 5_184.705_027_877).abs() < 1e-6);
    assert!((v.z - 3185.5).abs() < 1e-6);
    let back = ecef_to_geodetic(v);
    assert!((back.latitude - 30.0).abs() < 1e-9 && (back.longitude - 110.0).abs() < 1e-9);
}

fn overhead_sat(lat: f64, lon: f64, alt: f64) -> SatelliteState {
    let mut s = walker()[0];
    s.position = geodetic_to_ecef(&GeodeticPoint {
        latitude: lat,
        longitude: lon,
        altitude_above_surface: alt,
    });
    s
}

#[test]
fn slant_distance_oracles() {
    assert!((slant_range_at_elevation(30.0, 600.0) - 1075.1).abs() < 0.1);
    assert!((slant_range_at_elevation(30.0, 600.0) - 1_075.088_016_929).abs() < 1e-6);
    assert!((slant_range_at_elevation(90.0, 600.0) - 600.0).abs() < 1e-9);
    assert!((slant_range_at_elevation(0.0, 600.0) - 2_829.346_214_234).abs() < 1e-6);

    // Sub-satellite point 7.6754° of arc east: the satellite sits at 30° elevation.
    let ue = GeodeticPoint::new(0.0, 0.0);
    let sat = overhead_sat(0.0, 7.675_416_088_245_625, 600.0);
    assert!((slant_distance(&ue, &sat) - 1_075.088_016_929).abs() < 1e-6);
    let (el, az) = elevation_azimuth(&ue, &sat);
    assert!((el - 30.0).abs() < 1e-9);
    assert!((az - 90.0).abs() < 1e-9);

    let zenith = overhead_sat(0.0, 0.0, 600.0);
    assert!((slant_distance(&ue, &zenith) - 600.0).abs() < 1e-9);
    assert!((elevation_azimuth(&ue, &zenith).0 - 90.0).abs() < 1e-9);
}

#[test]
fn far_side_satellite_is_not_visible() {
    let ue = GeodeticPoint::new(0.0, 0.0);
    let far = overhead_sat(0.0, 180.0, 600.0);
    assert!(elevation_azimuth(&ue, &far).0 < 0.0);
    assert!(visible_satellites(&ue, &[far], 0.0).is_empty());
    assert!(visible_satellites(&ue, &[], 0.0).is_empty());
}

#[test]
fn visibility_is_nearest_first() {
    let ue = GeodeticPoint::new(10.0, 20.0);
    let mut a = overhead_sat(10.0, 20.0, 600.0);
    let mut b = overhead_sat(12.0, 20.0, 600.0);
    let mut c = overhead_sat(10.0, 21.0, 600.0);
    a.satellite_id = 2;
    b.satellite_id = 0;
    c.satellite_id = 1;
    assert_eq!(visible_satellites(&ue, &[b, c, a], 10.0), vec![2, 1, 0]);
}

proptest! {
    #[test]
    fn propagation_conserves_radius(id in 0usize..2400, t in 0.0f64..20_000.0) {
        let s = walker()[id];
        let p = propagate(&s, t);
        prop_assert!((p.position.norm() - s.orbit.radius_km).abs() < 1e-6);
    }

    #[test]
    fn propagation_composes(id in 0usize..2400, a in 0.0f64..6000.0, b in 0.0f64..6000.0) {
        let s = walker()[id];
        let two = propagate(&propagate(&s, a), b);
        let one = propagate(&s, a + b);
        prop_assert!(two.position.distance(one.position) < 1e-6);
    }

    #[test]
    fn geodetic_round_trip(lat in -89.9f64..89.9, lon in -179.9f64..180.0, alt in 0.0f64..2000.0) {
        let p = GeodeticPoint { latitude: lat, longitude: lon, altitude_above_surface: alt };
        let q = ecef_to_geodetic(geodetic_to_ecef(&p));
        prop_assert!((q.latitude - lat).abs() < 1e-9);
        prop_assert!((q.longitude - lon).abs() < 1e-9);
        prop_assert!((q.altitude_above_surface - alt).abs() < 1e-6);
    }

    #[test]
    fn elevation_matches_law_of_cosines(dlat in -20.0f64..20.0, dlon in -20.0f64..20.0) {
        let ue = GeodeticPoint::new(0.0, 0.0);
        let sat = overhead_sat(dlat, dlon, 600.0);
        let sub = GeodeticPoint::new(dlat, dlon);
        let gamma = great_circle_km(&ue, &sub) / EARTH_RADIUS_KM;
        let r = EARTH_RADIUS_KM + 600.0;
        let d = (EARTH_RADIUS_KM.powi(2) + r * r - 2.0 * EARTH_RADIUS_KM * r * gamma.cos()).sqrt();
        prop_assert!((slant_distance(&ue, &sat) - d).abs() < 1e-6);
        // Angle at the UE between the earth centre and the satellite, less 90°.
        let at_ue = ((EARTH_RADIUS_KM.powi(2) + d * d - r * r) / (2.0 * EARTH_RADIUS_KM * d)).acos();
        let el = at_ue.to_degrees() - 90.0;
        prop_assert!((elevation_azimuth(&ue, &sat).0 - el).abs() < 1e-6);
    }

    #[test]
    fn closed_form_slant_is_consistent(el in 0.0f64..90.0, alt in 300.0f64..2000.0) {
        let r = EARTH_RADIUS_KM + alt;
        let d = slant_range_at_elevation(el, alt);
        // |UE + d·û|² = r² with û at elevation `el`.
        let e = el.to_radians();
        let lhs = EARTH_RADIUS_KM.powi(2) + d * d + 2.0 * EARTH_RADIUS_KM * d * e.sin();
        prop_assert!((lhs - r * r).abs() / (r * r) < 1e-12);
    }

    #[test]
    fn great_circle_metric(a in (-80.0f64..80.0, -180.0f64..180.0), b in (-80.0f64..80.0, -180.0f64..180.0)) {
        let (p, q) = (GeodeticPoint::new(a.0, a.1), GeodeticPoint::new(b.0, b.1));
        let d = great_circle_km(&p, &q);
        prop_assert!((0.0..=std::f64::consts::PI * EARTH_RADIUS_KM + 1e-9).contains(&d));
        prop_assert!((d - great_circle_km(&q, &p)).abs() < 1e-9);
        // Chord never exceeds the arc.
        prop_assert!(geodetic_to_ecef(&p).distance(geodetic_to_ecef(&q)) <= d + 1e-9);
    }
}
