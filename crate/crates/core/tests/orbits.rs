use std::f64::consts::PI;

use geotopo::angle::Angle;
use geotopo::orbits::{anomaly_convert, apsidal_ratio, kepler_solve, orbit_from_apsides, AnomalyKind, GM_EARTH};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn kepler_residual_up_to_high_eccentricity() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for _ in 0..5000 {
        let e = rng.gen_range(0.0..=0.97);
        let m = rng.gen_range(-PI..PI);
        let ecc = kepler_solve(Angle::from_radians(m), e).unwrap().radians();
        let r = ecc - e * ecc.sin() - m;
        assert!(r.abs() <= 1e-13, "e {e} M {m}: {r:e}");
    }
}

#[test]
fn kepler_keeps_whole_turns() {
    let ecc = kepler_solve(Angle::from_radians(4.0 * PI + 1.0), 0.3).unwrap().radians();
    assert!((ecc - 0.3 * ecc.sin() - (4.0 * PI + 1.0)).abs() < 1e-12);
}

#[test]
fn anomaly_round_trip() {
    for e in [0.0, 0.1, 0.5, 0.9] {
        for nu in [0.1f64, 1.0, 2.5, -2.0] {
            let m = anomaly_convert(AnomalyKind::True, AnomalyKind::Mean, Angle::from_radians(nu), e).unwrap();
            let back = anomaly_convert(AnomalyKind::Mean, AnomalyKind::True, m, e).unwrap();
            assert!((back.signed().radians() - nu).abs() < 1e-12, "e {e} nu {nu}");
        }
    }
}

#[test]
fn orbit_from_heights() {
    let o = orbit_from_apsides(1_100_000.0, 800_000.0, 6_371_000.0, GM_EARTH).unwrap();
    assert_eq!(o.a, 7_321_000.0);
    assert!((o.e - 300_000.0 / 14_642_000.0).abs() < 1e-16);
    let ratio = o.vis_viva(o.apogee()).unwrap() / o.vis_viva(o.perigee()).unwrap();
    assert!((ratio - apsidal_ratio(o.e).unwrap()).abs() < 1e-12);
}

#[test]
fn hyperbolic_eccentricity_rejected() {
    assert!(kepler_solve(Angle::from_radians(1.0), 1.0).is_err());
    assert!(apsidal_ratio(-0.1).is_err());
}
