use geotopo::angle::Angle;
use geotopo::geocore::{isometric_latitude, isometric_latitude_inverse, meridian_arc, meridian_arc_inverse, Ellipsoid, MeridianArc};
use geotopo::quad::integrate;

fn by_quadrature(ell: &Ellipsoid<f64>, phi: f64) -> f64 {
    integrate(|t| ell.meridian_radius(t), 0.0, phi, 1e-6)
}

#[test]
fn series_matches_quadrature_at_100_latitudes() {
    for ell in [Ellipsoid::grs(), Ellipsoid::clarke1880()] {
        for i in 0..100 {
            let phi = -89.0 + 178.0 * i as f64 / 99.0;
            let s = meridian_arc(&ell, Angle::from_degrees(phi));
            let q = by_quadrature(&ell, phi.to_radians());
            assert!((s - q).abs() < 1e-3, "phi {phi}: {s} vs {q}");
        }
    }
}

#[test]
fn quarter_meridian() {
    let arc: MeridianArc<f64> = MeridianArc::new(&Ellipsoid::grs());
    assert!((arc.quarter_meridian() - 10_001_965.729_3).abs() < 1e-3);
}

#[test]
fn arc_inverse_round_trip() {
    let ell = Ellipsoid::clarke1880();
    for deg in [-80.0f64, -33.3, 0.0, 12.5, 47.0, 89.0] {
        let beta = meridian_arc(&ell, Angle::from_degrees(deg));
        let back = meridian_arc_inverse(&ell, beta).unwrap();
        assert!((back.degrees() - deg).abs() < 1e-9, "{deg}");
    }
}

#[test]
fn isometric_latitude_round_trip() {
    let ell = Ellipsoid::grs();
    for deg in [-75.0f64, -10.0, 0.0, 36.0, 60.0, 84.0] {
        let q = isometric_latitude(&ell, Angle::from_degrees(deg)).unwrap();
        let back = isometric_latitude_inverse(&ell, q).unwrap();
        assert!((back.degrees() - deg).abs() < 1e-11);
    }
}
