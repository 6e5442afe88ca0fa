use geotopo::angle::Angle;
use geotopo::cartgeo::{
    cart_to_geodetic_finite, cart_to_geodetic_iter, cart_to_geodetic_series, geodetic_to_cart, GeodeticCoord, IterMethod,
};
use geotopo::geocore::Ellipsoid;
use geotopo::vec3::Vec3;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn point(phi_deg: f64, lam_deg: f64, h: f64) -> GeodeticCoord<f64> {
    GeodeticCoord::new(Angle::from_degrees(phi_deg), Angle::from_degrees(lam_deg), h)
}

#[test]
fn all_methods_agree_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for ell in [Ellipsoid::grs(), Ellipsoid::clarke1880()] {
        for _ in 0..1000 {
            let g = point(rng.gen_range(-89.5..89.5), rng.gen_range(-180.0..180.0), rng.gen_range(-1000.0..20_000.0));
            let xyz = geodetic_to_cart(&ell, &g).unwrap();
            let exact = cart_to_geodetic_finite(&ell, xyz).unwrap();
            assert!((exact.phi.radians() - g.phi.radians()).abs() <= 1e-10);
            assert!((exact.h - g.h).abs() <= 1e-4);
            for m in IterMethod::ALL {
                let (it, report) = cart_to_geodetic_iter(&ell, xyz, m, 1e-14).unwrap();
                assert!((it.phi.radians() - exact.phi.radians()).abs() <= 1e-10, "{m}: {report:?}");
                assert!((it.h - exact.h).abs() <= 1e-4, "{m}");
            }
        }
    }
}

#[test]
fn fourth_order_series_on_the_surface() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let ell = Ellipsoid::grs();
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let g = point(rng.gen_range(-89.5..89.5), rng.gen_range(-180.0..180.0), 0.0);
        let xyz = geodetic_to_cart(&ell, &g).unwrap();
        let s = cart_to_geodetic_series(&ell, xyz, 4).unwrap();
        worst = worst.max((s.phi.radians() - g.phi.radians()).abs());
    }
    assert!(worst <= 5e-9, "worst {worst:e}");
}

#[test]
fn series_error_shrinks_with_order() {
    let ell = Ellipsoid::grs();
    let xyz = geodetic_to_cart(&ell, &point(45.0, 10.0, 0.0)).unwrap();
    let errs: Vec<f64> = (1..=4)
        .map(|k| (cart_to_geodetic_series(&ell, xyz, k).unwrap().phi.degrees() - 45.0).abs())
        .collect();
    assert!(errs.windows(2).all(|w| w[1] < w[0]), "{errs:?}");
    assert!(cart_to_geodetic_series(&ell, xyz, 5).is_err());
}

#[test]
fn poles_and_equator() {
    let ell: Ellipsoid<f64> = Ellipsoid::grs();
    let north = cart_to_geodetic_finite(&ell, Vec3::new(0.0, 0.0, ell.b() + 10.0)).unwrap();
    assert!((north.phi.degrees() - 90.0).abs() < 1e-12);
    assert!((north.h - 10.0).abs() < 1e-6);
    let eq = cart_to_geodetic_finite(&ell, Vec3::new(ell.a() + 5.0, 0.0, 0.0)).unwrap();
    assert!(eq.phi.radians().abs() < 1e-15);
    assert!((eq.h - 5.0).abs() < 1e-6);
}

proptest! {
    #[test]
    fn round_trip(phi in -89.9f64..89.9, lam in -179.9f64..179.9, h in -500.0f64..10_000.0) {
        let ell = Ellipsoid::grs();
        let g = point(phi, lam, h);
        let back = cart_to_geodetic_finite(&ell, geodetic_to_cart(&ell, &g).unwrap()).unwrap();
        prop_assert!((back.phi.degrees() - phi).abs() < 1e-9);
        prop_assert!((back.lambda.degrees() - lam).abs() < 1e-9);
        prop_assert!((back.h - h).abs() < 1e-4);
    }
}
