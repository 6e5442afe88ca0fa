use geotopo::angle::Angle;
use geotopo::geocore::Ellipsoid;
use geotopo::projmaps::{
    builtin_zones, gauss_sphere_fit, gauss_sphere_map, gauss_sphere_modulus, linear_moduli, mercator, mercator_inverse,
    mercator_modulus, polar_stereo, polar_stereo_inverse, polar_stereo_modulus, stereo_conformal_factor,
    stereo_plane_to_sphere, stereo_sphere_to_plane,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const R: f64 = 6_371_000.0;

fn deg(x: f64) -> Angle<f64> {
    Angle::from_degrees(x)
}

#[test]
fn mercator_is_conformal() {
    let s = Ellipsoid::sphere(R).unwrap();
    for phi in [-70.0, -20.0, 0.0, 35.0, 80.0] {
        let (m1, m2) = linear_moduli(&s, deg(phi), deg(10.0), |p, l| {
            mercator(R, Angle::from_radians(p), Angle::from_radians(l))
        })
        .unwrap();
        assert!((m1 - m2).abs() <= 1e-10 * m1, "{phi}: {m1} {m2}");
        assert!((m1 - mercator_modulus(deg(phi))).abs() <= 1e-9 * m1);
    }
}

#[test]
fn polar_stereo_is_conformal() {
    let s = Ellipsoid::sphere(R).unwrap();
    for phi in [10.0, 45.0, 70.0, 85.0] {
        let (m1, m2) = linear_moduli(&s, deg(phi), deg(-40.0), |p, l| {
            polar_stereo(R, Angle::from_radians(p), Angle::from_radians(l))
        })
        .unwrap();
        assert!((m1 - m2).abs() <= 1e-10 * m1, "{phi}: {m1} {m2}");
        assert!((m1 - polar_stereo_modulus(deg(phi))).abs() <= 1e-9);
    }
}

#[test]
fn gauss_sphere_is_conformal() {
    let ell = Ellipsoid::clarke1880();
    let params = gauss_sphere_fit(&ell, deg(36.0)).unwrap();
    let psi = |p: f64| gauss_sphere_map(&params, &ell, Angle::from_radians(p), deg(0.0)).unwrap().0.radians();
    let h = 1e-4;
    for phi in [30.0f64, 34.0, 36.0, 38.0, 42.0] {
        let p = phi.to_radians();
        let dpsi = (psi(p - 2.0 * h) - 8.0 * psi(p - h) + 8.0 * psi(p + h) - psi(p + 2.0 * h)) / (12.0 * h);
        let m1 = params.r_sphere * dpsi / ell.meridian_radius(p);
        let m2 = gauss_sphere_modulus(&params, &ell, deg(phi)).unwrap();
        assert!((m1 - m2).abs() <= 1e-10, "{phi}: {m1} {m2}");
    }
    let m0 = gauss_sphere_modulus(&params, &ell, deg(36.0)).unwrap();
    assert!((m0 - 1.0).abs() < 1e-14);
}

#[test]
fn stereographic_round_trip() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let (u, v) = (rng.gen_range(-20.0f64..20.0), rng.gen_range(-20.0f64..20.0));
        let p = stereo_plane_to_sphere(u, v);
        assert!((p.norm() - 1.0).abs() < 1e-15);
        let (u2, v2) = stereo_sphere_to_plane(p).unwrap();
        worst = worst.max((u2 - u).abs().max((v2 - v).abs()) / (1.0 + u * u + v * v));
    }
    assert!(worst <= 1e-14, "{worst:e}");
    assert!((stereo_conformal_factor(0.0f64, 0.0) - 2.0).abs() < 1e-15);
}

#[test]
fn spherical_inverses() {
    for (phi, lam) in [(10.0, 20.0), (-45.0, 100.0), (75.0, -170.0)] {
        let (p, l) = mercator_inverse(R, mercator(R, deg(phi), deg(lam)).unwrap());
        assert!((p.degrees() - phi).abs() < 1e-11 && (l.degrees() - lam).abs() < 1e-11);
        if phi > 0.0 {
            let (p, l) = polar_stereo_inverse(R, polar_stereo(R, deg(phi), deg(lam)).unwrap());
            assert!((p.degrees() - phi).abs() < 1e-11 && (l.degrees() - lam).abs() < 1e-11);
        }
    }
}

#[test]
fn lambert_round_trips() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for zone in builtin_zones() {
        let (lo, hi) = zone.band.map_or((zone.phi0.degrees() - 1.5, zone.phi0.degrees() + 1.5), |(a, b)| (a.degrees(), b.degrees()));
        for _ in 0..200 {
            let phi = deg(rng.gen_range(lo..hi));
            let lam = zone.lambda0 + deg(rng.gen_range(-4.0..4.0));
            let xy = zone.forward(phi, lam).unwrap();
            let (p, l) = zone.inverse(xy).unwrap();
            assert!((p.radians() - phi.radians()).abs() < 1e-11, "{}", zone.name);
            assert!((l.radians() - lam.radians()).abs() < 1e-11, "{}", zone.name);
        }
        let m0 = zone.modulus(zone.phi0).unwrap();
        assert!((m0 - zone.k0).abs() < 1e-12);
    }
}
