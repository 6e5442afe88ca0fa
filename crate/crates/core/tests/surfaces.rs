use geotopo::diffgeo::catalog::{Enneper, Helix, Torus};
use geotopo::diffgeo::{curvatures, frenet, torus_geodesic};
use geotopo::geocore::torus_clairaut_invariant;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

#[test]
fn enneper_is_minimal() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..50 {
        let (u, v) = (rng.gen_range(-2.0f64..2.0), rng.gen_range(-2.0f64..2.0));
        let c = curvatures(&Enneper, u, v).unwrap();
        assert!(c.mean.abs() < 1e-9, "H = {} at ({u}, {v})", c.mean);
        let k = -4.0 / (1.0 + u * u + v * v).powi(4);
        assert!((c.gaussian - k).abs() < 1e-9 * k.abs().max(1.0));
    }
}

#[test]
fn helix_curvature_and_torsion() {
    let (a, b) = (3.0f64, 4.0f64);
    let h = Helix { a, b };
    for t in [-2.0, 0.0, 0.7, 5.0] {
        let f = frenet(&h, t).unwrap();
        assert!((f.curvature - a / (a * a + b * b)).abs() < 1e-12);
        assert!((f.torsion - b / (a * a + b * b)).abs() < 1e-12);
        assert!((f.speed - 5.0).abs() < 1e-12);
    }
}

#[test]
fn torus_gaussian_curvature() {
    let (a, r) = (3.0f64, 1.0f64);
    let t = Torus { a, r };
    for phi in [0.0f64, 1.0, 2.5] {
        let c = curvatures(&t, phi, 0.3).unwrap();
        let k = phi.cos() / (r * (a + r * phi.cos()));
        assert!((c.gaussian - k).abs() < 1e-12);
    }
}

#[test]
fn torus_geodesic_keeps_clairaut_invariant() {
    let (a, r) = (3.0f64, 1.0f64);
    let path = torus_geodesic(a, r, 0.0, 0.0, 0.6, 40.0, 1e-3);
    let c0 = torus_clairaut_invariant(a, r, path[0].phi, path[0].dlambda);
    let drift = path
        .iter()
        .map(|s| (torus_clairaut_invariant(a, r, s.phi, s.dlambda) - c0).abs())
        .fold(0.0, f64::max);
    assert!(drift < 1e-6, "drift {drift:e}");
    assert!((c0 - (a + r) * 0.6f64.sin()).abs() < 1e-12);
}
