//! Transverse Mercator truncated after the cubic term in longitude.

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::geocore::Ellipsoid;
use crate::scalar::{lit, Real};

use super::PlaneCoord;

/// Coefficients of `X = a₁Δλ + a₃Δλ³`, `Y = g(φ) + a₂Δλ²` on one parallel.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct UtmCoefficients<T> {
    pub a1: T,
    pub a2: T,
    pub a3: T,
    pub g: T,
}

/// `a₁ = N cos φ`, `a₂ = a₁ sin φ / 2`, `a₃ = a₁ cos²φ (1 − tan²φ + e′² cos²φ)/6` and
/// `g(φ) = a(1 − e²)(1.0051353 φ − 0.0025731 sin 2φ)`.
pub fn utm_coefficients<T: Real>(ell: &Ellipsoid<T>, phi: Angle<T>) -> UtmCoefficients<T> {
    let p = phi.radians();
    let (s, c) = p.sin_cos();
    let a1 = ell.prime_vertical_radius(p) * c;
    let a2 = a1 / lit(2.0) * s;
    let t2 = (s / c).powi(2);
    let a3 = a1 * c * c / lit(6.0) * (T::one() - t2 + ell.ep2() * c * c);
    let g = ell.a() * (T::one() - ell.e2()) * (lit::<T>(1.005_135_3) * p - lit::<T>(0.002_573_1) * (p + p).sin());
    UtmCoefficients { a1, a2, a3, g }
}

pub fn utm_truncated<T: Real>(ell: &Ellipsoid<T>, lambda0: Angle<T>, phi: Angle<T>, lambda: Angle<T>) -> PlaneCoord<T> {
    let k = utm_coefficients(ell, phi);
    let dl = (lambda - lambda0).signed().radians();
    PlaneCoord::new(k.a1 * dl + k.a3 * dl * dl * dl, k.g + k.a2 * dl * dl)
}

/// Longitude of the point with easting `x` on parallel `phi`: Newton on `a₁Δλ + a₃Δλ³ = X` from `X/a₁`.
pub fn utm_inverse_on_parallel<T: Real>(ell: &Ellipsoid<T>, lambda0: Angle<T>, phi: Angle<T>, x: T) -> Result<Angle<T>> {
    let k = utm_coefficients(ell, phi);
    let mut dl = x / k.a1;
    for _ in 0..50 {
        let f = k.a1 * dl + k.a3 * dl * dl * dl - x;
        let df = k.a1 + lit::<T>(3.0) * k.a3 * dl * dl;
        if df == T::zero() {
            break;
        }
        let step = f / df;
        dl = dl - step;
        if step.abs() <= T::epsilon() * (T::one() + dl.abs()) {
            return Ok(lambda0 + Angle::from_radians(dl));
        }
    }
    Err(GeoError::NoConvergence(50))
}

/// Coefficient of `Δλ⁸` in the full transverse Mercator northing series:
/// `N sin φ cos⁷φ (1385 − 3111t² + 543t⁴ − t⁶)/40320`.
pub fn utm_series_a8<T: Real>(ell: &Ellipsoid<T>, phi: Angle<T>) -> T {
    let p = phi.radians();
    let (s, c) = p.sin_cos();
    let t2 = (s / c).powi(2);
    let poly = lit::<T>(1385.0) - lit::<T>(3111.0) * t2 + lit::<T>(543.0) * t2 * t2 - t2 * t2 * t2;
    ell.prime_vertical_radius(p) * s * c.powi(7) * poly / lit(40320.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn central_meridian() {
        let e = Ellipsoid::<f64>::clarke1880();
        let phi = Angle::from_grads(40.9193);
        let p = utm_truncated(&e, Angle::from_degrees(9.0), phi, Angle::from_degrees(9.0));
        assert_eq!(p.x, 0.0);
        assert_eq!(p.y, utm_coefficients(&e, phi).g);
    }

    #[test]
    fn inverse_on_parallel_round_trip() {
        let e = Ellipsoid::<f64>::clarke1880();
        let (l0, phi) = (Angle::from_degrees(9.0), Angle::from_grads(40.9193));
        let lam = Angle::from_grads(12.1);
        let x = utm_truncated(&e, l0, phi, lam).x;
        let back = utm_inverse_on_parallel(&e, l0, phi, x).unwrap();
        assert!((back.radians() - lam.radians()).abs() < 1e-14);
    }
}
