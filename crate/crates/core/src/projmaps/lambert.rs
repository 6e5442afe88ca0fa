//! Tangent conformal conic (Lambert) and its zone registry.

use serde::Deserialize;

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::geocore::{isometric_latitude, isometric_latitude_inverse, Ellipsoid};
use crate::scalar::{to_f64, Real};

use super::{check_latitude, PlaneCoord};

const BUILTIN: &str = include_str!("../../data/lambert_zones.toml");

/// A Lambert zone: ellipsoid, origin `(φ₀, λ₀)`, scale `k₀` on the origin parallel and false origin.
#[derive(Clone, Debug, PartialEq)]
pub struct LambertZone<T> {
    pub name: String,
    pub ell: Ellipsoid<T>,
    pub phi0: Angle<T>,
    pub lambda0: Angle<T>,
    pub k0: T,
    pub x0: T,
    pub y0: T,
    /// Latitudes the zone is meant for.
    pub band: Option<(Angle<T>, Angle<T>)>,
    n: T,
    r0: T,
    iso0: T,
}

impl<T: Real> LambertZone<T> {
    #[allow(clippy::too_many_arguments)]
    pub fn new(
        name: impl Into<String>,
        ell: Ellipsoid<T>,
        phi0: Angle<T>,
        lambda0: Angle<T>,
        k0: T,
        x0: T,
        y0: T,
        band: Option<(Angle<T>, Angle<T>)>,
    ) -> Result<Self> {
        let p0 = phi0.radians();
        check_latitude(p0)?;
        if p0 == T::zero() {
            return Err(GeoError::OutOfRange { what: "Lambert origin latitude", value: 0.0 });
        }
        if !(k0 > T::zero()) {
            return Err(GeoError::OutOfRange { what: "scale factor", value: to_f64(k0) });
        }
        let n = p0.sin();
        let r0 = k0 * ell.prime_vertical_radius(p0) / p0.tan();
        let iso0 = isometric_latitude(&ell, phi0)?;
        Ok(LambertZone { name: name.into(), ell, phi0, lambda0, k0, x0, y0, band, n, r0, iso0 })
    }

    /// Cone constant `n = sin φ₀`.
    pub fn n(&self) -> T {
        self.n
    }

    /// Radius of the origin parallel image, `k₀ N(φ₀) cot φ₀`.
    pub fn r0(&self) -> T {
        self.r0
    }

    pub fn in_band(&self, phi: Angle<T>) -> bool {
        self.band.is_none_or(|(lo, hi)| phi.radians() >= lo.radians() && phi.radians() <= hi.radians())
    }

    /// `r = r₀ exp(−n(𝓛 − 𝓛₀))`, `X = X₀ + r sin θ`, `Y = Y₀ + r₀ − r cos θ`, `θ = n(λ − λ₀)`.
    pub fn forward(&self, phi: Angle<T>, lambda: Angle<T>) -> Result<PlaneCoord<T>> {
        if !self.in_band(phi) {
            log::warn!("latitude {:.5} gr is outside Lambert zone {}", to_f64(phi.grads()), self.name);
        }
        let iso = isometric_latitude(&self.ell, phi)?;
        let r = self.r0 * (-self.n * (iso - self.iso0)).exp();
        let theta = self.n * (lambda - self.lambda0).signed().radians();
        let (s, c) = theta.sin_cos();
        Ok(PlaneCoord::new(self.x0 + r * s, self.y0 + self.r0 - r * c))
    }

    pub fn inverse(&self, p: PlaneCoord<T>) -> Result<(Angle<T>, Angle<T>)> {
        let sign = self.n.signum();
        let dx = p.x - self.x0;
        let dy = self.r0 - (p.y - self.y0);
        let r = sign * dx.hypot(dy);
        if r == T::zero() {
            return Err(GeoError::SingularInverse);
        }
        let theta = (sign * dx).atan2(sign * dy);
        let iso = self.iso0 - (r / self.r0).ln() / self.n;
        let phi = isometric_latitude_inverse(&self.ell, iso)?;
        Ok((phi, self.lambda0 + Angle::from_radians(theta / self.n)))
    }

    /// Meridian convergence `γ = n(λ − λ₀)`.
    pub fn convergence(&self, lambda: Angle<T>) -> Angle<T> {
        (lambda - self.lambda0).signed() * self.n
    }

    /// Linear modulus `m = n r / (N cos φ)`.
    pub fn modulus(&self, phi: Angle<T>) -> Result<T> {
        let iso = isometric_latitude(&self.ell, phi)?;
        let r = self.r0 * (-self.n * (iso - self.iso0)).exp();
        Ok(self.n * r / self.ell.parallel_radius(phi.radians()))
    }
}

#[derive(Deserialize)]
struct ZoneEntry {
    name: String,
    a: f64,
    e2: f64,
    phi0: f64,
    lambda0: f64,
    k0: f64,
    x0: f64,
    y0: f64,
    band: Option<[f64; 2]>,
}

#[derive(Deserialize)]
struct ZoneFile {
    zone: Vec<ZoneEntry>,
}

/// Parses a zone registry: `[[zone]]` tables with `name, a, e2, phi0, lambda0, k0, x0, y0` and an
/// optional `band = [lo, hi]`; angles in grades.
pub fn load_zones(text: &str) -> Result<Vec<LambertZone<f64>>> {
    let file: ZoneFile = toml::from_str(text).map_err(|e| GeoError::Parse(e.to_string()))?;
    file.zone
        .into_iter()
        .map(|z| {
            LambertZone::new(
                z.name,
                Ellipsoid::new(z.a, z.e2)?,
                Angle::from_grads(z.phi0),
                Angle::from_grads(z.lambda0),
                z.k0,
                z.x0,
                z.y0,
                z.band.map(|[lo, hi]| (Angle::from_grads(lo), Angle::from_grads(hi))),
            )
        })
        .collect()
}

/// Zones shipped in `data/lambert_zones.toml` (Lambert Nord and Sud Tunisie).
pub fn builtin_zones() -> Vec<LambertZone<f64>> {
    load_zones(BUILTIN).expect("bundled zone registry is valid")
}

/// Looks a zone up by case-insensitive name.
pub fn find_zone<'a>(zones: &'a [LambertZone<f64>], name: &str) -> Result<&'a LambertZone<f64>> {
    zones
        .iter()
        .find(|z| z.name.eq_ignore_ascii_case(name))
        .ok_or_else(|| GeoError::UnknownZone(name.to_string()))
}

/// First zone whose band contains `phi`.
pub fn zone_for(zones: &[LambertZone<f64>], phi: Angle<f64>) -> Option<&LambertZone<f64>> {
    zones.iter().find(|z| z.band.is_some() && z.in_band(phi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(x: f64) -> Angle<f64> {
        Angle::from_grads(x)
    }

    #[test]
    fn registry_loads() {
        let zones = builtin_zones();
        assert_eq!(zones.len(), 2);
        let nord = find_zone(&zones, "Nord").unwrap();
        assert!((nord.phi0.grads() - 40.0).abs() < 1e-12);
        assert!(find_zone(&zones, "centre").is_err());
        assert_eq!(zone_for(&zones, gr(40.9193)).unwrap().name, "nord");
        assert_eq!(zone_for(&zones, gr(36.0)).unwrap().name, "sud");
    }

    #[test]
    fn origin_maps_to_false_origin() {
        for z in builtin_zones() {
            let p = z.forward(z.phi0, z.lambda0).unwrap();
            assert!((p.x - z.x0).abs() < 1e-9 && (p.y - z.y0).abs() < 1e-9);
            assert!((z.modulus(z.phi0).unwrap() - z.k0).abs() < 1e-15);
        }
    }

    #[test]
    fn round_trip_and_convergence() {
        let zones = builtin_zones();
        let z = find_zone(&zones, "sud").unwrap();
        let (phi, lam) = (gr(36.2), gr(9.4));
        let (p2, l2) = z.inverse(z.forward(phi, lam).unwrap()).unwrap();
        assert!((p2.radians() - phi.radians()).abs() < 1e-12);
        assert!((l2.radians() - lam.radians()).abs() < 1e-12);
        assert!((z.convergence(gr(9.4)).grads() - z.n() * -1.6).abs() < 1e-12);
    }

    #[test]
    fn rejects_equatorial_origin() {
        let e = Ellipsoid::<f64>::clarke1880();
        assert!(LambertZone::new("x", e, gr(0.0), gr(0.0), 1.0, 0.0, 0.0, None).is_err());
    }
}
