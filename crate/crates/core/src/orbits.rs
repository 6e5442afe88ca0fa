//! Two-body orbits: Kepler's equation, anomalies, periods and speeds.

use std::fmt;
use std::str::FromStr;

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::scalar::{lit, to_f64, Real};

/// GM of the Earth, m³/s².
pub const GM_EARTH: f64 = 3.986_005e14;
/// Astronomical unit, m.
pub const ASTRONOMICAL_UNIT: f64 = 149_597_870_000.0;
/// Gravitational constant, m³/(kg s²).
pub const GRAVITATIONAL_CONSTANT: f64 = 6.672e-11;
/// Mass of the Sun, kg.
pub const SUN_MASS: f64 = 1.9891e30;

/// Keplerian ellipse around a body of gravitational parameter `mu`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Orbit<T> {
    pub a: T,
    pub e: T,
    pub mu: T,
}

fn check_eccentricity<T: Real>(e: T) -> Result<()> {
    if !(e >= T::zero() && e < T::one()) {
        return Err(GeoError::Eccentricity(to_f64(e)));
    }
    Ok(())
}

impl<T: Real> Orbit<T> {
    pub fn new(a: T, e: T, mu: T) -> Result<Self> {
        if !(a > T::zero()) {
            return Err(GeoError::OutOfRange { what: "semi-major axis", value: to_f64(a) });
        }
        if !(mu > T::zero()) {
            return Err(GeoError::OutOfRange { what: "gravitational parameter", value: to_f64(mu) });
        }
        check_eccentricity(e)?;
        Ok(Orbit { a, e, mu })
    }

    /// Orbit from the apsidal distances to the centre; the smaller one is taken as perigee.
    pub fn from_apsidal_radii(r1: T, r2: T, mu: T) -> Result<Self> {
        let (rp, ra) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        if !(rp > T::zero()) {
            return Err(GeoError::OutOfRange { what: "apsidal radius", value: to_f64(rp) });
        }
        Self::new((ra + rp) / lit(2.0), (ra - rp) / (ra + rp), mu)
    }

    pub fn perigee(&self) -> T {
        self.a * (T::one() - self.e)
    }

    pub fn apogee(&self) -> T {
        self.a * (T::one() + self.e)
    }

    pub fn semi_minor(&self) -> T {
        self.a * (T::one() - self.e * self.e).sqrt()
    }

    /// `T = 2π √(a³/μ)`, seconds.
    pub fn period(&self) -> T {
        T::TAU() * (self.a * self.a * self.a / self.mu).sqrt()
    }

    /// Mean motion `n = 2π/T`.
    pub fn mean_motion(&self) -> T {
        (self.mu / (self.a * self.a * self.a)).sqrt()
    }

    /// `r = a(1 − e²)/(1 + e cos ν)`.
    pub fn radius_at(&self, nu: Angle<T>) -> T {
        self.a * (T::one() - self.e * self.e) / (T::one() + self.e * nu.cos())
    }

    /// `v = √(μ(2/r − 1/a))` for `r` between perigee and apogee.
    pub fn vis_viva(&self, r: T) -> Result<T> {
        let slack = lit::<T>(1e-12) * self.a;
        if !(r >= self.perigee() - slack && r <= self.apogee() + slack) {
            return Err(GeoError::OutsideApsidalBand(to_f64(r)));
        }
        Ok((self.mu * (lit::<T>(2.0) / r - T::one() / self.a)).max(T::zero()).sqrt())
    }

    /// Areal constant `C = r²ν̇` with `C² = (b²/a) μ`.
    pub fn areal_constant(&self) -> T {
        let b = self.semi_minor();
        (b * b / self.a * self.mu).sqrt()
    }

    /// Time elapsed since perigee at true anomaly `nu`, in `[0, T)`.
    pub fn time_since_perigee(&self, nu: Angle<T>) -> T {
        let m = anomaly_convert(AnomalyKind::True, AnomalyKind::Mean, nu.normalized(), self.e)
            .unwrap_or(nu)
            .normalized();
        m.radians() / self.mean_motion()
    }

    /// Eccentric anomaly in `[0, π]` where the distance to the centre is `r`.
    pub fn eccentric_anomaly_at_radius(&self, r: T) -> Result<Angle<T>> {
        if self.e == T::zero() {
            return if (r - self.a).abs() <= lit::<T>(1e-12) * self.a {
                Ok(Angle::default())
            } else {
                Err(GeoError::OutsideApsidalBand(to_f64(r)))
            };
        }
        let c = (T::one() - r / self.a) / self.e;
        if !(c.abs() <= T::one() + lit(1e-12)) {
            return Err(GeoError::OutsideApsidalBand(to_f64(r)));
        }
        Ok(Angle::from_radians(c.max(-T::one()).min(T::one()).acos()))
    }

    /// Position in the orbital plane (perigee on +x) and velocity at eccentric anomaly `ecc`.
    pub fn state_at(&self, ecc: Angle<T>) -> ([T; 2], [T; 2]) {
        let (s, c) = ecc.radians().sin_cos();
        let b = self.semi_minor();
        let edot = self.mean_motion() / (T::one() - self.e * c);
        ([self.a * (c - self.e), b * s], [-self.a * s * edot, b * c * edot])
    }
}

/// Orbit around a spherical body of radius `r_body` from apogee and perigee altitudes.
pub fn orbit_from_apsides<T: Real>(h_apo: T, h_peri: T, r_body: T, mu: T) -> Result<Orbit<T>> {
    if !(h_apo >= h_peri) {
        return Err(GeoError::OutOfRange { what: "apogee altitude below perigee", value: to_f64(h_apo) });
    }
    if !(h_peri > -r_body) {
        return Err(GeoError::OutOfRange { what: "perigee altitude", value: to_f64(h_peri) });
    }
    let two = lit::<T>(2.0);
    let a = r_body + (h_apo + h_peri) / two;
    let e = (h_apo - h_peri) / (two * r_body + h_apo + h_peri);
    Orbit::new(a, e, mu)
}

/// `v_A / v_P = (1 − e)/(1 + e)`.
pub fn apsidal_ratio<T: Real>(e: T) -> Result<T> {
    check_eccentricity(e)?;
    Ok((T::one() - e) / (T::one() + e))
}

/// Solves `E − e sin E = M`. Newton from `E₀ = M + e sin M`, with bisection when Newton stalls.
pub fn kepler_solve<T: Real>(m: Angle<T>, e: T) -> Result<Angle<T>> {
    check_eccentricity(e)?;
    let full = m.radians();
    let reduced = m.signed().radians();
    let offset = full - reduced;
    let f = |x: T| x - e * x.sin() - reduced;
    let tol = lit::<T>(4.0) * T::epsilon();
    let mut x = reduced + e * reduced.sin();
    let mut last_step = T::infinity();
    let mut converged = false;
    for _ in 0..50 {
        let step = f(x) / (T::one() - e * x.cos());
        if !step.is_finite() {
            break;
        }
        if e > lit(0.8) && step.abs() >= last_step {
            break;
        }
        x = x - step;
        last_step = step.abs();
        if step.abs() <= tol * T::one().max(x.abs()) {
            converged = true;
            break;
        }
    }
    if !converged {
        // f is increasing and changes sign on [−π, π].
        let (mut lo, mut hi) = (-T::PI(), T::PI());
        for _ in 0..200 {
            let mid = (lo + hi) / lit(2.0);
            if f(mid) > T::zero() {
                hi = mid;
            } else {
                lo = mid;
            }
            if hi - lo <= tol {
                break;
            }
        }
        x = (lo + hi) / lit(2.0);
    }
    Ok(Angle::from_radians(x + offset))
}

/// Which anomaly an angle measures.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum AnomalyKind {
    True,
    Eccentric,
    Mean,
}

impl FromStr for AnomalyKind {
    type Err = GeoError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "true" | "nu" => Ok(AnomalyKind::True),
            "eccentric" | "E" => Ok(AnomalyKind::Eccentric),
            "mean" | "M" => Ok(AnomalyKind::Mean),
            other => Err(GeoError::Parse(format!("unknown anomaly `{other}` (true|eccentric|mean)"))),
        }
    }
}

impl fmt::Display for AnomalyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            AnomalyKind::True => "true",
            AnomalyKind::Eccentric => "eccentric",
            AnomalyKind::Mean => "mean",
        })
    }
}

fn half_angle_map<T: Real>(x: T, k: T) -> T {
    // tan(y/2) = k tan(x/2), keeping y on the same turn as x.
    let turns = (x / T::TAU()).round();
    let r = x - turns * T::TAU();
    let h = r / lit(2.0);
    lit::<T>(2.0) * (k * h.sin()).atan2(h.cos()) + turns * T::TAU()
}

/// Converts between true, eccentric and mean anomaly: `tan(ν/2) = √((1+e)/(1−e)) tan(E/2)`,
/// `M = E − e sin E`.
pub fn anomaly_convert<T: Real>(from: AnomalyKind, to: AnomalyKind, x: Angle<T>, e: T) -> Result<Angle<T>> {
    check_eccentricity(e)?;
    let k = ((T::one() + e) / (T::one() - e)).sqrt();
    let ecc = match from {
        AnomalyKind::Eccentric => x.radians(),
        AnomalyKind::True => half_angle_map(x.radians(), T::one() / k),
        AnomalyKind::Mean => kepler_solve(x, e)?.radians(),
    };
    Ok(Angle::from_radians(match to {
        AnomalyKind::Eccentric => ecc,
        AnomalyKind::True => half_angle_map(ecc, k),
        AnomalyKind::Mean => ecc - e * ecc.sin(),
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    fn r(x: f64) -> Angle<f64> {
        Angle::from_radians(x)
    }

    #[test]
    fn kepler_trivial_cases() {
        assert_eq!(kepler_solve(r(1.3), 0.0).unwrap().radians(), 1.3);
        for e in [0.1, 0.5, 0.97] {
            assert!((kepler_solve(r(PI), e).unwrap().radians() - PI).abs() < 1e-15);
        }
        assert!(kepler_solve(r(1.0), 1.0).is_err());
    }

    #[test]
    fn kepler_residual_high_eccentricity() {
        for i in 0..200 {
            let m = -7.0 + 14.0 * i as f64 / 199.0;
            for e in [0.0205, 0.5, 0.9, 0.97] {
                let ecc = kepler_solve(r(m), e).unwrap().radians();
                assert!((ecc - e * ecc.sin() - m).abs() < 1e-13, "{m} {e}");
            }
        }
    }

    #[test]
    fn anomaly_identity_for_circle() {
        for kind in [AnomalyKind::True, AnomalyKind::Eccentric, AnomalyKind::Mean] {
            let y = anomaly_convert(kind, AnomalyKind::True, r(2.2), 0.0).unwrap();
            assert!((y.radians() - 2.2).abs() < 1e-15);
        }
    }

    #[test]
    fn half_angle_against_cosine_form() {
        let nu = anomaly_convert(AnomalyKind::Eccentric, AnomalyKind::True, r(PI / 2.0), 0.5).unwrap();
        assert!((nu.radians() - 2.0 * 3f64.sqrt().atan()).abs() < 1e-15);
        let cos_nu = (0.0 - 0.5) / (1.0 - 0.0);
        assert!((nu.cos() - cos_nu).abs() < 1e-15);
    }

    #[test]
    fn apsides_and_period() {
        let o = orbit_from_apsides(1.1e6, 8e5, 6.371e6, GM_EARTH).unwrap();
        assert_eq!(o.a, 7_321_000.0);
        assert!((o.e - 300_000.0 / 14_642_000.0).abs() < 1e-16);
        let c = orbit_from_apsides(5e5, 5e5, 6.371e6, GM_EARTH).unwrap();
        assert_eq!(c.e, 0.0);
        let big = Orbit::new(2.0 * o.a, o.e, o.mu).unwrap();
        assert!((big.period() / o.period() - 2.0 * 2f64.sqrt()).abs() < 1e-14);
        assert!(orbit_from_apsides(8e5, 1.1e6, 6.371e6, GM_EARTH).is_err());
    }

    #[test]
    fn time_since_perigee_symmetry() {
        let o = orbit_from_apsides(1.1e6, 8e5, 6.371e6, GM_EARTH).unwrap();
        assert_eq!(o.time_since_perigee(r(0.0)), 0.0);
        assert!((o.time_since_perigee(r(PI)) - o.period() / 2.0).abs() < 1e-9);
    }

    #[test]
    fn circular_speed_and_band() {
        let o = Orbit::new(7e6, 0.0, GM_EARTH).unwrap();
        assert!((o.vis_viva(7e6).unwrap() - (GM_EARTH / 7e6).sqrt()).abs() < 1e-9);
        assert_eq!(o.vis_viva(8e6), Err(GeoError::OutsideApsidalBand(8e6)));
    }

    #[test]
    fn apsidal_radii_are_keyed_on_value() {
        let h = Orbit::from_apsidal_radii(35.1f64, 0.53, 1.0).unwrap();
        assert!((h.e - (35.1 - 0.53) / (35.1 + 0.53)).abs() < 1e-15);
        assert_eq!(h, Orbit::from_apsidal_radii(0.53, 35.1, 1.0).unwrap());
    }
}
