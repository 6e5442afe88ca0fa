//! Conformal plane representations and the plane reduction of azimuths.

pub mod gauss;
pub mod lambert;
pub mod utm;

use std::fmt;
use std::str::FromStr;

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::geocore::{gudermannian, mercator_latitude, Ellipsoid};
use crate::scalar::{lit, to_f64, Real};
use crate::vec3::Vec3;

pub use gauss::{gauss_sphere_fit, gauss_sphere_map, gauss_sphere_modulus, GaussSphereParams};
pub use lambert::{builtin_zones, find_zone, load_zones, zone_for, LambertZone};
pub use utm::{utm_coefficients, utm_inverse_on_parallel, utm_series_a8, utm_truncated, UtmCoefficients};

/// Plane coordinates in metres: `x` easting, `y` northing.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct PlaneCoord<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> PlaneCoord<T> {
    pub fn new(x: T, y: T) -> Self {
        PlaneCoord { x, y }
    }

    pub fn distance(&self, o: &Self) -> T {
        (self.x - o.x).hypot(self.y - o.y)
    }

    /// Bearing from the `y` axis towards `x`, in `[0, 2π)`.
    pub fn bearing_to(&self, o: &Self) -> Angle<T> {
        Angle::from_radians((o.x - self.x).atan2(o.y - self.y)).normalized()
    }
}

/// Direction of a projection call.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl FromStr for Direction {
    type Err = GeoError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "fwd" | "forward" => Ok(Direction::Forward),
            "inv" | "inverse" => Ok(Direction::Inverse),
            other => Err(GeoError::Parse(format!("unknown direction `{other}` (fwd|inv)"))),
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::Forward => "fwd",
            Direction::Inverse => "inv",
        })
    }
}

fn check_latitude<T: Real>(phi: T) -> Result<()> {
    if !(phi.abs() < T::FRAC_PI_2()) {
        return Err(GeoError::PoleDomain(to_f64(phi)));
    }
    Ok(())
}

/// Spherical Mercator: `X = Rλ`, `Y = R ln tan(π/4 + φ/2)`.
pub fn mercator<T: Real>(r: T, phi: Angle<T>, lambda: Angle<T>) -> Result<PlaneCoord<T>> {
    check_latitude(phi.radians())?;
    Ok(PlaneCoord::new(r * lambda.radians(), r * mercator_latitude(phi.radians())))
}

pub fn mercator_inverse<T: Real>(r: T, p: PlaneCoord<T>) -> (Angle<T>, Angle<T>) {
    (Angle::from_radians(gudermannian(p.y / r)), Angle::from_radians(p.x / r))
}

/// Mercator scale `1/cos φ`, equal along meridian and parallel.
pub fn mercator_modulus<T: Real>(phi: Angle<T>) -> T {
    T::one() / phi.cos()
}

/// Polar stereographic chart: `X = 2R tan(π/4 − φ/2) sin λ`, `Y = −2R tan(π/4 − φ/2) cos λ`.
pub fn polar_stereo<T: Real>(r: T, phi: Angle<T>, lambda: Angle<T>) -> Result<PlaneCoord<T>> {
    let p = phi.radians();
    if !(p > -T::FRAC_PI_2()) || p > T::FRAC_PI_2() {
        return Err(GeoError::PoleDomain(to_f64(p)));
    }
    let rho = lit::<T>(2.0) * r * (T::FRAC_PI_4() - p / lit(2.0)).tan();
    let (s, c) = lambda.radians().sin_cos();
    Ok(PlaneCoord::new(rho * s, -rho * c))
}

pub fn polar_stereo_inverse<T: Real>(r: T, p: PlaneCoord<T>) -> (Angle<T>, Angle<T>) {
    let rho = p.x.hypot(p.y);
    let phi = T::FRAC_PI_2() - lit::<T>(2.0) * (rho / (lit::<T>(2.0) * r)).atan();
    (Angle::from_radians(phi), Angle::from_radians(p.x.atan2(-p.y)))
}

/// Radius of the image of parallel `φ`, `2R tan(π/4 − φ/2)`.
pub fn polar_stereo_parallel_radius<T: Real>(r: T, phi: Angle<T>) -> T {
    lit::<T>(2.0) * r * (T::FRAC_PI_4() - phi.radians() / lit(2.0)).tan()
}

/// Polar stereographic scale `2/(1 + sin φ)`.
pub fn polar_stereo_modulus<T: Real>(phi: Angle<T>) -> T {
    lit::<T>(2.0) / (T::one() + phi.sin())
}

/// Inverse stereographic projection from the north pole: plane `(u, v)` to the unit sphere.
pub fn stereo_plane_to_sphere<T: Real>(u: T, v: T) -> Vec3<T> {
    let q = u * u + v * v;
    let d = q + T::one();
    Vec3::new(lit::<T>(2.0) * u / d, lit::<T>(2.0) * v / d, (q - T::one()) / d)
}

/// Projection `σ` of the unit sphere from `N = (0, 0, 1)` onto `z = 0`.
pub fn stereo_sphere_to_plane<T: Real>(p: Vec3<T>) -> Result<(T, T)> {
    let d = T::one() - p.z;
    if !(d.abs() > T::epsilon()) {
        return Err(GeoError::SingularInverse);
    }
    Ok((p.x / d, p.y / d))
}

/// Conformal factor of `F`: `ds² = λ²(du² + dv²)` with `λ = 2/(1 + u² + v²)`.
pub fn stereo_conformal_factor<T: Real>(u: T, v: T) -> T {
    lit::<T>(2.0) / (T::one() + u * u + v * v)
}

/// Scale along the meridian and along the parallel of a forward map `(φ, λ) ↦ (X, Y)` in radians,
/// by fourth-order central differences with one Richardson step.
pub fn linear_moduli<T: Real>(
    ell: &Ellipsoid<T>,
    phi: Angle<T>,
    lambda: Angle<T>,
    map: impl Fn(T, T) -> Result<PlaneCoord<T>>,
) -> Result<(T, T)> {
    let (p, l) = (phi.radians(), lambda.radians());
    let step = T::epsilon().powf(lit(1.0 / 7.0));
    let d = |f: &dyn Fn(T) -> Result<PlaneCoord<T>>, h0: T| -> Result<T> {
        let at = |h: T| -> Result<(T, T)> {
            let (a, b, c, e) = (f(-h - h)?, f(-h)?, f(h)?, f(h + h)?);
            let k = T::one() / (lit::<T>(12.0) * h);
            let dx = (a.x - lit::<T>(8.0) * b.x + lit::<T>(8.0) * c.x - e.x) * k;
            let dy = (a.y - lit::<T>(8.0) * b.y + lit::<T>(8.0) * c.y - e.y) * k;
            Ok((dx, dy))
        };
        let (x1, y1) = at(h0)?;
        let (x2, y2) = at(h0 / lit(2.0))?;
        let r = |coarse: T, fine: T| (lit::<T>(16.0) * fine - coarse) / lit(15.0);
        Ok(r(x1, x2).hypot(r(y1, y2)))
    };
    // steps shrink toward the poles, where derivatives grow like powers of sec φ
    let dphi = d(&|s| map(p + s, l), step * p.cos().max(lit(1e-3)))?;
    let dlam = d(&|s| map(p, l + s), step)?;
    Ok((dphi / ell.meridian_radius(p), dlam / ell.parallel_radius(p)))
}

/// Meridian convergence of the transverse map, `tan γ = (λ − λ₀) sin φ`.
pub fn meridian_convergence<T: Real>(lambda: Angle<T>, lambda0: Angle<T>, phi: Angle<T>) -> Angle<T> {
    Angle::from_radians(((lambda - lambda0).radians() * phi.sin()).atan())
}

/// Laplace equation `Azg = Aza + (λ − λa) sin φ`.
pub fn laplace_azimuth<T: Real>(aza: Angle<T>, lambda: Angle<T>, lambda_a: Angle<T>, phi: Angle<T>) -> Angle<T> {
    aza + (lambda - lambda_a) * phi.sin()
}

/// Grid bearing `G = Az − γ − Dv`, in `[0, 2π)`.
pub fn gisement<T: Real>(az: Angle<T>, gamma: Angle<T>, dv: Angle<T>) -> Angle<T> {
    (az - gamma - dv).normalized()
}

/// `X_B = X_A + D sin G`, `Y_B = Y_A + D cos G`.
pub fn plane_traverse<T: Real>(from: PlaneCoord<T>, g: Angle<T>, d: T) -> PlaneCoord<T> {
    PlaneCoord::new(from.x + d * g.sin(), from.y + d * g.cos())
}
