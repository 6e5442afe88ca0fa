//! Reference ellipsoid, principal radii, auxiliary latitudes and meridian arc.

use serde::Deserialize;

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::scalar::{lit, to_f64, Real};

/// Ellipsoid of revolution given by semi-major axis and first eccentricity squared.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ellipsoid<T> {
    a: T,
    e2: T,
}

impl<T: Real> Ellipsoid<T> {
    pub fn new(a: T, e2: T) -> Result<Self> {
        if !(a > T::zero()) || !a.is_finite() {
            return Err(GeoError::InvalidEllipsoid(format!("a = {a}")));
        }
        if !(e2 >= T::zero() && e2 < T::one()) {
            return Err(GeoError::InvalidEllipsoid(format!("e2 = {e2}")));
        }
        Ok(Ellipsoid { a, e2 })
    }

    pub fn sphere(radius: T) -> Result<Self> {
        Self::new(radius, T::zero())
    }

    /// Clarke 1880 (IGN): a = 6 378 249.20 m, e² = 0.0068034877.
    pub fn clarke1880() -> Self {
        Ellipsoid { a: lit(6_378_249.20), e2: lit(0.006_803_487_7) }
    }

    /// GRS: a = 6 378 137.00 m, e² = 0.00669438.
    pub fn grs() -> Self {
        Ellipsoid { a: lit(6_378_137.0), e2: lit(0.006_694_38) }
    }

    pub fn by_name(name: &str) -> Result<Self> {
        match name.to_ascii_lowercase().as_str() {
            "clarke1880" | "clarke" => Ok(Self::clarke1880()),
            "grs" | "grs80" => Ok(Self::grs()),
            other => Err(GeoError::UnknownEllipsoid(other.to_string())),
        }
    }

    #[must_use]
    pub fn a(&self) -> T {
        self.a
    }

    #[must_use]
    pub fn e2(&self) -> T {
        self.e2
    }

    #[must_use]
    pub fn e(&self) -> T {
        self.e2.sqrt()
    }

    /// Semi-minor axis `a·√(1−e²)`.
    #[must_use]
    pub fn b(&self) -> T {
        self.a * (T::one() - self.e2).sqrt()
    }

    /// Flattening `1 − b/a`.
    #[must_use]
    pub fn f(&self) -> T {
        T::one() - (T::one() - self.e2).sqrt()
    }

    /// Second eccentricity squared `e²/(1−e²)`.
    #[must_use]
    pub fn ep2(&self) -> T {
        self.e2 / (T::one() - self.e2)
    }

    /// `w = √(1 − e² sin²φ)`.
    pub fn w(&self, phi: T) -> T {
        let s = phi.sin();
        (T::one() - self.e2 * s * s).sqrt()
    }

    /// Radius of curvature in the prime vertical.
    pub fn prime_vertical_radius(&self, phi: T) -> T {
        self.a / self.w(phi)
    }

    /// Radius of curvature of the meridian.
    pub fn meridian_radius(&self, phi: T) -> T {
        let w = self.w(phi);
        self.a * (T::one() - self.e2) / (w * w * w)
    }

    /// Radius of the parallel `N cos φ`.
    pub fn parallel_radius(&self, phi: T) -> T {
        self.prime_vertical_radius(phi) * phi.cos()
    }

    pub fn cast<U: Real>(&self) -> Ellipsoid<U> {
        Ellipsoid { a: lit(to_f64(self.a)), e2: lit(to_f64(self.e2)) }
    }
}

#[derive(Deserialize)]
struct EllipsoidEntry {
    name: Option<String>,
    a: f64,
    e2: f64,
}

#[derive(Deserialize)]
struct EllipsoidFile {
    #[serde(default)]
    ellipsoid: Vec<EllipsoidEntry>,
    name: Option<String>,
    a: Option<f64>,
    e2: Option<f64>,
}

/// Reads ellipsoids from TOML: either top-level `a`/`e2` or `[[ellipsoid]]` tables with `name`, `a`, `e2`.
pub fn load_ellipsoids(text: &str) -> Result<Vec<(String, Ellipsoid<f64>)>> {
    let file: EllipsoidFile = toml::from_str(text).map_err(|e| GeoError::Parse(e.to_string()))?;
    let mut out = Vec::new();
    if let (Some(a), Some(e2)) = (file.a, file.e2) {
        out.push((file.name.unwrap_or_else(|| "custom".into()), Ellipsoid::new(a, e2)?));
    }
    for (i, e) in file.ellipsoid.into_iter().enumerate() {
        out.push((e.name.unwrap_or_else(|| format!("ellipsoid{i}")), Ellipsoid::new(e.a, e.e2)?));
    }
    if out.is_empty() {
        return Err(GeoError::Parse("no ellipsoid defined (need a and e2)".into()));
    }
    Ok(out)
}

/// Kind of latitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatitudeKind {
    Geodetic,
    /// Reduced latitude ψ, `tan ψ = (b/a) tan φ`.
    Parametric,
    /// ω, `tan ω = (1−e²) tan φ`.
    Geocentric,
}

/// Converts between geodetic, parametric and geocentric latitude.
pub fn latitude_convert<T: Real>(ell: &Ellipsoid<T>, from: LatitudeKind, to: LatitudeKind, lat: Angle<T>) -> Angle<T> {
    let k = (T::one() - ell.e2).sqrt();
    let x = lat.radians();
    let phi = match from {
        LatitudeKind::Geodetic => x,
        LatitudeKind::Parametric => x.sin().atan2(k * x.cos()),
        LatitudeKind::Geocentric => x.sin().atan2(k * k * x.cos()),
    };
    Angle::from_radians(match to {
        LatitudeKind::Geodetic => phi,
        LatitudeKind::Parametric => (k * phi.sin()).atan2(phi.cos()),
        LatitudeKind::Geocentric => (k * k * phi.sin()).atan2(phi.cos()),
    })
}

fn check_not_pole<T: Real>(phi: T) -> Result<()> {
    if !(phi.abs() < T::FRAC_PI_2() - lit(1e-12)) {
        return Err(GeoError::PoleDomain(to_f64(phi)));
    }
    Ok(())
}

/// Isometric latitude `ln tan(π/4+φ/2) − (e/2) ln((1+e sinφ)/(1−e sinφ))`.
pub fn isometric_latitude<T: Real>(ell: &Ellipsoid<T>, phi: Angle<T>) -> Result<T> {
    let phi = phi.radians();
    check_not_pole(phi)?;
    let e = ell.e();
    Ok(phi.tan().asinh() - e * (e * phi.sin()).atanh())
}

/// Inverse isometric latitude by Newton iteration.
pub fn isometric_latitude_inverse<T: Real>(ell: &Ellipsoid<T>, iso: T) -> Result<Angle<T>> {
    if !iso.is_finite() {
        return Err(GeoError::OutOfRange { what: "isometric latitude", value: to_f64(iso) });
    }
    let mut phi = lit::<T>(2.0) * iso.exp().atan() - T::FRAC_PI_2();
    let tol = T::epsilon() * lit(4.0);
    for _ in 0..60 {
        if phi.abs() >= T::FRAC_PI_2() {
            return Err(GeoError::OutOfRange { what: "isometric latitude", value: to_f64(iso) });
        }
        let f = isometric_latitude(ell, Angle::from_radians(phi)).unwrap_or(T::infinity()) - iso;
        let s = phi.sin();
        let step = f * phi.cos() * (T::one() - ell.e2 * s * s) / (T::one() - ell.e2);
        phi = phi - step;
        if step.abs() <= tol {
            return Ok(Angle::from_radians(phi));
        }
    }
    Err(GeoError::NoConvergence(60))
}

/// Mercator (spherical isometric) latitude `asinh(tan x)`.
pub fn mercator_latitude<T: Real>(x: T) -> T {
    x.tan().asinh()
}

/// Inverse of [`mercator_latitude`], the Gudermannian function.
pub fn gudermannian<T: Real>(y: T) -> T {
    y.sinh().atan()
}

/// `W_p(Ω) = ∫₀^Ω sin^p x dx` for even `p` by the recursion from `W₀ = Ω`.
pub fn wallis<T: Real>(p: u32, omega: T) -> Result<T> {
    if p % 2 == 1 {
        return Err(GeoError::OddWallisOrder(p));
    }
    Ok(*wallis_table(p / 2, omega).last().unwrap())
}

/// `[W₀, W₂, …, W₂ₙ]` at Ω.
fn wallis_table<T: Real>(n: u32, omega: T) -> Vec<T> {
    let (s, c) = omega.sin_cos();
    let mut out = Vec::with_capacity(n as usize + 1);
    out.push(omega);
    let mut spow = s; // sin^{p-1}
    for k in 1..=n {
        let p = T::from_u32(2 * k).unwrap();
        let prev = out[(k - 1) as usize];
        out.push((p - T::one()) / p * prev - spow * c / p);
        spow = spow * s * s;
    }
    out
}

/// Series expansion of the meridian arc length, truncated to a length tolerance.
#[derive(Clone, Debug)]
pub struct MeridianArc<T> {
    ell: Ellipsoid<T>,
    /// `cₖ e^{2k}` for k = 0..=order.
    coeffs: Vec<T>,
}

impl<T: Real> MeridianArc<T> {
    /// Default truncation keeps the neglected tail below 1 mm.
    pub fn new(ell: &Ellipsoid<T>) -> Self {
        Self::with_tolerance(ell, lit(1e-3))
    }

    /// Smallest order whose tail bound `a·cₙ₊₁e^{2n+2}W₂ₙ₊₂(π/2)` stays below `tol` metres.
    pub fn with_tolerance(ell: &Ellipsoid<T>, tol: T) -> Self {
        let half_pi = T::FRAC_PI_2();
        let mut coeffs = vec![T::one()];
        let mut c = T::one(); // (2k+1)!!/(2^k k!)
        let mut w_end = half_pi; // W_{2k}(π/2)
        let mut e2k = T::one();
        for k in 1..64u32 {
            let kf = T::from_u32(k).unwrap();
            c = c * (lit::<T>(2.0) * kf + T::one()) / (lit::<T>(2.0) * kf);
            w_end = w_end * (lit::<T>(2.0) * kf - T::one()) / (lit::<T>(2.0) * kf);
            e2k = e2k * ell.e2;
            let term = c * e2k;
            // Successive terms shrink by at least e², so the whole tail is bounded by term/(1−e²).
            if ell.a * (T::one() - ell.e2) * term * w_end / (T::one() - ell.e2) < tol {
                break;
            }
            coeffs.push(term);
        }
        MeridianArc { ell: *ell, coeffs }
    }

    /// Highest power of e² kept.
    #[must_use]
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Arc length from the equator to latitude φ (signed).
    pub fn arc(&self, phi: Angle<T>) -> T {
        let w = wallis_table(self.order() as u32, phi.radians());
        let sum = self.coeffs.iter().zip(w).fold(T::zero(), |acc, (&c, w)| acc + c * w);
        self.ell.a * (T::one() - self.ell.e2) * sum
    }

    pub fn quarter_meridian(&self) -> T {
        self.arc(Angle::from_radians(T::FRAC_PI_2()))
    }

    /// Latitude whose arc is β, by Newton steps `Δφ = (β − β(φ))/ρ`.
    pub fn inverse(&self, beta: T) -> Result<Angle<T>> {
        let q = self.quarter_meridian();
        if !(beta.abs() <= q * (T::one() + lit(1e-12))) {
            return Err(GeoError::OutOfRange { what: "meridian arc", value: to_f64(beta) });
        }
        let mut phi = beta / (self.ell.a * (T::one() - self.ell.e2 * lit(0.75)));
        phi = phi.max(-T::FRAC_PI_2()).min(T::FRAC_PI_2());
        for _ in 0..50 {
            let step = (beta - self.arc(Angle::from_radians(phi))) / self.ell.meridian_radius(phi);
            phi = (phi + step).max(-T::FRAC_PI_2()).min(T::FRAC_PI_2());
            if step.abs() <= T::epsilon() * lit(4.0) {
                return Ok(Angle::from_radians(phi));
            }
        }
        Ok(Angle::from_radians(phi))
    }
}

/// Meridian arc with the default 1 mm truncation.
pub fn meridian_arc<T: Real>(ell: &Ellipsoid<T>, phi: Angle<T>) -> T {
    MeridianArc::new(ell).arc(phi)
}

/// Inverse meridian arc with the default truncation.
pub fn meridian_arc_inverse<T: Real>(ell: &Ellipsoid<T>, beta: T) -> Result<Angle<T>> {
    MeridianArc::new(ell).inverse(beta)
}

/// Clairaut constant `N cos φ sin Az` of a geodesic.
pub fn clairaut_constant<T: Real>(ell: &Ellipsoid<T>, phi: Angle<T>, az: Angle<T>) -> T {
    ell.parallel_radius(phi.radians()) * az.sin()
}

/// Clairaut constant `(a+R) sin Azₑ` of a torus geodesic leaving the outer equator.
pub fn torus_clairaut_constant<T: Real>(a: T, r: T, az_equator: Angle<T>) -> T {
    (a + r) * az_equator.sin()
}

/// The conserved quantity `(a + R cos φ)² dλ/ds` along a torus geodesic.
pub fn torus_clairaut_invariant<T: Real>(a: T, r: T, phi: T, dlambda_ds: T) -> T {
    let rho = a + r * phi.cos();
    rho * rho * dlambda_ds
}

/// Longitude where a geodesic leaving the equator at `λ_E` with azimuth `Az_E`
/// next crosses it heading the same way, to first order in e².
pub fn jacobi_equator_longitude<T: Real>(ell: &Ellipsoid<T>, lambda_e: Angle<T>, az_e: Angle<T>) -> Angle<T> {
    lambda_e + Angle::from_radians(T::TAU() - ell.e2 * T::PI() * az_e.sin())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate;
    use std::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn derived_constants() {
        let c = Ellipsoid::<f64>::clarke1880();
        assert!((c.b() - 6_378_249.2 * (1.0f64 - 0.006_803_487_7).sqrt()).abs() < 1e-9);
        assert!((c.ep2() - 0.006_803_487_7 / (1.0 - 0.006_803_487_7)).abs() < 1e-18);
        assert!((1.0 / c.f() - 293.466).abs() < 1e-2);
        assert!(Ellipsoid::new(1.0, 1.0).is_err());
        assert!(Ellipsoid::new(-1.0, 0.1).is_err());
        assert!(Ellipsoid::<f64>::by_name("airy").is_err());
    }

    #[test]
    fn radii_at_equator_and_pole() {
        let e = Ellipsoid::<f64>::grs();
        assert!((e.prime_vertical_radius(0.0) - e.a()).abs() < 1e-9);
        assert!((e.meridian_radius(0.0) - e.a() * (1.0 - e.e2())).abs() < 1e-9);
        let np = e.a() / (1.0 - e.e2()).sqrt();
        assert!((e.prime_vertical_radius(FRAC_PI_2) - np).abs() < 1e-6);
        assert!((e.meridian_radius(FRAC_PI_2) - np).abs() < 1e-6);
    }

    #[test]
    fn parallel_radius_derivative_is_minus_rho_sin() {
        let e = Ellipsoid::<f64>::clarke1880();
        for phi in [-1.2, -0.3, 0.1, 0.7, 1.4] {
            let h = 1e-5;
            let d = (e.parallel_radius(phi + h) - e.parallel_radius(phi - h)) / (2.0 * h);
            assert!((d + e.meridian_radius(phi) * phi.sin()).abs() < 1e-3, "{phi}");
        }
    }

    #[test]
    fn latitude_kinds_round_trip_and_order() {
        let e = Ellipsoid::<f64>::clarke1880();
        use LatitudeKind::*;
        for deg in [-89.9, -45.0, -1.0, 0.0, 30.0, 60.0, 89.99] {
            let phi = Angle::from_degrees(deg);
            let psi = latitude_convert(&e, Geodetic, Parametric, phi);
            let om = latitude_convert(&e, Geodetic, Geocentric, phi);
            assert!(om.radians().abs() <= psi.radians().abs() + 1e-16);
            assert!(psi.radians().abs() <= phi.radians().abs() + 1e-16);
            let back = latitude_convert(&e, Geocentric, Geodetic, om);
            assert!((back.radians() - phi.radians()).abs() < 1e-15);
            let via = latitude_convert(&e, Parametric, Geocentric, psi);
            assert!((via.radians() - om.radians()).abs() < 1e-15);
        }
    }

    #[test]
    fn wallis_values() {
        assert!((wallis(0, 0.3f64).unwrap() - 0.3).abs() < 1e-16);
        assert!((wallis(2, FRAC_PI_2).unwrap() - PI / 4.0).abs() < 1e-15);
        assert!((wallis(4, FRAC_PI_2).unwrap() - 3.0 * PI / 16.0).abs() < 1e-15);
        assert_eq!(wallis(3, 0.5f64), Err(GeoError::OddWallisOrder(3)));
        for omega in [0.2, 0.9, 1.5] {
            for p in [2u32, 6, 10] {
                let q = integrate(|x: f64| x.sin().powi(p as i32), 0.0, omega, 1e-15);
                assert!((wallis(p, omega).unwrap() - q).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn meridian_series_order_is_five_terms() {
        assert_eq!(MeridianArc::new(&Ellipsoid::<f64>::clarke1880()).order(), 4);
        assert_eq!(MeridianArc::new(&Ellipsoid::<f64>::grs()).order(), 4);
        // A sphere needs only the leading term.
        let s = MeridianArc::new(&Ellipsoid::<f64>::sphere(6_371_000.0).unwrap());
        assert_eq!(s.order(), 0);
        assert!((s.arc(Angle::from_radians(1.0)) - 6_371_000.0).abs() < 1e-8);
    }

    #[test]
    fn meridian_arc_matches_quadrature() {
        let e = Ellipsoid::<f64>::clarke1880();
        for deg in [-60.0, 0.0, 10.0, 45.0, 90.0] {
            let phi = deg * PI / 180.0;
            let q = integrate(|x: f64| e.meridian_radius(x), 0.0, phi, 1e-7);
            assert!((meridian_arc(&e, Angle::from_radians(phi)) - q).abs() < 1e-3, "{deg}");
        }
    }

    #[test]
    fn meridian_arc_inverse_round_trip() {
        let e = Ellipsoid::<f64>::grs();
        let m = MeridianArc::new(&e);
        for deg in [0.0, 0.001, 12.5, 45.0, 80.0, 89.999, -33.0] {
            let phi = Angle::from_degrees(deg);
            let back = m.inverse(m.arc(phi)).unwrap();
            assert!((back.radians() - phi.radians()).abs() < 1e-11, "{deg}");
        }
        assert!(m.inverse(m.quarter_meridian() * 1.001).is_err());
        assert!(m.inverse(f64::NAN).is_err());
    }

    #[test]
    fn isometric_latitude_round_trip_and_derivative() {
        let e = Ellipsoid::<f64>::clarke1880();
        for deg in [-80.0, -10.0, 0.0, 36.0, 75.0, 89.9] {
            let phi = Angle::from_degrees(deg);
            let l = isometric_latitude(&e, phi).unwrap();
            let back = isometric_latitude_inverse(&e, l).unwrap();
            assert!((back.radians() - phi.radians()).abs() < 1e-13, "{deg}");
            let h = 1e-6;
            let d = (isometric_latitude(&e, Angle::from_radians(phi.radians() + h)).unwrap()
                - isometric_latitude(&e, Angle::from_radians(phi.radians() - h)).unwrap())
                / (2.0 * h);
            let expect = e.meridian_radius(phi.radians()) / e.parallel_radius(phi.radians());
            assert!((d - expect).abs() < 1e-6 * expect, "{deg}");
        }
        assert!(matches!(isometric_latitude(&e, Angle::from_radians(FRAC_PI_2)), Err(GeoError::PoleDomain(_))));
    }

    #[test]
    fn clairaut_and_jacobi() {
        let e = Ellipsoid::<f64>::clarke1880();
        let c = clairaut_constant(&e, Angle::from_degrees(0.0), Angle::from_degrees(90.0));
        assert!((c - e.a()).abs() < 1e-9);
        assert!((torus_clairaut_constant(2.0, 1.0, Angle::from_radians(PI / 4.0)) - 3.0 / 2f64.sqrt()).abs() < 1e-15);
        let s = Ellipsoid::<f64>::sphere(1.0).unwrap();
        let lh = jacobi_equator_longitude(&s, Angle::from_radians(0.3), Angle::from_radians(1.0));
        assert!((lh.radians() - (0.3 + 2.0 * PI)).abs() < 1e-15);
        let lh = jacobi_equator_longitude(&e, Angle::from_radians(0.0), Angle::from_radians(FRAC_PI_2));
        assert!((lh.radians() - (2.0 * PI - e.e2() * PI)).abs() < 1e-15);
    }

    #[test]
    fn ellipsoid_config() {
        let one = load_ellipsoids("a = 6378388.0\ne2 = 0.00672267\nname = \"hayford\"").unwrap();
        assert_eq!(one[0].0, "hayford");
        let many = load_ellipsoids("[[ellipsoid]]\nname='x'\na=1.0\ne2=0.5\n[[ellipsoid]]\nname='y'\na=2.0\ne2=0.0\n").unwrap();
        assert_eq!(many.len(), 2);
        assert!(load_ellipsoids("a = 1.0").is_err());
        assert!(load_ellipsoids("a = 1.0\ne2 = 1.5").is_err());
    }

    #[test]
    fn works_in_single_precision() {
        let e = Ellipsoid::<f32>::clarke1880();
        let arc = meridian_arc(&e, Angle::from_degrees(45.0f32));
        let e64 = Ellipsoid::<f64>::clarke1880();
        let ref64 = meridian_arc(&e64, Angle::from_degrees(45.0));
        assert!(((arc as f64) - ref64).abs() < 2.0);
    }
}
