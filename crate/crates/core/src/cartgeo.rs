//! Geodetic ↔ Cartesian conversion: iterative, closed-form (quartic) and series solutions.

use std::fmt;
use std::str::FromStr;

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::geocore::Ellipsoid;
use crate::polyroots::{real_roots, solve_quartic};
use crate::scalar::{lit, to_f64, Real};
use crate::vec3::Vec3;

/// Geodetic latitude, longitude and ellipsoidal height.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GeodeticCoord<T> {
    pub phi: Angle<T>,
    pub lambda: Angle<T>,
    pub h: T,
}

impl<T: Real> GeodeticCoord<T> {
    pub fn new(phi: Angle<T>, lambda: Angle<T>, h: T) -> Self {
        GeodeticCoord { phi, lambda, h }
    }

    /// Checks `|φ| ≤ π/2` and `h ≥ −N(1−e²)`.
    pub fn validate(&self, ell: &Ellipsoid<T>) -> Result<()> {
        let phi = self.phi.radians();
        if !(phi.abs() <= T::FRAC_PI_2()) {
            return Err(GeoError::OutOfRange { what: "latitude", value: to_f64(phi) });
        }
        let floor = -ell.prime_vertical_radius(phi) * (T::one() - ell.e2());
        if !(self.h >= floor) || !self.lambda.radians().is_finite() {
            return Err(GeoError::OutOfRange { what: "ellipsoidal height", value: to_f64(self.h) });
        }
        Ok(())
    }
}

/// Fixed-point schemes for the latitude.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum IterMethod {
    /// `φ = atan(Z/p + N e² sin φ / p)`.
    Iter1,
    /// `φ = atan[(Z/p)(1 − N e² cos φ / p)⁻¹]`.
    Iter2,
    /// `φ = ψ + asin(N e² sin 2φ / 2r)` with ψ the geocentric direction of the point.
    Iter3,
}

impl IterMethod {
    pub const ALL: [IterMethod; 3] = [IterMethod::Iter1, IterMethod::Iter2, IterMethod::Iter3];
}

impl fmt::Display for IterMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IterMethod::Iter1 => "iter1",
            IterMethod::Iter2 => "iter2",
            IterMethod::Iter3 => "iter3",
        })
    }
}

impl FromStr for IterMethod {
    type Err = GeoError;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "iter1" | "1" => Ok(IterMethod::Iter1),
            "iter2" | "2" => Ok(IterMethod::Iter2),
            "iter3" | "3" => Ok(IterMethod::Iter3),
            other => Err(GeoError::Parse(format!("unknown iteration method `{other}`"))),
        }
    }
}

/// Convergence record of a fixed-point solve.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IterationReport<T> {
    pub method: IterMethod,
    pub iterations: u32,
    /// A-priori iteration count from the contraction estimate, when the map contracts.
    pub bound_used: Option<u32>,
    /// Estimated contraction factor `max |f′|` near the seed.
    pub contraction: T,
    pub final_delta: T,
}

/// `X = (N+h) cos φ cos λ`, `Y = (N+h) cos φ sin λ`, `Z = (N(1−e²)+h) sin φ`.
pub fn geodetic_to_cart<T: Real>(ell: &Ellipsoid<T>, g: &GeodeticCoord<T>) -> Result<Vec3<T>> {
    g.validate(ell)?;
    let (sp, cp) = g.phi.radians().sin_cos();
    let (sl, cl) = g.lambda.radians().sin_cos();
    let n = ell.prime_vertical_radius(g.phi.radians());
    Ok(Vec3::new(
        (n + g.h) * cp * cl,
        (n + g.h) * cp * sl,
        (n * (T::one() - ell.e2()) + g.h) * sp,
    ))
}

/// `λ = atan2(Y, X)`; undefined on the polar axis.
pub fn longitude_of<T: Real>(p: Vec3<T>) -> Result<Angle<T>> {
    if p.x == T::zero() && p.y == T::zero() {
        return Err(GeoError::UndefinedLongitude);
    }
    Ok(Angle::from_radians(p.y.atan2(p.x)))
}

/// Smallest `i` with `k^i · spread ≤ eps` for a contraction of factor `k`.
pub fn iteration_bound<T: Real>(k: T, spread: T, eps: T) -> Result<u32> {
    if !(k >= T::zero() && k < T::one()) {
        return Err(GeoError::NotContracting(to_f64(k)));
    }
    if !(eps > T::zero()) || !spread.is_finite() {
        return Err(GeoError::OutOfRange { what: "tolerance", value: to_f64(eps) });
    }
    // A relative slack of 1e-12 keeps exact powers (0.1⁶ = 1e-6) on the intended side.
    let target = eps * (T::one() + lit(1e-12));
    let mut i = 0u32;
    let mut err = spread.abs();
    while err > target {
        if k == T::zero() {
            return Ok(i + 1);
        }
        err = err * k;
        i += 1;
    }
    Ok(i)
}

fn height_from_latitude<T: Real>(ell: &Ellipsoid<T>, p: T, z: T, phi: T) -> T {
    let n = ell.prime_vertical_radius(phi);
    if phi.abs() < T::FRAC_PI_4() {
        p / phi.cos() - n
    } else {
        z / phi.sin() - n * (T::one() - ell.e2())
    }
}

fn polar_solution<T: Real>(ell: &Ellipsoid<T>, z: T) -> GeodeticCoord<T> {
    let phi = if z < T::zero() { -T::FRAC_PI_2() } else { T::FRAC_PI_2() };
    GeodeticCoord::new(Angle::from_radians(phi), Angle::from_radians(T::zero()), z.abs() - ell.b())
}

fn fixed_point_map<T: Real>(ell: &Ellipsoid<T>, method: IterMethod, p: T, z: T, phi: T) -> T {
    let e2 = ell.e2();
    let n = ell.prime_vertical_radius(phi);
    match method {
        IterMethod::Iter1 => (z + n * e2 * phi.sin()).atan2(p),
        IterMethod::Iter2 => z.atan2(p - n * e2 * phi.cos()),
        IterMethod::Iter3 => {
            let r = (p * p + z * z).sqrt();
            z.atan2(p) + (n * e2 * (lit::<T>(2.0) * phi).sin() / (lit::<T>(2.0) * r)).asin()
        }
    }
}

/// Latitude by fixed-point iteration from the seed `atan(Z / (p(1−e²)))`.
pub fn cart_to_geodetic_iter<T: Real>(
    ell: &Ellipsoid<T>,
    pt: Vec3<T>,
    method: IterMethod,
    eps: T,
) -> Result<(GeodeticCoord<T>, IterationReport<T>)> {
    let p = pt.x.hypot(pt.y);
    if p == T::zero() {
        let report = IterationReport {
            method,
            iterations: 0,
            bound_used: Some(0),
            contraction: T::zero(),
            final_delta: T::zero(),
        };
        return Ok((polar_solution(ell, pt.z), report));
    }
    let lambda = longitude_of(pt)?;
    let f = |phi: T| fixed_point_map(ell, method, p, pt.z, phi);
    let x0 = pt.z.atan2(p * (T::one() - ell.e2()));
    let x1 = f(x0);
    let d1 = (x1 - x0).abs();

    // Contraction estimate over the region the iterates can reach.
    let mut k = T::zero();
    let reach = (d1 * lit(4.0)).max(lit(1e-9));
    let h = lit::<T>(1e-7);
    for j in -4i32..=4 {
        let x = x0 + reach * T::from_i32(j).unwrap() / lit(4.0);
        k = k.max(((f(x + h) - f(x - h)) / (h + h)).abs());
    }
    let bound_used = if k < T::one() { Some(1 + iteration_bound(k, d1, eps)?) } else { None };

    let floor = T::epsilon() * lit(4.0);
    let mut phi = x0;
    let mut prev_delta = T::infinity();
    let mut growing = 0u32;
    let mut iterations = 0u32;
    loop {
        let next = f(phi);
        iterations += 1;
        let delta = (next - phi).abs();
        if !next.is_finite() {
            return Err(GeoError::NonContracting { iterations, last_delta: f64::NAN });
        }
        phi = next;
        if delta < eps || delta <= floor {
            let report = IterationReport { method, iterations, bound_used, contraction: k, final_delta: delta };
            let h = height_from_latitude(ell, p, pt.z, phi);
            return Ok((GeodeticCoord::new(Angle::from_radians(phi), lambda, h), report));
        }
        if delta >= prev_delta {
            growing += 1;
            if growing >= 5 {
                return Err(GeoError::NonContracting { iterations, last_delta: to_f64(delta) });
            }
        } else {
            growing = 0;
        }
        if iterations >= 500 {
            return Err(GeoError::NoConvergence(iterations));
        }
        prev_delta = delta;
    }
}

/// Closed-form solution through the foot point on the meridian ellipse.
///
/// With `s = R₀/a`, `ρ = p/a`, `ζ = Z/a` the normal condition gives the quartic
/// `e⁴s⁴ − 2ρe²s³ + (ρ² − e⁴ + (1−e²)ζ²)s² + 2ρe²s − ρ² = 0`.
pub fn cart_to_geodetic_finite<T: Real>(ell: &Ellipsoid<T>, pt: Vec3<T>) -> Result<GeodeticCoord<T>> {
    let p = pt.x.hypot(pt.y);
    if p == T::zero() {
        return Ok(polar_solution(ell, pt.z));
    }
    let lambda = longitude_of(pt)?;
    let a = ell.a();
    let e2 = ell.e2();
    if e2 == T::zero() {
        let r = p.hypot(pt.z);
        return Ok(GeodeticCoord::new(Angle::from_radians(pt.z.atan2(p)), lambda, r - a));
    }
    let rho = p / a;
    let zeta = pt.z.abs() / a;
    let e4 = e2 * e2;
    let c2 = (rho * rho - e4 + (T::one() - e2) * zeta * zeta) / e4;
    let roots = solve_quartic(-lit::<T>(2.0) * rho / e2, c2, lit::<T>(2.0) * rho / e2, -rho * rho / e4);
    let g = |s: T| {
        let m = rho - e2 * s;
        (s * s - T::one()) * m * m + (T::one() - e2) * zeta * zeta * s * s
    };
    let dg = |s: T| {
        let m = rho - e2 * s;
        lit::<T>(2.0) * s * m * m - lit::<T>(2.0) * e2 * (s * s - T::one()) * m
            + lit::<T>(2.0) * (T::one() - e2) * zeta * zeta * s
    };
    let mut best: Option<T> = None;
    for mut s in real_roots(&roots, lit(1e-6)) {
        for _ in 0..3 {
            let d = dg(s);
            if d == T::zero() {
                break;
            }
            let step = g(s) / d;
            s = s - step;
            if step.abs() <= T::epsilon() {
                break;
            }
        }
        let admissible = s > T::zero() && s <= T::one() + lit(1e-12) && rho - e2 * s > T::zero();
        if admissible && best.is_none_or(|b| (s - rho).abs() < (b - rho).abs()) {
            best = Some(s);
        }
    }
    let s = best.ok_or(GeoError::NoAdmissibleRoot)?.min(T::one());
    let m = rho - e2 * s;
    let phi_abs = zeta.atan2(m);
    let r0 = a * s;
    let z0 = pt.z.abs() * (T::one() - e2) * s / m;
    let (sp, cp) = phi_abs.sin_cos();
    let h = (p - r0) * cp + (pt.z.abs() - z0) * sp;
    let phi = if pt.z < T::zero() { -phi_abs } else { phi_abs };
    Ok(GeodeticCoord::new(Angle::from_radians(phi), lambda, h))
}

/// Series solution `φ = atan(x Z / R)` with `x = 1 + t + c t² + ((5c²−3c)/2) t³ + (2c − 9c² + 8c³) t⁴`,
/// truncated after `t^order` (`order ≤ 4`).
pub fn cart_to_geodetic_series<T: Real>(ell: &Ellipsoid<T>, pt: Vec3<T>, order: u32) -> Result<GeodeticCoord<T>> {
    if order > 4 {
        return Err(GeoError::OutOfRange { what: "series order", value: f64::from(order) });
    }
    let p = pt.x.hypot(pt.y);
    if p == T::zero() {
        return Ok(polar_solution(ell, pt.z));
    }
    let lambda = longitude_of(pt)?;
    if pt.z == T::zero() {
        return Ok(GeodeticCoord::new(Angle::from_radians(T::zero()), lambda, p - ell.a()));
    }
    let e2 = ell.e2();
    let nu2 = (T::one() - e2) * pt.z * pt.z;
    let d2 = p * p + nu2;
    let c = p * p / d2;
    let t = e2 * ell.a() / d2.sqrt();
    let coeffs = [
        T::one(),
        T::one(),
        c,
        (lit::<T>(5.0) * c * c - lit::<T>(3.0) * c) / lit(2.0),
        lit::<T>(2.0) * c - lit::<T>(9.0) * c * c + lit::<T>(8.0) * c * c * c,
    ];
    let x = coeffs[..=order as usize].iter().rev().fold(T::zero(), |acc, &k| acc * t + k);
    let phi = (x * pt.z).atan2(p);
    let h = height_from_latitude(ell, p, pt.z, phi);
    Ok(GeodeticCoord::new(Angle::from_radians(phi), lambda, h))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn clarke() -> Ellipsoid<f64> {
        Ellipsoid::clarke1880()
    }

    fn geo(phi_deg: f64, lam_deg: f64, h: f64) -> GeodeticCoord<f64> {
        GeodeticCoord::new(Angle::from_degrees(phi_deg), Angle::from_degrees(lam_deg), h)
    }

    #[test]
    fn forward_simple_points() {
        let e = clarke();
        let p = geodetic_to_cart(&e, &geo(0.0, 0.0, 0.0)).unwrap();
        assert!((p.x - e.a()).abs() < 1e-9 && p.y.abs() < 1e-9 && p.z.abs() < 1e-9);
        let p = geodetic_to_cart(&e, &geo(90.0, 0.0, 0.0)).unwrap();
        assert!((p.z - e.b()).abs() < 1e-6 && p.x.abs() < 1e-6);
        assert!(geodetic_to_cart(&e, &geo(10.0, 0.0, -7e6)).is_err());
    }

    #[test]
    fn longitude_branch_and_polar_axis() {
        let l = longitude_of(Vec3::new(-1.0, 1e-300, 0.0)).unwrap();
        assert!((l.radians() - std::f64::consts::PI).abs() < 1e-15);
        assert_eq!(longitude_of(Vec3::new(0.0, 0.0, 5.0)), Err(GeoError::UndefinedLongitude));
    }

    #[test]
    fn iteration_bound_examples() {
        assert_eq!(iteration_bound(0.5, 1.0, 1e-6).unwrap(), 20);
        assert_eq!(iteration_bound(0.1, 1.0, 1e-6).unwrap(), 6);
        assert_eq!(iteration_bound(0.5, 1e-6, 1e-3).unwrap(), 0);
        assert!(iteration_bound(1.0, 1.0, 1e-6).is_err());
        assert!(iteration_bound(1.5, 1.0, 1e-6).is_err());
    }

    #[test]
    fn iterative_methods_round_trip() {
        let e = clarke();
        for m in IterMethod::ALL {
            for &(phi, lam, h) in &[(36.0, 10.0, 120.0), (-45.0, -120.0, 3000.0), (89.5, 5.0, 0.0), (0.0, 179.0, -100.0)] {
                let g = geo(phi, lam, h);
                let (back, rep) = cart_to_geodetic_iter(&e, geodetic_to_cart(&e, &g).unwrap(), m, 1e-13).unwrap();
                assert!((back.phi.radians() - g.phi.radians()).abs() < 1e-12, "{m} {phi}");
                assert!((back.lambda.radians() - g.lambda.radians()).abs() < 1e-14);
                assert!((back.h - h).abs() < 1e-5, "{m} {phi} {}", back.h - h);
                assert!(rep.iterations <= rep.bound_used.unwrap(), "{rep:?}");
            }
        }
    }

    #[test]
    fn polar_point_is_special_cased() {
        let e = clarke();
        let (g, rep) = cart_to_geodetic_iter(&e, Vec3::new(0.0, 0.0, -e.b() - 10.0), IterMethod::Iter1, 1e-12).unwrap();
        assert_eq!(g.phi.radians(), -std::f64::consts::FRAC_PI_2);
        assert!((g.h - 10.0).abs() < 1e-8);
        assert_eq!(rep.iterations, 0);
    }

    #[test]
    fn sphere_converges_in_one_step() {
        let s = Ellipsoid::sphere(6_371_000.0).unwrap();
        let (g, rep) = cart_to_geodetic_iter(&s, Vec3::new(4e6, 1e6, 3e6), IterMethod::Iter2, 1e-12).unwrap();
        assert_eq!(rep.iterations, 1);
        assert!((g.phi.radians() - 3e6f64.atan2(17e12f64.sqrt())).abs() < 1e-15);
    }

    #[test]
    fn finite_method_matches_iteration() {
        let e = clarke();
        for &(phi, lam, h) in &[(36.0, 10.0, 120.0), (-72.0, 33.0, 8000.0), (0.0, 5.0, 0.0), (89.99, 1.0, 10.0), (1e-3, 0.0, -500.0)] {
            let g = geo(phi, lam, h);
            let p = geodetic_to_cart(&e, &g).unwrap();
            let f = cart_to_geodetic_finite(&e, p).unwrap();
            assert!((f.phi.radians() - g.phi.radians()).abs() < 1e-12, "{phi}");
            assert!((f.h - h).abs() < 1e-6, "{phi} {}", f.h - h);
        }
        // Equatorial points give φ = 0 exactly.
        let f = cart_to_geodetic_finite(&e, Vec3::new(e.a() + 50.0, 0.0, 0.0)).unwrap();
        assert_eq!(f.phi.radians(), 0.0);
        assert!((f.h - 50.0).abs() < 1e-8);
    }

    #[test]
    fn series_improves_with_order() {
        let e = clarke();
        let g = geo(40.0, 10.0, 0.0);
        let p = geodetic_to_cart(&e, &g).unwrap();
        let errs: Vec<f64> = (0..=4)
            .map(|n| (cart_to_geodetic_series(&e, p, n).unwrap().phi.radians() - g.phi.radians()).abs())
            .collect();
        for w in errs.windows(2) {
            assert!(w[1] < w[0], "{errs:?}");
        }
        assert!(errs[4] < 5e-9);
        assert!(cart_to_geodetic_series(&e, p, 5).is_err());
        let eq = cart_to_geodetic_series(&e, Vec3::new(7e6, 0.0, 0.0), 4).unwrap();
        assert_eq!(eq.phi.radians(), 0.0);
    }
}
