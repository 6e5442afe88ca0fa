//! Conformal map of the ellipsoid onto a sphere, tangent in scale along one parallel.

use crate::angle::Angle;
use crate::error::Result;
use crate::geocore::{gudermannian, isometric_latitude, mercator_latitude, Ellipsoid};
use crate::scalar::Real;

use super::check_latitude;

/// Constants of `L = c 𝓛 + b`, `Λ = c λ` on a sphere of radius `r_sphere`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GaussSphereParams<T> {
    pub c: T,
    pub b_shift: T,
    pub r_sphere: T,
    pub phi0: Angle<T>,
    pub psi0: Angle<T>,
}

/// Constants making `m(φ₀) = 1`, `m′(φ₀) = 0` and `m″(φ₀) = 0`:
/// `c = √(1 + e′² cos⁴φ₀)`, `tan ψ₀ = tan φ₀ √((1−e²)/(1−e² sin²φ₀))`, `R = a√(1−e²)/(1−e² sin²φ₀)`.
pub fn gauss_sphere_fit<T: Real>(ell: &Ellipsoid<T>, phi0: Angle<T>) -> Result<GaussSphereParams<T>> {
    let p0 = phi0.radians();
    check_latitude(p0)?;
    let e2 = ell.e2();
    let (s, co) = p0.sin_cos();
    let w2 = T::one() - e2 * s * s;
    let c = (T::one() + ell.ep2() * co.powi(4)).sqrt();
    let psi0 = (s * ((T::one() - e2) / w2).sqrt()).atan2(co);
    let r_sphere = ell.a() * (T::one() - e2).sqrt() / w2;
    let b_shift = mercator_latitude(psi0) - c * isometric_latitude(ell, phi0)?;
    Ok(GaussSphereParams { c, b_shift, r_sphere, phi0, psi0: Angle::from_radians(psi0) })
}

/// Image `(ψ, Λ)` of `(φ, λ)` on the sphere.
pub fn gauss_sphere_map<T: Real>(
    params: &GaussSphereParams<T>,
    ell: &Ellipsoid<T>,
    phi: Angle<T>,
    lambda: Angle<T>,
) -> Result<(Angle<T>, Angle<T>)> {
    let l = params.c * isometric_latitude(ell, phi)? + params.b_shift;
    Ok((Angle::from_radians(gudermannian(l)), lambda * params.c))
}

/// Linear modulus `m(φ) = R c cos ψ / (N cos φ)`.
pub fn gauss_sphere_modulus<T: Real>(params: &GaussSphereParams<T>, ell: &Ellipsoid<T>, phi: Angle<T>) -> Result<T> {
    let (psi, _) = gauss_sphere_map(params, ell, phi, Angle::default())?;
    Ok(params.r_sphere * params.c * psi.cos() / ell.parallel_radius(phi.radians()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sphere_gives_identity() {
        let s = Ellipsoid::sphere(6_371_000.0f64).unwrap();
        let p = gauss_sphere_fit(&s, Angle::from_degrees(36.0)).unwrap();
        assert!((p.c - 1.0).abs() < 1e-15);
        assert!((p.r_sphere - 6_371_000.0).abs() < 1e-6);
        assert!(p.b_shift.abs() < 1e-15);
    }

    #[test]
    fn tangent_parallel_is_exact() {
        let e = Ellipsoid::<f64>::clarke1880();
        let phi0 = Angle::from_degrees(36.0);
        let p = gauss_sphere_fit(&e, phi0).unwrap();
        let (psi, lam) = gauss_sphere_map(&p, &e, phi0, Angle::from_degrees(3.0)).unwrap();
        assert!((psi.radians() - p.psi0.radians()).abs() < 1e-14);
        assert!((lam.radians() / 3f64.to_radians() - p.c).abs() < 1e-15);
        assert!((gauss_sphere_modulus(&p, &e, phi0).unwrap() - 1.0).abs() < 1e-12);
        // ψ₀ also satisfies sin φ₀ = c sin ψ₀.
        assert!((phi0.sin() - p.c * p.psi0.sin()).abs() < 1e-15);
    }
}
