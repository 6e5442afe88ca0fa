//! Curves and surfaces with closed-form derivatives.

use super::{Curve, Surface, SurfacePartials};
use crate::geocore::Ellipsoid;
use crate::scalar::{lit, Real};
use crate::vec3::Vec3;

/// Circular helix `(a cos t, a sin t, b t)`.
#[derive(Clone, Copy, Debug)]
pub struct Helix<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> Curve<T> for Helix<T> {
    fn position(&self, t: T) -> Vec3<T> {
        Vec3::new(self.a * t.cos(), self.a * t.sin(), self.b * t)
    }

    fn derivatives(&self, t: T) -> [Vec3<T>; 3] {
        let (s, c) = t.sin_cos();
        let a = self.a;
        [
            Vec3::new(-a * s, a * c, self.b),
            Vec3::new(-a * c, -a * s, T::zero()),
            Vec3::new(a * s, -a * c, T::zero()),
        ]
    }
}

/// `(a t², a t³, (9/16) a t⁴)`, whose arc length from 0 is `a(t² + 9t⁴/16)`.
#[derive(Clone, Copy, Debug)]
pub struct CubicQuartic<T> {
    pub a: T,
}

impl<T: Real> Curve<T> for CubicQuartic<T> {
    fn position(&self, t: T) -> Vec3<T> {
        let a = self.a;
        let t2 = t * t;
        Vec3::new(a * t2, a * t2 * t, lit::<T>(9.0 / 16.0) * a * t2 * t2)
    }

    fn derivatives(&self, t: T) -> [Vec3<T>; 3] {
        let a = self.a;
        let t2 = t * t;
        [
            Vec3::new(lit::<T>(2.0) * a * t, lit::<T>(3.0) * a * t2, lit::<T>(2.25) * a * t2 * t),
            Vec3::new(lit::<T>(2.0) * a, lit::<T>(6.0) * a * t, lit::<T>(6.75) * a * t2),
            Vec3::new(T::zero(), lit::<T>(6.0) * a, lit::<T>(13.5) * a * t),
        ]
    }
}

/// Plane ellipse `(a cos u, b sin u, 0)`.
#[derive(Clone, Copy, Debug)]
pub struct Ellipse<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> Curve<T> for Ellipse<T> {
    fn position(&self, u: T) -> Vec3<T> {
        Vec3::new(self.a * u.cos(), self.b * u.sin(), T::zero())
    }

    fn derivatives(&self, u: T) -> [Vec3<T>; 3] {
        let (s, c) = u.sin_cos();
        let z = T::zero();
        [
            Vec3::new(-self.a * s, self.b * c, z),
            Vec3::new(-self.a * c, -self.b * s, z),
            Vec3::new(self.a * s, -self.b * c, z),
        ]
    }
}

/// Enneper's minimal surface `(u − u³/3 + uv², v − v³/3 + vu², u² − v²)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct Enneper;

impl<T: Real> Surface<T> for Enneper {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        let third = lit::<T>(1.0 / 3.0);
        Vec3::new(u - third * u * u * u + u * v * v, v - third * v * v * v + v * u * u, u * u - v * v)
    }

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        let one = T::one();
        let two = lit::<T>(2.0);
        SurfacePartials {
            ru: Vec3::new(one - u * u + v * v, two * u * v, two * u),
            rv: Vec3::new(two * u * v, one - v * v + u * u, -two * v),
            ruu: Vec3::new(-two * u, two * v, two),
            ruv: Vec3::new(two * v, two * u, T::zero()),
            rvv: Vec3::new(two * u, -two * v, -two),
        }
    }
}

/// `(u² + v, u + v², uv)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct QuadraticPatch;

impl<T: Real> Surface<T> for QuadraticPatch {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        Vec3::new(u * u + v, u + v * v, u * v)
    }

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        let z = T::zero();
        let one = T::one();
        let two = lit::<T>(2.0);
        SurfacePartials {
            ru: Vec3::new(two * u, one, v),
            rv: Vec3::new(one, two * v, u),
            ruu: Vec3::new(two, z, z),
            ruv: Vec3::new(z, z, one),
            rvv: Vec3::new(z, two, z),
        }
    }
}

/// Spheroid `(a cos u cos v, a cos u sin v, b sin u)`; a sphere when `a = b`.
#[derive(Clone, Copy, Debug)]
pub struct Spheroid<T> {
    pub a: T,
    pub b: T,
}

impl<T: Real> Surface<T> for Spheroid<T> {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        Vec3::new(self.a * cu * cv, self.a * cu * sv, self.b * su)
    }

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let (a, b, z) = (self.a, self.b, T::zero());
        SurfacePartials {
            ru: Vec3::new(-a * su * cv, -a * su * sv, b * cu),
            rv: Vec3::new(-a * cu * sv, a * cu * cv, z),
            ruu: Vec3::new(-a * cu * cv, -a * cu * sv, -b * su),
            ruv: Vec3::new(a * su * sv, -a * su * cv, z),
            rvv: Vec3::new(-a * cu * cv, -a * cu * sv, z),
        }
    }
}

/// Tractroid `(sin u cos v, sin u sin v, cos u + ln tan(u/2))`, `0 < u < π`, `u ≠ π/2`; K = −1.
#[derive(Clone, Copy, Debug, Default)]
pub struct Tractroid;

impl<T: Real> Surface<T> for Tractroid {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        Vec3::new(su * cv, su * sv, cu + (u / lit(2.0)).tan().ln())
    }

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let z = T::zero();
        SurfacePartials {
            ru: Vec3::new(cu * cv, cu * sv, cu * cu / su),
            rv: Vec3::new(-su * sv, su * cv, z),
            ruu: Vec3::new(-su * cv, -su * sv, -cu - cu / (su * su)),
            ruv: Vec3::new(-cu * sv, cu * cv, z),
            rvv: Vec3::new(-su * cv, -su * sv, z),
        }
    }
}

/// Hyperbolic form of the tractroid, `(tanh u cos v, tanh u sin v, 1/cosh u + ln tanh(u/2))`, `u > 0`.
#[derive(Clone, Copy, Debug, Default)]
pub struct HyperbolicTractroid;

impl<T: Real> Surface<T> for HyperbolicTractroid {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        let th = u.tanh();
        let (sv, cv) = v.sin_cos();
        Vec3::new(th * cv, th * sv, T::one() / u.cosh() + (u / lit(2.0)).tanh().ln())
    }

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        let th = u.tanh();
        let sech = T::one() / u.cosh();
        let sech2 = sech * sech;
        let csch = T::one() / u.sinh();
        let coth = T::one() / th;
        let (sv, cv) = v.sin_cos();
        let two = lit::<T>(2.0);
        let z = T::zero();
        let zpp = -sech2 * csch * (two * th + coth);
        SurfacePartials {
            ru: Vec3::new(sech2 * cv, sech2 * sv, sech2 * csch),
            rv: Vec3::new(-th * sv, th * cv, z),
            ruu: Vec3::new(-two * sech2 * th * cv, -two * sech2 * th * sv, zpp),
            ruv: Vec3::new(-sech2 * sv, sech2 * cv, z),
            rvv: Vec3::new(-th * cv, -th * sv, z),
        }
    }
}

/// Torus `((a + R cos φ) cos λ, (a + R cos φ) sin λ, R sin φ)` with parameters `(φ, λ)`.
#[derive(Clone, Copy, Debug)]
pub struct Torus<T> {
    pub a: T,
    pub r: T,
}

impl<T: Real> Surface<T> for Torus<T> {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let rho = self.a + self.r * cu;
        Vec3::new(rho * cv, rho * sv, self.r * su)
    }

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        let (su, cu) = u.sin_cos();
        let (sv, cv) = v.sin_cos();
        let (r, z) = (self.r, T::zero());
        let rho = self.a + r * cu;
        SurfacePartials {
            ru: Vec3::new(-r * su * cv, -r * su * sv, r * cu),
            rv: Vec3::new(-rho * sv, rho * cv, z),
            ruu: Vec3::new(-r * cu * cv, -r * cu * sv, -r * su),
            ruv: Vec3::new(r * su * sv, -r * su * cv, z),
            rvv: Vec3::new(-rho * cv, -rho * sv, z),
        }
    }
}

/// Ellipsoid of revolution in geodetic coordinates `(φ, λ)`; derivatives by differences.
#[derive(Clone, Copy, Debug)]
pub struct EllipsoidSurface<T> {
    pub ellipsoid: Ellipsoid<T>,
}

impl<T: Real> Surface<T> for EllipsoidSurface<T> {
    fn position(&self, phi: T, lambda: T) -> Vec3<T> {
        let n = self.ellipsoid.prime_vertical_radius(phi);
        let (sp, cp) = phi.sin_cos();
        let (sl, cl) = lambda.sin_cos();
        Vec3::new(n * cp * cl, n * cp * sl, n * (T::one() - self.ellipsoid.e2()) * sp)
    }

    fn partials(&self, phi: T, lambda: T) -> SurfacePartials<T> {
        let ell = &self.ellipsoid;
        let n = ell.prime_vertical_radius(phi);
        let rho = ell.meridian_radius(phi);
        let (sp, cp) = phi.sin_cos();
        let (sl, cl) = lambda.sin_cos();
        let w2 = T::one() - ell.e2() * sp * sp;
        // dρ/dφ = 3 e² sinφ cosφ ρ / W²
        let drho = lit::<T>(3.0) * ell.e2() * sp * cp * rho / w2;
        let up = Vec3::new(-sp * cl, -sp * sl, cp);
        SurfacePartials {
            ru: up * rho,
            rv: Vec3::new(-n * cp * sl, n * cp * cl, T::zero()),
            ruu: up * drho + Vec3::new(-cp * cl, -cp * sl, -sp) * rho,
            ruv: Vec3::new(sp * sl, -sp * cl, T::zero()) * rho,
            rvv: Vec3::new(-n * cp * cl, -n * cp * sl, T::zero()),
        }
    }
}

/// Surface of revolution `(u(1−u²) cos v, u(1−u²) sin v, 1 − u²)`, i.e. `x² + y² = (1−z) z²`.
#[derive(Clone, Copy, Debug, Default)]
pub struct CubicRevolution;

impl<T: Real> Surface<T> for CubicRevolution {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        let w = T::one() - u * u;
        let (sv, cv) = v.sin_cos();
        Vec3::new(u * w * cv, u * w * sv, w)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{curvatures, fd_curve_derivatives, fd_surface_partials, fundamental_forms};
    use super::*;

    fn close(a: Vec3<f64>, b: Vec3<f64>, tol: f64) -> bool {
        (a - b).norm() <= tol * (1.0 + b.norm())
    }

    fn check_surface<S: Surface<f64>>(s: &S, u: f64, v: f64) {
        let an = s.partials(u, v);
        let fd = fd_surface_partials(&|a, b| s.position(a, b), u, v);
        assert!(close(fd.ru, an.ru, 1e-8));
        assert!(close(fd.rv, an.rv, 1e-8));
        assert!(close(fd.ruu, an.ruu, 1e-6));
        assert!(close(fd.ruv, an.ruv, 1e-6));
        assert!(close(fd.rvv, an.rvv, 1e-6));
    }

    #[test]
    fn analytic_partials_match_differences() {
        check_surface(&Enneper, 0.3, -0.7);
        check_surface(&QuadraticPatch, 1.0, 1.0);
        check_surface(&Spheroid { a: 3.0f64, b: 2.0 }, 0.4, 2.0);
        check_surface(&Tractroid, 0.9, 0.2);
        check_surface(&HyperbolicTractroid, 0.8, -1.0);
        check_surface(&Torus { a: 2.0f64, r: 0.5 }, 1.3, 0.4);
    }

    #[test]
    fn analytic_curve_derivatives_match_differences() {
        for (an, fd) in [
            (Helix { a: 1.0f64, b: 0.2 }.derivatives(0.5), fd_curve_derivatives(&|t| Helix { a: 1.0f64, b: 0.2 }.position(t), 0.5)),
            (CubicQuartic { a: 1.0 }.derivatives(1.0), fd_curve_derivatives(&|t| CubicQuartic { a: 1.0 }.position(t), 1.0)),
        ] {
            assert!(close(fd[0], an[0], 1e-8));
            assert!(close(fd[1], an[1], 1e-6));
            assert!(close(fd[2], an[2], 1e-3));
        }
    }

    #[test]
    fn quadratic_patch_first_form_at_one_one() {
        let ff = fundamental_forms(&QuadraticPatch, 1.0, 1.0).unwrap();
        assert_eq!((ff.e, ff.f, ff.g), (6.0, 5.0, 6.0));
    }

    #[test]
    fn tractroids_have_constant_negative_curvature() {
        for u in [0.3f64, 0.9, 2.0] {
            assert!((curvatures(&Tractroid, u, 0.5).unwrap().gaussian + 1.0).abs() < 1e-10, "{u}");
        }
        for u in [0.2f64, 0.8, 1.7] {
            assert!((curvatures(&HyperbolicTractroid, u, 0.5).unwrap().gaussian + 1.0).abs() < 1e-10, "{u}");
        }
    }

    #[test]
    fn enneper_is_minimal() {
        let ff = fundamental_forms(&Enneper, 0.4, 0.9).unwrap();
        let w: f64 = (1.0 + 0.16 + 0.81f64).powi(2);
        assert!((ff.e - w).abs() < 1e-13 && (ff.g - w).abs() < 1e-13 && ff.f.abs() < 1e-13);
        assert!(ff.mean().abs() < 1e-13);
    }

    #[test]
    fn cubic_revolution_cartesian_equation() {
        for (u, v) in [(0.2f64, 0.1f64), (0.7, 2.0), (-0.5, 4.0)] {
            let p = CubicRevolution.position(u, v);
            assert!((p.x * p.x + p.y * p.y - (1.0 - p.z) * p.z * p.z).abs() < 1e-15);
        }
    }

    #[test]
    fn ellipsoid_surface_gaussian_curvature() {
        let e = Ellipsoid::<f64>::clarke1880();
        let s = EllipsoidSurface { ellipsoid: e };
        let phi = 0.6;
        let k = curvatures(&s, phi, 0.2).unwrap().gaussian;
        let expect = 1.0 / (e.meridian_radius(phi) * e.prime_vertical_radius(phi));
        assert!((k - expect).abs() < 1e-5 * expect, "{k} {expect}");
    }
}
