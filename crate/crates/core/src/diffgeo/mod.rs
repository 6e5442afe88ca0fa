//! Curves and surfaces: Frenet frame, fundamental forms, curvatures.

pub mod catalog;

use crate::error::{GeoError, Result};
use crate::quad::integrate;
use crate::scalar::{fd_step, lit, to_f64, Real};
use crate::vec3::Vec3;

/// Parametric space curve `t ↦ r(t)`.
pub trait Curve<T: Real> {
    fn position(&self, t: T) -> Vec3<T>;

    /// `[r′, r″, r‴]`; central differences unless overridden.
    fn derivatives(&self, t: T) -> [Vec3<T>; 3] {
        fd_curve_derivatives(&|x| self.position(x), t)
    }
}

/// Curve given by a closure.
pub struct FnCurve<F>(pub F);

impl<T: Real, F: Fn(T) -> Vec3<T>> Curve<T> for FnCurve<F> {
    fn position(&self, t: T) -> Vec3<T> {
        (self.0)(t)
    }
}

/// Central-difference `[r′, r″, r‴]` from positions only.
pub fn fd_curve_derivatives<T: Real>(r: &dyn Fn(T) -> Vec3<T>, t: T) -> [Vec3<T>; 3] {
    let two = lit::<T>(2.0);
    let h1 = fd_step(1, t);
    let d1 = (r(t + h1) - r(t - h1)) * (T::one() / (two * h1));
    let h2 = fd_step(2, t);
    let d2 = (r(t + h2) - r(t) * two + r(t - h2)) * (T::one() / (h2 * h2));
    let h3 = fd_step(3, t);
    let d3 = (r(t + h3 * two) - r(t + h3) * two + r(t - h3) * two - r(t - h3 * two)) * (T::one() / (two * h3 * h3 * h3));
    [d1, d2, d3]
}

/// First and second partial derivatives of a surface patch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SurfacePartials<T> {
    pub ru: Vec3<T>,
    pub rv: Vec3<T>,
    pub ruu: Vec3<T>,
    pub ruv: Vec3<T>,
    pub rvv: Vec3<T>,
}

/// Parametric surface `(u, v) ↦ r(u, v)`.
pub trait Surface<T: Real> {
    fn position(&self, u: T, v: T) -> Vec3<T>;

    fn partials(&self, u: T, v: T) -> SurfacePartials<T> {
        fd_surface_partials(&|a, b| self.position(a, b), u, v)
    }
}

/// Surface given by a closure.
pub struct FnSurface<F>(pub F);

impl<T: Real, F: Fn(T, T) -> Vec3<T>> Surface<T> for FnSurface<F> {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        (self.0)(u, v)
    }
}

/// Central-difference partials from positions only.
pub fn fd_surface_partials<T: Real>(r: &dyn Fn(T, T) -> Vec3<T>, u: T, v: T) -> SurfacePartials<T> {
    let two = lit::<T>(2.0);
    let hu = fd_step(1, u);
    let hv = fd_step(1, v);
    let ru = (r(u + hu, v) - r(u - hu, v)) * (T::one() / (two * hu));
    let rv = (r(u, v + hv) - r(u, v - hv)) * (T::one() / (two * hv));
    let ku = fd_step(2, u);
    let kv = fd_step(2, v);
    let c = r(u, v);
    let ruu = (r(u + ku, v) - c * two + r(u - ku, v)) * (T::one() / (ku * ku));
    let rvv = (r(u, v + kv) - c * two + r(u, v - kv)) * (T::one() / (kv * kv));
    let ruv = (r(u + ku, v + kv) - r(u + ku, v - kv) - r(u - ku, v + kv) + r(u - ku, v - kv))
        * (T::one() / (lit::<T>(4.0) * ku * kv));
    SurfacePartials { ru, rv, ruu, ruv, rvv }
}

/// Frenet trihedron with curvature and torsion.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FrenetFrame<T> {
    pub tangent: Vec3<T>,
    pub normal: Vec3<T>,
    pub binormal: Vec3<T>,
    pub curvature: T,
    pub torsion: T,
    /// `ds/dt = |r′|`.
    pub speed: T,
}

impl<T: Real> FrenetFrame<T> {
    /// Centre of the osculating circle.
    pub fn center_of_curvature(&self, r: Vec3<T>) -> Vec3<T> {
        r + self.normal * (T::one() / self.curvature)
    }
}

/// `κ = |r′×r″|/|r′|³`, `τ = det(r′,r″,r‴)/|r′×r″|²`.
pub fn frenet<T: Real, C: Curve<T> + ?Sized>(curve: &C, t: T) -> Result<FrenetFrame<T>> {
    let [d1, d2, d3] = curve.derivatives(t);
    let speed = d1.norm();
    if !(speed > T::zero()) {
        return Err(GeoError::SingularParameterization(to_f64(t), 0.0));
    }
    let c = d1.cross(d2);
    let cn = c.norm();
    // Below the round-off level of a difference-quotient r″ the normal carries no information.
    let h2 = fd_step(2, t);
    let noise = lit::<T>(64.0) * T::epsilon() * (T::one() + curve.position(t).norm()) / (h2 * h2) * speed;
    if !(cn > noise) {
        return Err(GeoError::UndefinedNormal);
    }
    let kappa = cn / (speed * speed * speed);
    let tangent = d1 * (T::one() / speed);
    let binormal = c * (T::one() / cn);
    let normal = binormal.cross(tangent);
    let torsion = d1.triple(d2, d3) / (cn * cn);
    Ok(FrenetFrame { tangent, normal, binormal, curvature: kappa, torsion, speed })
}

/// Length of the curve between `t0` and `t1`.
pub fn arc_length<T: Real, C: Curve<T> + ?Sized>(curve: &C, t0: T, t1: T) -> T {
    let scale = (t1 - t0).abs() * curve.derivatives(t0)[0].norm().max(T::one());
    integrate(|t| curve.derivatives(t)[0].norm(), t0, t1, T::epsilon().sqrt() * lit::<T>(1e-3) * scale)
}

/// Coefficients of the first (E, F, G) and second (L, M, N) fundamental forms.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FundamentalForms<T> {
    pub e: T,
    pub f: T,
    pub g: T,
    pub l: T,
    pub m: T,
    pub n: T,
    /// Unit normal `r_u × r_v / |r_u × r_v|`.
    pub normal: Vec3<T>,
}

impl<T: Real> FundamentalForms<T> {
    pub fn from_partials(p: &SurfacePartials<T>) -> Option<Self> {
        let c = p.ru.cross(p.rv);
        let cn = c.norm();
        if !(cn > T::epsilon().sqrt() * (p.ru.dot(p.ru) + p.rv.dot(p.rv))) {
            return None;
        }
        let normal = c * (T::one() / cn);
        Some(FundamentalForms {
            e: p.ru.dot(p.ru),
            f: p.ru.dot(p.rv),
            g: p.rv.dot(p.rv),
            l: p.ruu.dot(normal),
            m: p.ruv.dot(normal),
            n: p.rvv.dot(normal),
            normal,
        })
    }

    /// `EG − F²`.
    pub fn metric_det(&self) -> T {
        self.e * self.g - self.f * self.f
    }

    /// `K = (LN − M²)/(EG − F²)`.
    pub fn gaussian(&self) -> T {
        (self.l * self.n - self.m * self.m) / self.metric_det()
    }

    /// `H = (EN + GL − 2FM)/(2(EG − F²))`.
    pub fn mean(&self) -> T {
        (self.e * self.n + self.g * self.l - lit::<T>(2.0) * self.f * self.m) / (lit::<T>(2.0) * self.metric_det())
    }

    /// Principal curvatures `k₁ ≥ k₂`: eigenvalues of `I⁻¹ II`, computed in an orthonormal frame.
    pub fn principal(&self) -> (T, T) {
        // I = LLᵀ with L lower triangular; S = L⁻¹ II L⁻ᵀ is symmetric.
        let l11 = self.e.sqrt();
        let l21 = self.f / l11;
        let l22 = (self.g - l21 * l21).sqrt();
        let a = self.l / (l11 * l11);
        let b = (self.m - l21 * a * l11) / (l11 * l22);
        let c = (self.n - lit::<T>(2.0) * l21 * self.m / l11 + l21 * l21 * a) / (l22 * l22);
        let mid = (a + c) / lit(2.0);
        let rad = ((a - c) / lit(2.0)).hypot(b);
        (mid + rad, mid - rad)
    }
}

/// Fundamental forms at `(u, v)`.
pub fn fundamental_forms<T: Real, S: Surface<T> + ?Sized>(surface: &S, u: T, v: T) -> Result<FundamentalForms<T>> {
    FundamentalForms::from_partials(&surface.partials(u, v))
        .ok_or(GeoError::SingularParameterization(to_f64(u), to_f64(v)))
}

/// Principal, Gaussian and mean curvature at a point.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Curvatures<T> {
    pub k1: T,
    pub k2: T,
    pub gaussian: T,
    pub mean: T,
}

pub fn curvatures<T: Real, S: Surface<T> + ?Sized>(surface: &S, u: T, v: T) -> Result<Curvatures<T>> {
    let ff = fundamental_forms(surface, u, v)?;
    let (k1, k2) = ff.principal();
    Ok(Curvatures { k1, k2, gaussian: ff.gaussian(), mean: ff.mean() })
}

/// Gaussian and mean curvature of the graph `z = f(x, y)` from its derivatives.
pub fn graph_curvatures_from_derivatives<T: Real>(fx: T, fy: T, fxx: T, fxy: T, fyy: T) -> (T, T) {
    let w2 = T::one() + fx * fx + fy * fy;
    let k = (fxx * fyy - fxy * fxy) / (w2 * w2);
    let h = ((T::one() + fy * fy) * fxx - lit::<T>(2.0) * fx * fy * fxy + (T::one() + fx * fx) * fyy)
        / (lit::<T>(2.0) * w2 * w2.sqrt());
    (k, h)
}

/// Gaussian and mean curvature of `z = f(x, y)`, derivatives by central differences.
pub fn graph_curvatures<T: Real>(f: impl Fn(T, T) -> T, x: T, y: T) -> (T, T) {
    let two = lit::<T>(2.0);
    let hx = fd_step(1, x);
    let hy = fd_step(1, y);
    let fx = (f(x + hx, y) - f(x - hx, y)) / (two * hx);
    let fy = (f(x, y + hy) - f(x, y - hy)) / (two * hy);
    let kx = fd_step(2, x);
    let ky = fd_step(2, y);
    let c = f(x, y);
    let fxx = (f(x + kx, y) - two * c + f(x - kx, y)) / (kx * kx);
    let fyy = (f(x, y + ky) - two * c + f(x, y - ky)) / (ky * ky);
    let fxy = (f(x + kx, y + ky) - f(x + kx, y - ky) - f(x - kx, y + ky) + f(x - kx, y - ky)) / (lit::<T>(4.0) * kx * ky);
    graph_curvatures_from_derivatives(fx, fy, fxx, fxy, fyy)
}

/// Monge patch `(x, y) ↦ (x, y, f(x, y))`.
pub struct MongePatch<F>(pub F);

impl<T: Real, F: Fn(T, T) -> T> Surface<T> for MongePatch<F> {
    fn position(&self, u: T, v: T) -> Vec3<T> {
        Vec3::new(u, v, (self.0)(u, v))
    }
}

/// Gaussian curvature of the orthogonal metric `ds² = A²du² + B²dv²`:
/// `K = −(1/AB)[(A_v/B)_v + (B_u/A)_u]`, by nested central differences.
pub fn orthogonal_metric_k<T: Real>(a: impl Fn(T, T) -> T, b: impl Fn(T, T) -> T, u: T, v: T) -> T {
    let two = lit::<T>(2.0);
    let hu = fd_step(2, u);
    let hv = fd_step(2, v);
    let bu_over_a = |x: T, y: T| (b(x + hu, y) - b(x - hu, y)) / (two * hu) / a(x, y);
    let av_over_b = |x: T, y: T| (a(x, y + hv) - a(x, y - hv)) / (two * hv) / b(x, y);
    let d_u = (bu_over_a(u + hu, v) - bu_over_a(u - hu, v)) / (two * hu);
    let d_v = (av_over_b(u, v + hv) - av_over_b(u, v - hv)) / (two * hv);
    -(d_u + d_v) / (a(u, v) * b(u, v))
}

/// State along a torus geodesic: latitude φ, longitude λ and their arc-length derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TorusGeodesicState<T> {
    pub s: T,
    pub phi: T,
    pub lambda: T,
    pub dphi: T,
    pub dlambda: T,
}

/// RK4 integration of the geodesic equations on the torus
/// `((a + R cos φ) cos λ, (a + R cos φ) sin λ, R sin φ)`, starting with azimuth `az`
/// (from the meridian direction of increasing φ).
pub fn torus_geodesic<T: Real>(a: T, r: T, phi0: T, lambda0: T, az: T, length: T, step: T) -> Vec<TorusGeodesicState<T>> {
    let rho0 = a + r * phi0.cos();
    let mut y = [phi0, lambda0, az.cos() / r, az.sin() / rho0];
    let rhs = |y: [T; 4]| {
        let (sp, cp) = y[0].sin_cos();
        let rho = a + r * cp;
        [
            y[2],
            y[3],
            -sp * rho * y[3] * y[3] / r,
            lit::<T>(2.0) * r * sp * y[2] * y[3] / rho,
        ]
    };
    let add = |y: [T; 4], k: [T; 4], h: T| [y[0] + k[0] * h, y[1] + k[1] * h, y[2] + k[2] * h, y[3] + k[3] * h];
    let n = (length / step).ceil().to_usize().unwrap_or(0).max(1);
    let h = length / T::from_usize(n).unwrap();
    let half = h / lit(2.0);
    let mut out = Vec::with_capacity(n + 1);
    let mut s = T::zero();
    out.push(TorusGeodesicState { s, phi: y[0], lambda: y[1], dphi: y[2], dlambda: y[3] });
    for _ in 0..n {
        let k1 = rhs(y);
        let k2 = rhs(add(y, k1, half));
        let k3 = rhs(add(y, k2, half));
        let k4 = rhs(add(y, k3, h));
        for i in 0..4 {
            y[i] = y[i] + h / lit(6.0) * (k1[i] + lit::<T>(2.0) * (k2[i] + k3[i]) + k4[i]);
        }
        s = s + h;
        out.push(TorusGeodesicState { s, phi: y[0], lambda: y[1], dphi: y[2], dlambda: y[3] });
    }
    out
}

#[cfg(test)]
mod tests {
    use super::catalog::*;
    use super::*;

    #[test]
    fn helix_curvature_and_torsion() {
        let h = Helix { a: 2.0f64, b: 0.5 };
        let f = frenet(&h, 0.7).unwrap();
        assert!((f.curvature - 2.0 / 4.25).abs() < 1e-14);
        assert!((f.torsion - 0.5 / 4.25).abs() < 1e-14);
        assert!((f.tangent.dot(f.normal)).abs() < 1e-14);
        assert!((f.binormal.norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn finite_differences_agree_with_analytic_curve() {
        let h = Helix { a: 1.5f64, b: 0.3 };
        let fd = frenet(&FnCurve(|t: f64| h.position(t)), 1.1).unwrap();
        let an = frenet(&h, 1.1).unwrap();
        assert!((fd.curvature - an.curvature).abs() < 1e-6);
        assert!((fd.torsion - an.torsion).abs() < 1e-4);
    }

    #[test]
    fn straight_line_has_no_normal() {
        let line = FnCurve(|t: f64| Vec3::new(t, 2.0 * t, -t));
        assert_eq!(frenet(&line, 0.3), Err(GeoError::UndefinedNormal));
    }

    #[test]
    fn ellipse_vertex_radii() {
        let e = Ellipse { a: 3.0f64, b: 2.0 };
        assert!((1.0 / frenet(&e, 0.0).unwrap().curvature - 4.0 / 3.0).abs() < 1e-13);
        assert!((1.0 / frenet(&e, std::f64::consts::FRAC_PI_2).unwrap().curvature - 4.5).abs() < 1e-13);
    }

    #[test]
    fn sphere_forms_and_curvature() {
        let s = Spheroid { a: 2.0f64, b: 2.0 };
        let ff = fundamental_forms(&s, 0.4, 1.0).unwrap();
        assert!((ff.e - 4.0).abs() < 1e-14);
        assert!(ff.f.abs() < 1e-14);
        assert!((ff.g - 4.0 * 0.4f64.cos().powi(2)).abs() < 1e-14);
        let c = curvatures(&s, 0.4, 1.0).unwrap();
        assert!((c.gaussian - 0.25).abs() < 1e-14);
        assert!((c.k1 - c.k2).abs() < 1e-7);
    }

    #[test]
    fn principal_curvatures_consistent() {
        let t = Torus { a: 3.0f64, r: 1.0 };
        let c = curvatures(&t, 0.8, 0.1).unwrap();
        assert!((c.k1 * c.k2 - c.gaussian).abs() < 1e-12);
        assert!(((c.k1 + c.k2) / 2.0 - c.mean).abs() < 1e-12);
        assert!((c.gaussian - 0.8f64.cos() / (3.0 + 0.8f64.cos())).abs() < 1e-12);
    }

    #[test]
    fn graph_formula_matches_monge_patch() {
        let f = |x: f64, y: f64| x * x * y - 0.3 * y.powi(3) + x.sin();
        let (k, h) = graph_curvatures(f, 0.4, -0.2);
        let c = curvatures(&MongePatch(f), 0.4, -0.2).unwrap();
        assert!((k - c.gaussian).abs() < 1e-6);
        assert!((h - c.mean).abs() < 1e-6);
    }

    #[test]
    fn orthogonal_metric_of_sphere() {
        let k = orthogonal_metric_k(|_u: f64, _v| 2.0, |u: f64, _v| 2.0 * u.cos(), 0.5, 0.1);
        assert!((k - 0.25).abs() < 1e-6);
    }

    #[test]
    fn singular_patch_detected() {
        let s = Spheroid { a: 1.0f64, b: 1.0 };
        assert!(matches!(fundamental_forms(&s, std::f64::consts::FRAC_PI_2, 0.0), Err(GeoError::SingularParameterization(..))));
    }

    #[test]
    fn torus_geodesic_keeps_clairaut_constant() {
        let (a, r) = (2.0f64, 1.0f64);
        let az: f64 = std::f64::consts::FRAC_PI_4;
        let c0 = (a + r) * az.sin();
        let trace = torus_geodesic(a, r, 0.0, 0.0, az, 30.0, 1e-3 * (a + r));
        for st in &trace {
            let rho = a + r * st.phi.cos();
            assert!((rho * rho * st.dlambda - c0).abs() < 1e-9);
        }
    }
}
