//! Plane triangle adjusted on its three sides as unknowns.

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::linalg::Matrix;
use crate::scalar::{lit, Real};

use super::{solve_wls, LinearModel};

const MAX_ITERATIONS: u32 = 20;

/// Units in which residuals, weights and the design matrix are expressed.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NormalizedUnits<T> {
    /// Metres per length unit.
    pub length: T,
    /// Angle per angular unit.
    pub angle: Angle<T>,
}

impl<T: Real> NormalizedUnits<T> {
    pub fn new(length: T, angle: Angle<T>) -> Self {
        NormalizedUnits { length, angle }
    }

    /// Millimetres and decimilligrades.
    pub fn mm_dmgr() -> Self {
        Self::new(lit(1e-3), Angle::from_grads(lit(1e-4)))
    }
}

/// Observed elements, each with its standard deviation; index 0, 1, 2 is `a`/`A`, `b`/`B`, `c`/`C`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct TriangleObservations<T> {
    pub sides: [Option<(T, T)>; 3],
    pub angles: [Option<(Angle<T>, Angle<T>)>; 3],
}

#[derive(Clone, Debug, PartialEq)]
pub struct TriangleAdjustment<T> {
    pub sides: [T; 3],
    pub angles: [Angle<T>; 3],
    /// Residuals in normalized units, sides first then angles, observed elements only.
    pub residuals: Vec<T>,
    pub s2: T,
    /// `1/q` of each adjusted element in normalized units.
    pub side_weights: [T; 3],
    pub angle_weights: [T; 3],
    /// `s √q` in metres.
    pub side_sigmas: [T; 3],
    pub angle_sigmas: [Angle<T>; 3],
    pub iterations: u32,
}

/// Angle opposite side `i` and its gradient with respect to `(a, b, c)`.
fn angle_and_gradient<T: Real>(s: &[T; 3], i: usize) -> Result<(T, [T; 3])> {
    let (j, k) = ((i + 1) % 3, (i + 2) % 3);
    let (x, y, z) = (s[i], s[j], s[k]);
    let cos = (y * y + z * z - x * x) / (lit::<T>(2.0) * y * z);
    if !(cos.abs() < T::one()) {
        return Err(GeoError::InconsistentObservation(format!(
            "sides {}, {}, {} violate the triangle inequality",
            s[0], s[1], s[2]
        )));
    }
    let ang = cos.acos();
    let sin = ang.sin();
    let mut g = [T::zero(); 3];
    g[i] = x / (y * z * sin);
    g[j] = -(x * x + y * y - z * z) / (lit::<T>(2.0) * y * y * z * sin);
    g[k] = -(x * x + z * z - y * y) / (lit::<T>(2.0) * y * z * z * sin);
    Ok((ang, g))
}

/// Observed sides as given; missing ones from the sine rule on an observed side.
fn initial_sides<T: Real>(obs: &TriangleObservations<T>) -> Result<[T; 3]> {
    let reference = (0..3)
        .find(|&k| obs.sides[k].is_some() && obs.angles[k].is_some())
        .or_else(|| (0..3).find(|&k| obs.sides[k].is_some()));
    let mut out = [T::zero(); 3];
    for (j, o) in out.iter_mut().enumerate() {
        *o = match (obs.sides[j], reference) {
            (Some((v, _)), _) => v,
            (None, Some(k)) => match (obs.sides[k], obs.angles[k], obs.angles[j]) {
                (Some((sk, _)), Some((ak, _)), Some((aj, _))) => sk * aj.sin() / ak.sin(),
                _ => {
                    return Err(GeoError::InconsistentObservation(format!(
                        "cannot approximate side {} from the observed elements",
                        ["a", "b", "c"][j]
                    )))
                }
            },
            (None, None) => return Err(GeoError::InconsistentObservation("no side is observed".into())),
        };
    }
    Ok(out)
}

/// How the angle rows are linearized.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Linearization {
    /// Jacobian of the cosine rule at `s0`; `L = observed − computed`.
    #[default]
    Exact,
    /// Hand-computation form: `1/sin A` taken at the observed angle and
    /// `L = (b₀² + c₀² − a₀² − 2b₀c₀ cos A) / (2b₀c₀ sin A)`.
    ObservedSine,
}

/// Linearized system in normalized units about the approximate sides `s0`: unknowns `(da, db, dc)`,
/// one row per observed element and `P = 1/σ²`.
pub fn triangle_linear_model<T: Real>(
    obs: &TriangleObservations<T>,
    units: &NormalizedUnits<T>,
    s0: &[T; 3],
    form: Linearization,
) -> Result<LinearModel<T>> {
    let mut rows = Vec::new();
    let mut l = Vec::new();
    let mut w = Vec::new();
    for (i, side) in obs.sides.iter().enumerate() {
        if let Some((v, sigma)) = side {
            let mut r = vec![T::zero(); 3];
            r[i] = T::one();
            rows.push(r);
            l.push((*v - s0[i]) / units.length);
            w.push((units.length / *sigma).powi(2));
        }
    }
    let au = units.angle.radians();
    for (i, ang) in obs.angles.iter().enumerate() {
        if let Some((v, sigma)) = ang {
            let (calc, g) = angle_and_gradient(s0, i)?;
            let (k, rhs) = match form {
                Linearization::Exact => (T::one(), v.radians() - calc),
                Linearization::ObservedSine => (calc.sin() / v.sin(), (calc.cos() - v.cos()) / v.sin()),
            };
            rows.push(g.iter().map(|&gi| k * gi * units.length / au).collect());
            l.push(rhs / au);
            w.push((au / sigma.radians()).powi(2));
        }
    }
    LinearModel::diagonal(Matrix::from_rows(&rows), l, &w)
}

/// Gauss-Newton on the cosine-rule relations between sides and angles.
pub fn adjust_triangle<T: Real>(obs: &TriangleObservations<T>, units: &NormalizedUnits<T>) -> Result<TriangleAdjustment<T>> {
    let mut s = initial_sides(obs)?;
    for it in 1..=MAX_ITERATIONS {
        let m = triangle_linear_model(obs, units, &s, Linearization::Exact)?;
        let r = solve_wls(&m)?;
        let mut size = T::zero();
        for (si, dx) in s.iter_mut().zip(&r.x) {
            let d = *dx * units.length;
            *si = *si + d;
            size = size.max(d.abs() / *si);
        }
        if size <= lit(1e-13) {
            return finish(obs, units, s, it);
        }
    }
    Err(GeoError::NoConvergence(MAX_ITERATIONS))
}

fn finish<T: Real>(
    obs: &TriangleObservations<T>,
    units: &NormalizedUnits<T>,
    s: [T; 3],
    iterations: u32,
) -> Result<TriangleAdjustment<T>> {
    let m = triangle_linear_model(obs, units, &s, Linearization::Exact)?;
    let r = solve_wls(&m)?;
    let residuals: Vec<T> = m.l.iter().map(|&l| -l).collect();
    let s2 = if r.redundancy > 0 { m.p.bilinear(&residuals, &residuals) / lit(r.redundancy as f64) } else { T::zero() };
    let au = units.angle.radians();
    let mut angles = [Angle::default(); 3];
    let mut angle_weights = [T::zero(); 3];
    let mut angle_sigmas = [Angle::default(); 3];
    let mut side_weights = [T::zero(); 3];
    let mut side_sigmas = [T::zero(); 3];
    for i in 0..3 {
        let q = r.qxx[(i, i)];
        side_weights[i] = T::one() / q;
        side_sigmas[i] = (s2 * q).sqrt() * units.length;
        let (ang, g) = angle_and_gradient(&s, i)?;
        let gu: Vec<T> = g.iter().map(|&gi| gi * units.length / au).collect();
        let qa = r.qxx.bilinear(&gu, &gu);
        angles[i] = Angle::from_radians(ang);
        angle_weights[i] = T::one() / qa;
        angle_sigmas[i] = Angle::from_radians((s2 * qa).sqrt() * au);
    }
    Ok(TriangleAdjustment {
        sides: s,
        angles,
        residuals,
        s2,
        side_weights,
        angle_weights,
        side_sigmas,
        angle_sigmas,
        iterations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn perfect() -> TriangleObservations<f64> {
        let (a, b, c) = (300.0f64, 400.0, 500.0);
        let ang = |x: f64, y: f64, z: f64| Angle::from_radians(((y * y + z * z - x * x) / (2.0 * y * z)).acos());
        let sa = Angle::from_grads(3e-4);
        TriangleObservations {
            sides: [Some((a, 0.005)), Some((b, 0.005)), Some((c, 0.01))],
            angles: [Some((ang(a, b, c), sa)), Some((ang(b, c, a), sa)), Some((ang(c, a, b), sa))],
        }
    }

    #[test]
    fn perfect_triangle_needs_no_correction() {
        let r = adjust_triangle(&perfect(), &NormalizedUnits::mm_dmgr()).unwrap();
        assert!(r.residuals.iter().all(|v| v.abs() < 1e-8));
        assert!((r.sides[2] - 500.0).abs() < 1e-10);
        assert!((r.angles[2].degrees() - 90.0).abs() < 1e-10);
        assert!(r.s2 < 1e-16);
    }

    #[test]
    fn missing_side_from_sine_rule() {
        let mut o = perfect();
        o.sides[2] = None;
        assert!((initial_sides(&o).unwrap()[2] - 500.0).abs() < 1e-9);
        o.angles = [None; 3];
        assert!(initial_sides(&o).is_err());
    }

    #[test]
    fn analytic_gradient_matches_differences() {
        let s = [333.841f64, 525.847, 414.815];
        for i in 0..3 {
            let (_, g) = angle_and_gradient(&s, i).unwrap();
            for j in 0..3 {
                let h = 1e-4;
                let (mut p, mut m) = (s, s);
                p[j] += h;
                m[j] -= h;
                let fd = (angle_and_gradient(&p, i).unwrap().0 - angle_and_gradient(&m, i).unwrap().0) / (2.0 * h);
                assert!((fd - g[j]).abs() <= 1e-6 * g[j].abs().max(1e-9));
            }
        }
    }

    #[test]
    fn degenerate_sides_rejected() {
        assert!(angle_and_gradient(&[1.0f64, 1.0, 3.0], 0).is_err());
    }
}
