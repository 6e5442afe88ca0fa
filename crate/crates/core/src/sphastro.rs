//! Spherical trigonometry and positional astronomy.
//!
//! Azimuths are counted from North through East, in `[0, 2π)`. Refraction is ignored.

use crate::angle::{Angle, Hms};
use crate::error::{Circumpolar, GeoError, Result};
use crate::scalar::{lit, to_f64, Real};

/// Sidereal days per solar day.
pub const SIDEREAL_RATE: f64 = 1.002_737_9;

/// Spherical triangle on the unit sphere. Side `i` is opposite angle `i`; unknown elements are `None`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SphericalTriangle<T> {
    pub angles: [Option<Angle<T>>; 3],
    pub sides: [Option<Angle<T>>; 3],
}

const ANGLE_NAMES: [&str; 3] = ["A", "B", "C"];
const SIDE_NAMES: [&str; 3] = ["a", "b", "c"];

/// A triangle with every element known, in radians.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolvedTriangle<T> {
    pub angles: [T; 3],
    pub sides: [T; 3],
}

impl<T: Real> SphericalTriangle<T> {
    pub fn new(angles: [Option<Angle<T>>; 3], sides: [Option<Angle<T>>; 3]) -> Self {
        SphericalTriangle { angles, sides }
    }

    /// Triangle with sides `a, b, c`.
    pub fn sss(a: Angle<T>, b: Angle<T>, c: Angle<T>) -> Self {
        Self::new([None; 3], [Some(a), Some(b), Some(c)])
    }

    /// Triangle with sides `b, c` and the included angle `A`.
    pub fn sas(b: Angle<T>, a_angle: Angle<T>, c: Angle<T>) -> Self {
        Self::new([Some(a_angle), None, None], [None, Some(b), Some(c)])
    }

    /// Polar triangle: sides and angles exchanged through `x ↦ π − x`.
    pub fn polar(&self) -> Self {
        let f = |o: Option<Angle<T>>| o.map(|x| Angle::from_radians(T::PI()) - x);
        SphericalTriangle { angles: self.sides.map(f), sides: self.angles.map(f) }
    }

    fn known(&self) -> Vec<&'static str> {
        let mut v = Vec::new();
        for i in 0..3 {
            if self.angles[i].is_some() {
                v.push(ANGLE_NAMES[i]);
            }
        }
        for i in 0..3 {
            if self.sides[i].is_some() {
                v.push(SIDE_NAMES[i]);
            }
        }
        v
    }
}

impl<T: Real> SolvedTriangle<T> {
    pub fn polar(&self) -> Self {
        SolvedTriangle { angles: self.sides.map(|x| T::PI() - x), sides: self.angles.map(|x| T::PI() - x) }
    }

    /// Largest violation of the cosine, sine and polar cosine laws.
    pub fn residual(&self) -> T {
        let (a, s) = (self.angles, self.sides);
        let mut r = T::zero();
        for i in 0..3 {
            let (j, k) = ((i + 1) % 3, (i + 2) % 3);
            let side_law = s[j].cos() * s[k].cos() + s[j].sin() * s[k].sin() * a[i].cos() - s[i].cos();
            let angle_law = -a[j].cos() * a[k].cos() + a[j].sin() * a[k].sin() * s[i].cos() - a[i].cos();
            let sine_law = a[i].sin() * s[j].sin() - a[j].sin() * s[i].sin();
            r = r.max(side_law.abs()).max(angle_law.abs()).max(sine_law.abs());
        }
        r
    }

    /// Spherical excess `A + B + C − π`, evaluated from the sides (l'Huilier).
    pub fn excess(&self) -> Angle<T> {
        let [a, b, c] = self.sides;
        excess_lhuilier(Angle::from_radians(a), Angle::from_radians(b), Angle::from_radians(c))
    }

    pub fn to_triangle(&self) -> SphericalTriangle<T> {
        let f = |x: T| Some(Angle::from_radians(x));
        SphericalTriangle { angles: self.angles.map(f), sides: self.sides.map(f) }
    }
}

fn in_open_range<T: Real>(x: T) -> bool {
    x > T::zero() && x < T::PI()
}

fn solve_sss<T: Real>(s: [T; 3]) -> Result<[T; 3]> {
    let half = (s[0] + s[1] + s[2]) / lit(2.0);
    let d = [half - s[0], half - s[1], half - s[2]];
    if !(d.iter().all(|&x| x > T::zero()) && half < T::PI()) {
        return Err(GeoError::UnsolvableTriangle("sides violate the triangle inequality".into()));
    }
    let mut angles = [T::zero(); 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let num = (d[j].sin() * d[k].sin()).sqrt();
        let den = (half.sin() * d[i].sin()).sqrt();
        angles[i] = lit::<T>(2.0) * num.atan2(den);
    }
    Ok(angles)
}

/// Sides `b, c` around angle `A`; returns `(a, B, C)`.
fn solve_sas<T: Real>(b: T, a_ang: T, c: T) -> (T, T, T) {
    let hav = |x: T| ((x / lit(2.0)).sin()).powi(2);
    let h = hav(b - c) + b.sin() * c.sin() * hav(a_ang);
    let a = lit::<T>(2.0) * h.sqrt().min(T::one()).asin();
    let (sa, ca) = a_ang.sin_cos();
    let bb = (sa * b.sin()).atan2(c.sin() * b.cos() - c.cos() * b.sin() * ca);
    let cc = (sa * c.sin()).atan2(b.sin() * c.cos() - b.cos() * c.sin() * ca);
    (a, bb, cc)
}

/// Sides `a, b` and angle `A` opposite `a`; candidate `(B, c, C)` completions.
fn solve_ssa<T: Real>(a: T, b: T, a_ang: T) -> Vec<(T, T, T)> {
    let sin_b = b.sin() * a_ang.sin() / a.sin();
    if !(sin_b.abs() <= T::one() + lit(1e-15)) {
        return Vec::new();
    }
    let b0 = sin_b.min(T::one()).asin();
    let two = lit::<T>(2.0);
    let mut out = Vec::new();
    for bb in [b0, T::PI() - b0] {
        let sp = (a_ang + bb) / two;
        let sm = (a_ang - bb) / two;
        let tc = ((a + b) / two).tan() * sp.cos() / sm.cos();
        let c = two * tc.atan();
        let cot_half = sp.tan() * ((a + b) / two).cos() / ((a - b) / two).cos();
        let cc = two * (T::one() / cot_half).atan();
        if !(in_open_range(bb) && in_open_range(c) && in_open_range(cc)) {
            continue;
        }
        let cand = SolvedTriangle { angles: [a_ang, bb, cc], sides: [a, b, c] };
        if cand.residual() < lit(1e-9) && !out.iter().any(|&(x, _, _): &(T, T, T)| (x - bb).abs() < lit(1e-12)) {
            out.push((bb, c, cc));
        }
    }
    out
}

fn rad<T: Real>(o: Option<Angle<T>>) -> Option<T> {
    o.map(Angle::radians)
}

fn try_solve_direct<T: Real>(t: &SphericalTriangle<T>) -> Option<Result<SolvedTriangle<T>>> {
    let s = t.sides.map(rad);
    let a = t.angles.map(rad);
    if let [Some(s0), Some(s1), Some(s2)] = s {
        return Some(solve_sss([s0, s1, s2]).map(|angles| SolvedTriangle { angles, sides: [s0, s1, s2] }));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if let (Some(sj), Some(sk), Some(ai)) = (s[j], s[k], a[i]) {
            let (si, aj, ak) = solve_sas(sj, ai, sk);
            let mut angles = [T::zero(); 3];
            let mut sides = [T::zero(); 3];
            angles[i] = ai;
            angles[j] = aj;
            angles[k] = ak;
            sides[i] = si;
            sides[j] = sj;
            sides[k] = sk;
            return Some(Ok(SolvedTriangle { angles, sides }));
        }
    }
    None
}

fn try_solve_ssa<T: Real>(t: &SphericalTriangle<T>) -> Option<Result<SolvedTriangle<T>>> {
    let s = t.sides.map(rad);
    let a = t.angles.map(rad);
    for i in 0..3 {
        for j in 0..3 {
            if i == j {
                continue;
            }
            let k = 3 - i - j;
            if let (Some(si), Some(sj), Some(ai)) = (s[i], s[j], a[i]) {
                let cands = solve_ssa(si, sj, ai);
                return Some(match cands.len() {
                    0 => Err(GeoError::UnsolvableTriangle(format!(
                        "no triangle has {}, {} and {} as given",
                        SIDE_NAMES[i], SIDE_NAMES[j], ANGLE_NAMES[i]
                    ))),
                    1 => {
                        let (aj, sk, ak) = cands[0];
                        let mut angles = [T::zero(); 3];
                        let mut sides = [T::zero(); 3];
                        angles[i] = ai;
                        angles[j] = aj;
                        angles[k] = ak;
                        sides[i] = si;
                        sides[j] = sj;
                        sides[k] = sk;
                        Ok(SolvedTriangle { angles, sides })
                    }
                    _ => Err(GeoError::UnsolvableTriangle(format!(
                        "ambiguous case: two triangles fit; give {} or {} to choose",
                        SIDE_NAMES[k], ANGLE_NAMES[k]
                    ))),
                });
            }
        }
    }
    None
}

/// Completes a spherical triangle from three independent elements.
///
/// Given elements are taken as they are; extra ones are not checked (see [`SolvedTriangle::residual`]).
pub fn triangle_solve<T: Real>(t: &SphericalTriangle<T>) -> Result<SolvedTriangle<T>> {
    for x in t.angles.iter().chain(t.sides.iter()).flatten() {
        if !in_open_range(x.radians()) {
            return Err(GeoError::OutOfRange { what: "triangle element", value: to_f64(x.radians()) });
        }
    }
    let solved = if let Some(r) = try_solve_direct(t) {
        r?
    } else if let Some(r) = try_solve_direct(&t.polar()) {
        r?.polar()
    } else if let Some(r) = try_solve_ssa(t) {
        r?
    } else if let Some(r) = try_solve_ssa(&t.polar()) {
        r?.polar()
    } else {
        let known = t.known();
        return Err(GeoError::UnsolvableTriangle(if known.len() < 3 {
            format!("only {} known ({}); a third element is missing", known.len(), known.join(", "))
        } else {
            format!("elements {} do not determine a triangle", known.join(", "))
        }));
    };
    if !(solved.angles.iter().chain(solved.sides.iter()).all(|&x| in_open_range(x))) {
        return Err(GeoError::UnsolvableTriangle("degenerate triangle".into()));
    }
    Ok(solved)
}

/// Excess from three sides by l'Huilier's formula.
pub fn excess_lhuilier<T: Real>(a: Angle<T>, b: Angle<T>, c: Angle<T>) -> Angle<T> {
    let two = lit::<T>(2.0);
    let (a, b, c) = (a.radians(), b.radians(), c.radians());
    let s = (a + b + c) / two;
    let q = (s / two).tan() * ((s - a) / two).tan() * ((s - b) / two).tan() * ((s - c) / two).tan();
    Angle::from_radians(lit::<T>(4.0) * q.max(T::zero()).sqrt().atan())
}

/// Excess of the triangle with sides `b, c` (lengths) around angle `A`, on a sphere of radius `r`.
///
/// Uses `tan(ε/2) = t_b t_c sin A / (1 + t_b t_c cos A)`, `t = tan(side/2R)`; for small sides
/// this reduces to `½ b c sin A / R²`.
pub fn excess_from_two_sides<T: Real>(b: T, c: T, a_angle: Angle<T>, r: T) -> Angle<T> {
    let two = lit::<T>(2.0);
    let tb = (b / (two * r)).tan();
    let tc = (c / (two * r)).tan();
    let (s, co) = a_angle.radians().sin_cos();
    Angle::from_radians(two * (tb * tc * s).atan2(T::one() + tb * tc * co))
}

/// Excess `ε = area / R²` from whichever elements are known: three sides, two sides with the
/// included angle, or three angles. Sides are arcs on the unit sphere.
pub fn spherical_excess<T: Real>(t: &SphericalTriangle<T>) -> Result<Angle<T>> {
    if let [Some(a), Some(b), Some(c)] = t.sides {
        return Ok(excess_lhuilier(a, b, c));
    }
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        if let (Some(sj), Some(sk), Some(ai)) = (t.sides[j], t.sides[k], t.angles[i]) {
            return Ok(excess_from_two_sides(sj.radians(), sk.radians(), ai, T::one()));
        }
    }
    if let [Some(a), Some(b), Some(c)] = t.angles {
        return Ok(a + b + c - Angle::from_radians(T::PI()));
    }
    Err(GeoError::UnsolvableTriangle(format!(
        "excess needs three sides, two sides and their angle, or three angles; known: {}",
        t.known().join(", ")
    )))
}

/// Angular misclosure `f = A + B + C − π − ε`.
pub fn closure<T: Real>(angles: [Angle<T>; 3], excess: Angle<T>) -> Angle<T> {
    angles[0] + angles[1] + angles[2] - Angle::from_radians(T::PI()) - excess
}

/// Side of the regular spherical square with vertex angle `α`: `cos a = cot²(α/2)`.
pub fn square_side<T: Real>(alpha: Angle<T>) -> Result<Angle<T>> {
    let al = alpha.radians();
    if !(al > T::FRAC_PI_2() && al < T::PI()) {
        return Err(GeoError::NoSuchSquare(to_f64(al)));
    }
    let cot = T::one() / (al / lit(2.0)).tan();
    Ok(Angle::from_radians((cot * cot).acos()))
}

/// Diagonal of the same square: `tan(d/2) = tan a · cos(α/2)`.
pub fn square_diagonal<T: Real>(alpha: Angle<T>) -> Result<Angle<T>> {
    let a = square_side(alpha)?.radians();
    let half = alpha.radians() / lit(2.0);
    // Near α = π the side tends to π/2; write tan a · cos(α/2) as a ratio to stay finite.
    let d2 = (a.sin() * half.cos()).atan2(a.cos());
    Ok(Angle::from_radians(lit::<T>(2.0) * d2))
}

/// Cassini-Soldner angles `(L, H)` of the point `(φ, λ)` on the unit sphere:
/// `sin H = cos φ sin λ`, `tan L = tan φ / cos λ`.
pub fn cassini_soldner_forward<T: Real>(phi: Angle<T>, lambda: Angle<T>) -> Result<(Angle<T>, Angle<T>)> {
    let p = phi.radians();
    if !(p.abs() < T::FRAC_PI_2()) {
        return Err(GeoError::OutOfRange { what: "latitude", value: to_f64(p) });
    }
    let (sp, cp) = p.sin_cos();
    let (sl, cl) = lambda.radians().sin_cos();
    let h = (cp * sl).atan2((sp * sp + cp * cp * cl * cl).sqrt());
    let l = sp.atan2(cp * cl);
    Ok((Angle::from_radians(l), Angle::from_radians(h)))
}

/// Inverse of [`cassini_soldner_forward`]: `sin φ = cos H sin L`, `tan λ = tan H / cos L`.
pub fn cassini_soldner_inverse<T: Real>(l: Angle<T>, h: Angle<T>) -> Result<(Angle<T>, Angle<T>)> {
    let (sh, ch) = h.radians().sin_cos();
    if !(ch.abs() > T::epsilon()) {
        return Err(GeoError::SingularInverse);
    }
    let (sl, cl) = l.radians().sin_cos();
    let phi = (ch * sl).atan2((sh * sh + ch * ch * cl * cl).sqrt());
    let lambda = sh.atan2(ch * cl);
    Ok((Angle::from_radians(phi), Angle::from_radians(lambda)))
}

/// Hour angle of setting, `cos AH = −tan φ tan δ`, in `[0, π]`.
pub fn hour_angle_of_set<T: Real>(phi: Angle<T>, delta: Angle<T>) -> Result<Angle<T>> {
    let x = -phi.tan() * delta.tan();
    if x < -T::one() {
        return Err(GeoError::Circumpolar(Circumpolar::NeverSets));
    }
    if x > T::one() {
        return Err(GeoError::Circumpolar(Circumpolar::NeverRises));
    }
    Ok(Angle::from_radians(x.acos()))
}

/// `(sin z sin Az_s, sin z cos Az_s, cos z)` with `Az_s` counted from South through West.
fn horizon_components<T: Real>(phi: Angle<T>, delta: Angle<T>, ah: Angle<T>) -> (T, T, T) {
    let (sp, cp) = phi.radians().sin_cos();
    let (sd, cd) = delta.radians().sin_cos();
    let (sh, ch) = ah.radians().sin_cos();
    (cd * sh, ch * sp * cd - cp * sd, sp * sd + cp * cd * ch)
}

/// Azimuth from `tan Az = sin AH / (cos AH sin φ − cos φ tan δ)`, turned to the North origin.
pub fn star_azimuth<T: Real>(phi: Angle<T>, delta: Angle<T>, ah: Angle<T>) -> Result<Angle<T>> {
    let (y, x, _) = horizon_components(phi, delta, ah);
    if !(x.hypot(y) > lit::<T>(64.0) * T::epsilon()) {
        return Err(GeoError::UndefinedAzimuth);
    }
    Ok(Angle::from_radians(T::PI() + y.atan2(x)).normalized())
}

/// `cos z = sin φ sin δ + cos φ cos δ cos AH`.
pub fn zenith_distance<T: Real>(phi: Angle<T>, delta: Angle<T>, ah: Angle<T>) -> Angle<T> {
    let (y, x, z) = horizon_components(phi, delta, ah);
    Angle::from_radians(x.hypot(y).atan2(z))
}

/// Western hour angle at which the star reaches zenith distance `z`.
pub fn hour_angle_at_zenith_distance<T: Real>(phi: Angle<T>, delta: Angle<T>, z: Angle<T>) -> Result<Angle<T>> {
    let c = (z.cos() - phi.sin() * delta.sin()) / (phi.cos() * delta.cos());
    if !(c.abs() <= T::one()) {
        return Err(GeoError::InconsistentObservation(format!(
            "the star never reaches zenith distance {:.6} rad at this latitude",
            to_f64(z.radians())
        )));
    }
    Ok(Angle::from_radians(c.acos()))
}

/// Local sidereal time and hour angle from the Greenwich sidereal time at 0h TU.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SiderealResult {
    /// Local sidereal time in hours, `[0, 24)`.
    pub hsl: f64,
    /// Hour angle in hours, `[0, 24)`.
    pub ah: f64,
}

impl SiderealResult {
    pub fn hour_angle(&self) -> Angle<f64> {
        Angle::from_hours(self.ah)
    }
}

/// `HSL = HSG₀ + 1.0027379·TU + λ`, `AH = HSL − α`, all in hours. With `naive` the elapsed
/// time is not scaled to sidereal.
pub fn sidereal_chain(hsg0: f64, elapsed_tu: f64, lambda_east: f64, alpha: f64, naive: bool) -> SiderealResult {
    let rate = if naive { 1.0 } else { SIDEREAL_RATE };
    let hsl = (hsg0 + elapsed_tu * rate + lambda_east).rem_euclid(24.0);
    let ah = (hsl - alpha).rem_euclid(24.0);
    SiderealResult { hsl, ah }
}

/// Exact `AH = HSL − α` on centisecond clocks, in `[0h, 24h)`.
pub fn hour_angle_from_hsl(hsl: Hms, alpha: Hms) -> Hms {
    (hsl - alpha).wrapped()
}

/// TU at which local sidereal time `hsl` is reached, inverting [`sidereal_chain`], in `[0, 24)`.
pub fn tu_of_sidereal(hsl: f64, hsg0: f64, lambda_east: f64, naive: bool) -> f64 {
    let rate = if naive { 1.0 } else { SIDEREAL_RATE };
    ((hsl - lambda_east - hsg0).rem_euclid(24.0) / rate).rem_euclid(24.0 / rate)
}

/// Local sidereal times of rising and setting, in hours `[0, 24)`.
pub fn rise_set_sidereal(phi: Angle<f64>, delta: Angle<f64>, alpha_hours: f64) -> Result<(f64, f64)> {
    let ahc = hour_angle_of_set(phi, delta)?.hours();
    Ok(((alpha_hours - ahc).rem_euclid(24.0), (alpha_hours + ahc).rem_euclid(24.0)))
}

/// Meridian passages of a star.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Culmination<T> {
    /// Altitude at upper culmination, `π/2 − |φ − δ|`.
    pub upper: Angle<T>,
    /// Altitude at lower culmination, `|φ + δ| − π/2`.
    pub lower: Angle<T>,
    pub never_sets: bool,
    pub never_rises: bool,
    pub zenith: bool,
}

pub fn culmination_altitudes<T: Real>(phi: Angle<T>, delta: Angle<T>) -> Result<Culmination<T>> {
    let (p, d) = (phi.radians(), delta.radians());
    let half_pi = T::FRAC_PI_2();
    if !(p.abs() <= half_pi) {
        return Err(GeoError::OutOfRange { what: "latitude", value: to_f64(p) });
    }
    if !(d.abs() <= half_pi) {
        return Err(GeoError::OutOfRange { what: "declination", value: to_f64(d) });
    }
    let upper = half_pi - (p - d).abs();
    let lower = (p + d).abs() - half_pi;
    let tol = lit::<T>(1e-12);
    Ok(Culmination {
        upper: Angle::from_radians(upper),
        lower: Angle::from_radians(lower),
        never_sets: lower >= -tol,
        never_rises: upper <= tol,
        zenith: (p - d).abs() <= tol,
    })
}

/// Solstice declination of the sun, 23°27′.
pub fn solstice_declination<T: Real>() -> Angle<T> {
    Angle::from_dms(lit(23.0), lit(27.0), T::zero())
}

/// Noon shadow of a vertical rod of height `rod`: `HC = HA tan Dz` with `Dz = |φ − δ|`.
pub fn shadow_length<T: Real>(rod: T, phi: Angle<T>, delta: Angle<T>) -> Result<T> {
    let dz = (phi.radians() - delta.radians()).abs();
    if !(dz < T::FRAC_PI_2()) {
        return Err(GeoError::InfiniteShadow);
    }
    Ok(rod * dz.tan())
}

/// Sun declinations within the solstice band for which the noon shadow equals the rod.
pub fn equal_shadow_declinations<T: Real>(phi: Angle<T>) -> Vec<Angle<T>> {
    let q = T::FRAC_PI_4();
    let band = solstice_declination::<T>().radians();
    [phi.radians() - q, phi.radians() + q]
        .into_iter()
        .filter(|d| d.abs() <= band)
        .map(Angle::from_radians)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_4, PI};

    fn r(x: f64) -> Angle<f64> {
        Angle::from_radians(x)
    }

    fn d(x: f64) -> Angle<f64> {
        Angle::from_degrees(x)
    }

    #[test]
    fn octant_triangle() {
        let s = triangle_solve(&SphericalTriangle::sss(r(FRAC_PI_2), r(FRAC_PI_2), r(FRAC_PI_2))).unwrap();
        for a in s.angles {
            assert!((a - FRAC_PI_2).abs() < 1e-15);
        }
        assert!((s.excess().radians() - FRAC_PI_2).abs() < 1e-14);
    }

    #[test]
    fn right_triangle_hypotenuse() {
        let t = SphericalTriangle::new([None, None, Some(r(FRAC_PI_2))], [Some(r(FRAC_PI_3)), Some(r(FRAC_PI_4)), None]);
        let s = triangle_solve(&t).unwrap();
        let expect = (FRAC_PI_3.cos() * FRAC_PI_4.cos()).acos();
        assert!((s.sides[2] - expect).abs() < 1e-14);
        assert!(s.residual() < 1e-14);
    }

    #[test]
    fn every_datum_pattern_recovers_the_triangle() {
        let truth = triangle_solve(&SphericalTriangle::sss(r(0.9), r(1.2), r(0.7))).unwrap();
        let full = truth.to_triangle();
        let pick = |ang: [bool; 3], sid: [bool; 3]| {
            let mut t = SphericalTriangle::default();
            for i in 0..3 {
                t.angles[i] = if ang[i] { full.angles[i] } else { None };
                t.sides[i] = if sid[i] { full.sides[i] } else { None };
            }
            t
        };
        let cases = [
            ([true, false, false], [false, true, true]),
            ([true, true, true], [false, false, false]),
            ([false, true, true], [true, false, false]),
            ([true, false, false], [true, false, true]),
            ([true, false, true], [false, false, true]),
        ];
        for (ang, sid) in cases {
            match triangle_solve(&pick(ang, sid)) {
                Ok(s) => {
                    for i in 0..3 {
                        assert!((s.angles[i] - truth.angles[i]).abs() < 1e-12, "{ang:?} {sid:?}");
                        assert!((s.sides[i] - truth.sides[i]).abs() < 1e-12, "{ang:?} {sid:?}");
                    }
                    assert!(s.residual() < 1e-12);
                }
                Err(GeoError::UnsolvableTriangle(msg)) => assert!(msg.contains("ambiguous"), "{msg}"),
                Err(e) => panic!("{e}"),
            }
        }
    }

    #[test]
    fn missing_element_is_named() {
        let t = SphericalTriangle::new([Some(r(1.0)), None, None], [None, Some(r(0.5)), None]);
        let err = triangle_solve(&t).unwrap_err().to_string();
        assert!(err.contains("A, b") && err.contains("missing"), "{err}");
    }

    #[test]
    fn ambiguous_ssa_is_rejected() {
        // a < b with a small angle opposite a: two triangles.
        let t = SphericalTriangle::new([Some(r(0.4)), None, None], [Some(r(0.5)), Some(r(0.9)), None]);
        assert!(matches!(triangle_solve(&t), Err(GeoError::UnsolvableTriangle(m)) if m.contains("ambiguous")));
    }

    #[test]
    fn excess_limits() {
        let e = excess_from_two_sides(1e-3, 2e-3, r(1.0), 1.0).radians();
        assert!((e - 0.5 * 2e-6 * 1f64.sin()).abs() < 1e-12);
        let e = excess_lhuilier(r(1e-6), r(1e-6), r(1e-6)).radians();
        assert!(e < 1e-12);
    }

    #[test]
    fn square_examples() {
        let a = square_side(r(2.0 * PI / 3.0)).unwrap();
        assert!((a.radians() - (1.0f64 / 3.0).acos()).abs() < 1e-15);
        let near = square_side(r(PI - 1e-9)).unwrap();
        assert!((near.radians() - FRAC_PI_2).abs() < 1e-9);
        assert!(square_side(r(1.0)).is_err());
        assert!(square_side(r(PI)).is_err());
    }

    #[test]
    fn cassini_soldner_trivial_points() {
        let (l, h) = cassini_soldner_forward(r(0.0), r(0.0)).unwrap();
        assert_eq!((l.radians(), h.radians()), (0.0, 0.0));
        let (l, h) = cassini_soldner_forward(r(0.6), r(0.0)).unwrap();
        assert!((l.radians() - 0.6).abs() < 1e-15 && h.radians().abs() < 1e-15);
        assert_eq!(cassini_soldner_inverse(r(0.3), r(FRAC_PI_2)), Err(GeoError::SingularInverse));
    }

    #[test]
    fn setting_hour_angle() {
        for phi in [-1.0, 0.0, 0.7] {
            assert!((hour_angle_of_set(r(phi), r(0.0)).unwrap().radians() - FRAC_PI_2).abs() < 1e-15);
            assert!((hour_angle_of_set(r(0.0), r(phi)).unwrap().radians() - FRAC_PI_2).abs() < 1e-15);
        }
        assert_eq!(hour_angle_of_set(d(60.0), d(40.0)), Err(GeoError::Circumpolar(Circumpolar::NeverSets)));
        assert_eq!(hour_angle_of_set(d(60.0), d(-40.0)), Err(GeoError::Circumpolar(Circumpolar::NeverRises)));
    }

    #[test]
    fn southern_culmination() {
        let az = star_azimuth(d(45.0), d(10.0), r(0.0)).unwrap();
        assert!((az.radians() - PI).abs() < 1e-15);
        let z = zenith_distance(d(45.0), d(10.0), r(0.0));
        assert!((z.degrees() - 35.0).abs() < 1e-12);
        assert_eq!(star_azimuth(d(30.0), d(30.0), r(0.0)), Err(GeoError::UndefinedAzimuth));
    }

    #[test]
    fn sidereal_trivial_and_exact_subtraction() {
        let s = sidereal_chain(7.25, 0.0, 0.0, 7.25, false);
        assert_eq!(s.ah, 0.0);
        let ah = hour_angle_from_hsl("6h37m19.72s".parse().unwrap(), "2h13m52.90s".parse().unwrap());
        assert_eq!(ah, Hms::new(4, 23, 2682));
    }

    #[test]
    fn culmination_cases() {
        let c = culmination_altitudes(d(40.0), d(40.0)).unwrap();
        assert!((c.upper.radians() - FRAC_PI_2).abs() < 1e-15 && c.zenith);
        let c = culmination_altitudes(d(0.0), d(0.0)).unwrap();
        assert_eq!((c.upper.radians(), c.lower.radians()), (FRAC_PI_2, -FRAC_PI_2));
        assert!(!c.never_sets && !c.never_rises);
        let c = culmination_altitudes(d(50.0), d(45.0)).unwrap();
        assert!(c.never_sets);
        let c = culmination_altitudes(d(50.0), d(-45.0)).unwrap();
        assert!(c.never_rises);
    }

    #[test]
    fn shadow_cases() {
        assert_eq!(shadow_length(2.0, d(30.0), d(30.0)).unwrap(), 0.0);
        assert!((shadow_length(1.0, d(47.0), d(0.0)).unwrap() - 47f64.to_radians().tan()).abs() < 1e-15);
        assert_eq!(shadow_length(1.0, d(80.0), d(-23.45)), Err(GeoError::InfiniteShadow));
        let ds = equal_shadow_declinations(d(47.0));
        assert_eq!(ds.len(), 1);
        assert!((ds[0].degrees() - 2.0).abs() < 1e-12);
    }
}
