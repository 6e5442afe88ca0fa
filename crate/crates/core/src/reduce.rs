//! Reduction of measured slope distances to the ellipsoid and to the projection plane.

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::scalar::{lit, to_f64, Real};

/// Mean Earth radius used by the distance reductions unless overridden, in metres.
pub const DEFAULT_EARTH_RADIUS: f64 = 6_378_000.0;

/// A slope distance between two stations of known altitude.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceObservation<T> {
    pub dp: T,
    pub ha: T,
    pub hb: T,
    /// Site (elevation) angle observed at A towards B.
    pub site_angle: Option<Angle<T>>,
    pub r: T,
}

impl<T: Real> DistanceObservation<T> {
    pub fn new(dp: T, ha: T, hb: T) -> Result<Self> {
        Self::with_radius(dp, ha, hb, lit(DEFAULT_EARTH_RADIUS))
    }

    pub fn with_radius(dp: T, ha: T, hb: T, r: T) -> Result<Self> {
        if !(r > T::zero()) {
            return Err(GeoError::OutOfRange { what: "Earth radius", value: to_f64(r) });
        }
        if !(dp > (hb - ha).abs()) {
            return Err(GeoError::InconsistentObservation(format!(
                "slope distance {} m does not exceed the height difference {} m",
                to_f64(dp),
                to_f64((hb - ha).abs())
            )));
        }
        Ok(DistanceObservation { dp, ha, hb, site_angle: None, r })
    }

    #[must_use]
    pub fn with_site_angle(mut self, i: Angle<T>) -> Self {
        self.site_angle = Some(i);
        self
    }

    fn level_factor(&self) -> T {
        ((T::one() + self.ha / self.r) * (T::one() + self.hb / self.r)).sqrt()
    }
}

/// Chord at the reference level and the matching arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Reduction<T> {
    pub d0: T,
    pub de: T,
}

/// Chord `D₀` to arc `Dₑ = 2R asin(D₀/2R)`.
pub fn chord_to_arc<T: Real>(d0: T, r: T) -> Result<T> {
    let s = d0 / (lit::<T>(2.0) * r);
    if !(s.abs() <= T::one()) {
        return Err(GeoError::InconsistentObservation("chord longer than the Earth's diameter".into()));
    }
    Ok(lit::<T>(2.0) * r * s.asin())
}

/// `D₀ = √[(Dp² − ΔH²) / ((1 + H_A/R)(1 + H_B/R))]`, `Dₑ = 2R asin(D₀/2R)`.
pub fn reduce_rigorous<T: Real>(obs: &DistanceObservation<T>) -> Result<Reduction<T>> {
    let dh = obs.hb - obs.ha;
    let rad = (obs.dp - dh) * (obs.dp + dh);
    if !(rad > T::zero()) {
        return Err(GeoError::InconsistentObservation("negative radicand in the chord formula".into()));
    }
    let d0 = rad.sqrt() / obs.level_factor();
    Ok(Reduction { d0, de: chord_to_arc(d0, obs.r)? })
}

/// Same chord formula fed with the horizontal distance `Dp cos i` from the site angle.
pub fn reduce_with_site_angle<T: Real>(obs: &DistanceObservation<T>) -> Result<Reduction<T>> {
    let i = obs
        .site_angle
        .ok_or_else(|| GeoError::InconsistentObservation("no site angle was observed".into()))?;
    let d0 = obs.dp * i.cos() / obs.level_factor();
    Ok(Reduction { d0, de: chord_to_arc(d0, obs.r)? })
}

/// The classical correction terms and their running sums.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Corrections<T> {
    /// `−ΔH²/(2Dp)`.
    pub slope: T,
    /// `−Dp·Hm/R`, `Hm` the mean altitude.
    pub level: T,
    /// `+Dp³/(24R²)`.
    pub arc: T,
    pub d0: T,
    pub de: T,
}

pub fn reduce_by_corrections<T: Real>(obs: &DistanceObservation<T>) -> Result<Corrections<T>> {
    let dh = obs.hb - obs.ha;
    let dp = obs.dp;
    let two = lit::<T>(2.0);
    let slope = -dh * dh / (two * dp);
    let level = -dp * (obs.ha + obs.hb) / two / obs.r;
    let arc = dp * dp * dp / (lit::<T>(24.0) * obs.r * obs.r);
    let d0 = dp + slope + level;
    if !(d0 > T::zero()) {
        return Err(GeoError::InconsistentObservation("corrections exceed the distance".into()));
    }
    Ok(Corrections { slope, level, arc, d0, de: d0 + arc })
}

/// Both methods and the adopted mean chord and arc.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CombinedReduction<T> {
    pub rigorous: Reduction<T>,
    pub corrections: Corrections<T>,
    pub d0_mean: T,
    pub de_mean: T,
}

pub fn reduce_mean<T: Real>(obs: &DistanceObservation<T>) -> Result<CombinedReduction<T>> {
    let rigorous = reduce_rigorous(obs)?;
    let corrections = reduce_by_corrections(obs)?;
    let d0_mean = (rigorous.d0 + corrections.d0) / lit(2.0);
    Ok(CombinedReduction { rigorous, corrections, d0_mean, de_mean: chord_to_arc(d0_mean, obs.r)? })
}

/// Scale of the plane representation near the line.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum GridScale<T> {
    /// Linear modulus `m`.
    Module(T),
    /// Linear alteration in cm/km; `m = 1 + value·1e-5`.
    AlterationCmPerKm(T),
}

impl<T: Real> GridScale<T> {
    pub fn modulus(self) -> T {
        match self {
            GridScale::Module(m) => m,
            GridScale::AlterationCmPerKm(a) => T::one() + a * lit(1e-5),
        }
    }
}

/// `Dr = m·Dₑ`.
pub fn to_grid<T: Real>(de: T, scale: GridScale<T>) -> T {
    scale.modulus() * de
}

/// Slope distance that reduces to the plane distance `dr`, undoing [`to_grid`] and [`reduce_rigorous`].
pub fn slope_from_grid<T: Real>(dr: T, scale: GridScale<T>, ha: T, hb: T, r: T) -> Result<T> {
    let m = scale.modulus();
    if !(m > T::zero()) {
        return Err(GeoError::OutOfRange { what: "linear modulus", value: to_f64(m) });
    }
    let de = dr / m;
    let d0 = lit::<T>(2.0) * r * (de / (lit::<T>(2.0) * r)).sin();
    let dh = hb - ha;
    Ok((d0 * d0 * (T::one() + ha / r) * (T::one() + hb / r) + dh * dh).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn flat_level_line() {
        let obs = DistanceObservation::new(10_000.0f64, 0.0, 0.0).unwrap();
        let red = reduce_rigorous(&obs).unwrap();
        assert_eq!(red.d0, 10_000.0);
        assert!((red.de - 2.0 * 6_378_000.0 * (10_000.0f64 / 12_756_000.0).asin()).abs() < 1e-9);
        let c = reduce_by_corrections(&obs).unwrap();
        assert!((c.de - (1e4 + 1e12 / (24.0 * 6_378_000.0f64.powi(2)))).abs() < 1e-9);
    }

    #[test]
    fn bad_observations() {
        assert!(DistanceObservation::new(100.0, 0.0, 150.0).is_err());
        assert!(DistanceObservation::with_radius(100.0, 0.0, 1.0, 0.0).is_err());
        let obs = DistanceObservation::new(100.0, 0.0, 1.0).unwrap();
        assert!(reduce_with_site_angle(&obs).is_err());
    }

    #[test]
    fn alteration_convention() {
        assert!((GridScale::AlterationCmPerKm(-9.0f64).modulus() - 0.99991).abs() < 1e-15);
        assert_eq!(to_grid(1000.0, GridScale::Module(1.0)), 1000.0);
    }

    #[test]
    fn grid_chain_inverts() {
        let obs = DistanceObservation::new(16_483.873f64, 1_319.79, 1_025.34).unwrap();
        let scale = GridScale::AlterationCmPerKm(-14.0);
        let dr = to_grid(reduce_rigorous(&obs).unwrap().de, scale);
        let back = slope_from_grid(dr, scale, obs.ha, obs.hb, obs.r).unwrap();
        assert!((back - obs.dp).abs() < 1e-7);
    }
}
