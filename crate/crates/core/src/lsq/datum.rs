//! Seven-parameter Burša-Wolf similarity between two geocentric frames.

use std::fmt;

use crate::error::{GeoError, Result};
use crate::linalg::Matrix;
use crate::scalar::{lit, to_f64, Real};
use crate::vec3::Vec3;

use super::{solve_wls, AdjustmentResult, LinearModel};

/// Largest rotation for which the linearized rotation matrix is accepted, in radians.
pub const SMALL_ANGLE_LIMIT: f64 = 1e-3;

/// `X₂ = X₁ + T + s·X₁ + R × X₁` with `s = scale_ppm·10⁻⁶` and `R = (rx, ry, rz)`.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct SevenParams<T> {
    pub tx: T,
    pub ty: T,
    pub tz: T,
    pub scale_ppm: T,
    pub rx: T,
    pub ry: T,
    pub rz: T,
}

impl<T: Real> SevenParams<T> {
    pub fn new(t: [T; 3], scale_ppm: T, r: [T; 3]) -> Result<Self> {
        let limit = lit::<T>(SMALL_ANGLE_LIMIT);
        if let Some(&bad) = r.iter().find(|x| !(x.abs() < limit)) {
            return Err(GeoError::OutOfRange { what: "rotation (small-angle model)", value: to_f64(bad) });
        }
        Ok(SevenParams { tx: t[0], ty: t[1], tz: t[2], scale_ppm, rx: r[0], ry: r[1], rz: r[2] })
    }

    pub fn translation(&self) -> Vec3<T> {
        Vec3::new(self.tx, self.ty, self.tz)
    }

    pub fn rotation(&self) -> Vec3<T> {
        Vec3::new(self.rx, self.ry, self.rz)
    }

    fn as_vec(&self) -> [T; 7] {
        [self.tx, self.ty, self.tz, self.scale_ppm, self.rx, self.ry, self.rz]
    }
}

impl<T: Real> fmt::Display for SevenParams<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arcsec = |r: T| to_f64(r).to_degrees() * 3600.0;
        write!(
            f,
            "tx={:.4} m ty={:.4} m tz={:.4} m scale={:.4} ppm rx={:.5}\" ry={:.5}\" rz={:.5}\" (X2 = X1 + T + sX1 + RxX1)",
            to_f64(self.tx),
            to_f64(self.ty),
            to_f64(self.tz),
            to_f64(self.scale_ppm),
            arcsec(self.rx),
            arcsec(self.ry),
            arcsec(self.rz)
        )
    }
}

pub fn bursa_wolf_apply<T: Real>(p: &SevenParams<T>, c: Vec3<T>) -> Vec3<T> {
    c + p.translation() + c * (p.scale_ppm * lit(1e-6)) + p.rotation().cross(c)
}

/// Design rows of one point: unknowns `(tx, ty, tz, scale_ppm, rx, ry, rz)`.
fn rows<T: Real>(c: Vec3<T>) -> [Vec<T>; 3] {
    let (o, z) = (T::one(), T::zero());
    let k = lit::<T>(1e-6);
    [
        vec![o, z, z, c.x * k, z, c.z, -c.y],
        vec![z, o, z, c.y * k, -c.z, z, c.x],
        vec![z, z, o, c.z * k, c.y, -c.x, z],
    ]
}

/// Least-squares fit on common points `(S1, S2)`, equal weights.
pub fn bursa_wolf_fit<T: Real>(common: &[(Vec3<T>, Vec3<T>)]) -> Result<(SevenParams<T>, AdjustmentResult<T>)> {
    if common.len() < 3 {
        return Err(GeoError::Dimension(format!("{} common points, at least 3 needed", common.len())));
    }
    let mut a = Vec::with_capacity(3 * common.len());
    let mut l = Vec::with_capacity(3 * common.len());
    for &(c1, c2) in common {
        a.extend(rows(c1));
        let d = c2 - c1;
        l.extend([d.x, d.y, d.z]);
    }
    let n = l.len();
    let m = LinearModel::diagonal(Matrix::from_rows(&a), l, &vec![T::one(); n])?;
    let r = solve_wls(&m)?;
    let x = &r.x;
    let p = SevenParams::new([x[0], x[1], x[2]], x[3], [x[4], x[5], x[6]])?;
    Ok((p, r))
}

/// Root mean square of the 3D residuals of `p` on the common points.
pub fn residual_rms<T: Real>(p: &SevenParams<T>, common: &[(Vec3<T>, Vec3<T>)]) -> T {
    let ss = common
        .iter()
        .map(|&(c1, c2)| {
            let d = bursa_wolf_apply(p, c1) - c2;
            d.dot(d)
        })
        .fold(T::zero(), |a, x| a + x);
    (ss / lit(common.len() as f64)).sqrt()
}

impl<T: Real> From<SevenParams<T>> for Vec<T> {
    fn from(p: SevenParams<T>) -> Vec<T> {
        p.as_vec().to_vec()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts() -> Vec<Vec3<f64>> {
        vec![
            Vec3::new(4_300_244.860, 1_062_094.681, 4_574_775.629),
            Vec3::new(4_277_737.502, 1_115_558.251, 4_582_961.996),
            Vec3::new(4_276_816.431, 1_081_197.897, 4_591_886.356),
            Vec3::new(4_217_271.349, 1_193_915.699, 4_618_635.464),
        ]
    }

    #[test]
    fn identical_frames() {
        let c: Vec<_> = pts().into_iter().map(|p| (p, p)).collect();
        let (p, r) = bursa_wolf_fit(&c).unwrap();
        for v in Vec::from(p) {
            assert!(v.abs() < 1e-9);
        }
        assert!(r.s2 < 1e-18);
    }

    #[test]
    fn recovers_synthetic_parameters() {
        let truth = SevenParams::new([12.0, -7.5, 3.25], 1.7, [2e-6, -3e-6, 1.5e-6]).unwrap();
        let c: Vec<_> = pts().into_iter().map(|p| (p, bursa_wolf_apply(&truth, p))).collect();
        let (p, r) = bursa_wolf_fit(&c).unwrap();
        assert!((p.tx - 12.0).abs() < 1e-4 && (p.scale_ppm - 1.7).abs() < 1e-7);
        assert!((p.rz - 1.5e-6).abs() < 1e-11);
        assert!(residual_rms(&p, &c) < 1e-6);
        assert_eq!(r.redundancy, 5);
    }

    #[test]
    fn collinear_points_are_rank_deficient() {
        let a = Vec3::new(4_300_000.0f64, 1_000_000.0, 4_500_000.0);
        let d = Vec3::new(100.0, 50.0, -80.0);
        let c: Vec<_> = (0..4).map(|k| {
            let p = a + d * (k as f64);
            (p, p)
        }).collect();
        assert!(matches!(bursa_wolf_fit(&c), Err(GeoError::SingularNormalMatrix { .. })));
    }

    #[test]
    fn large_rotation_rejected() {
        assert!(SevenParams::new([0.0f64; 3], 0.0, [0.0, 0.01, 0.0]).is_err());
    }
}
