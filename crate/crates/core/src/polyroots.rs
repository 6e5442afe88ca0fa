//! Closed-form roots of cubic and quartic polynomials.

use num_complex::Complex;

use crate::scalar::{lit, Real};

/// Roots of `ξ³ + pξ + q = 0` by Cardano's formula (trigonometric form when all roots are real).
pub fn solve_cubic_cardan<T: Real>(p: T, q: T) -> [Complex<T>; 3] {
    let zero = T::zero();
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let half_q = q / two;
    let third_p = p / three;
    let disc = half_q * half_q + third_p * third_p * third_p;
    let mut roots = if p == zero && q == zero {
        [Complex::new(zero, zero); 3]
    } else if disc > zero {
        // One real root; pick the cube-root branch that avoids cancellation.
        let sq = disc.sqrt();
        let u = (-half_q - q.signum() * sq).cbrt();
        let v = if u == zero { zero } else { -third_p / u };
        let real = u + v;
        let im = lit::<T>(0.75).sqrt() * (u - v);
        let re = -real / two;
        [Complex::new(real, zero), Complex::new(re, im), Complex::new(re, -im)]
    } else {
        let r = two * (-third_p).sqrt();
        let arg = (lit::<T>(1.5) * q / p * (-three / p).sqrt()).max(-T::one()).min(T::one());
        let theta = arg.acos() / three;
        let step = T::TAU() / three;
        [0u8, 1, 2].map(|k| Complex::new(r * (theta - step * T::from_u8(k).unwrap()).cos(), zero))
    };
    let coeffs = [T::one(), zero, p, q];
    for r in &mut roots {
        *r = polish(&coeffs, *r, 2);
    }
    roots
}

/// Roots of `x⁴ + a₁x³ + a₂x² + a₃x + a₄ = 0`.
///
/// The depressed quartic in `y = x + a₁/4` is split as `2y = u + v + w`, where
/// `u², v², w²` solve `z³ + 2a₂′z² + (a₂′² − 4a₄′)z − a₃′² = 0` and `uvw = −a₃′`.
pub fn solve_quartic<T: Real>(a1: T, a2: T, a3: T, a4: T) -> [Complex<T>; 4] {
    let two = lit::<T>(2.0);
    let three = lit::<T>(3.0);
    let four = lit::<T>(4.0);
    let s = a1 / four;
    // Depressed coefficients.
    let p2 = a2 - lit::<T>(6.0) * s * s;
    let p3 = a3 - two * a2 * s + lit::<T>(8.0) * s * s * s;
    let p4 = a4 - a3 * s + a2 * s * s - three * s * s * s * s;
    // Resolvent z³ + Bz² + Cz + D shifted by ξ = z + B/3.
    let b = two * p2;
    let c = p2 * p2 - four * p4;
    let d = -p3 * p3;
    let cp = c - b * b / three;
    let cq = two * b * b * b / lit(27.0) - b * c / three + d;
    let zs = solve_cubic_cardan(cp, cq).map(|xi| xi - Complex::new(b / three, T::zero()));
    let zs = zs.map(|z| polish(&[T::one(), b, c, d], z, 2));
    let u = zs[0].sqrt();
    let v = zs[1].sqrt();
    let mut w = zs[2].sqrt();
    let target = Complex::new(-p3, T::zero());
    if (u * v * (-w) - target).norm() < (u * v * w - target).norm() {
        w = -w;
    }
    let half = lit::<T>(0.5);
    let shift = Complex::new(s, T::zero());
    let ys = [
        (u + v + w) * half,
        (u - v - w) * half,
        (-u + v - w) * half,
        (-u - v + w) * half,
    ];
    let coeffs = [T::one(), a1, a2, a3, a4];
    ys.map(|y| polish(&coeffs, y - shift, 3))
}

/// Evaluates a polynomial (highest degree first) and its derivative.
fn horner<T: Real>(coeffs: &[T], x: Complex<T>) -> (Complex<T>, Complex<T>) {
    let mut p = Complex::new(T::zero(), T::zero());
    let mut dp = p;
    for &c in coeffs {
        dp = dp * x + p;
        p = p * x + Complex::new(c, T::zero());
    }
    (p, dp)
}

/// A few Newton steps, kept only while they reduce the residual.
fn polish<T: Real>(coeffs: &[T], mut x: Complex<T>, steps: usize) -> Complex<T> {
    let (mut f, mut df) = horner(coeffs, x);
    for _ in 0..steps {
        if df.norm() == T::zero() || f.norm() == T::zero() {
            break;
        }
        let cand = x - f / df;
        let (f2, df2) = horner(coeffs, cand);
        if !(f2.norm() < f.norm()) {
            break;
        }
        x = cand;
        f = f2;
        df = df2;
    }
    x
}

/// Real parts of the roots whose imaginary part is below `tol·max(1, |root|)`.
pub fn real_roots<T: Real, const N: usize>(roots: &[Complex<T>; N], tol: T) -> Vec<T> {
    roots
        .iter()
        .filter(|r| r.im.abs() <= tol * T::one().max(r.norm()))
        .map(|r| r.re)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted_real(mut v: Vec<f64>) -> Vec<f64> {
        v.sort_by(|a, b| a.partial_cmp(b).unwrap());
        v
    }

    #[test]
    fn cubic_single_real_root() {
        let r = solve_cubic_cardan(0.0f64, -8.0);
        let real = real_roots(&r, 1e-12);
        assert_eq!(real.len(), 1);
        assert!((real[0] - 2.0).abs() < 1e-14);
    }

    #[test]
    fn cubic_three_distinct_roots() {
        let r = sorted_real(real_roots(&solve_cubic_cardan(-7.0, 6.0), 1e-12));
        for (x, e) in r.iter().zip([-3.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-13);
        }
    }

    #[test]
    fn cubic_double_root() {
        let r = sorted_real(real_roots(&solve_cubic_cardan(-3.0, 2.0), 1e-7));
        assert_eq!(r.len(), 3);
        for (x, e) in r.iter().zip([-2.0, 1.0, 1.0]) {
            assert!((x - e).abs() < 1e-7);
        }
    }

    #[test]
    fn cubic_residuals_small() {
        for &(p, q) in &[(1.0, 1.0), (-100.0, 3.0), (5e3, -2e4), (-1e-3, 1e-9), (0.0, 0.0)] {
            for z in solve_cubic_cardan(p, q) {
                let res = z * z * z + z * p + q;
                assert!(res.norm() < 1e-9 * f64::max(1.0, f64::abs(q)).max(f64::abs(p) * z.norm()), "{p} {q} {res}");
            }
        }
    }

    #[test]
    fn quartic_known_roots() {
        // (x-1)(x-2)(x+3)(x-4) = x⁴ - 4x³ - 7x² + 34x - 24
        let r = sorted_real(real_roots(&solve_quartic(-4.0, -7.0, 34.0, -24.0), 1e-10));
        for (x, e) in r.iter().zip([-3.0, 1.0, 2.0, 4.0]) {
            assert!((x - e).abs() < 1e-12, "{r:?}");
        }
        // x⁴ + 1: four complex roots on the unit circle.
        let r = solve_quartic(0.0f64, 0.0, 0.0, 1.0);
        for z in r {
            assert!((z.norm() - 1.0).abs() < 1e-14);
            assert!((z.powu(4) + 1.0).norm() < 1e-13);
        }
    }

    #[test]
    fn biquadratic_case() {
        // x⁴ - 5x² + 4: roots ±1, ±2, with a₃′ = 0.
        let r = sorted_real(real_roots(&solve_quartic(0.0, -5.0, 0.0, 4.0), 1e-10));
        for (x, e) in r.iter().zip([-2.0, -1.0, 1.0, 2.0]) {
            assert!((x - e).abs() < 1e-13);
        }
    }
}
