//! Adaptive Gauss-Kronrod (7/15) quadrature.

use crate::scalar::{lit, Real};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T) -> (T, T) {
    let half = lit::<T>(0.5);
    let c = (a + b) * half;
    let h = (b - a) * half;
    let fc = f(c);
    let mut k = fc * lit(WGK[7]);
    let mut g = fc * lit(WG[3]);
    for j in 0..7 {
        let dx = h * lit(XGK[j]);
        let s = f(c - dx) + f(c + dx);
        k = k + s * lit(WGK[j]);
        if j % 2 == 1 {
            g = g + s * lit(WG[j / 2]);
        }
    }
    (k * h, ((k - g) * h).abs())
}

/// Integrates `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<T: Real, F: Fn(T) -> T>(f: F, a: T, b: T, tol: T) -> T {
    fn rec<T: Real, F: Fn(T) -> T>(f: &F, a: T, b: T, tol: T, depth: u32) -> T {
        let (v, err) = gk15(f, a, b);
        if err <= tol || depth == 0 {
            return v;
        }
        let m = (a + b) * lit(0.5);
        rec(f, a, m, tol * lit(0.5), depth - 1) + rec(f, m, b, tol * lit(0.5), depth - 1)
    }
    rec(&f, a, b, tol, 40)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_smooth_functions() {
        let v = integrate(|x: f64| x.sin(), 0.0, std::f64::consts::PI, 1e-13);
        assert!((v - 2.0).abs() < 1e-13);
        let v = integrate(|x: f64| (-x * x).exp(), -6.0, 6.0, 1e-13);
        assert!((v - std::f64::consts::PI.sqrt()).abs() < 1e-12);
    }
}
