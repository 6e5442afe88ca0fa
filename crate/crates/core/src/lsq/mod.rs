//! Least-squares adjustment: weighted Gauss-Markov solves, Newton and Gauss-Newton iterations,
//! and the classical network problems built on them.

pub mod datum;
pub mod directions;
pub mod leveling;
pub mod triangle;

use crate::error::{GeoError, Result};
use crate::linalg::Matrix;
use crate::scalar::{lit, to_f64, Real};

pub use datum::{bursa_wolf_apply, bursa_wolf_fit, residual_rms, SevenParams};
pub use directions::{adjust_directions, adjust_directions_parametric, DirectionAdjustment, DirectionSet};
pub use leveling::{adjust_leveling, LevelingObservation, LevelingResult};
pub use triangle::{adjust_triangle, triangle_linear_model, Linearization, NormalizedUnits, TriangleAdjustment, TriangleObservations};

/// Relative pivot threshold on the equilibrated normal matrix.
pub const RANK_TOLERANCE: f64 = 1e-12;
/// Condition number above which a solve logs a warning.
pub const CONDITION_WARNING: f64 = 1e12;

/// Observation system `A X = L + V` with weight matrix `P`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearModel<T> {
    pub a: Matrix<T>,
    pub l: Vec<T>,
    pub p: Matrix<T>,
}

impl<T: Real> LinearModel<T> {
    pub fn new(a: Matrix<T>, l: Vec<T>, p: Matrix<T>) -> Result<Self> {
        let n = a.rows();
        if l.len() != n || p.rows() != n || p.cols() != n {
            return Err(GeoError::Dimension(format!(
                "A is {}x{}, L has {} entries, P is {}x{}",
                n,
                a.cols(),
                l.len(),
                p.rows(),
                p.cols()
            )));
        }
        if n < a.cols() {
            return Err(GeoError::Dimension(format!("{} observations for {} unknowns", n, a.cols())));
        }
        let tol = lit::<T>(1e-12) * p.max_abs();
        for i in 0..n {
            for j in 0..i {
                if (p[(i, j)] - p[(j, i)]).abs() > tol {
                    return Err(GeoError::Dimension("weight matrix is not symmetric".into()));
                }
            }
            if !(p[(i, i)] > T::zero()) {
                return Err(GeoError::OutOfRange { what: "weight", value: to_f64(p[(i, i)]) });
            }
        }
        Ok(LinearModel { a, l, p })
    }

    /// Uncorrelated observations with the given weights.
    pub fn diagonal(a: Matrix<T>, l: Vec<T>, weights: &[T]) -> Result<Self> {
        Self::new(a, l, Matrix::from_diagonal(weights))
    }

    pub fn observations(&self) -> usize {
        self.a.rows()
    }

    pub fn unknowns(&self) -> usize {
        self.a.cols()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct AdjustmentResult<T> {
    pub x: Vec<T>,
    /// `V = A X − L`.
    pub v: Vec<T>,
    /// `N = AᵀPA`.
    pub n: Matrix<T>,
    /// `VᵀPV / (n − u)`, zero when there is no redundancy.
    pub s2: T,
    /// `s² N⁻¹`.
    pub cov: Matrix<T>,
    /// Cofactor matrix `N⁻¹`.
    pub qxx: Matrix<T>,
    pub redundancy: usize,
    pub condition: T,
}

impl<T: Real> AdjustmentResult<T> {
    /// Largest `|AᵀPV|` relative to `max|AᵀP| · max|V|`.
    pub fn orthogonality(&self, m: &LinearModel<T>) -> T {
        let atp = &m.a.transpose() * &m.p;
        let g = atp.mul_vec(&self.v);
        let scale = atp.max_abs() * self.v.iter().fold(T::zero(), |a, x| a.max(x.abs()));
        let worst = g.iter().fold(T::zero(), |a, x| a.max(x.abs()));
        if scale > T::zero() {
            worst / scale
        } else {
            worst
        }
    }

    pub fn sigma(&self) -> Vec<T> {
        self.cov.diagonal().into_iter().map(|c| c.max(T::zero()).sqrt()).collect()
    }
}

/// Normal matrix solve with Jacobi equilibration `D N D`, `D = diag(N)^(-1/2)`.
struct NormalSolve<T> {
    qxx: Matrix<T>,
    x: Vec<T>,
    condition: T,
}

fn solve_normal<T: Real>(n: &Matrix<T>, rhs: &[T]) -> Result<NormalSolve<T>> {
    let u = n.rows();
    let d: Vec<T> = n
        .diagonal()
        .into_iter()
        .map(|x| if x > T::zero() { T::one() / x.sqrt() } else { T::one() })
        .collect();
    let ns = Matrix::from_fn(u, u, |i, j| d[i] * n[(i, j)] * d[j]);
    let (vals, vecs) = ns.symmetric_eigen();
    let (lo, hi) = (vals[0], vals[u - 1]);
    let singular_hint = || {
        let mut h: Vec<T> = (0..u).map(|i| d[i] * vecs[(i, 0)]).collect();
        let norm = h.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
        if norm > T::zero() {
            h.iter_mut().for_each(|x| *x = *x / norm);
        }
        GeoError::SingularNormalMatrix { hint: h.into_iter().map(to_f64).collect() }
    };
    let ch = ns.cholesky(lit(RANK_TOLERANCE)).ok_or_else(singular_hint)?;
    if !(lo > T::zero()) {
        return Err(singular_hint());
    }
    let condition = hi / lo;
    if condition > lit(CONDITION_WARNING) {
        log::warn!("normal matrix condition number {:.3e}", to_f64(condition));
    }
    let rs: Vec<T> = rhs.iter().zip(&d).map(|(&r, &di)| r * di).collect();
    let x = ch.solve(&rs).iter().zip(&d).map(|(&y, &di)| y * di).collect();
    let qs = ch.inverse();
    let qxx = Matrix::from_fn(u, u, |i, j| d[i] * qs[(i, j)] * d[j]);
    Ok(NormalSolve { qxx, x, condition })
}

/// Weighted least squares `X = N⁻¹AᵀPL`.
pub fn solve_wls<T: Real>(m: &LinearModel<T>) -> Result<AdjustmentResult<T>> {
    let at = m.a.transpose();
    let atp = &at * &m.p;
    let n = &atp * &m.a;
    let rhs = atp.mul_vec(&m.l);
    let sol = solve_normal(&n, &rhs)?;
    let v: Vec<T> = m.a.mul_vec(&sol.x).iter().zip(&m.l).map(|(&ax, &l)| ax - l).collect();
    let redundancy = m.observations() - m.unknowns();
    let s2 = if redundancy > 0 {
        m.p.bilinear(&v, &v) / lit(redundancy as f64)
    } else {
        T::zero()
    };
    Ok(AdjustmentResult { x: sol.x, v, cov: sol.qxx.scale(s2), qxx: sol.qxx, n, s2, redundancy, condition: sol.condition })
}

/// Objective with analytic gradient and Hessian.
pub trait Objective<T> {
    fn value(&self, x: &[T]) -> T;
    fn gradient(&self, x: &[T]) -> Vec<T>;
    fn hessian(&self, x: &[T]) -> Matrix<T>;
}

#[derive(Clone, Debug, PartialEq)]
pub struct NewtonResult<T> {
    pub x: Vec<T>,
    /// Every iterate, starting with `x0`.
    pub path: Vec<Vec<T>>,
    /// Iterations whose Hessian was not positive definite.
    pub indefinite: Vec<usize>,
}

/// Newton iteration `x ← x − H⁻¹∇f` until the step is below `tol`.
pub fn newton_minimize<T: Real>(
    f: &impl Objective<T>,
    x0: &[T],
    tol: T,
    max_iter: u32,
) -> Result<NewtonResult<T>> {
    let mut x = x0.to_vec();
    let mut path = vec![x.clone()];
    let mut indefinite = Vec::new();
    for it in 0..max_iter {
        let h = f.hessian(&x);
        let g = f.gradient(&x);
        let step = h.lu_solve(&g, lit(RANK_TOLERANCE)).ok_or_else(|| GeoError::SingularHessian {
            iteration: it,
            x: x.iter().map(|&v| to_f64(v)).collect(),
        })?;
        if h.cholesky(T::zero()).is_none() {
            log::warn!("Hessian is not positive definite at iteration {it}");
            indefinite.push(it as usize);
        }
        let mut size = T::zero();
        for (xi, si) in x.iter_mut().zip(&step) {
            *xi = *xi - *si;
            size = size.max(si.abs() / (T::one() + xi.abs()));
        }
        path.push(x.clone());
        if size <= tol {
            return Ok(NewtonResult { x, path, indefinite });
        }
    }
    Err(GeoError::NoConvergence(max_iter))
}

/// Nonlinear observation model `ζ(X) = L + V`.
pub trait ObservationModel<T: Real> {
    fn unknowns(&self) -> usize;
    fn eval(&self, x: &[T]) -> Vec<T>;

    /// `∂ζᵢ/∂Xⱼ`; central differences unless overridden.
    fn jacobian(&self, x: &[T]) -> Matrix<T> {
        let cols: Vec<Vec<T>> = (0..self.unknowns())
            .map(|j| {
                let h = crate::scalar::fd_step(1, x[j]);
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[j] = x[j] + h;
                xm[j] = x[j] - h;
                self.eval(&xp)
                    .iter()
                    .zip(self.eval(&xm))
                    .map(|(&p, m)| (p - m) / (h + h))
                    .collect()
            })
            .collect();
        Matrix::from_fn(cols.first().map_or(0, Vec::len), cols.len(), |i, j| cols[j][i])
    }

    /// Hessians `∂²ζₖ/∂Xᵢ∂Xⱼ`, one per observation; differences of the Jacobian unless overridden.
    fn second_derivatives(&self, x: &[T]) -> Vec<Matrix<T>> {
        let u = self.unknowns();
        let cols: Vec<Matrix<T>> = (0..u)
            .map(|j| {
                let h = crate::scalar::fd_step(1, x[j]);
                let mut xp = x.to_vec();
                let mut xm = x.to_vec();
                xp[j] = x[j] + h;
                xm[j] = x[j] - h;
                let (jp, jm) = (self.jacobian(&xp), self.jacobian(&xm));
                Matrix::from_fn(jp.rows(), u, |k, i| (jp[(k, i)] - jm[(k, i)]) / (h + h))
            })
            .collect();
        let n = cols.first().map_or(0, Matrix::rows);
        (0..n)
            .map(|k| {
                let m = Matrix::from_fn(u, u, |i, j| cols[j][(k, i)]);
                Matrix::from_fn(u, u, |i, j| (m[(i, j)] + m[(j, i)]) / lit(2.0))
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct GaussNewtonResult<T> {
    /// Linearized adjustment at the solution: `x` holds the estimates and `v = ζ(X) − L`.
    pub adjustment: AdjustmentResult<T>,
    pub iterations: u32,
    /// Weighted Gram matrix of the Jacobian columns.
    pub g: Matrix<T>,
    /// `g − Σₖ pₖ (L − ζ)ₖ ∂²ζₖ`, the Hessian of `½‖L − ζ‖²_P`.
    pub b: Matrix<T>,
}

/// `g(X)` with `gᵢⱼ = ⟨∂ζ/∂Xᵢ, ∂ζ/∂Xⱼ⟩_P`.
pub fn gram_matrix<T: Real>(model: &impl ObservationModel<T>, x: &[T], p: &Matrix<T>) -> Matrix<T> {
    let j = model.jacobian(x);
    &(&j.transpose() * p) * &j
}

/// `B(X, L)` with `Bᵢⱼ = gᵢⱼ − ⟨L − ζ(X), ∂²ζ/∂Xᵢ∂Xⱼ⟩_P`.
pub fn b_matrix<T: Real>(model: &impl ObservationModel<T>, x: &[T], l: &[T], p: &Matrix<T>) -> Matrix<T> {
    let mut b = gram_matrix(model, x, p);
    let r: Vec<T> = l.iter().zip(model.eval(x)).map(|(&li, z)| li - z).collect();
    let pr = p.mul_vec(&r);
    for (k, hk) in model.second_derivatives(x).iter().enumerate() {
        for i in 0..b.rows() {
            for j in 0..b.cols() {
                b[(i, j)] = b[(i, j)] - pr[k] * hk[(i, j)];
            }
        }
    }
    b
}

/// Gauss-Newton iteration on `ζ(X) = L + V` until the relative step is below `tol`.
pub fn gauss_newton<T: Real>(
    model: &impl ObservationModel<T>,
    l: &[T],
    p: &Matrix<T>,
    x0: &[T],
    tol: T,
    max_iter: u32,
) -> Result<GaussNewtonResult<T>> {
    if x0.len() != model.unknowns() {
        return Err(GeoError::Dimension(format!("{} start values for {} unknowns", x0.len(), model.unknowns())));
    }
    let mut x = x0.to_vec();
    for it in 1..=max_iter {
        let misclosure: Vec<T> = l.iter().zip(model.eval(&x)).map(|(&li, z)| li - z).collect();
        let lin = LinearModel::new(model.jacobian(&x), misclosure, p.clone())?;
        let step = solve_wls(&lin)?;
        let mut size = T::zero();
        for (xi, dx) in x.iter_mut().zip(&step.x) {
            *xi = *xi + *dx;
            size = size.max(dx.abs() / (T::one() + xi.abs()));
        }
        if size <= tol {
            let z = model.eval(&x);
            let misclosure: Vec<T> = l.iter().zip(&z).map(|(&li, &zi)| li - zi).collect();
            let lin = LinearModel::new(model.jacobian(&x), misclosure, p.clone())?;
            let mut adjustment = solve_wls(&lin)?;
            adjustment.v = z.iter().zip(l).map(|(&zi, &li)| zi - li).collect();
            let r = adjustment.redundancy;
            adjustment.s2 = if r > 0 { p.bilinear(&adjustment.v, &adjustment.v) / lit(r as f64) } else { T::zero() };
            adjustment.cov = adjustment.qxx.scale(adjustment.s2);
            adjustment.x = x.clone();
            let g = gram_matrix(model, &x, p);
            let b = b_matrix(model, &x, l, p);
            return Ok(GaussNewtonResult { adjustment, iterations: it, g, b });
        }
    }
    Err(GeoError::NoConvergence(max_iter))
}

/// Plane trilateration with `ζᵢ(X) = ½‖X − Pᵢ‖²`, to be fed `Lᵢ = Dᵢ²/2`.
#[derive(Clone, Debug, PartialEq)]
pub struct Trilateration<T> {
    pub anchors: Vec<(T, T)>,
}

impl<T: Real> ObservationModel<T> for Trilateration<T> {
    fn unknowns(&self) -> usize {
        2
    }

    fn eval(&self, x: &[T]) -> Vec<T> {
        self.anchors
            .iter()
            .map(|&(a, b)| ((x[0] - a).powi(2) + (x[1] - b).powi(2)) / lit(2.0))
            .collect()
    }

    fn jacobian(&self, x: &[T]) -> Matrix<T> {
        Matrix::from_fn(self.anchors.len(), 2, |i, j| {
            let (a, b) = self.anchors[i];
            if j == 0 {
                x[0] - a
            } else {
                x[1] - b
            }
        })
    }

    fn second_derivatives(&self, _x: &[T]) -> Vec<Matrix<T>> {
        vec![Matrix::identity(2); self.anchors.len()]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        (a - b).abs() <= tol
    }

    #[test]
    fn consistent_system_has_zero_variance() {
        let a = Matrix::from_rows(&[vec![1.0f64, 0.0], vec![0.0, 1.0], vec![1.0, 1.0]]);
        let m = LinearModel::diagonal(a, vec![2.0, 3.0, 5.0], &[1.0, 2.0, 3.0]).unwrap();
        let r = solve_wls(&m).unwrap();
        assert!(close(r.x[0], 2.0, 1e-14) && close(r.x[1], 3.0, 1e-14));
        assert!(r.s2.abs() < 1e-28);
        assert_eq!(r.redundancy, 1);
    }

    #[test]
    fn residuals_are_orthogonal() {
        let a = Matrix::from_rows(&[vec![1.0f64, 6.0], vec![1.0, 10.0], vec![1.0, 14.0], vec![1.0, 18.0]]);
        let m = LinearModel::diagonal(a, vec![1.0, 0.4, 0.3, -0.1], &[1.0, 2.0, 0.5, 1.0]).unwrap();
        let r = solve_wls(&m).unwrap();
        assert!(r.orthogonality(&m) < 1e-12);
        assert!(r.s2 > 0.0);
        for i in 0..2 {
            assert!(r.cov[(i, i)] >= 0.0);
        }
    }

    #[test]
    fn rank_deficiency_reports_null_space() {
        let a = Matrix::from_rows(&[vec![1.0f64, 1.0], vec![2.0, 2.0], vec![3.0, 3.0]]);
        let m = LinearModel::diagonal(a, vec![1.0, 2.0, 3.0], &[1.0; 3]).unwrap();
        match solve_wls(&m) {
            Err(GeoError::SingularNormalMatrix { hint }) => {
                assert!(close(hint[0].abs(), 0.5f64.sqrt(), 1e-9));
                assert!(close(hint[0], -hint[1], 1e-9));
            }
            other => panic!("expected a singular normal matrix, got {other:?}"),
        }
    }

    #[test]
    fn rejects_bad_shapes() {
        let a = Matrix::from_rows(&[vec![1.0f64, 0.0]]);
        assert!(LinearModel::diagonal(a.clone(), vec![1.0], &[1.0]).is_err());
        let a = Matrix::from_rows(&[vec![1.0f64], vec![1.0]]);
        assert!(LinearModel::diagonal(a.clone(), vec![1.0], &[1.0, 1.0]).is_err());
        assert!(LinearModel::diagonal(a, vec![1.0, 1.0], &[1.0, 0.0]).is_err());
    }

    struct Bowl;

    impl Objective<f64> for Bowl {
        fn value(&self, x: &[f64]) -> f64 {
            2.0 * (x[0] - 1.0).powi(2) + (x[0] - 1.0) * (x[1] + 2.0) + (x[1] + 2.0).powi(2)
        }
        fn gradient(&self, x: &[f64]) -> Vec<f64> {
            vec![4.0 * (x[0] - 1.0) + (x[1] + 2.0), (x[0] - 1.0) + 2.0 * (x[1] + 2.0)]
        }
        fn hessian(&self, _x: &[f64]) -> Matrix<f64> {
            Matrix::from_rows(&[vec![4.0, 1.0], vec![1.0, 2.0]])
        }
    }

    #[test]
    fn quadratic_bowl_in_one_step() {
        let r = newton_minimize(&Bowl, &[40.0, -7.0], 1e-14, 5).unwrap();
        assert!(close(r.path[1][0], 1.0, 1e-12) && close(r.path[1][1], -2.0, 1e-12));
        assert!(r.indefinite.is_empty());
        assert!(Bowl.value(&r.x) < 1e-24);
    }

    #[test]
    fn exact_trilateration() {
        let t = Trilateration { anchors: vec![(0.0f64, 0.0), (1000.0, 0.0), (300.0, 800.0)] };
        let truth = [420.0, 310.0];
        let l = t.eval(&truth);
        let r = gauss_newton(&t, &l, &Matrix::identity(3), &[500.0, 500.0], 1e-15, 30).unwrap();
        assert!(close(r.adjustment.x[0], 420.0, 1e-10) && close(r.adjustment.x[1], 310.0, 1e-10));
        assert!(r.adjustment.v.iter().all(|v| v.abs() < 1e-8));
        // With zero residual B reduces to the Gram matrix.
        assert!(close(r.b[(0, 1)], r.g[(0, 1)], 1e-6));
    }

    #[test]
    fn default_derivatives_match_analytic() {
        struct Numeric(Trilateration<f64>);
        impl ObservationModel<f64> for Numeric {
            fn unknowns(&self) -> usize {
                2
            }
            fn eval(&self, x: &[f64]) -> Vec<f64> {
                self.0.eval(x)
            }
        }
        let t = Trilateration { anchors: vec![(0.0f64, 0.0), (1000.0, 0.0), (300.0, 800.0)] };
        let x = [420.0, 310.0];
        let (ja, jn) = (t.jacobian(&x), Numeric(t.clone()).jacobian(&x));
        for i in 0..3 {
            for j in 0..2 {
                assert!((ja[(i, j)] - jn[(i, j)]).abs() <= 1e-6 * ja[(i, j)].abs().max(1.0));
            }
        }
        for h in Numeric(t).second_derivatives(&x) {
            assert!(close(h[(0, 0)], 1.0, 1e-3) && close(h[(0, 1)], 0.0, 1e-3));
        }
    }
}
