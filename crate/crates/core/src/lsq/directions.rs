//! Adjustment of horizontal direction sets in a plane triangulation.

use crate::angle::Angle;
use crate::error::{GeoError, Result};
use crate::linalg::Matrix;
use crate::scalar::{lit, Real};

use super::{gauss_newton, ObservationModel};

/// Directions read at one station, each towards a named target.
#[derive(Clone, Debug, PartialEq)]
pub struct DirectionSet<T> {
    pub station: String,
    pub targets: Vec<(String, Angle<T>)>,
}

impl<T: Real> DirectionSet<T> {
    pub fn new(station: impl Into<String>, targets: Vec<(&str, Angle<T>)>) -> Self {
        DirectionSet {
            station: station.into(),
            targets: targets.into_iter().map(|(t, a)| (t.to_string(), a)).collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DirectionAdjustment<T> {
    /// `(station, target)` of each observation, in input order.
    pub lines: Vec<(String, String)>,
    pub observed: Vec<Angle<T>>,
    pub adjusted: Vec<Angle<T>>,
    /// Corrections in radians.
    pub residuals: Vec<T>,
    /// Cofactors of the adjusted directions, unit weight being one direction.
    pub q_adjusted: Matrix<T>,
    pub redundancy: usize,
    /// `VᵀV / r` in rad².
    pub s2: T,
    /// `s² / σ²`.
    pub s2_ratio: T,
}

impl<T: Real> DirectionAdjustment<T> {
    fn index(&self, station: &str, target: &str) -> Result<usize> {
        self.lines
            .iter()
            .position(|(s, t)| s == station && t == target)
            .ok_or_else(|| GeoError::InconsistentObservation(format!("no direction {station} -> {target}")))
    }

    pub fn direction(&self, station: &str, target: &str) -> Result<Angle<T>> {
        Ok(self.adjusted[self.index(station, target)?])
    }

    /// Adjusted angle at `station` turned clockwise from `from` to `to`.
    pub fn angle(&self, station: &str, from: &str, to: &str) -> Result<Angle<T>> {
        Ok((self.direction(station, to)? - self.direction(station, from)?).normalized())
    }

    /// Weight of that angle, one direction having unit weight.
    pub fn angle_weight(&self, station: &str, from: &str, to: &str) -> Result<T> {
        let (i, j) = (self.index(station, from)?, self.index(station, to)?);
        let q = &self.q_adjusted;
        Ok(T::one() / (q[(i, i)] + q[(j, j)] - lit::<T>(2.0) * q[(i, j)]))
    }

    pub fn direction_weight(&self, station: &str, target: &str) -> Result<T> {
        let i = self.index(station, target)?;
        Ok(T::one() / self.q_adjusted[(i, i)])
    }
}

struct Network<T> {
    points: Vec<String>,
    stations: Vec<usize>,
    /// `(station index into points, target index, observed direction)`.
    obs: Vec<(usize, usize, Angle<T>)>,
}

impl<T: Real> Network<T> {
    fn build(sets: &[DirectionSet<T>]) -> Result<Self> {
        let mut points: Vec<String> = Vec::new();
        let id = |name: &str, points: &mut Vec<String>| match points.iter().position(|p| p == name) {
            Some(i) => i,
            None => {
                points.push(name.to_string());
                points.len() - 1
            }
        };
        let mut stations = Vec::new();
        let mut obs = Vec::new();
        for set in sets {
            let s = id(&set.station, &mut points);
            if stations.contains(&s) {
                return Err(GeoError::InconsistentObservation(format!("station {} appears twice", set.station)));
            }
            stations.push(s);
            for (t, d) in &set.targets {
                let t = id(t, &mut points);
                if t == s {
                    return Err(GeoError::InconsistentObservation(format!("{} sights itself", set.station)));
                }
                obs.push((s, t, *d));
            }
        }
        Ok(Network { points, stations, obs })
    }

    fn find(&self, s: usize, t: usize) -> Option<usize> {
        self.obs.iter().position(|&(a, b, _)| a == s && b == t)
    }

    /// Observations minus orientation unknowns minus the plane shape freedoms.
    fn expected_redundancy(&self) -> Result<usize> {
        let u = (self.stations.len() + 2 * self.points.len()).saturating_sub(4);
        self.obs.len().checked_sub(u).ok_or_else(|| {
            GeoError::InconsistentObservation(format!("{} directions for {} unknowns", self.obs.len(), u))
        })
    }

    fn lines(&self) -> Vec<(String, String)> {
        self.obs.iter().map(|&(s, t, _)| (self.points[s].clone(), self.points[t].clone())).collect()
    }
}

/// Angle-closure condition of every fully observed triangle: coefficient row and misclosure.
fn closure_conditions<T: Real>(net: &Network<T>) -> Vec<(Vec<T>, T)> {
    let n = net.points.len();
    let mut out = Vec::new();
    for x in 0..n {
        for y in x + 1..n {
            for z in y + 1..n {
                let tri = [x, y, z];
                let mut row = vec![T::zero(); net.obs.len()];
                let mut sum = T::zero();
                let mut complete = true;
                for k in 0..3 {
                    let (v, p, q) = (tri[k], tri[(k + 1) % 3], tri[(k + 2) % 3]);
                    let (Some(ip), Some(iq)) = (net.find(v, p), net.find(v, q)) else {
                        complete = false;
                        break;
                    };
                    let d = (net.obs[iq].2 - net.obs[ip].2).normalized();
                    let (from, to, ang) = if d.radians() < T::PI() {
                        (ip, iq, d)
                    } else {
                        (iq, ip, (net.obs[ip].2 - net.obs[iq].2).normalized())
                    };
                    row[to] = row[to] + T::one();
                    row[from] = row[from] - T::one();
                    sum = sum + ang.radians();
                }
                if complete {
                    out.push((row, sum - T::PI()));
                }
            }
        }
    }
    out
}

/// Keeps the rows that raise the rank, by Gram-Schmidt.
fn independent<T: Real>(rows: Vec<(Vec<T>, T)>) -> Vec<(Vec<T>, T)> {
    let mut basis: Vec<Vec<T>> = Vec::new();
    let mut keep = Vec::new();
    for (row, w) in rows {
        let mut r = row.clone();
        for b in &basis {
            let c = r.iter().zip(b).fold(T::zero(), |a, (&x, &y)| a + x * y);
            r.iter_mut().zip(b).for_each(|(x, &y)| *x = *x - c * y);
        }
        let norm = r.iter().fold(T::zero(), |a, &x| a + x * x).sqrt();
        if norm > lit(1e-9) {
            basis.push(r.iter().map(|&x| x / norm).collect());
            keep.push((row, w));
        }
    }
    keep
}

/// Condition (correlate) method on the triangle angle closures, equal weights.
pub fn adjust_directions<T: Real>(sets: &[DirectionSet<T>], sigma: Angle<T>) -> Result<DirectionAdjustment<T>> {
    let net = Network::build(sets)?;
    let expected = net.expected_redundancy()?;
    let conds = independent(closure_conditions(&net));
    if conds.len() != expected {
        return Err(GeoError::InconsistentConditionCount { expected, found: conds.len() });
    }
    let m = net.obs.len();
    let r = conds.len();
    let b = Matrix::from_fn(r, m, |i, j| conds[i].0[j]);
    let w: Vec<T> = conds.iter().map(|c| c.1).collect();
    let bt = b.transpose();
    let (v, q_adjusted) = if r == 0 {
        (vec![T::zero(); m], Matrix::identity(m))
    } else {
        let bbt = &b * &bt;
        let ch = bbt.cholesky(lit(1e-12)).ok_or(GeoError::InconsistentConditionCount { expected, found: 0 })?;
        let k = ch.solve(&w);
        let v: Vec<T> = bt.mul_vec(&k).into_iter().map(|x| -x).collect();
        let corr = &(&bt * &ch.inverse()) * &b;
        (v, Matrix::from_fn(m, m, |i, j| if i == j { T::one() } else { T::zero() } - corr[(i, j)]))
    };
    Ok(finish(&net, v, q_adjusted, r, sigma))
}

fn finish<T: Real>(net: &Network<T>, v: Vec<T>, q_adjusted: Matrix<T>, r: usize, sigma: Angle<T>) -> DirectionAdjustment<T> {
    let s2 = if r > 0 {
        v.iter().fold(T::zero(), |a, &x| a + x * x) / lit(r as f64)
    } else {
        T::zero()
    };
    let observed: Vec<Angle<T>> = net.obs.iter().map(|o| o.2).collect();
    let adjusted = observed.iter().zip(&v).map(|(&o, &vi)| o + Angle::from_radians(vi)).collect();
    DirectionAdjustment {
        lines: net.lines(),
        observed,
        adjusted,
        residuals: v,
        q_adjusted,
        redundancy: r,
        s2,
        s2_ratio: s2 / sigma.radians().powi(2),
    }
}

/// Directions as functions of station orientations and free point coordinates. The first station
/// sits at the origin and its first target on the `y` axis at a fixed distance.
struct DirectionModel<'a, T> {
    net: &'a Network<T>,
    /// Unknown slot of each point coordinate, `None` when held fixed.
    slots: Vec<[Option<usize>; 2]>,
    fixed: Vec<[T; 2]>,
}

impl<T: Real> DirectionModel<'_, T> {
    fn coords(&self, x: &[T], p: usize) -> [T; 2] {
        let s = self.slots[p];
        [s[0].map_or(self.fixed[p][0], |i| x[i]), s[1].map_or(self.fixed[p][1], |i| x[i])]
    }
}

impl<T: Real> ObservationModel<T> for DirectionModel<'_, T> {
    fn unknowns(&self) -> usize {
        self.net.stations.len() + self.slots.iter().flatten().filter(|s| s.is_some()).count()
    }

    fn eval(&self, x: &[T]) -> Vec<T> {
        self.net
            .obs
            .iter()
            .map(|&(s, t, d)| {
                let z = x[self.net.stations.iter().position(|&k| k == s).unwrap()];
                let (ps, pt) = (self.coords(x, s), self.coords(x, t));
                let bearing = (pt[0] - ps[0]).atan2(pt[1] - ps[1]);
                d.radians() + Angle::from_radians(bearing - z - d.radians()).signed().radians()
            })
            .collect()
    }

    fn jacobian(&self, x: &[T]) -> Matrix<T> {
        let mut j = Matrix::zeros(self.net.obs.len(), self.unknowns());
        for (row, &(s, t, _)) in self.net.obs.iter().enumerate() {
            j[(row, self.net.stations.iter().position(|&k| k == s).unwrap())] = -T::one();
            let (ps, pt) = (self.coords(x, s), self.coords(x, t));
            let (dx, dy) = (pt[0] - ps[0], pt[1] - ps[1]);
            let d2 = dx * dx + dy * dy;
            let g = [dy / d2, -dx / d2];
            for k in 0..2 {
                if let Some(i) = self.slots[t][k] {
                    j[(row, i)] = j[(row, i)] + g[k];
                }
                if let Some(i) = self.slots[s][k] {
                    j[(row, i)] = j[(row, i)] - g[k];
                }
            }
        }
        j
    }
}

const BASE_LENGTH: f64 = 1000.0;

/// Approximate plane coordinates by forward intersection from the two fixed points.
fn approximate_coordinates<T: Real>(net: &Network<T>) -> Result<(usize, usize, Vec<Option<[T; 2]>>)> {
    let p0 = *net.stations.first().ok_or_else(|| GeoError::InconsistentObservation("no stations".into()))?;
    let p1 = net.obs.iter().find(|o| o.0 == p0).map(|o| o.1).unwrap();
    let mut xy: Vec<Option<[T; 2]>> = vec![None; net.points.len()];
    xy[p0] = Some([T::zero(); 2]);
    xy[p1] = Some([T::zero(), lit(BASE_LENGTH)]);
    let bearing = |a: [T; 2], b: [T; 2]| (b[0] - a[0]).atan2(b[1] - a[1]);
    loop {
        let mut progress = false;
        for q in 0..net.points.len() {
            if xy[q].is_some() {
                continue;
            }
            'pairs: for a in 0..net.points.len() {
                for b in 0..net.points.len() {
                    let (Some(pa), Some(pb)) = (xy[a], xy[b]) else { continue };
                    if a == b {
                        continue;
                    }
                    let (Some(ab), Some(aq), Some(ba), Some(bq)) =
                        (net.find(a, b), net.find(a, q), net.find(b, a), net.find(b, q))
                    else {
                        continue;
                    };
                    let ta = bearing(pa, pb) + (net.obs[aq].2 - net.obs[ab].2).radians();
                    let tb = bearing(pb, pa) + (net.obs[bq].2 - net.obs[ba].2).radians();
                    let (sa, ca) = ta.sin_cos();
                    let (sb, cb) = tb.sin_cos();
                    let det = sa * cb - ca * sb;
                    if det.abs() < lit(1e-9) {
                        continue;
                    }
                    let (dx, dy) = (pb[0] - pa[0], pb[1] - pa[1]);
                    let t = (dx * cb - dy * sb) / det;
                    xy[q] = Some([pa[0] + t * sa, pa[1] + t * ca]);
                    progress = true;
                    break 'pairs;
                }
            }
        }
        if xy.iter().all(Option::is_some) {
            return Ok((p0, p1, xy));
        }
        if !progress {
            let missing = xy
                .iter()
                .zip(&net.points)
                .filter(|(c, _)| c.is_none())
                .map(|(_, n)| n.as_str())
                .collect::<Vec<_>>()
                .join(", ");
            return Err(GeoError::InconsistentObservation(format!("cannot intersect {missing}")));
        }
    }
}

/// Parametric formulation: one orientation unknown per station plus the free point coordinates.
pub fn adjust_directions_parametric<T: Real>(
    sets: &[DirectionSet<T>],
    sigma: Angle<T>,
) -> Result<DirectionAdjustment<T>> {
    let net = Network::build(sets)?;
    let expected = net.expected_redundancy()?;
    let (p0, p1, xy) = approximate_coordinates(&net)?;
    let mut slots = vec![[None, None]; net.points.len()];
    let mut next = net.stations.len();
    for (p, slot) in slots.iter_mut().enumerate() {
        if p == p0 || p == p1 {
            continue;
        }
        *slot = [Some(next), Some(next + 1)];
        next += 2;
    }
    let fixed: Vec<[T; 2]> = xy.iter().map(|c| c.unwrap()).collect();
    let model = DirectionModel { net: &net, slots, fixed: fixed.clone() };
    let mut x0 = vec![T::zero(); model.unknowns()];
    for (k, &s) in net.stations.iter().enumerate() {
        let (d, t) = net.obs.iter().find(|o| o.0 == s).map(|o| (o.2, o.1)).unwrap();
        let b = (fixed[t][0] - fixed[s][0]).atan2(fixed[t][1] - fixed[s][1]);
        x0[k] = b - d.radians();
    }
    for (p, slot) in model.slots.iter().enumerate() {
        for k in 0..2 {
            if let Some(i) = slot[k] {
                x0[i] = fixed[p][k];
            }
        }
    }
    let l: Vec<T> = net.obs.iter().map(|o| o.2.radians()).collect();
    let gn = gauss_newton(&model, &l, &Matrix::identity(l.len()), &x0, lit(1e-14), 50)?;
    let a = &gn.adjustment;
    if a.redundancy != expected {
        return Err(GeoError::InconsistentConditionCount { expected, found: a.redundancy });
    }
    let j = model.jacobian(&a.x);
    let q_adjusted = &(&j * &a.qxx) * &j.transpose();
    Ok(finish(&net, a.v.clone(), q_adjusted, a.redundancy, sigma))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(x: f64) -> Angle<f64> {
        Angle::from_grads(x)
    }

    fn triangle(misclosure: f64) -> Vec<DirectionSet<f64>> {
        // Equilateral: every interior angle 200/3 gr; station C carries the misclosure.
        let t = 200.0 / 3.0;
        vec![
            DirectionSet::new("A", vec![("B", gr(10.0)), ("C", gr(10.0 + t))]),
            DirectionSet::new("B", vec![("C", gr(0.0)), ("A", gr(t))]),
            DirectionSet::new("C", vec![("A", gr(50.0)), ("B", gr(50.0 + t + misclosure))]),
        ]
    }

    #[test]
    fn consistent_set_is_unchanged() {
        let r = adjust_directions(&triangle(0.0), gr(6.2e-4)).unwrap();
        assert!(r.residuals.iter().all(|v| v.abs() < 1e-15));
        assert_eq!(r.redundancy, 1);
    }

    #[test]
    fn misclosure_split_evenly() {
        let r = adjust_directions(&triangle(6e-4), gr(6.2e-4)).unwrap();
        let each = Angle::<f64>::from_grads(1e-4).radians();
        for v in &r.residuals {
            assert!((v.abs() - each).abs() < 1e-15);
        }
        let sum: f64 = ["A", "B", "C"]
            .iter()
            .zip([("B", "C"), ("C", "A"), ("A", "B")])
            .map(|(s, (f, t))| r.angle(s, f, t).unwrap().grads())
            .sum();
        assert!((sum - 200.0).abs() < 1e-12);
        let p = adjust_directions_parametric(&triangle(6e-4), gr(6.2e-4)).unwrap();
        for (a, b) in r.adjusted.iter().zip(&p.adjusted) {
            assert!((a.grads() - b.grads()).abs() < 1e-9);
        }
        // Each angle gets weight 1/2 before and 3/4 after adjustment.
        assert!((r.angle_weight("A", "B", "C").unwrap() - 0.75).abs() < 1e-12);
    }

    #[test]
    fn braced_quadrilateral_needs_a_side_condition() {
        let xy = [("A", 0.0f64, 0.0), ("B", 100.0, 0.0), ("C", 100.0, 100.0), ("D", 0.0, 100.0)];
        let sets: Vec<DirectionSet<f64>> = xy
            .iter()
            .map(|&(s, x, y)| {
                let t = xy
                    .iter()
                    .filter(|o| o.0 != s)
                    .map(|&(n, tx, ty)| (n, Angle::from_radians((tx - x).atan2(ty - y)).normalized()))
                    .collect();
                DirectionSet::new(s, t)
            })
            .collect();
        assert!(matches!(
            adjust_directions(&sets, gr(1e-3)),
            Err(GeoError::InconsistentConditionCount { expected: 4, found: 3 })
        ));
    }
}
