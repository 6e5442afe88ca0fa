//! Leveling networks adjusted on node heights with weights inverse to the line length.

use crate::error::{GeoError, Result};
use crate::linalg::Matrix;
use crate::scalar::{lit, Real};

use super::{solve_wls, AdjustmentResult, LinearModel};

/// Observed `H_to − H_from` in metres over a line of `dist_km` kilometres (unit weight when `None`).
#[derive(Clone, Debug, PartialEq)]
pub struct LevelingObservation<T> {
    pub from: String,
    pub to: String,
    pub dh: T,
    pub dist_km: Option<T>,
}

impl<T: Real> LevelingObservation<T> {
    pub fn new(from: &str, to: &str, dh: T, dist_km: Option<T>) -> Self {
        LevelingObservation { from: from.into(), to: to.into(), dh, dist_km }
    }

    fn weight(&self) -> Result<T> {
        match self.dist_km {
            None => Ok(T::one()),
            Some(d) if d > T::zero() => Ok(T::one() / d),
            Some(d) => Err(GeoError::OutOfRange { what: "line length", value: crate::scalar::to_f64(d) }),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct LevelingResult<T> {
    /// Every node with its adjusted height; fixed nodes included.
    pub heights: Vec<(String, T)>,
    /// Indices into `heights` of the free nodes, in unknown order.
    free: Vec<usize>,
    pub adjustment: AdjustmentResult<T>,
    /// A-priori `σ` in mm per √km, when supplied.
    pub precision_mm_per_km: Option<T>,
}

impl<T: Real> LevelingResult<T> {
    pub fn height(&self, node: &str) -> Option<T> {
        self.heights.iter().find(|(n, _)| n == node).map(|h| h.1)
    }

    fn slot(&self, node: &str) -> Result<Option<usize>> {
        let i = self
            .heights
            .iter()
            .position(|(n, _)| n == node)
            .ok_or_else(|| GeoError::InconsistentObservation(format!("unknown node {node}")))?;
        Ok(self.free.iter().position(|&f| f == i))
    }

    /// Cofactor of `H_b − H_a`.
    pub fn difference_cofactor(&self, a: &str, b: &str) -> Result<T> {
        let q = &self.adjustment.qxx;
        let (ia, ib) = (self.slot(a)?, self.slot(b)?);
        let d = |i: Option<usize>, j: Option<usize>| match (i, j) {
            (Some(i), Some(j)) => q[(i, j)],
            _ => T::zero(),
        };
        Ok(d(ia, ia) + d(ib, ib) - lit::<T>(2.0) * d(ia, ib))
    }

    /// A-posteriori standard deviation of a node height, in metres.
    pub fn sigma(&self, node: &str) -> Result<T> {
        let i = self.slot(node)?;
        Ok(i.map_or(T::zero(), |i| (self.adjustment.s2 * self.adjustment.qxx[(i, i)]).sqrt()))
    }

    /// A-posteriori standard deviation of `H_b − H_a`, in metres.
    pub fn sigma_difference(&self, a: &str, b: &str) -> Result<T> {
        Ok((self.adjustment.s2 * self.difference_cofactor(a, b)?).sqrt())
    }

    /// A-priori standard deviation of a node height from the instrument precision, in metres.
    pub fn sigma_prior(&self, node: &str) -> Result<Option<T>> {
        let Some(p) = self.precision_mm_per_km else { return Ok(None) };
        let i = self.slot(node)?;
        Ok(Some(i.map_or(T::zero(), |i| p * lit(1e-3) * self.adjustment.qxx[(i, i)].sqrt())))
    }

    pub fn sigma_difference_prior(&self, a: &str, b: &str) -> Result<Option<T>> {
        let Some(p) = self.precision_mm_per_km else { return Ok(None) };
        Ok(Some(p * lit(1e-3) * self.difference_cofactor(a, b)?.sqrt()))
    }

    /// Unit-weight standard deviation: with weights in km⁻¹ and residuals in m, `1000 √s²` mm per √km.
    pub fn precision_estimate_mm_per_km(&self) -> T {
        self.adjustment.s2.sqrt() * lit(1e3)
    }
}

/// Parametric adjustment of the free node heights.
pub fn adjust_leveling<T: Real>(
    obs: &[LevelingObservation<T>],
    fixed: &[(&str, T)],
    precision_mm_per_km: Option<T>,
) -> Result<LevelingResult<T>> {
    if fixed.is_empty() {
        return Err(GeoError::InconsistentObservation("no fixed height".into()));
    }
    let mut nodes: Vec<String> = fixed.iter().map(|f| f.0.to_string()).collect();
    for o in obs {
        for n in [&o.from, &o.to] {
            if !nodes.contains(n) {
                nodes.push(n.clone());
            }
        }
    }
    let idx = |n: &str| nodes.iter().position(|m| m == n).unwrap();

    let mut reached = vec![false; nodes.len()];
    for f in fixed {
        reached[idx(f.0)] = true;
    }
    loop {
        let mut grew = false;
        for o in obs {
            let (a, b) = (idx(&o.from), idx(&o.to));
            if reached[a] != reached[b] {
                reached[a] = true;
                reached[b] = true;
                grew = true;
            }
        }
        if !grew {
            break;
        }
    }
    let orphans: Vec<String> = nodes.iter().zip(&reached).filter(|(_, &r)| !r).map(|(n, _)| n.clone()).collect();
    if !orphans.is_empty() {
        return Err(GeoError::DisconnectedNetwork(orphans));
    }

    let nf = fixed.len();
    let free: Vec<usize> = (nf..nodes.len()).collect();
    let known = |i: usize| fixed[i].1;
    let mut rows = Vec::with_capacity(obs.len());
    let mut l = Vec::with_capacity(obs.len());
    let mut w = Vec::with_capacity(obs.len());
    for o in obs {
        let (a, b) = (idx(&o.from), idx(&o.to));
        let mut row = vec![T::zero(); free.len()];
        let mut rhs = o.dh;
        if b >= nf {
            row[b - nf] = row[b - nf] + T::one();
        } else {
            rhs = rhs - known(b);
        }
        if a >= nf {
            row[a - nf] = row[a - nf] - T::one();
        } else {
            rhs = rhs + known(a);
        }
        rows.push(row);
        l.push(rhs);
        w.push(o.weight()?);
    }
    let m = LinearModel::diagonal(Matrix::from_rows(&rows), l, &w)?;
    let adjustment = solve_wls(&m)?;
    let heights = nodes
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), if i < nf { known(i) } else { adjustment.x[i - nf] }))
        .collect();
    Ok(LevelingResult { heights, free, adjustment, precision_mm_per_km })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_line() {
        let o = [LevelingObservation::new("A", "B", 1.25f64, Some(2.0))];
        let r = adjust_leveling(&o, &[("A", 10.0)], None).unwrap();
        assert!((r.height("B").unwrap() - 11.25).abs() < 1e-14);
        assert_eq!(r.adjustment.redundancy, 0);
        assert_eq!(r.sigma("A").unwrap(), 0.0);
    }

    #[test]
    fn loop_misclosure_distributed_by_length() {
        let o = [
            LevelingObservation::new("A", "B", 1.0f64, Some(1.0)),
            LevelingObservation::new("B", "C", 1.0, Some(1.0)),
            LevelingObservation::new("A", "C", 2.03, Some(1.0)),
        ];
        let r = adjust_leveling(&o, &[("A", 0.0)], Some(2.0)).unwrap();
        assert!((r.height("C").unwrap() - 2.02).abs() < 1e-12);
        assert!((r.height("B").unwrap() - 1.01).abs() < 1e-12);
        assert!(r.adjustment.orthogonality(&LinearModel::diagonal(
            Matrix::from_rows(&[vec![1.0, 0.0], vec![-1.0, 1.0], vec![0.0, 1.0]]),
            vec![1.0, 1.0, 2.03],
            &[1.0; 3]
        )
        .unwrap()) < 1e-12);
        // s² = 3·0.01² / 1; σ(C) = s √(2/3).
        assert!((r.sigma("C").unwrap() - (3e-4f64 * 2.0 / 3.0).sqrt()).abs() < 1e-12);
        assert!((r.sigma_prior("C").unwrap().unwrap() - 2e-3 * (2.0f64 / 3.0).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn disconnected_nodes_are_named() {
        let o = [
            LevelingObservation::new("A", "B", 1.0f64, None),
            LevelingObservation::new("C", "D", 1.0, None),
        ];
        match adjust_leveling(&o, &[("A", 0.0)], None) {
            Err(GeoError::DisconnectedNetwork(n)) => assert_eq!(n, vec!["C".to_string(), "D".to_string()]),
            other => panic!("{other:?}"),
        }
        assert!(adjust_leveling(&o, &[], None).is_err());
    }
}
